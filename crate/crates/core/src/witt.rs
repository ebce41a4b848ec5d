//! Truncated Witt vectors over arbitrary commutative coefficient rings.
//!
//! Ring operations go through universal sum/product/negation polynomials
//! with integer coefficients, computed once per (p, length) by peeling the
//! ghost equations over Z[a_*, b_*] with exact division, then evaluated in
//! the target ring. This keeps every operation exact in rings with
//! p-torsion, where the ghost map itself is useless.

use crate::error::{Error, Result};
use crate::poly::{varset, CoeffRing, IntegerRing, MultiPoly};
use crate::ring::{binomial_u64, is_small_prime};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// The polynomials psi_i(x, y): psi_1 = x + y and for i > 1
/// psi_i = ((x+y)^{p^{i-1}} - (x^p+y^p)^{p^{i-2}}) / p^{i-1}.
/// Integrality is verified by the exact division in the constructor.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiPolynomial {
    pub i: u32,
    pub p: u32,
    pub poly: MultiPoly<IntegerRing>,
}

/// psi_i(x, y) over Z, in variables x, y.
pub fn psi(i: u32, p: u32) -> Result<PsiPolynomial> {
    if i < 1 {
        return Err(Error::Range("psi index must be >= 1".into()));
    }
    if !is_small_prime(p) {
        return Err(Error::Range(format!("{p} is not a supported prime")));
    }
    let vars = varset(&["x", "y"]);
    let x = MultiPoly::var(IntegerRing, vars.clone(), 0)?;
    let y = MultiPoly::var(IntegerRing, vars.clone(), 1)?;
    let poly = if i == 1 {
        x.add(&y)?
    } else {
        let big = x.add(&y)?.pow(p.pow(i - 1))?;
        let small = x.pow(p)?.add(&y.pow(p)?)?.pow(p.pow(i - 2))?;
        big.sub(&small)?.div_exact(&BigInt::from(p).pow(i - 1))?
    };
    Ok(PsiPolynomial { i, p, poly })
}

/// Checks the recursion
/// psi_{i+1} = sum_{j=1}^p C(p,j) p^{j(i-1)-i} psi_i^j (x^p+y^p)^{(p-j)p^{i-2}}
/// as an exact polynomial identity over Z (i >= 2).
pub fn psi_recursion_holds(i: u32, p: u32) -> Result<bool> {
    if i < 2 {
        return Err(Error::Range("recursion is stated for i >= 2".into()));
    }
    let psi_i = psi(i, p)?.poly;
    let psi_next = psi(i + 1, p)?.poly;
    let vars = psi_i.vars().clone();
    let x = MultiPoly::var(IntegerRing, vars.clone(), 0)?;
    let y = MultiPoly::var(IntegerRing, vars.clone(), 1)?;
    let base = x.pow(p)?.add(&y.pow(p)?)?;
    // Common denominator p^i: each summand carries C(p,j) p^{j(i-1)}.
    let mut acc = MultiPoly::zero(IntegerRing, vars);
    for j in 1..=p {
        let c = binomial_u64(p as u64, j as u64) * BigInt::from(p).pow(j * (i - 1));
        let term = psi_i
            .pow(j)?
            .mul(&base.pow((p - j) * p.pow(i - 2))?)?
            .scale(&c);
        acc = acc.add(&term)?;
    }
    let rhs = acc.div_exact(&BigInt::from(p).pow(i))?;
    Ok(rhs == psi_next)
}

/// Universal Witt polynomials for one (p, length): S_i, P_i, N_i in
/// Z[a_1..a_len, b_1..b_len].
#[derive(Debug)]
pub struct WittUniversal {
    pub p: u32,
    pub len: usize,
    pub vars: Arc<Vec<String>>,
    pub sum: Vec<MultiPoly<IntegerRing>>,
    pub prod: Vec<MultiPoly<IntegerRing>>,
    pub neg: Vec<MultiPoly<IntegerRing>>,
}

fn ghost_poly(
    p: u32,
    i: usize,
    offset: usize,
    vars: &Arc<Vec<String>>,
) -> Result<MultiPoly<IntegerRing>> {
    let mut acc = MultiPoly::zero(IntegerRing, vars.clone());
    for j in 0..i {
        let z = MultiPoly::var(IntegerRing, vars.clone(), offset + j)?;
        let term = z
            .pow(p.pow((i - 1 - j) as u32))?
            .scale(&BigInt::from(p).pow(j as u32));
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

fn build_universal(p: u32, len: usize) -> Result<WittUniversal> {
    let names: Vec<String> = (1..=len)
        .map(|i| format!("a{i}"))
        .chain((1..=len).map(|i| format!("b{i}")))
        .collect();
    let vars = Arc::new(names);
    let mut sum: Vec<MultiPoly<IntegerRing>> = Vec::with_capacity(len);
    let mut prod: Vec<MultiPoly<IntegerRing>> = Vec::with_capacity(len);
    let mut neg: Vec<MultiPoly<IntegerRing>> = Vec::with_capacity(len);
    for i in 1..=len {
        let wa = ghost_poly(p, i, 0, &vars)?;
        let wb = ghost_poly(p, i, len, &vars)?;
        let peel = |target: MultiPoly<IntegerRing>,
                    lower: &[MultiPoly<IntegerRing>]|
         -> Result<MultiPoly<IntegerRing>> {
            let mut acc = target;
            for (j, s) in lower.iter().enumerate() {
                let term = s
                    .pow(p.pow((i - 1 - j) as u32))?
                    .scale(&BigInt::from(p).pow(j as u32));
                acc = acc.sub(&term)?;
            }
            acc.div_exact(&BigInt::from(p).pow((i - 1) as u32))
        };
        sum.push(peel(wa.add(&wb)?, &sum)?);
        prod.push(peel(wa.mul(&wb)?, &prod)?);
        neg.push(peel(wa.neg(), &neg)?);
    }
    Ok(WittUniversal {
        p,
        len,
        vars,
        sum,
        prod,
        neg,
    })
}

/// Cached universal polynomials. Construction is idempotent; the cache is
/// write-once per key with concurrent readers.
type UniversalCache = Mutex<HashMap<(u32, usize), Arc<WittUniversal>>>;

pub fn universal(p: u32, len: usize) -> Result<Arc<WittUniversal>> {
    static CACHE: OnceLock<UniversalCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(u) = cache.lock().unwrap().get(&(p, len)) {
        return Ok(u.clone());
    }
    let built = Arc::new(build_universal(p, len)?);
    let mut guard = cache.lock().unwrap();
    Ok(guard.entry((p, len)).or_insert(built).clone())
}

fn elem_pow<R: CoeffRing>(ring: &R, base: &R::Elem, e: u32) -> R::Elem {
    let mut acc = ring.one();
    let mut b = base.clone();
    let mut e = e;
    if e == 0 {
        return acc;
    }
    loop {
        if e & 1 == 1 {
            acc = ring.mul(&acc, &b);
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        b = ring.mul(&b, &b);
    }
    acc
}

/// A Witt vector (z_1, ..., z_{m+1}) over a coefficient ring.
#[derive(Debug, Clone, PartialEq)]
pub struct WittVector<R: CoeffRing> {
    p: u32,
    ring: R,
    components: Vec<R::Elem>,
}

impl<R: CoeffRing> WittVector<R> {
    pub fn new(p: u32, ring: R, components: Vec<R::Elem>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Range("Witt vector length must be >= 1".into()));
        }
        if !is_small_prime(p) {
            return Err(Error::Range(format!("{p} is not a supported prime")));
        }
        Ok(WittVector {
            p,
            ring,
            components,
        })
    }

    pub fn zero(p: u32, ring: R, len: usize) -> Result<Self> {
        let z = ring.zero();
        Self::new(p, ring, vec![z; len])
    }

    /// Teichmueller representative z -> (z, 0, ..., 0).
    pub fn teichmuller(p: u32, ring: R, z: R::Elem, len: usize) -> Result<Self> {
        let mut components = vec![ring.zero(); len];
        components[0] = z;
        Self::new(p, ring, components)
    }

    /// Verschiebung: (z_1, ..., z_m) -> (0, z_1, ..., z_m); length grows by one.
    pub fn verschiebung(&self) -> Self {
        let mut components = Vec::with_capacity(self.components.len() + 1);
        components.push(self.ring.zero());
        components.extend(self.components.iter().cloned());
        WittVector {
            p: self.p,
            ring: self.ring.clone(),
            components,
        }
    }

    /// Reduction W_{m+1} -> W_l (drop trailing components), l >= 1.
    pub fn truncate(&self, len: usize) -> Result<Self> {
        if len == 0 || len > self.components.len() {
            return Err(Error::Range(format!(
                "cannot truncate length {} vector to {len}",
                self.components.len()
            )));
        }
        Ok(WittVector {
            p: self.p,
            ring: self.ring.clone(),
            components: self.components[..len].to_vec(),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn components(&self) -> &[R::Elem] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| self.ring.is_zero(c))
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.components.len() != other.components.len() {
            return Err(Error::RingMismatch(format!(
                "Witt vectors differ: p={},len={} vs p={},len={}",
                self.p,
                self.components.len(),
                other.p,
                other.components.len()
            )));
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ring.describe(),
                other.ring.describe()
            )));
        }
        Ok(())
    }

    /// Ghost components W_i = sum_{j<i} p^j z_{j+1}^{p^{i-1-j}}; only over
    /// p-torsion-free rings, where the ghost map is injective.
    pub fn ghost(&self) -> Result<Vec<R::Elem>> {
        if !self.ring.torsion_free() {
            return Err(Error::Unsupported(
                "ghost map needs a p-torsion-free coefficient ring".into(),
            ));
        }
        let mut out = Vec::with_capacity(self.components.len());
        for i in 1..=self.components.len() {
            let mut acc = self.ring.zero();
            for j in 0..i {
                let pw = elem_pow(&self.ring, &self.components[j], self.p.pow((i - 1 - j) as u32));
                let scaled = self
                    .ring
                    .mul(&pw, &self.ring.from_bigint(&BigInt::from(self.p).pow(j as u32)));
                acc = self.ring.add(&acc, &scaled);
            }
            out.push(acc);
        }
        Ok(out)
    }

    fn eval_universal(&self, other: Option<&Self>, polys: &[MultiPoly<IntegerRing>]) -> Result<Self> {
        let mut args: Vec<R::Elem> = self.components.clone();
        match other {
            Some(o) => args.extend(o.components.iter().cloned()),
            None => args.extend(std::iter::repeat_n(self.ring.zero(), self.components.len())),
        }
        let components = polys
            .iter()
            .map(|s| s.eval_elems(&self.ring, &args))
            .collect::<Result<Vec<_>>>()?;
        Ok(WittVector {
            p: self.p,
            ring: self.ring.clone(),
            components,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let u = universal(self.p, self.components.len())?;
        self.eval_universal(Some(other), &u.sum)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let u = universal(self.p, self.components.len())?;
        self.eval_universal(Some(other), &u.prod)
    }

    pub fn neg(&self) -> Result<Self> {
        let u = universal(self.p, self.components.len())?;
        self.eval_universal(None, &u.neg)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg()?)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::teichmuller(
            self.p,
            self.ring.clone(),
            self.ring.one(),
            self.components.len(),
        )?;
        let mut base = self.clone();
        let mut e = e;
        if e == 0 {
            return Ok(acc);
        }
        loop {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base)?;
        }
        Ok(acc)
    }
}

/// Image of the integer c under the unit map Z -> W_len(R): the unique
/// integer Witt vector with all ghost components equal to c, mapped into R.
pub fn integer_image<R: CoeffRing>(p: u32, ring: &R, c: &BigInt, len: usize) -> Result<WittVector<R>> {
    let mut comps_z: Vec<BigInt> = Vec::with_capacity(len);
    for i in 1..=len {
        let mut acc = c.clone();
        for (j, z) in comps_z.iter().enumerate() {
            acc -= BigInt::from(p).pow(j as u32) * z.pow(p.pow((i - 1 - j) as u32));
        }
        let q = BigInt::from(p).pow((i - 1) as u32);
        let (quo, rem) = num_integer::Integer::div_rem(&acc, &q);
        if !rem.is_zero() {
            return Err(Error::Invariant(format!(
                "integer Witt image of {c} not integral at index {i}"
            )));
        }
        comps_z.push(quo);
    }
    WittVector::new(p, ring.clone(), comps_z.iter().map(|z| ring.from_bigint(z)).collect())
}

/// Evaluate psi_i at two Witt vectors, monomial by monomial, through the
/// Witt ring operations themselves.
pub fn eval_psi_witt<R: CoeffRing>(
    psi: &PsiPolynomial,
    u: &WittVector<R>,
    v: &WittVector<R>,
) -> Result<WittVector<R>> {
    let len = u.len();
    let p = u.p();
    let ring = u.ring().clone();
    let max_x = psi.poly.terms().map(|(e, _)| e.0[0]).max().unwrap_or(0);
    let max_y = psi.poly.terms().map(|(e, _)| e.0[1]).max().unwrap_or(0);
    let mut upow = vec![WittVector::teichmuller(p, ring.clone(), ring.one(), len)?];
    for j in 1..=max_x {
        let next = upow[(j - 1) as usize].mul(u)?;
        upow.push(next);
    }
    let mut vpow = vec![WittVector::teichmuller(p, ring.clone(), ring.one(), len)?];
    for j in 1..=max_y {
        let next = vpow[(j - 1) as usize].mul(v)?;
        vpow.push(next);
    }
    let mut acc = WittVector::zero(p, ring.clone(), len)?;
    for (e, c) in psi.poly.terms() {
        let coeff = integer_image(p, &ring, c, len)?;
        let term = coeff.mul(&upow[e.0[0] as usize])?.mul(&vpow[e.0[1] as usize])?;
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Verifies the addition identity
/// [z1+z2] = sum_{i=0}^{len-1} V^i psi_{i+1}([z1], [z2]) in W_len.
pub fn check_addition_identity<R: CoeffRing>(
    p: u32,
    ring: &R,
    z1: &R::Elem,
    z2: &R::Elem,
    len: usize,
) -> Result<bool> {
    let lhs = WittVector::teichmuller(p, ring.clone(), ring.add(z1, z2), len)?;
    let mut rhs = WittVector::zero(p, ring.clone(), len)?;
    for i in 0..len {
        let sub_len = len - i;
        let t1 = WittVector::teichmuller(p, ring.clone(), z1.clone(), sub_len)?;
        let t2 = WittVector::teichmuller(p, ring.clone(), z2.clone(), sub_len)?;
        let ps = psi((i + 1) as u32, p)?;
        let mut term = eval_psi_witt(&ps, &t1, &t2)?;
        for _ in 0..i {
            term = term.verschiebung();
        }
        rhs = rhs.add(&term)?;
    }
    Ok(lhs == rhs)
}

// ---------------------------------------------------------------------------
// Text grammar `[f1; f2; ...; fm]` with each component in the poly grammar.
// ---------------------------------------------------------------------------

impl<R: CoeffRing> std::fmt::Display for WittVector<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", self.ring.elem_string(c))?;
        }
        write!(f, "]")
    }
}

/// Parse `[f1; ...; fm]` given a component parser.
pub fn parse_witt<R: CoeffRing>(
    input: &str,
    p: u32,
    ring: &R,
    parse_component: impl Fn(&str) -> Result<R::Elem>,
) -> Result<WittVector<R>> {
    let s = input.trim();
    if !s.starts_with('[') || !s.ends_with(']') {
        return Err(Error::Parse {
            pos: 0,
            msg: "Witt vector must be bracketed: [f1; f2; ...]".into(),
        });
    }
    let inner = &s[1..s.len() - 1];
    let components = inner
        .split(';')
        .map(|part| parse_component(part.trim()))
        .collect::<Result<Vec<_>>>()?;
    WittVector::new(p, ring.clone(), components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{ModRing, PolyRing};
    use crate::ring::ModInt;

    #[test]
    fn psi_examples() {
        let vars = varset(&["x", "y"]);
        let x = MultiPoly::var(IntegerRing, vars.clone(), 0).unwrap();
        let y = MultiPoly::var(IntegerRing, vars.clone(), 1).unwrap();

        assert_eq!(psi(1, 5).unwrap().poly, x.add(&y).unwrap());
        assert_eq!(psi(2, 2).unwrap().poly, x.mul(&y).unwrap());
        // psi_2 at p = 3: x^2 y + x y^2
        let expect = x
            .pow(2)
            .unwrap()
            .mul(&y)
            .unwrap()
            .add(&x.mul(&y.pow(2).unwrap()).unwrap())
            .unwrap();
        assert_eq!(psi(2, 3).unwrap().poly, expect);
    }

    #[test]
    fn psi_recursion_small() {
        assert!(psi_recursion_holds(2, 2).unwrap());
        assert!(psi_recursion_holds(2, 3).unwrap());
        assert!(psi_recursion_holds(3, 2).unwrap());
    }

    #[test]
    fn universal_sum_p2_len2() {
        let u = universal(2, 2).unwrap();
        let vars = u.vars.clone();
        let a1 = MultiPoly::var(IntegerRing, vars.clone(), 0).unwrap();
        let a2 = MultiPoly::var(IntegerRing, vars.clone(), 1).unwrap();
        let b1 = MultiPoly::var(IntegerRing, vars.clone(), 2).unwrap();
        let b2 = MultiPoly::var(IntegerRing, vars.clone(), 3).unwrap();
        assert_eq!(u.sum[0], a1.add(&b1).unwrap());
        // a2 + b2 - a1*b1
        let expect = a2.add(&b2).unwrap().sub(&a1.mul(&b1).unwrap()).unwrap();
        assert_eq!(u.sum[1], expect);
        // product second component: a1^2 b2 + a2 b1^2 + 2 a2 b2
        let expect = a1
            .pow(2)
            .unwrap()
            .mul(&b2)
            .unwrap()
            .add(&a2.mul(&b1.pow(2).unwrap()).unwrap())
            .unwrap()
            .add(&a2.mul(&b2).unwrap().scale_i64(2))
            .unwrap();
        assert_eq!(u.prod[1], expect);
    }

    #[test]
    fn ghost_examples() {
        let a = BigInt::from(3);
        let b = BigInt::from(7);
        let w = WittVector::new(2, IntegerRing, vec![a.clone(), b.clone()]).unwrap();
        let g = w.ghost().unwrap();
        assert_eq!(g, vec![a.clone(), &a * &a + 2 * &b]);

        let w = WittVector::new(3, IntegerRing, vec![a.clone(), b.clone()]).unwrap();
        let g = w.ghost().unwrap();
        assert_eq!(g, vec![a.clone(), &a * &a * &a + 3 * &b]);

        // Teichmueller ghost: (a, a^2, a^4) at p = 2
        let w = WittVector::teichmuller(2, IntegerRing, a.clone(), 3).unwrap();
        assert_eq!(w.ghost().unwrap(), vec![a.clone(), &a * &a, &a * &a * &a * &a]);
    }

    #[test]
    fn ghost_rejects_torsion() {
        let ring = ModRing::fp(2).unwrap();
        let w = WittVector::new(2, ring, vec![ring.one(), ring.zero()]).unwrap();
        assert!(matches!(w.ghost(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn ghost_of_verschiebung() {
        // ghost_i(V w) = p * ghost_{i-1}(w), with ghost_1(V w) = 0
        let w = WittVector::new(3, IntegerRing, vec![BigInt::from(2), BigInt::from(5)]).unwrap();
        let g = w.ghost().unwrap();
        let vg = w.verschiebung().ghost().unwrap();
        assert_eq!(vg[0], BigInt::zero());
        assert_eq!(vg[1], 3 * &g[0]);
        assert_eq!(vg[2], 3 * &g[1]);
    }

    #[test]
    fn witt_ops_commute_with_ghost() {
        for p in [2u32, 3, 5] {
            let u = WittVector::new(
                p,
                IntegerRing,
                vec![BigInt::from(2), BigInt::from(-3), BigInt::from(4)],
            )
            .unwrap();
            let v = WittVector::new(
                p,
                IntegerRing,
                vec![BigInt::from(-1), BigInt::from(5), BigInt::from(2)],
            )
            .unwrap();
            let gs = |w: &WittVector<IntegerRing>| w.ghost().unwrap();
            let sum = u.add(&v).unwrap();
            let prod = u.mul(&v).unwrap();
            let neg = u.neg().unwrap();
            for i in 0..3 {
                assert_eq!(gs(&sum)[i], &gs(&u)[i] + &gs(&v)[i]);
                assert_eq!(gs(&prod)[i], &gs(&u)[i] * &gs(&v)[i]);
                assert_eq!(gs(&neg)[i], -&gs(&u)[i]);
            }
        }
    }

    #[test]
    fn identity_and_mismatch() {
        let u = WittVector::new(2, IntegerRing, vec![BigInt::from(9), BigInt::from(-2)]).unwrap();
        let z = WittVector::zero(2, IntegerRing, 2).unwrap();
        assert_eq!(u.add(&z).unwrap(), u);
        let w3 = WittVector::zero(3, IntegerRing, 2).unwrap();
        assert!(u.add(&w3).is_err());
        let short = WittVector::zero(2, IntegerRing, 1).unwrap();
        assert!(u.mul(&short).is_err());
    }

    #[test]
    fn teichmuller_addition_over_f3() {
        // (X,0) + (X,0) = (2X, X^3) over F_3[X, Xi]
        let ring = ModRing::fp(3).unwrap();
        let vars = varset(&["X", "Xi"]);
        let pr = PolyRing::new(ring, vars.clone());
        let x = pr.var(0).unwrap();
        let t = WittVector::teichmuller(3, pr.clone(), x.clone(), 2).unwrap();
        let s = t.add(&t).unwrap();
        assert_eq!(s.components()[0], x.scale_i64(2));
        assert_eq!(s.components()[1], x.pow(3).unwrap());
    }

    #[test]
    fn witt_fp_is_z_mod_pk() {
        // Exhaustive: W_{m+1}(F_p) = Z/p^{m+1} via sum p^i [c_{i+1}]^{p^{m-i}}
        for p in [2u32, 3] {
            for m in 0..=2u32 {
                let len = (m + 1) as usize;
                let ring = ModRing::fp(p).unwrap();
                let modulus = (p as u64).pow(m + 1);
                let value = |w: &WittVector<ModRing>| -> u64 {
                    let mut acc: u64 = 0;
                    for (i, c) in w.components().iter().enumerate() {
                        let lift = c.value();
                        let e = p.pow(m - i as u32);
                        acc = (acc
                            + (p as u64).pow(i as u32) * crate::ring::pow_mod(lift, e as u64, modulus))
                            % modulus;
                    }
                    acc
                };
                let all: Vec<WittVector<ModRing>> = (0..modulus)
                    .map(|n| {
                        let mut digits = Vec::new();
                        let mut rest = n;
                        for _ in 0..len {
                            digits.push(ModInt::new(p, 1, (rest % p as u64) as i64).unwrap());
                            rest /= p as u64;
                        }
                        WittVector::new(p, ring, digits).unwrap()
                    })
                    .collect();
                for u in &all {
                    for v in &all {
                        let s = u.add(v).unwrap();
                        let pr = u.mul(v).unwrap();
                        assert_eq!(value(&s), (value(u) + value(v)) % modulus, "p={p} m={m}");
                        assert_eq!(
                            value(&pr),
                            value(u) * value(v) % modulus,
                            "p={p} m={m}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn addition_identity_examples() {
        // p=2, len=2 over F_2[X, Xi]
        let ring = ModRing::fp(2).unwrap();
        let vars = varset(&["X", "Xi"]);
        let pr = PolyRing::new(ring, vars.clone());
        let x = pr.var(0).unwrap();
        let xi = pr.var(1).unwrap();
        assert!(check_addition_identity(2, &pr, &x, &xi, 2).unwrap());

        // p=3, len=3 over F_3[X, Xi]
        let ring3 = ModRing::fp(3).unwrap();
        let pr3 = PolyRing::new(ring3, vars.clone());
        let x3 = pr3.var(0).unwrap();
        let xi3 = pr3.var(1).unwrap();
        assert!(check_addition_identity(3, &pr3, &x3, &xi3, 3).unwrap());

        // z2 = 0
        let zero = MultiPoly::zero(ring3, vars.clone());
        assert!(check_addition_identity(3, &pr3, &x3, &zero, 2).unwrap());
    }

    #[test]
    fn integer_image_ghosts_are_constant() {
        for p in [2u32, 3, 5] {
            for c in [-7i64, -1, 0, 1, 2, 12] {
                let w = integer_image(p, &IntegerRing, &BigInt::from(c), 3).unwrap();
                for g in w.ghost().unwrap() {
                    assert_eq!(g, BigInt::from(c));
                }
            }
        }
    }

    #[test]
    fn witt_text_roundtrip() {
        let u = WittVector::new(2, IntegerRing, vec![BigInt::from(9), BigInt::from(-2)]).unwrap();
        let s = u.to_string();
        let parsed = parse_witt(&s, 2, &IntegerRing, |t| {
            MultiPoly::<IntegerRing>::parse(t, IntegerRing, varset(&[]))
                .map(|p| p.coeff(&crate::poly::GradedExp::zeros(0)))
        })
        .unwrap();
        assert_eq!(parsed, u);
    }
}
