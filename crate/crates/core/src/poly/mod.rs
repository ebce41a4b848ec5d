//! Sparse multivariate polynomials over a pluggable coefficient ring.
//!
//! The same engine serves Z (ghost and universal Witt computations), F_p
//! (centers mod p) and Z/p^k. Terms are kept in graded-lexicographic order
//! with no zero coefficients stored.

pub mod forms;

use crate::error::{Error, Result};
use crate::ring::ModInt;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use smallvec::SmallVec;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub type Exponents = SmallVec<[u16; 8]>;

/// Exponent vector ordered by total degree first, then lexicographically
/// with earlier variables ranked higher (so `x^2 < x*y < y^2` ascending).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedExp(pub Exponents);

impl GradedExp {
    pub fn zeros(n: usize) -> Self {
        GradedExp(std::iter::repeat_n(0, n).collect())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn add(&self, other: &GradedExp) -> GradedExp {
        debug_assert_eq!(self.0.len(), other.0.len());
        GradedExp(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for GradedExp {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for GradedExp {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordering used when printing: highest degree first, then lexicographic
/// with earlier variables first (`x^2*y` before `x*y^2`).
pub(crate) fn display_cmp(a: &GradedExp, b: &GradedExp) -> std::cmp::Ordering {
    b.degree().cmp(&a.degree()).then_with(|| b.0.cmp(&a.0))
}

/// Coefficient-ring interface: exact ring operations plus the hooks the
/// rest of the crate needs (characteristic, integer images, printing).
// from_* here take &self: rings are context objects carrying (p, k).
#[allow(clippy::wrong_self_convention)]
pub trait CoeffRing: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    /// Some(p) when the ring has prime characteristic p.
    fn char_p(&self) -> Option<u32>;

    /// True when multiplication by every prime is injective (Z, Z[vars]).
    fn torsion_free(&self) -> bool;

    /// Modulus when elements are u64 residues; enables the dense
    /// multiplication path.
    fn u64_modulus(&self) -> Option<u64> {
        None
    }

    fn elem_to_u64(&self, _e: &Self::Elem) -> u64 {
        unreachable!("no u64 representation")
    }

    fn elem_from_u64(&self, _v: u64) -> Self::Elem {
        unreachable!("no u64 representation")
    }

    fn describe(&self) -> String;
    fn elem_string(&self, e: &Self::Elem) -> String;
}

/// The integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegerRing;

impl CoeffRing for IntegerRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::from(1)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn char_p(&self) -> Option<u32> {
        None
    }
    fn torsion_free(&self) -> bool {
        true
    }
    fn describe(&self) -> String {
        "Z".into()
    }
    fn elem_string(&self, e: &BigInt) -> String {
        e.to_string()
    }
}

/// Z/p^k. With k = 1 this is the field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModRing {
    p: u32,
    k: u32,
}

impl ModRing {
    pub fn new(p: u32, k: u32) -> Result<Self> {
        // Validation (primality, modulus fits u64) happens in ModInt.
        ModInt::new(p, k, 0)?;
        Ok(ModRing { p, k })
    }

    pub fn fp(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        crate::ring::checked_pow(self.p, self.k).expect("validated")
    }
}

impl CoeffRing for ModRing {
    type Elem = ModInt;

    fn zero(&self) -> ModInt {
        ModInt::from_raw(self.p, self.k, 0)
    }
    fn one(&self) -> ModInt {
        ModInt::from_raw(self.p, self.k, 1 % self.modulus())
    }
    fn is_zero(&self, a: &ModInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &ModInt, b: &ModInt) -> ModInt {
        a.add(b).expect("coefficients from one ring")
    }
    fn sub(&self, a: &ModInt, b: &ModInt) -> ModInt {
        a.sub(b).expect("coefficients from one ring")
    }
    fn neg(&self, a: &ModInt) -> ModInt {
        a.neg()
    }
    fn mul(&self, a: &ModInt, b: &ModInt) -> ModInt {
        a.mul(b).expect("coefficients from one ring")
    }
    fn from_bigint(&self, n: &BigInt) -> ModInt {
        ModInt::from_bigint(self.p, self.k, n).expect("validated ring")
    }
    fn char_p(&self) -> Option<u32> {
        (self.k == 1).then_some(self.p)
    }
    fn torsion_free(&self) -> bool {
        false
    }
    fn u64_modulus(&self) -> Option<u64> {
        Some(self.modulus())
    }
    fn elem_to_u64(&self, e: &ModInt) -> u64 {
        e.value()
    }
    fn elem_from_u64(&self, v: u64) -> ModInt {
        ModInt::from_raw(self.p, self.k, v)
    }
    fn describe(&self) -> String {
        format!("Z/{}^{}", self.p, self.k)
    }
    fn elem_string(&self, e: &ModInt) -> String {
        e.value().to_string()
    }
}

/// Polynomial ring viewed as a coefficient ring, so Witt vectors can be
/// taken over polynomial rings.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyRing<R: CoeffRing> {
    ring: R,
    vars: Arc<Vec<String>>,
}

impl<R: CoeffRing> PolyRing<R> {
    pub fn new(ring: R, vars: Arc<Vec<String>>) -> Self {
        PolyRing { ring, vars }
    }

    pub fn base(&self) -> &R {
        &self.ring
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn var(&self, i: usize) -> Result<MultiPoly<R>> {
        MultiPoly::var(self.ring.clone(), self.vars.clone(), i)
    }
}

impl<R: CoeffRing> CoeffRing for PolyRing<R> {
    type Elem = MultiPoly<R>;

    fn zero(&self) -> MultiPoly<R> {
        MultiPoly::zero(self.ring.clone(), self.vars.clone())
    }
    fn one(&self) -> MultiPoly<R> {
        MultiPoly::one(self.ring.clone(), self.vars.clone())
    }
    fn is_zero(&self, a: &MultiPoly<R>) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &MultiPoly<R>, b: &MultiPoly<R>) -> MultiPoly<R> {
        a.add(b).expect("same ring")
    }
    fn sub(&self, a: &MultiPoly<R>, b: &MultiPoly<R>) -> MultiPoly<R> {
        a.sub(b).expect("same ring")
    }
    fn neg(&self, a: &MultiPoly<R>) -> MultiPoly<R> {
        a.neg()
    }
    fn mul(&self, a: &MultiPoly<R>, b: &MultiPoly<R>) -> MultiPoly<R> {
        a.mul(b).expect("same ring")
    }
    fn from_bigint(&self, n: &BigInt) -> MultiPoly<R> {
        MultiPoly::constant(self.ring.clone(), self.vars.clone(), self.ring.from_bigint(n))
    }
    fn char_p(&self) -> Option<u32> {
        self.ring.char_p()
    }
    fn torsion_free(&self) -> bool {
        self.ring.torsion_free()
    }
    fn describe(&self) -> String {
        format!("{}[{}]", self.ring.describe(), self.vars.join(","))
    }
    fn elem_string(&self, e: &MultiPoly<R>) -> String {
        e.to_string()
    }
}

/// Sparse multivariate polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly<R: CoeffRing> {
    ring: R,
    vars: Arc<Vec<String>>,
    terms: BTreeMap<GradedExp, R::Elem>,
}

impl<R: CoeffRing> MultiPoly<R> {
    pub fn zero(ring: R, vars: Arc<Vec<String>>) -> Self {
        MultiPoly {
            ring,
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: R, vars: Arc<Vec<String>>) -> Self {
        let one = ring.one();
        Self::constant(ring, vars, one)
    }

    pub fn constant(ring: R, vars: Arc<Vec<String>>, c: R::Elem) -> Self {
        let mut terms = BTreeMap::new();
        if !ring.is_zero(&c) {
            terms.insert(GradedExp::zeros(vars.len()), c);
        }
        MultiPoly { ring, vars, terms }
    }

    pub fn var(ring: R, vars: Arc<Vec<String>>, i: usize) -> Result<Self> {
        if i >= vars.len() {
            return Err(Error::Range(format!("variable index {i} out of range")));
        }
        let mut exp = GradedExp::zeros(vars.len());
        exp.0[i] = 1;
        Ok(Self::from_terms(ring.clone(), vars, vec![(exp, ring.one())]))
    }

    pub fn monomial(ring: R, vars: Arc<Vec<String>>, exp: GradedExp, c: R::Elem) -> Result<Self> {
        if exp.0.len() != vars.len() {
            return Err(Error::RingMismatch("exponent length != variable count".into()));
        }
        Ok(Self::from_terms(ring, vars, vec![(exp, c)]))
    }

    pub fn from_terms(ring: R, vars: Arc<Vec<String>>, items: Vec<(GradedExp, R::Elem)>) -> Self {
        let mut terms: BTreeMap<GradedExp, R::Elem> = BTreeMap::new();
        for (e, c) in items {
            debug_assert_eq!(e.0.len(), vars.len());
            match terms.entry(e) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let s = ring.add(o.get(), &c);
                    *o.get_mut() = s;
                }
            }
        }
        terms.retain(|_, c| !ring.is_zero(c));
        MultiPoly { ring, vars, terms }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GradedExp, &R::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &GradedExp) -> R::Elem {
        self.terms
            .get(exp)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.degree()).max().unwrap_or(0)
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        let vars_ok =
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars.as_slice() == other.vars.as_slice();
        if self.ring != other.ring || !vars_ok {
            return Err(Error::RingMismatch(format!(
                "{}[{}] vs {}[{}]",
                self.ring.describe(),
                self.vars.join(","),
                other.ring.describe(),
                other.vars.join(",")
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            match terms.entry(e.clone()) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let s = self.ring.add(o.get(), c);
                    if self.ring.is_zero(&s) {
                        o.remove();
                    } else {
                        *o.get_mut() = s;
                    }
                }
            }
        }
        Ok(MultiPoly {
            ring: self.ring.clone(),
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), self.ring.neg(c)))
            .collect();
        MultiPoly {
            ring: self.ring.clone(),
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        if self.ring.is_zero(c) {
            return Self::zero(self.ring.clone(), self.vars.clone());
        }
        let mut terms = BTreeMap::new();
        for (e, a) in &self.terms {
            let v = self.ring.mul(a, c);
            if !self.ring.is_zero(&v) {
                terms.insert(e.clone(), v);
            }
        }
        MultiPoly {
            ring: self.ring.clone(),
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&self.ring.from_i64(c))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ring.clone(), self.vars.clone()));
        }
        if let Some(m) = self.ring.u64_modulus() {
            if let Some(r) = self.mul_dense_u64(other, m) {
                return Ok(r);
            }
        }
        let mut terms: BTreeMap<GradedExp, R::Elem> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.add(e2);
                let c = self.ring.mul(c1, c2);
                match terms.entry(e) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        let s = self.ring.add(o.get(), &c);
                        *o.get_mut() = s;
                    }
                }
            }
        }
        terms.retain(|_, c| !self.ring.is_zero(c));
        Ok(MultiPoly {
            ring: self.ring.clone(),
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Dense accumulation over a residue ring; used when the exponent box
    /// of the product is small enough.
    fn mul_dense_u64(&self, other: &Self, m: u64) -> Option<Self> {
        const MAX_BOX: usize = 1 << 22;
        let n = self.vars.len();
        let mut dims = vec![0usize; n];
        for v in 0..n {
            let m1 = self.terms.keys().map(|e| e.0[v]).max()? as usize;
            let m2 = other.terms.keys().map(|e| e.0[v]).max()? as usize;
            dims[v] = m1 + m2 + 1;
        }
        let mut size = 1usize;
        for &d in &dims {
            size = size.checked_mul(d)?;
            if size > MAX_BOX {
                return None;
            }
        }
        let mut strides = vec![1usize; n];
        for v in (0..n.saturating_sub(1)).rev() {
            strides[v] = strides[v + 1] * dims[v + 1];
        }
        let offset = |e: &GradedExp| -> usize {
            e.0.iter()
                .zip(&strides)
                .map(|(&x, &s)| x as usize * s)
                .sum()
        };
        let a: Vec<(usize, u64)> = self
            .terms
            .iter()
            .map(|(e, c)| (offset(e), self.ring.elem_to_u64(c)))
            .collect();
        let b: Vec<(usize, u64)> = other
            .terms
            .iter()
            .map(|(e, c)| (offset(e), self.ring.elem_to_u64(c)))
            .collect();
        let mut dense = vec![0u64; size];
        for &(o1, c1) in &a {
            for &(o2, c2) in &b {
                let slot = &mut dense[o1 + o2];
                *slot = (*slot as u128 + c1 as u128 * c2 as u128).rem_euclid(m as u128) as u64;
            }
        }
        let mut terms = BTreeMap::new();
        for (idx, &v) in dense.iter().enumerate() {
            if v != 0 {
                let mut exp = Exponents::new();
                let mut rest = idx;
                for s in &strides {
                    exp.push((rest / s) as u16);
                    rest %= s;
                }
                terms.insert(GradedExp(exp), self.ring.elem_from_u64(v));
            }
        }
        Some(MultiPoly {
            ring: self.ring.clone(),
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.ring.clone(), self.vars.clone());
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

    /// Formal partial derivative with respect to variable `v`.
    pub fn derivative(&self, v: usize) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = e.0[v];
            if d == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2.0[v] = d - 1;
            let c2 = self.ring.mul(c, &self.ring.from_i64(d as i64));
            if !self.ring.is_zero(&c2) {
                terms.insert(e2, c2);
            }
        }
        MultiPoly {
            ring: self.ring.clone(),
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Map coefficients into another ring (e.g. reduction Z -> Z/p^k).
    pub fn map_ring<S: CoeffRing>(
        &self,
        ring: S,
        f: impl Fn(&R::Elem) -> S::Elem,
    ) -> MultiPoly<S> {
        let items = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), f(c)))
            .collect();
        MultiPoly::from_terms(ring, self.vars.clone(), items)
    }
}

impl MultiPoly<ModRing> {
    /// p-th power endomorphism over F_p: exponents scale by p, coefficients
    /// are fixed (Fermat).
    pub fn frobenius(&self) -> Result<Self> {
        let p = self
            .ring
            .char_p()
            .ok_or_else(|| Error::Unsupported("frobenius needs a ring of characteristic p".into()))?
            as u16;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                (
                    GradedExp(e.0.iter().map(|&x| x * p).collect()),
                    *c,
                )
            })
            .collect();
        Ok(MultiPoly {
            ring: self.ring,
            vars: self.vars.clone(),
            terms,
        })
    }
}

impl MultiPoly<IntegerRing> {
    /// Exact division by a positive integer; errors if any coefficient
    /// leaves a remainder.
    pub fn div_exact(&self, q: &BigInt) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (quo, rem) = num_integer::Integer::div_rem(c, q);
            if !rem.is_zero() {
                return Err(Error::Invariant(format!(
                    "coefficient {c} not divisible by {q}"
                )));
            }
            terms.insert(e.clone(), quo);
        }
        Ok(MultiPoly {
            ring: IntegerRing,
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Evaluate at ring elements, mapping integer coefficients through the
    /// canonical map Z -> S. Powers of each argument are cached; monomials
    /// touching a zero argument are skipped.
    pub fn eval_elems<S: CoeffRing>(&self, ring: &S, args: &[S::Elem]) -> Result<S::Elem> {
        if args.len() != self.vars.len() {
            return Err(Error::RingMismatch(format!(
                "expected {} arguments, got {}",
                self.vars.len(),
                args.len()
            )));
        }
        let n = args.len();
        let mut max_exp = vec![0u16; n];
        for e in self.terms.keys() {
            for (v, &x) in e.0.iter().enumerate() {
                max_exp[v] = max_exp[v].max(x);
            }
        }
        // powers[v][j] = args[v]^j, built lazily up to max_exp[v]
        let mut powers: Vec<Vec<S::Elem>> = Vec::with_capacity(n);
        let arg_zero: Vec<bool> = args.iter().map(|a| ring.is_zero(a)).collect();
        for v in 0..n {
            let mut pv = vec![ring.one()];
            if !arg_zero[v] {
                for j in 1..=max_exp[v] {
                    let next = ring.mul(&pv[(j - 1) as usize], &args[v]);
                    pv.push(next);
                }
            }
            powers.push(pv);
        }
        let mut acc = ring.zero();
        'terms: for (e, c) in &self.terms {
            let mut prod = ring.from_bigint(c);
            if ring.is_zero(&prod) {
                continue;
            }
            for (v, &x) in e.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if arg_zero[v] {
                    continue 'terms;
                }
                prod = ring.mul(&prod, &powers[v][x as usize]);
            }
            acc = ring.add(&acc, &prod);
        }
        Ok(acc)
    }

    /// Substitute polynomials for the variables.
    pub fn eval_polys<S: CoeffRing>(&self, args: &[MultiPoly<S>]) -> Result<MultiPoly<S>> {
        let first = args
            .first()
            .ok_or_else(|| Error::RingMismatch("no substitution arguments".into()))?;
        let pr = PolyRing::new(first.ring.clone(), first.vars.clone());
        self.eval_elems(&pr, args)
    }
}

// ---------------------------------------------------------------------------
// Text grammar: terms `c*V1^e1*V2^e2` joined by `+` / `-`.
// ---------------------------------------------------------------------------

impl<R: CoeffRing> fmt::Display for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|a, b| display_cmp(a.0, b.0));
        for (i, (e, c)) in items.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let cs = self.ring.elem_string(c);
            let mut factors: Vec<String> = Vec::new();
            for (v, &x) in e.0.iter().enumerate() {
                if x == 1 {
                    factors.push(self.vars[v].clone());
                } else if x > 1 {
                    factors.push(format!("{}^{}", self.vars[v], x));
                }
            }
            if factors.is_empty() {
                write!(f, "{cs}")?;
            } else if cs == "1" {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", cs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Lexer<'a> {
    input: &'a [u8],
    pos: usize,
}

#[derive(Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    End,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer {
            input: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Result<(Tok, usize)> {
        let save = self.pos;
        let t = self.next()?;
        let after = self.pos;
        self.pos = save;
        Ok((t.0, after))
    }

    fn next(&mut self) -> Result<(Tok, usize)> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.input.len() {
            return Ok((Tok::End, start));
        }
        let c = self.input[self.pos];
        match c {
            b'+' => {
                self.pos += 1;
                Ok((Tok::Plus, start))
            }
            b'-' => {
                self.pos += 1;
                Ok((Tok::Minus, start))
            }
            b'*' => {
                self.pos += 1;
                Ok((Tok::Star, start))
            }
            b'^' => {
                self.pos += 1;
                Ok((Tok::Caret, start))
            }
            b'0'..=b'9' => {
                let mut end = self.pos;
                while end < self.input.len() && self.input[end].is_ascii_digit() {
                    end += 1;
                }
                let s = std::str::from_utf8(&self.input[self.pos..end]).unwrap();
                self.pos = end;
                Ok((Tok::Int(s.parse().unwrap()), start))
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut end = self.pos;
                while end < self.input.len()
                    && (self.input[end].is_ascii_alphanumeric() || self.input[end] == b'_')
                {
                    end += 1;
                }
                let s = std::str::from_utf8(&self.input[self.pos..end]).unwrap().to_string();
                self.pos = end;
                Ok((Tok::Ident(s), start))
            }
            other => Err(Error::Parse {
                pos: start,
                msg: format!("unexpected character {:?}", other as char),
            }),
        }
    }
}

impl<R: CoeffRing> MultiPoly<R> {
    /// Parse the poly grammar over a declared variable alphabet.
    pub fn parse(input: &str, ring: R, vars: Arc<Vec<String>>) -> Result<Self> {
        let mut lex = Lexer::new(input);
        let mut acc = Self::zero(ring.clone(), vars.clone());
        let mut first = true;
        loop {
            let (tok, _) = lex.peek()?;
            if tok == Tok::End {
                if first {
                    return Err(Error::Parse {
                        pos: lex.pos,
                        msg: "empty polynomial".into(),
                    });
                }
                break;
            }
            let mut negate = false;
            if !first {
                let (tok, pos) = lex.next()?;
                match tok {
                    Tok::Plus => {}
                    Tok::Minus => negate = true,
                    _ => {
                        return Err(Error::Parse {
                            pos,
                            msg: "expected + or - between terms".into(),
                        })
                    }
                }
            } else if tok == Tok::Minus {
                lex.next()?;
                negate = true;
            }
            first = false;
            let term = Self::parse_term(&mut lex, &ring, &vars)?;
            acc = if negate {
                acc.sub(&term)?
            } else {
                acc.add(&term)?
            };
        }
        Ok(acc)
    }

    fn parse_term(lex: &mut Lexer, ring: &R, vars: &Arc<Vec<String>>) -> Result<Self> {
        let mut coeff = ring.one();
        let mut exp = GradedExp::zeros(vars.len());
        // optional extra leading sign (supports printing negatives as `-1*x`)
        if let (Tok::Minus, _) = lex.peek()? {
            lex.next()?;
            coeff = ring.neg(&coeff);
        }
        loop {
            let (tok, pos) = lex.next()?;
            match tok {
                Tok::Int(n) => {
                    coeff = ring.mul(&coeff, &ring.from_bigint(&n));
                }
                Tok::Ident(name) => {
                    let v = vars.iter().position(|w| w == &name).ok_or_else(|| Error::Parse {
                        pos,
                        msg: format!("unknown variable {name:?}"),
                    })?;
                    let mut e: u32 = 1;
                    if let (Tok::Caret, _) = lex.peek()? {
                        lex.next()?;
                        let (t, p2) = lex.next()?;
                        match t {
                            Tok::Int(n) => {
                                e = n.to_u32().filter(|&x| x <= u16::MAX as u32).ok_or(
                                    Error::Parse {
                                        pos: p2,
                                        msg: "exponent too large".into(),
                                    },
                                )?;
                            }
                            _ => {
                                return Err(Error::Parse {
                                    pos: p2,
                                    msg: "expected integer exponent".into(),
                                })
                            }
                        }
                    }
                    let cur = exp.0[v] as u32 + e;
                    if cur > u16::MAX as u32 {
                        return Err(Error::Parse {
                            pos,
                            msg: "exponent too large".into(),
                        });
                    }
                    exp.0[v] = cur as u16;
                }
                _ => {
                    return Err(Error::Parse {
                        pos,
                        msg: "expected coefficient or variable".into(),
                    })
                }
            }
            match lex.peek()? {
                (Tok::Star, _) => {
                    lex.next()?;
                }
                _ => break,
            }
        }
        Ok(Self::from_terms(
            ring.clone(),
            vars.clone(),
            vec![(exp, coeff)],
        ))
    }
}

/// Helper to build a shared variable list.
pub fn varset(names: &[&str]) -> Arc<Vec<String>> {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}
