//! The Weyl algebra of PD differential operators on affine d-space over
//! Z/p^{m+1}: normal-ordered exact arithmetic.
//!
//! Elements are sums c_{a,b} x^a d^b with all x's to the left of all d's.
//! The product is the bilinear extension of
//!
//!   (x^a d^b)(x^c d^e) = sum_{k <= min(b,c)} prod_i C(b_i,k_i) C(c_i,k_i) k_i!
//!                        * x^{a+c-k} d^{b+e-k},
//!
//! the normal-ordering closure of [d_i, x_i] = 1. Terms with
//! v_p(k!) >= level+1 vanish, which caps the inner sum at a small k.

use crate::error::{Error, Result};
use crate::poly::forms::monomials_of_degree_at_most;
use crate::poly::{display_cmp, Exponents, GradedExp, ModRing, MultiPoly};
use crate::ring::{checked_pow, factorial_valuation, is_small_prime, ModInt};
use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Normal-ordered element of the Weyl algebra at one level. The exponent key
/// holds (a_1..a_d, b_1..b_d); coefficients are canonical residues
/// mod p^{level+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    p: u32,
    level: u32,
    d: usize,
    terms: BTreeMap<GradedExp, u64>,
}

impl WeylElement {
    pub fn zero(p: u32, level: u32, d: usize) -> Result<Self> {
        if !is_small_prime(p) {
            return Err(Error::Range(format!("{p} is not a supported prime")));
        }
        if d == 0 {
            return Err(Error::Range("need at least one variable".into()));
        }
        checked_pow(p, level + 1)?;
        Ok(WeylElement {
            p,
            level,
            d,
            terms: BTreeMap::new(),
        })
    }

    pub fn one(p: u32, level: u32, d: usize) -> Result<Self> {
        let mut e = Self::zero(p, level, d)?;
        e.terms.insert(GradedExp::zeros(2 * d), 1 % e.modulus());
        e.normalize();
        Ok(e)
    }

    /// Single term c * x^a d^b.
    pub fn term(p: u32, level: u32, d: usize, a: &[u16], b: &[u16], c: i64) -> Result<Self> {
        if a.len() != d || b.len() != d {
            return Err(Error::Range("exponent length must equal d".into()));
        }
        let mut e = Self::zero(p, level, d)?;
        let m = e.modulus();
        let mut exp = Exponents::new();
        exp.extend_from_slice(a);
        exp.extend_from_slice(b);
        e.terms.insert(GradedExp(exp), c.rem_euclid(m as i64) as u64);
        e.normalize();
        Ok(e)
    }

    /// The coordinate generator x_i.
    pub fn gen_x(p: u32, level: u32, d: usize, i: usize) -> Result<Self> {
        let mut a = vec![0u16; d];
        a[i] = 1;
        Self::term(p, level, d, &a, &vec![0; d], 1)
    }

    /// The derivation generator d_i.
    pub fn gen_d(p: u32, level: u32, d: usize, i: usize) -> Result<Self> {
        let mut b = vec![0u16; d];
        b[i] = 1;
        Self::term(p, level, d, &vec![0; d], &b, 1)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Level m: coefficients live in Z/p^{m+1}.
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn modulus(&self) -> u64 {
        checked_pow(self.p, self.level + 1).expect("validated")
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GradedExp, u64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn coeff(&self, exp: &GradedExp) -> ModInt {
        ModInt::from_raw(
            self.p,
            self.level + 1,
            self.terms.get(exp).copied().unwrap_or(0),
        )
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.degree()).max().unwrap_or(0)
    }

    fn normalize(&mut self) {
        self.terms.retain(|_, c| *c != 0);
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.level != other.level || self.d != other.d {
            return Err(Error::RingMismatch(format!(
                "Weyl parameters differ: (p={},m={},d={}) vs (p={},m={},d={})",
                self.p, self.level, self.d, other.p, other.level, other.d
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let m = self.modulus();
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            let slot = out.terms.entry(e.clone()).or_insert(0);
            *slot = (*slot + c) % m;
        }
        out.normalize();
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let m = self.modulus();
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| (e.clone(), (m - c) % m))
            .collect();
        WeylElement { terms, ..self.clone() }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        let m = self.modulus();
        let cm = c.rem_euclid(m as i64) as u64;
        let mut terms = BTreeMap::new();
        for (e, &v) in &self.terms {
            let w = crate::ring::mul_mod(v, cm, m);
            if w != 0 {
                terms.insert(e.clone(), w);
            }
        }
        WeylElement { terms, ..self.clone() }
    }

    pub fn scale(&self, c: &ModInt) -> Result<Self> {
        if c.p() != self.p || c.k() != self.level + 1 {
            return Err(Error::ModulusMismatch {
                p1: self.p,
                k1: self.level + 1,
                p2: c.p(),
                k2: c.k(),
            });
        }
        Ok(self.scale_int(c.value() as i64))
    }

    /// Normal-ordered product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let d = self.d;
        let m = self.modulus();
        let kk = self.level + 1;
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p, self.level, d);
        }

        // cap[r] = largest k with v_p(k!) < r; k above that kills the term
        let mut cap = vec![0u64; (kk + 1) as usize];
        for r in 1..=kk {
            let mut k = 0u64;
            while factorial_valuation(k + 1, self.p) < r as u64 {
                k += 1;
            }
            cap[r as usize] = k;
        }
        let kcap = cap[kk as usize];

        // Pascal and factorial tables mod p^{level+1}
        let max_b = self
            .terms
            .keys()
            .flat_map(|e| e.0[d..].iter())
            .copied()
            .max()
            .unwrap_or(0) as u64;
        let max_c = other
            .terms
            .keys()
            .flat_map(|e| e.0[..d].iter())
            .copied()
            .max()
            .unwrap_or(0) as u64;
        let maxn = max_b.max(max_c);
        let kw = (kcap.min(maxn) + 1) as usize;
        let mut binom = vec![0u64; (maxn as usize + 1) * kw];
        for n in 0..=maxn as usize {
            binom[n * kw] = 1 % m;
            for k in 1..kw.min(n + 1) {
                let up = binom[(n - 1) * kw + k];
                let diag = binom[(n - 1) * kw + k - 1];
                binom[n * kw + k] = (up + diag) % m;
            }
        }
        let mut fact = vec![1 % m; kw];
        for k in 1..kw {
            fact[k] = crate::ring::mul_mod(fact[k - 1], k as u64, m);
        }

        // factor(b, c, k) for one dimension
        let factor = |b: u64, c: u64, k: u64| -> u64 {
            let f1 = binom[b as usize * kw + k as usize];
            let f2 = binom[c as usize * kw + k as usize];
            crate::ring::mul_mod(crate::ring::mul_mod(f1, f2, m), fact[k as usize], m)
        };

        let lhs: Vec<(&GradedExp, u64)> = self.terms.iter().map(|(e, &c)| (e, c)).collect();
        let rhs: Vec<(&GradedExp, u64)> = other.terms.iter().map(|(e, &c)| (e, c)).collect();

        // exponent box of the result, for the dense accumulator
        let mut dims = vec![0usize; 2 * d];
        for s in 0..2 * d {
            let m1 = self.terms.keys().map(|e| e.0[s]).max().unwrap() as usize;
            let m2 = other.terms.keys().map(|e| e.0[s]).max().unwrap() as usize;
            dims[s] = m1 + m2 + 1;
            if m1 + m2 > u16::MAX as usize {
                return Err(Error::Range("exponent overflow in product".into()));
            }
        }
        let mut box_size = 1usize;
        let mut fits = true;
        for &dim in &dims {
            match box_size.checked_mul(dim) {
                Some(s) if s <= (1 << 23) => box_size = s,
                _ => {
                    fits = false;
                    break;
                }
            }
        }

        let mut strides = vec![1usize; 2 * d];
        for s in (0..2 * d - 1).rev() {
            strides[s] = strides[s + 1] * dims[s + 1];
        }

        let p64 = self.p as u64;
        let val_p = |mut v: u64| -> u32 {
            let mut r = 0;
            while v != 0 && v.is_multiple_of(p64) {
                v /= p64;
                r += 1;
            }
            r
        };

        let mut dense: Vec<u64> = if fits { vec![0u64; box_size] } else { Vec::new() };
        let mut sparse: BTreeMap<GradedExp, u64> = BTreeMap::new();

        let mut kidx = vec![0u64; d];
        for &(e1, c1) in &lhs {
            let (a, b) = e1.0.split_at(d);
            for &(e2, c2) in &rhs {
                let (c, e) = e2.0.split_at(d);
                let base = crate::ring::mul_mod(c1, c2, m);
                if base == 0 {
                    continue;
                }
                let budget = kk - val_p(base).min(kk);
                let pair_cap = if budget == 0 { 0 } else { cap[budget as usize] };
                // iterate multi-index k <= min(b, c) componentwise
                kidx.iter_mut().for_each(|k| *k = 0);
                'outer: loop {
                    // coefficient for current k
                    let mut coeff = base;
                    for i in 0..d {
                        if kidx[i] > 0 {
                            coeff =
                                crate::ring::mul_mod(coeff, factor(b[i] as u64, c[i] as u64, kidx[i]), m);
                            if coeff == 0 {
                                break;
                            }
                        }
                    }
                    if coeff != 0 {
                        if fits {
                            let mut off = 0usize;
                            for i in 0..d {
                                off += (a[i] as usize + c[i] as usize - kidx[i] as usize)
                                    * strides[i];
                                off += (b[i] as usize + e[i] as usize - kidx[i] as usize)
                                    * strides[d + i];
                            }
                            dense[off] = (dense[off] + coeff) % m;
                        } else {
                            let mut exp = Exponents::new();
                            for i in 0..d {
                                exp.push(a[i] + c[i] - kidx[i] as u16);
                            }
                            for i in 0..d {
                                exp.push(b[i] + e[i] - kidx[i] as u16);
                            }
                            let slot = sparse.entry(GradedExp(exp)).or_insert(0);
                            *slot = (*slot + coeff) % m;
                        }
                    }
                    // advance multi-index
                    let mut pos = 0;
                    loop {
                        if pos == d {
                            break 'outer;
                        }
                        let lim = (b[pos] as u64).min(c[pos] as u64).min(pair_cap);
                        if kidx[pos] < lim {
                            kidx[pos] += 1;
                            break;
                        }
                        kidx[pos] = 0;
                        pos += 1;
                    }
                }
            }
        }

        let mut out = Self::zero(self.p, self.level, d)?;
        if fits {
            for (idx, &v) in dense.iter().enumerate() {
                if v != 0 {
                    let mut exp = Exponents::new();
                    let mut rest = idx;
                    for s in &strides {
                        exp.push((rest / s) as u16);
                        rest %= s;
                    }
                    out.terms.insert(GradedExp(exp), v);
                }
            }
        } else {
            sparse.retain(|_, v| *v != 0);
            out.terms = sparse;
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.p, self.level, self.d)?;
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

    /// Coefficientwise reduction to a lower level.
    pub fn reduce(&self, level2: u32) -> Result<Self> {
        if level2 > self.level {
            return Err(Error::Range(format!(
                "cannot reduce level {} to {}",
                self.level, level2
            )));
        }
        let m2 = checked_pow(self.p, level2 + 1)?;
        let mut out = Self::zero(self.p, level2, self.d)?;
        for (e, &c) in &self.terms {
            let v = c % m2;
            if v != 0 {
                out.terms.insert(e.clone(), v);
            }
        }
        Ok(out)
    }

    /// Canonical lift to a higher level (representatives are kept).
    pub fn lift_to(&self, level2: u32) -> Result<Self> {
        if level2 < self.level {
            return Err(Error::Range("lift target below current level".into()));
        }
        checked_pow(self.p, level2 + 1)?;
        Ok(WeylElement {
            level: level2,
            ..self.clone()
        })
    }

    /// Exact division by p^j; every coefficient must be divisible. The level
    /// drops by j.
    pub fn pdiv(&self, j: u32) -> Result<Self> {
        if j > self.level {
            return Err(Error::Range(format!(
                "cannot divide by p^{} at level {}",
                j, self.level
            )));
        }
        let pj = checked_pow(self.p, j)?;
        let m2 = checked_pow(self.p, self.level + 1 - j)?;
        let mut out = Self::zero(self.p, self.level - j, self.d)?;
        for (e, &c) in &self.terms {
            if c % pj != 0 {
                return Err(Error::NotDivisible {
                    value: c,
                    p: self.p,
                    j,
                });
            }
            let v = (c / pj) % m2;
            if v != 0 {
                out.terms.insert(e.clone(), v);
            }
        }
        Ok(out)
    }

    /// True when every coefficient is divisible by p^j.
    pub fn divisible_by_p(&self, j: u32) -> bool {
        let pj = match checked_pow(self.p, j) {
            Ok(v) => v,
            Err(_) => return false,
        };
        self.terms.values().all(|&c| c % pj == 0)
    }

    /// Central iff it commutes with every x_i and d_i (the generators).
    pub fn is_central(&self) -> bool {
        for i in 0..self.d {
            let x = Self::gen_x(self.p, self.level, self.d, i).unwrap();
            let dd = Self::gen_d(self.p, self.level, self.d, i).unwrap();
            if !self.commutator(&x).unwrap().is_zero() || !self.commutator(&dd).unwrap().is_zero()
            {
                return false;
            }
        }
        true
    }

    /// Action on the polynomial ring Z/p^{level+1}[x_1..x_d], with x_i acting
    /// by multiplication and d_i by formal differentiation. Independent of
    /// `mul`; serves as the multiplication oracle.
    pub fn apply(&self, f: &MultiPoly<ModRing>) -> Result<MultiPoly<ModRing>> {
        let ring = *f.ring();
        if ring.p() != self.p || ring.k() != self.level + 1 || f.vars().len() != self.d {
            return Err(Error::RingMismatch(
                "polynomial ring does not match the operator".into(),
            ));
        }
        let m = self.modulus();
        let mut items: Vec<(GradedExp, ModInt)> = Vec::new();
        for (op_exp, c) in &self.terms {
            let (a, b) = op_exp.0.split_at(self.d);
            'mono: for (fe, fc) in f.terms() {
                let mut coeff = crate::ring::mul_mod(*c, fc.value(), m);
                let mut exp = Exponents::new();
                for i in 0..self.d {
                    let mi = fe.0[i] as u64;
                    let bi = b[i] as u64;
                    if mi < bi {
                        continue 'mono;
                    }
                    // falling factorial m_i (m_i - 1) ... (m_i - b_i + 1)
                    for t in 0..bi {
                        coeff = crate::ring::mul_mod(coeff, (mi - t) % m, m);
                    }
                    exp.push(fe.0[i] - b[i] + a[i]);
                }
                if coeff != 0 {
                    items.push((GradedExp(exp), ModInt::from_raw(self.p, self.level + 1, coeff)));
                }
            }
        }
        Ok(MultiPoly::from_terms(ring, f.vars().clone(), items))
    }

    /// Graded ordered basis of monomials x^a d^b with |a| + |b| <= max_deg.
    pub fn monomials_up_to(d: usize, max_deg: u32) -> Vec<GradedExp> {
        monomials_of_degree_at_most(2 * d, max_deg)
    }

    /// Build from a monomial basis coordinate vector.
    pub fn from_coords(
        p: u32,
        level: u32,
        d: usize,
        basis: &[GradedExp],
        coords: &[u64],
    ) -> Result<Self> {
        let mut out = Self::zero(p, level, d)?;
        let m = out.modulus();
        for (e, &c) in basis.iter().zip(coords) {
            if c % m != 0 {
                out.terms.insert(e.clone(), c % m);
            }
        }
        Ok(out)
    }

    /// Variable names used by the text grammar.
    pub fn var_names(d: usize) -> Arc<Vec<String>> {
        Arc::new(
            (1..=d)
                .map(|i| format!("x{i}"))
                .chain((1..=d).map(|i| format!("d{i}")))
                .collect(),
        )
    }

    /// Parse the grammar `c*x1^a1*...*d1^b1*...` (normal order is implied).
    pub fn parse(input: &str, p: u32, level: u32, d: usize) -> Result<Self> {
        let ring = ModRing::new(p, level + 1)?;
        let poly = MultiPoly::parse(input, ring, Self::var_names(d))?;
        let mut out = Self::zero(p, level, d)?;
        for (e, c) in poly.terms() {
            out.terms.insert(e.clone(), c.value());
        }
        out.normalize();
        Ok(out)
    }
}

impl std::fmt::Display for WeylElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = Self::var_names(self.d);
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|a, b| display_cmp(a.0, b.0));
        for (i, (e, c)) in items.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &x) in e.0.iter().enumerate() {
                if x == 1 {
                    factors.push(names[v].clone());
                } else if x > 1 {
                    factors.push(format!("{}^{}", names[v], x));
                }
            }
            if factors.is_empty() {
                write!(f, "{c}")?;
            } else if **c == 1 {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", c, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Evaluate an integer polynomial in two variables at noncommuting Weyl
/// arguments, with every monomial x^s y^t read in that order (all powers of
/// the first argument to the left).
pub fn eval_int_poly_ordered(
    poly: &MultiPoly<crate::poly::IntegerRing>,
    a: &WeylElement,
    b: &WeylElement,
) -> Result<WeylElement> {
    a.compatible(b)?;
    if poly.vars().len() != 2 {
        return Err(Error::Range("expected a polynomial in two variables".into()));
    }
    let max_s = poly.terms().map(|(e, _)| e.0[0]).max().unwrap_or(0);
    let max_t = poly.terms().map(|(e, _)| e.0[1]).max().unwrap_or(0);
    let mut apow = vec![WeylElement::one(a.p(), a.level(), a.d())?];
    for j in 1..=max_s {
        let next = apow[(j - 1) as usize].mul(a)?;
        apow.push(next);
    }
    let mut bpow = vec![WeylElement::one(a.p(), a.level(), a.d())?];
    for j in 1..=max_t {
        let next = bpow[(j - 1) as usize].mul(b)?;
        bpow.push(next);
    }
    let m = a.modulus();
    let mb = BigInt::from(m);
    let mut acc = WeylElement::zero(a.p(), a.level(), a.d())?;
    for (e, c) in poly.terms() {
        let cm = ((c % &mb) + &mb) % &mb;
        let (_, digits) = cm.to_u64_digits();
        let cv = digits.first().copied().unwrap_or(0);
        let term = apow[e.0[0] as usize]
            .mul(&bpow[e.0[1] as usize])?
            .scale_int(cv as i64);
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: u32, level: u32, s: &str) -> WeylElement {
        WeylElement::parse(s, p, level, 1).unwrap()
    }

    #[test]
    fn defining_relation() {
        // d * x = x*d + 1
        let x = w(3, 1, "x1");
        let dd = w(3, 1, "d1");
        assert_eq!(dd.mul(&x).unwrap(), w(3, 1, "x1*d1 + 1"));
    }

    #[test]
    fn mul_examples() {
        // d^2 x^2 = x^2 d^2 + 4 x d + 2 (mod 8)
        let lhs = w(2, 2, "d1^2").mul(&w(2, 2, "x1^2")).unwrap();
        assert_eq!(lhs, w(2, 2, "x1^2*d1^2 + 4*x1*d1 + 2"));

        // (x d)^2 = x^2 d^2 + x d
        let xd = w(3, 1, "x1*d1");
        assert_eq!(xd.mul(&xd).unwrap(), w(3, 1, "x1^2*d1^2 + x1*d1"));
    }

    #[test]
    fn commutator_examples() {
        let c = w(3, 2, "d1^3").commutator(&w(3, 2, "x1^3")).unwrap();
        assert_eq!(c, w(3, 2, "9*x1^2*d1^2 + 18*x1*d1 + 6"));

        let c = w(2, 2, "d1^2").commutator(&w(2, 2, "x1^2")).unwrap();
        assert_eq!(c, w(2, 2, "4*x1*d1 + 2"));

        let u = w(2, 2, "x1^2*d1 + 3*d1^2");
        assert!(u.commutator(&u).unwrap().is_zero());
    }

    #[test]
    fn pow_examples() {
        // (x^3)^3 = x^9 mod 9
        let x3 = w(3, 1, "x1^3");
        assert_eq!(x3.pow(3).unwrap(), w(3, 1, "x1^9"));

        // (x^2 d^2)^2 = x^4 d^4 + 2 x^2 d^2 mod 4
        let u = w(2, 1, "x1^2*d1^2");
        assert_eq!(u.pow(2).unwrap(), w(2, 1, "x1^4*d1^4 + 2*x1^2*d1^2"));

        assert_eq!(u.pow(0).unwrap(), WeylElement::one(2, 1, 1).unwrap());
    }

    #[test]
    fn reduce_and_pdiv() {
        let c = w(3, 2, "d1^3").commutator(&w(3, 2, "x1^3")).unwrap();
        let half = c.pdiv(1).unwrap();
        assert_eq!(half, w(3, 1, "3*x1^2*d1^2 + 6*x1*d1 + 2"));
        let down = half.reduce(0).unwrap();
        assert_eq!(down, w(3, 0, "2"));
        assert_eq!(half.reduce(1).unwrap(), half);
        assert!(matches!(
            w(3, 1, "x1").pdiv(1),
            Err(Error::NotDivisible { .. })
        ));
        assert!(w(3, 1, "x1").pdiv(2).is_err());
    }

    #[test]
    fn centrality() {
        assert!(w(3, 0, "x1^3").is_central());
        assert!(!w(3, 0, "x1").is_central());
        assert!(w(3, 1, "x1^9").is_central());
        assert!(!w(3, 1, "x1^3").is_central());
        assert!(w(2, 1, "x1^4 + 2*x1^2").is_central());
    }

    #[test]
    fn monomial_basis() {
        let b = WeylElement::monomials_up_to(1, 1);
        let show = |e: &GradedExp| (e.0[0], e.0[1]);
        assert_eq!(
            b.iter().map(show).collect::<Vec<_>>(),
            vec![(0, 0), (1, 0), (0, 1)]
        );
        let b = WeylElement::monomials_up_to(1, 2);
        assert_eq!(
            b.iter().map(show).collect::<Vec<_>>(),
            vec![(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
        );
        assert_eq!(w(2, 1, "x1^2*d1^3").total_degree(), 5);
    }

    #[test]
    fn action_oracle_agrees_on_product() {
        use crate::poly::{varset, CoeffRing};
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for p in [2u32, 3] {
            for _ in 0..25 {
                let level = rng.gen_range(0..=2);
                let mk = |rng: &mut rand_chacha::ChaCha8Rng| {
                    let mut e = WeylElement::zero(p, level, 1).unwrap();
                    for _ in 0..rng.gen_range(1..=3) {
                        let a = rng.gen_range(0..=4u16);
                        let b = rng.gen_range(0..=4u16.saturating_sub(a));
                        let c = rng.gen_range(1..(p as i64).pow(level + 1));
                        e = e
                            .add(&WeylElement::term(p, level, 1, &[a], &[b], c).unwrap())
                            .unwrap();
                    }
                    e
                };
                let u = mk(&mut rng);
                let v = mk(&mut rng);
                let prod = u.mul(&v).unwrap();
                let ring = ModRing::new(p, level + 1).unwrap();
                let vars = varset(&["t1"]);
                for deg in 0..=10u16 {
                    let mono = MultiPoly::monomial(
                        ring,
                        vars.clone(),
                        GradedExp(smallvec::smallvec![deg]),
                        ring.one(),
                    )
                    .unwrap();
                    let lhs = prod.apply(&mono).unwrap();
                    let rhs = u.apply(&v.apply(&mono).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "p={p} level={level} u={u} v={v} deg={deg}");
                }
            }
        }
    }

    #[test]
    fn two_variable_product() {
        let u = WeylElement::parse("d1*d2", 2, 1, 2).unwrap();
        let v = WeylElement::parse("x1*x2", 2, 1, 2).unwrap();
        // d1 d2 x1 x2 = (x1 d1 + 1)(x2 d2 + 1) expanded
        let expect =
            WeylElement::parse("x1*x2*d1*d2 + x1*d1 + x2*d2 + 1", 2, 1, 2).unwrap();
        assert_eq!(u.mul(&v).unwrap(), expect);
    }

    #[test]
    fn display_roundtrip() {
        let u = w(3, 2, "9*x1^2*d1^2 + 18*x1*d1 + 6");
        assert_eq!(u.to_string(), "9*x1^2*d1^2 + 18*x1*d1 + 6");
        assert_eq!(WeylElement::parse(&u.to_string(), 3, 2, 1).unwrap(), u);
        assert_eq!(
            WeylElement::zero(3, 2, 1).unwrap().to_string(),
            "0"
        );
    }

    #[test]
    fn parameter_mismatch() {
        let u = w(3, 1, "x1");
        let v = w(3, 2, "x1");
        assert!(u.mul(&v).is_err());
        let t = WeylElement::parse("x1", 2, 1, 1).unwrap();
        assert!(u.add(&t).is_err());
    }

    #[test]
    fn ordered_poly_evaluation() {
        use crate::poly::{varset, IntegerRing};
        // psi_2 at p=2 is x*y: ordered evaluation gives a*b
        let vars = varset(&["x", "y"]);
        let xp = MultiPoly::var(IntegerRing, vars.clone(), 0).unwrap();
        let yp = MultiPoly::var(IntegerRing, vars.clone(), 1).unwrap();
        let pr = xp.mul(&yp).unwrap();
        let a = w(2, 2, "d1");
        let b = w(2, 2, "x1");
        let got = eval_int_poly_ordered(&pr, &a, &b).unwrap();
        assert_eq!(got, a.mul(&b).unwrap());
    }
}
