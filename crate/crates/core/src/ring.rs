//! Exact base arithmetic: big integers, binomial coefficients and the
//! truncated rings Z/p^k with exact division by p.

use crate::error::{Error, Result};
pub use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Largest prime accepted by the truncated rings.
pub const MAX_PRIME: u32 = 97;

/// Trial-division primality for the small primes this crate supports.
pub fn is_small_prime(p: u32) -> bool {
    if !(2..=MAX_PRIME).contains(&p) {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// p^k as u64, or an error when it does not fit.
pub fn checked_pow(p: u32, k: u32) -> Result<u64> {
    let mut m: u64 = 1;
    for _ in 0..k {
        m = m
            .checked_mul(p as u64)
            .ok_or_else(|| Error::Range(format!("{p}^{k} exceeds u64")))?;
    }
    Ok(m)
}

/// Exact binomial coefficient; returns 0 when `k > n` or either argument is negative.
pub fn binomial(n: &BigInt, k: &BigInt) -> BigInt {
    if k.is_negative() || n.is_negative() || k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    let mut i = BigInt::one();
    let mut num = n - k + 1u32;
    let k = k.clone();
    while i <= k {
        r = r * &num / &i;
        num += 1u32;
        i += 1u32;
    }
    r
}

pub fn binomial_u64(n: u64, k: u64) -> BigInt {
    binomial(&BigInt::from(n), &BigInt::from(k))
}

/// An element of Z/p^k carrying its own modulus, so that values from
/// different levels can never be mixed silently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModInt {
    p: u32,
    k: u32,
    value: u64,
}

impl ModInt {
    /// Canonical representative of `v` in Z/p^k. `p` must be a prime <= 97
    /// and p^k must fit in a u64.
    pub fn new(p: u32, k: u32, v: i64) -> Result<Self> {
        let m = Self::check_modulus(p, k)?;
        let value = v.rem_euclid(m as i64) as u64;
        Ok(ModInt { p, k, value })
    }

    pub fn from_bigint(p: u32, k: u32, v: &BigInt) -> Result<Self> {
        let m = Self::check_modulus(p, k)?;
        let mb = BigInt::from(m);
        let r = ((v % &mb) + &mb) % &mb;
        let (_, digits) = r.to_u64_digits();
        let value = digits.first().copied().unwrap_or(0);
        Ok(ModInt { p, k, value })
    }

    pub(crate) fn from_raw(p: u32, k: u32, value: u64) -> Self {
        debug_assert!(value < checked_pow(p, k).unwrap());
        ModInt { p, k, value }
    }

    fn check_modulus(p: u32, k: u32) -> Result<u64> {
        if !is_small_prime(p) {
            return Err(Error::Range(format!("{p} is not a prime <= {MAX_PRIME}")));
        }
        if k == 0 {
            return Err(Error::Range("truncation exponent must be >= 1".into()));
        }
        checked_pow(p, k)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        checked_pow(self.p, self.k).expect("validated at construction")
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_ring(&self, other: &ModInt) -> Result<()> {
        if self.p != other.p || self.k != other.k {
            return Err(Error::ModulusMismatch {
                p1: self.p,
                k1: self.k,
                p2: other.p,
                k2: other.k,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &ModInt) -> Result<ModInt> {
        self.same_ring(other)?;
        let m = self.modulus();
        Ok(ModInt {
            value: add_mod(self.value, other.value, m),
            ..*self
        })
    }

    pub fn sub(&self, other: &ModInt) -> Result<ModInt> {
        self.same_ring(other)?;
        let m = self.modulus();
        Ok(ModInt {
            value: add_mod(self.value, m - other.value % m, m),
            ..*self
        })
    }

    pub fn mul(&self, other: &ModInt) -> Result<ModInt> {
        self.same_ring(other)?;
        let m = self.modulus();
        Ok(ModInt {
            value: mul_mod(self.value, other.value, m),
            ..*self
        })
    }

    pub fn neg(&self) -> ModInt {
        let m = self.modulus();
        ModInt {
            value: if self.value == 0 { 0 } else { m - self.value },
            ..*self
        }
    }

    pub fn pow(&self, e: u64) -> ModInt {
        ModInt {
            value: pow_mod(self.value, e, self.modulus()),
            ..*self
        }
    }

    /// Exact division by p^j: the unique b in Z/p^{k-j} with p^j * b = self.
    /// Well defined by flatness of Z/p^k over Z/p^{k-j}.
    pub fn pdiv(&self, j: u32) -> Result<ModInt> {
        if j >= self.k {
            return Err(Error::Range(format!(
                "cannot divide by {}^{} in Z/{}^{}",
                self.p, j, self.p, self.k
            )));
        }
        let pj = checked_pow(self.p, j)?;
        if !self.value.is_multiple_of(pj) {
            return Err(Error::NotDivisible {
                value: self.value,
                p: self.p,
                j,
            });
        }
        let k2 = self.k - j;
        let m2 = checked_pow(self.p, k2)?;
        Ok(ModInt {
            p: self.p,
            k: k2,
            value: (self.value / pj) % m2,
        })
    }

    /// Reduction homomorphism Z/p^k -> Z/p^{k'}.
    pub fn reduce(&self, k2: u32) -> Result<ModInt> {
        if k2 == 0 || k2 > self.k {
            return Err(Error::Range(format!(
                "cannot reduce Z/{}^{} to exponent {}",
                self.p, self.k, k2
            )));
        }
        let m2 = checked_pow(self.p, k2)?;
        Ok(ModInt {
            p: self.p,
            k: k2,
            value: self.value % m2,
        })
    }

    /// Canonical lift into Z/p^{k'} for k' >= k (the representative is kept).
    pub fn lift(&self, k2: u32) -> Result<ModInt> {
        if k2 < self.k {
            return Err(Error::Range("lift target below current exponent".into()));
        }
        Self::check_modulus(self.p, k2)?;
        Ok(ModInt { k: k2, ..*self })
    }

    /// Multiplicative inverse; defined exactly for units (p does not divide value).
    pub fn inverse(&self) -> Result<ModInt> {
        if self.value.is_multiple_of(self.p as u64) {
            return Err(Error::NotDivisible {
                value: self.value,
                p: self.p,
                j: 0,
            });
        }
        Ok(ModInt {
            value: inv_mod(self.value, self.modulus()),
            ..*self
        })
    }
}

impl std::fmt::Display for ModInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Inverse of a unit modulo m via extended Euclid.
pub(crate) fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "not a unit");
    t0.rem_euclid(m as i128) as u64
}

/// p-adic valuation of k! (Legendre's formula).
pub(crate) fn factorial_valuation(k: u64, p: u32) -> u64 {
    let mut v = 0;
    let mut q = p as u64;
    while q <= k {
        v += k / q;
        q *= p as u64;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_arith_examples() {
        let a = ModInt::new(3, 2, 7).unwrap();
        let b = ModInt::new(3, 2, 5).unwrap();
        assert_eq!(a.add(&b).unwrap().value(), 3); // 12 mod 9

        let a = ModInt::new(2, 3, 5).unwrap();
        let b = ModInt::new(2, 3, 3).unwrap();
        assert_eq!(a.mul(&b).unwrap().value(), 7); // 15 mod 8

        let z = ModInt::new(5, 1, 0).unwrap();
        assert_eq!(z.neg().value(), 0);
    }

    #[test]
    fn mismatched_moduli_fail() {
        let a = ModInt::new(3, 2, 1).unwrap();
        let b = ModInt::new(3, 3, 1).unwrap();
        assert!(matches!(a.add(&b), Err(Error::ModulusMismatch { .. })));
        let c = ModInt::new(5, 2, 1).unwrap();
        assert!(a.mul(&c).is_err());
    }

    #[test]
    fn pdiv_examples() {
        let a = ModInt::new(3, 3, 6).unwrap();
        let b = a.pdiv(1).unwrap();
        assert_eq!((b.p(), b.k(), b.value()), (3, 2, 2));

        let a = ModInt::new(2, 3, 4).unwrap();
        let b = a.pdiv(2).unwrap();
        assert_eq!((b.k(), b.value()), (1, 1));

        let a = ModInt::new(3, 2, 5).unwrap();
        assert!(matches!(a.pdiv(1), Err(Error::NotDivisible { .. })));
        assert!(matches!(a.pdiv(5), Err(Error::Range(_))));
    }

    #[test]
    fn pdiv_roundtrip() {
        // p^j * pdiv(a, j), lifted back, equals a.
        for v in 0..27u64 {
            let a = ModInt::new(3, 3, v as i64).unwrap();
            for j in 0..=2u32 {
                if v % 3u64.pow(j) == 0 && j < 3 {
                    let b = a.pdiv(j).unwrap();
                    let back = b.lift(3).unwrap().value() * 3u64.pow(j) % 27;
                    assert_eq!(back, v);
                }
            }
        }
    }

    #[test]
    fn reduce_examples() {
        let a = ModInt::new(3, 3, 22).unwrap();
        assert_eq!(a.reduce(1).unwrap().value(), 1);
        let a = ModInt::new(2, 4, 13).unwrap();
        assert_eq!(a.reduce(2).unwrap().value(), 1);
        assert_eq!(a.reduce(4).unwrap(), a);
        assert!(a.reduce(5).is_err());
        assert!(a.reduce(0).is_err());
    }

    #[test]
    fn reduce_is_ring_hom() {
        for a in 0..16u64 {
            for b in 0..16u64 {
                let x = ModInt::new(2, 4, a as i64).unwrap();
                let y = ModInt::new(2, 4, b as i64).unwrap();
                let r = |m: ModInt| m.reduce(2).unwrap();
                assert_eq!(r(x.add(&y).unwrap()), r(x).add(&r(y)).unwrap());
                assert_eq!(r(x.mul(&y).unwrap()), r(x).mul(&r(y)).unwrap());
            }
        }
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_u64(3, 2), BigInt::from(3));
        assert_eq!(binomial_u64(2, 1), BigInt::from(2));
        assert_eq!(binomial_u64(9, 4), BigInt::from(126));
        assert_eq!(binomial_u64(4, 9), BigInt::from(0));
    }

    #[test]
    fn binomial_matches_pascal() {
        // Pascal-recurrence oracle up to n = 64.
        let mut row: Vec<BigInt> = vec![BigInt::one()];
        for n in 0..=64u64 {
            for (k, expect) in row.iter().enumerate() {
                assert_eq!(&binomial_u64(n, k as u64), expect, "C({n},{k})");
            }
            let mut next = vec![BigInt::one()];
            for k in 1..row.len() {
                next.push(&row[k - 1] + &row[k]);
            }
            next.push(BigInt::one());
            row = next;
        }
    }

    #[test]
    fn prime_validation() {
        assert!(ModInt::new(4, 1, 0).is_err());
        assert!(ModInt::new(1, 1, 0).is_err());
        assert!(ModInt::new(101, 1, 0).is_err());
        assert!(ModInt::new(97, 1, 0).is_ok());
        assert!(ModInt::new(2, 0, 0).is_err());
        assert!(ModInt::new(2, 70, 0).is_err()); // 2^70 > u64
    }

    #[test]
    fn inverse_units() {
        for v in [1u64, 2, 4, 5, 7, 8] {
            let a = ModInt::new(3, 2, v as i64).unwrap();
            assert_eq!(a.mul(&a.inverse().unwrap()).unwrap().value(), 1);
        }
        assert!(ModInt::new(3, 2, 3).unwrap().inverse().is_err());
    }
}
