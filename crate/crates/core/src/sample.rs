//! Seeded random element generators for the verification suites.

use crate::error::Result;
use crate::poly::{GradedExp, ModRing, MultiPoly, PolyRing};
use crate::weyl::WeylElement;
use crate::witt::WittVector;
use rand::Rng;
use smallvec::SmallVec;

/// Random polynomial over F_p in the center coordinates X_1..X_d, Xi_1..Xi_d.
pub fn random_center_poly(
    rng: &mut impl Rng,
    p: u32,
    d: usize,
    max_deg: u32,
    max_terms: usize,
) -> Result<MultiPoly<ModRing>> {
    let ring = ModRing::fp(p)?;
    let vars = crate::center::center_vars(d);
    let nterms = rng.gen_range(1..=max_terms);
    let mut items = Vec::with_capacity(nterms);
    for _ in 0..nterms {
        let deg = rng.gen_range(0..=max_deg);
        let mut exp: SmallVec<[u16; 8]> = SmallVec::new();
        let mut left = deg;
        for _ in 0..2 * d - 1 {
            let e = rng.gen_range(0..=left);
            exp.push(e as u16);
            left -= e;
        }
        exp.push(left as u16);
        let c = rng.gen_range(0..p as i64);
        items.push((
            GradedExp(exp),
            crate::ring::ModInt::new(p, 1, c)?,
        ));
    }
    Ok(MultiPoly::from_terms(ring, vars, items))
}

/// Random Witt vector of center polynomials.
pub fn random_center_witt(
    rng: &mut impl Rng,
    p: u32,
    d: usize,
    len: usize,
    max_deg: u32,
    max_terms: usize,
) -> Result<WittVector<PolyRing<ModRing>>> {
    let ring = crate::center::center_poly_ring(p, d)?;
    let comps = (0..len)
        .map(|_| random_center_poly(rng, p, d, max_deg, max_terms))
        .collect::<Result<Vec<_>>>()?;
    WittVector::new(p, ring, comps)
}

/// Random Weyl element of bounded total degree.
pub fn random_weyl(
    rng: &mut impl Rng,
    p: u32,
    level: u32,
    d: usize,
    max_deg: u32,
    max_terms: usize,
) -> Result<WeylElement> {
    let modulus = crate::ring::checked_pow(p, level + 1)?;
    let mut acc = WeylElement::zero(p, level, d)?;
    for _ in 0..rng.gen_range(1..=max_terms) {
        let deg = rng.gen_range(0..=max_deg);
        let mut parts: Vec<u16> = Vec::with_capacity(2 * d);
        let mut left = deg;
        for _ in 0..2 * d - 1 {
            let e = rng.gen_range(0..=left);
            parts.push(e as u16);
            left -= e;
        }
        parts.push(left as u16);
        let c = rng.gen_range(0..modulus) as i64;
        let term = WeylElement::term(p, level, d, &parts[..d], &parts[d..], c)?;
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// A random element of Z_i (the center at level i) produced through the
/// center maps, together with a random lift of it at the ambient level:
/// canonical coefficient lift plus a p^{i+1}-multiple of an arbitrary element.
pub fn random_central_with_lift(
    rng: &mut impl Rng,
    p: u32,
    i: u32,
    ambient: u32,
    d: usize,
    max_deg: u32,
    max_terms: usize,
) -> Result<(WeylElement, WeylElement)> {
    assert!(ambient >= i);
    let w = random_center_witt(rng, p, d, (i + 1) as usize, max_deg, max_terms)?;
    let z = if p == 2 {
        crate::poisson2::phi_even(i, &w)?
    } else {
        crate::center::phi_odd(i, &w)?
    };
    let noise = random_weyl(rng, p, ambient, d, max_deg, max_terms)?
        .scale_int(crate::ring::checked_pow(p, i + 1)? as i64);
    let lift = z.lift_to(ambient)?.add(&noise)?;
    Ok((z, lift))
}
