//! Characteristic-2 machinery: the restricted structure z^[2] from the
//! contact form, the quadratic refinement Q, and the corrected center map
//! for p = 2 with its verification suite.
//!
//! The naive map z -> sum 2^i lift(z)^{2^{m-i}} fails to be additive or
//! multiplicative at p = 2; the correction replaces lift(z)^2 by
//! lift(z)^2 + 2*lift(z^[2]).

use crate::center::{canonical_lift, center_vars, CenterPoly};
use crate::error::{Error, Result};
use crate::howell::SubmoduleBasis;
use crate::poly::forms::{de_rham, OneForm, TwoForm, VectorField};
use crate::poly::{CoeffRing, ModRing, MultiPoly, PolyRing};
use crate::report::{run_trials, Report, TrialOutcome};
use crate::ring::{checked_pow, inv_mod};
use crate::weyl::WeylElement;
use crate::witt::WittVector;

/// The standard exact symplectic data over F_2 in p-curvature coordinates:
/// eta = sum Xi_i dX_i and omega = d(eta) = sum dX_i ^ dXi_i.
#[derive(Debug, Clone)]
pub struct SymplecticData {
    d: usize,
    eta: OneForm<ModRing>,
    omega: TwoForm<ModRing>,
    // inverse of the constant coefficient matrix of omega
    minv: Vec<Vec<u64>>,
}

impl SymplecticData {
    pub fn standard(d: usize) -> Result<Self> {
        let ring = ModRing::fp(2)?;
        let vars = center_vars(d);
        let n = 2 * d;
        let mut eta_comps = vec![MultiPoly::zero(ring, vars.clone()); n];
        for i in 0..d {
            eta_comps[i] = MultiPoly::var(ring, vars.clone(), d + i)?;
        }
        let eta = OneForm::new(eta_comps)?;
        let omega = eta.d()?;
        Self::new(d, eta, omega)
    }

    /// Build from explicit eta and omega; checks d(eta) = omega and that
    /// omega has an invertible constant coefficient matrix.
    pub fn new(d: usize, eta: OneForm<ModRing>, omega: TwoForm<ModRing>) -> Result<Self> {
        if eta.d()? != omega {
            return Err(Error::Invariant("d(eta) != omega".into()));
        }
        let n = 2 * d;
        // coefficient matrix of t -> i_t(omega) on coordinates
        let mut mat = vec![vec![0u64; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let c = omega.component(i, j);
                let val = if c.is_zero() {
                    0
                } else if c.total_degree() == 0 {
                    c.coeff(&crate::poly::GradedExp::zeros(n)).value()
                } else {
                    return Err(Error::Unsupported(
                        "hamiltonian solve needs a constant symplectic form".into(),
                    ));
                };
                // i_t(dv_i ^ dv_j) = t_i dv_j - t_j dv_i
                mat[j][i] = val % 2;
                mat[i][j] = (2 - val % 2) % 2;
            }
        }
        let minv = invert_f2(&mat)
            .ok_or_else(|| Error::Invariant("omega is degenerate".into()))?;
        Ok(SymplecticData {
            d,
            eta,
            omega,
            minv,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn eta(&self) -> &OneForm<ModRing> {
        &self.eta
    }

    pub fn omega(&self) -> &TwoForm<ModRing> {
        &self.omega
    }
}

fn invert_f2(mat: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
    let n = mat.len();
    let mut a: Vec<Vec<u64>> = mat.to_vec();
    let mut inv: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    for c in 0..n {
        let pivot = (c..n).find(|&r| !a[r][c].is_multiple_of(2))?;
        a.swap(c, pivot);
        inv.swap(c, pivot);
        let pv = inv_mod(a[c][c], 2);
        for x in a[c].iter_mut() {
            *x = *x * pv % 2;
        }
        for x in inv[c].iter_mut() {
            *x = *x * pv % 2;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_multiple_of(2) {
                let f = a[r][c] % 2;
                for k in 0..n {
                    a[r][k] = (a[r][k] + f * a[c][k]) % 2;
                    inv[r][k] = (inv[r][k] + f * inv[c][k]) % 2;
                }
            }
        }
    }
    Some(inv)
}

/// The unique t_z with dz = i_{t_z} omega, from the constant linear system
/// given by omega's coefficient matrix.
pub fn hamiltonian_field(z: &CenterPoly, sd: &SymplecticData) -> Result<VectorField<ModRing>> {
    let n = 2 * sd.d;
    if z.vars().len() != n {
        return Err(Error::RingMismatch("wrong variable count for d".into()));
    }
    let dz = de_rham(z);
    let ring = *z.ring();
    let vars = z.vars().clone();
    let mut comps = Vec::with_capacity(n);
    for a in 0..n {
        let mut acc = MultiPoly::zero(ring, vars.clone());
        for k in 0..n {
            if !sd.minv[a][k].is_multiple_of(2) {
                acc = acc.add(&dz.components()[k])?;
            }
        }
        comps.push(acc);
    }
    VectorField::new(comps)
}

/// The quadratic refinement Q(theta) = L_theta i_theta eta - i_{theta^[2]} eta.
pub fn quadratic_refinement(
    theta: &VectorField<ModRing>,
    sd: &SymplecticData,
) -> Result<MultiPoly<ModRing>> {
    let inner = theta.contract_one(&sd.eta)?;
    let first = theta.apply(&inner)?;
    let second = theta.p_power()?.contract_one(&sd.eta)?;
    first.sub(&second)
}

/// The restricted power z^[2] = L_{t_z} i_{t_z} eta - i_{t_z^[2]} eta.
pub fn restricted_square(z: &CenterPoly, sd: &SymplecticData) -> Result<CenterPoly> {
    quadratic_refinement(&hamiltonian_field(z, sd)?, sd)
}

/// One term of the corrected map at level m:
/// i < m: 2^i (lift(z)^2 + 2 lift(z^[2]))^{2^{m-i-1}}; i = m: 2^m lift(z).
fn phi_even_term(
    m: u32,
    i: u32,
    zlift: &WeylElement,
    sqlift: Option<&WeylElement>,
) -> Result<WeylElement> {
    let two_i = checked_pow(2, i)? as i64;
    if i == m {
        return Ok(zlift.scale_int(two_i));
    }
    let sq = sqlift.ok_or_else(|| Error::Range("missing restricted-square lift".into()))?;
    let base = zlift.pow(2)?.add(&sq.scale_int(2))?;
    Ok(base.pow(checked_pow(2, m - i - 1)? as u32)?.scale_int(two_i))
}

/// chi^{(i)}(z) = (lift(z)^2 + 2 lift(z^[2]))^{2^{i-1}} at level i, with
/// chi^{(0)}(z) = lift(z) at level 0.
pub fn chi_even(i: u32, z: &CenterPoly) -> Result<WeylElement> {
    if z.ring().char_p() != Some(2) {
        return Err(Error::Unsupported("chi_even needs F_2 coefficients".into()));
    }
    if i == 0 {
        return canonical_lift(z, 0);
    }
    let d = z.vars().len() / 2;
    let sd = SymplecticData::standard(d)?;
    let zl = canonical_lift(z, i)?;
    let sq = canonical_lift(&restricted_square(z, &sd)?, i)?;
    phi_even_term(i, 0, &zl, Some(&sq))
}

/// The corrected center map for p = 2:
/// phi_m(z_1..z_{m+1}) = sum_{i<m} 2^i (lift(z_{i+1})^2 + 2 lift(z_{i+1}^[2]))^{2^{m-i-1}}
///                       + 2^m lift(z_{m+1}), at level m. Output asserted central.
pub fn phi_even(m: u32, w: &WittVector<PolyRing<ModRing>>) -> Result<WeylElement> {
    if w.p() != 2 {
        return Err(Error::Unsupported("phi_even is the p = 2 map".into()));
    }
    if w.len() != (m + 1) as usize {
        return Err(Error::Range(format!(
            "phi_{m} needs a Witt vector of length {}",
            m + 1
        )));
    }
    let d = w.ring().vars().len() / 2;
    let sd = SymplecticData::standard(d)?;
    let zlifts = w
        .components()
        .iter()
        .map(|z| canonical_lift(z, m))
        .collect::<Result<Vec<_>>>()?;
    let sqlifts = w.components()[..m as usize]
        .iter()
        .map(|z| canonical_lift(&restricted_square(z, &sd)?, m))
        .collect::<Result<Vec<_>>>()?;
    phi_even_with_lifts(m, &zlifts, &sqlifts)
}

/// phi_m at p = 2 on caller-chosen lifts of the components and of their
/// restricted squares.
pub fn phi_even_with_lifts(
    m: u32,
    zlifts: &[WeylElement],
    sqlifts: &[WeylElement],
) -> Result<WeylElement> {
    if zlifts.len() != (m + 1) as usize || sqlifts.len() != m as usize {
        return Err(Error::Range(
            "need m+1 component lifts and m restricted-square lifts".into(),
        ));
    }
    let d = zlifts[0].d();
    let mut acc = WeylElement::zero(2, m, d)?;
    for (i, zl) in zlifts.iter().enumerate() {
        let term = phi_even_term(m, i as u32, zl, sqlifts.get(i))?;
        acc = acc.add(&term)?;
    }
    if !acc.is_central() {
        return Err(Error::Invariant(format!(
            "phi_{m} produced a non-central element: {acc}"
        )));
    }
    Ok(acc)
}

/// Howell span of the even-map generators {2^j * chi^{(m-j)}(mu)} over
/// monomials mu, truncated to the degree window.
pub fn phi_even_image_submodule(m: u32, d: usize, deg: u32) -> Result<SubmoduleBasis> {
    let ambient = WeylElement::monomials_up_to(d, deg);
    let ring = ModRing::fp(2)?;
    let vars = center_vars(d);
    let sd = SymplecticData::standard(d)?;
    let mut generators = Vec::new();
    for j in 0..=m {
        let i = j; // term index in the phi formula
        for e in crate::poly::forms::monomials_of_degree_at_most(2 * d, deg) {
            let mu = MultiPoly::monomial(ring, vars.clone(), e, ring.one())?;
            let zl = canonical_lift(&mu, m)?;
            let g = if i == m {
                phi_even_term(m, m, &zl, None)?
            } else {
                let sq = canonical_lift(&restricted_square(&mu, &sd)?, m)?;
                phi_even_term(m, i, &zl, Some(&sq))?
            };
            if g.is_zero() || g.total_degree() > deg {
                continue;
            }
            generators.push(g);
        }
    }
    crate::center::submodule_from_elements(2, m, d, ambient, &generators)
}

/// Randomized checks of the restricted-structure identities; the bracket is
/// always taken from the deformation (bracket0), never from a symbolic
/// Poisson formula.
pub fn verify_restricted_identities(d: usize, trials: u64, seed: u64) -> Result<Report> {
    let mut report = Report::new("restricted-identities", 2, 0, d, trials, seed);
    let sd = SymplecticData::standard(d)?;
    run_trials(&mut report, |_, rng| {
        let mut out = TrialOutcome::default();
        let result = (|out: &mut TrialOutcome| -> Result<()> {
            let x = crate::sample::random_center_poly(rng, 2, d, 3, 3)?;
            let y = crate::sample::random_center_poly(rng, 2, d, 3, 3)?;
            let bracket = |a: &CenterPoly, b: &CenterPoly| crate::center::bracket0(a, b, 1);

            // (qadd)
            let lhs = restricted_square(&x.add(&y)?, &sd)?
                .sub(&restricted_square(&x, &sd)?)?
                .sub(&restricted_square(&y, &sd)?)?;
            out.check_eq(format!("x={x} y={y}"), &bracket(&x, &y)?, &lhs);

            // (qad)
            let lhs = bracket(&restricted_square(&x, &sd)?, &y)?;
            let rhs = bracket(&x, &bracket(&x, &y)?)?;
            out.check_eq(format!("x={x} y={y}"), &rhs, &lhs);

            // (qmult)
            let lhs = restricted_square(&x.mul(&y)?, &sd)?;
            let rhs = y
                .pow(2)?
                .mul(&restricted_square(&x, &sd)?)?
                .add(&x.pow(2)?.mul(&restricted_square(&y, &sd)?)?)?
                .add(&x.mul(&y)?.mul(&bracket(&x, &y)?)?)?;
            out.check_eq(format!("x={x} y={y}"), &rhs, &lhs);

            // t_{x^[2]} = t_x^[2]
            let tx = hamiltonian_field(&x, &sd)?;
            out.check_eq(
                format!("x={x}"),
                &tx.p_power()?,
                &hamiltonian_field(&restricted_square(&x, &sd)?, &sd)?,
            );

            // quadratic refinement of the symmetric form
            let mk_theta = |rng: &mut rand_chacha::ChaCha8Rng| -> Result<VectorField<ModRing>> {
                let comps = (0..2 * d)
                    .map(|_| crate::sample::random_center_poly(rng, 2, d, 3, 2))
                    .collect::<Result<Vec<_>>>()?;
                VectorField::new(comps)
            };
            let t1 = mk_theta(rng)?;
            let t2 = mk_theta(rng)?;
            let lhs = quadratic_refinement(&t1.add(&t2)?, &sd)?
                .sub(&quadratic_refinement(&t1, &sd)?)?
                .sub(&quadratic_refinement(&t2, &sd)?)?;
            let rhs = t1.contract_one(&t2.contract_two(sd.omega())?)?;
            out.check_eq("theta1, theta2 random", &rhs, &lhs);

            let z = crate::sample::random_center_poly(rng, 2, d, 2, 2)?;
            let lhs = quadratic_refinement(&t1.scale(&z)?, &sd)?;
            let rhs = z.pow(2)?.mul(&quadratic_refinement(&t1, &sd)?)?;
            out.check_eq(format!("z={z}"), &rhs, &lhs);
            Ok(())
        })(&mut out);
        if let Err(e) = result {
            out.check_true("trial", &format!("no error: {e}"), false);
        }
        out
    });
    Ok(report)
}

/// Randomized ring-homomorphism and centrality checks for the corrected
/// p = 2 map, including the witness that the uncorrected square is not
/// central while the corrected image is.
pub fn verify_phi_even(m: u32, d: usize, trials: u64, seed: u64) -> Result<Report> {
    let mut report = Report::new("phi-even-hom", 2, m, d, trials, seed);
    // Witness for the failure of the uncorrected map at p = 2. The naive
    // square of the X*Xi lift breaks multiplicativity on Teichmueller
    // vectors: (x^2 d^2)^2 = x^4 d^4 + 2 x^2 d^2, while the product of the
    // naive images of (X,0) and (Xi,0) is x^4 d^4. The corrected map
    // returns exactly x^4 d^4, which is central. Squares of central-mod-2
    // lifts are still central mod 4; centrality first fails mod 8.
    {
        let mut check = |inputs: &str, what: &str, ok: bool| {
            report.checks += 1;
            if !ok {
                report.failures.push(crate::report::Failure {
                    inputs: inputs.into(),
                    expected: what.into(),
                    got: "violated".into(),
                });
            }
        };
        let naive = WeylElement::parse("x1^2*d1^2", 2, 1, 1)?.pow(2)?;
        let split_product = WeylElement::parse("x1^4", 2, 1, 1)?
            .mul(&WeylElement::parse("d1^4", 2, 1, 1)?)?;
        check(
            "naive phi on (X*Xi,0) vs naive phi (X,0) * naive phi (Xi,0)",
            "uncorrected map is not multiplicative",
            naive != split_product,
        );
        check(
            "(x1^2*d1^2)^2 lifted mod 8",
            "naive square loses centrality one level up",
            !WeylElement::parse("x1^2*d1^2", 2, 2, 1)?.pow(2)?.is_central(),
        );
        let ring = center_poly_ring_2(1)?;
        let wv = WittVector::new(
            2,
            ring.clone(),
            vec![
                MultiPoly::parse("X1*Xi1", ModRing::fp(2)?, center_vars(1))?,
                MultiPoly::zero(ModRing::fp(2)?, center_vars(1)),
            ],
        )?;
        let corrected = phi_even(1, &wv)?;
        let expect = WeylElement::parse("x1^4*d1^4", 2, 1, 1)?;
        check(
            "phi_1((X*Xi, 0))",
            "corrected image is x^4 d^4",
            corrected == expect,
        );
        check(
            "phi_1((X*Xi, 0))",
            "corrected image is central and differs from the naive square",
            corrected.is_central() && corrected != naive,
        );
    }
    run_trials(&mut report, |_, rng| {
        let mut out = TrialOutcome::default();
        let result = (|out: &mut TrialOutcome| -> Result<()> {
            let len = (m + 1) as usize;
            let u = crate::sample::random_center_witt(rng, 2, d, len, 4, 3)?;
            let v = crate::sample::random_center_witt(rng, 2, d, len, 4, 3)?;
            let fu = phi_even(m, &u)?;
            let fv = phi_even(m, &v)?;

            let sum = phi_even(m, &u.add(&v)?)?;
            out.check_eq(format!("u={u} v={v}"), &fu.add(&fv)?, &sum);

            let prod = phi_even(m, &u.mul(&v)?)?;
            out.check_eq(format!("u={u} v={v}"), &fu.mul(&fv)?, &prod);

            out.check_true(format!("u={u}"), "phi(u) is central", fu.is_central());

            if m >= 1 {
                let short = u.truncate(m as usize)?;
                let lhs = phi_even(m, &short.verschiebung())?;
                let rhs = phi_even(m - 1, &short)?.lift_to(m)?.scale_int(2);
                out.check_eq(format!("u'={short}"), &rhs, &lhs);
            }

            // independence of the choice of lifts
            let sd = SymplecticData::standard(d)?;
            let zlifts = u
                .components()
                .iter()
                .map(|z| {
                    let noise =
                        crate::sample::random_weyl(rng, 2, m, d, 4, 2)?.scale_int(2);
                    canonical_lift(z, m)?.add(&noise)
                })
                .collect::<Result<Vec<_>>>()?;
            let sqlifts = u.components()[..m as usize]
                .iter()
                .map(|z| {
                    let noise =
                        crate::sample::random_weyl(rng, 2, m, d, 4, 2)?.scale_int(2);
                    canonical_lift(&restricted_square(z, &sd)?, m)?.add(&noise)
                })
                .collect::<Result<Vec<_>>>()?;
            let perturbed = phi_even_with_lifts(m, &zlifts, &sqlifts)?;
            out.check_eq(format!("u={u}"), &fu, &perturbed);
            Ok(())
        })(&mut out);
        if let Err(e) = result {
            out.check_true("trial", &format!("no error: {e}"), false);
        }
        out
    });
    Ok(report)
}

fn center_poly_ring_2(d: usize) -> Result<PolyRing<ModRing>> {
    crate::center::center_poly_ring(2, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::center::center_poly_ring;

    fn cpoly(d: usize, s: &str) -> CenterPoly {
        MultiPoly::parse(s, ModRing::fp(2).unwrap(), center_vars(d)).unwrap()
    }

    fn wv(d: usize, parts: &[&str]) -> WittVector<PolyRing<ModRing>> {
        let ring = center_poly_ring(2, d).unwrap();
        WittVector::new(2, ring, parts.iter().map(|s| cpoly(d, s)).collect()).unwrap()
    }

    fn w(level: u32, s: &str) -> WeylElement {
        WeylElement::parse(s, 2, level, 1).unwrap()
    }

    #[test]
    fn symplectic_data_invariants() {
        let sd = SymplecticData::standard(2).unwrap();
        assert_eq!(sd.eta().d().unwrap(), *sd.omega());
    }

    #[test]
    fn hamiltonian_examples() {
        let sd = SymplecticData::standard(1).unwrap();
        let t = hamiltonian_field(&cpoly(1, "X1"), &sd).unwrap();
        assert!(t.components()[0].is_zero());
        assert_eq!(t.components()[1], cpoly(1, "1"));

        let t = hamiltonian_field(&cpoly(1, "Xi1"), &sd).unwrap();
        assert_eq!(t.components()[0], cpoly(1, "1"));
        assert!(t.components()[1].is_zero());

        // Euler field for X*Xi
        let t = hamiltonian_field(&cpoly(1, "X1*Xi1"), &sd).unwrap();
        assert_eq!(t.components()[0], cpoly(1, "X1"));
        assert_eq!(t.components()[1], cpoly(1, "Xi1"));
    }

    #[test]
    fn restricted_square_examples() {
        let sd = SymplecticData::standard(1).unwrap();
        assert!(restricted_square(&cpoly(1, "X1"), &sd).unwrap().is_zero());
        assert!(restricted_square(&cpoly(1, "Xi1"), &sd).unwrap().is_zero());
        assert_eq!(
            restricted_square(&cpoly(1, "X1*Xi1"), &sd).unwrap(),
            cpoly(1, "X1*Xi1")
        );
    }

    #[test]
    fn qadd_on_coordinates() {
        // (X+Xi)^[2] - X^[2] - Xi^[2] = {X, Xi} = 1
        let sd = SymplecticData::standard(1).unwrap();
        let s = restricted_square(&cpoly(1, "X1 + Xi1"), &sd).unwrap();
        assert_eq!(s, cpoly(1, "1"));
        assert_eq!(
            crate::center::bracket0(&cpoly(1, "X1"), &cpoly(1, "Xi1"), 1).unwrap(),
            cpoly(1, "1")
        );
    }

    #[test]
    fn phi_even_examples() {
        assert_eq!(phi_even(1, &wv(1, &["X1", "0"])).unwrap(), w(1, "x1^4"));
        assert_eq!(
            phi_even(1, &wv(1, &["X1*Xi1", "0"])).unwrap(),
            w(1, "x1^4*d1^4")
        );
        let z = cpoly(1, "X1^2 + Xi1");
        let img = phi_even(1, &wv(1, &["0", "X1^2 + Xi1"])).unwrap();
        assert_eq!(img, canonical_lift(&z, 1).unwrap().scale_int(2));
    }

    #[test]
    fn uncorrected_square_witness() {
        // The naive square keeps an extra 2 x^2 d^2 term: central mod 4
        // (squares of central-mod-2 lifts always are) but it breaks
        // multiplicativity, and centrality fails one level up.
        let naive = w(1, "x1^2*d1^2").pow(2).unwrap();
        assert_eq!(naive, w(1, "x1^4*d1^4 + 2*x1^2*d1^2"));
        assert!(naive.is_central());
        assert_ne!(
            naive,
            w(1, "x1^4").mul(&w(1, "d1^4")).unwrap(),
            "multiplicativity of the naive map fails on (X,0)*(Xi,0)"
        );
        assert!(!w(2, "x1^2*d1^2").pow(2).unwrap().is_central());
    }

    #[test]
    fn chi_even_is_multiplicative() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let x = crate::sample::random_center_poly(&mut rng, 2, 1, 3, 2).unwrap();
            let y = crate::sample::random_center_poly(&mut rng, 2, 1, 3, 2).unwrap();
            let lhs = chi_even(1, &x.mul(&y).unwrap()).unwrap();
            let rhs = chi_even(1, &x).unwrap().mul(&chi_even(1, &y).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "x={x} y={y}");
        }
    }

    #[test]
    fn phi_even_rejects_odd_p() {
        let ring = center_poly_ring(3, 1).unwrap();
        let w = WittVector::new(
            3,
            ring.clone(),
            vec![ring.one(), ring.zero()],
        )
        .unwrap();
        assert!(phi_even(1, &w).is_err());
    }

    #[test]
    fn suites_smoke() {
        let r = verify_restricted_identities(1, 4, 7).unwrap();
        assert!(r.passed(), "{r}");
        let r = verify_phi_even(1, 1, 4, 7).unwrap();
        assert!(r.passed(), "{r}");
        let r = verify_phi_even(2, 1, 2, 7).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn image_matches_kernel_small() {
        let img = phi_even_image_submodule(1, 1, 4).unwrap();
        let ker = crate::center::center_kernel(2, 1, 1, 4).unwrap();
        assert_eq!(img, ker);
    }
}
