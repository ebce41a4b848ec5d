//! The named verification suites behind `verify --suite <name>` and the
//! acceptance tests: seeded, reproducible, and exhaustively cross-checked
//! against independent oracles (ghost map, action on polynomials, Howell
//! solver, brute-force enumeration).

use crate::center::{
    bracket0, bracket_general, canonical_lift, center_kernel, center_vars, phi_image_submodule,
    phi_odd, pi_form, serre_map,
};
use crate::error::{Error, Result};
use crate::poly::forms::{cartier_inverse, de_rham, is_exact};
use crate::poly::{CoeffRing, IntegerRing, ModRing, MultiPoly};
use crate::report::{run_trials, Report, TrialOutcome};
use crate::ring::{checked_pow, is_small_prime};
use crate::weyl::{eval_int_poly_ordered, WeylElement};
use crate::witt::{check_addition_identity, psi, WittVector};
use num_bigint::BigInt;
use rand::Rng;

/// Parameters shared by every suite invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub p: u32,
    pub n: u32,
    pub m: u32,
    pub d: usize,
    pub deg: Option<u32>,
    pub trials: u64,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(p: u32, n: u32, m: u32, d: usize, deg: Option<u32>, trials: u64, seed: u64) -> Result<Self> {
        if !is_small_prime(p) {
            return Err(Error::Range(format!("{p} is not a supported prime")));
        }
        if m > n {
            return Err(Error::Range("m must not exceed n".into()));
        }
        if d == 0 {
            return Err(Error::Range("d must be >= 1".into()));
        }
        if trials == 0 {
            return Err(Error::Range("trials must be >= 1".into()));
        }
        Ok(RunConfig {
            p,
            n,
            m,
            d,
            deg,
            trials,
            seed,
        })
    }

    /// Default degree window p^{m+1}: the smallest window that sees the
    /// first nontrivial generators.
    pub fn effective_deg(&self) -> u32 {
        self.deg.unwrap_or_else(|| self.p.pow(self.m + 1))
    }
}

pub const SUITES: &[&str] = &[
    "witt-axioms",
    "phi-odd-hom",
    "phi-even-hom",
    "bracket-sign",
    "restricted-identities",
    "center-iso",
    "serre-cartier",
    "lemma21",
    "binom-e9-bnf",
];

/// Dispatch a suite by name.
pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<Report> {
    match name {
        "witt-axioms" => witt_axioms(cfg),
        "phi-odd-hom" => crate::center::verify_phi_ring_hom(cfg.p, cfg.m, cfg.d, cfg.trials, cfg.seed),
        "phi-even-hom" => {
            if cfg.p != 2 {
                return Err(Error::Unsupported("phi-even-hom runs at p = 2".into()));
            }
            crate::poisson2::verify_phi_even(cfg.m, cfg.d, cfg.trials, cfg.seed)
        }
        "bracket-sign" => bracket_sign(cfg),
        "restricted-identities" => {
            if cfg.p != 2 {
                return Err(Error::Unsupported(
                    "restricted-identities runs at p = 2".into(),
                ));
            }
            crate::poisson2::verify_restricted_identities(cfg.d, cfg.trials, cfg.seed)
        }
        "center-iso" => center_iso(cfg),
        "serre-cartier" => serre_cartier(cfg),
        "lemma21" => lemma21(cfg),
        "binom-e9-bnf" => binom_e9_bnf(cfg),
        other => Err(Error::Unsupported(format!(
            "unknown suite {other:?}; known: {}",
            SUITES.join(", ")
        ))),
    }
}

/// Witt ring oracle checks: ghost-map commutation on random integer
/// vectors, ring axioms, the addition identity over polynomial rings, and
/// the exhaustive identification W_{m+1}(F_p) = Z/p^{m+1}.
pub fn witt_axioms(cfg: &RunConfig) -> Result<Report> {
    let p = cfg.p;
    let mut report = Report::new("witt-axioms", p, cfg.m, cfg.d, cfg.trials, cfg.seed);
    // exhaustive digit check once per run (cheap for p <= 3)
    if p <= 3 {
        let mut out = TrialOutcome::default();
        witt_digits_check(p, &mut out)?;
        report.checks += out.checks;
        report.failures.extend(out.failures);
    }
    run_trials(&mut report, |t, rng| {
        let mut out = TrialOutcome::default();
        let result = (|out: &mut TrialOutcome| -> Result<()> {
            let len = 1 + (t as usize % 4);
            let sample = |rng: &mut rand_chacha::ChaCha8Rng| -> Result<WittVector<IntegerRing>> {
                let comps = (0..len).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
                WittVector::new(p, IntegerRing, comps)
            };
            let u = sample(rng)?;
            let v = sample(rng)?;
            let w = sample(rng)?;
            let gs = |x: &WittVector<IntegerRing>| x.ghost();
            let sum = u.add(&v)?;
            let prod = u.mul(&v)?;
            let neg = u.neg()?;
            let gu = gs(&u)?;
            let gv = gs(&v)?;
            for i in 0..len {
                out.check_eq(format!("u={u} v={v} ghost[{i}]"), &(&gu[i] + &gv[i]), &gs(&sum)?[i]);
                out.check_eq(format!("u={u} v={v} ghost[{i}]"), &(&gu[i] * &gv[i]), &gs(&prod)?[i]);
                out.check_eq(format!("u={u} ghost[{i}]"), &(-&gu[i]), &gs(&neg)?[i]);
            }
            // ring axioms through the universal polynomials
            out.check_eq(
                format!("u={u} v={v} w={w}"),
                &u.mul(&v)?.mul(&w)?,
                &u.mul(&v.mul(&w)?)?,
            );
            out.check_eq(
                format!("u={u} v={v} w={w}"),
                &u.mul(&v.add(&w)?)?,
                &u.mul(&v)?.add(&u.mul(&w)?)?,
            );
            // addition identity over F_p[X, Xi]
            let poly_len = match p {
                2 => 2 + (t as usize % 3),
                3 => 2 + (t as usize % 2),
                _ => 2,
            };
            let z1 = crate::sample::random_center_poly(rng, p, 1, 2, 2)?;
            let z2 = crate::sample::random_center_poly(rng, p, 1, 2, 2)?;
            let ring = crate::center::center_poly_ring(p, 1)?;
            out.check_true(
                format!("z1={z1} z2={z2} len={poly_len}"),
                "Teichmueller addition identity",
                check_addition_identity(p, &ring, &z1, &z2, poly_len)?,
            );
            Ok(())
        })(&mut out);
        if let Err(e) = result {
            out.check_true("trial", &format!("no error: {e}"), false);
        }
        out
    });
    Ok(report)
}

fn witt_digits_check(p: u32, out: &mut TrialOutcome) -> Result<()> {
    use crate::poly::ModRing;
    use crate::ring::ModInt;
    for m in 0..=2u32 {
        let len = (m + 1) as usize;
        let ring = ModRing::fp(p)?;
        let modulus = (p as u64).pow(m + 1);
        let value = |w: &WittVector<ModRing>| -> u64 {
            let mut acc: u64 = 0;
            for (i, c) in w.components().iter().enumerate() {
                let e = p.pow(m - i as u32) as u64;
                acc = (acc
                    + (p as u64).pow(i as u32) * crate::ring::pow_mod(c.value(), e, modulus))
                    % modulus;
            }
            acc
        };
        let all: Vec<WittVector<ModRing>> = (0..modulus)
            .map(|x| {
                let mut digits = Vec::new();
                let mut rest = x;
                for _ in 0..len {
                    digits.push(ModInt::new(p, 1, (rest % p as u64) as i64).unwrap());
                    rest /= p as u64;
                }
                WittVector::new(p, ring, digits).unwrap()
            })
            .collect();
        for u in &all {
            for v in &all {
                out.check_eq(
                    format!("p={p} m={m} u={u} v={v} (add)"),
                    &((value(u) + value(v)) % modulus),
                    &value(&u.add(v)?),
                );
                out.check_eq(
                    format!("p={p} m={m} u={u} v={v} (mul)"),
                    &(value(u) * value(v) % modulus),
                    &value(&u.mul(v)?),
                );
            }
        }
    }
    Ok(())
}

/// The Kanel-Belov--Kontsevich sign: on coordinates the deformation bracket
/// is {Xi_i, X_j} = -delta_ij with {X_i, X_j} = {Xi_i, Xi_j} = 0.
pub fn bracket_sign(cfg: &RunConfig) -> Result<Report> {
    let p = cfg.p;
    let d = cfg.d;
    let mut report = Report::new("bracket-sign", p, cfg.m, d, 1, cfg.seed);
    let ring = ModRing::fp(p)?;
    let vars = center_vars(d);
    let coord = |i: usize| MultiPoly::var(ring, vars.clone(), i).unwrap();
    let zero = MultiPoly::zero(ring, vars.clone());
    let minus_one = MultiPoly::constant(ring, vars.clone(), ring.from_i64(-1));
    let one = MultiPoly::one(ring, vars.clone());
    let mut out = TrialOutcome::default();
    for i in 0..d {
        for j in 0..d {
            let xi_x = bracket0(&coord(d + i), &coord(j), 1)?;
            let expect = if i == j { &minus_one } else { &zero };
            out.check_eq(format!("p={p} {{Xi{}, X{}}}", i + 1, j + 1), expect, &xi_x);
            let x_xi = bracket0(&coord(i), &coord(d + j), 1)?;
            let expect = if i == j { &one } else { &zero };
            out.check_eq(format!("p={p} {{X{}, Xi{}}}", i + 1, j + 1), expect, &x_xi);
            out.check_eq(
                format!("p={p} {{X{}, X{}}}", i + 1, j + 1),
                &zero,
                &bracket0(&coord(i), &coord(j), 1)?,
            );
            out.check_eq(
                format!("p={p} {{Xi{}, Xi{}}}", i + 1, j + 1),
                &zero,
                &bracket0(&coord(d + i), &coord(d + j), 1)?,
            );
        }
    }
    report.checks = out.checks;
    report.failures = out.failures;
    Ok(report)
}

/// Bounded-degree center comparison: the Howell form of the solver kernel
/// must equal the Howell form of the image submodule of the center map.
/// Includes the reduction-image check (kernel rows at level m+1 reduce mod p
/// into p^{m+2}-th power monomials) when the window is affordable.
pub fn center_iso(cfg: &RunConfig) -> Result<Report> {
    let p = cfg.p;
    let m = cfg.m;
    let d = cfg.d;
    let deg = cfg.effective_deg();
    let mut report = Report::new("center-iso", p, m, d, 1, cfg.seed);
    let mut out = TrialOutcome::default();
    let kernel = center_kernel(p, m, d, deg)?;
    let image = if p == 2 {
        crate::poisson2::phi_even_image_submodule(m, d, deg)?
    } else {
        phi_image_submodule(p, m, d, deg)?
    };
    out.check_true(
        format!("p={p} m={m} d={d} deg={deg}"),
        "center kernel equals the image submodule (Howell forms identical)",
        kernel == image,
    );
    // surjectivity shadow of the reduction map at the next level
    let next_window = checked_pow(p, m + 2).unwrap_or(u64::MAX);
    if d == 1 && next_window <= 32 {
        let up = center_kernel(p, m + 1, d, next_window as u32)?;
        for row in up.rows_as_weyl() {
            let down = row.reduce(0)?;
            let ok = down
                .terms()
                .all(|(e, _)| e.0.iter().all(|&x| (x as u64).is_multiple_of(next_window)));
            out.check_true(
                format!("p={p} level={} row={row}", m + 1),
                "reduction mod p lands in p^{m+2}-th power monomials",
                ok,
            );
        }
    }
    report.checks = out.checks;
    report.failures = out.failures;
    Ok(report)
}

/// Serre morphism against the commutator route, and the Cartier diagram
/// beta(S(w)) = C^{-1}(d(alpha(w))) in Omega^1 / d(Z_0).
pub fn serre_cartier(cfg: &RunConfig) -> Result<Report> {
    let p = cfg.p;
    let m = cfg.m;
    let d = cfg.d;
    let mut report = Report::new("serre-cartier", p, m, d, cfg.trials, cfg.seed);
    run_trials(&mut report, |_, rng| {
        let mut out = TrialOutcome::default();
        let result = (|out: &mut TrialOutcome| -> Result<()> {
            let len = (m + 1) as usize;
            let w = crate::sample::random_center_witt(rng, p, d, len, 3, 2)?;
            let y = if p == 2 {
                crate::poisson2::phi_even(m, &w)?
            } else {
                phi_odd(m, &w)?
            };
            let s = serre_map(&w, m)?;
            out.check_eq(format!("w={w}"), &s, &pi_form(&y)?);

            // diagram at m = 1: S(w) - C^{-1}(d z_1) is exact
            if m == 1 {
                let z1 = &w.components()[0];
                let c = cartier_inverse(&de_rham(z1))?;
                let diff = s.sub(&c)?;
                let bound = diff
                    .components()
                    .iter()
                    .map(|f| f.total_degree())
                    .max()
                    .unwrap_or(0);
                out.check_true(
                    format!("w={w}"),
                    "beta(S(w)) = C^{-1}(d alpha(w)) in Omega^1/dZ_0",
                    is_exact(&diff, bound)?.is_some(),
                );
            }

            // Frobenius-built kernel elements: S(w) = 0 forces d(alpha(w)) = 0
            let g = crate::sample::random_center_poly(rng, p, d, 2, 2)?;
            let h = crate::sample::random_center_poly(rng, p, d, 2, 2)?;
            let ring = crate::center::center_poly_ring(p, d)?;
            let mut comps = vec![g.frobenius()?];
            comps.extend(std::iter::repeat_n(h.frobenius()?, len - 1));
            let wf = WittVector::new(p, ring, comps)?;
            let sf = serre_map(&wf, m)?;
            out.check_true(format!("w={wf}"), "S vanishes on Frobenius images", sf.is_zero());
            out.check_true(
                format!("w={wf}"),
                "d(alpha(w)) = 0 on ker S",
                de_rham(&wf.components()[0]).is_zero(),
            );
            Ok(())
        })(&mut out);
        if let Err(e) = result {
            out.check_true("trial", &format!("no error: {e}"), false);
        }
        out
    });
    Ok(report)
}

/// Parts (1)-(5) of the level lemma on random central elements produced
/// through the center maps, with independence of lifts tested rather than
/// assumed.
pub fn lemma21(cfg: &RunConfig) -> Result<Report> {
    let p = cfg.p;
    let d = cfg.d;
    let mut report = Report::new("lemma21", p, cfg.m, d, cfg.trials, cfg.seed);
    run_trials(&mut report, |t, rng| {
        let mut out = TrialOutcome::default();
        let result = (|out: &mut TrialOutcome| -> Result<()> {
            let (i, j) = [(0u32, 0u32), (0, 1), (1, 1)][t as usize % 3];
            let n = i + j + 2;
            let (x_elem, x_lift) =
                crate::sample::random_central_with_lift(rng, p, i, n, d, 2, 2)?;
            let (_, x_lift2) = {
                let noise = crate::sample::random_weyl(rng, p, n, d, 3, 2)?
                    .scale_int(checked_pow(p, i + 1)? as i64);
                (0, x_elem.lift_to(n)?.add(&noise)?)
            };
            let (y_elem, y_lift) =
                crate::sample::random_central_with_lift(rng, p, j, n, d, 2, 2)?;
            let y_lift2 = {
                let noise = crate::sample::random_weyl(rng, p, n, d, 3, 2)?
                    .scale_int(checked_pow(p, j + 1)? as i64);
                y_elem.lift_to(n)?.add(&noise)?
            };
            let ctx = format!("p={p} i={i} j={j} x={x_elem} y={y_elem}");

            // (1) [x~, y~] = 0 mod p^{j+1}
            let c = x_lift.commutator(&y_lift)?;
            out.check_true(&ctx, "commutator divisible by p^{j+1}", c.divisible_by_p(j + 1));

            // (2) [x~, y~] mod p^{i+j+2} is central at level i+j+1
            out.check_true(
                &ctx,
                "commutator is central one level up",
                c.reduce(i + j + 1)?.is_central(),
            );

            // (3) the divided bracket is independent of the liftings
            let b1 = bracket_general(&x_lift, &y_lift, i, j)?;
            let b2 = bracket_general(&x_lift2, &y_lift2, i, j)?;
            out.check_eq(&ctx, &b1, &b2);

            // (4) derivation in the first argument
            let (xp_elem, xp_lift) =
                crate::sample::random_central_with_lift(rng, p, i, n, d, 2, 2)?;
            let lhs = bracket_general(&x_lift.mul(&xp_lift)?, &y_lift, i, j)?;
            let rhs = x_elem
                .mul(&bracket_general(&xp_lift, &y_lift, i, j)?)?
                .add(&xp_elem.mul(&bracket_general(&x_lift, &y_lift, i, j)?)?)?;
            out.check_eq(format!("{ctx} x'={xp_elem}"), &rhs, &lhs);

            // (5) p-th powers: central one level up, independent of the lift
            let pw1 = x_lift.pow(p)?.reduce((i + 1).min(n))?;
            let pw2 = x_lift2.pow(p)?.reduce((i + 1).min(n))?;
            out.check_true(&ctx, "x~^p is central at level i+1", pw1.is_central());
            out.check_eq(&ctx, &pw1, &pw2);
            Ok(())
        })(&mut out);
        if let Err(e) = result {
            out.check_true("trial", &format!("no error: {e}"), false);
        }
        out
    });
    Ok(report)
}

/// The binomial proposition, the p z^{p-1} commutator claim, the psi
/// bridging identity, chi multiplicativity, and their char-2 counterparts.
pub fn binom_e9_bnf(cfg: &RunConfig) -> Result<Report> {
    if cfg.p == 2 {
        binom_suite_char2(cfg)
    } else {
        binom_suite_odd(cfg)
    }
}

fn binom_suite_odd(cfg: &RunConfig) -> Result<Report> {
    let p = cfg.p;
    let d = cfg.d;
    let mut report = Report::new("binom-e9-bnf", p, cfg.m, d, cfg.trials, cfg.seed);
    run_trials(&mut report, |t, rng| {
        let mut out = TrialOutcome::default();
        let result = (|out: &mut TrialOutcome| -> Result<()> {
            // Proposition: (x~+y~)^p = sum C(p,i) x~^i y~^{p-i} for lifts of
            // central-mod-p^{m+1} elements, and (x~ y~)^p = x~^p y~^p.
            let m = t as u32 % 2;
            let (x_elem, x_lift) =
                crate::sample::random_central_with_lift(rng, p, m, m + 1, d, 2, 2)?;
            let (y_elem, y_lift) =
                crate::sample::random_central_with_lift(rng, p, m, m + 1, d, 2, 2)?;
            let ctx = format!("p={p} m={m} x={x_elem} y={y_elem}");
            let lhs = x_lift.add(&y_lift)?.pow(p)?;
            let mut rhs = WeylElement::zero(p, m + 1, d)?;
            for i in 0..=p {
                let c = crate::ring::binomial_u64(p as u64, i as u64);
                let term = x_lift.pow(i)?.mul(&y_lift.pow(p - i)?)?;
                let cm = (&c % BigInt::from(x_lift.modulus())).to_string().parse::<i64>().unwrap();
                rhs = rhs.add(&term.scale_int(cm))?;
            }
            out.check_eq(&ctx, &rhs, &lhs);

            let lhs = x_lift.mul(&y_lift)?.pow(p)?;
            let rhs = x_lift.pow(p)?.mul(&y_lift.pow(p)?)?;
            out.check_eq(format!("{ctx} (chimult)"), &rhs, &lhs);

            // Claim: [z~^p, x~] = p z~^{p-1} [z~, x~] mod p^{i+3}
            let i = t as u32 % 2;
            let (z_elem, z_lift) =
                crate::sample::random_central_with_lift(rng, p, i, i + 2, d, 2, 2)?;
            let x0 = crate::sample::random_center_poly(rng, p, d, 2, 2)?;
            let x0_lift = canonical_lift(&x0, i + 2)?
                .add(&crate::sample::random_weyl(rng, p, i + 2, d, 2, 2)?.scale_int(p as i64))?;
            let lhs = z_lift.pow(p)?.commutator(&x0_lift)?;
            let rhs = z_lift
                .pow(p - 1)?
                .mul(&z_lift.commutator(&x0_lift)?)?
                .scale_int(p as i64);
            out.check_eq(format!("p={p} i={i} z={z_elem} x={x0} (e9)"), &rhs, &lhs);

            // psi bridging identity at level i+j for canonical lifts of
            // mod-p central elements
            let (bi, bj) = [(1u32, 0u32), (1, 1), (2, 0)][t as usize % 3];
            let level = bi + bj;
            let xz = crate::sample::random_center_poly(rng, p, d, 2, 2)?;
            let yz = crate::sample::random_center_poly(rng, p, d, 2, 2)?;
            let xl = canonical_lift(&xz, level)?;
            let yl = canonical_lift(&yz, level)?;
            let a = xl.pow(p.pow(bj))?;
            let b = yl.pow(p.pow(bj))?;
            let lhs = eval_int_poly_ordered(&psi(bi + 1, p)?.poly, &a, &b)?
                .scale_int(checked_pow(p, bi)? as i64);
            let rhs = a.add(&b)?.pow(p.pow(bi))?.sub(
                &xl.pow(p.pow(bj + 1))?
                    .add(&yl.pow(p.pow(bj + 1))?)?
                    .pow(p.pow(bi - 1))?,
            )?;
            out.check_eq(format!("p={p} i={bi} j={bj} x={xz} y={yz} (bnf)"), &rhs, &lhs);
            Ok(())
        })(&mut out);
        if let Err(e) = result {
            out.check_true("trial", &format!("no error: {e}"), false);
        }
        out
    });
    Ok(report)
}

fn binom_suite_char2(cfg: &RunConfig) -> Result<Report> {
    let d = cfg.d;
    let mut report = Report::new("binom-e9-bnf", 2, cfg.m, d, cfg.trials, cfg.seed);
    run_trials(&mut report, |t, rng| {
        let mut out = TrialOutcome::default();
        let result = (|out: &mut TrialOutcome| -> Result<()> {
            // (trivcomm): x in Z_1, y in Z_i gives [x~, y~] = 0 mod 2^{i+2}
            let i = 1 + t as u32 % 2;
            let n = i + 2;
            let (x_elem, x_lift) = crate::sample::random_central_with_lift(rng, 2, 1, n, d, 2, 2)?;
            let (y_elem, y_lift) = crate::sample::random_central_with_lift(rng, 2, i, n, d, 2, 2)?;
            let ctx = format!("i={i} x={x_elem} y={y_elem}");
            out.check_true(
                format!("{ctx} (trivcomm)"),
                "commutator divisible by 2^{i+2}",
                x_lift.commutator(&y_lift)?.divisible_by_p(i + 2),
            );

            // (2powmult) at level i+1 for x, y in Z_i, i >= 1
            let (_, xm) = crate::sample::random_central_with_lift(rng, 2, i, i + 1, d, 2, 2)?;
            let (_, ym) = crate::sample::random_central_with_lift(rng, 2, i, i + 1, d, 2, 2)?;
            out.check_eq(
                format!("{ctx} (2powmult prod)"),
                &xm.pow(2)?.mul(&ym.pow(2)?)?,
                &xm.mul(&ym)?.pow(2)?,
            );
            let rhs = xm
                .pow(2)?
                .add(&xm.mul(&ym)?.scale_int(2))?
                .add(&ym.pow(2)?)?;
            out.check_eq(format!("{ctx} (2powmult sum)"), &rhs, &xm.add(&ym)?.pow(2)?);

            // (2powcomm): [z~^{2^{i-1}}, x~] = 2^{i-1} z~^{2^{i-1}-1}[z~, x~]
            // mod 2^{i+2} for z in Z_1
            let ii = 2 + t as u32 % 2;
            let (z_elem, z_lift) =
                crate::sample::random_central_with_lift(rng, 2, 1, ii + 1, d, 2, 2)?;
            let x0 = crate::sample::random_center_poly(rng, 2, d, 2, 2)?;
            let x0_lift = canonical_lift(&x0, ii + 1)?
                .add(&crate::sample::random_weyl(rng, 2, ii + 1, d, 2, 2)?.scale_int(2))?;
            let e = checked_pow(2, ii - 1)? as u32;
            let lhs = z_lift.pow(e)?.commutator(&x0_lift)?;
            let rhs = z_lift
                .pow(e - 1)?
                .mul(&z_lift.commutator(&x0_lift)?)?
                .scale_int(e as i64);
            out.check_eq(format!("i={ii} z={z_elem} x={x0} (2powcomm)"), &rhs, &lhs);

            // (2homclaim)(a): for x, y in Z_{m+2-j} lifted to A_{m+1},
            // 2^{j-1} psi_j(x~, y~) = (x~+y~)^{2^{j-1}} - (x~^2+y~^2)^{2^{j-2}}
            let m2 = 2u32;
            let j = 2 + t as u32 % 2;
            let lvl = m2 + 2 - j;
            let (_, xa) = crate::sample::random_central_with_lift(rng, 2, lvl, m2 + 1, d, 2, 2)?;
            let (_, ya) = crate::sample::random_central_with_lift(rng, 2, lvl, m2 + 1, d, 2, 2)?;
            let lhs = eval_int_poly_ordered(&psi(j, 2)?.poly, &xa, &ya)?
                .scale_int(checked_pow(2, j - 1)? as i64);
            let rhs = xa.add(&ya)?.pow(checked_pow(2, j - 1)? as u32)?.sub(
                &xa.pow(2)?
                    .add(&ya.pow(2)?)?
                    .pow(checked_pow(2, j - 2)? as u32)?,
            )?;
            out.check_eq(format!("j={j} (2homclaim a)"), &rhs, &lhs);

            // (2homclaim)(b): for x, y in Z_0 and the corrected chi,
            // 2^{j-1} psi_j(x, y) = chi^{(j-1)}(x+y)
            //                       - (lift chi^{(1)} x + lift chi^{(1)} y)^{2^{j-2}} mod 2^j
            let x0b = crate::sample::random_center_poly(rng, 2, d, 2, 2)?;
            let y0b = crate::sample::random_center_poly(rng, 2, d, 2, 2)?;
            let lvl = j - 1;
            let xb = canonical_lift(&x0b, lvl)?;
            let yb = canonical_lift(&y0b, lvl)?;
            let lhs = eval_int_poly_ordered(&psi(j, 2)?.poly, &xb, &yb)?
                .scale_int(checked_pow(2, j - 1)? as i64);
            let cx = crate::poisson2::chi_even(1, &x0b)?.lift_to(lvl)?;
            let cy = crate::poisson2::chi_even(1, &y0b)?.lift_to(lvl)?;
            let rhs = crate::poisson2::chi_even(j - 1, &x0b.add(&y0b)?)?
                .sub(&cx.add(&cy)?.pow(checked_pow(2, j - 2)? as u32)?)?;
            out.check_eq(
                format!("j={j} x={x0b} y={y0b} (2homclaim b)"),
                &rhs,
                &lhs,
            );
            Ok(())
        })(&mut out);
        if let Err(e) = result {
            out.check_true("trial", &format!("no error: {e}"), false);
        }
        out
    });
    Ok(report)
}
