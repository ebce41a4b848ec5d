//! Property tests for the plumbing invariants: parser/printer round-trips,
//! reduction homomorphisms, exact division, Howell canonicity, and the
//! calculus identities on randomized polynomials.

use proptest::prelude::*;
use wittcenter::howell::ModMatrix;
use wittcenter::poly::forms::{de_rham, VectorField};
use wittcenter::poly::{varset, GradedExp, IntegerRing, ModRing, MultiPoly};
use wittcenter::ring::ModInt;
use wittcenter::WeylElement;

fn small_prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7])
}

fn int_poly() -> impl Strategy<Value = MultiPoly<IntegerRing>> {
    let term = (0u16..6, 0u16..6, -20i64..=20);
    prop::collection::vec(term, 0..6).prop_map(|terms| {
        let vars = varset(&["x", "y"]);
        MultiPoly::from_terms(
            IntegerRing,
            vars,
            terms
                .into_iter()
                .map(|(a, b, c)| {
                    (
                        GradedExp(smallvec::SmallVec::from_slice(&[a, b])),
                        num_bigint::BigInt::from(c),
                    )
                })
                .collect(),
        )
    })
}

fn fp_poly(p: u32) -> impl Strategy<Value = MultiPoly<ModRing>> {
    let term = (0u16..5, 0u16..5, 0i64..p as i64);
    prop::collection::vec(term, 0..5).prop_map(move |terms| {
        let vars = varset(&["X", "Xi"]);
        let ring = ModRing::fp(p).unwrap();
        MultiPoly::from_terms(
            ring,
            vars,
            terms
                .into_iter()
                .map(|(a, b, c)| {
                    (
                        GradedExp(smallvec::SmallVec::from_slice(&[a, b])),
                        ModInt::new(p, 1, c).unwrap(),
                    )
                })
                .collect(),
        )
    })
}

proptest! {
    #[test]
    fn poly_print_parse_roundtrip(p in int_poly()) {
        let s = p.to_string();
        let q = MultiPoly::parse(&s, IntegerRing, p.vars().clone()).unwrap();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn weyl_print_parse_roundtrip(terms in prop::collection::vec((0u16..5, 0u16..5, 1i64..27), 0..5)) {
        let mut u = WeylElement::zero(3, 2, 1).unwrap();
        for (a, b, c) in terms {
            u = u.add(&WeylElement::term(3, 2, 1, &[a], &[b], c).unwrap()).unwrap();
        }
        let s = u.to_string();
        prop_assert_eq!(WeylElement::parse(&s, 3, 2, 1).unwrap(), u);
    }

    #[test]
    fn modint_reduce_is_ring_hom(p in small_prime(), a in 0i64..10_000, b in 0i64..10_000, k2 in 1u32..3) {
        let k = 4u32;
        let x = ModInt::new(p, k, a).unwrap();
        let y = ModInt::new(p, k, b).unwrap();
        let r = |m: ModInt| m.reduce(k2).unwrap();
        prop_assert_eq!(r(x.add(&y).unwrap()), r(x).add(&r(y)).unwrap());
        prop_assert_eq!(r(x.mul(&y).unwrap()), r(x).mul(&r(y)).unwrap());
    }

    #[test]
    fn modint_pdiv_inverts_scaling(p in small_prime(), a in 0i64..500, j in 0u32..3) {
        let k = 4u32;
        let pj = (p as i64).pow(j);
        let scaled = ModInt::new(p, k, a.wrapping_mul(pj)).unwrap();
        let back = scaled.pdiv(j).unwrap();
        // p^j * (any lift of back) = scaled in Z/p^k
        let m = (p as u64).pow(k);
        prop_assert_eq!((back.value() * pj as u64) % m, scaled.value());
    }

    #[test]
    fn howell_is_idempotent_and_spans(rows in prop::collection::vec(prop::collection::vec(0u64..9, 3), 1..4)) {
        let m = ModMatrix::from_rows(3, 2, 3, rows.clone()).unwrap();
        let h = m.howell_form();
        prop_assert_eq!(h.howell_form(), h.clone());
        for r in rows {
            prop_assert!(h.span_contains(&r));
        }
    }

    #[test]
    fn d_squared_vanishes(p in prop::sample::select(vec![2u32, 3, 5]), f in fp_poly(3)) {
        // remap the F_3 sample into F_p by reducing values
        let ring = ModRing::fp(p).unwrap();
        let f = f.map_ring(ring, |c| ModInt::new(p, 1, c.value() as i64).unwrap());
        prop_assert!(de_rham(&f).d().unwrap().is_zero());
    }

    #[test]
    fn cartan_formula_consistency(f in fp_poly(3), g in fp_poly(3), h in fp_poly(3)) {
        // L_theta(df) = d(L_theta f) for theta = (g, h)
        let theta = VectorField::new(vec![g, h]).unwrap();
        let lhs = theta.lie_one_form(&de_rham(&f)).unwrap();
        let rhs = de_rham(&theta.apply(&f).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn p_power_is_derivation_char2(f in fp_poly(2), g in fp_poly(2), a in fp_poly(2), b in fp_poly(2)) {
        let theta = VectorField::new(vec![a, b]).unwrap();
        let tp = theta.p_power().unwrap();
        let lhs = tp.apply(&f.mul(&g).unwrap()).unwrap();
        let rhs = f.mul(&tp.apply(&g).unwrap()).unwrap()
            .add(&g.mul(&tp.apply(&f).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn restricted_square_of_sums_char2(t1 in prop::collection::vec(fp_poly(2), 2), t2 in prop::collection::vec(fp_poly(2), 2)) {
        let t1 = VectorField::new(t1).unwrap();
        let t2 = VectorField::new(t2).unwrap();
        let lhs = t1.add(&t2).unwrap().p_power().unwrap();
        let rhs = t1.p_power().unwrap()
            .add(&t2.p_power().unwrap()).unwrap()
            .add(&t1.bracket(&t2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn witt_text_roundtrip(a in -9i64..9, b in -9i64..9, c in -9i64..9) {
        let w = wittcenter::witt::WittVector::new(
            2,
            IntegerRing,
            vec![a.into(), b.into(), c.into()],
        ).unwrap();
        let s = w.to_string();
        let parsed = wittcenter::witt::parse_witt(&s, 2, &IntegerRing, |t| {
            Ok(MultiPoly::<IntegerRing>::parse(t, IntegerRing, varset(&[]))?
                .coeff(&GradedExp::zeros(0)))
        }).unwrap();
        prop_assert_eq!(parsed, w);
    }
}
