use num_rational::Ratio;
use proptest::prelude::*;
use supertt::field::rat;
use supertt::polyring::{Monomial, Poly, Polynomial};
use supertt::variety::permutations;

/// Up to four terms with exponents below 3 in `nvars` variables.
fn poly(nvars: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..3, nvars), -3i64..=3), 0..4).prop_map(move |terms| {
        Poly::from_terms(nvars, terms.into_iter().map(|(e, c)| (Monomial::from_exps(e), rat(c))).collect())
    })
}

/// The same shape over `Ratio<i64>`, to exercise a second scalar type.
fn small_poly(nvars: usize) -> impl Strategy<Value = Polynomial<Ratio<i64>>> {
    prop::collection::vec((prop::collection::vec(0u32..3, nvars), -3i64..=3), 0..4).prop_map(move |terms| {
        Polynomial::from_terms(nvars, terms.into_iter().map(|(e, c)| (Monomial::from_exps(e), Ratio::from_integer(c))).collect())
    })
}

/// A torus-homogeneous polynomial: `X^a Y^b` times weight-zero terms.
fn homogeneous(m: usize) -> impl Strategy<Value = Poly> {
    (prop::collection::vec(0u32..3, 2 * m), prop::collection::vec((prop::collection::vec(0u32..2, m), 1i64..=3), 1..3)).prop_map(
        move |(shift, zs)| {
            let lead = Poly::monomial(Monomial::from_exps(shift), rat(1));
            let z = Poly::from_terms(m, zs.into_iter().map(|(e, c)| (Monomial::from_exps(e), rat(c))).collect());
            &lead * &Poly::from_z_poly(&z)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(3), b in poly(3), c in poly(3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn ring_axioms_over_machine_rationals(a in small_poly(2), b in small_poly(2), c in small_poly(2)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn torus_weight_is_additive((a, b) in (1usize..=2).prop_flat_map(|m| (homogeneous(m), homogeneous(m)))) {
        let (wa, wb) = (a.torus_weight().unwrap(), b.torus_weight().unwrap());
        let sum: Vec<i64> = wa.0.iter().zip(&wb.0).map(|(x, y)| x + y).collect();
        prop_assert_eq!((&a * &b).torus_weight().unwrap().0, sum);
    }

    #[test]
    fn weight_zero_iff_z_rewrite(p in poly(4)) {
        let zero = p.torus_weight().is_some_and(|w| w.is_zero());
        let rewritten = p.to_z_poly();
        prop_assert_eq!(zero, rewritten.is_some());
        if let Some(z) = rewritten {
            prop_assert_eq!(Poly::from_z_poly(&z), p);
        }
    }

    #[test]
    fn z_polynomials_round_trip(z in poly(2)) {
        let p = Poly::from_z_poly(&z);
        prop_assert!(p.torus_weight().unwrap().is_zero());
        prop_assert_eq!(p.to_z_poly(), Some(z));
    }

    #[test]
    fn sigma_action_composes(p in poly(6), s in 0usize..6, t in 0usize..6) {
        let perms = permutations(3);
        let (sigma, tau) = (&perms[s], &perms[t]);
        let composite: Vec<usize> = (0..3).map(|j| sigma[tau[j]]).collect();
        prop_assert_eq!(p.sigma_act(&composite), p.sigma_act(tau).sigma_act(sigma));
    }
}

#[test]
fn z_variables_have_weight_zero() {
    for m in 1..=3 {
        for j in 0..m {
            assert!(Poly::zvar(m, j).torus_weight().unwrap().is_zero());
            assert_eq!(Poly::xvar(m, j).torus_weight().unwrap().0[j], 1);
            assert_eq!(Poly::yvar(m, j).torus_weight().unwrap().0[j], -1);
        }
    }
}
