use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use supertt::bwb::{
    bott_levi, grading_slice, h0_character, parabolic_degree, simple_levi_character, super_symmetric_power, H0Mode, Laurent,
    Parabolic,
};
use supertt::glmn::GLWeight;

/// `(a | b, b - g)` at `gl(1|2)`.
fn gapped(min_gap: i64) -> impl Strategy<Value = GLWeight> {
    (-2i64..=2, -2i64..=4, min_gap..=min_gap + 3).prop_map(|(a, b, g)| GLWeight::new(1, 2, vec![a, b, b - g]).unwrap())
}

/// Any dominant weight of `gl(1|2)` with small entries.
fn small() -> impl Strategy<Value = GLWeight> {
    (-2i64..=2, -2i64..=2, 0i64..=3).prop_map(|(a, b, g)| GLWeight::new(1, 2, vec![a, b, b - g]).unwrap())
}

/// The Euler characteristic of `Λ(u⁻₁̄) ⊗ L_p(λ)` computed weight by weight,
/// i.e. from a composition series by Borel-stable lines, visited in an
/// order shuffled by `seed`.
fn euler_by_weights(lambda: &GLWeight, p: &Parabolic, seed: u64) -> BTreeMap<Vec<i64>, i64> {
    let nv = p.m + p.n;
    let coefficients =
        Laurent::exterior(nv, &p.odd_radical_weights()).unwrap().mul(&simple_levi_character(lambda, p).unwrap()).unwrap();
    let mut terms: Vec<(&Vec<i64>, &i64)> = coefficients.terms().iter().collect();
    terms.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let even = p.even_shape();
    let mut out = BTreeMap::new();
    for (mu, &c) in terms {
        if let Some((deg, w)) = bott_levi(&even, mu) {
            *out.entry(w).or_insert(0) += if deg % 2 == 0 { c } else { -c };
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn euler_characteristic_ignores_the_filtration(lambda in small(), k in 0usize..=2, seed in any::<u64>()) {
        let p = Parabolic::new(1, 2, k).unwrap();
        let r = h0_character(&lambda, &p, true).unwrap();
        prop_assert_eq!(&euler_by_weights(&lambda, &p, seed), r.euler.terms());
    }

    #[test]
    fn certified_h0_is_the_euler_characteristic(lambda in gapped(3), k in 0usize..=2) {
        let p = Parabolic::new(1, 2, k).unwrap();
        let r = h0_character(&lambda, &p, false).unwrap();
        prop_assert!(r.gap_hypothesis);
        prop_assert_eq!(r.mode, H0Mode::Certified);
        prop_assert_eq!(r.h0.as_ref(), Some(&r.euler));
    }

    #[test]
    fn degrees_are_bounded_by_deg_lambda(lambda in gapped(3), k in 0usize..=2) {
        let p = Parabolic::new(1, 2, k).unwrap();
        let h0 = h0_character(&lambda, &p, false).unwrap().h0.unwrap().to_laurent().unwrap();
        let top = parabolic_degree(lambda.entries(), &p);
        prop_assert!(h0.terms().keys().all(|g| parabolic_degree(g, &p) <= top));
    }

    #[test]
    fn slice_dimensions_multiply(lambda in gapped(3), extra in 0usize..=2, t in 0usize..=2) {
        let p = Parabolic::new(1, 2, 1).unwrap();
        let e = lambda.entries();
        let gap = (e[1] - e[2]) as usize;
        // Gaps must exceed d + mn = d + 2.
        let d = (gap - 3).min(extra);
        prop_assume!(t <= d);
        let (lhs, rhs) = grading_slice(&lambda, t, d, &p).unwrap();
        let expected = super_symmetric_power(t, &p).unwrap().dim() * simple_levi_character(&lambda, &p).unwrap().dim();
        prop_assert_eq!(rhs.dim().unwrap(), expected);
        prop_assert_eq!(lhs, rhs);
    }
}
