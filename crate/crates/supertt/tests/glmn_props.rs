use proptest::prelude::*;
use supertt::cliffmod::rank_variety;
use supertt::glmn::{atypicality, duflo_serganova, kac_module, kac_module_f, simple_module, simple_support, GLWeight};
use supertt::variety::{permutations, Variety};

/// A dominant weight of `gl(m|n)` with entries in `-3..=3`.
fn dominant(m: usize, n: usize) -> impl Strategy<Value = GLWeight> {
    let sorted = |len: usize| {
        prop::collection::vec(-3i64..=3, len).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            v
        })
    };
    (sorted(m), sorted(n)).prop_map(move |(a, b)| GLWeight::new(m, n, a.into_iter().chain(b).collect()).unwrap())
}

fn any_dominant() -> impl Strategy<Value = GLWeight> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(m, n)| dominant(m, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simple_support_is_stable(lambda in any_dominant()) {
        let v = simple_support(&lambda).unwrap();
        for p in permutations(v.m()) {
            prop_assert!(v.sigma_act(&p).equal(&v).unwrap());
        }
    }

    #[test]
    fn simple_support_depends_only_on_atypicality(
        (a, b) in (1usize..=3, 1usize..=3).prop_flat_map(|(m, n)| (dominant(m, n), dominant(m, n)))
    ) {
        if atypicality(&a).unwrap() == atypicality(&b).unwrap() {
            prop_assert!(simple_support(&a).unwrap().equal(&simple_support(&b).unwrap()).unwrap());
        }
    }

    #[test]
    fn atypicality_respects_the_symmetries(lambda in any_dominant(), c in -3i64..=3) {
        let (m, n) = (lambda.m(), lambda.n());
        let l = atypicality(&lambda).unwrap();
        prop_assert!(l <= m.min(n));
        // Adding a multiple of the supertrace keeps every λ_i + λ_{m+j}.
        let e = lambda.entries();
        let shifted: Vec<i64> = (0..m + n).map(|i| if i < m { e[i] + c } else { e[i] - c }).collect();
        prop_assert_eq!(atypicality(&GLWeight::new(m, n, shifted).unwrap()).unwrap(), l);
        // For m = n the duality λ ↦ -w₀λ also preserves it.
        if m == n {
            let dual: Vec<i64> = (0..m).rev().map(|i| -e[i]).chain((m..2 * m).rev().map(|i| -e[i])).collect();
            prop_assert_eq!(atypicality(&GLWeight::new(m, n, dual).unwrap()).unwrap(), l);
        }
    }

    #[test]
    fn gl11_kac_support_lies_in_the_y_plane(lambda in dominant(1, 1)) {
        let v = rank_variety(&kac_module_f(&lambda).unwrap()).unwrap();
        let plane = Variety::coordinate(1, &[], &[0]).unwrap();
        prop_assert!(plane.contains(&v).unwrap());
        // For atypical λ the intersection of f₁ with the nilradical is inside.
        if atypicality(&lambda).unwrap() == 1 {
            prop_assert!(v.contains(&plane).unwrap());
        } else {
            prop_assert!(v.is_proj_empty().unwrap());
        }
    }
}

#[test]
fn ds_locus_of_a_tensor_product_is_in_the_intersection() {
    let weights = ["(0|0)", "(1|-1)", "(1|0)", "(2|-2)"];
    let mut modules = Vec::new();
    for s in weights {
        let l: GLWeight = s.parse().unwrap();
        modules.push(kac_module(&l).unwrap());
        modules.push(simple_module(&l).unwrap());
    }
    for a in &modules {
        for b in &modules {
            let t = duflo_serganova(&a.tensor(b).unwrap()).unwrap();
            let both = duflo_serganova(a).unwrap().intersect(&duflo_serganova(b).unwrap()).unwrap();
            assert!(both.contains(&t).unwrap());
        }
    }
}
