use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use supertt::cliffmod::{coh_support, random_module, random_pair, rank_variety, scramble, RandomFamily, WeightModule};

fn module(seed: u64, m: usize, max_dim: usize) -> WeightModule {
    random_module(&mut ChaCha8Rng::seed_from_u64(seed), m, max_dim, RandomFamily::All).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn duality_preserves_support(seed in any::<u64>(), m in 1usize..=2) {
        let a = module(seed, m, 8);
        prop_assert!(rank_variety(&a.dual().unwrap()).unwrap().equal(&rank_variety(&a).unwrap()).unwrap());
    }

    #[test]
    fn direct_sum_is_union(seed in any::<u64>(), m in 1usize..=2) {
        let (a, b) = random_pair(&mut ChaCha8Rng::seed_from_u64(seed), m, 10).unwrap();
        let lhs = rank_variety(&a.direct_sum(&b).unwrap()).unwrap();
        let rhs = rank_variety(&a).unwrap().union(&rank_variety(&b).unwrap()).unwrap();
        prop_assert!(lhs.equal(&rhs).unwrap());
    }

    #[test]
    fn tensor_is_intersection(seed in any::<u64>(), m in 1usize..=2) {
        let (a, b) = random_pair(&mut ChaCha8Rng::seed_from_u64(seed), m, 8).unwrap();
        let lhs = rank_variety(&a.tensor(&b).unwrap()).unwrap();
        let rhs = rank_variety(&a).unwrap().intersect(&rank_variety(&b).unwrap()).unwrap();
        prop_assert!(lhs.equal(&rhs).unwrap());
    }

    #[test]
    fn basis_change_and_shift_preserve_support(seed in any::<u64>(), m in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_module(&mut rng, m, 8, RandomFamily::All).unwrap();
        let v = rank_variety(&a).unwrap();
        prop_assert!(rank_variety(&scramble(&mut rng, &a).unwrap()).unwrap().equal(&v).unwrap());
        prop_assert!(rank_variety(&a.parity_shift().unwrap()).unwrap().equal(&v).unwrap());
    }

    #[test]
    fn projective_family_is_projective(seed in any::<u64>(), m in 1usize..=2) {
        let a = random_module(&mut ChaCha8Rng::seed_from_u64(seed), m, 16, RandomFamily::Projective).unwrap();
        prop_assert!(rank_variety(&a).unwrap().is_proj_empty().unwrap());
    }

    #[test]
    fn stabilized_cohomological_support_is_the_rank_variety(seed in any::<u64>()) {
        let a = module(seed, 1, 6);
        let c = coh_support(&a, 4).unwrap();
        if c.stabilized {
            prop_assert!(c.variety.equal(&rank_variety(&a).unwrap()).unwrap());
        }
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), m in 1usize..=2) {
        let a = module(seed, m, 8);
        let text = serde_json::to_string(&a.to_json()).unwrap();
        let back = WeightModule::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }
}
