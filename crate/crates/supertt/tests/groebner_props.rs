use proptest::prelude::*;
use supertt::field::rat;
use supertt::groebner::{buchberger, radical_member, Ideal};
use supertt::polyring::{Monomial, Poly};

const NVARS: usize = 3;

/// Sparse polynomials of degree at most 2 in three variables.
fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..2, NVARS), -2i64..=2), 1..3)
        .prop_map(|terms| Poly::from_terms(NVARS, terms.into_iter().map(|(e, c)| (Monomial::from_exps(e), rat(c))).collect()))
}

fn ideal() -> impl Strategy<Value = Vec<Poly>> {
    prop::collection::vec(poly(), 1..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn members_are_radical_members(gens in ideal(), coeffs in prop::collection::vec(poly(), 2)) {
        let p = gens.iter().zip(&coeffs).fold(Poly::zero(NVARS), |acc, (g, c)| &acc + &(g * c));
        prop_assert!(Ideal::new(NVARS, gens.clone()).unwrap().contains(&p).unwrap());
        prop_assert!(radical_member(&p, &gens, NVARS).unwrap());
    }

    #[test]
    fn radical_membership_ignores_powers(gens in ideal(), p in poly()) {
        let base = radical_member(&p, &gens, NVARS).unwrap();
        for k in 2..=3 {
            prop_assert_eq!(radical_member(&p.pow(k), &gens, NVARS).unwrap(), base);
        }
    }

    #[test]
    fn reduced_basis_ignores_generator_order(mut gens in prop::collection::vec(poly(), 1..4), rot in 0usize..4) {
        let a = buchberger(NVARS, &gens).unwrap();
        let len = gens.len();
        gens.rotate_left(rot % len);
        gens.reverse();
        let b = buchberger(NVARS, &gens).unwrap();
        prop_assert_eq!(a.basis(), b.basis());
    }
}

#[test]
fn nilpotent_is_in_the_radical_only() {
    let x = Poly::var(NVARS, 0);
    let gens = vec![x.pow(3)];
    assert!(radical_member(&x, &gens, NVARS).unwrap());
    assert!(!Ideal::new(NVARS, gens).unwrap().contains(&x).unwrap());
}
