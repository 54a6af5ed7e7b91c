use proptest::prelude::*;
use supertt::field::rat;
use supertt::polyring::Poly;
use supertt::variety::{permutations, sample_grid, Strategy as Path, Variety};

const M: usize = 2;

/// `Z(X_A, Y_B)` for random index sets.
fn coordinate() -> impl Strategy<Value = Variety> {
    (0u8..4, 0u8..4).prop_map(|(a, b)| {
        let pick = |mask: u8| (0..M).filter(|&j| mask >> j & 1 == 1).collect::<Vec<_>>();
        Variety::coordinate(M, &pick(a), &pick(b)).unwrap()
    })
}

/// A coordinate subspace or the zero set of a weight-zero linear form.
fn basic() -> impl Strategy<Value = Variety> {
    prop_oneof![
        3 => coordinate(),
        1 => (1i64..=2, -2i64..=2).prop_map(|(a, b)| {
            let g = &Poly::zvar(M, 0).scale(&rat(a)) + &Poly::zvar(M, 1).scale(&rat(b));
            Variety::zero_set(M, vec![g]).unwrap()
        }),
    ]
}

fn variety() -> impl Strategy<Value = Variety> {
    prop::collection::vec(basic(), 1..3).prop_map(|vs| vs.iter().skip(1).fold(vs[0].clone(), |acc, v| acc.union(v).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn lattice_laws(a in variety(), b in variety(), c in variety()) {
        let eq = |x: &Variety, y: &Variety| x.equal(y).unwrap();
        prop_assert!(eq(&a.union(&b).unwrap(), &b.union(&a).unwrap()));
        prop_assert!(eq(&a.intersect(&b).unwrap(), &b.intersect(&a).unwrap()));
        prop_assert!(eq(&a.union(&b).unwrap().union(&c).unwrap(), &a.union(&b.union(&c).unwrap()).unwrap()));
        prop_assert!(eq(
            &a.intersect(&b).unwrap().intersect(&c).unwrap(),
            &a.intersect(&b.intersect(&c).unwrap()).unwrap()
        ));
        prop_assert!(eq(&a.union(&a.intersect(&b).unwrap()).unwrap(), &a));
        prop_assert!(eq(&a.intersect(&a.union(&b).unwrap()).unwrap(), &a));
    }

    #[test]
    fn saturation_is_stable(a in variety()) {
        let s = a.sigma_saturate();
        for p in permutations(M) {
            prop_assert!(s.sigma_act(&p).equal(&s).unwrap());
        }
        prop_assert!(s.contains(&a).unwrap());
    }

    #[test]
    fn irreducibles_land_in_a_component(a1 in basic(), a2 in basic(), b in coordinate()) {
        let union = a1.union(&a2).unwrap();
        let landing = a1.contains(&b).unwrap() || a2.contains(&b).unwrap();
        prop_assert_eq!(union.contains(&b).unwrap(), landing);
        prop_assert_eq!(union.contains_with(&b, Path::Groebner).unwrap(), landing);
    }

    #[test]
    fn set_operations_match_points(a in variety(), b in variety()) {
        let (u, i) = (a.union(&b).unwrap(), a.intersect(&b).unwrap());
        for x in sample_grid(M) {
            let (pa, pb) = (a.point_member(&x).unwrap(), b.point_member(&x).unwrap());
            prop_assert_eq!(u.point_member(&x).unwrap(), pa || pb);
            prop_assert_eq!(i.point_member(&x).unwrap(), pa && pb);
        }
    }

    #[test]
    fn stored_generators_are_bihomogeneous(a in variety(), b in variety()) {
        for v in [a.intersect(&b).unwrap(), a.sigma_saturate(), a.tau_twist()] {
            for c in v.components() {
                prop_assert!(c.polys().iter().all(|p| p.is_bihomogeneous()));
            }
        }
    }
}

#[test]
fn inhomogeneous_generators_are_rejected() {
    let g = &Poly::xvar(M, 0) + &Poly::yvar(M, 0);
    assert!(Variety::zero_set(M, vec![g]).is_err());
}
