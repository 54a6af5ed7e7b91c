#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;
use supertt::spectrum::{
    bijection_check, check_axioms, gamma_map, hopkins_check, quotient_space, spc_compute, theta_map, AxiomStatus, FiniteZariski,
    Mask, SupportAssignment,
};

/// The order generated by random edges `i < j`, closed transitively.
fn order(n: usize, edges: &[bool]) -> Vec<Vec<bool>> {
    let mut le: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            le[i][j] = edges[k];
            k += 1;
        }
    }
    for via in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][via] && le[via][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    le
}

fn poset() -> impl Strategy<Value = FiniteZariski> {
    (1usize..=6).prop_flat_map(|n| prop::collection::vec(any::<bool>(), n * (n - 1) / 2)).prop_map(|edges| {
        let n = (1..=6).find(|n| n * (n - 1) / 2 == edges.len()).unwrap();
        FiniteZariski::new((0..n).map(|i| format!("p{}", i)).collect(), order(n, &edges), Vec::new()).unwrap()
    })
}

/// One object per closed set, with `⊗ = ∩`, `⊕ = ∪` and trivial shift and dual.
fn full_family(x: &FiniteZariski) -> SupportAssignment {
    let closed = x.closed_sets().unwrap();
    let index = |w: Mask| closed.iter().position(|&c| c == w).unwrap();
    let k = closed.len();
    let objects = (0..k).map(|i| format!("M{}", i)).collect();
    let mut s = SupportAssignment::new(x.clone(), objects, closed.clone(), index(0), index(x.all())).unwrap();
    s.tensor = Some((0..k).map(|a| (0..k).map(|b| index(closed[a] & closed[b])).collect()).collect());
    s.sum = Some((0..k).map(|a| (0..k).map(|b| index(closed[a] | closed[b])).collect()).collect());
    s.shift = Some((0..k).collect());
    s.dual = Some((0..k).collect());
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn specialization_closed_sets_are_down_sets(x in poset()) {
        prop_assert!(x.is_zariski().unwrap());
        prop_assert_eq!(x.specialization_closed_sets().unwrap(), x.closed_sets().unwrap());
    }

    #[test]
    fn gamma_and_theta_are_inverse(x in poset()) {
        let s = full_family(&x);
        prop_assert!(check_axioms(&s).unwrap().iter().all(|a| a.status != AxiomStatus::Fail));
        let report = bijection_check(&s).unwrap();
        prop_assert!(report.holds(), "{:?}", report);
        for w in x.closed_sets().unwrap() {
            prop_assert_eq!(gamma_map(&s, theta_map(&s, w)), w);
        }
        for o in 0..s.len() {
            prop_assert!(hopkins_check(&s, o));
        }
    }

    #[test]
    fn spectrum_recovers_the_space(x in poset()) {
        let spc = spc_compute(&full_family(&x)).unwrap();
        prop_assert!(spc.witness.holds());
        prop_assert_eq!(spc.space.closed_sets().unwrap().len(), x.closed_sets().unwrap().len());
    }

    #[test]
    fn quotient_of_a_doubled_space(x in poset()) {
        // Two disjoint copies of x, exchanged by the group.
        let n = x.len();
        let le = (0..2 * n)
            .map(|a| (0..2 * n).map(|b| a / n == b / n && x.le(a % n, b % n)).collect())
            .collect();
        let swap = (0..2 * n).map(|a| (a + n) % (2 * n)).collect();
        let labels = (0..2 * n).map(|a| format!("{}{}", x.labels()[a % n], if a < n { "" } else { "'" })).collect();
        let doubled = FiniteZariski::new(labels, le, vec![swap]).unwrap();
        let q = quotient_space(&doubled).unwrap();
        prop_assert!(q.space.is_zariski().unwrap());
        prop_assert!(q.closed_correspondence(&doubled).unwrap());
        prop_assert_eq!(q.space.len(), n);
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(q.space.le(q.rho[a], q.rho[b]), x.le(a, b));
            }
        }
    }
}
