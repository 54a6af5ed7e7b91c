//! Concrete support assignments: the chain for the parabolic `q⁺ = g₀ ⊕ g₁`
//! and the coordinate subspaces of `f₁̄` under `Σ_m`, realized by explicit
//! modules over `f(m)`.

use super::support::SupportAssignment;
use super::{bit, mask_of, quotient_space, FiniteZariski, Mask, Quotient};
use crate::cliffmod::{carlson_module, koszul_syzygy, rank_variety, WeightModule, ZAlgebra};
use crate::error::{Error, Result};
use crate::field::rat;
use crate::polyring::Poly;
use crate::variety::{CoordClass, Variety};
use serde::Serialize;

/// The thick-ideal abstraction for `q⁺` in `gl(m|n)`: `X` is the chain of
/// `G₀`-orbit closures `W_1 ⊂ ... ⊂ W_r` of rank-`t` matrices in `g₁`,
/// `r = min(m, n)`, and the object `L(t)` stands for a simple module of
/// atypicality `t`, whose support is `W_t`. `L(0)` is projective, hence the
/// zero object, and `L(r)` has the support of the trivial module.
pub fn qplus_chain(m: usize, n: usize) -> Result<SupportAssignment> {
    let r = m.min(n);
    if r == 0 {
        return Err(Error::InvalidParameters("q⁺ needs m, n ≥ 1".into()));
    }
    let x = FiniteZariski::chain((1..=r).map(|t| format!("∩gM_{}", t)).collect())?;
    let objects = (0..=r).map(|t| format!("L({})", t)).collect();
    let supports = (0..=r).map(|t| mask_of(0..t)).collect();
    let mut s = SupportAssignment::new(x, objects, supports, 0, r)?;
    s.tensor = Some((0..=r).map(|a| (0..=r).map(|b| a.min(b)).collect()).collect());
    s.sum = Some((0..=r).map(|a| (0..=r).map(|b| a.max(b)).collect()).collect());
    s.shift = Some((0..=r).collect());
    s.dual = Some((0..=r).collect());
    // The split triangles L(a) → L(a) ⊕ L(b) → L(b).
    s.triangles = (0..=r).flat_map(|a| (0..=r).map(move |b| [a, a.max(b), b])).collect();
    Ok(s)
}

fn coordinate_label(m: usize, xs: &[usize], ys: &[usize]) -> String {
    if xs.is_empty() && ys.is_empty() {
        return "f₁̄".into();
    }
    let names: Vec<String> = xs.iter().map(|j| format!("X{}", j + 1)).chain(ys.iter().map(|j| format!("Y{}", j + 1))).collect();
    let _ = m;
    format!("Z({})", names.join(","))
}

fn coordinates_of(m: usize, code: usize) -> (Vec<usize>, Vec<usize>) {
    let xs = (0..m).filter(|j| code >> j & 1 == 1).collect();
    let ys = (0..m).filter(|j| code >> (m + j) & 1 == 1).collect();
    (xs, ys)
}

/// The coordinate subspaces `Z(X_A, Y_B)` of `f₁̄` other than the origin,
/// ordered by containment, with `Σ_m` acting by adjacent transpositions.
/// Point `i` is the subspace whose vanishing coordinates are the set bits of
/// the code `i` (bit `j` for `X_{j+1}`, bit `m + j` for `Y_{j+1}`), skipping
/// the origin.
pub fn coordinate_space(m: usize) -> Result<FiniteZariski> {
    if m == 0 || m > 3 {
        return Err(Error::Unsupported("coordinate spaces are built for 1 ≤ m ≤ 3".into()));
    }
    let full = (1usize << (2 * m)) - 1;
    let codes: Vec<usize> = (0..full).collect();
    let labels = codes
        .iter()
        .map(|&c| {
            let (xs, ys) = coordinates_of(m, c);
            coordinate_label(m, &xs, &ys)
        })
        .collect();
    // Z(A) ⊆ Z(B) iff the vanishing set of B is inside that of A.
    let le = codes.iter().map(|&a| codes.iter().map(|&b| b & !a == 0).collect()).collect();
    let swap = |code: usize, j: usize| {
        let mut out = code;
        for base in [0, m] {
            let (p, q) = ((code >> (base + j)) & 1, (code >> (base + j + 1)) & 1);
            out &= !(1 << (base + j)) & !(1 << (base + j + 1));
            out |= q << (base + j) | p << (base + j + 1);
        }
        out
    };
    let group = (0..m.saturating_sub(1)).map(|j| codes.iter().map(|&c| swap(c, j)).collect()).collect();
    FiniteZariski::new(labels, le, group)
}

/// One object of a realized family.
#[derive(Clone, Debug, Serialize)]
pub struct RealizedObject {
    pub label: String,
    pub dim: usize,
    /// The computed rank variety, as a closed set of `X_G`.
    pub support: Mask,
    #[serde(skip)]
    pub module: WeightModule,
}

/// A tensor product of two principal objects, with its computed support.
#[derive(Clone, Debug, Serialize)]
pub struct TensorCheck {
    pub left: String,
    pub right: String,
    pub dim: usize,
    pub support: Mask,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizedAssignment {
    pub m: usize,
    pub assignment: SupportAssignment,
    /// `ρ : X → X_G` and the saturations of the points of `X_G`.
    pub quotient: Quotient,
    /// The class `(s, t, p)` of each point of `X_G`.
    pub classes: Vec<CoordClass>,
    pub objects: Vec<RealizedObject>,
    /// `V(P ⊗ Q) = V(P) ∩ V(Q)` on the principal objects, by explicit
    /// tensor products.
    pub principal_tensors: Vec<TensorCheck>,
}

fn class_of(m: usize, xs: &[usize], ys: &[usize]) -> CoordClass {
    let _ = m;
    CoordClass { s: xs.len(), t: ys.len(), p: xs.iter().filter(|j| ys.contains(j)).count() }
}

/// The closed set of `X_G` made of the classes whose saturation lies in `v`.
/// Errors if `v` is not a union of such saturations.
fn support_mask(m: usize, classes: &[CoordClass], v: &Variety) -> Result<Mask> {
    let mut mask = 0;
    let mut union = Variety::empty(m);
    for (i, c) in classes.iter().enumerate() {
        let sat = Variety::sat_v_stp(m, c.s, c.t, c.p)?;
        if v.contains(&sat)? {
            mask |= bit(i);
            union = union.union(&sat)?;
        }
    }
    let origin = Variety::origin(m);
    if !union.union(&origin)?.equal(&v.union(&origin)?)? {
        return Err(Error::OracleDisagreement(format!("rank variety {} is not a union of coordinate classes", v)));
    }
    Ok(mask)
}

/// The principal module for one class: `C` for the whole space, and
/// otherwise the sum over the `Σ_m`-orbit of modules supported on single
/// coordinate subspaces. At `m = 1` these are `L_{X₁}` and its `τ`-twist;
/// for `m ≥ 2`, exterior algebras on the vanishing coordinates.
fn principal_module(m: usize, f: &ZAlgebra, orbit: &[(Vec<usize>, Vec<usize>)]) -> Result<WeightModule> {
    let mut out: Option<WeightModule> = None;
    for (xs, ys) in orbit {
        let piece = if xs.is_empty() && ys.is_empty() {
            WeightModule::trivial(f)
        } else if m == 1 {
            let l = carlson_module(&Poly::xvar(1, 0))?.to_principal_block(f)?;
            if xs.is_empty() {
                l.tau_twist()?
            } else {
                l
            }
        } else {
            let gens: Vec<usize> = xs.iter().copied().chain(ys.iter().map(|j| m + j)).collect();
            WeightModule::exterior_regular(f, &gens)?
        };
        out = Some(match out {
            None => piece,
            Some(acc) => acc.direct_sum(&piece)?,
        });
    }
    out.ok_or_else(|| Error::InvalidParameters("empty orbit".into()))
}

/// The support assignment on `X_G = (coordinate_space(m))_{Σ_m}` for
/// `m ∈ {1, 2}`, realized by modules over `f(m)` with supports computed as
/// rank varieties. There is one object per closed set `W`: the sum of the
/// principal modules of the maximal points of `W`, and the free module for
/// `W = ∅`. Objects are identified by their support, so each table entry is
/// the family member whose support equals the computed support of the
/// corresponding module.
pub fn coordinate_assignment(m: usize) -> Result<RealizedAssignment> {
    if !(1..=2).contains(&m) {
        return Err(Error::Unsupported("realized coordinate families are built for m ≤ 2".into()));
    }
    let x = coordinate_space(m)?;
    let quotient = quotient_space(&x)?;
    let xg = quotient.space.clone();
    let f = ZAlgebra::f(m);
    let orbits: Vec<Vec<(Vec<usize>, Vec<usize>)>> =
        quotient.saturations.iter().map(|&w| x.maximal(w).into_iter().map(|i| coordinates_of(m, i)).collect()).collect();
    let classes: Vec<CoordClass> = orbits.iter().map(|o| class_of(m, &o[0].0, &o[0].1)).collect();
    let principal: Vec<WeightModule> = orbits.iter().map(|o| principal_module(m, &f, o)).collect::<Result<_>>()?;
    let principal_supports: Vec<Mask> =
        principal.iter().map(|p| support_mask(m, &classes, &rank_variety(p)?)).collect::<Result<_>>()?;

    let closed = xg.closed_sets()?;
    let free = WeightModule::free(&f, &vec![rat(0); m])?;
    let mut objects = Vec::new();
    for &w in &closed {
        let tops = xg.maximal(w);
        let module = match tops.split_first() {
            None => free.clone(),
            Some((&first, rest)) => rest.iter().try_fold(principal[first].clone(), |acc, &c| acc.direct_sum(&principal[c]))?,
        };
        let support = support_mask(m, &classes, &rank_variety(&module)?)?;
        let label = if tops.is_empty() {
            "0".to_string()
        } else {
            tops.iter().map(|&c| xg.labels()[c].clone()).collect::<Vec<_>>().join(" ⊕ ")
        };
        objects.push(RealizedObject { label, dim: module.dim(), support, module });
    }
    let find = |support: Mask| -> Result<usize> {
        objects
            .iter()
            .position(|o| o.support == support)
            .ok_or_else(|| Error::OracleDisagreement(format!("no object with support {:#b}", support)))
    };

    let mut principal_tensors = Vec::new();
    let mut tensor_supports = vec![vec![0; principal.len()]; principal.len()];
    for a in 0..principal.len() {
        for b in a..principal.len() {
            let t = principal[a].tensor(&principal[b])?;
            let support = support_mask(m, &classes, &rank_variety(&t)?)?;
            tensor_supports[a][b] = support;
            tensor_supports[b][a] = support;
            principal_tensors.push(TensorCheck {
                left: xg.labels()[a].clone(),
                right: xg.labels()[b].clone(),
                dim: t.dim(),
                support,
                holds: support == principal_supports[a] & principal_supports[b],
            });
        }
    }
    // Sums of principal modules, so ⊗ distributes into principal products
    // and ⊕ concatenates summands.
    let summands = |w: Mask| xg.maximal(w);
    let k = objects.len();
    let mut tensor = vec![vec![0; k]; k];
    let mut sum = vec![vec![0; k]; k];
    for a in 0..k {
        for b in 0..k {
            let (wa, wb) = (closed[a], closed[b]);
            let mut t = 0;
            for c in summands(wa) {
                for d in summands(wb) {
                    t |= tensor_supports[c][d];
                }
            }
            tensor[a][b] = find(t)?;
            let s = summands(wa).into_iter().chain(summands(wb)).fold(0, |acc, c| acc | principal_supports[c]);
            sum[a][b] = find(s)?;
        }
    }
    // Π and duality commute with ⊕, so they are computed on principal modules.
    let mut principal_shift = Vec::new();
    let mut principal_dual = Vec::new();
    for p in &principal {
        principal_shift.push(support_mask(m, &classes, &rank_variety(&p.parity_shift()?)?)?);
        principal_dual.push(support_mask(m, &classes, &rank_variety(&p.dual()?)?)?);
    }
    let mut shift = Vec::with_capacity(k);
    let mut dual = Vec::with_capacity(k);
    for &w in &closed {
        shift.push(find(summands(w).into_iter().fold(0, |acc, c| acc | principal_shift[c]))?);
        dual.push(find(summands(w).into_iter().fold(0, |acc, c| acc | principal_dual[c]))?);
    }
    // Ω(C) → free → C → ΣΩ(C).
    let omega = koszul_syzygy(m, 1)?.to_principal_block(&f)?;
    let omega_obj = find(support_mask(m, &classes, &rank_variety(&omega)?)?)?;
    let unit = find(xg.all())?;
    let zero = find(0)?;

    let mut assignment = SupportAssignment::new(
        xg,
        objects.iter().map(|o| o.label.clone()).collect(),
        objects.iter().map(|o| o.support).collect(),
        zero,
        unit,
    )?;
    assignment.tensor = Some(tensor);
    assignment.sum = Some(sum);
    assignment.shift = Some(shift);
    assignment.dual = Some(dual);
    assignment.triangles = vec![[omega_obj, zero, unit]];
    Ok(RealizedAssignment { m, assignment, quotient, classes, objects, principal_tensors })
}

#[cfg(test)]
mod tests {
    use super::super::support::*;
    use super::*;
    use crate::variety::coordinate_poset;

    #[test]
    fn qplus_is_a_chain_of_primes() {
        for (m, n) in [(1, 1), (2, 2), (2, 3), (3, 3)] {
            let s = qplus_chain(m, n).unwrap();
            assert!(check_axioms(&s).unwrap().iter().all(|r| r.status == AxiomStatus::Pass));
            assert!(bijection_check(&s).unwrap().holds());
            let spc = spc_compute(&s).unwrap();
            assert_eq!(spc.primes.len(), m.min(n));
            assert!(spc.every_ideal_prime);
            assert!(spc.witness.holds());
            for t in 0..=m.min(n) {
                assert!(hopkins_check(&s, t));
                assert_eq!(s.ideal_closure(bit(t)), mask_of(0..=t));
            }
        }
    }

    #[test]
    fn coordinate_quotient_matches_the_class_poset() {
        for m in 1..=3 {
            let x = coordinate_space(m).unwrap();
            let q = quotient_space(&x).unwrap();
            assert!(q.space.is_zariski().unwrap());
            assert!(q.closed_correspondence(&x).unwrap());
            let poset = coordinate_poset(m).unwrap();
            // The class poset includes the origin.
            assert_eq!(q.space.len() + 1, poset.classes.len());
            let class = |w: Mask| {
                let (xs, ys) = coordinates_of(m, x.maximal(w)[0]);
                poset.classes.iter().position(|c| *c == class_of(m, &xs, &ys)).unwrap()
            };
            for a in 0..q.space.len() {
                for b in 0..q.space.len() {
                    let (ca, cb) = (class(q.saturations[a]), class(q.saturations[b]));
                    assert_eq!(q.space.le(a, b), poset.le[ca][cb]);
                }
            }
        }
    }

    #[test]
    fn x1_and_x2_fuse() {
        let x = coordinate_space(2).unwrap();
        let q = quotient_space(&x).unwrap();
        let x1 = x.labels().iter().position(|l| l == "Z(X1)").unwrap();
        let x2 = x.labels().iter().position(|l| l == "Z(X2)").unwrap();
        assert_eq!(q.rho[x1], q.rho[x2]);
        assert_ne!(q.rho[x1], q.rho[x.labels().iter().position(|l| l == "Z(Y1)").unwrap()]);
    }

    #[test]
    fn realized_m1() {
        let r = coordinate_assignment(1).unwrap();
        assert_eq!(r.assignment.space.len(), 3);
        assert!(r.principal_tensors.iter().all(|t| t.holds));
        let axioms = check_axioms(&r.assignment).unwrap();
        assert!(axioms.iter().all(|a| a.status == AxiomStatus::Pass), "{:?}", axioms);
        assert!(bijection_check(&r.assignment).unwrap().holds());
        let spc = spc_compute(&r.assignment).unwrap();
        assert!(spc.witness.holds());
        // Two closed points: the primes that are minimal.
        let closed_points =
            (0..spc.primes.len()).filter(|&p| (0..spc.primes.len()).all(|q| q == p || !spc.space.le(q, p))).count();
        assert_eq!(closed_points, 2);
        assert!(!spc.every_ideal_prime);
    }

    #[test]
    fn realized_m2() {
        let r = coordinate_assignment(2).unwrap();
        assert_eq!(r.assignment.space.len(), 9);
        assert!(r.principal_tensors.iter().all(|t| t.holds));
        let axioms = check_axioms(&r.assignment).unwrap();
        assert!(axioms.iter().all(|a| a.status == AxiomStatus::Pass), "{:?}", axioms);
        let b = bijection_check(&r.assignment).unwrap();
        assert!(b.holds(), "{:?}", b);
        assert!(spc_compute(&r.assignment).unwrap().witness.holds());
        for o in 0..r.assignment.len() {
            assert!(hopkins_check(&r.assignment, o));
        }
    }
}
