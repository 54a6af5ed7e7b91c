//! Finite Zariski spaces, support data on finite object families, the
//! bijection between thick tensor ideals and specialization-closed sets, and
//! prime spectra.
//!
//! A finite Zariski space is recorded by its points, each the generic point
//! of an irreducible closed set, ordered by `x ≤ y` iff `x ∈ closure(y)`.
//! Closed sets are then exactly the down-sets. Subsets of at most 128
//! points or objects are stored as bit masks.

mod models;
mod support;

pub use models::{coordinate_assignment, coordinate_space, qplus_chain, RealizedAssignment, RealizedObject};
pub use support::{
    bijection_check, check_axioms, gamma_map, hopkins_check, ideal_lattice, spc_compute, theta_map, AxiomResult, AxiomStatus,
    BijectionReport, HomeoWitness, Spectrum, SupportAssignment,
};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A subset of points or objects.
pub type Mask = u128;

pub(crate) const MAX_ELEMENTS: usize = 128;

pub(crate) fn bit(i: usize) -> Mask {
    1 << i
}

pub(crate) fn members(mask: Mask) -> impl Iterator<Item = usize> {
    (0..MAX_ELEMENTS).filter(move |&i| mask >> i & 1 == 1)
}

pub(crate) fn mask_of(items: impl IntoIterator<Item = usize>) -> Mask {
    items.into_iter().fold(0, |acc, i| acc | bit(i))
}

/// Upper bound on the number of closed sets enumerated in one call.
const MAX_CLOSED_SETS: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteZariski {
    labels: Vec<String>,
    /// `le[x][y]`: `x` lies in the closure of `y`.
    le: Vec<Vec<bool>>,
    /// Generators of a group acting by order automorphisms, as permutations.
    group: Vec<Vec<usize>>,
}

impl FiniteZariski {
    pub fn new(labels: Vec<String>, le: Vec<Vec<bool>>, group: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(Error::Unsupported(format!("at most {} points", MAX_ELEMENTS)));
        }
        if le.len() != n || le.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameters("order matrix has the wrong shape".into()));
        }
        for x in 0..n {
            if !le[x][x] {
                return Err(Error::InvalidParameters(format!("order is not reflexive at {}", labels[x])));
            }
            for y in 0..n {
                if x != y && le[x][y] && le[y][x] {
                    return Err(Error::InvalidParameters(format!("{} and {} have the same closure", labels[x], labels[y])));
                }
                for z in 0..n {
                    if le[x][y] && le[y][z] && !le[x][z] {
                        return Err(Error::InvalidParameters(format!(
                            "order is not transitive at {} ≤ {} ≤ {}",
                            labels[x], labels[y], labels[z]
                        )));
                    }
                }
            }
        }
        for g in &group {
            let image: BTreeSet<usize> = g.iter().copied().collect();
            if g.len() != n || image.len() != n || image.iter().any(|&i| i >= n) {
                return Err(Error::InvalidParameters("group element is not a permutation of the points".into()));
            }
            if (0..n).any(|x| (0..n).any(|y| le[x][y] != le[g[x]][g[y]])) {
                return Err(Error::InvalidParameters("group element does not preserve the order".into()));
            }
        }
        Ok(FiniteZariski { labels, le, group })
    }

    /// The chain `1 < 2 < ... < r`.
    pub fn chain(labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        let le = (0..n).map(|x| (0..n).map(|y| x <= y).collect()).collect();
        Self::new(labels, le, Vec::new())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.le[x][y]
    }

    pub fn group(&self) -> &[Vec<usize>] {
        &self.group
    }

    pub fn all(&self) -> Mask {
        mask_of(0..self.len())
    }

    /// The closure of a point: everything below it.
    pub fn closure(&self, x: usize) -> Mask {
        mask_of((0..self.len()).filter(|&y| self.le[y][x]))
    }

    pub fn closure_of(&self, set: Mask) -> Mask {
        members(set).fold(0, |acc, x| acc | self.closure(x))
    }

    pub fn is_closed(&self, set: Mask) -> bool {
        self.closure_of(set) == set
    }

    /// Maximal points of a set.
    pub fn maximal(&self, set: Mask) -> Vec<usize> {
        members(set).filter(|&x| !members(set).any(|y| y != x && self.le[x][y])).collect()
    }

    /// All closed sets, that is, all down-sets, in increasing mask order.
    pub fn closed_sets(&self) -> Result<Vec<Mask>> {
        self.down_sets_of_units((0..self.len()).map(bit).collect())
    }

    /// Down-sets that are unions of the given disjoint units.
    fn down_sets_of_units(&self, mut units: Vec<Mask>) -> Result<Vec<Mask>> {
        // Units sorted so that everything below a unit comes first.
        units.sort_by_key(|&u| (members(self.closure_of(u)).count(), u));
        let mut out = Vec::new();
        fn go(space: &FiniteZariski, units: &[Mask], acc: Mask, out: &mut Vec<Mask>) -> Result<()> {
            let Some((&u, rest)) = units.split_first() else {
                if out.len() >= MAX_CLOSED_SETS {
                    return Err(Error::Budget(out.len()));
                }
                out.push(acc);
                return Ok(());
            };
            go(space, rest, acc, out)?;
            let below = space.closure_of(u) & !u;
            if below & !acc == 0 {
                go(space, rest, acc | u, out)?;
            }
            Ok(())
        }
        go(self, &units, 0, &mut out)?;
        out.sort_unstable();
        Ok(out)
    }

    /// The `G`-stable closed sets: down-sets that are unions of orbits.
    pub fn stable_closed_sets(&self) -> Result<Vec<Mask>> {
        let mut orbits: Vec<Mask> = (0..self.len()).map(|x| self.orbit(x)).collect();
        orbits.sort_unstable();
        orbits.dedup();
        self.down_sets_of_units(orbits)
    }

    /// Specialization-closed sets, computed as all unions of point closures.
    /// In a finite space they coincide with the closed sets.
    pub fn specialization_closed_sets(&self) -> Result<Vec<Mask>> {
        let mut seen: BTreeSet<Mask> = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(w) = frontier.pop() {
            for x in 0..self.len() {
                let next = w | self.closure(x);
                if seen.insert(next) {
                    if seen.len() > MAX_CLOSED_SETS {
                        return Err(Error::Budget(seen.len()));
                    }
                    frontier.push(next);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Nonempty closed sets that are not a union of two proper closed subsets.
    pub fn irreducible_closed_sets(&self) -> Result<Vec<Mask>> {
        let closed = self.closed_sets()?;
        Ok(irreducible_among(&closed, |_| true))
    }

    /// Points whose closure is `set`.
    pub fn generic_points(&self, set: Mask) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.closure(x) == set).collect()
    }

    /// Checks that every irreducible closed set has exactly one generic
    /// point, and returns the first offending set otherwise.
    pub fn zariski_witness(&self) -> Result<Option<Mask>> {
        for w in self.irreducible_closed_sets()? {
            if self.generic_points(w).len() != 1 {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    pub fn is_zariski(&self) -> Result<bool> {
        Ok(self.zariski_witness()?.is_none())
    }

    fn act(&self, g: &[usize], set: Mask) -> Mask {
        mask_of(members(set).map(|x| g[x]))
    }

    pub fn is_stable(&self, set: Mask) -> bool {
        self.group.iter().all(|g| self.act(g, set) == set)
    }

    /// The orbit of a point under the group generated by the action.
    pub fn orbit(&self, x: usize) -> Mask {
        let mut orbit = bit(x);
        loop {
            let next = self.group.iter().fold(orbit, |acc, g| acc | self.act(g, orbit));
            if next == orbit {
                return orbit;
            }
            orbit = next;
        }
    }

    /// Covering pairs `(x, y)`: `x < y` with nothing strictly between.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x != y && self.le[x][y] && !(0..n).any(|z| z != x && z != y && self.le[x][z] && self.le[z][y]) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph {} {{\n  rankdir=BT;\n", name);
        for (i, l) in self.labels.iter().enumerate() {
            s.push_str(&format!("  n{} [label=\"{}\"];\n", i, l));
        }
        for (x, y) in self.hasse() {
            s.push_str(&format!("  n{} -> n{};\n", x, y));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: FiniteZariski = serde_json::from_str(s)?;
        Self::new(raw.labels, raw.le, raw.group)
    }
}

/// The members of `family` (filtered by `keep`) that are nonempty and not the
/// union of the family members strictly inside them.
fn irreducible_among(family: &[Mask], keep: impl Fn(Mask) -> bool) -> Vec<Mask> {
    family
        .iter()
        .copied()
        .filter(|&w| w != 0 && keep(w))
        .filter(|&w| {
            let below = family.iter().filter(|&&v| v != w && v & !w == 0).fold(0, |acc, &v| acc | v);
            below != w
        })
        .collect()
}

/// The quotient `X_G` together with `ρ : X → X_G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quotient {
    pub space: FiniteZariski,
    /// `ρ(x)`: the point of `X_G` whose closure is the saturation of `x`.
    pub rho: Vec<usize>,
    /// For each point of `X_G`, its closure in `X` as a `G`-stable closed set.
    pub saturations: Vec<Mask>,
}

/// `X_G`: points are the `G`-irreducible `G`-stable closed sets, i.e. those
/// that are not a union of two proper `G`-stable closed subsets, ordered by
/// containment.
pub fn quotient_space(x: &FiniteZariski) -> Result<Quotient> {
    let stable = x.stable_closed_sets()?;
    let points = irreducible_among(&stable, |_| true);
    let labels = points
        .iter()
        .map(|&w| {
            let tops: Vec<&str> = x.maximal(w).into_iter().map(|i| x.labels[i].as_str()).collect();
            if tops.len() == 1 {
                tops[0].to_string()
            } else {
                format!("[{}]", tops.join(" ~ "))
            }
        })
        .collect();
    let n = points.len();
    let le = (0..n).map(|a| (0..n).map(|b| points[a] & !points[b] == 0).collect()).collect();
    let space = FiniteZariski::new(labels, le, Vec::new())?;
    let mut rho = Vec::with_capacity(x.len());
    for p in 0..x.len() {
        let saturation = x.closure_of(x.orbit(p));
        let image = points
            .iter()
            .position(|&w| w == saturation)
            .ok_or_else(|| Error::OracleDisagreement(format!("the saturation of {} is not G-irreducible", x.labels[p])))?;
        rho.push(image);
    }
    Ok(Quotient { space, rho, saturations: points })
}

impl Quotient {
    /// `ρ⁻¹(W)` for a set of points of `X_G`.
    pub fn preimage(&self, set: Mask) -> Mask {
        mask_of((0..self.rho.len()).filter(|&p| set >> self.rho[p] & 1 == 1))
    }

    /// Checks that `W ↦ ρ⁻¹(W)` is a bijection from the closed sets of `X_G`
    /// onto the `G`-stable closed sets of `X`.
    pub fn closed_correspondence(&self, x: &FiniteZariski) -> Result<bool> {
        let mut images: Vec<Mask> = self.space.closed_sets()?.into_iter().map(|w| self.preimage(w)).collect();
        images.sort_unstable();
        let before = images.len();
        images.dedup();
        let stable = x.stable_closed_sets()?;
        Ok(before == images.len() && images == stable)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> FiniteZariski {
        // a, b < top, with the swap of a and b.
        let le = vec![vec![true, false, true], vec![false, true, true], vec![false, false, true]];
        FiniteZariski::new(vec!["a".into(), "b".into(), "top".into()], le, vec![vec![1, 0, 2]]).unwrap()
    }

    #[test]
    fn closed_sets_of_a_diamond() {
        let x = diamond();
        assert_eq!(x.closed_sets().unwrap(), vec![0, 0b001, 0b010, 0b011, 0b111]);
        assert_eq!(x.specialization_closed_sets().unwrap(), x.closed_sets().unwrap());
        assert_eq!(x.irreducible_closed_sets().unwrap(), vec![0b001, 0b010, 0b111]);
        assert!(x.is_zariski().unwrap());
    }

    #[test]
    fn quotient_fuses_an_orbit() {
        let x = diamond();
        let q = quotient_space(&x).unwrap();
        assert_eq!(q.space.len(), 2);
        assert_eq!(q.rho[0], q.rho[1]);
        assert!(q.space.le(q.rho[0], q.rho[2]));
        assert!(q.space.is_zariski().unwrap());
        assert!(q.closed_correspondence(&x).unwrap());
        let filtered: Vec<Mask> = x.closed_sets().unwrap().into_iter().filter(|&w| x.is_stable(w)).collect();
        assert_eq!(x.stable_closed_sets().unwrap(), filtered);
    }

    #[test]
    fn trivial_group_is_the_identity() {
        let x = FiniteZariski::new(diamond().labels.clone(), diamond().le.clone(), Vec::new()).unwrap();
        let q = quotient_space(&x).unwrap();
        assert_eq!(q.space.len(), 3);
        assert_eq!(q.space.closed_sets().unwrap().len(), x.closed_sets().unwrap().len());
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(x.le(a, b), q.space.le(q.rho[a], q.rho[b]));
            }
        }
    }

    #[test]
    fn rejects_bad_orders() {
        let cyclic = vec![vec![true, true], vec![true, true]];
        assert!(FiniteZariski::new(vec!["a".into(), "b".into()], cyclic, vec![]).is_err());
        let le = vec![vec![true, true], vec![false, true]];
        assert!(FiniteZariski::new(vec!["a".into(), "b".into()], le, vec![vec![1, 0]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = diamond();
        assert_eq!(FiniteZariski::from_json(&x.to_json().unwrap()).unwrap(), x);
        assert!(x.to_dot("d").contains("n0 -> n2"));
    }
}
