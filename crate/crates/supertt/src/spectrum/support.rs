//! Support data on a finite object family with declared operation tables.
//!
//! A thick tensor ideal is a set of objects containing the zero object and
//! closed under the declared tables: tensoring with any object, shifts and
//! their inverses, duals, finite sums, summands and the third term of a
//! declared triangle.

use super::{bit, mask_of, members, FiniteZariski, Mask, MAX_ELEMENTS};
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportAssignment {
    pub space: FiniteZariski,
    pub objects: Vec<String>,
    /// Closed sets of `space`.
    pub supports: Vec<Mask>,
    pub zero: usize,
    pub unit: usize,
    /// `tensor[a][b]`: the object `a ⊗ b`.
    pub tensor: Option<Vec<Vec<usize>>>,
    /// `sum[a][b]`: the object `a ⊕ b`.
    pub sum: Option<Vec<Vec<usize>>>,
    /// The suspension, a permutation of the objects.
    pub shift: Option<Vec<usize>>,
    pub dual: Option<Vec<usize>>,
    /// Distinguished triangles `a → b → c → Σa`.
    pub triangles: Vec<[usize; 3]>,
}

impl SupportAssignment {
    /// An assignment without tables; add them through the public fields.
    pub fn new(space: FiniteZariski, objects: Vec<String>, supports: Vec<Mask>, zero: usize, unit: usize) -> Result<Self> {
        let k = objects.len();
        if k > MAX_ELEMENTS || supports.len() != k || zero >= k || unit >= k {
            return Err(Error::InvalidParameters("object list, supports and zero/unit indices disagree".into()));
        }
        if let Some(i) = (0..k).find(|&i| !space.is_closed(supports[i])) {
            return Err(Error::InvalidParameters(format!("the support of {} is not closed", objects[i])));
        }
        Ok(SupportAssignment {
            space,
            objects,
            supports,
            zero,
            unit,
            tensor: None,
            sum: None,
            shift: None,
            dual: None,
            triangles: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn all_objects(&self) -> Mask {
        mask_of(0..self.len())
    }

    fn validate_tables(&self) -> Result<()> {
        let k = self.len();
        let square = |t: &Option<Vec<Vec<usize>>>| {
            t.as_ref().is_none_or(|t| t.len() == k && t.iter().all(|r| r.len() == k && r.iter().all(|&x| x < k)))
        };
        let unary = |t: &Option<Vec<usize>>| t.as_ref().is_none_or(|t| t.len() == k && t.iter().all(|&x| x < k));
        if !square(&self.tensor) || !square(&self.sum) || !unary(&self.shift) || !unary(&self.dual) {
            return Err(Error::InvalidParameters("operation table has the wrong shape".into()));
        }
        if self.triangles.iter().flatten().any(|&x| x >= k) {
            return Err(Error::InvalidParameters("triangle refers to an unknown object".into()));
        }
        Ok(())
    }

    /// The smallest thick tensor ideal containing `seed`.
    pub fn ideal_closure(&self, seed: Mask) -> Mask {
        let k = self.len();
        let mut ideal = seed | bit(self.zero);
        loop {
            let mut next = ideal;
            for a in members(ideal) {
                if let Some(t) = &self.tensor {
                    for b in 0..k {
                        next |= bit(t[a][b]) | bit(t[b][a]);
                    }
                }
                if let Some(s) = &self.shift {
                    next |= bit(s[a]);
                    next |= mask_of((0..k).filter(|&b| s[b] == a));
                }
                if let Some(d) = &self.dual {
                    next |= bit(d[a]);
                }
            }
            if let Some(s) = &self.sum {
                for a in 0..k {
                    for b in 0..k {
                        let (ia, ib, is) = (ideal >> a & 1 == 1, ideal >> b & 1 == 1, ideal >> s[a][b] & 1 == 1);
                        if ia && ib {
                            next |= bit(s[a][b]);
                        }
                        if is {
                            next |= bit(a) | bit(b);
                        }
                    }
                }
            }
            for tri in &self.triangles {
                let inside = tri.iter().filter(|&&x| ideal >> x & 1 == 1).count();
                if inside >= 2 {
                    next |= mask_of(tri.iter().copied());
                }
            }
            if next == ideal {
                return ideal;
            }
            ideal = next;
        }
    }

    pub fn is_ideal(&self, set: Mask) -> bool {
        self.ideal_closure(set) == set
    }

    /// A proper ideal `P` with `a ⊗ b ∈ P ⇒ a ∈ P or b ∈ P`.
    pub fn is_prime(&self, ideal: Mask) -> bool {
        if ideal >> self.unit & 1 == 1 {
            return false;
        }
        let Some(t) = &self.tensor else {
            return false;
        };
        let k = self.len();
        (0..k).all(|a| (0..k).all(|b| ideal >> t[a][b] & 1 == 0 || ideal >> a & 1 == 1 || ideal >> b & 1 == 1))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AxiomStatus {
    Pass,
    Fail,
    /// The table the axiom needs was not declared.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: u8,
    pub statement: &'static str,
    pub status: AxiomStatus,
    pub witness: Option<String>,
}

/// Checks the eight support-data axioms on the declared tables.
pub fn check_axioms(s: &SupportAssignment) -> Result<Vec<AxiomResult>> {
    s.validate_tables()?;
    let k = s.len();
    let sup = &s.supports;
    let name = |i: usize| s.objects[i].as_str();
    let mut out = Vec::new();
    let mut push = |axiom: u8, statement: &'static str, declared: bool, witness: Option<String>| {
        let status = match (declared, &witness) {
            (false, _) => AxiomStatus::Skipped,
            (true, None) => AxiomStatus::Pass,
            (true, Some(_)) => AxiomStatus::Fail,
        };
        out.push(AxiomResult { axiom, statement, status, witness });
    };
    let pairs = || (0..k).flat_map(|a| (0..k).map(move |b| (a, b)));

    let w1 = if sup[s.zero] != 0 {
        Some(format!("V({}) ≠ ∅", name(s.zero)))
    } else if sup[s.unit] != s.space.all() {
        Some(format!("V({}) ≠ X", name(s.unit)))
    } else {
        None
    };
    push(1, "V(0) = ∅, V(1) = X", true, w1);

    let w2 = s
        .sum
        .as_ref()
        .and_then(|t| pairs().find(|&(a, b)| sup[t[a][b]] != sup[a] | sup[b]).map(|(a, b)| format!("{} ⊕ {}", name(a), name(b))));
    push(2, "V(M ⊕ N) = V(M) ∪ V(N)", s.sum.is_some(), w2);

    let w3 = s.shift.as_ref().and_then(|t| (0..k).find(|&a| sup[t[a]] != sup[a]).map(|a| format!("Σ{}", name(a))));
    push(3, "V(ΣM) = V(M)", s.shift.is_some(), w3);

    let w4 = s
        .triangles
        .iter()
        .find(|[a, b, c]| sup[*b] & !(sup[*a] | sup[*c]) != 0)
        .map(|[a, b, c]| format!("{} → {} → {}", name(*a), name(*b), name(*c)));
    push(4, "V(N) ⊆ V(M) ∪ V(Q) for M → N → Q → ΣM", !s.triangles.is_empty(), w4);

    let w5 = s
        .tensor
        .as_ref()
        .and_then(|t| pairs().find(|&(a, b)| sup[t[a][b]] != sup[a] & sup[b]).map(|(a, b)| format!("{} ⊗ {}", name(a), name(b))));
    push(5, "V(M ⊗ N) = V(M) ∩ V(N)", s.tensor.is_some(), w5);

    let w6 = s.dual.as_ref().and_then(|t| (0..k).find(|&a| sup[t[a]] != sup[a]).map(|a| format!("{}*", name(a))));
    push(6, "V(M*) = V(M)", s.dual.is_some(), w6);

    let w7 = (0..k).find(|&a| (sup[a] == 0) != (a == s.zero)).map(|a| name(a).to_string());
    push(7, "V(M) = ∅ iff M = 0", true, w7);

    let realized: BTreeSet<Mask> = sup.iter().copied().collect();
    let w8 = s.space.closed_sets()?.into_iter().find(|w| !realized.contains(w)).map(|w| {
        let pts: Vec<&str> = members(w).map(|p| s.space.labels()[p].as_str()).collect();
        format!("{{{}}}", pts.join(", "))
    });
    push(8, "every closed set is some V(M)", true, w8);
    Ok(out)
}

fn require_axioms(s: &SupportAssignment) -> Result<()> {
    let failed: Vec<u8> = check_axioms(s)?.into_iter().filter(|r| r.status == AxiomStatus::Fail).map(|r| r.axiom).collect();
    if s.tensor.is_none() {
        return Err(Error::InvalidParameters("the classification needs a tensor table".into()));
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidParameters(format!("support-data axioms {:?} fail", failed)))
    }
}

/// Every thick tensor ideal, each the join of principal ideals, found by
/// adding one generator at a time.
pub fn ideal_lattice(s: &SupportAssignment) -> Result<Vec<Mask>> {
    s.validate_tables()?;
    let principal: Vec<Mask> = (0..s.len()).map(|a| s.ideal_closure(bit(a))).collect();
    let start = s.ideal_closure(0);
    let mut seen = BTreeSet::from([start]);
    let mut frontier = vec![start];
    while let Some(ideal) = frontier.pop() {
        for p in &principal {
            let next = s.ideal_closure(ideal | p);
            if seen.insert(next) {
                if seen.len() > 1 << 16 {
                    return Err(Error::Budget(seen.len()));
                }
                frontier.push(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// `Γ(I) = ⋃_{M ∈ I} V(M)`.
pub fn gamma_map(s: &SupportAssignment, ideal: Mask) -> Mask {
    members(ideal).fold(0, |acc, a| acc | s.supports[a])
}

/// `Θ(W) = {M : V(M) ⊆ W}`.
pub fn theta_map(s: &SupportAssignment, w: Mask) -> Mask {
    mask_of((0..s.len()).filter(|&a| s.supports[a] & !w == 0))
}

/// The ideal generated by `M` equals `Θ(V(M))`.
pub fn hopkins_check(s: &SupportAssignment, object: usize) -> bool {
    s.ideal_closure(bit(object)) == theta_map(s, s.supports[object])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub closed_sets: usize,
    pub specialization_closed_agree: bool,
    pub ideals: usize,
    /// `Θ(W)` is an ideal and `Γ(Θ(W)) = W` for every closed set `W`.
    pub gamma_theta: bool,
    /// `Θ(Γ(I)) = I` for every ideal `I`.
    pub theta_gamma: bool,
    pub witness: Option<String>,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.specialization_closed_agree && self.gamma_theta && self.theta_gamma
    }
}

/// Runs both composites of `Γ` and `Θ` over every closed set and every ideal.
pub fn bijection_check(s: &SupportAssignment) -> Result<BijectionReport> {
    require_axioms(s)?;
    let closed = s.space.closed_sets()?;
    let specialization_closed_agree = s.space.specialization_closed_sets()? == closed;
    let ideals = ideal_lattice(s)?;
    let mut witness = None;
    let mut gamma_theta = true;
    for &w in &closed {
        let t = theta_map(s, w);
        if !s.is_ideal(t) || gamma_map(s, t) != w {
            gamma_theta = false;
            witness.get_or_insert(format!("closed set {:#b}", w));
        }
    }
    let mut theta_gamma = true;
    for &i in &ideals {
        if theta_map(s, gamma_map(s, i)) != i {
            theta_gamma = false;
            witness.get_or_insert(format!("ideal {:#b}", i));
        }
    }
    Ok(BijectionReport {
        closed_sets: closed.len(),
        specialization_closed_agree,
        ideals: ideals.len(),
        gamma_theta,
        theta_gamma,
        witness,
    })
}

/// The comparison map `f(x) = {M : x ∉ V(M)}` from `X` to the primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomeoWitness {
    /// `map[x]`: index of `f(x)` among the primes.
    pub map: Vec<Option<usize>>,
    pub bijective: bool,
    /// `x ≤ y` iff `f(x) ⊆ f(y)`, i.e. `f(x)` lies in the closure of `f(y)`.
    pub order_isomorphism: bool,
    /// `f` carries the closed sets of `X` onto the sets `supp(M)`.
    pub closed_sets_match: bool,
}

impl HomeoWitness {
    pub fn holds(&self) -> bool {
        self.bijective && self.order_isomorphism && self.closed_sets_match
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    pub primes: Vec<Mask>,
    /// The primes with `P ≤ Q` iff `P ⊆ Q`, the specialization order of the
    /// Balmer topology.
    pub space: FiniteZariski,
    pub every_ideal_prime: bool,
    pub witness: HomeoWitness,
}

/// The prime ideals of the finite lattice, topologized, with the comparison
/// map from `X`.
pub fn spc_compute(s: &SupportAssignment) -> Result<Spectrum> {
    require_axioms(s)?;
    let ideals = ideal_lattice(s)?;
    let all = s.all_objects();
    let proper: Vec<Mask> = ideals.iter().copied().filter(|&i| i != all).collect();
    let primes: Vec<Mask> = proper.iter().copied().filter(|&i| s.is_prime(i)).collect();
    let every_ideal_prime = primes.len() == proper.len();
    let labels = primes
        .iter()
        .map(|&p| {
            let names: Vec<&str> = members(p).map(|a| s.objects[a].as_str()).collect();
            format!("<{}>", names.join(", "))
        })
        .collect();
    let n = primes.len();
    let le = (0..n).map(|a| (0..n).map(|b| primes[a] & !primes[b] == 0).collect()).collect();
    let space = FiniteZariski::new(labels, le, Vec::new())?;

    let x = &s.space;
    let map: Vec<Option<usize>> = (0..x.len())
        .map(|p| {
            let image = mask_of((0..s.len()).filter(|&a| s.supports[a] >> p & 1 == 0));
            primes.iter().position(|&q| q == image)
        })
        .collect();
    let hit: BTreeSet<usize> = map.iter().flatten().copied().collect();
    let bijective = map.iter().all(|m| m.is_some()) && hit.len() == n && n == x.len();
    let order_isomorphism =
        bijective && (0..x.len()).all(|a| (0..x.len()).all(|b| x.le(a, b) == space.le(map[a].unwrap(), map[b].unwrap())));
    let closed_sets_match = bijective && {
        // supp(M) = {P : M ∉ P}; its preimage under f must be V(M), and these
        // sets must be exactly the closed sets of the spectrum.
        let spc_closed: BTreeSet<Mask> = space.closed_sets()?.into_iter().collect();
        let supp_sets: BTreeSet<Mask> = (0..s.len()).map(|a| mask_of((0..n).filter(|&q| primes[q] >> a & 1 == 0))).collect();
        let pulls_back = (0..s.len()).all(|a| {
            let supp = mask_of((0..n).filter(|&q| primes[q] >> a & 1 == 0));
            mask_of((0..x.len()).filter(|&p| supp >> map[p].unwrap() & 1 == 1)) == s.supports[a]
        });
        pulls_back && supp_sets == spc_closed
    };
    Ok(Spectrum {
        primes,
        space,
        every_ideal_prime,
        witness: HomeoWitness { map, bijective, order_isomorphism, closed_sets_match },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// One point, objects 0 and 1.
    fn point() -> SupportAssignment {
        let x = FiniteZariski::chain(vec!["p".into()]).unwrap();
        let mut s = SupportAssignment::new(x, vec!["0".into(), "1".into()], vec![0, 1], 0, 1).unwrap();
        s.tensor = Some(vec![vec![0, 0], vec![0, 1]]);
        s.sum = Some(vec![vec![0, 1], vec![1, 1]]);
        s.shift = Some(vec![0, 1]);
        s.dual = Some(vec![0, 1]);
        s
    }

    #[test]
    fn one_point_space() {
        let s = point();
        let axioms = check_axioms(&s).unwrap();
        assert!(axioms.iter().all(|r| r.status != AxiomStatus::Fail), "{:?}", axioms);
        let spc = spc_compute(&s).unwrap();
        assert_eq!(spc.primes, vec![0b01]);
        assert!(spc.witness.holds());
        assert!(hopkins_check(&s, 0) && hopkins_check(&s, 1));
        assert!(bijection_check(&s).unwrap().holds());
        assert_eq!(theta_map(&s, 0), 0b01);
    }

    #[test]
    fn broken_tensor_is_reported() {
        let mut s = point();
        s.tensor = Some(vec![vec![0, 1], vec![1, 1]]);
        let r = check_axioms(&s).unwrap();
        let five = r.iter().find(|r| r.axiom == 5).unwrap();
        assert_eq!(five.status, AxiomStatus::Fail);
        assert_eq!(five.witness.as_deref(), Some("0 ⊗ 1"));
        assert!(bijection_check(&s).is_err());
    }

    #[test]
    fn missing_realization_is_reported() {
        let x = FiniteZariski::chain(vec!["a".into(), "b".into()]).unwrap();
        let s = SupportAssignment::new(x, vec!["0".into(), "1".into()], vec![0, 0b11], 0, 1).unwrap();
        let r = check_axioms(&s).unwrap();
        assert_eq!(r[7].status, AxiomStatus::Fail);
        assert_eq!(r[1].status, AxiomStatus::Skipped);
    }
}
