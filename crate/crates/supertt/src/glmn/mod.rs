//! Weights, atypicality and small-rank modules for `gl(m|n)`.
//!
//! Matrix units are indexed from zero: `e_{ab}` with `a, b < m + n`, where
//! the indices below `m` are even. The detecting subalgebra `f` has rank
//! `r = min(m, n)` and, for `m ≤ n`, odd basis
//! `x_j = e_{m-1-j, m+j}`, `y_j = e_{m+j, m-1-j}` (`j < r`), so that the
//! coordinate `X_j` of the variety layer reads the coefficient of `x_j`.

mod ds;
mod kac;

pub use ds::{duflo_serganova, DsVariety};
pub use kac::{kac_module, kac_module_f, simple_module, simple_module_f, GlModule};

use crate::cliffmod::WeightModule;
use crate::error::{Error, Result};
use crate::variety::Variety;
use std::fmt;
use std::str::FromStr;

/// An integral weight `(λ_1, ..., λ_m | λ_{m+1}, ..., λ_{m+n})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GLWeight {
    m: usize,
    n: usize,
    entries: Vec<i64>,
}

impl GLWeight {
    pub fn new(m: usize, n: usize, entries: Vec<i64>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameters("gl(m|n) needs m, n ≥ 1".into()));
        }
        if entries.len() != m + n {
            return Err(Error::InvalidParameters(format!(
                "a weight of gl({}|{}) has {} entries, got {}",
                m,
                n,
                m + n,
                entries.len()
            )));
        }
        Ok(GLWeight { m, n, entries })
    }

    /// The zero weight, the highest weight of the trivial module.
    pub fn zero(m: usize, n: usize) -> Result<Self> {
        Self::new(m, n, vec![0; m + n])
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Dominance for `gl(m) ⊕ gl(n)`: weakly decreasing on each side.
    pub fn is_dominant(&self) -> bool {
        let (a, b) = self.entries.split_at(self.m);
        a.windows(2).all(|w| w[0] >= w[1]) && b.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn require_dominant(&self) -> Result<()> {
        if self.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(self.to_string()))
        }
    }
}

impl fmt::Display for GLWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &[i64]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({}|{})", side(&self.entries[..self.m]), side(&self.entries[self.m..]))
    }
}

impl FromStr for GLWeight {
    type Err = Error;

    /// Parses `"(a1,...,am|b1,...,bn)"`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse { pos: 0, msg: "a weight is written (a1,...,am|b1,...,bn)".into() })?;
        let (left, right) =
            inner.split_once('|').ok_or_else(|| Error::Parse { pos: 1, msg: "missing '|' between the two sides".into() })?;
        let side = |t: &str, offset: usize| -> Result<Vec<i64>> {
            t.split(',')
                .map(|x| x.parse::<i64>().map_err(|_| Error::Parse { pos: offset, msg: format!("'{}' is not an integer", x) }))
                .collect()
        };
        let a = side(left, 1)?;
        let b = side(right, left.len() + 2)?;
        let (m, n) = (a.len(), b.len());
        GLWeight::new(m, n, a.into_iter().chain(b).collect())
    }
}

/// The number of disjoint pairs `(i, j)` with
/// `λ_i + (m - i + 1) + λ_{m+j} - j = 0` (indices from one), that is, the
/// size of a maximum matching for `(λ + ρ, ε_i + δ_j) = 0` with
/// `ρ = (m, ..., 1 | -1, ..., -n)`.
pub fn atypicality(lambda: &GLWeight) -> Result<usize> {
    lambda.require_dominant()?;
    let (m, n) = (lambda.m, lambda.n);
    let e = &lambda.entries;
    let edge = |i: usize, j: usize| e[i] + (m - i) as i64 + e[m + j] - (j as i64 + 1) == 0;
    // Augmenting paths; the graph has at most a handful of vertices.
    let mut owner: Vec<Option<usize>> = vec![None; n];
    fn augment(i: usize, n: usize, edge: &dyn Fn(usize, usize) -> bool, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for j in 0..n {
            if edge(i, j) && !seen[j] {
                seen[j] = true;
                if owner[j].is_none_or(|k| augment(k, n, edge, seen, owner)) {
                    owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    let mut size = 0;
    for i in 0..m {
        let mut seen = vec![false; n];
        if augment(i, n, &edge, &mut seen, &mut owner) {
            size += 1;
        }
    }
    Ok(size)
}

/// The support of the simple module `L(λ)` over `f`:
/// `Σ_r V(r - ℓ, r - ℓ, r - ℓ)` with `r = min(m, n)` and `ℓ` the atypicality.
pub fn simple_support(lambda: &GLWeight) -> Result<Variety> {
    let l = atypicality(lambda)?;
    let r = lambda.m.min(lambda.n);
    Variety::sat_v_stp(r, r - l, r - l, r - l)
}

/// The embedding of `f` into `gl(m|n)` by matrix units.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FCoordinates {
    m: usize,
    n: usize,
}

impl FCoordinates {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameters("gl(m|n) needs m, n ≥ 1".into()));
        }
        Ok(FCoordinates { m, n })
    }

    pub fn rank(&self) -> usize {
        self.m.min(self.n)
    }

    /// The matrix unit `x_j`. For `m > n` the roles of the two index blocks
    /// are exchanged, as under `gl(m|n) ≅ gl(n|m)`.
    pub fn x(&self, j: usize) -> (usize, usize) {
        let (m, n) = (self.m, self.n);
        if m <= n {
            (m - 1 - j, m + j)
        } else {
            (m + n - 1 - j, j)
        }
    }

    pub fn y(&self, j: usize) -> (usize, usize) {
        let (a, b) = self.x(j);
        (b, a)
    }
}

/// The twist of a module over `f` by the automorphism exchanging `x_j` and
/// `y_j` up to sign, followed by duality.
pub fn tau_twist(module: &WeightModule) -> Result<WeightModule> {
    module.tau_twist()
}

/// The image of a variety under `(X, Y) ↦ (Y, -X)`.
pub fn tau_twist_variety(v: &Variety) -> Variety {
    v.tau_twist()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    fn w(s: &str) -> GLWeight {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        let l = w("( 2, 1 | 0,-3 )");
        assert_eq!((l.m(), l.n()), (2, 2));
        assert_eq!(l.entries(), &[2, 1, 0, -3]);
        assert_eq!(l.to_string(), "(2,1|0,-3)");
        assert!(l.is_dominant());
        assert!(!w("(0,1|0)").is_dominant());
        assert!("(1,2)".parse::<GLWeight>().is_err());
        assert!("(a|1)".parse::<GLWeight>().is_err());
        assert!("(|1)".parse::<GLWeight>().is_err());
    }

    #[test]
    fn atypicality_examples() {
        assert_eq!(atypicality(&w("(0|0)")).unwrap(), 1);
        assert_eq!(atypicality(&w("(1|0)")).unwrap(), 0);
        assert_eq!(atypicality(&w("(1,0|0,0)")).unwrap(), 1);
        assert_eq!(atypicality(&w("(0,0|0,0)")).unwrap(), 2);
        assert_eq!(atypicality(&w("(3,1|-1,-3)")).unwrap(), 2);
        assert_eq!(atypicality(&w("(5,5|0,0)")).unwrap(), 0);
        assert!(matches!(atypicality(&w("(0,1|0,0)")), Err(Error::NotDominant(_))));
    }

    #[test]
    fn simple_supports() {
        assert!(simple_support(&w("(0,0|0,0)")).unwrap().equal(&Variety::whole(2)).unwrap());
        assert!(simple_support(&w("(5,5|0,0)")).unwrap().is_proj_empty().unwrap());
        let expected = Variety::coordinate(2, &[0], &[0]).unwrap().union(&Variety::coordinate(2, &[1], &[1]).unwrap()).unwrap();
        assert!(simple_support(&w("(1,0|0,0)")).unwrap().equal(&expected).unwrap());
    }

    #[test]
    fn coordinates() {
        let f = FCoordinates::new(2, 2).unwrap();
        assert_eq!(f.x(0), (1, 2));
        assert_eq!(f.x(1), (0, 3));
        assert_eq!(f.y(1), (3, 0));
        let g = FCoordinates::new(2, 1).unwrap();
        assert_eq!(g.rank(), 1);
        assert_eq!(g.x(0), (2, 0));
    }

    #[test]
    fn twisting_varieties() {
        let zx = Variety::zero_set(1, vec![parse_poly("X1", 1).unwrap()]).unwrap();
        let zy = Variety::zero_set(1, vec![parse_poly("Y1", 1).unwrap()]).unwrap();
        assert!(tau_twist_variety(&zx).equal(&zy).unwrap());
        assert!(tau_twist_variety(&tau_twist_variety(&zx)).equal(&zx).unwrap());
    }
}
