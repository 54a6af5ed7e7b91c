//! Duflo–Serganova loci: the self-commuting cone `{x ∈ g₁̄ : [x, x] = 0}`
//! and the closed subset of it where a module is not free over `⟨x⟩`.
//!
//! Coordinates are the coefficients `c_{ab}` of the odd matrix units, the
//! units of `g_{+1}` first, each block in row-major order. For `gl(1|1)` these
//! are `(a, b)` with `x = a e₁₂ + b e₂₁`.

use super::GlModule;
use crate::cliffmod::{binom2, MinorCache};
use crate::error::{Error, Result};
use crate::groebner::radical_member;
use crate::polyring::{Monomial, Poly};
use num_traits::Zero;
use std::fmt;

/// A closed conical subset of `g₁̄`, as a union of zero sets.
#[derive(Clone, Debug)]
pub struct DsVariety {
    nvars: usize,
    names: Vec<String>,
    cone: Vec<Poly>,
    components: Vec<Vec<Poly>>,
}

fn odd_units(m: usize, n: usize) -> Vec<(usize, usize)> {
    let plus = (0..m).flat_map(|i| (0..n).map(move |j| (i, m + j)));
    let minus = (0..n).flat_map(|j| (0..m).map(move |i| (m + j, i)));
    plus.chain(minus).collect()
}

/// Generators of the cone: the entries of `x²` for the generic odd `x`.
fn cone(m: usize, n: usize) -> Vec<Poly> {
    let units = odd_units(m, n);
    let nv = units.len();
    let k = m + n;
    let mut x = vec![vec![Poly::zero(nv); k]; k];
    for (v, &(a, b)) in units.iter().enumerate() {
        x[a][b] = Poly::var(nv, v);
    }
    let mut out = std::collections::BTreeSet::new();
    for a in 0..k {
        for b in 0..k {
            let mut p = Poly::zero(nv);
            for c in 0..k {
                p = &p + &(&x[a][c] * &x[c][b]);
            }
            if !p.is_zero() {
                out.insert(p.monic());
            }
        }
    }
    out.into_iter().collect()
}

/// The locus of self-commuting `x` over which `M` is not free as a module
/// for the exterior algebra on `x`: on the cone `ρ(x)² = 0`, and freeness
/// means `rank ρ(x) = dim M / 2`.
pub fn duflo_serganova(module: &GlModule) -> Result<DsVariety> {
    let (m, n) = (module.m(), module.n());
    let units = odd_units(m, n);
    let nv = units.len();
    let names = units.iter().map(|(a, b)| format!("c{}{}", a + 1, b + 1)).collect();
    let cone = cone(m, n);
    let d = module.dim();
    let mut out = DsVariety { nvars: nv, names, cone: cone.clone(), components: Vec::new() };
    if d % 2 == 1 {
        out.components.push(cone);
        return Ok(out);
    }
    let evens: Vec<usize> = (0..d).filter(|&i| !module.parity()[i]).collect();
    let odds: Vec<usize> = (0..d).filter(|&i| module.parity()[i]).collect();
    let symbolic = |rows: &[usize], cols: &[usize]| -> Vec<Vec<Poly>> {
        rows.iter()
            .map(|&r| {
                cols.iter()
                    .map(|&c| {
                        let terms = units
                            .iter()
                            .enumerate()
                            .filter(|(_, &(a, b))| !module.action(a, b).get(r, c).is_zero())
                            .map(|(v, &(a, b))| (Monomial::var(nv, v), module.action(a, b).get(r, c).clone()))
                            .collect();
                        Poly::from_terms(nv, terms)
                    })
                    .collect()
            })
            .collect()
    };
    let a_mat = symbolic(&odds, &evens);
    let b_mat = symbolic(&evens, &odds);
    let k = d / 2;
    let cost: usize = (0..k).map(|a| binom2(odds.len(), evens.len(), a + 1) + binom2(evens.len(), odds.len(), k - a)).sum();
    if cost > crate::budget::work_budget() {
        return Err(Error::Budget(cost));
    }
    let mut minors_a = MinorCache::new(&a_mat);
    let mut minors_b = MinorCache::new(&b_mat);
    for a in 0..k {
        let mut gens = cone.clone();
        gens.extend(minors_a.all(a + 1));
        gens.extend(minors_b.all(k - a));
        out.components.push(gens);
    }
    out.simplify()?;
    Ok(out)
}

impl DsVariety {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Generators of the cone ideal.
    pub fn cone(&self) -> &[Poly] {
        &self.cone
    }

    /// Generator lists whose zero sets make up the locus.
    pub fn components(&self) -> &[Vec<Poly>] {
        &self.components
    }

    /// Drops components contained in others.
    fn simplify(&mut self) -> Result<()> {
        let mut keep: Vec<Vec<Poly>> = Vec::new();
        let comps = std::mem::take(&mut self.components);
        for (i, c) in comps.iter().enumerate() {
            let mut redundant = false;
            for (j, other) in comps.iter().enumerate() {
                if i == j {
                    continue;
                }
                let inside = component_in(self.nvars, c, std::slice::from_ref(other))?;
                // Of two equal components keep the first.
                if inside && (j < i || !component_in(self.nvars, other, std::slice::from_ref(c))?) {
                    redundant = true;
                    break;
                }
            }
            if !redundant {
                keep.push(c.clone());
            }
        }
        self.components = keep;
        Ok(())
    }

    /// True iff only the origin is left, so the locus is empty projectively.
    pub fn is_proj_empty(&self) -> Result<bool> {
        for c in &self.components {
            for v in 0..self.nvars {
                if !radical_member(&Poly::var(self.nvars, v), c, self.nvars)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True iff the locus is the whole cone.
    pub fn is_whole_cone(&self) -> Result<bool> {
        component_in(self.nvars, &self.cone, &self.components)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &DsVariety) -> Result<bool> {
        if other.nvars != self.nvars {
            return Err(Error::VarMismatch(self.nvars, other.nvars));
        }
        for c in &other.components {
            if !component_in(self.nvars, c, &self.components)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The intersection, as the pairwise sums of generator lists.
    pub fn intersect(&self, other: &DsVariety) -> Result<DsVariety> {
        if other.nvars != self.nvars {
            return Err(Error::VarMismatch(self.nvars, other.nvars));
        }
        let mut out = self.clone();
        out.components = Vec::new();
        for a in &self.components {
            for b in &other.components {
                out.components.push(a.iter().chain(b).cloned().collect());
            }
        }
        out.simplify()?;
        Ok(out)
    }
}

/// `Z(gens) ⊆ ∪ Z(J)` iff every product of one generator from each `J` is in
/// the radical of `gens`.
fn component_in(nvars: usize, gens: &[Poly], union: &[Vec<Poly>]) -> Result<bool> {
    fn go(nvars: usize, gens: &[Poly], rest: &[Vec<Poly>], partial: Poly) -> Result<bool> {
        if !partial.is_constant() && radical_member(&partial, gens, nvars)? {
            return Ok(true);
        }
        let Some((first, tail)) = rest.split_first() else {
            return radical_member(&partial, gens, nvars);
        };
        for g in first {
            if !go(nvars, gens, tail, &partial * g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
    go(nvars, gens, union, Poly::one(nvars))
}

impl fmt::Display for DsVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("∅");
        }
        let name = |i: usize| self.names[i].clone();
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| format!("Z({})", c.iter().map(|p| p.fmt_with(&name)).collect::<Vec<_>>().join(", ")))
            .collect();
        f.write_str(&parts.join(" ∪ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glmn::{kac_module, simple_module, GLWeight};

    fn w(s: &str) -> GLWeight {
        s.parse().unwrap()
    }

    #[test]
    fn gl11_examples() {
        let k0 = duflo_serganova(&kac_module(&w("(0|0)")).unwrap()).unwrap();
        assert_eq!(k0.cone().len(), 1);
        // The line b = 0 inside the cone ab = 0.
        let line = vec![Poly::var(2, 1)];
        assert!(component_in(2, &line, k0.components()).unwrap());
        assert!(k0.components().iter().all(|c| component_in(2, c, std::slice::from_ref(&line)).unwrap()));
        assert!(!k0.is_proj_empty().unwrap());
        assert!(!k0.is_whole_cone().unwrap());

        let typical = duflo_serganova(&kac_module(&w("(1|0)")).unwrap()).unwrap();
        assert!(typical.is_proj_empty().unwrap());
        let trivial = duflo_serganova(&simple_module(&w("(0|0)")).unwrap()).unwrap();
        assert!(trivial.is_whole_cone().unwrap());
        assert!(trivial.contains(&k0).unwrap());
    }

    #[test]
    fn gl22_trivial_is_the_cone() {
        let t = duflo_serganova(&simple_module(&w("(0,0|0,0)")).unwrap()).unwrap();
        assert_eq!(t.nvars(), 8);
        assert!(t.is_whole_cone().unwrap());
        assert!(!t.is_proj_empty().unwrap());
    }
}
