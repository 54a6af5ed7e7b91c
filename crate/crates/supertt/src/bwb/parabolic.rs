//! Induction from the parabolic `P_k` of block upper triangular matrices with
//! Levi `GL(m|n-k) × GL(k)`.
//!
//! As a `g₀`-module, `H^i(G/P, N*)` is `H^i(G₀/P₀, [Λ(g₁̄/p₁̄) ⊗ N]*)`, and
//! `g₁̄/p₁̄ ≅ u⁻₁̄` has weights `ε_a - ε_b` with `a` in the `GL(k)` block and
//! `b ≤ m`. Each `l₀`-constituent `σ` of `Λ(u⁻₁̄) ⊗ N` contributes
//! `L_{g₀}(w·σ)` in degree `ℓ(w)` by the Bott algorithm for `GL(m) × GL(n)`.
//! When every constituent lands in degree zero, the long exact sequences
//! of a composition series show `H^{>0} = 0` and give `H⁰` exactly.
//! Otherwise only the Euler characteristic is determined.

use super::{bott_levi, is_dominant, minus_one_weights, weyl_character, CharacterElement, CharacterJson, Laurent};
use crate::error::{Error, Result};
use crate::glmn::{atypicality, simple_module, GLWeight};
use serde::{Deserialize, Serialize};

/// The parabolic `P_k` of `GL(m|n)`, `0 ≤ k ≤ n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parabolic {
    pub m: usize,
    pub n: usize,
    pub k: usize,
}

impl Parabolic {
    pub fn new(m: usize, n: usize, k: usize) -> Result<Self> {
        if m == 0 || n == 0 || k > n {
            return Err(Error::InvalidParameters(format!("P_k needs m, n ≥ 1 and 0 ≤ k ≤ n, got m={} n={} k={}", m, n, k)));
        }
        Ok(Parabolic { m, n, k })
    }

    /// Size of the `GL(m|n-k)` block.
    pub fn split(&self) -> usize {
        self.m + self.n - self.k
    }

    /// `GL(m) × GL(n-k) × GL(k)` with empty factors removed.
    pub fn levi_shape(&self) -> Vec<usize> {
        [self.m, self.n - self.k, self.k].into_iter().filter(|&r| r > 0).collect()
    }

    pub fn even_shape(&self) -> Vec<usize> {
        vec![self.m, self.n]
    }

    fn unit_weight(&self, a: usize, b: usize) -> Vec<i64> {
        let mut w = vec![0; self.m + self.n];
        w[a] += 1;
        w[b] -= 1;
        w
    }

    /// Weights of `u⁻₁̄`.
    pub fn odd_radical_weights(&self) -> Vec<Vec<i64>> {
        (self.split()..self.m + self.n)
            .flat_map(|a| (0..self.m).map(move |b| (a, b)))
            .map(|(a, b)| self.unit_weight(a, b))
            .collect()
    }

    /// Weights of `u⁻₀̄`.
    pub fn even_radical_weights(&self) -> Vec<Vec<i64>> {
        (self.split()..self.m + self.n)
            .flat_map(|a| (self.m..self.split()).map(move |b| (a, b)))
            .map(|(a, b)| self.unit_weight(a, b))
            .collect()
    }

    fn check(&self, lambda: &GLWeight) -> Result<()> {
        if (lambda.m(), lambda.n()) != (self.m, self.n) {
            return Err(Error::InvalidParameters(format!("weight {} is not a weight of gl({}|{})", lambda, self.m, self.n)));
        }
        lambda.require_dominant()
    }
}

/// `λ_i - λ_{i+1} > bound` for all adjacent indices inside `gl(m)` and
/// inside `gl(n)`.
pub fn gaps_exceed(lambda: &[i64], m: usize, bound: i64) -> bool {
    first_gap_violation(lambda, m, bound).is_none()
}

fn first_gap_violation(lambda: &[i64], m: usize, bound: i64) -> Option<usize> {
    (0..lambda.len().saturating_sub(1)).filter(|&i| i + 1 != m).find(|&i| lambda[i] - lambda[i + 1] <= bound)
}

/// The `l₀`-character of the simple `p`-module `L_p(λ)`, that is, of
/// `L_{gl(m|n-k)}(λ_1, ..., λ_{m+n-k}) ⊠ L_{gl(k)}(λ_{m+n-k+1}, ...)`.
pub fn simple_levi_character(lambda: &GLWeight, p: &Parabolic) -> Result<Laurent> {
    p.check(lambda)?;
    let (m, split) = (p.m, p.split());
    let e = lambda.entries();
    let first = if split == m {
        weyl_character(&[m], &e[..m])?
    } else {
        let inner = GLWeight::new(m, split - m, e[..split].to_vec())?;
        if atypicality(&inner)? == 0 {
            Laurent::exterior(split, &minus_one_weights(m, split - m))?.mul(&weyl_character(&[m, split - m], &e[..split])?)?
        } else {
            let module = simple_module(&inner)?;
            let mut ch = Laurent::zero(split);
            for w in module.weights() {
                ch.add_term(w.clone(), 1);
            }
            ch
        }
    };
    Ok(first.outer(&weyl_character(&[p.k], &e[split..])?))
}

fn exterior_power(nvars: usize, ws: &[Vec<i64>], b: usize) -> Laurent {
    let mut out = Laurent::zero(nvars);
    fn go(ws: &[Vec<i64>], start: usize, left: usize, acc: &mut Vec<i64>, out: &mut Laurent) {
        if left == 0 {
            out.add_term(acc.clone(), 1);
            return;
        }
        for i in start..ws.len() {
            for (a, x) in acc.iter_mut().zip(&ws[i]) {
                *a += x;
            }
            go(ws, i + 1, left - 1, acc, out);
            for (a, x) in acc.iter_mut().zip(&ws[i]) {
                *a -= x;
            }
        }
    }
    go(ws, 0, b, &mut vec![0; nvars], &mut out);
    out
}

/// `S^t_super(g/p) = ⊕_{a+b=t} S^a(u⁻₀̄) ⊗ Λ^b(u⁻₁̄)` as a character.
pub fn super_symmetric_power(t: usize, p: &Parabolic) -> Result<Laurent> {
    let nv = p.m + p.n;
    let (even, odd) = (p.even_radical_weights(), p.odd_radical_weights());
    let mut out = Laurent::zero(nv);
    for b in 0..=t.min(odd.len()) {
        let part = Laurent::symmetric_power(nv, &even, t - b).mul(&exterior_power(nv, &odd, b))?;
        out = out.add(&part);
    }
    Ok(out)
}

/// The degree of a weight in the parabolic grading, normalized so that the
/// root vectors of `u⁺` have degree `+1`, those of `u⁻` degree `-1`, and `l`
/// degree zero: `deg γ = Σ_{i ≤ m+n-k} γ_i`.
pub fn parabolic_degree(gamma: &[i64], p: &Parabolic) -> i64 {
    gamma[..p.split()].iter().sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum H0Mode {
    /// Every constituent sits in degree zero; `H⁰` is exact and `H^{>0} = 0`.
    Certified,
    /// Only the Euler characteristic `Σ (-1)^i ch H^i` is determined.
    EulerOnly,
}

/// The Bott placement of one `l₀`-constituent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    pub sigma: Vec<i64>,
    pub multiplicity: i64,
    /// `None` when `σ + ρ` is singular.
    pub degree: Option<usize>,
    pub weight: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct H0Result {
    pub parabolic: Parabolic,
    pub mode: H0Mode,
    /// Whether `λ_i - λ_{i+1} > mn` (the hypothesis with `d = 0`).
    pub gap_hypothesis: bool,
    /// `Λ(u⁻₁̄) ⊗ L_p(λ)` over `l₀`.
    pub levi_constituents: CharacterElement,
    pub placements: Vec<Placement>,
    /// `Σ (-1)^i ch H^i(G/P, L_p(λ)*)*` over `g₀`.
    pub euler: CharacterElement,
    /// `ch H⁰(G/P, L_p(λ)*)*` over `g₀`, when certified.
    pub h0: Option<CharacterElement>,
}

#[derive(Serialize)]
pub struct H0Json {
    pub parabolic: Parabolic,
    pub mode: H0Mode,
    pub gap_hypothesis: bool,
    pub levi_constituents: CharacterJson,
    pub placements: Vec<Placement>,
    pub euler: CharacterJson,
    pub h0: Option<CharacterJson>,
}

impl H0Result {
    pub fn to_json(&self) -> H0Json {
        H0Json {
            parabolic: self.parabolic,
            mode: self.mode,
            gap_hypothesis: self.gap_hypothesis,
            levi_constituents: self.levi_constituents.to_json(),
            placements: self.placements.clone(),
            euler: self.euler.to_json(),
            h0: self.h0.as_ref().map(|c| c.to_json()),
        }
    }
}

/// `H⁰(G/P, L_p(λ)*)*` as a `g₀`-character. With `euler_only` the result is
/// never certified.
pub fn h0_character(lambda: &GLWeight, p: &Parabolic, euler_only: bool) -> Result<H0Result> {
    p.check(lambda)?;
    let nv = p.m + p.n;
    let coefficients = Laurent::exterior(nv, &p.odd_radical_weights())?.mul(&simple_levi_character(lambda, p)?)?;
    let levi_constituents = CharacterElement::from_laurent(&p.levi_shape(), &coefficients)?;
    let even = p.even_shape();
    let mut euler = CharacterElement::zero(&even);
    let mut placements = Vec::new();
    let mut all_zero = true;
    for (sigma, &c) in levi_constituents.terms() {
        let placed = bott_levi(&even, sigma);
        if let Some((i, w)) = &placed {
            let sign = if i % 2 == 0 { c } else { -c };
            euler.add_term(w.clone(), sign);
        }
        all_zero &= matches!(placed, Some((0, _)));
        placements.push(Placement {
            sigma: sigma.clone(),
            multiplicity: c,
            degree: placed.as_ref().map(|(i, _)| *i),
            weight: placed.map(|(_, w)| w),
        });
    }
    let certified = all_zero && !euler_only;
    Ok(H0Result {
        parabolic: *p,
        mode: if certified { H0Mode::Certified } else { H0Mode::EulerOnly },
        gap_hypothesis: gaps_exceed(lambda.entries(), p.m, (p.m * p.n) as i64),
        h0: certified.then(|| euler.clone()),
        levi_constituents,
        placements,
        euler,
    })
}

/// A constituent that misses its gap bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapWitness {
    /// `"gamma"` for `L_p(λ)`'s Kac bound, `"sigma"` after tensoring with `Λ(u⁻₁̄)`.
    pub stage: String,
    pub weight: Vec<i64>,
    /// One-based index `i` of the failing difference `w_i - w_{i+1}`.
    pub index: usize,
    pub bound: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapCheck {
    /// Whether `λ_i - λ_{i+1} > D` holds, the hypothesis of both bounds.
    pub precondition: bool,
    pub gamma_bound: i64,
    pub sigma_bound: i64,
    pub gammas: usize,
    pub sigmas: usize,
    pub holds: bool,
    pub witness: Option<GapWitness>,
}

/// Checks that every `γ` in the `l₀`-decomposition of
/// `K_{gl(m|n-k)}(λ') ⊠ L_{gl(k)}(λ'')` has gaps `> D - m(n-k)`, and that every
/// `σ` in `Λ(u⁻₁̄) ⊗ L(γ)` has gaps `> D - m(n-k) - km = D - mn`. The
/// precondition on `λ` is reported but not enforced, so a weight with small
/// gaps yields a witness.
pub fn gap_check_breakdown(lambda: &GLWeight, d: i64, p: &Parabolic) -> Result<GapCheck> {
    p.check(lambda)?;
    let (m, split, nv) = (p.m, p.split(), p.m + p.n);
    let e = lambda.entries();
    let kac = Laurent::exterior(split, &minus_one_weights(m, split - m))?.mul(&weyl_character(&[m, split - m], &e[..split])?)?;
    let upper = kac.outer(&weyl_character(&[p.k], &e[split..])?);
    let shape = p.levi_shape();
    let gammas = CharacterElement::from_laurent(&shape, &upper)?;
    let gamma_bound = d - (m * (p.n - p.k)) as i64;
    let sigma_bound = d - (m * p.n) as i64;
    let odd = Laurent::exterior(nv, &p.odd_radical_weights())?;
    let mut witness = None;
    let mut sigmas = 0;
    for gamma in gammas.terms().keys() {
        if let Some(i) = first_gap_violation(gamma, m, gamma_bound) {
            witness.get_or_insert(GapWitness { stage: "gamma".into(), weight: gamma.clone(), index: i + 1, bound: gamma_bound });
        }
        let tensor = odd.mul(&weyl_character(&shape, gamma)?)?;
        let decomposition = CharacterElement::from_laurent(&shape, &tensor)?;
        sigmas += decomposition.terms().len();
        for sigma in decomposition.terms().keys() {
            if let Some(i) = first_gap_violation(sigma, m, sigma_bound) {
                witness.get_or_insert(GapWitness {
                    stage: "sigma".into(),
                    weight: sigma.clone(),
                    index: i + 1,
                    bound: sigma_bound,
                });
            }
        }
    }
    Ok(GapCheck {
        precondition: gaps_exceed(e, m, d),
        gamma_bound,
        sigma_bound,
        gammas: gammas.terms().len(),
        sigmas,
        holds: witness.is_none(),
        witness,
    })
}

/// Both sides of `S^t_super(g/p) ⊗ L_p(λ) ≅ [H⁰(G/P, L_p(λ)*)*]_{deg λ - t}`
/// as `l₀`-characters. Requires `λ_i - λ_{i+1} > d + mn` and `t ≤ d`.
pub fn grading_slice(lambda: &GLWeight, t: usize, d: usize, p: &Parabolic) -> Result<(CharacterElement, CharacterElement)> {
    p.check(lambda)?;
    if t > d || !gaps_exceed(lambda.entries(), p.m, (d + p.m * p.n) as i64) {
        return Err(Error::InvalidParameters(format!(
            "the slice identity needs t ≤ d and gaps of {} above d + mn = {}",
            lambda,
            d + p.m * p.n
        )));
    }
    let shape = p.levi_shape();
    let levi = simple_levi_character(lambda, p)?;
    let lhs = CharacterElement::from_laurent(&shape, &super_symmetric_power(t, p)?.mul(&levi)?)?;
    let h0 = h0_character(lambda, p, false)?
        .h0
        .ok_or_else(|| Error::ModuleInvariant("H⁰ is not certified under the gap hypothesis".into()))?;
    let target = parabolic_degree(lambda.entries(), p) - t as i64;
    let slice = h0.to_laurent()?.filter(|w| parabolic_degree(w, p) == target);
    let rhs = CharacterElement::from_laurent(&shape, &slice)?;
    debug_assert!(rhs.terms().keys().all(|w| is_dominant(&shape, w)));
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bwb::kac_character;

    fn w(s: &str) -> GLWeight {
        s.parse().unwrap()
    }

    #[test]
    fn kac_identity_at_k_equal_n() {
        for s in ["(0|0)", "(2|-1)", "(1|0,0)", "(0,0|0,0)", "(2,1|0,-1)"] {
            let l = w(s);
            let p = Parabolic::new(l.m(), l.n(), l.n()).unwrap();
            let r = h0_character(&l, &p, false).unwrap();
            assert_eq!(r.mode, H0Mode::Certified);
            assert_eq!(r.h0.unwrap(), kac_character(&l).unwrap(), "{}", s);
        }
    }

    #[test]
    fn certified_equals_euler_under_gaps() {
        let l = w("(0|9,0)");
        let p = Parabolic::new(1, 2, 1).unwrap();
        let r = h0_character(&l, &p, false).unwrap();
        assert!(r.gap_hypothesis);
        assert_eq!(r.mode, H0Mode::Certified);
        assert_eq!(r.h0.as_ref(), Some(&r.euler));
        for sigma in r.levi_constituents.terms().keys() {
            assert!(gaps_exceed(sigma, 1, 0));
        }
        let e = h0_character(&l, &p, true).unwrap();
        assert_eq!(e.mode, H0Mode::EulerOnly);
        assert_eq!(e.euler, r.euler);
    }

    #[test]
    fn small_gaps_degrade() {
        // With λ = (0|0,1) the constituents are not all dominant for g₀.
        let l = w("(0|1,0)");
        let p = Parabolic::new(1, 2, 1).unwrap();
        let r = h0_character(&l, &p, false).unwrap();
        assert!(!r.gap_hypothesis);
        assert!(r.placements.iter().any(|pl| pl.degree != Some(0)) == (r.mode == H0Mode::EulerOnly));
    }

    #[test]
    fn gap_lemmas() {
        let p = Parabolic::new(1, 2, 1).unwrap();
        let ok = gap_check_breakdown(&w("(0|9,5)"), 3, &p).unwrap();
        assert!(ok.precondition && ok.holds);
        assert_eq!(ok.gamma_bound, 2);
        let bad = gap_check_breakdown(&w("(0|0,0)"), 3, &p).unwrap();
        assert!(!bad.precondition && !bad.holds);
        assert!(bad.witness.is_some());
        let full = Parabolic::new(1, 2, 2).unwrap();
        assert_eq!(gap_check_breakdown(&w("(0|9,5)"), 3, &full).unwrap().gamma_bound, 3);
    }

    #[test]
    fn degrees() {
        let p = Parabolic::new(1, 2, 1).unwrap();
        // e_{13} and e_{23} span u⁺.
        assert_eq!(parabolic_degree(&[1, 0, -1], &p), 1);
        assert_eq!(parabolic_degree(&[0, 1, -1], &p), 1);
        assert_eq!(parabolic_degree(&[1, -1, 0], &p), 0);
        assert_eq!(parabolic_degree(&[-1, 0, 1], &p), -1);
    }

    #[test]
    fn slice_identity() {
        let p = Parabolic::new(1, 2, 1).unwrap();
        let l = w("(0|6,0)");
        for t in 0..=2 {
            let (lhs, rhs) = grading_slice(&l, t, 2, &p).unwrap();
            assert_eq!(lhs, rhs, "t = {}", t);
        }
        assert!(grading_slice(&l, 3, 2, &p).is_err());
    }

    #[test]
    fn top_degree_is_deg_lambda() {
        let p = Parabolic::new(1, 2, 1).unwrap();
        let l = w("(0|7,1)");
        let h0 = h0_character(&l, &p, false).unwrap().h0.unwrap().to_laurent().unwrap();
        let top = parabolic_degree(l.entries(), &p);
        assert!(h0.terms().keys().all(|g| parabolic_degree(g, &p) <= top));
        assert!(h0.terms().keys().any(|g| parabolic_degree(g, &p) == top));
    }
}
