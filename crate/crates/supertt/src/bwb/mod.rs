//! Characters of `GL(r_1) × ⋯ × GL(r_s)` and geometric induction at the
//! level of characters.
//!
//! A character is a table of integer multiplicities indexed by weights on
//! the full diagonal torus. Products and sums are computed on these tables.
//! A table that is invariant under the Weyl group of a Levi shape is
//! decomposed by repeatedly removing the irreducible character of its
//! lexicographically largest weight. That weight is always dominant, since
//! every positive root of a block is lexicographically positive.

mod parabolic;

pub use parabolic::{
    gap_check_breakdown, gaps_exceed, grading_slice, h0_character, parabolic_degree, simple_levi_character,
    super_symmetric_power, GapCheck, GapWitness, H0Mode, H0Result, Parabolic, Placement,
};

use crate::error::{Error, Result};
use crate::glmn::GLWeight;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A finite formal sum `Σ c_μ e^μ` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, i64>,
}

impl Laurent {
    pub fn zero(nvars: usize) -> Self {
        Laurent { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], 1)
    }

    pub fn monomial(weight: Vec<i64>, c: i64) -> Self {
        let mut out = Laurent::zero(weight.len());
        out.add_term(weight, c);
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, weight: &[i64]) -> i64 {
        self.terms.get(weight).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, weight: Vec<i64>, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(weight.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&weight);
        }
    }

    /// The value at the identity, the dimension for an honest character.
    pub fn dim(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), *c);
        }
        out
    }

    pub fn scale(&self, c: i64) -> Laurent {
        let mut out = Laurent::zero(self.nvars);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// The product, refused when the number of term pairs exceeds the work
    /// budget.
    pub fn mul(&self, other: &Laurent) -> Result<Laurent> {
        if self.nvars != other.nvars {
            return Err(Error::VarMismatch(self.nvars, other.nvars));
        }
        let cost = self.terms.len().saturating_mul(other.terms.len());
        if cost > crate::budget::work_budget().saturating_mul(10) {
            return Err(Error::Budget(cost));
        }
        let mut out = Laurent::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let w = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(w, x * y);
            }
        }
        Ok(out)
    }

    /// The terms whose weight satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&[i64]) -> bool) -> Laurent {
        Laurent { nvars: self.nvars, terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), *c)).collect() }
    }

    /// Weights placed side by side: `e^μ ⊗ e^ν ↦ e^{(μ, ν)}`.
    pub fn outer(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::zero(self.nvars + other.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.iter().chain(b).copied().collect(), x * y);
            }
        }
        out
    }

    /// `Π_w (1 + e^w)`, the character of the exterior algebra on a space
    /// with weights `ws`.
    pub fn exterior(nvars: usize, ws: &[Vec<i64>]) -> Result<Laurent> {
        let mut out = Laurent::one(nvars);
        for w in ws {
            let factor = Laurent::one(nvars).add(&Laurent::monomial(w.clone(), 1));
            out = out.mul(&factor)?;
        }
        Ok(out)
    }

    /// The degree-`t` part of the symmetric algebra on weights `ws`.
    pub fn symmetric_power(nvars: usize, ws: &[Vec<i64>], t: usize) -> Laurent {
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
                go(ws, i, left - 1, acc, out);
                for (a, x) in acc.iter_mut().zip(&ws[i]) {
                    *a -= x;
                }
            }
        }
        go(ws, 0, t, &mut vec![0; nvars], &mut out);
        out
    }
}

/// Offsets of the blocks of a Levi shape.
fn block_ranges(shape: &[usize]) -> Vec<std::ops::Range<usize>> {
    let mut start = 0;
    shape
        .iter()
        .map(|&r| {
            let range = start..start + r;
            start += r;
            range
        })
        .collect()
}

/// Weakly decreasing on every block.
pub fn is_dominant(shape: &[usize], w: &[i64]) -> bool {
    block_ranges(shape).into_iter().all(|r| w[r].windows(2).all(|p| p[0] >= p[1]))
}

/// Weights of `GL(r)` with highest weight `top`, from Gelfand–Tsetlin
/// patterns: the `i`-th entry is `|row_i| - |row_{i-1}|`.
fn gt_weights(top: &[i64]) -> Vec<Vec<i64>> {
    fn go(row: &[i64], suffix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let r = row.len();
        let total: i64 = row.iter().sum();
        if r == 1 {
            let mut w = vec![total];
            w.extend(suffix.iter().rev());
            out.push(w);
            return;
        }
        let mut next = vec![0i64; r - 1];
        fn rows(row: &[i64], i: usize, next: &mut Vec<i64>, f: &mut dyn FnMut(&[i64])) {
            if i == next.len() {
                f(next);
                return;
            }
            for v in row[i + 1]..=row[i] {
                next[i] = v;
                rows(row, i + 1, next, f);
            }
        }
        rows(row, 0, &mut next, &mut |below: &[i64]| {
            suffix.push(total - below.iter().sum::<i64>());
            go(below, suffix, out);
            suffix.pop();
        });
    }
    let mut out = Vec::new();
    if top.is_empty() {
        out.push(Vec::new());
    } else {
        go(top, &mut Vec::new(), &mut out);
    }
    out
}

/// The character of the irreducible module of a dominant weight for a
/// Levi shape.
pub fn weyl_character(shape: &[usize], w: &[i64]) -> Result<Laurent> {
    let total: usize = shape.iter().sum();
    if w.len() != total {
        return Err(Error::InvalidParameters(format!("weight of length {} for a shape of rank {}", w.len(), total)));
    }
    if !is_dominant(shape, w) {
        return Err(Error::NotDominant(format!("{:?}", w)));
    }
    let dim = weyl_dimension(shape, w)?;
    if dim > crate::budget::work_budget() as i64 {
        return Err(Error::Budget(dim as usize));
    }
    let mut out = Laurent::one(0);
    for r in block_ranges(shape) {
        let mut block = Laurent::zero(r.len());
        for g in gt_weights(&w[r]) {
            block.add_term(g, 1);
        }
        out = out.outer(&block);
    }
    Ok(out)
}

/// `Π_{i<j} (μ_i - μ_j + j - i) / (j - i)` over each block.
pub fn weyl_dimension(shape: &[usize], w: &[i64]) -> Result<i64> {
    if !is_dominant(shape, w) {
        return Err(Error::NotDominant(format!("{:?}", w)));
    }
    let mut num = num_bigint::BigInt::from(1);
    let mut den = num_bigint::BigInt::from(1);
    for r in block_ranges(shape) {
        let b = &w[r];
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                num *= b[i] - b[j] + (j - i) as i64;
                den *= (j - i) as i64;
            }
        }
    }
    i64::try_from(num / den).map_err(|_| Error::Budget(usize::MAX))
}

/// The dot-action algorithm for `GL(r)`: if `μ + ρ` has a repeated entry every
/// cohomology group vanishes (`None`); otherwise the unique sorting
/// permutation `w` gives cohomological degree `ℓ(w)` and dominant weight
/// `w(μ + ρ) - ρ`, with `ρ = (r-1, ..., 0)`.
pub fn bott(mu: &[i64]) -> Option<(usize, Vec<i64>)> {
    let r = mu.len();
    let shifted: Vec<i64> = mu.iter().enumerate().map(|(i, x)| x + (r - 1 - i) as i64).collect();
    let mut inversions = 0;
    for i in 0..r {
        for j in i + 1..r {
            if shifted[i] == shifted[j] {
                return None;
            }
            if shifted[i] < shifted[j] {
                inversions += 1;
            }
        }
    }
    let mut sorted = shifted;
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    Some((inversions, sorted.iter().enumerate().map(|(i, x)| x - (r - 1 - i) as i64).collect()))
}

/// [`bott`] applied block by block; the degree is the sum.
pub fn bott_levi(shape: &[usize], mu: &[i64]) -> Option<(usize, Vec<i64>)> {
    let mut degree = 0;
    let mut out = Vec::with_capacity(mu.len());
    for r in block_ranges(shape) {
        let (i, w) = bott(&mu[r])?;
        degree += i;
        out.extend(w);
    }
    Some((degree, out))
}

/// A virtual character of a Levi `GL(r_1) × ⋯ × GL(r_s)` in the basis of
/// irreducibles: dominant weight ↦ multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterElement {
    shape: Vec<usize>,
    terms: BTreeMap<Vec<i64>, i64>,
}

/// JSON form: a list of `(weight, multiplicity)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterJson {
    pub shape: Vec<usize>,
    pub constituents: Vec<(Vec<i64>, i64)>,
}

impl CharacterElement {
    pub fn zero(shape: &[usize]) -> Self {
        CharacterElement { shape: shape.to_vec(), terms: BTreeMap::new() }
    }

    pub fn irreducible(shape: &[usize], w: Vec<i64>) -> Result<Self> {
        if !is_dominant(shape, &w) || w.len() != shape.iter().sum::<usize>() {
            return Err(Error::NotDominant(format!("{:?}", w)));
        }
        let mut out = Self::zero(shape);
        out.add_term(w, 1);
        Ok(out)
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: Vec<i64>, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &CharacterElement) -> Result<CharacterElement> {
        if self.shape != other.shape {
            return Err(Error::InvalidParameters("characters of different Levi shapes".into()));
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), *c);
        }
        Ok(out)
    }

    /// Decomposes a Weyl-invariant table into irreducibles.
    pub fn from_laurent(shape: &[usize], ch: &Laurent) -> Result<CharacterElement> {
        if ch.nvars() != shape.iter().sum::<usize>() {
            return Err(Error::VarMismatch(shape.iter().sum(), ch.nvars()));
        }
        let mut rest = ch.clone();
        let mut out = Self::zero(shape);
        while let Some((top, &c)) = rest.terms.iter().next_back() {
            let top = top.clone();
            if !is_dominant(shape, &top) {
                return Err(Error::ModuleInvariant(format!(
                    "character is not Weyl invariant: extreme weight {:?} is not dominant",
                    top
                )));
            }
            rest = rest.add(&weyl_character(shape, &top)?.scale(-c));
            out.add_term(top, c);
        }
        Ok(out)
    }

    pub fn to_laurent(&self) -> Result<Laurent> {
        let mut out = Laurent::zero(self.shape.iter().sum());
        for (w, c) in &self.terms {
            out = out.add(&weyl_character(&self.shape, w)?.scale(*c));
        }
        Ok(out)
    }

    pub fn dim(&self) -> Result<i64> {
        let mut d = 0;
        for (w, c) in &self.terms {
            d += c * weyl_dimension(&self.shape, w)?;
        }
        Ok(d)
    }

    /// True iff every multiplicity is nonnegative.
    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    pub fn to_json(&self) -> CharacterJson {
        CharacterJson { shape: self.shape.clone(), constituents: self.terms.iter().map(|(w, c)| (w.clone(), *c)).collect() }
    }

    pub fn from_json(j: &CharacterJson) -> Result<Self> {
        let mut out = Self::zero(&j.shape);
        for (w, c) in &j.constituents {
            if !is_dominant(&j.shape, w) {
                return Err(Error::NotDominant(format!("{:?}", w)));
            }
            out.add_term(w.clone(), *c);
        }
        Ok(out)
    }
}

/// The decomposition of `A ⊗ B` by multiplying characters.
pub fn tensor_decompose(a: &CharacterElement, b: &CharacterElement) -> Result<CharacterElement> {
    if a.shape != b.shape {
        return Err(Error::InvalidParameters("characters of different Levi shapes".into()));
    }
    if a.shape.iter().any(|&r| r > 4) {
        return Err(Error::Unsupported("tensor decompositions are limited to blocks of rank ≤ 4".into()));
    }
    CharacterElement::from_laurent(&a.shape, &a.to_laurent()?.mul(&b.to_laurent()?)?)
}

/// Weights `ε_{m+j} - ε_i` of `g_{-1}` for `gl(m|n)`.
pub(crate) fn minus_one_weights(m: usize, n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..n {
            let mut w = vec![0; m + n];
            w[m + j] += 1;
            w[i] -= 1;
            out.push(w);
        }
    }
    out
}

/// The `g₀`-character of `K(λ) = Λ(g_{-1}) ⊗ L₀(λ)`, over the shape `(m, n)`.
pub fn kac_character(lambda: &GLWeight) -> Result<CharacterElement> {
    lambda.require_dominant()?;
    let (m, n) = (lambda.m(), lambda.n());
    let shape = [m, n];
    let ch = Laurent::exterior(m + n, &minus_one_weights(m, n))?.mul(&weyl_character(&shape, lambda.entries())?)?;
    CharacterElement::from_laurent(&shape, &ch)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bott_examples() {
        assert_eq!(bott(&[2, 0]), Some((0, vec![2, 0])));
        assert_eq!(weyl_dimension(&[2], &[2, 0]).unwrap(), 3);
        assert_eq!(bott(&[0, 1]), None);
        assert_eq!(bott(&[-1, 1]), Some((1, vec![0, 0])));
        assert_eq!(bott(&[0, 0, 3]), Some((2, vec![1, 1, 1])));
    }

    #[test]
    fn weyl_characters() {
        let ch = weyl_character(&[3], &[2, 1, 0]).unwrap();
        assert_eq!(ch.dim(), 8);
        assert_eq!(ch.coeff(&[1, 1, 1]), 2);
        let ch = weyl_character(&[2, 1], &[1, 0, 5]).unwrap();
        assert_eq!(ch.dim(), 2);
        assert_eq!(ch.coeff(&[0, 1, 5]), 1);
        assert_eq!(weyl_dimension(&[4], &[3, 2, 1, 0]).unwrap(), 64);
        assert_eq!(weyl_character(&[4], &[3, 2, 1, 0]).unwrap().dim(), 64);
    }

    #[test]
    fn pieri() {
        let v = CharacterElement::irreducible(&[2], vec![1, 0]).unwrap();
        let vv = tensor_decompose(&v, &v).unwrap();
        let expected = CharacterElement::irreducible(&[2], vec![2, 0])
            .unwrap()
            .add(&CharacterElement::irreducible(&[2], vec![1, 1]).unwrap())
            .unwrap();
        assert_eq!(vv, expected);
        let triv = CharacterElement::irreducible(&[3], vec![0, 0, 0]).unwrap();
        let a = CharacterElement::irreducible(&[3], vec![2, 1, -1]).unwrap();
        assert_eq!(tensor_decompose(&a, &triv).unwrap(), a);
    }

    #[test]
    fn exterior_dimension() {
        let ws = minus_one_weights(2, 2);
        let ch = Laurent::exterior(4, &ws).unwrap();
        assert_eq!(ch.dim(), 16);
        let dec = CharacterElement::from_laurent(&[2, 2], &ch).unwrap();
        assert_eq!(dec.dim().unwrap(), 16);
        assert!(dec.is_effective());
    }

    #[test]
    fn kac_characters() {
        let k = kac_character(&"(0|0)".parse().unwrap()).unwrap();
        let weights: Vec<_> = k.terms().keys().cloned().collect();
        assert_eq!(weights, vec![vec![-1, 1], vec![0, 0]]);
        let l: GLWeight = "(2,1|0,-1)".parse().unwrap();
        assert_eq!(kac_character(&l).unwrap().dim().unwrap(), 16 * 4);
    }

    #[test]
    fn json_round_trip() {
        let k = kac_character(&"(1,0|0)".parse().unwrap()).unwrap();
        assert_eq!(CharacterElement::from_json(&k.to_json()).unwrap(), k);
    }
}
