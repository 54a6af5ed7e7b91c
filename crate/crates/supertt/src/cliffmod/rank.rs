//! Rank varieties: the locus of `x = Σ c_i b_i` over which a module is not
//! projective for the one-generator subalgebra `⟨x⟩`.
//!
//! On a block of weight `λ` and dimension `D`, `ρ(x)² = q_λ(x)`. Off `Z(q_λ)`
//! the block is free over `⟨x⟩`; on it, freeness means `rank ρ(x) = D/2`.
//! Writing `ρ(x) = [[0, B], [A, 0]]` in the even-first basis, the rank is
//! `rank A + rank B`.

use super::{q_form, Block, WeightModule, ZAlgebra};
use crate::error::{Error, Result};
use crate::field::{rat, Rational};
use crate::linalg::{diagonal_form, UniPoly};
use crate::polyring::{Monomial, Poly};
use crate::variety::{BasicVariety, Variety};
use crate::Matrix;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// The terms of one bihomogeneous part.
type Terms = Vec<(Monomial, Rational)>;

fn pairing(m: &WeightModule) -> Result<usize> {
    m.algebra().pairing_rank().ok_or_else(|| Error::Unsupported("rank varieties need an algebra of pairing type".into()))
}

/// The rank variety of `M` as a subvariety of `z₁` with coordinates
/// `X_j, Y_j`. Graded modules with `m ≤ 2` use an exact stratification by
/// torus orbits; everything else goes through determinantal ideals.
pub fn rank_variety(module: &WeightModule) -> Result<Variety> {
    let m = pairing(module)?;
    if m > 2 || !module.is_graded() {
        return rank_variety_minors(module);
    }
    let mut comps = Vec::new();
    for b in module.blocks() {
        comps.extend(stratified_block(module.algebra(), b, m)?);
    }
    Variety::from_components(m, comps)
}

/// `Z(q_λ) ∩ Z(I_{a+1}(A)) ∩ Z(I_{k-a}(B))` over `a < k = D/2`, per block.
pub fn rank_variety_minors(module: &WeightModule) -> Result<Variety> {
    let m = pairing(module)?;
    let graded = module.is_graded();
    let mut out = Variety::empty(m);
    for b in module.blocks() {
        let q = q_form(module.algebra(), &b.weight);
        let d = b.dim();
        if d % 2 == 1 {
            out = out.union(&Variety::zero_set(m, vec![q])?)?;
            continue;
        }
        let k = d / 2;
        let x = symbolic_action(b, 2 * m);
        let evens: Vec<usize> = (0..b.even_dim).collect();
        let odds: Vec<usize> = (b.even_dim..d).collect();
        let a_mat = sub(&x, &odds, &evens);
        let b_mat = sub(&x, &evens, &odds);
        let cost: usize = (0..k).map(|a| binom2(b.odd_dim, b.even_dim, a + 1) + binom2(b.even_dim, b.odd_dim, k - a)).sum();
        if cost > crate::budget::work_budget() {
            return Err(Error::Budget(cost));
        }
        let mut minors_a = MinorCache::new(&a_mat);
        let mut minors_b = MinorCache::new(&b_mat);
        for a in 0..k {
            let mut gens = vec![q.clone()];
            gens.extend(minors_a.all(a + 1));
            gens.extend(minors_b.all(k - a));
            let gens = bihomogeneous_parts(gens, graded)?;
            out = out.union(&Variety::zero_set(m, gens)?)?;
        }
    }
    Ok(out)
}

/// True iff the rank variety is empty in projective space. The answer is
/// checked against `Ext¹(M, S_λ) = 0` for the simple of every block weight;
/// a disagreement is an error.
pub fn is_projective(module: &WeightModule) -> Result<bool> {
    let by_rank = rank_variety(module)?.is_proj_empty()?;
    let by_ext = super::ext_one_vanishes(module)?;
    if by_rank != by_ext {
        return Err(Error::OracleDisagreement(format!("rank variety says projective = {}, Ext¹ says {}", by_rank, by_ext)));
    }
    Ok(by_rank)
}

/// `ρ(x)` with `x = Σ c_i b_i` as a matrix of linear forms in `nvars` variables.
fn symbolic_action(b: &Block, nvars: usize) -> Vec<Vec<Poly>> {
    let d = b.dim();
    (0..d)
        .map(|u| {
            (0..d)
                .map(|v| {
                    let terms = b
                        .matrices
                        .iter()
                        .enumerate()
                        .filter(|(_, r)| !r.get(u, v).is_zero())
                        .map(|(i, r)| (Monomial::var(nvars, i), r.get(u, v).clone()))
                        .collect();
                    Poly::from_terms(nvars, terms)
                })
                .collect()
        })
        .collect()
}

fn sub(x: &[Vec<Poly>], rows: &[usize], cols: &[usize]) -> Vec<Vec<Poly>> {
    rows.iter().map(|&r| cols.iter().map(|&c| x[r][c].clone()).collect()).collect()
}

/// All `s × s` minors of a polynomial matrix, by Laplace expansion along the
/// first chosen row with memoization on `(rows, cols)` subsets.
pub(crate) struct MinorCache<'a> {
    mat: &'a [Vec<Poly>],
    memo: HashMap<(u64, u64), Poly>,
}

impl<'a> MinorCache<'a> {
    pub(crate) fn new(mat: &'a [Vec<Poly>]) -> Self {
        MinorCache { mat, memo: HashMap::new() }
    }

    fn nvars(&self) -> usize {
        self.mat.iter().flatten().next().map_or(0, |p| p.nvars())
    }

    fn minor(&mut self, rows: u64, cols: u64) -> Poly {
        if rows == 0 {
            return Poly::one(self.nvars());
        }
        if let Some(p) = self.memo.get(&(rows, cols)) {
            return p.clone();
        }
        let r = rows.trailing_zeros() as usize;
        let rest = rows & !(1 << r);
        let mut acc = Poly::zero(self.nvars());
        let mut sign = true;
        for c in 0..64 {
            if (cols >> c) & 1 == 0 {
                continue;
            }
            let e = self.mat[r][c].clone();
            if !e.is_zero() {
                let term = &e * &self.minor(rest, cols & !(1 << c));
                acc = if sign { &acc + &term } else { &acc - &term };
            }
            sign = !sign;
        }
        self.memo.insert((rows, cols), acc.clone());
        acc
    }

    /// Distinct nonzero monic `s × s` minors.
    pub(crate) fn all(&mut self, s: usize) -> Vec<Poly> {
        let nr = self.mat.len();
        let nc = self.mat.first().map_or(0, |r| r.len());
        if s > nr || s > nc {
            return Vec::new();
        }
        let mut out = BTreeSet::new();
        for rows in subsets(nr, s) {
            for cols in subsets(nc, s) {
                let p = self.minor(rows, cols);
                if !p.is_zero() {
                    out.insert(p.monic());
                }
            }
        }
        out.into_iter().collect()
    }
}

/// Number of `s × s` minors of an `r × c` matrix, saturating.
pub(crate) fn binom2(r: usize, c: usize, s: usize) -> usize {
    binom(r, s).saturating_mul(binom(c, s))
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn subsets(n: usize, k: usize) -> Vec<u64> {
    assert!(n <= 64, "matrix too large for minor enumeration");
    let mut out = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for i in start..=n - k {
            go(i + 1, n, k - 1, cur | (1 << i), out);
        }
    }
    go(0, n, k, 0, &mut out);
    out
}

/// For a graded module the determinantal ideals are torus-stable, so every
/// torus-weight component of a generator lies in the ideal.
fn bihomogeneous_parts(gens: Vec<Poly>, graded: bool) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        if g.is_bihomogeneous() {
            out.push(g);
            continue;
        }
        if !graded {
            return Err(Error::NotHomogeneous(format!("{} (supply a torus grading for this module)", g)));
        }
        let m = g.nvars() / 2;
        let mut parts: BTreeMap<(u32, Vec<i64>), Terms> = BTreeMap::new();
        for (mono, c) in g.terms() {
            let w: Vec<i64> = (0..m).map(|j| mono.exps()[j] as i64 - mono.exps()[m + j] as i64).collect();
            parts.entry((mono.degree(), w)).or_default().push((mono.clone(), c.clone()));
        }
        out.extend(parts.into_values().map(|t| Poly::from_terms(g.nvars(), t)));
    }
    Ok(out)
}

/// Evaluation of `ρ(x)` at a rational point.
fn action_at(b: &Block, point: &[Rational]) -> Matrix {
    let d = b.dim();
    b.matrices.iter().zip(point).filter(|(_, c)| !c.is_zero()).fold(Matrix::zeros(d, d), |acc, (r, c)| acc.add(&r.scale(c)))
}

fn deficient(b: &Block, point: &[Rational]) -> bool {
    2 * action_at(b, point).rank() < b.dim()
}

/// One block for a graded module with `m ≤ 2`.
///
/// The group `T × C*` acts on `z₁` and, through the grading, on the block by
/// conjugation, so the rank of `ρ(x)` is constant on orbits. Points split into
/// strata by which of `X_j, Y_j` vanish; a stratum with at most one pair of
/// nonzero `X_j, Y_j` is a single orbit, represented by a point with entries
/// one. With both pairs nonzero (`m = 2`) the orbits are the fibres of
/// `Z_2/Z_1 = r`, represented by `(X, Y) = (1, 1; 1, r)`.
fn stratified_block(alg: &ZAlgebra, b: &Block, m: usize) -> Result<Vec<BasicVariety>> {
    let lam: Vec<Rational> = (0..m).map(|j| alg.pair(&b.weight, j, m + j)).collect();
    let mut out = Vec::new();
    for pattern in 0..4usize.pow(m as u32) {
        let states: Vec<usize> = (0..m).map(|j| (pattern >> (2 * j)) & 3).collect();
        let xs: BTreeSet<usize> = (0..m).filter(|&j| states[j] & 1 == 0).collect();
        let ys: BTreeSet<usize> = (0..m).filter(|&j| states[j] & 2 == 0).collect();
        let full: Vec<usize> = (0..m).filter(|&j| states[j] == 3).collect();
        let mut point = vec![rat(0); 2 * m];
        for j in 0..m {
            if states[j] & 1 == 1 {
                point[j] = rat(1);
            }
            if states[j] & 2 == 2 {
                point[m + j] = rat(1);
            }
        }
        if full.len() <= 1 {
            let q: Rational = full.iter().map(|&j| lam[j].clone()).sum();
            if q.is_zero() && deficient(b, &point) {
                out.push(BasicVariety::new(m, xs, ys, Vec::new())?);
            }
            continue;
        }
        out.extend(two_pair_stratum(b, &lam)?);
    }
    Ok(out)
}

fn two_pair_stratum(b: &Block, lam: &[Rational]) -> Result<Vec<BasicVariety>> {
    let m = 2;
    let z = |j: usize| Poly::zvar(m, j);
    let none = BTreeSet::new;
    let at = |r: Rational| vec![rat(1), rat(1), rat(1), r];
    if !(lam[0].is_zero() && lam[1].is_zero()) {
        // x² = λ1 + λ2 r on the representatives.
        if lam[1].is_zero() {
            return Ok(Vec::new());
        }
        let r0 = -lam[0].clone() / lam[1].clone();
        if r0.is_zero() || !deficient(b, &at(r0)) {
            return Ok(Vec::new());
        }
        let g = &z(0).scale(&lam[0]) + &z(1).scale(&lam[1]);
        return Ok(vec![BasicVariety::new(m, none(), none(), vec![g])?]);
    }
    // ρ(x)² = 0 on the whole stratum: the rank drops exactly where a
    // diagonal entry of A(r) or B(r) vanishes.
    let d = b.dim();
    let entry = |u: usize, v: usize| {
        let mut c0 = rat(0);
        for i in 0..3 {
            c0 += b.matrices[i].get(u, v);
        }
        UniPoly::new(vec![c0, b.matrices[3].get(u, v).clone()])
    };
    let evens: Vec<usize> = (0..b.even_dim).collect();
    let odds: Vec<usize> = (b.even_dim..d).collect();
    let a_mat: Vec<Vec<UniPoly<Rational>>> = odds.iter().map(|&u| evens.iter().map(|&v| entry(u, v)).collect()).collect();
    let b_mat: Vec<Vec<UniPoly<Rational>>> = evens.iter().map(|&u| odds.iter().map(|&v| entry(u, v)).collect()).collect();
    let da = diagonal_form(&a_mat);
    let db = diagonal_form(&b_mat);
    if 2 * (da.len() + db.len()) < d {
        return Ok(vec![BasicVariety::whole(m)]);
    }
    let prod = da.iter().chain(&db).fold(UniPoly::constant(rat(1)), |acc, p| &acc * p);
    let mut rest = prod.strip_zero_root().squarefree();
    let mut out = Vec::new();
    for r0 in rest.rational_roots() {
        if r0.is_zero() {
            continue;
        }
        let g = &z(0).scale(&r0) - &z(1);
        out.push(BasicVariety::new(m, none(), none(), vec![g])?);
        rest = rest.div_rem(&UniPoly::linear(-r0, rat(1))).0;
    }
    if rest.degree().unwrap_or(0) >= 1 {
        // Homogenize c(r) at r = Z2/Z1.
        let deg = rest.degree().unwrap_or(0);
        let mut g = Poly::zero(2 * m);
        for (k, c) in rest.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            g = &g + &(&z(1).pow(k as u32) * &z(0).pow((deg - k) as u32)).scale(c);
        }
        out.push(BasicVariety::new(m, none(), none(), vec![g])?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    fn f1() -> ZAlgebra {
        ZAlgebra::f(1)
    }

    fn v(m: usize, src: &[&str]) -> Variety {
        Variety::zero_set(m, src.iter().map(|s| parse_poly(s, m).unwrap()).collect()).unwrap()
    }

    fn both(module: &WeightModule) -> Variety {
        let a = rank_variety(module).unwrap();
        let b = rank_variety_minors(module).unwrap();
        assert!(a.equal(&b).unwrap(), "stratified {} vs minors {}", a, b);
        a
    }

    #[test]
    fn gl11_examples() {
        let c = WeightModule::trivial(&f1());
        assert!(both(&c).equal(&Variety::whole(1)).unwrap());
        let k0 = WeightModule::line(&f1(), 1).unwrap();
        assert!(both(&k0).equal(&v(1, &["Y1"])).unwrap());
        let free = WeightModule::free(&f1(), &[rat(0)]).unwrap();
        assert!(both(&free).is_proj_empty().unwrap());
        let typical = WeightModule::block_simple(&f1(), &[rat(2)]).unwrap();
        assert!(both(&typical).is_proj_empty().unwrap());
    }

    #[test]
    fn lines_and_spinors_at_m2() {
        let a = ZAlgebra::f(2);
        assert!(both(&WeightModule::line(&a, 0).unwrap()).equal(&v(2, &["X1"])).unwrap());
        assert!(both(&WeightModule::line(&a, 3).unwrap()).equal(&v(2, &["Y2"])).unwrap());
        let s = WeightModule::block_simple(&a, &[rat(0), rat(3)]).unwrap();
        assert!(both(&s).equal(&v(2, &["X2", "Y2"])).unwrap());
        let s = WeightModule::block_simple(&a, &[rat(1), rat(-1)]).unwrap();
        assert!(both(&s).is_proj_empty().unwrap());
    }

    #[test]
    fn non_coordinate_component() {
        let m = crate::cliffmod::carlson_module(&parse_poly("X1*Y1 - X2*Y2", 2).unwrap()).unwrap();
        assert_eq!(m.algebra(), &ZAlgebra::abelian(4));
        assert!(rank_variety(&m).unwrap().equal(&v(2, &["X1*Y1 - X2*Y2"])).unwrap());
        assert!(matches!(rank_variety_minors(&m), Err(Error::Budget(_))));
    }

    #[test]
    fn exterior_modules() {
        let a = ZAlgebra::f(2);
        let e = WeightModule::exterior_regular(&a, &[0, 3]).unwrap();
        assert!(both(&e).equal(&v(2, &["X1", "Y2"])).unwrap());
        let e = WeightModule::exterior_regular(&a, &[1, 2, 3]).unwrap();
        assert!(both(&e).equal(&v(2, &["X2", "Y1", "Y2"])).unwrap());
    }

    #[test]
    fn projectivity_agrees_with_ext() {
        let a = ZAlgebra::f(2);
        assert!(is_projective(&WeightModule::free(&a, &[rat(0), rat(0)]).unwrap()).unwrap());
        assert!(!is_projective(&WeightModule::trivial(&a)).unwrap());
        assert!(!is_projective(&WeightModule::line(&a, 2).unwrap()).unwrap());
    }

    #[test]
    fn subsets_enumerate() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![0]);
    }
}
