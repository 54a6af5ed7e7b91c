//! Finite-dimensional weight modules over superalgebras `z = t ⊕ z₁` with a
//! torus `t`, `[t, z₁] = 0` and `[z₁, z₁] ⊆ t`.
//!
//! A module is a list of weight blocks. Each block carries the matrices of the
//! odd basis vectors `b_1, ..., b_d`, written in a basis with the even vectors
//! first, and optionally a torus grading of that basis. For the detecting
//! subalgebra of `gl(m|n)` the odd basis is `x_1, ..., x_m, y_1, ..., y_m`,
//! and a grading assigns each basis vector an integer vector of length `m`
//! which `x_j` raises and `y_j` lowers by the `j`-th unit vector.

mod carlson;
mod ext;
mod families;
mod rank;

pub use carlson::{carlson_module, koszul_syzygy};
pub use ext::{coh_support, ext_one_vanishes, relative_ext, CohSupport};
pub use families::{random_module, random_pair, scramble, RandomFamily};
pub(crate) use rank::{binom2, MinorCache};
pub use rank::{is_projective, rank_variety, rank_variety_minors};

use crate::error::{Error, Result};
use crate::field::{parse_rat, rat, rat_to_string, Rational};
use crate::polyring::{Monomial, Poly};
use crate::Matrix;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// The odd part `z₁` with basis `b_1..b_d` and the brackets `[b_i, b_j]`
/// written in a basis `h_1..h_r` of the torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZAlgebra {
    torus_dim: usize,
    odd_dim: usize,
    brackets: Vec<Vec<Vec<Rational>>>,
}

impl ZAlgebra {
    pub fn new(torus_dim: usize, odd_dim: usize, brackets: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        if brackets.len() != odd_dim || brackets.iter().any(|r| r.len() != odd_dim || r.iter().any(|v| v.len() != torus_dim)) {
            return Err(Error::InvalidParameters("bracket table has the wrong shape".into()));
        }
        for i in 0..odd_dim {
            for j in 0..i {
                if brackets[i][j] != brackets[j][i] {
                    return Err(Error::InvalidParameters(format!("bracket ({}, {}) is not symmetric", i, j)));
                }
            }
        }
        Ok(ZAlgebra { torus_dim, odd_dim, brackets })
    }

    /// The detecting subalgebra of `gl(m|n)`: `[x_j, y_j] = h_j`, all other
    /// odd brackets zero.
    pub fn f(m: usize) -> Self {
        let d = 2 * m;
        let mut b = vec![vec![vec![rat(0); m]; d]; d];
        for j in 0..m {
            b[j][m + j][j] = rat(1);
            b[m + j][j][j] = rat(1);
        }
        ZAlgebra { torus_dim: m, odd_dim: d, brackets: b }
    }

    /// A purely odd abelian algebra of dimension `d`; its enveloping algebra is
    /// the exterior algebra `Λ(z₁)`.
    pub fn abelian(d: usize) -> Self {
        ZAlgebra { torus_dim: 0, odd_dim: d, brackets: vec![vec![Vec::new(); d]; d] }
    }

    pub fn torus_dim(&self) -> usize {
        self.torus_dim
    }

    pub fn odd_dim(&self) -> usize {
        self.odd_dim
    }

    pub fn bracket(&self, i: usize, j: usize) -> &[Rational] {
        &self.brackets[i][j]
    }

    /// `λ([b_i, b_j])`.
    pub fn pair(&self, lambda: &[Rational], i: usize, j: usize) -> Rational {
        self.brackets[i][j].iter().zip(lambda).fold(rat(0), |acc, (a, b)| acc + a * b)
    }

    /// `m` when the odd basis splits as `x_1..x_m, y_1..y_m` with `[b_i, b_j]`
    /// zero unless `{i, j} = {x_k, y_k}`. Gradings and the `X/Y` coordinates
    /// are only defined in that case.
    pub fn pairing_rank(&self) -> Option<usize> {
        if !self.odd_dim.is_multiple_of(2) {
            return None;
        }
        let m = self.odd_dim / 2;
        for i in 0..self.odd_dim {
            for j in 0..self.odd_dim {
                let paired = (i < m && j == i + m) || (j < m && i == j + m);
                if !paired && self.brackets[i][j].iter().any(|c| !c.is_zero()) {
                    return None;
                }
            }
        }
        Some(m)
    }

    /// Torus shift of the odd basis vector `b_i` on gradings.
    pub fn grade_shift(&self, i: usize) -> Vec<i64> {
        let m = self.odd_dim / 2;
        let mut v = vec![0; m];
        if i < m {
            v[i] = 1;
        } else {
            v[i - m] = -1;
        }
        v
    }

    fn json(&self) -> AlgebraJson {
        AlgebraJson {
            torus_dim: self.torus_dim,
            odd_dim: self.odd_dim,
            brackets: self.brackets.iter().map(|r| r.iter().map(|v| v.iter().map(rat_to_string).collect()).collect()).collect(),
        }
    }
}

/// `λ([x, x]) / 2` for `x = Σ c_i b_i`, as a polynomial in `c_1..c_d`.
/// For a pairing algebra the `c` variables are the coordinates `X_j, Y_j`.
pub fn q_form(a: &ZAlgebra, lambda: &[Rational]) -> Poly {
    let d = a.odd_dim;
    let mut terms = Vec::new();
    for i in 0..d {
        for j in i..d {
            let c = a.pair(lambda, i, j);
            if c.is_zero() {
                continue;
            }
            // Off-diagonal pairs occur twice in Σ c_i c_j [b_i, b_j].
            let c = if i == j { c / rat(2) } else { c };
            let e = Monomial::var(d, i).mul(&Monomial::var(d, j));
            terms.push((e, c));
        }
    }
    Poly::from_terms(d, terms)
}

/// One weight space of a module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub weight: Vec<Rational>,
    pub even_dim: usize,
    pub odd_dim: usize,
    /// `ρ(b_1), ..., ρ(b_d)` as `D × D` matrices, even basis vectors first.
    pub matrices: Vec<Matrix>,
    /// Torus grading of the basis, one vector per basis vector.
    pub grades: Option<Vec<Vec<i64>>>,
}

impl Block {
    pub fn dim(&self) -> usize {
        self.even_dim + self.odd_dim
    }

    pub fn is_odd(&self, k: usize) -> bool {
        k >= self.even_dim
    }

    /// The parity operator `diag(1, ..., 1, -1, ..., -1)`.
    pub fn parity_matrix(&self) -> Matrix {
        Matrix::from_fn(self.dim(), self.dim(), |i, j| {
            if i != j {
                rat(0)
            } else if self.is_odd(i) {
                rat(-1)
            } else {
                rat(1)
            }
        })
    }

    /// Reorders a basis with arbitrary parities so that even vectors come first.
    pub(crate) fn from_mixed(
        weight: Vec<Rational>,
        parities: &[bool],
        matrices: Vec<Matrix>,
        grades: Option<Vec<Vec<i64>>>,
    ) -> Block {
        let mut perm: Vec<usize> = (0..parities.len()).filter(|&k| !parities[k]).collect();
        let even_dim = perm.len();
        perm.extend((0..parities.len()).filter(|&k| parities[k]));
        Block {
            weight,
            even_dim,
            odd_dim: parities.len() - even_dim,
            matrices: matrices.iter().map(|a| a.permute(&perm)).collect(),
            grades: grades.map(|g| perm.iter().map(|&k| g[k].clone()).collect()),
        }
    }

    fn parities(&self) -> Vec<bool> {
        (0..self.dim()).map(|k| self.is_odd(k)).collect()
    }

    fn sum(&self, other: &Block) -> Block {
        let mut parities = self.parities();
        parities.extend(other.parities());
        let matrices = self.matrices.iter().zip(&other.matrices).map(|(a, b)| a.direct_sum(b)).collect();
        let grades = match (&self.grades, &other.grades) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        Block::from_mixed(self.weight.clone(), &parities, matrices, grades)
    }

    /// Conjugates the action by an invertible parity-preserving change of basis.
    /// The grading is kept, so `p` should also preserve it.
    pub fn conjugate(&self, p: &Matrix) -> Result<Block> {
        let inv = p.inverse().ok_or_else(|| Error::InvalidParameters("basis change is not invertible".into()))?;
        let mut out = self.clone();
        out.matrices = self.matrices.iter().map(|a| inv.mul(a).mul(p)).collect();
        Ok(out)
    }
}

/// A finite-dimensional weight module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightModule {
    algebra: ZAlgebra,
    blocks: Vec<Block>,
}

impl WeightModule {
    /// Validates the blocks and merges those of equal weight. Blocks of
    /// dimension zero are dropped.
    pub fn new(algebra: ZAlgebra, blocks: Vec<Block>) -> Result<Self> {
        let mut merged: Vec<Block> = Vec::new();
        for b in blocks {
            if b.dim() == 0 {
                continue;
            }
            match merged.iter_mut().find(|x| x.weight == b.weight) {
                Some(x) => *x = x.sum(&b),
                None => merged.push(b),
            }
        }
        merged.sort_by(|a, b| a.weight.cmp(&b.weight));
        let m = WeightModule { algebra, blocks: merged };
        m.validate()?;
        Ok(m)
    }

    /// Checks shapes, parity, the relation `ρ(b_i)ρ(b_j) + ρ(b_j)ρ(b_i) =
    /// λ([b_i, b_j])` and, if present, the grading.
    pub fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        let bad = |msg: String| Err(Error::ModuleInvariant(msg));
        for (bi, b) in self.blocks.iter().enumerate() {
            let n = b.dim();
            if b.weight.len() != a.torus_dim {
                return bad(format!("block {}: weight has length {}", bi, b.weight.len()));
            }
            if b.matrices.len() != a.odd_dim {
                return bad(format!("block {}: {} matrices for {} odd generators", bi, b.matrices.len(), a.odd_dim));
            }
            for (i, r) in b.matrices.iter().enumerate() {
                if r.rows() != n || r.cols() != n {
                    return bad(format!("block {}: matrix {} is not {}x{}", bi, i, n, n));
                }
                for u in 0..n {
                    for v in 0..n {
                        if b.is_odd(u) == b.is_odd(v) && !r.get(u, v).is_zero() {
                            return bad(format!("block {}: matrix {} does not reverse parity", bi, i));
                        }
                    }
                }
            }
            for i in 0..a.odd_dim {
                for j in i..a.odd_dim {
                    let ac = b.matrices[i].mul(&b.matrices[j]).add(&b.matrices[j].mul(&b.matrices[i]));
                    if ac != Matrix::scalar(n, a.pair(&b.weight, i, j)) {
                        return bad(format!("block {}: relation for (b{}, b{}) fails", bi, i + 1, j + 1));
                    }
                }
            }
            if let Some(g) = &b.grades {
                let Some(m) = a.pairing_rank() else {
                    return bad("gradings need an algebra of pairing type".into());
                };
                if g.len() != n || g.iter().any(|v| v.len() != m) {
                    return bad(format!("block {}: grading has the wrong shape", bi));
                }
                for (i, r) in b.matrices.iter().enumerate() {
                    let s = a.grade_shift(i);
                    for u in 0..n {
                        for v in 0..n {
                            if r.get(u, v).is_zero() {
                                continue;
                            }
                            let ok = (0..m).all(|k| g[u][k] - g[v][k] == s[k]);
                            if !ok {
                                return bad(format!("block {}: matrix {} does not shift the grading", bi, i));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &ZAlgebra {
        &self.algebra
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(Block::dim).sum()
    }

    pub fn is_graded(&self) -> bool {
        self.blocks.iter().all(|b| b.grades.is_some())
    }

    /// The zero module.
    pub fn zero(algebra: &ZAlgebra) -> Self {
        WeightModule { algebra: algebra.clone(), blocks: Vec::new() }
    }

    /// The trivial module `C`, graded when the algebra is of pairing type.
    pub fn trivial(algebra: &ZAlgebra) -> Self {
        let grades = algebra.pairing_rank().map(|m| vec![vec![0; m]]);
        let block = Block {
            weight: vec![rat(0); algebra.torus_dim],
            even_dim: 1,
            odd_dim: 0,
            matrices: vec![Matrix::zeros(1, 1); algebra.odd_dim],
            grades,
        };
        WeightModule { algebra: algebra.clone(), blocks: vec![block] }
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::InvalidParameters("modules over different algebras".into()));
        }
        Ok(())
    }

    /// `ρ(b) = ρ_M(b) ⊗ 1 + S_M ⊗ ρ_N(b)` with `S_M` the parity operator.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        let mut blocks = Vec::new();
        for a in &self.blocks {
            for b in &other.blocks {
                blocks.push(block_tensor(a, b));
            }
        }
        WeightModule::new(self.algebra.clone(), blocks)
    }

    /// `ρ*(b) = -ρ(b)ᵀ S` on the dual basis, weights and grades negated.
    pub fn dual(&self) -> Result<Self> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let s = b.parity_matrix();
                Block {
                    weight: b.weight.iter().map(|x| -x).collect(),
                    even_dim: b.even_dim,
                    odd_dim: b.odd_dim,
                    matrices: b.matrices.iter().map(|r| r.transpose().mul(&s).scale(&rat(-1))).collect(),
                    grades: b.grades.as_ref().map(|g| g.iter().map(|v| v.iter().map(|x| -x).collect()).collect()),
                }
            })
            .collect();
        WeightModule::new(self.algebra.clone(), blocks)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        WeightModule::new(self.algebra.clone(), self.blocks.iter().chain(&other.blocks).cloned().collect())
    }

    /// The parity shift `ΠM`.
    pub fn parity_shift(&self) -> Result<Self> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let parities: Vec<bool> = b.parities().iter().map(|p| !p).collect();
                Block::from_mixed(b.weight.clone(), &parities, b.matrices.clone(), b.grades.clone())
            })
            .collect();
        WeightModule::new(self.algebra.clone(), blocks)
    }

    /// The twisted dual `M^τ` for an algebra of pairing type: the dual space
    /// with `x_j` acting as `-ρ*(y_j)` and `y_j` as `ρ*(x_j)`. Weights and the
    /// original grades are kept.
    pub fn tau_twist(&self) -> Result<Self> {
        let m =
            self.algebra.pairing_rank().ok_or_else(|| Error::Unsupported("τ-twist needs an algebra of pairing type".into()))?;
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let s = b.parity_matrix();
                let star: Vec<Matrix> = b.matrices.iter().map(|r| r.transpose().mul(&s).scale(&rat(-1))).collect();
                let mut matrices = Vec::with_capacity(2 * m);
                for j in 0..m {
                    matrices.push(star[m + j].scale(&rat(-1)));
                }
                for j in 0..m {
                    matrices.push(star[j].clone());
                }
                Block { matrices, ..b.clone() }
            })
            .collect();
        WeightModule::new(self.algebra.clone(), blocks)
    }

    /// Applies a parity-preserving basis change to one block.
    pub fn conjugate_block(&self, index: usize, p: &Matrix) -> Result<Self> {
        let mut blocks = self.blocks.clone();
        let b = blocks.get(index).ok_or_else(|| Error::InvalidParameters(format!("no block {}", index)))?;
        blocks[index] = b.conjugate(p)?;
        WeightModule::new(self.algebra.clone(), blocks)
    }

    /// The block simple `S_λ` for a weight `λ` of an algebra of pairing type:
    /// the unique simple module of weight `λ` up to parity shift. It is a
    /// super tensor product of one factor per pair `(x_j, y_j)`, of dimension
    /// `1|1` when `λ([x_j, y_j]) ≠ 0` and trivial otherwise.
    pub fn block_simple(algebra: &ZAlgebra, weight: &[Rational]) -> Result<Self> {
        if weight.len() != algebra.torus_dim {
            return Err(Error::InvalidParameters("weight has the wrong length".into()));
        }
        let Some(m) = algebra.pairing_rank() else {
            if algebra.torus_dim == 0 {
                return Ok(Self::trivial(algebra));
            }
            return Err(Error::Unsupported("block simples need an algebra of pairing type".into()));
        };
        let mut block = Self::trivial(algebra).blocks.remove(0);
        for j in 0..m {
            let c = algebra.pair(weight, j, m + j);
            if c.is_zero() {
                continue;
            }
            // Basis (e, o): x_j sends o to e, y_j sends e to c·o.
            let mut matrices = vec![Matrix::zeros(2, 2); 2 * m];
            matrices[j].set(0, 1, rat(1));
            matrices[m + j].set(1, 0, c);
            let factor = Block {
                weight: vec![rat(0); algebra.torus_dim],
                even_dim: 1,
                odd_dim: 1,
                matrices,
                grades: Some(vec![algebra.grade_shift(j), vec![0; m]]),
            };
            block = block_tensor(&block, &factor);
        }
        block.weight = weight.to_vec();
        WeightModule::new(algebra.clone(), vec![block])
    }

    /// The Clifford regular representation of weight `λ`: basis the ordered
    /// products `b^S`, `S ⊆ {1..d}`, with left multiplication. It is the
    /// induced module `U(z) ⊗_{U(t)} C_λ` and hence projective.
    pub fn free(algebra: &ZAlgebra, weight: &[Rational]) -> Result<Self> {
        let d = algebra.odd_dim;
        if weight.len() != algebra.torus_dim {
            return Err(Error::InvalidParameters("weight has the wrong length".into()));
        }
        if d > 12 {
            return Err(Error::Unsupported("free module too large".into()));
        }
        let n = 1usize << d;
        let mut matrices = Vec::with_capacity(d);
        for i in 0..d {
            let mut r = Matrix::zeros(n, n);
            for s in 0..n {
                for (t, c) in clifford_left_mul(algebra, weight, i, s) {
                    let v = r.get(t, s) + &c;
                    r.set(t, s, v);
                }
            }
            matrices.push(r);
        }
        let parities: Vec<bool> = (0..n).map(|s: usize| s.count_ones() % 2 == 1).collect();
        let grades = algebra.pairing_rank().map(|m| {
            (0..n)
                .map(|s| {
                    (0..d).filter(|&i| (s >> i) & 1 == 1).fold(vec![0; m], |mut acc, i| {
                        for (a, b) in acc.iter_mut().zip(algebra.grade_shift(i)) {
                            *a += b;
                        }
                        acc
                    })
                })
                .collect()
        });
        let block = Block::from_mixed(weight.to_vec(), &parities, matrices, grades);
        WeightModule::new(algebra.clone(), vec![block])
    }

    /// The `1|1` line module on which only `b_i` acts, as `o ↦ e`. Over `f`
    /// with `b_i = x_j` its rank variety is `Z(X_j)`.
    pub fn line(algebra: &ZAlgebra, i: usize) -> Result<Self> {
        let d = algebra.odd_dim;
        if i >= d {
            return Err(Error::InvalidParameters(format!("no line module for generator {}", i)));
        }
        let mut matrices = vec![Matrix::zeros(2, 2); d];
        matrices[i].set(0, 1, rat(1));
        let grades = algebra.pairing_rank().map(|m| {
            let s = algebra.grade_shift(i);
            vec![s, vec![0; m]]
        });
        let block = Block { weight: vec![rat(0); algebra.torus_dim], even_dim: 1, odd_dim: 1, matrices, grades };
        WeightModule::new(algebra.clone(), vec![block])
    }

    /// The left regular module of the exterior algebra on the generators
    /// `gens` (pairwise bracket-free at weight zero), all other generators
    /// acting by zero. Over `f` its rank variety is `Z(c_i : i ∈ gens)`.
    pub fn exterior_regular(algebra: &ZAlgebra, gens: &[usize]) -> Result<Self> {
        let d = algebra.odd_dim;
        let k = gens.len();
        if gens.iter().any(|&i| i >= d) || (1..k).any(|a| gens[..a].contains(&gens[a])) {
            return Err(Error::InvalidParameters("generators must be distinct and in range".into()));
        }
        let n = 1usize << k;
        let mut matrices = vec![Matrix::zeros(n, n); d];
        for (pos, &i) in gens.iter().enumerate() {
            for s in 0..n {
                if (s >> pos) & 1 == 1 {
                    continue;
                }
                let below = (s & ((1 << pos) - 1)).count_ones();
                matrices[i].set(s | (1 << pos), s, if below % 2 == 0 { rat(1) } else { rat(-1) });
            }
        }
        let parities: Vec<bool> = (0..n).map(|s: usize| s.count_ones() % 2 == 1).collect();
        let grades = algebra.pairing_rank().map(|m| {
            (0..n)
                .map(|s| {
                    let mut g = vec![0; m];
                    for (pos, &i) in gens.iter().enumerate() {
                        if (s >> pos) & 1 == 1 {
                            for (a, b) in g.iter_mut().zip(algebra.grade_shift(i)) {
                                *a += b;
                            }
                        }
                    }
                    g
                })
                .collect()
        });
        let block = Block::from_mixed(vec![rat(0); algebra.torus_dim], &parities, matrices, grades);
        WeightModule::new(algebra.clone(), vec![block])
    }

    /// Views a module whose blocks all have weight zero as a module over
    /// another algebra with the same odd part. On weight zero every bracket
    /// acts by zero, so only the odd dimensions have to agree.
    pub fn to_principal_block(&self, target: &ZAlgebra) -> Result<Self> {
        if target.odd_dim != self.algebra.odd_dim {
            return Err(Error::InvalidParameters("odd dimensions differ".into()));
        }
        if self.blocks.iter().any(|b| b.weight.iter().any(|x| !x.is_zero())) {
            return Err(Error::InvalidParameters("module has a block of nonzero weight".into()));
        }
        let blocks = self.blocks.iter().map(|b| Block { weight: vec![rat(0); target.torus_dim], ..b.clone() }).collect();
        WeightModule::new(target.clone(), blocks)
    }

    pub fn to_json(&self) -> ModuleJson {
        ModuleJson {
            algebra: self.algebra.json(),
            blocks: self
                .blocks
                .iter()
                .map(|b| BlockJson {
                    weight: b.weight.iter().map(rat_to_string).collect(),
                    even_dim: b.even_dim,
                    odd_dim: b.odd_dim,
                    matrices: b
                        .matrices
                        .iter()
                        .map(|r| r.to_rows().iter().map(|row| row.iter().map(rat_to_string).collect()).collect())
                        .collect(),
                    grades: b.grades.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &ModuleJson) -> Result<Self> {
        let q = |s: &String| parse_rat(s).ok_or_else(|| Error::Json(format!("bad rational {:?}", s)));
        let brackets = j
            .algebra
            .brackets
            .iter()
            .map(|r| r.iter().map(|v| v.iter().map(q).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let algebra = ZAlgebra::new(j.algebra.torus_dim, j.algebra.odd_dim, brackets)?;
        let mut blocks = Vec::new();
        for b in &j.blocks {
            let n = b.even_dim + b.odd_dim;
            let mut matrices = Vec::new();
            for r in &b.matrices {
                let rows = r.iter().map(|row| row.iter().map(q).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
                if rows.len() != n || rows.iter().any(|x| x.len() != n) {
                    return Err(Error::Json(format!("matrix is not {}x{}", n, n)));
                }
                matrices.push(Matrix::from_rows(rows));
            }
            blocks.push(Block {
                weight: b.weight.iter().map(q).collect::<Result<_>>()?,
                even_dim: b.even_dim,
                odd_dim: b.odd_dim,
                matrices,
                grades: b.grades.clone(),
            });
        }
        WeightModule::new(algebra, blocks)
    }
}

/// `b_i · b^S` in the Clifford algebra of weight `λ`, as a list of
/// `(basis index, coefficient)`. Uses `b_i b_j = -b_j b_i + λ([b_i, b_j])`.
fn clifford_left_mul(a: &ZAlgebra, lambda: &[Rational], i: usize, s: usize) -> Vec<(usize, Rational)> {
    let Some(first) = (0..a.odd_dim).find(|&k| (s >> k) & 1 == 1) else {
        return vec![(1 << i, rat(1))];
    };
    if i < first {
        return vec![(s | (1 << i), rat(1))];
    }
    let rest = s & !(1 << first);
    if i == first {
        let c = a.pair(lambda, i, i) / rat(2);
        return if c.is_zero() { Vec::new() } else { vec![(rest, c)] };
    }
    // b_i b_f b^rest = -b_f (b_i b^rest) + λ([b_i, b_f]) b^rest
    let mut out = Vec::new();
    for (t, c) in clifford_left_mul(a, lambda, i, rest) {
        for (u, e) in clifford_left_mul(a, lambda, first, t) {
            out.push((u, -(c.clone() * e)));
        }
    }
    let c = a.pair(lambda, i, first);
    if !c.is_zero() {
        out.push((rest, c));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub torus_dim: usize,
    pub odd_dim: usize,
    pub brackets: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockJson {
    pub weight: Vec<String>,
    pub even_dim: usize,
    pub odd_dim: usize,
    pub matrices: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grades: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub algebra: AlgebraJson,
    pub blocks: Vec<BlockJson>,
}

/// Super tensor product of two blocks without validation.
fn block_tensor(a: &Block, b: &Block) -> Block {
    let s = a.parity_matrix();
    let ib = Matrix::identity(b.dim());
    let matrices = a.matrices.iter().zip(&b.matrices).map(|(ra, rb)| ra.kronecker(&ib).add(&s.kronecker(rb))).collect();
    let mut parities = Vec::with_capacity(a.dim() * b.dim());
    for u in 0..a.dim() {
        for v in 0..b.dim() {
            parities.push(a.is_odd(u) != b.is_odd(v));
        }
    }
    let grades = match (&a.grades, &b.grades) {
        (Some(ga), Some(gb)) => {
            Some(ga.iter().flat_map(|x| gb.iter().map(move |y| x.iter().zip(y).map(|(p, q)| p + q).collect())).collect())
        }
        _ => None,
    };
    let weight = a.weight.iter().zip(&b.weight).map(|(x, y)| x + y).collect();
    Block::from_mixed(weight, &parities, matrices, grades)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k0() -> WeightModule {
        // K(0) of gl(1|1) restricted to f: y acts nontrivially, x by zero.
        let a = ZAlgebra::f(1);
        WeightModule::line(&a, 1).unwrap()
    }

    #[test]
    fn algebra_shapes() {
        let f = ZAlgebra::f(2);
        assert_eq!(f.pairing_rank(), Some(2));
        assert_eq!(f.bracket(0, 2), &[rat(1), rat(0)]);
        assert_eq!(ZAlgebra::abelian(4).pairing_rank(), Some(2));
        assert!(ZAlgebra::new(1, 2, vec![vec![vec![rat(0)], vec![rat(1)]], vec![vec![rat(2)], vec![rat(0)]]]).is_err());
    }

    #[test]
    fn quadratic_forms() {
        let f = ZAlgebra::f(1);
        assert!(q_form(&f, &[rat(0)]).is_zero());
        assert_eq!(q_form(&f, &[rat(1)]).to_string(), "X1*Y1");
        let q = q_form(&ZAlgebra::f(2), &[rat(2), rat(-1)]);
        assert!(q.torus_weight().unwrap().is_zero());
    }

    #[test]
    fn trivial_is_tensor_unit() {
        let a = ZAlgebra::f(1);
        let c = WeightModule::trivial(&a);
        for m in [k0(), WeightModule::free(&a, &[rat(1)]).unwrap(), WeightModule::block_simple(&a, &[rat(3)]).unwrap()] {
            assert_eq!(c.tensor(&m).unwrap(), m);
            assert_eq!(m.tensor(&c).unwrap(), m);
        }
    }

    #[test]
    fn kac_square_is_one_block() {
        let k = k0();
        let t = k.tensor(&k).unwrap();
        assert_eq!(t.blocks().len(), 1);
        assert_eq!(t.dim(), 4);
        assert_eq!((t.blocks()[0].even_dim, t.blocks()[0].odd_dim), (2, 2));
    }

    #[test]
    fn dual_and_twist_shapes() {
        let a = ZAlgebra::f(2);
        let m = WeightModule::free(&a, &[rat(1), rat(-2)]).unwrap();
        let dd = m.dual().unwrap().dual().unwrap();
        assert_eq!(dd.blocks().len(), m.blocks().len());
        for (x, y) in dd.blocks().iter().zip(m.blocks()) {
            assert_eq!((x.even_dim, x.odd_dim, &x.weight), (y.even_dim, y.odd_dim, &y.weight));
        }
        let t = m.tau_twist().unwrap();
        assert_eq!(t.blocks()[0].weight, m.blocks()[0].weight);
    }

    #[test]
    fn free_module_relations() {
        for lambda in [[rat(0), rat(0)], [rat(1), rat(0)], [rat(2), rat(-3)]] {
            let m = WeightModule::free(&ZAlgebra::f(2), &lambda).unwrap();
            assert_eq!(m.dim(), 16);
            m.validate().unwrap();
        }
        let m = WeightModule::free(&ZAlgebra::abelian(3), &[]).unwrap();
        assert_eq!((m.blocks()[0].even_dim, m.blocks()[0].odd_dim), (4, 4));
    }

    #[test]
    fn simples_have_expected_dimension() {
        let a = ZAlgebra::f(2);
        assert_eq!(WeightModule::block_simple(&a, &[rat(1), rat(1)]).unwrap().dim(), 4);
        assert_eq!(WeightModule::block_simple(&a, &[rat(0), rat(5)]).unwrap().dim(), 2);
        assert_eq!(WeightModule::block_simple(&a, &[rat(0), rat(0)]).unwrap().dim(), 1);
    }

    #[test]
    fn invariant_violation_is_reported() {
        let a = ZAlgebra::f(1);
        let mut b = k0().blocks()[0].clone();
        b.weight = vec![rat(1)];
        assert!(matches!(WeightModule::new(a.clone(), vec![b.clone()]), Err(Error::ModuleInvariant(_))));
        b.weight = vec![rat(0)];
        b.grades = Some(vec![vec![0], vec![0]]);
        assert!(matches!(WeightModule::new(a, vec![b]), Err(Error::ModuleInvariant(_))));
    }

    #[test]
    fn json_round_trip() {
        let a = ZAlgebra::f(1);
        let m = WeightModule::free(&a, &[rat(1)]).unwrap().direct_sum(&k0()).unwrap();
        let s = serde_json::to_string(&m.to_json()).unwrap();
        let back = WeightModule::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, m);
    }
}
