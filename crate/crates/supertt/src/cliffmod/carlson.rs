//! Syzygies of the trivial module over the exterior algebra `Λ(z₁)` and
//! Carlson's modules `L_ζ`.
//!
//! The minimal resolution of `C` is the Koszul complex
//! `P_n = Λ(z₁) ⊗ Γ^n(z₁)` with `∂(a ⊗ b^{(α)}) = Σ_i a b_i ⊗ b^{(α - e_i)}`,
//! where `b^{(α)}` is the divided-power basis. A class
//! `ζ = Σ c_α X^α ∈ S^n(z₁*)` is the cocycle `1 ⊗ b^{(α)} ↦ c_α`, which
//! factors through `Ω^n = ∂(P_n)`; `L_ζ` is its kernel, `∂(ker ζ̂)`.

use super::{Block, WeightModule, ZAlgebra};
use crate::error::{Error, Result};
use crate::field::{rat, Rational};
use crate::polyring::{Monomial, Poly};
use crate::Matrix;
use num_traits::Zero;
use std::collections::HashMap;

struct Koszul {
    d: usize,
    /// `Γ^{n-1}` and `Γ^n` monomials with their positions.
    lower: Vec<Vec<u32>>,
    lower_pos: HashMap<Vec<u32>, usize>,
    upper: Vec<Vec<u32>>,
    n: usize,
}

impl Koszul {
    fn new(d: usize, n: usize) -> Koszul {
        let lower = exponent_vectors(d, n - 1);
        let lower_pos = lower.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Koszul { d, lower, lower_pos, upper: exponent_vectors(d, n), n }
    }

    fn lower_dim(&self) -> usize {
        (1 << self.d) * self.lower.len()
    }

    fn lower_index(&self, s: usize, beta: &[u32]) -> usize {
        s * self.lower.len() + self.lower_pos[beta]
    }

    /// `∂(b^S ⊗ b^{(α)})` as a sparse vector in `P_{n-1}`.
    fn boundary(&self, s: usize, alpha: &[u32]) -> Vec<(usize, Rational)> {
        let mut out = Vec::new();
        for i in 0..self.d {
            if alpha[i] == 0 || (s >> i) & 1 == 1 {
                continue;
            }
            // b^S b_i: move b_i left past the elements of S above i.
            let above = (s >> (i + 1)).count_ones();
            let sign = if above.is_multiple_of(2) { rat(1) } else { rat(-1) };
            let mut beta = alpha.to_vec();
            beta[i] -= 1;
            out.push((self.lower_index(s | (1 << i), &beta), sign));
        }
        out
    }

    /// The submodule `∂(K)` of `P_{n-1}` for a spanning set of a submodule
    /// `K ⊆ P_n` given as sparse vectors over `(S, α)`.
    fn image_module(&self, spanning: &[Vec<((usize, usize), Rational)>]) -> Result<WeightModule> {
        let rows = self.lower_dim();
        let mut cols = Vec::new();
        for v in spanning {
            let mut img = vec![rat(0); rows];
            for ((s, a), c) in v {
                for (r, e) in self.boundary(*s, &self.upper[*a]) {
                    img[r] += c.clone() * e;
                }
            }
            if img.iter().any(|x| !x.is_zero()) {
                cols.push(img);
            }
        }
        let all = Matrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone());
        let basis = all.column_basis();
        let k = basis.cols();
        // Rows on which the basis is invertible, for reading off coordinates.
        let (_, pivot_rows) = basis.transpose().rref();
        let square = basis.submatrix(&pivot_rows, &(0..k).collect::<Vec<_>>());
        let inv = square.inverse().ok_or_else(|| Error::ModuleInvariant("syzygy basis is singular".into()))?;

        let m = self.d / 2;
        let mut matrices = Vec::with_capacity(self.d);
        for j in 0..self.d {
            let mut rho = Matrix::zeros(k, k);
            for c in 0..k {
                let mut img = vec![rat(0); rows];
                for r in 0..rows {
                    let x = basis.get(r, c);
                    if x.is_zero() {
                        continue;
                    }
                    let (s, beta) = (r / self.lower.len(), r % self.lower.len());
                    if (s >> j) & 1 == 1 {
                        continue;
                    }
                    let below = (s & ((1 << j) - 1)).count_ones();
                    let sign = if below % 2 == 0 { rat(1) } else { rat(-1) };
                    img[(s | (1 << j)) * self.lower.len() + beta] += sign * x;
                }
                let sub: Vec<Rational> = pivot_rows.iter().map(|&r| img[r].clone()).collect();
                let coords = inv.apply(&sub);
                if basis.apply(&coords) != img {
                    return Err(Error::ModuleInvariant("syzygy is not a submodule".into()));
                }
                for (r, x) in coords.into_iter().enumerate() {
                    rho.set(r, c, x);
                }
            }
            matrices.push(rho);
        }
        // Each basis vector is homogeneous; read parity and grade off its support.
        let mut parities = Vec::with_capacity(k);
        let mut grades = Vec::with_capacity(k);
        for c in 0..k {
            let r = (0..rows).find(|&r| !basis.get(r, c).is_zero()).expect("nonzero basis vector");
            let (s, beta) = (r / self.lower.len(), r % self.lower.len());
            parities.push((s.count_ones() as usize + self.n - 1) % 2 == 1);
            let mut g = vec![0i64; m];
            for i in 0..self.d {
                let e = ((s >> i) & 1) as i64 + self.lower[beta][i] as i64;
                if i < m {
                    g[i] += e;
                } else {
                    g[i - m] -= e;
                }
            }
            grades.push(g);
        }
        let algebra = ZAlgebra::abelian(self.d);
        let block = Block::from_mixed(Vec::new(), &parities, matrices, Some(grades));
        WeightModule::new(algebra, vec![block])
    }
}

fn exponent_vectors(d: usize, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; d];
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
    }
    go(0, n as u32, &mut cur, &mut out);
    out
}

/// `Ω^n(C)` over `Λ(z₁)` with `dim z₁ = 2m`, graded, for `n ≥ 1`.
pub fn koszul_syzygy(m: usize, n: usize) -> Result<WeightModule> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameters("syzygies need m ≥ 1 and n ≥ 1".into()));
    }
    let k = Koszul::new(2 * m, n);
    let spanning: Vec<_> = (0..1usize << k.d).flat_map(|s| (0..k.upper.len()).map(move |a| vec![((s, a), rat(1))])).collect();
    k.image_module(&spanning)
}

/// Carlson's module `L_ζ` over `Λ(z₁)` for a nonzero form `ζ` in `X_j, Y_j`
/// that is homogeneous in degree and torus weight. Its rank variety is `Z(ζ)`.
pub fn carlson_module(zeta: &Poly) -> Result<WeightModule> {
    if !zeta.nvars().is_multiple_of(2) || zeta.nvars() == 0 {
        return Err(Error::InvalidParameters("ζ must live in the X/Y coordinate ring".into()));
    }
    if zeta.is_zero() || !zeta.is_homogeneous() || zeta.is_constant() {
        return Err(Error::NotHomogeneous(format!("ζ = {} is not a homogeneous form of positive degree", zeta)));
    }
    if zeta.torus_weight().is_none() {
        return Err(Error::NotHomogeneous(format!("ζ = {} is not torus-homogeneous", zeta)));
    }
    let d = zeta.nvars();
    let n = zeta.total_degree().unwrap_or(0) as usize;
    let k = Koszul::new(d, n);
    let coeff = |a: usize| zeta.coeff(&Monomial::from_exps(k.upper[a].clone()));
    let pivot = (0..k.upper.len()).find(|&a| !coeff(a).is_zero()).expect("nonzero ζ");
    let cp = coeff(pivot);
    let mut spanning = Vec::new();
    for s in 1..1usize << d {
        for a in 0..k.upper.len() {
            spanning.push(vec![((s, a), rat(1))]);
        }
    }
    for a in 0..k.upper.len() {
        if a == pivot {
            continue;
        }
        let c = coeff(a);
        if c.is_zero() {
            spanning.push(vec![((0, a), rat(1))]);
        } else {
            spanning.push(vec![((0, a), rat(1)), ((0, pivot), -(c / cp.clone()))]);
        }
    }
    k.image_module(&spanning)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliffmod::rank_variety;
    use crate::polyring::parse_poly;
    use crate::variety::Variety;

    #[test]
    fn syzygy_dimensions() {
        assert_eq!(koszul_syzygy(1, 1).unwrap().dim(), 3);
        assert_eq!(koszul_syzygy(1, 2).unwrap().dim(), 5);
        assert_eq!(koszul_syzygy(2, 1).unwrap().dim(), 15);
        assert_eq!(koszul_syzygy(2, 2).unwrap().dim(), 49);
    }

    #[test]
    fn carlson_dimensions_and_supports() {
        let x1 = parse_poly("X1", 1).unwrap();
        let l = carlson_module(&x1).unwrap();
        assert_eq!(l.dim(), 2);
        assert!(rank_variety(&l).unwrap().equal(&Variety::zero_set(1, vec![x1]).unwrap()).unwrap());
        let z = parse_poly("X1*Y1 + 2*X2*Y2", 2).unwrap();
        let l = carlson_module(&z).unwrap();
        assert_eq!(l.dim(), 48);
        assert!(rank_variety(&l).unwrap().equal(&Variety::zero_set(2, vec![z]).unwrap()).unwrap());
        assert_eq!(carlson_module(&parse_poly("X1", 2).unwrap()).unwrap().dim(), 14);
    }

    #[test]
    fn rejects_inhomogeneous() {
        assert!(carlson_module(&parse_poly("X1 + X1*Y1", 1).unwrap()).is_err());
        assert!(carlson_module(&parse_poly("X1 + Y1", 1).unwrap()).is_err());
        assert!(carlson_module(&parse_poly("3", 1).unwrap()).is_err());
    }
}
