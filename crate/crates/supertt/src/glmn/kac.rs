//! Kac modules `K(λ) = Λ(g_{-1}) ⊗ L₀(λ)` for `m, n ≤ 2`, their simple
//! quotients, and restriction to the detecting subalgebra.
//!
//! `g_{-1}` is spanned by the `Y_t = e_{m+j, i}` (`t = i n + j`), which
//! anticommute, so a PBW basis vector is an increasing product
//! `Y_{t_1} ⋯ Y_{t_k} ⊗ v` indexed by a bit mask and a basis vector of
//! `L₀(λ)`. `g_{+1}` kills `1 ⊗ L₀(λ)` and acts on the rest through
//! `X Y W = [X, Y] W - Y X W`.

use super::{atypicality, FCoordinates, GLWeight};
use crate::cliffmod::{Block, WeightModule, ZAlgebra};
use crate::error::{Error, Result};
use crate::field::{rat, Rational};
use crate::Matrix;
use num_traits::Zero;
use std::collections::BTreeMap;

/// A finite-dimensional `gl(m|n)`-module given by the matrices of all matrix
/// units in a homogeneous weight basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlModule {
    m: usize,
    n: usize,
    parity: Vec<bool>,
    weights: Vec<Vec<i64>>,
    /// `ρ(e_{ab})` at index `a (m + n) + b`.
    action: Vec<Matrix>,
}

fn is_odd_index(m: usize, a: usize) -> bool {
    a >= m
}

/// The supercommutator `[e_{ab}, e_{cd}]` as a list of `(unit, coefficient)`.
fn bracket(m: usize, (a, b): (usize, usize), (c, d): (usize, usize)) -> Vec<((usize, usize), i64)> {
    let odd1 = is_odd_index(m, a) != is_odd_index(m, b);
    let odd2 = is_odd_index(m, c) != is_odd_index(m, d);
    let sign = if odd1 && odd2 { -1 } else { 1 };
    let mut out = Vec::new();
    if b == c {
        out.push(((a, d), 1));
    }
    if d == a {
        out.push(((c, b), -sign));
    }
    out
}

impl GlModule {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self) -> &[bool] {
        &self.parity
    }

    /// The `gl(m|n)` torus weight of each basis vector.
    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    /// `ρ(e_{ab})`.
    pub fn action(&self, a: usize, b: usize) -> &Matrix {
        &self.action[a * (self.m + self.n) + b]
    }

    fn units(&self) -> Vec<(usize, usize)> {
        let k = self.m + self.n;
        (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).collect()
    }

    fn unit_is_odd(&self, (a, b): (usize, usize)) -> bool {
        is_odd_index(self.m, a) != is_odd_index(self.m, b)
    }

    /// Checks that each `ρ(e_{ab})` has the right parity and weight and that
    /// `ρ` preserves all supercommutators.
    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        let units = self.units();
        for &(a, b) in &units {
            let r = self.action(a, b);
            for u in 0..d {
                for v in 0..d {
                    if r.get(u, v).is_zero() {
                        continue;
                    }
                    let mut expected = self.weights[v].clone();
                    expected[a] += 1;
                    expected[b] -= 1;
                    if (self.parity[u] != self.parity[v]) != self.unit_is_odd((a, b)) || self.weights[u] != expected {
                        return Err(Error::ModuleInvariant(format!("e_{{{}{}}} is not homogeneous", a + 1, b + 1)));
                    }
                }
            }
        }
        for &p in &units {
            for &q in &units {
                let (rp, rq) = (self.action(p.0, p.1), self.action(q.0, q.1));
                let sign = if self.unit_is_odd(p) && self.unit_is_odd(q) { rat(-1) } else { rat(1) };
                let lhs = rp.mul(rq).sub(&rq.mul(rp).scale(&sign));
                let mut rhs = Matrix::zeros(d, d);
                for (u, c) in bracket(self.m, p, q) {
                    rhs = rhs.add(&self.action(u.0, u.1).scale(&rat(c)));
                }
                if lhs != rhs {
                    return Err(Error::ModuleInvariant(format!(
                        "bracket of e_{{{}{}}} and e_{{{}{}}} is not preserved",
                        p.0 + 1,
                        p.1 + 1,
                        q.0 + 1,
                        q.1 + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// `M ⊗ N` with `x(v ⊗ w) = xv ⊗ w + (-1)^{|x||v|} v ⊗ xw`.
    pub fn tensor(&self, other: &GlModule) -> Result<GlModule> {
        if (self.m, self.n) != (other.m, other.n) {
            return Err(Error::InvalidParameters("modules for different gl(m|n)".into()));
        }
        let sign = Matrix::from_fn(self.dim(), self.dim(), |i, j| {
            if i != j {
                rat(0)
            } else if self.parity[i] {
                rat(-1)
            } else {
                rat(1)
            }
        });
        let id_a = Matrix::identity(self.dim());
        let id_b = Matrix::identity(other.dim());
        let mut parity = Vec::new();
        let mut weights = Vec::new();
        for (pa, wa) in self.parity.iter().zip(&self.weights) {
            for (pb, wb) in other.parity.iter().zip(&other.weights) {
                parity.push(pa != pb);
                weights.push(wa.iter().zip(wb).map(|(x, y)| x + y).collect());
            }
        }
        let action = self
            .units()
            .into_iter()
            .map(|(a, b)| {
                let left = if self.unit_is_odd((a, b)) { &sign } else { &id_a };
                self.action(a, b).kronecker(&id_b).add(&left.kronecker(other.action(a, b)))
            })
            .collect();
        Ok(GlModule { m: self.m, n: self.n, parity, weights, action })
    }

    /// The restriction to `f`, graded by `μ ↦ (μ_{a_j})_j` where
    /// `x_j = e_{a_j b_j}`; the block weight is `(μ_{a_j} + μ_{b_j})_j`.
    pub fn restrict_to_f(&self) -> Result<WeightModule> {
        let coords = FCoordinates::new(self.m, self.n)?;
        let r = coords.rank();
        let units: Vec<(usize, usize)> = (0..r).map(|j| coords.x(j)).chain((0..r).map(|j| coords.y(j))).collect();
        let mut groups: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (k, mu) in self.weights.iter().enumerate() {
            let key = (0..r)
                .map(|j| {
                    let (a, b) = coords.x(j);
                    mu[a] + mu[b]
                })
                .collect();
            groups.entry(key).or_default().push(k);
        }
        let mut blocks = Vec::new();
        for (key, members) in groups {
            let matrices = units.iter().map(|&(a, b)| self.action(a, b).submatrix(&members, &members)).collect();
            let parities: Vec<bool> = members.iter().map(|&k| self.parity[k]).collect();
            let grades = members.iter().map(|&k| (0..r).map(|j| self.weights[k][coords.x(j).0]).collect()).collect();
            let weight = key.into_iter().map(rat).collect();
            blocks.push(Block::from_mixed(weight, &parities, matrices, Some(grades)));
        }
        WeightModule::new(ZAlgebra::f(r), blocks)
    }
}

/// Irreducible `gl(k)`-module of highest weight `w` for `k ≤ 2`, as
/// `(weights, matrices indexed by a k + b)`.
fn levi_factor(w: &[i64]) -> Result<(Vec<Vec<i64>>, Vec<Matrix>)> {
    match w.len() {
        1 => Ok((vec![vec![w[0]]], vec![Matrix::scalar(1, rat(w[0]))])),
        2 => {
            let (a, b) = (w[0], w[1]);
            if a < b {
                return Err(Error::NotDominant(format!("({},{})", a, b)));
            }
            let d = (a - b + 1) as usize;
            let weights = (0..d as i64).map(|i| vec![a - i, b + i]).collect();
            let diag = |f: &dyn Fn(i64) -> i64| Matrix::from_fn(d, d, |u, v| if u == v { rat(f(u as i64)) } else { rat(0) });
            let e11 = diag(&|i| a - i);
            let e22 = diag(&|i| b + i);
            let raise = Matrix::from_fn(d, d, |u, v| if v == u + 1 { rat(v as i64 * (a - b - v as i64 + 1)) } else { rat(0) });
            let lower = Matrix::from_fn(d, d, |u, v| if u == v + 1 { rat(1) } else { rat(0) });
            Ok((weights, vec![e11, raise, lower, e22]))
        }
        k => Err(Error::Unsupported(format!("explicit gl({}) modules are limited to rank ≤ 2", k))),
    }
}

/// `L₀(λ) = L_{gl(m)} ⊗ L_{gl(n)}`, with `ρ(e_{ab})` for even units only.
struct Levi {
    dim: usize,
    weights: Vec<Vec<i64>>,
    /// Indexed like [`GlModule::action`]; odd units are `None`.
    action: Vec<Option<Matrix>>,
}

fn levi(lambda: &GLWeight) -> Result<Levi> {
    let (m, n) = (lambda.m(), lambda.n());
    let (wa, ma) = levi_factor(&lambda.entries()[..m])?;
    let (wb, mb) = levi_factor(&lambda.entries()[m..])?;
    let (da, db) = (wa.len(), wb.len());
    let k = m + n;
    let mut action = vec![None; k * k];
    for a in 0..m {
        for b in 0..m {
            action[a * k + b] = Some(ma[a * m + b].kronecker(&Matrix::identity(db)));
        }
    }
    for a in 0..n {
        for b in 0..n {
            action[(m + a) * k + m + b] = Some(Matrix::identity(da).kronecker(&mb[a * n + b]));
        }
    }
    let weights = wa.iter().flat_map(|x| wb.iter().map(move |y| x.iter().chain(y).copied().collect())).collect();
    Ok(Levi { dim: da * db, weights, action })
}

/// Sparse vectors over the PBW basis `(mask, l)`.
type Vector = BTreeMap<(u32, usize), Rational>;

fn add_to(v: &mut Vector, key: (u32, usize), c: Rational) {
    let e = v.entry(key).or_insert_with(|| rat(0));
    *e += c;
    if e.is_zero() {
        v.remove(&key);
    }
}

struct Pbw<'a> {
    m: usize,
    n: usize,
    levi: &'a Levi,
}

impl Pbw<'_> {
    fn y_index(&self, (c, d): (usize, usize)) -> Option<usize> {
        (c >= self.m && d < self.m).then(|| d * self.n + (c - self.m))
    }

    fn y_unit(&self, t: usize) -> (usize, usize) {
        (self.m + t % self.n, t / self.n)
    }

    /// `Y_t · (Y_S ⊗ v)`.
    fn left_y(&self, t: usize, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&(mask, l), c) in v {
            if (mask >> t) & 1 == 1 {
                continue;
            }
            let below = (mask & ((1u32 << t) - 1)).count_ones();
            let c = if below.is_multiple_of(2) { c.clone() } else { -c.clone() };
            add_to(&mut out, (mask | (1 << t), l), c);
        }
        out
    }

    fn act(&self, unit: (usize, usize), v: &Vector) -> Vector {
        let (a, b) = unit;
        let (ao, bo) = (a >= self.m, b >= self.m);
        if let Some(t) = self.y_index(unit) {
            return self.left_y(t, v);
        }
        let mut out = Vector::new();
        for (&(mask, l), c) in v {
            let list: Vec<usize> = (0..32).filter(|&t| (mask >> t) & 1 == 1).collect();
            let term = if ao == bo { self.even(unit, &list, l) } else { self.raise(unit, &list, l) };
            for (k, x) in term {
                add_to(&mut out, k, x * c.clone());
            }
        }
        out
    }

    /// An even unit on `Y_{list} ⊗ v_l`, with `list` increasing.
    fn even(&self, unit: (usize, usize), list: &[usize], l: usize) -> Vector {
        let mut out = Vector::new();
        let mask: u32 = list.iter().map(|&t| 1u32 << t).sum();
        for (pos, &t) in list.iter().enumerate() {
            for (u, c) in bracket(self.m, unit, self.y_unit(t)) {
                let s = self.y_index(u).expect("[g_0, g_-1] ⊆ g_-1");
                let mut rest = Vector::new();
                rest.insert((0, l), rat(1));
                // Rebuild the product right to left with Y_t replaced by Y_s.
                for (q, &r) in list.iter().enumerate().rev() {
                    rest = self.left_y(if q == pos { s } else { r }, &rest);
                }
                for (k, x) in rest {
                    add_to(&mut out, k, x * rat(c));
                }
            }
        }
        let r = self.levi.action[unit.0 * (self.m + self.n) + unit.1].as_ref().expect("even unit");
        for k in 0..self.levi.dim {
            let x = r.get(k, l);
            if !x.is_zero() {
                add_to(&mut out, (mask, k), x.clone());
            }
        }
        out
    }

    /// A unit of `g_{+1}` on `Y_{list} ⊗ v_l`.
    fn raise(&self, unit: (usize, usize), list: &[usize], l: usize) -> Vector {
        let Some((&first, rest)) = list.split_first() else {
            return Vector::new();
        };
        let mut out = Vector::new();
        for (u, c) in bracket(self.m, unit, self.y_unit(first)) {
            for (k, x) in self.even(u, rest, l) {
                add_to(&mut out, k, x * rat(c));
            }
        }
        let tail = self.raise(unit, rest, l);
        for (k, x) in self.left_y(first, &tail) {
            add_to(&mut out, k, -x);
        }
        out
    }
}

fn check_rank(lambda: &GLWeight) -> Result<()> {
    lambda.require_dominant()?;
    if lambda.m() > 2 || lambda.n() > 2 {
        return Err(Error::Unsupported(format!(
            "explicit modules are limited to m, n ≤ 2, got gl({}|{})",
            lambda.m(),
            lambda.n()
        )));
    }
    Ok(())
}

/// The Kac module `K(λ) = U(g) ⊗_{U(g_0 ⊕ g_{+1})} L₀(λ)`, of dimension
/// `2^{mn} dim L₀(λ)`.
pub fn kac_module(lambda: &GLWeight) -> Result<GlModule> {
    check_rank(lambda)?;
    let (m, n) = (lambda.m(), lambda.n());
    let lv = levi(lambda)?;
    let pbw = Pbw { m, n, levi: &lv };
    let nodd = m * n;
    let basis: Vec<(u32, usize)> = (0..1u32 << nodd).flat_map(|s| (0..lv.dim).map(move |l| (s, l))).collect();
    let index = |key: &(u32, usize)| key.0 as usize * lv.dim + key.1;
    let k = m + n;
    let mut action = Vec::with_capacity(k * k);
    for a in 0..k {
        for b in 0..k {
            let mut mat = Matrix::zeros(basis.len(), basis.len());
            for (col, key) in basis.iter().enumerate() {
                let v: Vector = [(*key, rat(1))].into_iter().collect();
                for (img, c) in pbw.act((a, b), &v) {
                    mat.set(index(&img), col, c);
                }
            }
            action.push(mat);
        }
    }
    let parity = basis.iter().map(|(s, _)| s.count_ones() % 2 == 1).collect();
    let weights = basis
        .iter()
        .map(|&(s, l)| {
            let mut w = lv.weights[l].clone();
            for t in 0..nodd {
                if (s >> t) & 1 == 1 {
                    let (c, d) = pbw.y_unit(t);
                    w[c] += 1;
                    w[d] -= 1;
                }
            }
            w
        })
        .collect();
    Ok(GlModule { m, n, parity, weights, action })
}

/// The simple module `L(λ)`, the head of `K(λ)`.
///
/// `K(λ)` is graded by the number `k` of `g_{-1}` factors, and a homogeneous
/// vector of degree `k` generates a proper submodule exactly when every
/// product of `k` elements of `g_{+1}` kills it. The radical is computed piece
/// by piece over degree and weight.
pub fn simple_module(lambda: &GLWeight) -> Result<GlModule> {
    let kac = kac_module(lambda)?;
    let (m, n) = (kac.m, kac.n);
    let lv_dim = kac.dim() >> (m * n);
    let degree = |i: usize| (i / lv_dim).count_ones() as usize;
    let mut pieces: BTreeMap<(usize, Vec<i64>), Vec<usize>> = BTreeMap::new();
    for i in 0..kac.dim() {
        pieces.entry((degree(i), kac.weights[i].clone())).or_default().push(i);
    }
    let raising: Vec<&Matrix> = (0..m).flat_map(|i| (0..n).map(move |j| (i, m + j))).map(|(a, b)| kac.action(a, b)).collect();
    let top: Vec<usize> = (0..lv_dim).collect();

    // For each piece: kept indices and the rref rows of its radical.
    let mut kept = Vec::new();
    let mut reducers: Vec<(Vec<usize>, Matrix, Vec<usize>)> = Vec::new();
    for ((k, _), members) in &pieces {
        let select = Matrix::from_fn(kac.dim(), members.len(), |r, c| if members[c] == r { rat(1) } else { rat(0) });
        let mut rows: Option<Matrix> = None;
        for seq in increasing_sequences(raising.len(), *k) {
            let mut img = select.clone();
            for &s in seq.iter().rev() {
                img = raising[s].mul(&img);
            }
            let img = img.submatrix(&top, &(0..members.len()).collect::<Vec<_>>());
            rows = Some(match rows {
                None => img,
                Some(r) => r.vstack(&img),
            });
        }
        let radical = rows.map_or_else(|| Matrix::zeros(0, members.len()), |r| r.nullspace());
        let (rref, pivots) = radical.transpose().rref();
        for (c, &i) in members.iter().enumerate() {
            if !pivots.contains(&c) {
                kept.push(i);
            }
        }
        reducers.push((members.clone(), rref, pivots));
    }
    kept.sort_unstable();
    let position: BTreeMap<usize, usize> = kept.iter().enumerate().map(|(p, &i)| (i, p)).collect();

    let reduce = |v: Vec<Rational>| -> Vec<Rational> {
        let mut v = v;
        for (members, rref, pivots) in &reducers {
            for (row, &p) in pivots.iter().enumerate() {
                let c = v[members[p]].clone();
                if c.is_zero() {
                    continue;
                }
                for (col, &i) in members.iter().enumerate() {
                    let x = rref.get(row, col);
                    if !x.is_zero() {
                        v[i] -= c.clone() * x.clone();
                    }
                }
            }
        }
        kept.iter().map(|&i| v[i].clone()).collect()
    };
    let d = kept.len();
    let action = kac
        .action
        .iter()
        .map(|r| {
            let mut mat = Matrix::zeros(d, d);
            for (c, &i) in kept.iter().enumerate() {
                let col: Vec<Rational> = (0..kac.dim()).map(|u| r.get(u, i).clone()).collect();
                for (u, x) in reduce(col).into_iter().enumerate() {
                    if !x.is_zero() {
                        mat.set(u, c, x);
                    }
                }
            }
            mat
        })
        .collect();
    debug_assert_eq!(position.len(), d);
    Ok(GlModule {
        m,
        n,
        parity: kept.iter().map(|&i| kac.parity[i]).collect(),
        weights: kept.iter().map(|&i| kac.weights[i].clone()).collect(),
        action,
    })
}

fn increasing_sequences(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `K(λ)` restricted to `f`.
pub fn kac_module_f(lambda: &GLWeight) -> Result<WeightModule> {
    kac_module(lambda)?.restrict_to_f()
}

/// `L(λ)` restricted to `f`.
pub fn simple_module_f(lambda: &GLWeight) -> Result<WeightModule> {
    let _ = atypicality(lambda)?;
    simple_module(lambda)?.restrict_to_f()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliffmod::{is_projective, rank_variety};
    use crate::polyring::parse_poly;
    use crate::variety::Variety;

    fn w(s: &str) -> GLWeight {
        s.parse().unwrap()
    }

    #[test]
    fn kac_modules_are_representations() {
        for s in ["(0|0)", "(2|-1)", "(1|0,0)", "(0|1,-1)", "(1,0|0)", "(0,0|0,0)", "(1,0|0,-1)"] {
            let k = kac_module(&w(s)).unwrap();
            k.validate().unwrap();
            let lv = levi(&w(s)).unwrap().dim;
            assert_eq!(k.dim(), (1 << (w(s).m() * w(s).n())) * lv, "{}", s);
        }
    }

    #[test]
    fn gl11_kac_supports() {
        let zy = Variety::zero_set(1, vec![parse_poly("Y1", 1).unwrap()]).unwrap();
        let k0 = kac_module_f(&w("(0|0)")).unwrap();
        assert_eq!(k0.dim(), 2);
        assert!(rank_variety(&k0).unwrap().equal(&zy).unwrap());
        assert!(is_projective(&kac_module_f(&w("(1|0)")).unwrap()).unwrap());
        let twisted = k0.tau_twist().unwrap();
        let zx = Variety::zero_set(1, vec![parse_poly("X1", 1).unwrap()]).unwrap();
        assert!(rank_variety(&twisted).unwrap().equal(&zx).unwrap());
    }

    #[test]
    fn simple_quotients() {
        let triv = simple_module(&w("(0,0|0,0)")).unwrap();
        assert_eq!(triv.dim(), 1);
        let natural = simple_module(&w("(1,0|0,0)")).unwrap();
        natural.validate().unwrap();
        assert_eq!(natural.dim(), 4);
        let adjoint = simple_module(&w("(1,0|0,-1)")).unwrap();
        adjoint.validate().unwrap();
        assert_eq!(adjoint.dim(), 14);
        // Typical weights give simple Kac modules.
        assert_eq!(simple_module(&w("(2|0)")).unwrap().dim(), 2);
        assert_eq!(simple_module(&w("(0|0)")).unwrap().dim(), 1);
    }

    #[test]
    fn simple_supports_match_atypicality() {
        for s in ["(0,0|0,0)", "(1,0|0,0)", "(1,0|0,-1)", "(2,0|0,0)", "(3,1|0,0)", "(0|0,0)", "(1|0,0)", "(2|0,0)"] {
            let l = w(s);
            let v = rank_variety(&simple_module_f(&l).unwrap()).unwrap();
            assert!(v.equal(&super::super::simple_support(&l).unwrap()).unwrap(), "{}: {}", s, v);
        }
    }

    #[test]
    fn kac_supports_lie_in_a_coordinate_plane() {
        for s in ["(0|0)", "(3|-3)", "(0|0,0)", "(1|0,-1)", "(0,0|0)", "(0,0|0,0)", "(1,0|0,-1)", "(2,1|0,0)"] {
            let l = w(s);
            let r = l.m().min(l.n());
            let all: Vec<usize> = (0..r).collect();
            // With m > n the flip puts every x_j in g_{-1}.
            let plane = if l.m() <= l.n() {
                Variety::coordinate(r, &[], &all).unwrap()
            } else {
                Variety::coordinate(r, &all, &[]).unwrap()
            };
            let v = rank_variety(&kac_module_f(&l).unwrap()).unwrap();
            assert!(plane.contains(&v).unwrap(), "{}: {}", s, v);
            if atypicality(&l).unwrap() == 0 {
                assert!(v.is_proj_empty().unwrap(), "{}", s);
            }
        }
    }

    #[test]
    fn tensor_of_representations() {
        let a = simple_module(&w("(1|0)")).unwrap();
        let b = kac_module(&w("(0|0)")).unwrap();
        let t = a.tensor(&b).unwrap();
        t.validate().unwrap();
        assert_eq!(t.dim(), a.dim() * b.dim());
    }
}
