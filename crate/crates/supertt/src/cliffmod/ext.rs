//! Relative cohomology `H^•(z, t; Hom(M, N))` and cohomological support.
//!
//! Since `t` acts trivially on `z₁`, the cochains are
//! `C^s = S^s(z₁*) ⊗ Hom_t(M, N)` with the `R = S(z₁*)`-linear differential
//! `d(r ⊗ φ) = Σ_i c_i r ⊗ ρ_Hom(b_i)φ`, where `c_i` is the coordinate dual to
//! `b_i` and `ρ_Hom(b)φ = ρ_N(b)φ - (-1)^{|φ|} φ ρ_M(b)`. The bracket term of
//! the Chevalley–Eilenberg differential acts through `t` on `Hom_t(M, N)`,
//! where it vanishes. When both modules are graded every space splits by the
//! total torus weight `grade(φ) - weight(r)`, which `d` preserves.

use super::{Block, WeightModule};
use crate::error::{Error, Result};
use crate::field::{rat, Rational};
use crate::polyring::{Monomial, Poly};
use crate::variety::Variety;
use crate::Matrix;
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};

/// Basis of `Hom_t(M, N)`: matrix units `E_{u,v}` between blocks of equal weight.
struct HomSpace {
    parity: Vec<bool>,
    grade: Option<Vec<Vec<i64>>>,
    /// `action[i][k]`: `ρ_Hom(b_i)` applied to basis vector `k`.
    action: Vec<Vec<Vec<(usize, Rational)>>>,
}

fn hom_space(m: &WeightModule, n: &WeightModule) -> Result<HomSpace> {
    if m.algebra() != n.algebra() {
        return Err(Error::InvalidParameters("modules over different algebras".into()));
    }
    let d = m.algebra().odd_dim();
    let graded = m.is_graded() && n.is_graded();
    let mut parity = Vec::new();
    let mut grade = Vec::new();
    let mut action: Vec<Vec<Vec<(usize, Rational)>>> = vec![Vec::new(); d];
    for bm in m.blocks() {
        let Some(bn) = n.blocks().iter().find(|b| b.weight == bm.weight) else {
            continue;
        };
        let offset = parity.len();
        let (dm, dn) = (bm.dim(), bn.dim());
        let index = |u: usize, v: usize| offset + u * dm + v;
        for u in 0..dn {
            for v in 0..dm {
                parity.push(bn.is_odd(u) != bm.is_odd(v));
                if graded {
                    let (gn, gm) = (grade_of(bn, u), grade_of(bm, v));
                    grade.push(gn.iter().zip(gm).map(|(a, b)| a - b).collect::<Vec<i64>>());
                }
            }
        }
        for (i, act) in action.iter_mut().enumerate() {
            let (rn, rm) = (&bn.matrices[i], &bm.matrices[i]);
            for u in 0..dn {
                for v in 0..dm {
                    let sign = if bn.is_odd(u) != bm.is_odd(v) { rat(1) } else { rat(-1) };
                    let mut out = Vec::new();
                    for u2 in 0..dn {
                        let c = rn.get(u2, u);
                        if !c.is_zero() {
                            out.push((index(u2, v), c.clone()));
                        }
                    }
                    // -(-1)^{|φ|} E_{u,v} ρ_M(b) = sign · Σ_{v'} ρ_M(b)[v][v'] E_{u,v'}
                    for v2 in 0..dm {
                        let c = rm.get(v, v2);
                        if !c.is_zero() {
                            out.push((index(u, v2), sign.clone() * c));
                        }
                    }
                    act.push(out);
                }
            }
        }
    }
    Ok(HomSpace { parity, grade: graded.then_some(grade), action })
}

fn grade_of(b: &Block, k: usize) -> &[i64] {
    &b.grades.as_ref().expect("graded block")[k]
}

type Key = Vec<i64>;

/// The cochain complex, truncated at a top degree, with bases split by weight.
struct Complex {
    d: usize,
    hom: HomSpace,
    /// `pieces[s][w]` lists the cochain basis `(monomial, hom index)`.
    pieces: Vec<BTreeMap<Key, Vec<(Monomial, usize)>>>,
    position: Vec<HashMap<(Monomial, usize), usize>>,
}

impl Complex {
    fn new(hom: HomSpace, d: usize, top: usize) -> Complex {
        let mut pieces = Vec::new();
        let mut position = Vec::new();
        for s in 0..=top {
            let mut by_key: BTreeMap<Key, Vec<(Monomial, usize)>> = BTreeMap::new();
            for mono in monomials(d, s) {
                for k in 0..hom.parity.len() {
                    let key = cochain_key(&hom, &mono, k);
                    by_key.entry(key).or_default().push((mono.clone(), k));
                }
            }
            let mut pos = HashMap::new();
            for list in by_key.values() {
                for (i, e) in list.iter().enumerate() {
                    pos.insert(e.clone(), i);
                }
            }
            pieces.push(by_key);
            position.push(pos);
        }
        Complex { d, hom, pieces, position }
    }

    fn dim(&self, s: usize, key: &Key) -> usize {
        self.pieces[s].get(key).map_or(0, |l| l.len())
    }

    /// Matrix of `d_s` from piece `key` of degree `s` to the same piece in
    /// degree `s + 1`.
    fn differential(&self, s: usize, key: &Key) -> Matrix {
        let src = self.pieces[s].get(key).map(|l| l.as_slice()).unwrap_or(&[]);
        let rows = self.dim(s + 1, key);
        let mut out = Matrix::zeros(rows, src.len());
        for (col, (mono, k)) in src.iter().enumerate() {
            for i in 0..self.d {
                let target = mono.mul(&Monomial::var(self.d, i));
                for (k2, c) in &self.hom.action[i][*k] {
                    let row = self.position[s + 1][&(target.clone(), *k2)];
                    let v = out.get(row, col) + c;
                    out.set(row, col, v);
                }
            }
        }
        out
    }

    /// `μ · v` for a cochain `v` of degree `s` in piece `key`.
    fn multiply(&self, s: usize, key: &Key, v: &[Rational], mu: &Monomial) -> (Key, Vec<Rational>) {
        let src = &self.pieces[s][key];
        let e = mu.degree() as usize;
        let target_key = cochain_key(&self.hom, &src[0].0.mul(mu), src[0].1);
        let mut out = vec![rat(0); self.dim(s + e, &target_key)];
        for ((mono, k), c) in src.iter().zip(v) {
            if c.is_zero() {
                continue;
            }
            out[self.position[s + e][&(mono.mul(mu), *k)]] += c;
        }
        (target_key, out)
    }
}

fn cochain_key(hom: &HomSpace, mono: &Monomial, k: usize) -> Key {
    match &hom.grade {
        None => Vec::new(),
        Some(g) => {
            let half = mono.nvars() / 2;
            g[k].iter().enumerate().map(|(j, x)| x - (mono.exps()[j] as i64 - mono.exps()[half + j] as i64)).collect()
        }
    }
}

/// Monomials of degree `s` in `d` variables, in a fixed order.
fn monomials(d: usize, s: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; d];
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::from_exps(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
    }
    if d == 0 {
        if s == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    go(0, s as u32, &mut cur, &mut out);
    out
}

/// `dim H^s(z, t; Hom(M, N))` for `s = 0..=max_degree`.
pub fn relative_ext(m: &WeightModule, n: &WeightModule, max_degree: usize) -> Result<Vec<usize>> {
    let d = m.algebra().odd_dim();
    let cx = Complex::new(hom_space(m, n)?, d, max_degree + 1);
    let mut dims = vec![0; max_degree + 1];
    let keys: Vec<Key> =
        cx.pieces.iter().flat_map(|p| p.keys().cloned()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    for key in &keys {
        let ranks: Vec<usize> = (0..=max_degree).map(|s| cx.differential(s, key).rank()).collect();
        for s in 0..=max_degree {
            let below = if s == 0 { 0 } else { ranks[s - 1] };
            dims[s] += cx.dim(s, key) - ranks[s] - below;
        }
    }
    Ok(dims)
}

/// `Ext¹(M, S_λ) = 0` for the simple `S_λ` of every block weight `λ` of `M`.
pub fn ext_one_vanishes(m: &WeightModule) -> Result<bool> {
    for b in m.blocks() {
        let s = WeightModule::block_simple(m.algebra(), &b.weight)?;
        if relative_ext(m, &s, 1)?[1] != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cohomological support `Z(Ann_R Ext^•(M, M))` computed to a degree bound.
#[derive(Clone, Debug)]
pub struct CohSupport {
    pub variety: Variety,
    pub bound: usize,
    /// Largest degree in which `Ext^•(M, M)` generators were collected.
    pub generator_degree: usize,
    /// Largest degree of annihilator elements that were searched.
    pub annihilator_degree: usize,
    /// True when the bound `bound - 1` gave the same variety.
    pub stabilized: bool,
}

/// Computes the support at `bound` and at `bound - 1` and compares them.
/// Requires a graded module over an algebra of pairing type.
pub fn coh_support(m: &WeightModule, bound: usize) -> Result<CohSupport> {
    if bound < 2 {
        return Err(Error::InvalidParameters("degree bound must be at least 2".into()));
    }
    let half = m
        .algebra()
        .pairing_rank()
        .ok_or_else(|| Error::Unsupported("cohomological support needs an algebra of pairing type".into()))?;
    if !m.is_graded() {
        return Err(Error::Unsupported("cohomological support needs a graded module".into()));
    }
    let d = m.algebra().odd_dim();
    let cx = Complex::new(hom_space(m, m)?, d, bound);
    let at = |b: usize| annihilator_variety(&cx, half, b);
    let (variety, g, e) = at(bound)?;
    let (previous, _, _) = at(bound - 1)?;
    let stabilized = variety.equal(&previous)?;
    Ok(CohSupport { variety, bound, generator_degree: g, annihilator_degree: e, stabilized })
}

/// Generators of `H` in degrees `≤ G = ⌊B/2⌋`, annihilator elements in
/// degrees `1..=B-G`, all inside the complex truncated at `B`.
fn annihilator_variety(cx: &Complex, half: usize, bound: usize) -> Result<(Variety, usize, usize)> {
    let g_deg = bound / 2;
    let e_deg = bound - g_deg;
    let d = cx.d;
    // Cocycles and coboundaries by (degree, key).
    let mut cocycles: Vec<BTreeMap<Key, Matrix>> = Vec::new();
    let mut boundaries: Vec<BTreeMap<Key, Matrix>> = vec![BTreeMap::new()];
    for s in 0..bound {
        let mut z = BTreeMap::new();
        let mut b = BTreeMap::new();
        for key in cx.pieces[s].keys() {
            let dm = cx.differential(s, key);
            b.insert(key.clone(), dm.column_basis());
            z.insert(key.clone(), dm.nullspace());
        }
        cocycles.push(z);
        boundaries.push(b);
    }
    let boundary =
        |s: usize, key: &Key| -> Matrix { boundaries[s].get(key).cloned().unwrap_or_else(|| Matrix::zeros(cx.dim(s, key), 0)) };

    // Generators: cocycles not in R_1·Z^{s-1} + B^s.
    let mut gens: Vec<(usize, Key, Vec<Rational>)> = Vec::new();
    for s in 0..=g_deg {
        for (key, z) in &cocycles[s] {
            let mut span = boundary(s, key);
            if s > 0 {
                for (k0, z0) in &cocycles[s - 1] {
                    for i in 0..d {
                        let mu = Monomial::var(d, i);
                        for c in 0..z0.cols() {
                            let col: Vec<Rational> = (0..z0.rows()).map(|r| z0.get(r, c).clone()).collect();
                            let (k1, v) = cx.multiply(s - 1, k0, &col, &mu);
                            if &k1 == key {
                                span = span.hstack(&column(&v));
                            }
                        }
                    }
                }
            }
            let mut rank = span.rank();
            for c in 0..z.cols() {
                let col: Vec<Rational> = (0..z.rows()).map(|r| z.get(r, c).clone()).collect();
                let grown = span.hstack(&column(&col));
                let r = grown.rank();
                if r > rank {
                    rank = r;
                    span = grown;
                    gens.push((s, key.clone(), col));
                }
            }
        }
    }

    // Annihilator, one torus weight of multipliers at a time.
    let mut polys = Vec::new();
    for e in 1..=e_deg {
        let mut groups: BTreeMap<Vec<i64>, Vec<Monomial>> = BTreeMap::new();
        for mu in monomials(d, e) {
            let w = (0..half).map(|j| mu.exps()[j] as i64 - mu.exps()[half + j] as i64).collect();
            groups.entry(w).or_default().push(mu);
        }
        for monos in groups.values() {
            let n = monos.len();
            // Unknowns: n multiplier coefficients, then one block per generator.
            let mut rows: Vec<Vec<Rational>> = Vec::new();
            let mut extra = 0;
            let mut parts = Vec::new();
            for (s, key, v) in &gens {
                let images: Vec<(Key, Vec<Rational>)> = monos.iter().map(|mu| cx.multiply(*s, key, v, mu)).collect();
                let tkey = images[0].0.clone();
                let bnd = if s + e < boundaries.len() { boundary(s + e, &tkey) } else { Matrix::zeros(images[0].1.len(), 0) };
                let width = bnd.cols();
                parts.push((images, bnd, extra));
                extra += width;
            }
            for (images, bnd, offset) in &parts {
                for r in 0..images[0].1.len() {
                    let mut row = vec![rat(0); n + extra];
                    for (j, (_, img)) in images.iter().enumerate() {
                        row[j] = img[r].clone();
                    }
                    for c in 0..bnd.cols() {
                        row[n + offset + c] = -bnd.get(r, c).clone();
                    }
                    rows.push(row);
                }
            }
            let sol = if rows.is_empty() {
                Matrix::identity(n)
            } else {
                let ns = Matrix::from_rows(rows).nullspace();
                Matrix::from_fn(n, ns.cols(), |i, j| ns.get(i, j).clone())
            };
            for c in 0..sol.cols() {
                let terms = monos.iter().enumerate().map(|(i, mu)| (mu.clone(), sol.get(i, c).clone())).collect();
                let p = Poly::from_terms(d, terms);
                if !p.is_zero() {
                    polys.push(p.monic());
                }
            }
        }
    }
    polys.sort();
    polys.dedup();
    Ok((Variety::zero_set(half, polys)?, g_deg, e_deg))
}

fn column(v: &[Rational]) -> Matrix {
    Matrix::from_fn(v.len(), 1, |i, _| v[i].clone())
}

#[cfg(test)]
mod tests {
    use super::super::ZAlgebra;
    use super::*;
    use crate::polyring::parse_poly;

    #[test]
    fn trivial_coefficients_give_polynomial_ring() {
        let a = ZAlgebra::f(1);
        let c = WeightModule::trivial(&a);
        assert_eq!(relative_ext(&c, &c, 4).unwrap(), vec![1, 2, 3, 4, 5]);
        let a = ZAlgebra::f(2);
        let c = WeightModule::trivial(&a);
        assert_eq!(relative_ext(&c, &c, 2).unwrap(), vec![1, 4, 10]);
    }

    #[test]
    fn differential_squares_to_zero() {
        let a = ZAlgebra::f(2);
        let m = WeightModule::free(&a, &[rat(1), rat(0)]).unwrap().direct_sum(&WeightModule::line(&a, 1).unwrap()).unwrap();
        let n = WeightModule::block_simple(&a, &[rat(1), rat(0)]).unwrap();
        for (x, y) in [(&m, &n), (&n, &m), (&m, &m)] {
            let cx = Complex::new(hom_space(x, y).unwrap(), 4, 3);
            for key in cx.pieces[0].keys().chain(cx.pieces[1].keys()) {
                for s in 0..2 {
                    let d0 = cx.differential(s, key);
                    let d1 = cx.differential(s + 1, key);
                    assert!(d1.mul(&d0).is_zero());
                }
            }
        }
    }

    #[test]
    fn hom_invariants_contain_identity() {
        let a = ZAlgebra::f(1);
        for m in [WeightModule::line(&a, 0).unwrap(), WeightModule::free(&a, &[rat(2)]).unwrap()] {
            assert!(relative_ext(&m, &m, 0).unwrap()[0] >= 1);
        }
    }

    #[test]
    fn supports_at_gl11() {
        let a = ZAlgebra::f(1);
        let c = coh_support(&WeightModule::trivial(&a), 3).unwrap();
        assert!(c.stabilized);
        assert!(c.variety.equal(&Variety::whole(1)).unwrap());
        let k0 = coh_support(&WeightModule::line(&a, 1).unwrap(), 3).unwrap();
        assert!(k0.stabilized);
        let y = Variety::zero_set(1, vec![parse_poly("Y1", 1).unwrap()]).unwrap();
        assert!(k0.variety.equal(&y).unwrap());
        let p = coh_support(&WeightModule::free(&a, &[rat(0)]).unwrap(), 3).unwrap();
        assert!(p.variety.is_proj_empty().unwrap());
    }

    #[test]
    fn ext_oracle() {
        let a = ZAlgebra::f(1);
        assert!(ext_one_vanishes(&WeightModule::free(&a, &[rat(0)]).unwrap()).unwrap());
        assert!(ext_one_vanishes(&WeightModule::block_simple(&a, &[rat(1)]).unwrap()).unwrap());
        assert!(!ext_one_vanishes(&WeightModule::trivial(&a)).unwrap());
    }
}
