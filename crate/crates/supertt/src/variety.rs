//! Conical torus-stable closed subsets of the odd part `f1 = A^{2m}`.
//!
//! A [`BasicVariety`] is the zero set of some coordinate functions `Xj`, `Yj`
//! together with bihomogeneous polynomials; a [`Variety`] is a finite union.
//! Components are normalized on construction:
//!
//! * coordinates are substituted into the remaining polynomials;
//! * a polynomial with a monomial factor splits the component
//!   (`Z(u h) = Z(u) ∪ Z(h)`);
//! * the polynomials that are linear in `Zj = XjYj` are brought to reduced
//!   row echelon form, and a row `Zj` splits into `Xj` and `Yj` branches.
//!
//! What is left is a list of coordinates, echelon `Z`-linear rows without
//! singleton rows, and any other polynomials. When there are no other
//! polynomials the ideal is prime (each row reads `XpYp = L(Z_free)` with `L`
//! nonzero) and the generators form a Gröbner basis, because the leading
//! monomials `XpYp` are pairwise coprime. Membership in such a component is
//! then a normal-form computation.

pub mod identities;

use crate::error::{Error, Result};
use crate::field::{rat, Rational};
use crate::groebner::{normal_form, radical_member};
use crate::linalg::Matrix;
use crate::polyring::{Poly, PolyJson};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// How containment of a non-coordinate component is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Normal forms for prime components, radical tests in `Z1..Zm` when all
    /// data has torus weight zero, Rabinowitsch in the full ring otherwise.
    Fast,
    /// Every membership question goes through the Rabinowitsch test in the
    /// full ring `Q[X, Y, t]`.
    Groebner,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasicVariety {
    m: usize,
    coords_x: BTreeSet<usize>,
    coords_y: BTreeSet<usize>,
    polys: Vec<Poly>,
}

impl BasicVariety {
    /// Coordinates are 0-based. Every polynomial must be bihomogeneous.
    pub fn new(m: usize, coords_x: BTreeSet<usize>, coords_y: BTreeSet<usize>, polys: Vec<Poly>) -> Result<Self> {
        if let Some(&j) = coords_x.iter().chain(&coords_y).find(|&&j| j >= m) {
            return Err(Error::InvalidParameters(format!("coordinate index {} out of range for m = {}", j + 1, m)));
        }
        for p in &polys {
            if p.nvars() != 2 * m {
                return Err(Error::VarMismatch(2 * m, p.nvars()));
            }
            if !p.is_bihomogeneous() {
                return Err(Error::NotHomogeneous(p.to_string()));
            }
        }
        Ok(BasicVariety { m, coords_x, coords_y, polys })
    }

    pub fn whole(m: usize) -> Self {
        BasicVariety { m, coords_x: BTreeSet::new(), coords_y: BTreeSet::new(), polys: Vec::new() }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coords_x(&self) -> &BTreeSet<usize> {
        &self.coords_x
    }

    pub fn coords_y(&self) -> &BTreeSet<usize> {
        &self.coords_y
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    /// Cut out by coordinate functions alone.
    pub fn is_coordinate(&self) -> bool {
        self.polys.is_empty()
    }

    /// Normalized components without opaque polynomials have prime ideals.
    pub fn is_prime(&self) -> bool {
        self.polys.iter().all(|p| p.z_linear_coeffs().is_some())
    }

    /// Affine dimension, for coordinate components.
    pub fn coordinate_dim(&self) -> Option<usize> {
        self.is_coordinate().then(|| 2 * self.m - self.coords_x.len() - self.coords_y.len())
    }

    fn zero_vars(&self) -> Vec<usize> {
        self.coords_x.iter().copied().chain(self.coords_y.iter().map(|j| self.m + j)).collect()
    }

    /// All generators, coordinates first.
    pub fn gens(&self) -> Vec<Poly> {
        let mut g: Vec<Poly> = self
            .coords_x
            .iter()
            .map(|&j| Poly::xvar(self.m, j))
            .chain(self.coords_y.iter().map(|&j| Poly::yvar(self.m, j)))
            .collect();
        g.extend(self.polys.iter().cloned());
        g
    }

    fn with_coord(&self, var: usize) -> Self {
        let mut b = self.clone();
        if var < self.m {
            b.coords_x.insert(var);
        } else {
            b.coords_y.insert(var - self.m);
        }
        b
    }

    fn map(&self, perm_x: impl Fn(usize) -> usize, f: impl Fn(&Poly) -> Poly, swap: bool) -> Self {
        let xs: BTreeSet<usize> = self.coords_x.iter().map(|&j| perm_x(j)).collect();
        let ys: BTreeSet<usize> = self.coords_y.iter().map(|&j| perm_x(j)).collect();
        let (coords_x, coords_y) = if swap { (ys, xs) } else { (xs, ys) };
        BasicVariety { m: self.m, coords_x, coords_y, polys: self.polys.iter().map(f).collect() }
    }

    /// Membership of `g` in the radical of this component's ideal.
    pub fn radical_contains(&self, g: &Poly, strategy: Strategy) -> Result<bool> {
        if strategy == Strategy::Groebner {
            return radical_member(g, &self.gens(), 2 * self.m);
        }
        let g = g.substitute_zero(&self.zero_vars());
        if g.is_zero() {
            return Ok(true);
        }
        if self.is_prime() {
            return Ok(normal_form(&g, &self.polys).is_zero());
        }
        let weight_zero = |p: &Poly| p.torus_weight().is_some_and(|w| w.is_zero());
        if self.polys.iter().all(weight_zero) {
            if g.len() == 1 && g.total_degree() == Some(1) {
                // A point with a single nonzero coordinate has every Zj = 0.
                return Ok(false);
            }
            if let Some(zg) = g.to_z_poly() {
                let zgens: Vec<Poly> = self.polys.iter().map(|p| p.to_z_poly().unwrap()).collect();
                return radical_member(&zg, &zgens, self.m);
            }
        }
        radical_member(&g, &self.gens(), 2 * self.m)
    }

    /// `self ⊆ other` for single components.
    pub fn subset_of(&self, other: &BasicVariety, strategy: Strategy) -> Result<bool> {
        for g in other.gens() {
            if !self.radical_contains(&g, strategy)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Answers `self ⊆ other` when that is decidable by normal forms or
    /// syntactic inclusion of generators.
    fn cheap_subset_of(&self, other: &BasicVariety) -> Option<bool> {
        if self.is_prime() {
            return self.subset_of(other, Strategy::Fast).ok();
        }
        let syntactic = other.coords_x.is_subset(&self.coords_x)
            && other.coords_y.is_subset(&self.coords_y)
            && other.polys.iter().all(|p| self.polys.contains(p));
        syntactic.then_some(true)
    }

    pub fn point_member(&self, x: &[Rational]) -> Result<bool> {
        if x.len() != 2 * self.m {
            return Err(Error::VarMismatch(2 * self.m, x.len()));
        }
        for g in self.gens() {
            if !g.evaluate(x)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Splits into normalized components; an empty result means the empty set.
    fn normalize(self) -> Vec<BasicVariety> {
        let mut out = Vec::new();
        let mut work = vec![self];
        'work: while let Some(b) = work.pop() {
            let zv = b.zero_vars();
            let mut polys: Vec<Poly> = Vec::new();
            for p in &b.polys {
                let q = p.substitute_zero(&zv);
                if q.is_zero() {
                    continue;
                }
                if q.is_constant() {
                    continue 'work;
                }
                let q = q.monic();
                if !polys.contains(&q) {
                    polys.push(q);
                }
            }
            let base = BasicVariety { polys: Vec::new(), ..b };
            if let Some(i) = polys.iter().position(|p| !p.monomial_content().is_one()) {
                let p = polys.remove(i);
                let c = p.monomial_content();
                let h = p.div_monomial(&c).unwrap();
                for (v, &e) in c.exps().iter().enumerate() {
                    if e > 0 {
                        work.push(BasicVariety { polys: polys.clone(), ..base.with_coord(v) });
                    }
                }
                if !h.is_constant() {
                    polys.push(h);
                    work.push(BasicVariety { polys, ..base });
                }
                continue;
            }
            let (lin, mut other): (Vec<Poly>, Vec<Poly>) = polys.into_iter().partition(|p| p.z_linear_coeffs().is_some());
            let rows = z_echelon(&lin);
            if let Some(j) = rows.iter().find_map(|r| singleton(r)) {
                let mut rest: Vec<Poly> = rows.iter().map(|r| Poly::from_z_linear(r)).collect();
                rest.extend(other.iter().cloned());
                work.push(BasicVariety { polys: rest.clone(), ..base.with_coord(j) });
                work.push(BasicVariety { polys: rest, ..base.with_coord(base.m + j) });
                continue;
            }
            other.sort();
            let mut polys: Vec<Poly> = rows.iter().map(|r| Poly::from_z_linear(r)).collect();
            polys.extend(other);
            out.push(BasicVariety { polys, ..base });
        }
        out
    }

    pub fn to_json(&self) -> ComponentJson {
        ComponentJson {
            coords_x: self.coords_x.iter().map(|j| j + 1).collect(),
            coords_y: self.coords_y.iter().map(|j| j + 1).collect(),
            polys: self.polys.iter().map(|p| p.to_json()).collect(),
        }
    }
}

fn singleton(row: &[Rational]) -> Option<usize> {
    let nz: Vec<usize> = (0..row.len()).filter(|&j| !row[j].is_zero()).collect();
    (nz.len() == 1).then(|| nz[0])
}

/// Reduced echelon rows of the coefficient vectors of `Z`-linear polynomials.
fn z_echelon(lin: &[Poly]) -> Vec<Vec<Rational>> {
    if lin.is_empty() {
        return Vec::new();
    }
    let mat = Matrix::from_rows(lin.iter().map(|p| p.z_linear_coeffs().unwrap()).collect());
    let (r, piv) = mat.rref();
    (0..piv.len()).map(|i| r.row(i).to_vec()).collect()
}

impl fmt::Display for BasicVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.coords_x.iter().map(|j| format!("X{}", j + 1)).collect();
        parts.extend(self.coords_y.iter().map(|j| format!("Y{}", j + 1)));
        parts.extend(self.polys.iter().map(|p| p.to_string()));
        write!(f, "Z({})", parts.join(", "))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ComponentJson {
    pub coords_x: Vec<usize>,
    pub coords_y: Vec<usize>,
    #[serde(default)]
    pub polys: Vec<PolyJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct VarietyJson {
    pub m: usize,
    pub components: Vec<ComponentJson>,
}

/// A finite union of normalized components, sorted, none syntactically or
/// (for prime components) provably inside another.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variety {
    m: usize,
    components: Vec<BasicVariety>,
}

impl Variety {
    pub fn empty(m: usize) -> Self {
        Variety { m, components: Vec::new() }
    }

    pub fn whole(m: usize) -> Self {
        Variety { m, components: vec![BasicVariety::whole(m)] }
    }

    /// The affine origin, which is empty as a projective variety.
    pub fn origin(m: usize) -> Self {
        Self::coordinate(m, &(0..m).collect::<Vec<_>>(), &(0..m).collect::<Vec<_>>()).unwrap()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn components(&self) -> &[BasicVariety] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn from_components(m: usize, comps: Vec<BasicVariety>) -> Result<Self> {
        for c in &comps {
            if c.m != m {
                return Err(Error::VarMismatch(2 * m, 2 * c.m));
            }
        }
        Ok(Self::normalized(m, comps))
    }

    pub fn from_basic(b: BasicVariety) -> Self {
        Self::normalized(b.m, vec![b])
    }

    /// `Z(X_xs, Y_ys)` with 0-based indices.
    pub fn coordinate(m: usize, xs: &[usize], ys: &[usize]) -> Result<Self> {
        let b = BasicVariety::new(m, xs.iter().copied().collect(), ys.iter().copied().collect(), Vec::new())?;
        Ok(Self::from_basic(b))
    }

    /// Zero set of bihomogeneous generators.
    pub fn zero_set(m: usize, gens: Vec<Poly>) -> Result<Self> {
        Ok(Self::from_basic(BasicVariety::new(m, BTreeSet::new(), BTreeSet::new(), gens)?))
    }

    /// `V(s,t,p) = Z(X1..Xs, Y_{s-p+1}..Y_{s-p+t})`.
    pub fn v_stp(m: usize, s: usize, t: usize, p: usize) -> Result<Self> {
        if !(s <= m && t <= m && p <= s && p <= t && s + t - p <= m) {
            return Err(Error::InvalidParameters(format!(
                "V({},{},{}) needs m ≥ s,t ≥ p ≥ 0 and s+t-p ≤ m (m = {})",
                s, t, p, m
            )));
        }
        let xs: Vec<usize> = (0..s).collect();
        let ys: Vec<usize> = (s - p..s - p + t).collect();
        Self::coordinate(m, &xs, &ys)
    }

    /// `Σ_m V(s,t,p)`.
    pub fn sat_v_stp(m: usize, s: usize, t: usize, p: usize) -> Result<Self> {
        Ok(Self::v_stp(m, s, t, p)?.sigma_saturate())
    }

    fn normalized(m: usize, comps: Vec<BasicVariety>) -> Self {
        let mut all: Vec<BasicVariety> = comps.into_iter().flat_map(|c| c.normalize()).collect();
        all.sort();
        all.dedup();
        let n = all.len();
        let mut keep = vec![true; n];
        for i in 0..n {
            for j in 0..n {
                if i == j || !keep[j] {
                    continue;
                }
                if all[i].cheap_subset_of(&all[j]) == Some(true) {
                    keep[i] = false;
                    break;
                }
            }
        }
        let components = all.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect();
        Variety { m, components }
    }

    fn check_m(&self, other: &Variety) -> Result<()> {
        if self.m != other.m {
            return Err(Error::VarMismatch(2 * self.m, 2 * other.m));
        }
        Ok(())
    }

    pub fn union(&self, other: &Variety) -> Result<Variety> {
        self.check_m(other)?;
        let mut comps = self.components.clone();
        comps.extend(other.components.iter().cloned());
        Ok(Self::normalized(self.m, comps))
    }

    pub fn intersect(&self, other: &Variety) -> Result<Variety> {
        self.check_m(other)?;
        let mut comps = Vec::new();
        for a in &self.components {
            for b in &other.components {
                let mut polys = a.polys.clone();
                polys.extend(b.polys.iter().cloned());
                comps.push(BasicVariety {
                    m: self.m,
                    coords_x: a.coords_x.union(&b.coords_x).copied().collect(),
                    coords_y: a.coords_y.union(&b.coords_y).copied().collect(),
                    polys,
                });
            }
        }
        Ok(Self::normalized(self.m, comps))
    }

    /// `Xj -> X_perm[j]`, `Yj -> Y_perm[j]` on every component.
    pub fn sigma_act(&self, perm: &[usize]) -> Variety {
        let comps = self.components.iter().map(|c| c.map(|j| perm[j], |p| p.sigma_act(perm), false)).collect();
        Self::normalized(self.m, comps)
    }

    /// Union of all `m!` permuted copies.
    pub fn sigma_saturate(&self) -> Variety {
        let mut comps = Vec::new();
        for perm in permutations(self.m) {
            for c in &self.components {
                comps.push(c.map(|j| perm[j], |p| p.sigma_act(&perm), false));
            }
        }
        Self::normalized(self.m, comps)
    }

    /// Image under `(X, Y) -> (Y, -X)`, i.e. `g(X, Y) ↦ g(Y, -X)` on generators.
    pub fn tau_twist(&self) -> Variety {
        let m = self.m;
        let images: Vec<Poly> = (0..2 * m).map(|i| if i < m { Poly::yvar(m, i) } else { -Poly::xvar(m, i - m) }).collect();
        let comps = self.components.iter().map(|c| c.map(|j| j, |p| p.compose(&images), true)).collect();
        Self::normalized(m, comps)
    }

    /// `B ⊆ A` where `self = A`.
    pub fn contains(&self, b: &Variety) -> Result<bool> {
        self.contains_with(b, Strategy::Fast)
    }

    pub fn contains_with(&self, b: &Variety, strategy: Strategy) -> Result<bool> {
        self.check_m(b)?;
        for comp in &b.components {
            if !self.contains_component(comp, strategy)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn contains_component(&self, b: &BasicVariety, strategy: Strategy) -> Result<bool> {
        for a in &self.components {
            if b.subset_of(a, strategy)? {
                return Ok(true);
            }
        }
        // An irreducible set inside a finite union lies in one member.
        if b.is_prime() || self.components.len() <= 1 {
            return Ok(false);
        }
        let comps: Vec<&BasicVariety> = self.components.iter().collect();
        product_in_radical(b, &comps, Poly::one(2 * self.m), strategy)
    }

    pub fn equal(&self, other: &Variety) -> Result<bool> {
        self.equal_with(other, Strategy::Fast)
    }

    pub fn equal_with(&self, other: &Variety, strategy: Strategy) -> Result<bool> {
        if self == other {
            return Ok(true);
        }
        Ok(self.contains_with(other, strategy)? && other.contains_with(self, strategy)?)
    }

    /// Contained in the origin: empty after passing to `Proj`.
    pub fn is_proj_empty(&self) -> Result<bool> {
        Variety::origin(self.m).contains(self)
    }

    pub fn point_member(&self, x: &[Rational]) -> Result<bool> {
        if x.len() != 2 * self.m {
            return Err(Error::VarMismatch(2 * self.m, x.len()));
        }
        for c in &self.components {
            if c.point_member(x)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn to_json(&self) -> VarietyJson {
        VarietyJson { m: self.m, components: self.components.iter().map(|c| c.to_json()).collect() }
    }

    pub fn from_json(j: &VarietyJson) -> Result<Variety> {
        let mut comps = Vec::new();
        for c in &j.components {
            let idx = |v: &Vec<usize>| -> Result<BTreeSet<usize>> {
                v.iter()
                    .map(|&k| {
                        if k == 0 || k > j.m {
                            Err(Error::Json(format!("coordinate index {} out of range 1..{}", k, j.m)))
                        } else {
                            Ok(k - 1)
                        }
                    })
                    .collect()
            };
            let mut polys = Vec::new();
            for p in &c.polys {
                if p.m != j.m {
                    return Err(Error::Json("polynomial m differs from variety m".into()));
                }
                polys.push(Poly::from_json(p)?);
            }
            comps.push(BasicVariety::new(j.m, idx(&c.coords_x)?, idx(&c.coords_y)?, polys)?);
        }
        Ok(Self::normalized(j.m, comps))
    }
}

/// `Z(I_b) ⊆ ⋃ Z(I_k)` iff every product of one generator per `I_k` lies in
/// `√I_b`. Depth-first over the components, pruning once a partial product
/// is already in the radical.
fn product_in_radical(b: &BasicVariety, comps: &[&BasicVariety], partial: Poly, strategy: Strategy) -> Result<bool> {
    if !partial.is_constant() && b.radical_contains(&partial, strategy)? {
        return Ok(true);
    }
    let Some((first, rest)) = comps.split_first() else {
        return Ok(false);
    };
    for g in first.gens() {
        if !product_in_radical(b, rest, &partial * &g, strategy)? {
            return Ok(false);
        }
    }
    Ok(true)
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(" ∪ "))
    }
}

/// All permutations of `0..m` in lexicographic order.
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..m).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..m).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Points of the grid `{-1, 0, 1}^{2m}`.
pub fn sample_grid(m: usize) -> Vec<Vec<Rational>> {
    let n = 2 * m;
    let mut out = Vec::new();
    for mut k in 0..3usize.pow(n as u32) {
        let mut pt = Vec::with_capacity(n);
        for _ in 0..n {
            pt.push(rat((k % 3) as i64 - 1));
            k /= 3;
        }
        out.push(pt);
    }
    out
}

// ---------------------------------------------------------------------------
// Poset of saturated coordinate subspaces.

/// The class of `Σ_m Z(X_A, Y_B)`: `s = |A|`, `t = |B|`, `p = |A ∩ B|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CoordClass {
    pub s: usize,
    pub t: usize,
    pub p: usize,
}

impl CoordClass {
    /// Representative coordinate sets of `V(s,t,p)`.
    pub fn representative(&self) -> (Vec<usize>, Vec<usize>) {
        ((0..self.s).collect(), (self.s - self.p..self.s - self.p + self.t).collect())
    }

    pub fn label(&self) -> String {
        format!("ΣV({},{},{})", self.s, self.t, self.p)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CoordinatePoset {
    pub m: usize,
    pub classes: Vec<CoordClass>,
    /// Number of coordinate subspaces in each class.
    pub orbit_sizes: Vec<usize>,
    /// `le[i][j]`: the saturation of class `i` is contained in that of class `j`.
    pub le: Vec<Vec<bool>>,
    /// Covering pairs `(i, j)`: `i < j` with nothing strictly between.
    pub hasse: Vec<(usize, usize)>,
}

/// Enumerates all `4^m` coordinate subspaces, groups them into `Σ_m`-classes
/// and orders the classes by containment of saturations, testing every
/// permutation.
pub fn coordinate_poset(m: usize) -> Result<CoordinatePoset> {
    if m > 6 {
        return Err(Error::Budget(0));
    }
    let mut classes: Vec<CoordClass> = Vec::new();
    let mut sizes: Vec<usize> = Vec::new();
    for a_mask in 0u32..(1 << m) {
        for b_mask in 0u32..(1 << m) {
            let c = CoordClass {
                s: a_mask.count_ones() as usize,
                t: b_mask.count_ones() as usize,
                p: (a_mask & b_mask).count_ones() as usize,
            };
            match classes.iter().position(|x| *x == c) {
                Some(i) => sizes[i] += 1,
                None => {
                    classes.push(c);
                    sizes.push(1);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by_key(|&i| (classes[i].s + classes[i].t, classes[i].s, classes[i].p));
    let classes: Vec<CoordClass> = order.iter().map(|&i| classes[i]).collect();
    let orbit_sizes: Vec<usize> = order.iter().map(|&i| sizes[i]).collect();
    let perms = permutations(m);
    let n = classes.len();
    let mut le = vec![vec![false; n]; n];
    for i in 0..n {
        let (ai, bi) = classes[i].representative();
        for j in 0..n {
            let (aj, bj) = classes[j].representative();
            // Z(X_ai, Y_bi) ⊆ σ Z(X_aj, Y_bj) iff σ(aj) ⊆ ai and σ(bj) ⊆ bi.
            le[i][j] = perms.iter().any(|s| aj.iter().all(|x| ai.contains(&s[*x])) && bj.iter().all(|y| bi.contains(&s[*y])));
        }
    }
    let mut hasse = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && le[i][j] && !(0..n).any(|k| k != i && k != j && le[i][k] && le[k][j]) {
                hasse.push((i, j));
            }
        }
    }
    Ok(CoordinatePoset { m, classes, orbit_sizes, le, hasse })
}

impl CoordinatePoset {
    pub fn to_dot(&self) -> String {
        let mut s = format!("digraph coordinate_poset_m{} {{\n  rankdir=BT;\n", self.m);
        for (i, c) in self.classes.iter().enumerate() {
            s.push_str(&format!("  n{} [label=\"{}\"];\n", i, c.label()));
        }
        for (i, j) in &self.hasse {
            s.push_str(&format!("  n{} -> n{};\n", i, j));
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    fn z(m: usize, gens: &[&str]) -> Variety {
        Variety::zero_set(m, gens.iter().map(|s| parse_poly(s, m).unwrap()).collect()).unwrap()
    }

    fn sat(m: usize, s: usize, t: usize, p: usize) -> Variety {
        Variety::sat_v_stp(m, s, t, p).unwrap()
    }

    #[test]
    fn v_stp_examples() {
        assert_eq!(Variety::v_stp(2, 1, 1, 0).unwrap(), z(2, &["X1", "Y2"]));
        assert_eq!(Variety::v_stp(2, 2, 1, 1).unwrap(), z(2, &["X1", "X2", "Y2"]));
        assert!(Variety::v_stp(2, 2, 2, 2).unwrap().is_proj_empty().unwrap());
        assert!(Variety::v_stp(2, 2, 1, 0).is_err());
        assert!(Variety::v_stp(2, 1, 1, 2).is_err());
    }

    #[test]
    fn intersections_and_unions() {
        assert_eq!(z(1, &["X1"]).intersect(&z(1, &["Y1"])).unwrap(), z(1, &["X1", "Y1"]));
        let a = z(2, &["X1"]).union(&z(2, &["X2"])).unwrap();
        let b = z(2, &["Y1"]).union(&z(2, &["Y2"])).unwrap();
        assert_eq!(a.intersect(&b).unwrap().components().len(), 4);
        let w = Variety::whole(2);
        assert_eq!(a.intersect(&w).unwrap(), a);
        assert_eq!(a.union(&Variety::empty(2)).unwrap(), a);
        assert_eq!(z(1, &["X1", "Y1"]).union(&z(1, &["X1"])).unwrap(), z(1, &["X1"]));
    }

    #[test]
    fn saturation() {
        assert_eq!(z(2, &["X1"]).sigma_saturate(), z(2, &["X1"]).union(&z(2, &["X2"])).unwrap());
        let d = z(2, &["Z1 - Z2"]);
        assert_eq!(d.sigma_saturate(), d);
        let s = sat(3, 1, 1, 0);
        assert_eq!(s.sigma_saturate(), s);
    }

    #[test]
    fn containment_examples() {
        assert!(z(1, &["X1"]).contains(&z(1, &["X1", "Y1"])).unwrap());
        assert!(!z(1, &["Y1"]).contains(&z(1, &["X1"])).unwrap());
        // The two classes are incomparable; (0,1;0,1) lies in Z(X1,Y1) only.
        assert!(!sat(2, 1, 1, 0).contains(&sat(2, 1, 1, 1)).unwrap());
        assert!(!sat(2, 1, 1, 1).contains(&sat(2, 1, 1, 0)).unwrap());
        let w: Vec<Rational> = [0, 1, 0, 1].iter().map(|&x| rat(x)).collect();
        assert!(sat(2, 1, 1, 1).point_member(&w).unwrap());
        assert!(!sat(2, 1, 1, 0).point_member(&w).unwrap());
        assert!(sat(2, 1, 0, 0).contains(&sat(2, 1, 1, 1)).unwrap());
        let lhs = sat(2, 1, 0, 0).intersect(&sat(2, 0, 1, 0)).unwrap();
        let rhs = sat(2, 1, 1, 0).union(&sat(2, 1, 1, 1)).unwrap();
        assert!(lhs.equal(&rhs).unwrap());
        assert!(z(2, &["Y1"]).union(&z(2, &["Y2"])).unwrap().equal(&sat(2, 0, 1, 0)).unwrap());
    }

    #[test]
    fn monomial_generators_split() {
        let v = z(2, &["Z1*Z2"]);
        assert_eq!(v.components().len(), 4);
        assert!(v.equal(&sat(2, 1, 0, 0).union(&sat(2, 0, 1, 0)).unwrap()).unwrap());
    }

    #[test]
    fn non_prime_component_in_union() {
        // Z(Z1 Z2 - ... ) style: Z((Z1 - Z2)(Z1 + Z2)) is the union of two primes.
        let v = z(2, &["Z1^2 - Z2^2"]);
        let u = z(2, &["Z1 - Z2"]).union(&z(2, &["Z1 + Z2"])).unwrap();
        assert!(v.equal(&u).unwrap());
        assert!(v.equal_with(&u, Strategy::Groebner).unwrap());
        assert!(!z(2, &["Z1 - Z2"]).contains(&v).unwrap());
    }

    #[test]
    fn points() {
        let pt = |v: &[i64]| v.iter().map(|&x| rat(x)).collect::<Vec<_>>();
        assert!(z(2, &["X2", "Y1"]).point_member(&pt(&[1, 0, 0, 1])).unwrap());
        assert!(z(2, &["Z1 - Z2"]).point_member(&pt(&[1, 1, 1, 1])).unwrap());
        assert!(sat(2, 1, 1, 0).point_member(&pt(&[0, 0, 0, 0])).unwrap());
        assert!(!Variety::empty(2).point_member(&pt(&[0, 0, 0, 0])).unwrap());
    }

    #[test]
    fn tau_twist_swaps_coordinates() {
        assert_eq!(z(1, &["X1"]).tau_twist(), z(1, &["Y1"]));
        let v = z(2, &["X1", "Z1 - 2*Z2"]);
        assert!(v.tau_twist().tau_twist().equal(&v).unwrap());
    }

    #[test]
    fn coordinate_poset_small() {
        let p1 = coordinate_poset(1).unwrap();
        assert_eq!(p1.classes.len(), 4);
        assert_eq!(p1.hasse.len(), 4);
        let p2 = coordinate_poset(2).unwrap();
        let idx = |s, t, p| p2.classes.iter().position(|c| *c == CoordClass { s, t, p }).unwrap();
        assert!(!p2.le[idx(1, 1, 1)][idx(1, 1, 0)]);
        assert!(!p2.le[idx(1, 1, 0)][idx(1, 1, 1)]);
        assert!(p2.hasse.contains(&(idx(1, 1, 1), idx(1, 0, 0))));
        assert!(p2.hasse.contains(&(idx(1, 1, 0), idx(1, 0, 0))));
        assert!(p2.to_dot().contains("ΣV(1,1,1)"));
    }

    #[test]
    fn json_roundtrip() {
        let v = sat(2, 1, 1, 0).union(&z(2, &["Z1 - Z2"])).unwrap();
        let j = v.to_json();
        assert_eq!(Variety::from_json(&j).unwrap(), v);
    }

    #[test]
    fn rejects_inhomogeneous_generators() {
        let g = parse_poly("X1 + Y1", 1).unwrap();
        assert!(matches!(Variety::zero_set(1, vec![g]), Err(Error::NotHomogeneous(_))));
        let g = parse_poly("X1 + X1^2", 1).unwrap();
        assert!(Variety::zero_set(1, vec![g]).is_err());
    }
}
