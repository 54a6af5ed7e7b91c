//! The set-theoretic identities behind the realization of every `Σ_m V(s,t,p)`
//! and of the mixed varieties `Σ_m (V(s,t,p) ∩ Z(g))`, checked exactly.

use super::{permutations, Strategy, Variety};
use crate::error::{Error, Result};
use crate::field::rat;
use crate::polyring::{Monomial, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeSet;

/// Whether a failing check is a defect or an observation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Role {
    /// Must hold for every parameter value.
    Required,
    /// A competing reading of the same statement; the outcome is reported.
    Recorded,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub anchor: &'static str,
    pub m: usize,
    pub s: usize,
    pub t: usize,
    pub p: usize,
    /// Extra parameters such as the weight-zero generators.
    pub detail: String,
    pub role: Role,
    pub holds: bool,
    /// Result of re-running the comparison with [`Strategy::Groebner`].
    pub groebner: Option<bool>,
}

/// Elementary symmetric polynomial `e_k(Z1, ..., Zm)`.
pub fn elementary_z(m: usize, k: usize) -> Poly {
    let mut terms = Vec::new();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize == k {
            let e: Vec<u32> = (0..m).map(|j| (mask >> j) & 1).collect();
            terms.push((Monomial::from_exps(e), rat(1)));
        }
    }
    Poly::from_z_poly(&Poly::from_terms(m, terms))
}

/// `Z_{a} Z_{a+1} ... Z_{m-1}` (0-based start).
fn z_tail_product(m: usize, start: usize) -> Poly {
    (start..m).fold(Poly::one(2 * m), |acc, j| &acc * &Poly::zvar(m, j))
}

fn sat(m: usize, s: usize, t: usize, p: usize) -> Result<Variety> {
    Variety::sat_v_stp(m, s, t, p)
}

struct Ctx {
    cross_check_up_to: usize,
    out: Vec<IdentityCheck>,
}

impl Ctx {
    #[allow(clippy::too_many_arguments)]
    fn check(
        &mut self,
        name: &'static str,
        anchor: &'static str,
        (m, s, t, p): (usize, usize, usize, usize),
        detail: String,
        role: Role,
        lhs: &Variety,
        rhs: &Variety,
    ) -> Result<()> {
        let holds = lhs.equal(rhs)?;
        let groebner = if m <= self.cross_check_up_to { Some(lhs.equal_with(rhs, Strategy::Groebner)?) } else { None };
        self.out.push(IdentityCheck { name, anchor, m, s, t, p, detail, role, holds, groebner });
        Ok(())
    }
}

/// Runs every identity for `1 ≤ m ≤ max_m`. Weight-zero generators for the
/// mixed case are drawn from `seed`. Comparisons for `m ≤ cross_check_up_to`
/// are repeated through the full-ring radical test.
pub fn calculus_suite(max_m: usize, seed: u64, cross_check_up_to: usize) -> Result<Vec<IdentityCheck>> {
    let mut ctx = Ctx { cross_check_up_to, out: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for m in 1..=max_m {
        no_overlap_step(&mut ctx, m)?;
        overlap(&mut ctx, m)?;
        mixed(&mut ctx, m, &mut rng)?;
    }
    Ok(ctx.out)
}

/// The inductive step for `Σ_m V(s,t,0)`, `t ≥ 1`, `s + t ≤ m`.
fn no_overlap_step(ctx: &mut Ctx, m: usize) -> Result<()> {
    for t in 1..=m {
        for s in 0..=m - t {
            let key = (m, s, t, 0);
            let prev = sat(m, s, t - 1, 0)?;
            let target = sat(m, s, t, 0)?;

            let u = prev.intersect(&sat(m, 0, t, 0)?)?;
            let mut u_rhs = target.clone();
            if s >= 1 {
                u_rhs = u_rhs.union(&sat(m, s, t, 1)?)?;
            }
            ctx.check(
                "no_overlap_U",
                "ΣV(s,t-1,0) ∩ ΣV(0,t,0) = ΣV(s,t,0) ∪ ΣV(s,t,1)",
                key,
                String::new(),
                Role::Required,
                &u,
                &u_rhs,
            )?;

            let k = m - s - t + 1;
            let ek = Variety::zero_set(m, vec![elementary_z(m, k)])?;
            let w = prev.intersect(&ek)?;
            let w_rhs = target.union(&sat(m, s + 1, t - 1, 0)?)?;
            ctx.check(
                "no_overlap_W",
                "ΣV(s,t-1,0) ∩ Z(e_{m-s-t+1}(Z)) = ΣV(s,t,0) ∪ ΣV(s+1,t-1,0)",
                key,
                format!("k = {}", k),
                Role::Required,
                &w,
                &w_rhs,
            )?;

            let tail = Variety::zero_set(m, vec![z_tail_product(m, s + t - 1)])?.sigma_saturate();
            ctx.check(
                "tail_product_saturation",
                "ΣZ(Z_{s+t} ⋯ Z_m) = Z(e_{m-s-t+1}(Z))",
                key,
                format!("k = {}", k),
                Role::Recorded,
                &tail,
                &ek,
            )?;
            ctx.check(
                "no_overlap_W_tail_reading",
                "ΣV(s,t-1,0) ∩ ΣZ(Z_{s+t} ⋯ Z_m) = ΣV(s,t,0) ∪ ΣV(s+1,t-1,0)",
                key,
                format!("k = {}", k),
                Role::Recorded,
                &prev.intersect(&tail)?,
                &w_rhs,
            )?;

            let uw = u.intersect(&w)?;
            ctx.check("no_overlap_UW_saturated", "U ∩ W = ΣV(s,t,0)", key, String::new(), Role::Required, &uw, &target)?;
            ctx.check(
                "no_overlap_UW_unsaturated",
                "U ∩ W = V(s,t,0)",
                key,
                String::new(),
                Role::Recorded,
                &uw,
                &Variety::v_stp(m, s, t, 0)?,
            )?;
        }
    }
    Ok(())
}

/// `Σ_m V(s,t,p) = Σ_m V(s,t-p,0) ∩ Σ_m V(0,t,0) ∩ Σ_m V(p,p,p)` for `s, t ≥ p > 0`.
fn overlap(ctx: &mut Ctx, m: usize) -> Result<()> {
    for p in 1..=m {
        for s in p..=m {
            for t in p..=m {
                if s + t - p > m {
                    continue;
                }
                let lhs = sat(m, s, t, p)?;
                let rhs = sat(m, s, t - p, 0)?.intersect(&sat(m, 0, t, 0)?)?.intersect(&sat(m, p, p, p)?)?;
                ctx.check(
                    "overlap_decomposition",
                    "ΣV(s,t,p) = ΣV(s,t-p,0) ∩ ΣV(0,t,0) ∩ ΣV(p,p,p)",
                    (m, s, t, p),
                    String::new(),
                    Role::Required,
                    &lhs,
                    &rhs,
                )?;
            }
        }
    }
    Ok(())
}

/// Random weight-zero forms (linear or quadratic in `Z`) in the indices not
/// touched by `V(s,t,p)`.
fn random_free_forms(m: usize, first_free: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    if first_free >= m {
        return Vec::new();
    }
    let free: Vec<usize> = (first_free..m).collect();
    let r = rng.gen_range(1..=2);
    let mut out = Vec::new();
    while out.len() < r {
        let quadratic = free.len() >= 2 && rng.gen_bool(0.4);
        let mut g = Poly::zero(2 * m);
        for (i, &a) in free.iter().enumerate() {
            if quadratic {
                for &b in &free[i..] {
                    let c = rat(rng.gen_range(-2..=2));
                    g = &g + &(&Poly::zvar(m, a) * &Poly::zvar(m, b)).scale(&c);
                }
            } else {
                g = &g + &Poly::zvar(m, a).scale(&rat(rng.gen_range(-2..=2)));
            }
        }
        if !g.is_zero() {
            out.push(g);
        }
    }
    out
}

/// `Σ_m(V(s,t,p) ∩ Z(g)) = U ∩ W ∩ Y` with `U = Σ_m(V(s,t-p,0) ∩ Z(g))`,
/// `W = Σ_m V(p,p,p)` and `Y = Σ_m V(0,t,0)`.
fn mixed(ctx: &mut Ctx, m: usize, rng: &mut ChaCha8Rng) -> Result<()> {
    for p in 0..=m {
        for s in p..=m {
            for t in p..=m {
                if s + t - p > m {
                    continue;
                }
                let g = random_free_forms(m, s + t - p, rng);
                let zg = Variety::zero_set(m, g.clone())?;
                let lhs = Variety::v_stp(m, s, t, p)?.intersect(&zg)?.sigma_saturate();
                let u = Variety::v_stp(m, s, t - p, 0)?.intersect(&zg)?.sigma_saturate();
                let rhs = u.intersect(&sat(m, p, p, p)?)?.intersect(&sat(m, 0, t, 0)?)?;
                let detail = g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
                ctx.check(
                    "mixed_realization",
                    "Σ(V(s,t,p) ∩ Z(g)) = Σ(V(s,t-p,0) ∩ Z(g)) ∩ ΣV(p,p,p) ∩ ΣV(0,t,0)",
                    (m, s, t, p),
                    format!("g = [{}]", detail),
                    Role::Required,
                    &lhs,
                    &rhs,
                )?;
            }
        }
    }
    Ok(())
}

/// Multiplicity vectors of length `r` summing to `q`.
fn compositions(r: usize, q: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return if q == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=q {
        for mut rest in compositions(r - 1, q - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The finite `Σ_m`-stable set `Y = {σ.(g_1^{m_1} ⋯ g_r^{m_r}) : σ ∈ Γ, Σ m_i = q}`
/// with `q = m!` and `Γ` the tuples of pairwise distinct permutations, so
/// that `Z(Y) = Σ_m Z(g_1, ..., g_r)`. Entries are made monic and deduplicated.
pub fn y_set(m: usize, gens: &[Poly]) -> Result<Vec<Poly>> {
    let perms = permutations(m);
    let q = perms.len();
    let orderings = permutations(q);
    let monomials = compositions(gens.len(), q);
    let cost = orderings.len().saturating_mul(monomials.len());
    if cost > crate::budget::work_budget() {
        return Err(Error::Budget(cost));
    }
    let mut out = BTreeSet::new();
    for exps in &monomials {
        let factors: Vec<&Poly> = exps.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(&gens[i], k)).collect();
        for order in &orderings {
            let product = factors.iter().zip(order).fold(Poly::one(2 * m), |acc, (g, &o)| &acc * &g.sigma_act(&perms[o]));
            if !product.is_zero() {
                out.insert(product.monic());
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Replaces each `Σ_m`-orbit `{y_1, ..., y_s}` of `Y` by the elementary
/// symmetric polynomials in `y_1, ..., y_s`, giving `Σ_m T`-invariant
/// generators with the same zero set.
pub fn symmetrize_y_set(m: usize, ys: &[Poly]) -> Vec<Poly> {
    let perms = permutations(m);
    let mut seen: BTreeSet<Poly> = BTreeSet::new();
    let mut out = BTreeSet::new();
    for y in ys {
        if seen.contains(y) {
            continue;
        }
        let orbit: BTreeSet<Poly> = perms.iter().map(|p| y.sigma_act(p)).collect();
        seen.extend(orbit.iter().map(|p| p.monic()));
        // e_k of the orbit from the product of (1 + y_i T).
        let mut e = vec![Poly::one(2 * m)];
        for yi in &orbit {
            let mut next = e.clone();
            next.push(Poly::zero(2 * m));
            for k in 0..e.len() {
                next[k + 1] = &next[k + 1] + &(&e[k] * yi);
            }
            e = next;
        }
        out.extend(e.into_iter().skip(1).filter(|p| !p.is_zero()).map(|p| p.monic()));
    }
    out.into_iter().collect()
}

/// The weight-zero reduction for one generator list.
#[derive(Clone, Debug, Serialize)]
pub struct YSetCheck {
    pub m: usize,
    pub gens: Vec<String>,
    pub y_size: usize,
    pub y_tilde_size: usize,
    /// `Z(Y) = Σ_m Z(g)`.
    pub y_holds: bool,
    /// `Z(Ỹ) = Z(Y)`.
    pub y_tilde_holds: bool,
    /// Every element of `Ỹ` is `Σ_m`-invariant of torus weight zero.
    pub invariant: bool,
}

pub fn y_set_check(m: usize, gens: &[Poly]) -> Result<YSetCheck> {
    let ys = y_set(m, gens)?;
    let tilde = symmetrize_y_set(m, &ys);
    let target = Variety::zero_set(m, gens.to_vec())?.sigma_saturate();
    let zy = Variety::zero_set(m, ys.clone())?;
    let zt = Variety::zero_set(m, tilde.clone())?;
    let perms = permutations(m);
    let invariant = tilde.iter().all(|q| q.to_z_poly().is_some() && perms.iter().all(|p| &q.sigma_act(p) == q));
    Ok(YSetCheck {
        m,
        gens: gens.iter().map(|g| g.to_string()).collect(),
        y_size: ys.len(),
        y_tilde_size: tilde.len(),
        y_holds: zy.equal(&target)?,
        y_tilde_holds: zt.equal(&zy)?,
        invariant,
    })
}

/// Random weight-zero homogeneous generator lists at `m`: one or two forms
/// of `Z`-degree one or two.
pub fn random_weight_zero_gens(m: usize, rng: &mut impl Rng) -> Vec<Poly> {
    let r = rng.gen_range(1..=2);
    let degree = rng.gen_range(1..=2);
    let mut out = Vec::new();
    while out.len() < r {
        let mut g = Poly::zero(2 * m);
        for a in 0..m {
            if degree == 1 {
                g = &g + &Poly::zvar(m, a).scale(&rat(rng.gen_range(-2..=2)));
            } else {
                for b in a..m {
                    g = &g + &(&Poly::zvar(m, a) * &Poly::zvar(m, b)).scale(&rat(rng.gen_range(-2..=2)));
                }
            }
        }
        if !g.is_zero() {
            out.push(g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_polynomials() {
        assert_eq!(elementary_z(2, 1).to_string(), "X1*Y1 + X2*Y2");
        assert_eq!(elementary_z(2, 2), &Poly::zvar(2, 0) * &Poly::zvar(2, 1));
    }

    #[test]
    fn suite_at_m2() {
        let checks = calculus_suite(2, 1, 2).unwrap();
        for c in &checks {
            if c.role == Role::Required {
                assert!(c.holds, "{:?}", c);
            }
            if let Some(g) = c.groebner {
                assert_eq!(g, c.holds, "{:?}", c);
            }
        }
    }

    #[test]
    fn y_set_at_m2() {
        let g = vec![&Poly::zvar(2, 0) - &Poly::zvar(2, 1).scale(&rat(2))];
        let ys = y_set(2, &g).unwrap();
        assert_eq!(ys.len(), 1);
        let c = y_set_check(2, &g).unwrap();
        assert!(c.y_holds && c.y_tilde_holds && c.invariant, "{:?}", c);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let c = y_set_check(2, &random_weight_zero_gens(2, &mut rng)).unwrap();
            assert!(c.y_holds && c.y_tilde_holds && c.invariant, "{:?}", c);
        }
    }

    #[test]
    fn y_set_at_m1_is_the_generators() {
        let g = vec![Poly::zvar(1, 0)];
        assert_eq!(y_set(1, &g).unwrap(), g);
    }
}
