//! Buchberger's algorithm with the product and chain criteria, normal forms,
//! and radical membership through the Rabinowitsch trick.

use crate::budget::work_budget;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::polyring::{Monomial, Polynomial};
use std::collections::{BTreeSet, HashSet};

/// A reduced Gröbner basis for grevlex: monic, sorted by leading monomial
/// (largest first), no leading monomial dividing another term.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<F> {
    nvars: usize,
    basis: Vec<Polynomial<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn basis(&self) -> &[Polynomial<F>] {
        &self.basis
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn normal_form(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        if p.nvars() != self.nvars {
            return Err(Error::VarMismatch(self.nvars, p.nvars()));
        }
        Ok(normal_form(p, &self.basis))
    }

    pub fn contains(&self, p: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// The ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }
}

/// Full reduction of `p` by `divisors` (leading coefficients need not be one).
pub fn normal_form<F: Field>(p: &Polynomial<F>, divisors: &[Polynomial<F>]) -> Polynomial<F> {
    let n = p.nvars();
    let mut rest = p.clone();
    let mut rem: Vec<(Monomial, F)> = Vec::new();
    'outer: while let Some((m, c)) = rest.pop_leading() {
        for g in divisors {
            let lm = g.leading_monomial().expect("nonzero divisor");
            if let Some(q) = lm.quotient_of(&m) {
                let factor = -(c / g.leading_coeff().unwrap().clone());
                // The leading terms cancel; subtract the tail only.
                let mut tail = g.clone();
                tail.pop_leading();
                rest = &rest + &tail.mul_term(&q, &factor);
                continue 'outer;
            }
        }
        rem.push((m, c));
    }
    Polynomial::from_sorted_terms(n, rem)
}

fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let lf = f.leading_monomial().unwrap();
    let lg = g.leading_monomial().unwrap();
    let l = lf.lcm(lg);
    let a = f.mul_term(&lf.quotient_of(&l).unwrap(), &g.leading_coeff().unwrap().clone());
    let b = g.mul_term(&lg.quotient_of(&l).unwrap(), &f.leading_coeff().unwrap().clone());
    a - b
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `nvars` variables.
pub fn buchberger<F: Field>(nvars: usize, gens: &[Polynomial<F>]) -> Result<GroebnerBasis<F>> {
    run(nvars, gens)
}

fn unit_basis<F: Field>(nvars: usize) -> GroebnerBasis<F> {
    GroebnerBasis { nvars, basis: vec![Polynomial::one(nvars)] }
}

fn run<F: Field>(nvars: usize, gens: &[Polynomial<F>]) -> Result<GroebnerBasis<F>> {
    for g in gens {
        if g.nvars() != nvars {
            return Err(Error::VarMismatch(nvars, g.nvars()));
        }
    }
    let budget = work_budget();
    let mut g: Vec<Polynomial<F>> = Vec::new();
    // Pending pairs keyed by (lcm, i, j) so the smallest lcm is processed first.
    let mut queue: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let mut inputs: Vec<Polynomial<F>> = gens.iter().filter(|p| !p.is_zero()).map(|p| p.monic()).collect();
    inputs.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    for p in inputs {
        let r = normal_form(&p, &g);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(unit_basis(nvars));
        }
        add_element(&mut g, &mut queue, &mut pending, r.monic());
    }

    let mut processed = 0usize;
    while let Some(key) = queue.iter().next().cloned() {
        queue.remove(&key);
        let (lcm, i, j) = key;
        pending.remove(&(i, j));
        processed += 1;
        if processed > budget {
            return Err(Error::Budget(processed - 1));
        }
        if chain_skip(&g, &pending, &lcm, i, j) {
            continue;
        }
        let s = s_polynomial(&g[i], &g[j]);
        let r = normal_form(&s, &g);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(unit_basis(nvars));
        }
        add_element(&mut g, &mut queue, &mut pending, r.monic());
    }
    Ok(GroebnerBasis { nvars, basis: reduce_basis(g) })
}

fn add_element<F: Field>(
    g: &mut Vec<Polynomial<F>>,
    queue: &mut BTreeSet<(Monomial, usize, usize)>,
    pending: &mut HashSet<(usize, usize)>,
    p: Polynomial<F>,
) {
    let k = g.len();
    let lk = p.leading_monomial().unwrap().clone();
    g.push(p);
    for i in 0..k {
        let li = g[i].leading_monomial().unwrap();
        if li.coprime(&lk) {
            continue;
        }
        queue.insert((li.lcm(&lk), i, k));
        pending.insert((i, k));
    }
}

/// Skips `(i, j)` when some third element's leading monomial divides the lcm
/// and both pairs with that element have already been handled.
fn chain_skip<F: Field>(g: &[Polynomial<F>], pending: &HashSet<(usize, usize)>, lcm: &Monomial, i: usize, j: usize) -> bool {
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    (0..g.len()).any(|k| {
        k != i
            && k != j
            && g[k].leading_monomial().unwrap().divides(lcm)
            && !pending.contains(&key(i, k))
            && !pending.contains(&key(j, k))
    })
}

fn reduce_basis<F: Field>(mut g: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    g.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    let mut minimal: Vec<Polynomial<F>> = Vec::new();
    for p in g {
        let lm = p.leading_monomial().unwrap();
        if minimal.iter().any(|q| q.leading_monomial().unwrap().divides(lm)) {
            continue;
        }
        minimal.push(p);
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial<F>> = minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q.clone()).collect();
        out.push(normal_form(&minimal[i], &others).monic());
    }
    out.sort_by(|a, b| b.leading_monomial().cmp(&a.leading_monomial()));
    out
}

/// A finitely generated ideal; generators are kept as given (zeros dropped).
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal<F> {
    nvars: usize,
    gens: Vec<Polynomial<F>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(nvars: usize, gens: Vec<Polynomial<F>>) -> Result<Self> {
        for g in &gens {
            if g.nvars() != nvars {
                return Err(Error::VarMismatch(nvars, g.nvars()));
            }
        }
        Ok(Ideal { nvars, gens: gens.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn groebner(&self) -> Result<GroebnerBasis<F>> {
        buchberger(self.nvars, &self.gens)
    }

    pub fn contains(&self, p: &Polynomial<F>) -> Result<bool> {
        self.groebner()?.contains(p)
    }

    pub fn radical_contains(&self, p: &Polynomial<F>) -> Result<bool> {
        radical_member(p, &self.gens, self.nvars)
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        if self.nvars != other.nvars {
            return Err(Error::VarMismatch(self.nvars, other.nvars));
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(self.nvars, gens)
    }

    pub fn product(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        if self.nvars != other.nvars {
            return Err(Error::VarMismatch(self.nvars, other.nvars));
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ideal::new(self.nvars, gens)
    }
}

/// Decides `p ∈ √(gens)`: one auxiliary variable `t`, ranked above all
/// others, and the question `1 ∈ (gens, 1 - t p)`.
pub fn radical_member<F: Field>(p: &Polynomial<F>, gens: &[Polynomial<F>], nvars: usize) -> Result<bool> {
    if p.nvars() != nvars {
        return Err(Error::VarMismatch(nvars, p.nvars()));
    }
    if p.is_zero() {
        return Ok(true);
    }
    let shift: Vec<usize> = (1..=nvars).collect();
    let mut ext: Vec<Polynomial<F>> = gens.iter().map(|g| g.rename(&shift, nvars + 1)).collect();
    let t = Polynomial::var(nvars + 1, 0);
    ext.push(Polynomial::one(nvars + 1) - &t * &p.rename(&shift, nvars + 1));
    Ok(run(nvars + 1, &ext)?.is_unit())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::with_budget;
    use crate::polyring::{parse_poly, Poly};

    fn p(s: &str) -> Poly {
        parse_poly(s, 2).unwrap()
    }

    fn gb(gens: &[&str]) -> GroebnerBasis<crate::Rational> {
        let g: Vec<Poly> = gens.iter().map(|s| p(s)).collect();
        buchberger(4, &g).unwrap()
    }

    #[test]
    fn principal_monomial_ideal() {
        assert_eq!(gb(&["X1"]).basis(), &[p("X1")]);
    }

    #[test]
    fn unit_ideal_detected() {
        assert!(gb(&["X1*Y1 - 1", "X1"]).is_unit());
    }

    #[test]
    fn normal_forms() {
        let g = gb(&["X1"]);
        assert!(g.normal_form(&p("X1")).unwrap().is_zero());
        assert_eq!(g.normal_form(&p("Y1")).unwrap(), p("Y1"));
        let g = gb(&["X1^2 - Y1", "X1*Y2 - X2"]);
        let q = p("X1^3*Y2 + X2^2 + Y1");
        let r = g.normal_form(&q).unwrap();
        assert_eq!(g.normal_form(&r).unwrap(), r);
    }

    #[test]
    fn generators_reduce_to_zero() {
        let gens = ["X1*Y2 - X2*Y1", "X1^2 - Y2^2", "X2*Y1*Y2 - X1"];
        let g = gb(&gens);
        for s in gens {
            assert!(g.contains(&p(s)).unwrap(), "{}", s);
        }
    }

    #[test]
    fn twisted_cubic_basis() {
        // x z - y^2, y w - z^2, x w - y z in four variables.
        let g = gb(&["X1*Y1 - X2^2", "X2*Y2 - Y1^2", "X1*Y2 - X2*Y1"]);
        assert_eq!(g.basis().len(), 3);
    }

    #[test]
    fn radical_examples() {
        let r = |q: &str, gens: &[&str]| {
            let g: Vec<Poly> = gens.iter().map(|s| p(s)).collect();
            radical_member(&p(q), &g, 4).unwrap()
        };
        assert!(r("X1*Y1", &["X1^2*Y1^3"]));
        assert!(!r("Y1", &["X1"]));
        assert!(r("Z1 - Z2", &["Z1 - Z2", "X1"]));
        assert!(r("X1*Y2", &["X1^2", "Y2^5"]));
        assert!(!r("X1 + Y1", &["X1*Y1"]));
    }

    #[test]
    fn sums_and_products() {
        let i = Ideal::new(4, vec![p("X1")]).unwrap();
        let j = Ideal::new(4, vec![p("Y1")]).unwrap();
        assert_eq!(i.sum(&j).unwrap().gens(), &[p("X1"), p("Y1")]);
        assert_eq!(i.product(&j).unwrap().gens(), &[p("X1*Y1")]);
        assert!(i.sum(&Ideal::new(2, vec![]).unwrap()).is_err());
    }

    #[test]
    fn budget_is_reported() {
        let res = with_budget(1, || buchberger(4, &[p("X1*Y1 - X2^2"), p("X2*Y2 - Y1^2"), p("X1*Y2 - X2*Y1")]));
        assert!(matches!(res, Err(Error::Budget(_))));
    }

    #[test]
    fn generic_over_f64() {
        let x = Polynomial::<f64>::var(2, 0);
        let y = Polynomial::<f64>::var(2, 1);
        let g = buchberger(2, &[&x * &y - Polynomial::one(2), x.clone()]).unwrap();
        assert!(g.is_unit());
    }
}
