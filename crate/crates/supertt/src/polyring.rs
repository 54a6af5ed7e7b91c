//! Exact multivariate polynomials.
//!
//! The coordinate ring of the odd part of the detecting subalgebra is
//! `Q[X1..Xm, Y1..Ym]`; variable `j` is `Xj+1` for `j < m` and `Yj-m+1`
//! otherwise. The same type also serves auxiliary rings (one extra variable
//! for the radical test, the `2mn` coefficient ring of the full odd part),
//! so the number of variables is a runtime value.
//!
//! Terms are kept sorted in graded reverse-lexicographic order with
//! variable 0 largest, leading term first.

use crate::error::{Error, Result};
use crate::field::{parse_rat, rat, rat_to_string, Field, Rational};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Exponents of X1..Xm when the ring has `2m` (or `2m` plus trailing) variables.
    pub fn x_exps(&self, m: usize) -> &[u32] {
        &self.0[..m]
    }

    pub fn y_exps(&self, m: usize) -> &[u32] {
        &self.0[m..2 * m]
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (da, db) = (self.degree(), other.degree());
        if da != db {
            return da.cmp(&db);
        }
        for i in (0..self.0.len()).rev() {
            if self.0[i] != other.0[i] {
                return other.0[i].cmp(&self.0[i]);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial<F> {
    nvars: usize,
    terms: Vec<(Monomial, F)>,
}

/// Polynomials over the rationals, the only coefficient field used by the
/// variety and module layers.
pub type Poly = Polynomial<Rational>;

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(nvars, i), F::one())
    }

    pub fn monomial(m: Monomial, c: F) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial { nvars, terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, combining repeats.
    pub fn from_terms(nvars: usize, terms: Vec<(Monomial, F)>) -> Self {
        let mut acc: BTreeMap<Monomial, F> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial length");
            let e = acc.entry(m).or_insert_with(F::zero);
            *e = e.clone() + c;
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: BTreeMap<Monomial, F>) -> Self {
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { nvars, terms }
    }

    /// Terms must already be strictly decreasing with nonzero coefficients.
    pub(crate) fn from_sorted_terms(nvars: usize, terms: Vec<(Monomial, F)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        Polynomial { nvars, terms }
    }

    /// Removes and returns the leading term.
    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, F)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c.clone()).unwrap_or_else(F::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VarMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a[i].1.clone() - b[j].1.clone() } else { a[i].1.clone() + b[j].1.clone() };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { nvars: self.nvars, terms: out }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<Monomial, F> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_insert_with(F::zero);
                *e = e.clone() + ca.clone() * cb.clone();
            }
        }
        Self::from_map(self.nvars, acc)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect() }
    }

    /// Multiplies by `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone() * c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = out.mul_unchecked(self);
        }
        out
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&c.inv()),
        }
    }

    pub fn evaluate(&self, point: &[F]) -> Result<F> {
        if point.len() != self.nvars {
            return Err(Error::VarMismatch(self.nvars, point.len()));
        }
        let mut total = F::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                for _ in 0..e {
                    v = v * x.clone();
                }
            }
            total = total + v;
        }
        Ok(total)
    }

    /// Sets every variable in `vars` to zero.
    pub fn substitute_zero(&self, vars: &[usize]) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| vars.iter().all(|&v| m.exps()[v] == 0)).cloned().collect(),
        }
    }

    /// Substitutes a polynomial for each variable (same target ring for all).
    pub fn compose(&self, images: &[Polynomial<F>]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul_unchecked(&images[i]);
                }
            }
            out = out.add_unchecked(&t, false);
        }
        out
    }

    /// Renames variable `i` to `map[i]` in a ring with `new_nvars` variables.
    pub fn rename(&self, map: &[usize], new_nvars: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; new_nvars];
                for (i, &k) in m.exps().iter().enumerate() {
                    e[map[i]] += k;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Self::from_terms(new_nvars, terms)
    }

    /// Greatest common divisor of all monomials in the support.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(self.nvars),
            Some((m0, _)) => it.fold(m0.clone(), |g, (m, _)| g.gcd(m)),
        }
    }

    pub fn div_monomial(&self, d: &Monomial) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((d.quotient_of(m)?, c.clone()));
        }
        Some(Polynomial { nvars: self.nvars, terms })
    }

    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.terms.iter().any(|(m, _)| m.exps()[v] > 0)).collect()
    }

    /// Generic variable names `v1..vn` unless the ring looks like `Q[X, Y]`.
    pub fn fmt_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut cs = format!("{}", c);
            let neg = cs.starts_with('-');
            if neg {
                cs.remove(0);
            }
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(name(i)),
                    _ => factors.push(format!("{}^{}", name(i), e)),
                }
            }
            if factors.is_empty() {
                s.push_str(&cs);
            } else {
                if cs != "1" {
                    s.push_str(&cs);
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

/// Name of variable `i` in `Q[X1..Xm, Y1..Ym]`.
pub fn xy_name(m: usize, i: usize) -> String {
    if i < m {
        format!("X{}", i + 1)
    } else if i < 2 * m {
        format!("Y{}", i - m + 1)
    } else {
        format!("t{}", i - 2 * m + 1)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.nvars;
        let s =
            if n.is_multiple_of(2) { self.fmt_with(&|i| xy_name(n / 2, i)) } else { self.fmt_with(&|i| format!("v{}", i + 1)) };
        f.write_str(&s)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<F: Field> $tr<&Polynomial<F>> for &Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                assert_eq!(self.nvars, rhs.nvars, "polynomial ring mismatch");
                $body(self, rhs)
            }
        }
        impl<F: Field> $tr<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Polynomial<F>, b: &Polynomial<F>| a.add_unchecked(b, false));
binop!(Sub, sub, |a: &Polynomial<F>, b: &Polynomial<F>| a.add_unchecked(b, true));
binop!(Mul, mul, |a: &Polynomial<F>, b: &Polynomial<F>| a.mul_unchecked(b));

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}

// ---------------------------------------------------------------------------
// The X/Y coordinate ring.

/// Common exponent difference `exp(Xj) - exp(Yj)` of all monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusWeight(pub Vec<i64>);

impl TorusWeight {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }
}

pub fn monomial_weight(m: &Monomial, half: usize) -> TorusWeight {
    TorusWeight((0..half).map(|j| m.exps()[j] as i64 - m.exps()[half + j] as i64).collect())
}

impl<F: Field> Polynomial<F> {
    pub fn xvar(m: usize, j: usize) -> Self {
        Self::var(2 * m, j)
    }

    pub fn yvar(m: usize, j: usize) -> Self {
        Self::var(2 * m, m + j)
    }

    /// `Zj = Xj * Yj`.
    pub fn zvar(m: usize, j: usize) -> Self {
        let mut e = vec![0; 2 * m];
        e[j] = 1;
        e[m + j] = 1;
        Self::monomial(Monomial(e), F::one())
    }

    fn half(&self) -> usize {
        assert!(self.nvars.is_multiple_of(2), "X/Y ring has an even number of variables");
        self.nvars / 2
    }

    /// `None` marks an inhomogeneous polynomial. The zero polynomial has weight zero.
    pub fn torus_weight(&self) -> Option<TorusWeight> {
        let m = self.half();
        let mut it = self.terms.iter().map(|(mono, _)| monomial_weight(mono, m));
        let w = match it.next() {
            None => return Some(TorusWeight(vec![0; m])),
            Some(w) => w,
        };
        if it.all(|v| v == w) {
            Some(w)
        } else {
            None
        }
    }

    /// Homogeneous for both the total degree and the torus weight.
    pub fn is_bihomogeneous(&self) -> bool {
        self.is_homogeneous() && self.torus_weight().is_some()
    }

    /// `Xj -> X_perm[j]`, `Yj -> Y_perm[j]`.
    pub fn sigma_act(&self, perm: &[usize]) -> Self {
        let m = self.half();
        assert_eq!(perm.len(), m);
        let map: Vec<usize> = (0..2 * m).map(|i| if i < m { perm[i] } else { m + perm[i - m] }).collect();
        self.rename(&map, 2 * m)
    }

    /// Rewrites a weight-zero polynomial in `Z1..Zm`; `None` if some monomial
    /// has nonzero weight.
    pub fn to_z_poly(&self) -> Option<Polynomial<F>> {
        let m = self.half();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (mono, c) in &self.terms {
            if mono.x_exps(m) != mono.y_exps(m) {
                return None;
            }
            terms.push((Monomial(mono.x_exps(m).to_vec()), c.clone()));
        }
        Some(Polynomial::from_terms(m, terms))
    }

    pub fn from_z_poly(zp: &Polynomial<F>) -> Self {
        let m = zp.nvars;
        let terms = zp
            .terms
            .iter()
            .map(|(mono, c)| {
                let mut e = mono.exps().to_vec();
                e.extend_from_slice(mono.exps());
                (Monomial(e), c.clone())
            })
            .collect();
        Self::from_terms(2 * m, terms)
    }

    /// Coefficients `c` with `self = sum_j c_j Zj`, if it has that shape.
    pub fn z_linear_coeffs(&self) -> Option<Vec<F>> {
        let m = self.half();
        let mut out = vec![F::zero(); m];
        if self.terms.is_empty() {
            return None;
        }
        for (mono, c) in &self.terms {
            let j = (0..m).find(|&j| mono.exps()[j] == 1 && mono.exps()[m + j] == 1)?;
            if mono.degree() != 2 {
                return None;
            }
            out[j] = c.clone();
        }
        Some(out)
    }

    pub fn from_z_linear(coeffs: &[F]) -> Self {
        let m = coeffs.len();
        let mut out = Self::zero(2 * m);
        for (j, c) in coeffs.iter().enumerate() {
            out = out + Self::zvar(m, j).scale(c);
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Text and JSON formats.

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub coeff: String,
    pub x: Vec<u32>,
    pub y: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PolyJson {
    pub m: usize,
    pub terms: Vec<TermJson>,
}

impl Poly {
    pub fn to_json(&self) -> PolyJson {
        let m = self.half();
        PolyJson {
            m,
            terms: self
                .terms
                .iter()
                .map(|(mono, c)| TermJson { coeff: rat_to_string(c), x: mono.x_exps(m).to_vec(), y: mono.y_exps(m).to_vec() })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Poly> {
        let mut terms = Vec::new();
        for t in &j.terms {
            if t.x.len() != j.m || t.y.len() != j.m {
                return Err(Error::Json(format!("exponent vectors must have length {}", j.m)));
            }
            let c = parse_rat(&t.coeff).ok_or_else(|| Error::Json(format!("bad coefficient {:?}", t.coeff)))?;
            let mut e = t.x.clone();
            e.extend_from_slice(&t.y);
            terms.push((Monomial(e), c));
        }
        Ok(Poly::from_terms(2 * j.m, terms))
    }
}

/// Parses text such as `X1*Y2 - 3/2*Z1^2 + (X2 + Y2)^2` in `Q[X1..Xm, Y1..Ym]`.
/// `Zj` abbreviates `Xj*Yj`. Positions in errors are byte offsets.
pub fn parse_poly(src: &str, m: usize) -> Result<Poly> {
    let mut p = PolyParser { s: src.as_bytes(), pos: 0, m, offset: 0 };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

/// Parser state; `offset` shifts reported positions when embedded in a larger input.
pub(crate) struct PolyParser<'a> {
    pub s: &'a [u8],
    pub pos: usize,
    pub m: usize,
    pub offset: usize,
}

impl<'a> PolyParser<'a> {
    pub fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos + self.offset, msg: msg.to_string() }
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse { pos: start + self.offset, msg: "number too large".into() })
    }

    pub fn expr(&mut self) -> Result<Poly> {
        let n = 2 * self.m;
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        debug_assert_eq!(acc.nvars(), n);
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.number()?;
            if k > 64 {
                return Err(self.err("exponent too large"));
            }
            return Ok(base.pow(k as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let n = 2 * self.m;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.number()?;
                let mut q = rat(num as i64);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.number()?;
                    if den == 0 {
                        return Err(self.err("zero denominator"));
                    }
                    q /= rat(den as i64);
                }
                Ok(Poly::constant(n, q))
            }
            Some(c @ (b'X' | b'Y' | b'Z')) => {
                let at = self.pos;
                self.pos += 1;
                let j = self.number()? as usize;
                if j == 0 || j > self.m {
                    return Err(Error::Parse { pos: at + self.offset, msg: format!("variable index must be in 1..{}", self.m) });
                }
                Ok(match c {
                    b'X' => Poly::xvar(self.m, j - 1),
                    b'Y' => Poly::yvar(self.m, j - 1),
                    _ => Poly::zvar(self.m, j - 1),
                })
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ratio;

    fn p(s: &str, m: usize) -> Poly {
        parse_poly(s, m).unwrap()
    }

    #[test]
    fn additive_inverse_and_doubling() {
        assert!((&p("X1", 1) + &p("-X1", 1)).is_zero());
        assert_eq!(&p("X1*Y1", 1) + &p("X1*Y1", 1), p("2*Z1", 1));
        assert_eq!(&p("Z1 - Z2", 2) + &p("Z2", 2), p("Z1", 2));
    }

    #[test]
    fn products() {
        assert_eq!(&p("X1", 1) * &p("Y1", 1), Poly::zvar(1, 0));
        assert_eq!(&p("X1+Y1", 1) * &p("X1-Y1", 1), p("X1^2 - Y1^2", 1));
    }

    #[test]
    fn torus_weights() {
        assert_eq!(p("Z1 - Z2", 2).torus_weight(), Some(TorusWeight(vec![0, 0])));
        assert_eq!(p("X1^2*Y2", 2).torus_weight(), Some(TorusWeight(vec![2, -1])));
        assert_eq!(p("X1 + Y1", 1).torus_weight(), None);
    }

    #[test]
    fn permutation_action() {
        assert_eq!(p("Z1 - Z2", 2).sigma_act(&[1, 0]), p("Z2 - Z1", 2));
        let q = p("X1^2*Y2 + 3*Z1", 2);
        assert_eq!(q.sigma_act(&[0, 1]), q);
    }

    #[test]
    fn evaluation() {
        let pt = |v: &[i64]| v.iter().map(|&x| rat(x)).collect::<Vec<_>>();
        assert_eq!(p("Z1", 2).evaluate(&pt(&[1, 1, 1, 1])).unwrap(), rat(1));
        assert_eq!(p("X1", 2).evaluate(&pt(&[0, 0, 0, 0])).unwrap(), rat(0));
        // point (x1, x2; y1, y2) = (1, 2; 3, 4)
        assert_eq!(p("Z1 - Z2", 2).evaluate(&pt(&[1, 2, 3, 4])).unwrap(), rat(-5));
        assert!(p("Z1", 2).evaluate(&pt(&[1])).is_err());
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        assert!(p("X1", 1).try_add(&p("X1", 2)).is_err());
        assert!(p("X1", 1).try_mul(&p("X1", 2)).is_err());
    }

    #[test]
    fn grevlex_order() {
        // X1 > X2 > Y1 > Y2 among degree one, and X1*Y1 > X2*Y2.
        let q = p("Y2 + X2 + Y1 + X1", 2);
        let lead: Vec<String> = q.terms().iter().map(|(m, _)| Poly::monomial(m.clone(), rat(1)).to_string()).collect();
        assert_eq!(lead, vec!["X1", "X2", "Y1", "Y2"]);
        assert_eq!(p("Z2 + Z1", 2).leading_monomial(), Poly::zvar(2, 0).leading_monomial());
    }

    #[test]
    fn z_rewrite() {
        let q = p("Z1^2 - 3*Z1*Z2", 2);
        let z = q.to_z_poly().unwrap();
        assert_eq!(Poly::from_z_poly(&z), q);
        assert!(p("X1*Y2", 2).to_z_poly().is_none());
        assert_eq!(p("2*Z1 - Z2", 2).z_linear_coeffs(), Some(vec![rat(2), rat(-1)]));
        assert!(p("Z1^2", 2).z_linear_coeffs().is_none());
    }

    #[test]
    fn json_roundtrip() {
        let q = p("3/2*X1*Y2 - X2", 2);
        let j = q.to_json();
        assert_eq!(j.terms[0].coeff, "3/2");
        assert_eq!(Poly::from_json(&j).unwrap(), q);
        let txt = serde_json::to_string(&j).unwrap();
        let back: PolyJson = serde_json::from_str(&txt).unwrap();
        assert_eq!(back, j);
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_poly("X1 + * Y1", 1) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{:?}", other),
        }
        assert!(parse_poly("X3", 2).is_err());
        assert_eq!(p("1/2*X1", 1).leading_coeff(), Some(&ratio(1, 2)));
    }

    #[test]
    fn display() {
        assert_eq!(p("X1^2*Y2 - 3/2*Z1 + 1", 2).to_string(), "X1^2*Y2 - 3/2*X1*Y1 + 1");
    }
}
