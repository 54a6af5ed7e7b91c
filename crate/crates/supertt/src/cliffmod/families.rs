//! Seeded random graded modules over the detecting subalgebra `f` for `m ≤ 2`.
//!
//! Modules are built from a stock of primitives (trivial, line, exterior,
//! spinor, free and Carlson modules) by sums, tensor products, duals,
//! twists and parity shifts, and finally conjugated by a random basis change
//! that preserves parity and grading.

use super::{carlson_module, WeightModule, ZAlgebra};
use crate::error::{Error, Result};
use crate::field::{rat, Rational};
use crate::polyring::parse_poly;
use crate::Matrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use std::collections::BTreeMap;

/// Which primitives may appear.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomFamily {
    /// Everything in the stock.
    All,
    /// Only modules that are projective by construction, and sums and
    /// tensor products involving them.
    Projective,
}

fn primitives(m: usize, max_dim: usize, family: RandomFamily, rng: &mut impl Rng) -> Result<Vec<WeightModule>> {
    let f = ZAlgebra::f(m);
    let mut out = Vec::new();
    let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    if m == 1 {
        out.push(WeightModule::block_simple(&f, &[rat(c)])?);
        out.push(WeightModule::free(&f, &[rat(rng.gen_range(-2..=2))])?);
        if family == RandomFamily::All {
            out.push(WeightModule::trivial(&f));
            out.push(WeightModule::line(&f, 0)?);
            out.push(WeightModule::line(&f, 1)?);
            for z in ["X1", "Y1", "X1*Y1", "X1^2"] {
                out.push(carlson_module(&parse_poly(z, 1)?)?.to_principal_block(&f)?);
            }
        }
    } else {
        let w = |a: i64, b: i64| vec![rat(a), rat(b)];
        out.push(WeightModule::block_simple(&f, &w(c, rng.gen_range(1..=2)))?);
        out.push(WeightModule::block_simple(&f, &w(-c, c))?);
        if family == RandomFamily::All {
            out.push(WeightModule::trivial(&f));
            for i in 0..4 {
                out.push(WeightModule::line(&f, i)?);
            }
            out.push(WeightModule::block_simple(&f, &w(0, c))?);
            out.push(WeightModule::block_simple(&f, &w(c, 0))?);
            let mut idx = [0, 1, 2, 3];
            idx.shuffle(rng);
            out.push(WeightModule::exterior_regular(&f, &idx[..2])?);
            out.push(WeightModule::exterior_regular(&f, &idx[..3])?);
        } else if max_dim >= 16 {
            out.push(WeightModule::free(&f, &w(rng.gen_range(-1..=1), 0))?);
        }
    }
    out.retain(|x| x.dim() <= max_dim);
    Ok(out)
}

/// A random graded module over `f(m)` of dimension between 1 and `max_dim`.
pub fn random_module(rng: &mut impl Rng, m: usize, max_dim: usize, family: RandomFamily) -> Result<WeightModule> {
    let module = build(rng, m, max_dim, family, 3)?;
    scramble(rng, &module)
}

/// A pair with `dim M + dim N ≤ total`.
pub fn random_pair(rng: &mut impl Rng, m: usize, total: usize) -> Result<(WeightModule, WeightModule)> {
    let a = random_module(rng, m, total - 1, RandomFamily::All)?;
    let b = random_module(rng, m, total - a.dim(), RandomFamily::All)?;
    Ok((a, b))
}

fn build(rng: &mut impl Rng, m: usize, max_dim: usize, family: RandomFamily, depth: usize) -> Result<WeightModule> {
    let stock = primitives(m, max_dim, family, rng)?;
    if stock.is_empty() {
        return Err(Error::InvalidParameters(format!("no primitive module of dimension ≤ {}", max_dim)));
    }
    let pick = |rng: &mut dyn rand::RngCore| stock[rng.gen_range(0..stock.len())].clone();
    let fits = |rng: &mut dyn rand::RngCore, dim: usize| -> Result<bool> {
        let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(rng.gen());
        Ok(dim >= 1 && !primitives(m, dim, family, &mut r)?.is_empty())
    };
    if depth == 0 {
        return Ok(pick(rng));
    }
    match rng.gen_range(0..8) {
        0 | 1 => Ok(pick(rng)),
        2 => {
            if !fits(rng, max_dim - 1)? {
                return Ok(pick(rng));
            }
            let a = build(rng, m, max_dim - 1, family, depth - 1)?;
            if !fits(rng, max_dim - a.dim())? {
                return Ok(a);
            }
            let b = build(rng, m, max_dim - a.dim(), family, depth - 1)?;
            a.direct_sum(&b)
        }
        3 | 4 => {
            if !fits(rng, max_dim / 2)? {
                return Ok(pick(rng));
            }
            let a = build(rng, m, max_dim / 2, family, depth - 1)?;
            // Tensoring anything with a projective stays projective.
            let b = build(rng, m, max_dim / a.dim(), RandomFamily::All, depth - 1)?;
            a.tensor(&b)
        }
        5 => build(rng, m, max_dim, family, depth - 1)?.dual(),
        6 => build(rng, m, max_dim, family, depth - 1)?.tau_twist(),
        _ => build(rng, m, max_dim, family, depth - 1)?.parity_shift(),
    }
}

/// Conjugates every block by a random invertible matrix that is block
/// diagonal for the decomposition by parity and grade.
pub fn scramble(rng: &mut impl Rng, module: &WeightModule) -> Result<WeightModule> {
    let mut out = module.clone();
    for index in 0..module.blocks().len() {
        let b = &module.blocks()[index];
        let n = b.dim();
        let mut groups: BTreeMap<(bool, Vec<i64>), Vec<usize>> = BTreeMap::new();
        for k in 0..n {
            let g = b.grades.as_ref().map_or(Vec::new(), |g| g[k].clone());
            groups.entry((b.is_odd(k), g)).or_default().push(k);
        }
        let mut p = Matrix::zeros(n, n);
        for members in groups.values() {
            // Unit lower-triangular times a diagonal of nonzero scalars.
            for (a, &i) in members.iter().enumerate() {
                let diag: Rational = rat(*[1, -1, 2].choose(rng).unwrap());
                p.set(i, i, diag.clone());
                for &j in &members[..a] {
                    p.set(i, j, rat(rng.gen_range(-2..=2)) * diag.clone());
                }
            }
        }
        out = out.conjugate_block(index, &p)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_modules_are_valid_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in 1..=2 {
            for _ in 0..20 {
                let x = random_module(&mut rng, m, 8, RandomFamily::All).unwrap();
                assert!(x.dim() >= 1 && x.dim() <= 8);
                assert!(x.is_graded());
                x.validate().unwrap();
            }
            let (a, b) = random_pair(&mut rng, m, 12).unwrap();
            assert!(a.dim() + b.dim() <= 12);
        }
    }
}
