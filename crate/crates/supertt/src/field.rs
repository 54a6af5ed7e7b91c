//! Scalar abstraction shared by the polynomial and linear-algebra layers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};
use std::fmt::{Debug, Display};
use std::ops::Neg;

/// A field in the sense needed here: exact division by nonzero elements.
///
/// Any `num_traits::Num` type with negation qualifies. Floating point types
/// satisfy the bound too, but every algorithm in this crate assumes exact
/// zero tests, so the concrete computations all run over [`Rational`].
pub trait Field: Num + Clone + Neg<Output = Self> + Debug + Display {
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl<T> Field for T where T: Num + Clone + Neg<Output = T> + Debug + Display {}

/// Exact rationals, always stored reduced with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Fraction-string form used in every JSON format: `"3/2"`, `"-1"`.
pub fn rat_to_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.contains('.') {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Integer value of a rational, when it is one and fits in an `i64`.
pub fn rat_to_i64(q: &Rational) -> Option<i64> {
    if !q.is_integer() {
        return None;
    }
    let n = q.numer();
    if n.abs() > BigInt::from(i64::MAX) {
        return None;
    }
    n.to_string().parse().ok()
}

pub fn is_zero<F: Field>(x: &F) -> bool {
    x.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_strings_roundtrip() {
        for s in ["0", "3/2", "-7/4", "12"] {
            assert_eq!(rat_to_string(&parse_rat(s).unwrap()), s);
        }
        assert_eq!(rat_to_string(&parse_rat("6/4").unwrap()), "3/2");
        assert!(parse_rat("1.5").is_none());
        assert!(parse_rat("1/0").is_none());
    }

    #[test]
    fn reduced_with_positive_denominator() {
        let q = ratio(4, -6);
        assert_eq!(q.numer(), &BigInt::from(-2));
        assert_eq!(q.denom(), &BigInt::from(3));
    }

    #[test]
    fn floats_satisfy_the_bound() {
        fn half<F: Field>(x: F) -> F {
            x / (F::one() + F::one())
        }
        assert_eq!(half(3.0f64), 1.5);
        assert_eq!(half(rat(3)), ratio(3, 2));
    }
}
