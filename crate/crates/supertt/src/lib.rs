//! Support varieties, rank varieties and finite tensor-triangular spectra
//! for the general linear Lie superalgebra `gl(m|n)`.
//!
//! The layers build on each other:
//!
//! * [`polyring`] and [`groebner`]: exact polynomial arithmetic and ideal
//!   membership over the rationals.
//! * [`variety`]: conical torus-stable subvarieties of the odd part of the
//!   detecting subalgebra, with the symmetric-group saturations `ΣV(s,t,p)`.
//! * [`cliffmod`]: explicit weight modules over Clifford-type superalgebras,
//!   rank varieties, relative cohomology and Carlson modules.
//! * [`glmn`]: weights, atypicality, Kac and simple modules of `gl(m|n)` in
//!   small rank and their restriction to the detecting subalgebra.
//! * [`bwb`]: characters, the Bott algorithm and induced-module characters.
//! * [`spectrum`]: finite Zariski spaces, support data, the ideal/closed-set
//!   bijection and prime spectra.
//!
//! The polynomial and linear-algebra cores are generic over a [`Field`];
//! everything above them is fixed to [`Rational`].

#![allow(clippy::needless_range_loop)]

pub mod budget;
pub mod bwb;
pub mod cliffmod;
pub mod error;
pub mod field;
pub mod glmn;
pub mod groebner;
pub mod linalg;
pub mod polyring;
pub mod spectrum;
pub mod variety;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, Rational};
pub use polyring::{Monomial, Poly, Polynomial, TorusWeight};

/// Dense matrices with rational entries.
pub type Matrix = linalg::Matrix<Rational>;
