//! Exact weight distributions of Demazure modules of affine sl2.
//!
//! Distributions come from the Demazure operator recursion
//! ([`demazure`]), are cross-checked against a Gaussian-binomial closed
//! form ([`closedform`]), and feed exact rational statistics
//! ([`moments`]), law-of-large-numbers diagnostics ([`asymptotics`]) and
//! SVG figures ([`render`]). [`verify`] bundles the identity suites and
//! [`cli`] exposes everything as the `demazure` binary.
//!
//! Statistics are generic over [`Scalar`]; the aliases below fix the
//! exact instantiation used for every identity check.

pub mod asymptotics;
pub mod cli;
pub mod closedform;
pub mod demazure;
pub mod error;
pub mod lattice;
pub mod moments;
pub mod render;
pub mod scalar;
pub mod verify;

pub use demazure::{WeightDistribution, WeylWord};
pub use error::{Error, Result};
pub use lattice::{Functional, Generator, HighestWeight, LatticePoint};
pub use scalar::Scalar;

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

pub type ExactFunctional = Functional<Rational>;
pub type FloatFunctional = Functional<f64>;
pub type ExactCovariance = moments::CovarianceMatrix<Rational>;
pub type FloatCovariance = moments::CovarianceMatrix<f64>;
pub type ExactFit = asymptotics::PolynomialFit<Rational>;
