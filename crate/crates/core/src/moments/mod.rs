//! Exact statistics of weight distributions.
//!
//! Every statistic is a linear combination of raw moments
//! `Σ μ(λ) a(λ)ⁱ b(λ)ʲ`, so a distribution is summed once into a
//! [`RawMoments`] table and any polynomial functional up to that degree is
//! then evaluated from integers. With `T = Rational` nothing is rounded.

mod reference;

pub use reference::{reference_formula, Parity, ReferenceFormula};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::demazure::WeightDistribution;
use crate::error::{Error, Result};
use crate::lattice::{Functional, HighestWeight, LatticePoint};
use crate::scalar::Scalar;

/// Integer raw moments of a distribution up to a fixed total degree.
#[derive(Debug, Clone)]
pub struct RawMoments {
    max_degree: u32,
    total: BigInt,
    sums: BTreeMap<(u32, u32), BigInt>,
}

impl RawMoments {
    pub fn new(mu: &WeightDistribution, max_degree: u32) -> Result<Self> {
        let total = mu.total_mass();
        if total.is_zero() {
            return Err(Error::EmptyDistribution);
        }
        let exps: Vec<(u32, u32)> = (0..=max_degree)
            .flat_map(|d| (0..=d).map(move |i| (i, d - i)))
            .collect();
        let mut acc = vec![BigInt::zero(); exps.len()];
        for (p, v) in mu.iter() {
            for ((i, j), slot) in exps.iter().zip(acc.iter_mut()) {
                *slot += v * monomial(&p, *i, *j);
            }
        }
        Ok(RawMoments {
            max_degree,
            total,
            sums: exps.into_iter().zip(acc).collect(),
        })
    }

    pub fn total(&self) -> &BigInt {
        &self.total
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// `Σ μ(λ) aⁱ bʲ`.
    pub fn sum(&self, i: u32, j: u32) -> Option<&BigInt> {
        self.sums.get(&(i, j))
    }

    pub fn expectation<T: Scalar>(&self, f: &Functional<T>) -> Result<T> {
        if f.total_degree() > self.max_degree {
            return Err(Error::InvalidArgument(format!(
                "functional of degree {} exceeds moment table degree {}",
                f.total_degree(),
                self.max_degree
            )));
        }
        let mut weighted = T::zero();
        for (&(i, j), c) in f.terms() {
            weighted = weighted + c.clone() * T::from_bigint(&self.sums[&(i, j)]);
        }
        Ok(weighted / T::from_bigint(&self.total))
    }

    pub fn covariance<T: Scalar>(&self, f: &Functional<T>, g: &Functional<T>) -> Result<T> {
        let ef = self.expectation(f)?;
        let eg = self.expectation(g)?;
        Ok(self.expectation(&(f * g))? - ef * eg)
    }

    pub fn variance<T: Scalar>(&self, f: &Functional<T>) -> Result<T> {
        self.covariance(f, f)
    }

    pub fn covariance_matrix<T: Scalar>(&self, hw: &HighestWeight) -> Result<CovarianceMatrix<T>> {
        let x = Functional::degree();
        let y = Functional::finite_weight(hw);
        Ok(CovarianceMatrix::new(
            self.variance(&x)?,
            self.covariance(&x, &y)?,
            self.variance(&y)?,
        ))
    }
}

fn monomial(p: &LatticePoint, i: u32, j: u32) -> BigInt {
    let small = (|| {
        let a = i128::from(p.a).checked_pow(i)?;
        let b = i128::from(p.b).checked_pow(j)?;
        a.checked_mul(b)
    })();
    match small {
        Some(v) => BigInt::from(v),
        None => {
            num_traits::pow(BigInt::from(p.a), i as usize)
                * num_traits::pow(BigInt::from(p.b), j as usize)
        }
    }
}

/// `E_μ[f]`.
pub fn expectation<T: Scalar>(mu: &WeightDistribution, f: &Functional<T>) -> Result<T> {
    RawMoments::new(mu, f.total_degree())?.expectation(f)
}

/// `Cov_μ(f, g) = E[fg] − E[f]E[g]`.
pub fn covariance<T: Scalar>(
    mu: &WeightDistribution,
    f: &Functional<T>,
    g: &Functional<T>,
) -> Result<T> {
    RawMoments::new(mu, f.total_degree() + g.total_degree())?.covariance(f, g)
}

pub fn variance<T: Scalar>(mu: &WeightDistribution, f: &Functional<T>) -> Result<T> {
    covariance(mu, f, f)
}

/// Covariance matrix of (degree, finite weight).
pub fn covariance_matrix<T: Scalar>(mu: &WeightDistribution) -> Result<CovarianceMatrix<T>> {
    RawMoments::new(mu, 2)?.covariance_matrix(mu.highest_weight())
}

/// Symmetric 2×2 matrix `[[xx, xy], [xy, yy]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix<T> {
    xx: T,
    xy: T,
    yy: T,
}

impl<T: Scalar> CovarianceMatrix<T> {
    pub fn new(xx: T, xy: T, yy: T) -> Self {
        CovarianceMatrix { xx, xy, yy }
    }

    pub fn identity() -> Self {
        Self::new(T::one(), T::zero(), T::one())
    }

    pub fn xx(&self) -> &T {
        &self.xx
    }

    pub fn xy(&self) -> &T {
        &self.xy
    }

    pub fn yy(&self) -> &T {
        &self.yy
    }

    pub fn rows(&self) -> [[T; 2]; 2] {
        [
            [self.xx.clone(), self.xy.clone()],
            [self.xy.clone(), self.yy.clone()],
        ]
    }

    pub fn determinant(&self) -> T {
        self.xx.clone() * self.yy.clone() - self.xy.clone() * self.xy.clone()
    }

    pub fn is_positive_semidefinite(&self) -> bool {
        self.xx >= T::zero() && self.yy >= T::zero() && self.determinant() >= T::zero()
    }

    pub fn is_degenerate(&self) -> bool {
        self.determinant().is_zero()
    }
}

impl fmt::Display for CovarianceMatrix<crate::Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::scalar::format_rational as r;
        write!(
            f,
            "[[{},{}],[{},{}]]",
            r(&self.xx),
            r(&self.xy),
            r(&self.xy),
            r(&self.yy)
        )
    }
}

/// `λ ↦ (f(λ), g(λ))`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateMap<T> {
    pub x: Functional<T>,
    pub y: Functional<T>,
}

impl<T: Scalar> CoordinateMap<T> {
    pub fn new(x: Functional<T>, y: Functional<T>) -> Self {
        CoordinateMap { x, y }
    }

    pub fn eval(&self, p: &LatticePoint) -> (T, T) {
        (self.x.eval(p), self.y.eval(p))
    }
}

/// Finitely supported integer measure on the plane.
pub type PlanarMeasure<T> = BTreeMap<(T, T), BigInt>;

/// `map_* μ`: masses grouped by image point.
pub fn pushforward<T: Scalar + Ord>(
    mu: &WeightDistribution,
    map: &CoordinateMap<T>,
) -> PlanarMeasure<T> {
    let mut out = PlanarMeasure::new();
    for (p, v) in mu.iter() {
        *out.entry(map.eval(&p)).or_insert_with(BigInt::zero) += v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `E_ν[f(X, Y)]` for a planar measure.
pub fn planar_expectation<T: Scalar>(nu: &PlanarMeasure<T>, f: impl Fn(&T, &T) -> T) -> Result<T> {
    let total: BigInt = nu.values().sum();
    if total.is_zero() {
        return Err(Error::EmptyDistribution);
    }
    let weighted = nu.iter().fold(T::zero(), |acc, ((x, y), v)| {
        acc + T::from_bigint(v) * f(x, y)
    });
    Ok(weighted / T::from_bigint(&total))
}

/// `Cov_ν(f(X, Y), g(X, Y))`.
pub fn planar_covariance<T: Scalar>(
    nu: &PlanarMeasure<T>,
    f: impl Fn(&T, &T) -> T,
    g: impl Fn(&T, &T) -> T,
) -> Result<T> {
    let ef = planar_expectation(nu, &f)?;
    let eg = planar_expectation(nu, &g)?;
    let efg = planar_expectation(nu, |x, y| f(x, y) * g(x, y))?;
    Ok(efg - ef * eg)
}

/// Covariance of the two coordinates.
pub fn planar_coordinate_covariance<T: Scalar>(nu: &PlanarMeasure<T>) -> Result<T> {
    planar_covariance(nu, |x, _| x.clone(), |_, y| y.clone())
}

/// Float view of a rational, for reports only.
pub fn approx(value: &crate::Rational) -> f64 {
    value.as_f64()
}
