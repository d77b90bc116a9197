//! Rescaled weight distributions and the higher-level variance table.
//!
//! A distribution is normalized to a probability measure and each
//! coordinate is divided by its largest absolute value on the support, so
//! the support just fits into `[0, 1] × [−1, 1]` (degree × finite weight).
//! The scale factors are read off the computed support rather than taken
//! from asymptotic bounds: at level 1 and even `N` the finite weight
//! `2(a − b)` reaches `±N`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::demazure::{distribution_sequence, WeightDistribution, WeylWord};
use crate::error::{Error, Result};
use crate::lattice::{degree, finite_weight, Functional, Generator, HighestWeight};
use crate::moments::RawMoments;
use crate::scalar::{format_rational, Scalar};
use crate::Rational;

#[derive(Debug, Clone, PartialEq)]
pub struct RescaledSummary<T> {
    pub n: u32,
    pub level: u32,
    pub max_degree: i64,
    pub max_abs_finite_weight: i64,
    pub mean_degree_scaled: T,
    pub mean_finweight_scaled: T,
    pub var_degree_scaled: T,
    pub var_finweight_scaled: T,
}

/// Largest degree and largest |finite weight| on the support.
pub fn support_extremes(mu: &WeightDistribution) -> (i64, i64) {
    let hw = mu.highest_weight();
    mu.iter().fold((0, 0), |(d, f), (p, _)| {
        (d.max(degree(&p)), f.max(finite_weight(hw, &p).abs()))
    })
}

fn scale_of(extreme: i64) -> i64 {
    // A support concentrated at 0 already fits.
    if extreme == 0 {
        1
    } else {
        extreme
    }
}

/// Support points in rescaled coordinates `(degree, finite weight)`.
pub fn rescaled_points<T: Scalar>(mu: &WeightDistribution) -> Vec<((T, T), BigInt)> {
    let hw = *mu.highest_weight();
    let (max_deg, max_fin) = support_extremes(mu);
    let (sd, sf) = (
        T::from_i64(scale_of(max_deg)),
        T::from_i64(scale_of(max_fin)),
    );
    mu.iter()
        .map(|(p, v)| {
            let x = T::from_i64(degree(&p)) / sd.clone();
            let y = T::from_i64(finite_weight(&hw, &p)) / sf.clone();
            ((x, y), v.clone())
        })
        .collect()
}

/// Summary of an already computed distribution of word length `n`.
pub fn summarize<T: Scalar>(mu: &WeightDistribution, n: u32) -> Result<RescaledSummary<T>> {
    let hw = *mu.highest_weight();
    let moments = RawMoments::new(mu, 2)?;
    let (max_degree, max_abs_finite_weight) = support_extremes(mu);
    let sd = T::from_i64(scale_of(max_degree));
    let sf = T::from_i64(scale_of(max_abs_finite_weight));
    let deg = Functional::<T>::degree();
    let fin = Functional::<T>::finite_weight(&hw);
    Ok(RescaledSummary {
        n,
        level: hw.level(),
        max_degree,
        max_abs_finite_weight,
        mean_degree_scaled: moments.expectation(&deg)? / sd.clone(),
        mean_finweight_scaled: moments.expectation(&fin)? / sf.clone(),
        var_degree_scaled: moments.variance(&deg)? / (sd.clone() * sd),
        var_finweight_scaled: moments.variance(&fin)? / (sf.clone() * sf),
    })
}

pub fn rescaled_summary<T: Scalar>(
    hw: HighestWeight,
    word: WeylWord,
) -> Result<RescaledSummary<T>> {
    if word.length == 0 {
        return Err(Error::InvalidArgument(
            "rescaling needs a word of length >= 1".into(),
        ));
    }
    let mu = crate::demazure::weight_distribution(hw, word);
    summarize(&mu, word.length)
}

/// Limit of the rescaled mean degree at level `l`: `(l + 2) / (3(l + 1))`.
pub fn limit_mean_degree(level: u32) -> Rational {
    let l = i64::from(level);
    Rational::from_ratio(l + 2, 3 * (l + 1))
}

/// First letter used for sweeps: `s₀` unless `Λ = nΛ₁`. A letter `s_j`
/// with `⟨α_j^∨, Λ⟩ = 0` fixes `δ_Λ` and would only waste a step.
pub fn sweep_generator(hw: &HighestWeight) -> Generator {
    if hw.m() > 0 {
        Generator::Zero
    } else {
        Generator::One
    }
}

#[derive(Debug, Clone)]
pub struct WllnSeries {
    pub summaries: Vec<RescaledSummary<Rational>>,
    /// Both rescaled variances strictly decrease along the series.
    pub variances_decreasing: bool,
    /// Level 1 only: `|mean_degree_scaled − 1/2| < 1/N` at every point.
    pub means_within_bound: Option<bool>,
}

impl WllnSeries {
    pub fn passes(&self) -> bool {
        self.variances_decreasing && self.means_within_bound.unwrap_or(true)
    }

    /// CSV with header `level,N,max_degree,mean_deg,var_deg,mean_fin,var_fin`.
    pub fn to_csv(&self) -> String {
        summaries_csv(&self.summaries)
    }
}

pub fn summaries_csv(summaries: &[RescaledSummary<Rational>]) -> String {
    let mut out = String::from("level,N,max_degree,mean_deg,var_deg,mean_fin,var_fin\n");
    for s in summaries {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            s.level,
            s.n,
            s.max_degree,
            format_rational(&s.mean_degree_scaled),
            format_rational(&s.var_degree_scaled),
            format_rational(&s.mean_finweight_scaled),
            format_rational(&s.var_finweight_scaled),
        )
        .expect("writing to a String");
    }
    out
}

/// Rescaled summaries along `w_{N, j}` for each `N` in `lengths`.
pub fn wlln_series(hw: HighestWeight, lengths: &[u32]) -> Result<WllnSeries> {
    if lengths.is_empty() {
        return Err(Error::InvalidArgument("N list must be nonempty".into()));
    }
    if lengths.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "N list must be strictly increasing".into(),
        ));
    }
    if lengths[0] == 0 {
        return Err(Error::InvalidArgument("rescaling needs N >= 1".into()));
    }
    let max = *lengths.last().expect("nonempty");
    let seq = distribution_sequence(hw, sweep_generator(&hw), max);
    let summaries = lengths
        .iter()
        .map(|&n| summarize::<Rational>(&seq[n as usize], n))
        .collect::<Result<Vec<_>>>()?;
    let variances_decreasing = summaries.windows(2).all(|w| {
        w[1].var_degree_scaled < w[0].var_degree_scaled
            && w[1].var_finweight_scaled < w[0].var_finweight_scaled
    });
    let means_within_bound = (hw.level() == 1).then(|| {
        let limit = limit_mean_degree(1);
        summaries.iter().all(|s| {
            let gap = s.mean_degree_scaled.clone() - limit.clone();
            gap.abs() < Rational::from_ratio(1, i64::from(s.n))
        })
    });
    Ok(WllnSeries {
        summaries,
        variances_decreasing,
        means_within_bound,
    })
}

/// Polynomial `c₀ + c₁x + c₂x² + …` with coefficients in `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialFit<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> PolynomialFit<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        PolynomialFit { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

/// Exact Lagrange interpolation through `degree + 1` points.
pub fn fit_polynomial<T: Scalar>(points: &[(i64, T)], degree: usize) -> Result<PolynomialFit<T>> {
    if points.len() != degree + 1 {
        return Err(Error::PointCount {
            expected: degree + 1,
            got: points.len(),
        });
    }
    for (i, (xi, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(xj, _)| xj == xi) {
            return Err(Error::DuplicateAbscissa(*xi));
        }
    }
    let mut coeffs = vec![T::zero(); degree + 1];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis numerator Π_{j≠i} (x − x_j), lowest coefficient first
        let mut basis = vec![T::one()];
        let mut denom = T::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let root = T::from_i64(*xj);
            let mut next = vec![T::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] = next[k + 1].clone() + c.clone();
                next[k] = next[k].clone() - c.clone() * root.clone();
            }
            basis = next;
            denom = denom * T::from_i64(xi - xj);
        }
        let weight = yi.clone() / denom;
        for (k, c) in basis.into_iter().enumerate() {
            coeffs[k] = coeffs[k].clone() + c * weight.clone();
        }
    }
    Ok(PolynomialFit::new(coeffs))
}

/// Degree variance `Var(−d)` of `V_{(s₁s₀)^k}(mΛ₀)` as a cubic in `N = 2k`,
/// for `m = 1, …, 4`. Each row is `N(N−1)(uN+v)/w`.
pub fn table_row(m: u32) -> Option<PolynomialFit<Rational>> {
    let (u, v, w) = match m {
        1 => (2, 5, 96),
        2 => (4, 11, 81),
        3 => (34, 97, 384),
        4 => (52, 151, 375),
        _ => return None,
    };
    // N(N−1)(uN+v) = uN³ + (v−u)N² − vN
    let c = |x: i64| Rational::from_ratio(x, w);
    Some(PolynomialFit::new(vec![c(0), c(-v), c(v - u), c(u)]))
}

/// `max{⟨−d, λ⟩}` over `V_{(s₁s₀)^k}(mΛ₀)`: `mN²/4`.
pub fn table_max_degree(m: u32, n: u32) -> Rational {
    Rational::from_ratio(i64::from(m) * i64::from(n) * i64::from(n), 4)
}

#[derive(Debug, Clone)]
pub struct ConjecturePoint {
    pub n: u32,
    pub var_degree: Rational,
    pub max_degree: i64,
}

#[derive(Debug, Clone)]
pub struct ConjectureReport {
    pub level: u32,
    pub points: Vec<ConjecturePoint>,
    pub fit: PolynomialFit<Rational>,
    pub table_match: bool,
    pub max_degree_match: bool,
}

#[derive(Serialize)]
struct FitJson {
    level: u32,
    fit: Vec<String>,
    table_match: bool,
}

impl ConjectureReport {
    /// `{"level":…,"fit":["c0","c1","c2","c3"],"table_match":…}`.
    pub fn to_json(&self) -> String {
        let doc = FitJson {
            level: self.level,
            fit: self.fit.coeffs().iter().map(format_rational).collect(),
            table_match: self.table_match,
        };
        serde_json::to_string(&doc).expect("report serializes")
    }
}

/// Computes `Var(−d)` for `V_{(s₁s₀)^{N/2}}(mΛ₀)` at each `N`, fits a cubic
/// through the first four values and checks the rest against it.
pub fn conjecture_check(m: u32, lengths: &[u32]) -> Result<ConjectureReport> {
    if !(1..=4).contains(&m) {
        return Err(Error::InvalidArgument(format!(
            "no table row for level {m} (expected 1..=4)"
        )));
    }
    if lengths.len() < 5 {
        return Err(Error::InvalidArgument(
            "need at least 5 values of N (4 to fit, 1 held out)".into(),
        ));
    }
    if let Some(&bad) = lengths.iter().find(|&&n| n == 0 || n % 2 == 1) {
        return Err(Error::InvalidArgument(format!(
            "N = {bad} is not a positive even length"
        )));
    }
    for (i, n) in lengths.iter().enumerate() {
        if lengths[..i].contains(n) {
            return Err(Error::DuplicateAbscissa(i64::from(*n)));
        }
    }
    let hw = HighestWeight::new(m, 0)?;
    let max = *lengths.iter().max().expect("nonempty");
    let seq = distribution_sequence(hw, Generator::Zero, max);
    let deg = Functional::<Rational>::degree();
    let points = lengths
        .iter()
        .map(|&n| {
            let mu = &seq[n as usize];
            Ok(ConjecturePoint {
                n,
                var_degree: RawMoments::new(mu, 2)?.variance(&deg)?,
                max_degree: support_extremes(mu).0,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let sample: Vec<(i64, Rational)> = points[..4]
        .iter()
        .map(|p| (i64::from(p.n), p.var_degree.clone()))
        .collect();
    let fit = fit_polynomial(&sample, 3)?;
    let witnesses: Vec<(i64, String, String)> = points[4..]
        .iter()
        .filter_map(|p| {
            let predicted = fit.eval(&Rational::from_i64(i64::from(p.n)));
            (predicted != p.var_degree).then(|| {
                (
                    i64::from(p.n),
                    format_rational(&p.var_degree),
                    format_rational(&predicted),
                )
            })
        })
        .collect();
    if !witnesses.is_empty() {
        return Err(Error::NotCubic { witnesses });
    }
    let table_match = table_row(m).is_some_and(|row| row == fit);
    let max_degree_match = points
        .iter()
        .all(|p| Rational::from_i64(p.max_degree) == table_max_degree(m, p.n));
    Ok(ConjectureReport {
        level: m,
        points,
        fit,
        table_match,
        max_degree_match,
    })
}
