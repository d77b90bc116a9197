//! Identity suites: every closed-form statement about level-1
//! distributions, checked exactly against computed distributions.
//!
//! Each check is one [`Check`] line
//! `PASS|FAIL <identity> N=<n> lhs=<value> rhs=<value>`; rationals print as
//! `p/q`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Pow;
use rayon::prelude::*;

use crate::asymptotics::{conjecture_check, table_row};
use crate::closedform::{level1_distribution, palindromicity_check, Palindromicity};
use crate::demazure::{distribution_sequence, marginal, WeightDistribution};
use crate::error::{Error, Result};
use crate::lattice::{Functional, Generator, HighestWeight};
use crate::moments::{
    planar_coordinate_covariance, planar_covariance, pushforward, CoordinateMap, CovarianceMatrix,
    RawMoments, ReferenceFormula,
};
use crate::scalar::{format_rational, Scalar};
use crate::Rational;

type F = Functional<Rational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Sanderson,
    Palindrome,
    Stretch,
    Recurrence,
    Covariance,
    Conjecture,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 6] = [
        Suite::Sanderson,
        Suite::Palindrome,
        Suite::Stretch,
        Suite::Recurrence,
        Suite::Covariance,
        Suite::Conjecture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Sanderson => "sanderson",
            Suite::Palindrome => "palindrome",
            Suite::Stretch => "stretch",
            Suite::Recurrence => "recurrence",
            Suite::Covariance => "covariance",
            Suite::Conjecture => "conjecture",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Suite::All)
            .chain(Suite::INDIVIDUAL)
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub identity: String,
    pub n: u32,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl Check {
    fn new(identity: impl Into<String>, n: u32, lhs: String, rhs: String, pass: bool) -> Self {
        Check {
            identity: identity.into(),
            n,
            lhs,
            rhs,
            pass,
        }
    }

    fn equal(identity: impl Into<String>, n: u32, lhs: &Rational, rhs: &Rational) -> Self {
        Check::new(
            identity,
            n,
            format_rational(lhs),
            format_rational(rhs),
            lhs == rhs,
        )
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} N={} lhs={} rhs={}",
            if self.pass { "PASS" } else { "FAIL" },
            self.identity,
            self.n,
            self.lhs,
            self.rhs
        )
    }
}

fn r(p: i64, q: i64) -> Rational {
    Rational::from_ratio(p, q)
}

fn reference(f: ReferenceFormula, n: u32) -> Result<Rational> {
    f.eval(n)
}

fn l0() -> HighestWeight {
    HighestWeight::fundamental(Generator::Zero)
}

/// Runs `suite` over `min_n..=max_n` (clamped below at 1).
pub fn run_suite(suite: Suite, min_n: u32, max_n: u32) -> Result<Vec<Check>> {
    let min_n = min_n.max(1);
    match suite {
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::INDIVIDUAL {
                out.extend(run_suite(s, min_n, max_n)?);
            }
            Ok(out)
        }
        Suite::Sanderson => per_length(min_n, max_n, 0, sanderson),
        Suite::Palindrome => per_length(min_n, max_n, 0, palindrome),
        Suite::Stretch => per_length(min_n, max_n, 0, stretch),
        Suite::Recurrence => per_length(min_n, max_n, 1, recurrence),
        Suite::Covariance => covariance_matrices(min_n, max_n),
        Suite::Conjecture => conjecture(),
    }
}

/// Evaluates `check` on `μ_N` for each `N`, with `lookahead` further
/// distributions available (`seq[N..=N+lookahead]`).
fn per_length(
    min_n: u32,
    max_n: u32,
    lookahead: u32,
    check: fn(u32, &[WeightDistribution]) -> Result<Vec<Check>>,
) -> Result<Vec<Check>> {
    if min_n > max_n {
        return Ok(Vec::new());
    }
    let seq = distribution_sequence(l0(), Generator::Zero, max_n + lookahead);
    let batches = (min_n..=max_n)
        .into_par_iter()
        .map(|n| check(n, &seq[n as usize..=(n + lookahead) as usize]))
        .collect::<Result<Vec<_>>>()?;
    Ok(batches.into_iter().flatten().collect())
}

fn sanderson(n: u32, seq: &[WeightDistribution]) -> Result<Vec<Check>> {
    let mu = &seq[0];
    let m = RawMoments::new(mu, 2)?;
    let d = F::a_minus_b();
    let shift = i64::from(n / 2);
    let observed: Vec<String> = marginal(mu, &d)
        .into_iter()
        .map(|(t, v)| format!("{}:{}", t.to_integer(), v))
        .collect();
    let expected: Vec<String> = (0..=i64::from(n))
        .map(|k| {
            format!(
                "{}:{}",
                k - shift,
                binomial(BigInt::from(n), BigInt::from(k))
            )
        })
        .collect();
    let (lhs, rhs) = (observed.join(","), expected.join(","));
    let mut out = vec![
        Check::new(
            "marginal(a-b)=C(N,t+floor(N/2))",
            n,
            lhs.clone(),
            rhs.clone(),
            lhs == rhs,
        ),
        Check::new(
            "total_mass=2^N",
            n,
            mu.total_mass().to_string(),
            BigInt::from(2).pow(n).to_string(),
            mu.total_mass() == BigInt::from(2).pow(n),
        ),
        Check::equal(
            "Var(a-b)",
            n,
            &m.variance(&d)?,
            &reference(ReferenceFormula::VarAMinusB, n)?,
        ),
    ];
    let m3 = RawMoments::new(mu, 3)?;
    let cov_sq_lin = m3.covariance(&d.pow(2), &d)?;
    if n % 2 == 1 {
        out.push(Check::equal(
            "Cov((a-b)^2,a-b)",
            n,
            &cov_sq_lin,
            &reference(ReferenceFormula::CovSquareLinearOdd, n)?,
        ));
        out.push(Check::equal(
            "E[b]",
            n,
            &m.expectation(&F::b())?,
            &reference(ReferenceFormula::ExpectedBOdd, n)?,
        ));
    } else {
        out.push(Check::equal("Cov((a-b)^2,a-b)", n, &cov_sq_lin, &r(0, 1)));
        out.push(Check::equal(
            "E[a]",
            n,
            &m.expectation(&F::a())?,
            &reference(ReferenceFormula::ExpectedDegreeEven, n)?,
        ));
    }
    Ok(out)
}

fn palindrome(n: u32, seq: &[WeightDistribution]) -> Result<Vec<Check>> {
    let mu = &seq[0];
    let (lhs, pass) = match palindromicity_check(mu, n) {
        Palindromicity::Holds => ("holds".to_string(), true),
        Palindromicity::Fails { witness } => (format!("fails@{witness}"), false),
    };
    let closed = level1_distribution(n);
    Ok(vec![
        Check::new("mult(λ)=mult(λ-S(N,λ)δ)", n, lhs, "holds".into(), pass),
        Check::new(
            "closed_form=recursion",
            n,
            format!("{} points", closed.len()),
            format!("{} points", mu.len()),
            closed == *mu,
        ),
    ])
}

/// `X` and `Y` of the stretching argument.
fn stretch_coordinates(n: u32) -> (F, F) {
    let nn = i64::from(n);
    if n % 2 == 1 {
        (
            F::a_minus_b() - F::constant(r(1, 2)),
            F::b() - F::constant(r(nn * nn - 2, 8)),
        )
    } else {
        (F::a_minus_b(), F::a() - F::constant(r(nn * nn, 8)))
    }
}

fn stretch(n: u32, seq: &[WeightDistribution]) -> Result<Vec<Check>> {
    let mu = &seq[0];
    let m = RawMoments::new(mu, 4)?;
    let d = F::a_minus_b();
    let sq = d.pow(2);
    let two = r(2, 1);
    let (x, y) = stretch_coordinates(n);

    let direct = m.covariance(&x.pow(2), &y)?;
    let nu = pushforward(mu, &CoordinateMap::new(x.pow(2), y));
    let stretched = planar_coordinate_covariance(&nu)?;
    let collapsed = planar_covariance(
        &nu,
        |x, y| x.clone() - y.clone() * two.clone(),
        |x, _| x.clone(),
    )?;

    let mut out = vec![
        Check::equal("Cov(X^2,Y)=Cov_q*(X,Y)", n, &direct, &stretched),
        Check::equal("Cov_q*(X-2Y,X)", n, &collapsed, &r(0, 1)),
    ];
    let stretch_value = reference(ReferenceFormula::CovStretch, n)?;
    if n % 2 == 1 {
        let u = &(&sq - &d) - &F::b().scale(&two);
        out.push(Check::equal(
            "Cov((a-b)^2-(a-b)-2b,(a-b)^2-(a-b))",
            n,
            &m.covariance(&u, &(&sq - &d))?,
            &r(0, 1),
        ));
        out.push(Check::equal(
            "Cov(b,(a-b)^2)",
            n,
            &m.covariance(&F::b(), &sq)?,
            &stretch_value,
        ));
        out.push(Check::equal(
            "Cov(b,a-b)",
            n,
            &m.covariance(&F::b(), &d)?,
            &r(0, 1),
        ));
        out.push(Check::equal(
            "Cov(b^2,a-b)",
            n,
            &m.covariance(&F::b().pow(2), &d)?,
            &r(0, 1),
        ));
    } else {
        let u = &sq - &F::a().scale(&two);
        out.push(Check::equal(
            "Cov((a-b)^2-2a,(a-b)^2)",
            n,
            &m.covariance(&u, &sq)?,
            &r(0, 1),
        ));
        out.push(Check::equal(
            "Cov(a,(a-b)^2)",
            n,
            &m.covariance(&F::a(), &sq)?,
            &stretch_value,
        ));
        out.push(Check::equal(
            "Var((a-b)^2)",
            n,
            &m.variance(&sq)?,
            &reference(ReferenceFormula::VarSquareEven, n)?,
        ));
    }
    Ok(out)
}

fn recurrence(n: u32, seq: &[WeightDistribution]) -> Result<Vec<Check>> {
    let (cur, next) = (&seq[0], &seq[1]);
    let m = RawMoments::new(cur, 3)?;
    let m1 = RawMoments::new(next, 2)?;
    let (a2, b2) = (F::a().pow(2), F::b().pow(2));
    let sq = F::a_minus_b().pow(2);
    let two = r(2, 1);
    let var_degree = reference(ReferenceFormula::VarDegree, n)?;
    let mut out = Vec::new();
    if n % 2 == 1 {
        let lhs = m1.expectation(&a2)?;
        out.push(Check::equal(
            "E_{N+1}[a^2]=E_N[a^2]+N(N^2+N+2)/16+2Cov_N(b,(a-b)^2)",
            n,
            &lhs,
            &(m.expectation(&a2)?
                + reference(ReferenceFormula::A2IncrementOdd, n)?
                + two * m.covariance(&F::b(), &sq)?),
        ));
        out.push(Check::equal(
            "E_{N+1}[a^2]=E_N[a^2]+N^2(N+3)/16",
            n,
            &lhs,
            &(m.expectation(&a2)? + reference(ReferenceFormula::A2RecurrenceOdd, n)?),
        ));
        out.push(Check::equal(
            "E_{N+1}[a^2]=E_N[b^2]+N(N+2)(N+3)/16",
            n,
            &lhs,
            &(m.expectation(&b2)? + reference(ReferenceFormula::A2FromB2Odd, n)?),
        ));
        out.push(Check::equal(
            "E[a^2]-E[b^2]",
            n,
            &(m.expectation(&a2)? - m.expectation(&b2)?),
            &reference(ReferenceFormula::SquareGapOdd, n)?,
        ));
        out.push(Check::equal(
            "Var(b)",
            n,
            &m.variance(&F::b())?,
            &var_degree,
        ));
        out.push(Check::equal(
            "E[b^2]",
            n,
            &m.expectation(&b2)?,
            &reference(ReferenceFormula::SecondMomentBOdd, n)?,
        ));
    } else {
        let lhs = m1.expectation(&b2)?;
        out.push(Check::equal(
            "E_{N+1}[b^2]=E_N[b^2]+N^2(N+1)/16+2Cov_N(a,(a-b)^2)",
            n,
            &lhs,
            &(m.expectation(&b2)?
                + reference(ReferenceFormula::B2IncrementEven, n)?
                + two * m.covariance(&F::a(), &sq)?),
        ));
        out.push(Check::equal(
            "E_{N+1}[b^2]=E_N[b^2]+N(N^2+3N-2)/16",
            n,
            &lhs,
            &(m.expectation(&b2)? + reference(ReferenceFormula::B2RecurrenceEven, n)?),
        ));
        out.push(Check::equal(
            "E_{N+1}[b^2]=E_N[a^2]+N(N+1)(N+2)/16",
            n,
            &lhs,
            &(m.expectation(&a2)? + reference(ReferenceFormula::B2FromA2Even, n)?),
        ));
        out.push(Check::equal(
            "E[b^2]-E[a^2]",
            n,
            &(m.expectation(&b2)? - m.expectation(&a2)?),
            &reference(ReferenceFormula::SquareGapEven, n)?,
        ));
        out.push(Check::equal(
            "Var(a)",
            n,
            &m.variance(&F::a())?,
            &var_degree,
        ));
        out.push(Check::equal(
            "E[a^2]",
            n,
            &m.expectation(&a2)?,
            &reference(ReferenceFormula::SecondMomentAEven, n)?,
        ));
    }
    Ok(out)
}

/// Covariance matrix of (degree, finite weight) for `V_{w_{N,j}}(Λ_j)`.
pub fn expected_covariance_matrix(j: Generator, n: u32) -> Result<CovarianceMatrix<Rational>> {
    let var_fin = reference(ReferenceFormula::VarFiniteWeight, n)?;
    if n % 2 == j.index() % 2 {
        Ok(CovarianceMatrix::new(
            reference(ReferenceFormula::VarDegree, n)?,
            r(0, 1),
            var_fin,
        ))
    } else {
        Ok(CovarianceMatrix::new(
            reference(ReferenceFormula::VarDegreeShifted, n)?,
            reference(ReferenceFormula::CovDegreeFiniteWeightShifted, n)?,
            var_fin,
        ))
    }
}

fn covariance_matrices(min_n: u32, max_n: u32) -> Result<Vec<Check>> {
    if min_n > max_n {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for j in Generator::ALL {
        let seq = distribution_sequence(HighestWeight::fundamental(j), j, max_n);
        let batch = (min_n..=max_n)
            .into_par_iter()
            .map(|n| {
                let got: CovarianceMatrix<Rational> = RawMoments::new(&seq[n as usize], 2)?
                    .covariance_matrix(seq[n as usize].highest_weight())?;
                let want = expected_covariance_matrix(j, n)?;
                Ok(Check::new(
                    format!("Sigma(j={j})"),
                    n,
                    got.to_string(),
                    want.to_string(),
                    got == want,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        out.extend(batch);
    }
    Ok(out)
}

/// Fixed sample `N ∈ {2, 4, 6, 8, 10}` for each level 2..=4.
fn conjecture() -> Result<Vec<Check>> {
    let lengths = [2, 4, 6, 8, 10];
    let mut out = Vec::new();
    for m in 2..=4u32 {
        let row = table_row(m).expect("rows exist for 2..=4");
        let fmt_poly = |c: &[Rational]| c.iter().map(format_rational).collect::<Vec<_>>().join(",");
        match conjecture_check(m, &lengths) {
            Ok(report) => {
                out.push(Check::new(
                    format!("var_degree_cubic(m={m})"),
                    10,
                    fmt_poly(report.fit.coeffs()),
                    fmt_poly(row.coeffs()),
                    report.table_match,
                ));
                for p in &report.points {
                    out.push(Check::equal(
                        format!("max_degree(m={m})"),
                        p.n,
                        &Rational::from_i64(p.max_degree),
                        &crate::asymptotics::table_max_degree(m, p.n),
                    ));
                }
            }
            Err(e @ Error::NotCubic { .. }) => {
                out.push(Check::new(
                    format!("var_degree_cubic(m={m})"),
                    10,
                    e.to_string(),
                    fmt_poly(row.coeffs()),
                    false,
                ));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_all_pass(checks: &[Check]) {
        let failures: Vec<_> = checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.to_string())
            .collect();
        assert!(failures.is_empty(), "{failures:#?}");
    }

    #[test]
    fn suites_pass_on_small_range() {
        for suite in Suite::INDIVIDUAL {
            let checks = run_suite(suite, 1, 12).unwrap();
            assert!(!checks.is_empty(), "{suite}");
            assert_all_pass(&checks);
        }
    }

    #[test]
    fn sanderson_line_at_one() {
        let checks = run_suite(Suite::Sanderson, 1, 1).unwrap();
        assert_eq!(
            checks[0].to_string(),
            "PASS marginal(a-b)=C(N,t+floor(N/2)) N=1 lhs=0:1,1:1 rhs=0:1,1:1"
        );
    }

    #[test]
    fn covariance_lines_are_formatted() {
        let checks = run_suite(Suite::Covariance, 5, 5).unwrap();
        assert_eq!(
            checks[0].to_string(),
            "PASS Sigma(j=0) N=5 lhs=[[35/8,5/2],[5/2,5/1]] rhs=[[35/8,5/2],[5/2,5/1]]"
        );
        assert_eq!(checks[1].identity, "Sigma(j=1)");
    }

    #[test]
    fn suite_names_parse() {
        for s in std::iter::once(Suite::All).chain(Suite::INDIVIDUAL) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn empty_range_yields_nothing() {
        assert!(run_suite(Suite::Stretch, 5, 4).unwrap().is_empty());
    }

    #[test]
    fn a_wrong_reference_fails() {
        // the printed sign convention −2(a−b) flips the off-diagonal entry
        let mu = &distribution_sequence(l0(), Generator::Zero, 5)[5];
        let flipped = Functional::constant(r(0, 1)) - F::a_minus_b().scale(&r(2, 1));
        let cov = RawMoments::new(mu, 2)
            .unwrap()
            .covariance(&F::a(), &flipped)
            .unwrap();
        let c = Check::equal(
            "flipped",
            5,
            &cov,
            expected_covariance_matrix(Generator::Zero, 5).unwrap().xy(),
        );
        assert!(!c.pass);
        assert!(c
            .to_string()
            .starts_with("FAIL flipped N=5 lhs=-5/2 rhs=5/2"));
    }
}
