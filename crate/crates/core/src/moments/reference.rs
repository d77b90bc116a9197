//! Closed-form values of level-1 statistics, as functions of the word length.
//!
//! Throughout, `μ_N` is the weight distribution of `V_{w_N}(Λ₀)`.
//!
//! | name | value | statistic |
//! |------|-------|-----------|
//! | `var_degree` | N(N−1)(2N+5)/96 | Var(a) for even N, Var(b) for odd N |
//! | `var_degree_shifted` | N(N−1)(2N+5)/96 + N/4 | Var(a) for odd N |
//! | `var_finite_weight` | N | Var(n + 2(a−b)) |
//! | `cov_degree_finite_weight_shifted` | N/2 | Cov(a, n + 2(a−b)), N ≢ j |
//! | `var_a_minus_b` | N/4 | Var(a−b) |
//! | `cov_square_linear_odd` | N/4 | Cov((a−b)², a−b), odd N |
//! | `var_square_even` | N(N−1)/8 | Var((a−b)²), even N |
//! | `cov_stretch` | N(N−1)/16 | Cov(b,(a−b)²) odd, Cov(a,(a−b)²) even |
//! | `a2_increment_odd` | N(N²+N+2)/16 | E_{N+1}[a²] − E_N[a²] − 2Cov_N(b,(a−b)²) |
//! | `b2_increment_even` | N²(N+1)/16 | E_{N+1}[b²] − E_N[b²] − 2Cov_N(a,(a−b)²) |
//! | `a2_recurrence_odd` | N²(N+3)/16 | E_{N+1}[a²] − E_N[a²] |
//! | `b2_recurrence_even` | N(N²+3N−2)/16 | E_{N+1}[b²] − E_N[b²] |
//! | `a2_from_b2_odd` | N(N+2)(N+3)/16 | E_{N+1}[a²] − E_N[b²] |
//! | `b2_from_a2_even` | N(N+1)(N+2)/16 | E_{N+1}[b²] − E_N[a²] |
//! | `square_gap_odd` | N(N+3)/8 | E_N[a²] − E_N[b²], odd N |
//! | `square_gap_even` | N/4 | E_N[b²] − E_N[a²], even N |
//! | `second_moment_a_even` | N(3N³+10N²+9N−10)/192 | E[a²] |
//! | `second_moment_b_odd` | (N−1)(3N³+13N²+10N−12)/192 | E[b²] |
//! | `expected_b_odd` | (N−1)(N+2)/8 | E[b] |
//! | `expected_degree_even` | N(N+1)/8 | E[a] (= k(2k+1)/4 at N = 2k) |
//!
//! The catalog is closed: unknown names and parity violations are errors.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Any,
    Even,
    Odd,
}

impl Parity {
    pub fn admits(self, n: u32) -> bool {
        match self {
            Parity::Any => true,
            Parity::Even => n.is_multiple_of(2),
            Parity::Odd => n % 2 == 1,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Parity::Any => "all",
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

macro_rules! catalog {
    ($($variant:ident => $name:literal, $parity:ident, |$n:ident| $num:expr, $den:literal;)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum ReferenceFormula {
            $($variant,)*
        }

        impl ReferenceFormula {
            pub const ALL: &'static [ReferenceFormula] = &[$(ReferenceFormula::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(ReferenceFormula::$variant => $name,)*
                }
            }

            pub fn parity(self) -> Parity {
                match self {
                    $(ReferenceFormula::$variant => Parity::$parity,)*
                }
            }

            fn numerator_and_denominator(self, n: i64) -> (i64, i64) {
                match self {
                    $(ReferenceFormula::$variant => {
                        let $n = n;
                        ($num, $den)
                    })*
                }
            }
        }

        impl FromStr for ReferenceFormula {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok(ReferenceFormula::$variant),)*
                    other => Err(Error::UnknownFormula(other.to_string())),
                }
            }
        }
    };
}

catalog! {
    VarDegree => "var_degree", Any, |n| n * (n - 1) * (2 * n + 5), 96;
    VarDegreeShifted => "var_degree_shifted", Any, |n| n * (n - 1) * (2 * n + 5) + 24 * n, 96;
    VarFiniteWeight => "var_finite_weight", Any, |n| n, 1;
    CovDegreeFiniteWeightShifted => "cov_degree_finite_weight_shifted", Any, |n| n, 2;
    VarAMinusB => "var_a_minus_b", Any, |n| n, 4;
    CovSquareLinearOdd => "cov_square_linear_odd", Odd, |n| n, 4;
    VarSquareEven => "var_square_even", Even, |n| n * (n - 1), 8;
    CovStretch => "cov_stretch", Any, |n| n * (n - 1), 16;
    A2IncrementOdd => "a2_increment_odd", Odd, |n| n * (n * n + n + 2), 16;
    B2IncrementEven => "b2_increment_even", Even, |n| n * n * (n + 1), 16;
    A2RecurrenceOdd => "a2_recurrence_odd", Odd, |n| n * n * (n + 3), 16;
    B2RecurrenceEven => "b2_recurrence_even", Even, |n| n * (n * n + 3 * n - 2), 16;
    A2FromB2Odd => "a2_from_b2_odd", Odd, |n| n * (n + 2) * (n + 3), 16;
    B2FromA2Even => "b2_from_a2_even", Even, |n| n * (n + 1) * (n + 2), 16;
    SquareGapOdd => "square_gap_odd", Odd, |n| n * (n + 3), 8;
    SquareGapEven => "square_gap_even", Even, |n| n, 4;
    SecondMomentAEven => "second_moment_a_even", Even, |n| n * (3 * n * n * n + 10 * n * n + 9 * n - 10), 192;
    SecondMomentBOdd => "second_moment_b_odd", Odd, |n| (n - 1) * (3 * n * n * n + 13 * n * n + 10 * n - 12), 192;
    ExpectedBOdd => "expected_b_odd", Odd, |n| (n - 1) * (n + 2), 8;
    ExpectedDegreeEven => "expected_degree_even", Even, |n| n * (n + 1), 8;
}

impl ReferenceFormula {
    /// Exact value at word length `n ≥ 1`.
    pub fn eval(self, n: u32) -> Result<Rational> {
        if n == 0 {
            return Err(Error::OutOfRange {
                name: self.name(),
                min: 1,
                n,
            });
        }
        if !self.parity().admits(n) {
            return Err(Error::ParityViolation {
                name: self.name(),
                parity: self.parity().label(),
                n,
            });
        }
        // Quartic numerators stay far inside i64 for any practical N.
        let (num, den) = self.numerator_and_denominator(i64::from(n));
        Ok(Rational::from_ratio(num, den))
    }
}

impl fmt::Display for ReferenceFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Looks up `name` in the catalog and evaluates it at `n`.
pub fn reference_formula(name: &str, n: u32) -> Result<Rational> {
    name.parse::<ReferenceFormula>()?.eval(n)
}
