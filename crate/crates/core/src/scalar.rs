//! Scalar types the statistics can be computed over.
//!
//! Every identity in this crate is checked with [`Rational`]; the float
//! instantiations exist for rendering and quick exploratory summaries.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Field-like scalar that can absorb integer multiplicities.
pub trait Scalar:
    Num + Signed + Clone + PartialOrd + Debug + Display + Send + Sync + 'static
{
    fn from_bigint(value: &BigInt) -> Self;

    fn from_i64(value: i64) -> Self;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_i64(numer) / Self::from_i64(denom)
    }

    fn as_f64(&self) -> f64;
}

impl Scalar for BigRational {
    fn from_bigint(value: &BigInt) -> Self {
        BigRational::from_integer(value.clone())
    }

    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

macro_rules! impl_float_scalar {
    ($f:ty) => {
        impl Scalar for $f {
            fn from_bigint(value: &BigInt) -> Self {
                ToPrimitive::to_f64(value).unwrap_or(f64::NAN) as $f
            }

            fn from_i64(value: i64) -> Self {
                <$f as FromPrimitive>::from_i64(value).unwrap_or(<$f>::NAN)
            }

            fn as_f64(&self) -> f64 {
                *self as f64
            }
        }
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn format_rational(value: &BigRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `p/q` or a bare integer.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_format_is_always_p_over_q() {
        assert_eq!(
            format_rational(&<BigRational as Scalar>::from_i64(3)),
            "3/1"
        );
        assert_eq!(format_rational(&BigRational::from_ratio(-6, 4)), "-3/2");
    }

    #[test]
    fn parse_round_trips() {
        let r = BigRational::from_ratio(85, 16);
        assert_eq!(parse_rational(&format_rational(&r)), Some(r));
        assert_eq!(
            parse_rational("7"),
            Some(<BigRational as Scalar>::from_i64(7))
        );
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn float_scalars_convert_bigints() {
        let big = BigInt::from(1u64 << 40);
        assert_eq!(<f64 as Scalar>::from_bigint(&big), (1u64 << 40) as f64);
        assert_eq!(<f32 as Scalar>::from_ratio(1, 4), 0.25f32);
    }
}
