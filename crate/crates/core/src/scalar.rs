//! Scalar abstraction for probabilities, expectations and rates.
//!
//! Every analysis routine is written against [`Probability`], so the same code
//! runs on exact rationals (the default, see [`crate::Rational`]) and on
//! `f64`/`f32` when a quick floating-point estimate is enough.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, ToPrimitive, Zero};

/// A field-like scalar able to hold probabilities and expected level counts.
pub trait Probability: Num + Clone + PartialOrd + Debug + Display + Send + Sync + 'static {
    /// `true` when comparisons and sums are exact.
    const EXACT: bool;

    /// Embeds an integer level count.
    fn from_count(n: i64) -> Self;

    /// Lossy conversion used for sampling and reporting.
    fn to_f64(&self) -> f64;

    /// Parses `"a/b"` or an integer/decimal literal.
    fn parse_probability(text: &str) -> Option<Self>;

    /// Equality used for normalization checks; exact types compare exactly.
    fn same_as(&self, other: &Self) -> bool {
        self == other
    }

    /// `x⁺ = max(x, 0)`.
    fn positive_part(self) -> Self {
        if self > Self::zero() {
            self
        } else {
            Self::zero()
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

fn split_fraction(text: &str) -> Option<(&str, Option<&str>)> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    match text.split_once('/') {
        Some((n, d)) => Some((n.trim(), Some(d.trim()))),
        None => Some((text, None)),
    }
}

impl Probability for BigRational {
    const EXACT: bool = true;

    fn from_count(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse_probability(text: &str) -> Option<Self> {
        let (num, den) = split_fraction(text)?;
        let num = BigInt::from_str(num).ok()?;
        let den = match den {
            Some(d) => BigInt::from_str(d).ok()?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num, den))
    }
}

macro_rules! impl_small_ratio {
    ($int:ty) => {
        impl Probability for Ratio<$int> {
            const EXACT: bool = true;

            fn from_count(n: i64) -> Self {
                Ratio::from_integer(n as $int)
            }

            fn to_f64(&self) -> f64 {
                *self.numer() as f64 / *self.denom() as f64
            }

            fn parse_probability(text: &str) -> Option<Self> {
                let (num, den) = split_fraction(text)?;
                let num: $int = num.parse().ok()?;
                let den: $int = match den {
                    Some(d) => d.parse().ok()?,
                    None => 1,
                };
                if den == 0 {
                    return None;
                }
                Some(Ratio::new(num, den))
            }
        }
    };
}

impl_small_ratio!(i64);
impl_small_ratio!(i128);

macro_rules! impl_float {
    ($float:ty, $tol:expr) => {
        impl Probability for $float {
            const EXACT: bool = false;

            fn from_count(n: i64) -> Self {
                n as $float
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn parse_probability(text: &str) -> Option<Self> {
                let (num, den) = split_fraction(text)?;
                let num: $float = num.parse().ok()?;
                let den: $float = match den {
                    Some(d) => d.parse().ok()?,
                    None => 1.0,
                };
                if den == 0.0 {
                    return None;
                }
                Some(num / den)
            }

            fn same_as(&self, other: &Self) -> bool {
                (self - other).abs() <= $tol
            }
        }
    };
}

impl_float!(f64, 1e-9);
impl_float!(f32, 1e-5);
