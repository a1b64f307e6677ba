//! Ergodic layered erasure multiple-access and one-sided interference channels.
//!
//! * [`model`]: fading distributions over integer level counts, marginals,
//!   `q`-bit columns and the JSON instance format.
//! * [`analysis`]: outer bounds, regime classification and every sum-rate
//!   formula, evaluated exactly.
//! * [`coding`]: random linear erasure codes over GF(2).
//! * [`simulator`]: bit-exact channel realization, the layered coding schemes
//!   and a seeded Monte Carlo harness.
//!
//! All analysis is generic over [`Probability`]; the aliases below fix the
//! scalar to an exact big rational, which is what the CLI and the tests use.

pub mod analysis;
pub mod coding;
pub mod fixtures;
pub mod model;
pub mod report;
pub mod scalar;
pub mod simulator;

pub use scalar::Probability;

/// Exact non-negative rational used for probabilities, expectations and rates.
pub type Rational = num_rational::BigRational;

pub type FadingDistribution = model::FadingDistribution<Rational>;
pub type MacDistribution = model::MacDistribution<Rational>;
pub type Pmf = model::Pmf<Rational>;
pub type Instance = model::Instance<Rational>;
pub type RateBounds = analysis::RateBounds<Rational>;
pub type RegimeReport = analysis::RegimeReport<Rational>;
pub type LemmaTable = analysis::LemmaTable<Rational>;

pub type FadingDistributionF64 = model::FadingDistribution<f64>;
pub type MacDistributionF64 = model::MacDistribution<f64>;

/// `numer / denom` as a [`Rational`].
///
/// # Panics
///
/// Panics if `denom` is zero.
pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}
