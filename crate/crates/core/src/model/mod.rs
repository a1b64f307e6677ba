//! Fading distributions, marginals and bit-level signals.

mod bits;
mod distribution;
mod instance;
mod pmf;

pub use bits::BitColumn;
pub use distribution::{
    ChannelState, FadingDistribution, JointDistribution, Level, Link, MacDistribution, MacLink, MacState, StateTriple,
};
pub use instance::{parse_instance, serialize_instance, Instance};
pub use pmf::Pmf;

/// Largest supported depth `q`; a column fits in one machine word.
pub const MAX_LEVELS: Level = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("probabilities sum to {0}, expected exactly 1")]
    NonUnitMass(String),
    #[error("level {level} outside 0..={q}")]
    LevelOutOfRange { level: i64, q: Level },
    #[error("distribution has no atoms")]
    EmptySupport,
    #[error("probability {0} is not strictly positive")]
    NonPositiveProbability(String),
    #[error("state {0} listed more than once")]
    DuplicateState(String),
    #[error("depth q = {0} must lie in 1..=64")]
    InvalidDepth(Level),
    #[error("two-sided instances (field `n12`) are not supported")]
    TwoSided,
    #[error("syntax error: {0}")]
    Syntax(String),
}
