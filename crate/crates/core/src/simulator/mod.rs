//! Bit-exact layered erasure channels, the achievability schemes and a seeded
//! Monte Carlo harness.
//!
//! Fading is i.i.d. across channel uses. Every code is a random linear code
//! sized at `(1 − ε)` of its formula rate; a user succeeds when every one of
//! its codebooks decodes at its intended receiver.

mod channel;
mod montecarlo;
mod pipeline;
mod scheme;

pub use channel::{landing_position, overlapping_level, sample_states, transmit_receive, ChannelUse, Geometry};
pub use montecarlo::{monte_carlo, trial_seed, MonteCarlo, SummaryRow, TrialRecord, TrialRow};
pub use pipeline::{run_scheme, run_scheme_traced, DecodeRecord, Diagnostics, LevelSlots, Trace, TrialResult};
pub use scheme::{design, mixed_erasures, Design, SchemeKind, SchemeSpec, StreamDesign};

use crate::analysis::{AnalysisError, Regime};
use crate::coding::CodingError;
use crate::model::Level;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimError {
    #[error("scheme `{scheme}` needs the {regime} condition, which the instance violates")]
    RegimeMismatch { scheme: String, regime: Regime },
    #[error("scheme `{scheme}` does not apply to {instance} instances")]
    KindMismatch { scheme: String, instance: &'static str },
    #[error("column width {got}, expected {expected}")]
    WidthMismatch { expected: Level, got: Level },
    #[error("sequence lengths differ: {states} states, {x1} and {x2} inputs")]
    LengthMismatch { states: usize, x1: usize, x2: usize },
    #[error("configuration error: {0}")]
    Configuration(String),
    #[error("unknown scheme `{0}`")]
    UnknownScheme(String),
    #[error("stream {stream} decoded to a wrong message at receiver {receiver}")]
    Unsound { stream: usize, receiver: usize },
    #[error(transparent)]
    Coding(#[from] CodingError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}
