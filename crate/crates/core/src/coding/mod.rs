//! Random linear erasure codes over GF(2).
//!
//! Decoding succeeds exactly when the generator columns of the received slots
//! span the message space, so reliability reduces to a rank condition.

mod codebook;
mod matrix;

pub use codebook::Codebook;
pub use matrix::{BinaryMatrix, Bits};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodingError {
    #[error("message has {got} bits, codebook expects {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("received slots have rank {rank} < k = {k}")]
    InsufficientRank { rank: usize, k: usize },
    #[error("{got} slots received, at least k = {k} needed")]
    TooFewSlots { got: usize, k: usize },
    #[error("received bits are inconsistent with every message")]
    InconsistentSystem,
    #[error("slot {slot} outside 0..{n_slots}")]
    SlotOutOfRange { slot: usize, n_slots: usize },
    #[error("slot {0} received twice")]
    DuplicateSlot(usize),
    #[error("k = {k} exceeds slot count {n_slots}")]
    RateAboveOne { k: usize, n_slots: usize },
}

/// Rank of a matrix over GF(2).
pub fn rank(m: &BinaryMatrix) -> usize {
    m.rank()
}
