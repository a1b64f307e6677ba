//! Public/private level splitting for user 1.
//!
//! Levels in the private set carry messages for receiver 1 only. When every
//! private level that reaches receiver 2 lands above user 2's band, receiver 2
//! sees the remaining public levels as a smaller layered channel whose level
//! counts are the number of public levels below each link's cut-off.

use rayon::prelude::*;

use super::regime::classify;
use super::{AnalysisError, LevelSet};
use crate::model::{FadingDistribution, Level, StateTriple};
use crate::scalar::Probability;

/// Largest depth accepted by [`best_private_split`].
pub const MAX_SPLIT_DEPTH: Level = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct PrivateSplit<T> {
    /// `Σ_{p ∈ P} Pr(N11 ≥ p)`, decoded by receiver 1 alone.
    pub bonus: T,
    /// Channel seen by the public levels; same `q` as the original.
    pub transformed: FadingDistribution<T>,
}

fn public_count(private: &LevelSet, cutoff: Level) -> Level {
    cutoff - private.iter().take_while(|&p| p <= cutoff).count() as Level
}

/// Moves the levels of `private` out of the shared channel.
pub fn private_split<T: Probability>(
    dist: &FadingDistribution<T>,
    private: &LevelSet,
) -> Result<PrivateSplit<T>, AnalysisError> {
    if let Some(bad) = private.iter().find(|&p| p == 0 || p > dist.q()) {
        return Err(AnalysisError::LevelOutOfRange { level: bad, q: dist.q() });
    }
    for (s, _) in dist.atoms() {
        for p in private.iter() {
            if p <= s.n21 && i64::from(p) > i64::from(s.n21) - i64::from(s.n22) {
                return Err(AnalysisError::CollisionWithInterferedBand { level: p, state: *s });
            }
        }
    }
    let bonus = private.iter().fold(T::zero(), |acc, p| acc + dist.probability(|s| s.n11 >= p));
    let transformed = FadingDistribution::merged(
        dist.q(),
        dist.atoms().iter().map(|(s, prob)| {
            (StateTriple::new(public_count(private, s.n11), public_count(private, s.n21), s.n22), prob.clone())
        }),
    )
    .expect("level counts only shrink");
    Ok(PrivateSplit { bonus, transformed })
}

/// Exhaustive search over private level sets. Returns the set with the largest
/// `bonus + best known sum rate of the transformed channel`; ties go to the
/// smaller set, then to the lexicographically smaller one.
pub fn best_private_split<T: Probability>(dist: &FadingDistribution<T>) -> Result<(LevelSet, T), AnalysisError> {
    let q = dist.q();
    if q > MAX_SPLIT_DEPTH {
        return Err(AnalysisError::QTooLarge { q, max: MAX_SPLIT_DEPTH });
    }
    let best = (0u32..(1u32 << q))
        .into_par_iter()
        .filter_map(|mask| {
            let set: LevelSet = (1..=q).filter(|n| mask >> (n - 1) & 1 == 1).collect();
            let split = private_split(dist, &set).ok()?;
            let report = classify(&split.transformed);
            let inner = report.sum_capacity.unwrap_or(report.lower);
            Some((set, split.bonus + inner))
        })
        .reduce_with(|a, b| if prefer(&b, &a) { b } else { a });
    Ok(best.expect("the empty set is always a valid split"))
}

fn prefer<T: Probability>(cand: &(LevelSet, T), cur: &(LevelSet, T)) -> bool {
    if cand.1 != cur.1 {
        return cand.1 > cur.1;
    }
    (cand.0.len(), cand.0.to_vec()) < (cur.0.len(), cur.0.to_vec())
}
