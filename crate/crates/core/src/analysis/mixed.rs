//! Mixed-interference achievable rate, the level set `I1` and the lemma
//! condition under which the rate collapses to a single expectation.
//!
//! The lemma condition `(E[A1] − E[A2])⁺ = E[A1]` is tested as
//! `min(E[A1], E[A2]) = 0`. For `x, y ≥ 0`: if `x = 0` both sides vanish; if
//! `x > 0` the positive part is `x − y` or `0`, and equals `x` only for `y = 0`.

use serde::{Deserialize, Serialize};

use super::bounds::triple;
use super::{AnalysisError, LevelSet};
use crate::model::{FadingDistribution, Level, StateTriple};
use crate::scalar::Probability;

/// User-1 level `n` lands on one of user 2's levels at receiver 2.
pub fn interferes(s: &StateTriple, n: Level) -> bool {
    let (_, b, c) = triple(s);
    let n = i64::from(n);
    b >= n && b - c < n
}

/// `Pr(N11 ≥ n)`.
fn direct_tail<T: Probability>(dist: &FadingDistribution<T>, n: Level) -> T {
    dist.probability(|s| s.n11 >= n)
}

/// `Pr(N21 ≥ n, N21 − N22 < n)`.
fn interference_prob<T: Probability>(dist: &FadingDistribution<T>, n: Level) -> T {
    dist.probability(|s| interferes(s, n))
}

/// Levels on which user 1 is at least as likely to reach its own receiver as
/// it is to interfere with user 2 (inclusive at equality).
pub fn interference_set_i1<T: Probability>(dist: &FadingDistribution<T>) -> LevelSet {
    (1..=dist.q()).filter(|&n| direct_tail(dist, n) >= interference_prob(dist, n)).collect()
}

/// `E[N22] + Σ_n (Pr(N11 ≥ n) − Pr(N21 ≥ n, N21 − N22 < n))⁺`.
pub fn mixed_achievable<T: Probability>(dist: &FadingDistribution<T>) -> T {
    let user2 = dist.expected_functional(|s| s.n22.into());
    (1..=dist.q()).fold(user2, |acc, n| acc + (direct_tail(dist, n) - interference_prob(dist, n)).positive_part())
}

/// Per-level rates of the mixed scheme: user 1 sends `Pr(N11 ≥ n)` on each
/// level of `I1`; user 2 sends `E[N22] − Σ_{n∈I1} Pr(interference at n)`
/// jointly across its levels.
pub fn mixed_rates<T: Probability>(dist: &FadingDistribution<T>) -> (Vec<(Level, T)>, T) {
    let i1 = interference_set_i1(dist);
    let user1 = i1.iter().map(|n| (n, direct_tail(dist, n))).collect();
    let user2 = i1.iter().fold(dist.expected_functional(|s| s.n22.into()), |acc, n| acc - interference_prob(dist, n));
    (user1, user2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaRow<T> {
    pub n: Level,
    pub e_a1: T,
    pub e_a2: T,
    pub holds_at_n: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaTable<T> {
    pub rows: Vec<LemmaRow<T>>,
    pub holds: bool,
}

fn a1(s: &StateTriple, n: Level) -> bool {
    let (a, b, c) = triple(s);
    let n = i64::from(n);
    (b < n && n <= a) || a.min(b - c) >= n
}

fn a2(s: &StateTriple, n: Level) -> bool {
    let (a, _, _) = triple(s);
    a < i64::from(n) && interferes(s, n)
}

pub fn lemma_condition<T: Probability>(dist: &FadingDistribution<T>) -> LemmaTable<T> {
    let rows: Vec<_> = (1..=dist.q())
        .map(|n| {
            let e_a1 = dist.probability(|s| a1(s, n));
            let e_a2 = dist.probability(|s| a2(s, n));
            let holds_at_n = e_a1.clone().min_of(e_a2.clone()).is_zero();
            LemmaRow { n, e_a1, e_a2, holds_at_n }
        })
        .collect();
    let holds = rows.iter().all(|r| r.holds_at_n);
    LemmaTable { rows, holds }
}

/// `E[min(N11 + N22 + (N11 − N21)⁺, max(N11, N21, N22, N11 + N22 − N21))]`,
/// which equals [`mixed_achievable`] when the lemma condition holds.
pub fn lemma_simplified<T: Probability>(dist: &FadingDistribution<T>) -> Result<T, AnalysisError> {
    if !lemma_condition(dist).holds {
        return Err(AnalysisError::LemmaConditionFails);
    }
    Ok(dist.expected_functional(|s| {
        let (a, b, c) = triple(s);
        (a + c + (a - b).max(0)).min(a.max(b).max(c).max(a + c - b))
    }))
}
