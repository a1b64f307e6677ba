//! Outer bounds, regime classification and achievable sum rates, evaluated
//! exactly from the fading statistics.

mod bounds;
mod mixed;
mod private;
mod regime;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use bounds::{mac_corner, mac_corner_swapped, mac_region, outer_bound, RateBounds};
pub use mixed::{
    interference_set_i1, interferes, lemma_condition, lemma_simplified, mixed_achievable, mixed_rates, LemmaRow,
    LemmaTable,
};
pub use private::{best_private_split, private_split, PrivateSplit, MAX_SPLIT_DEPTH};
pub use regime::{classify, sum_capacity_formula, Regime, RegimeReport};

use crate::model::{Level, StateTriple};

/// Ordered subset of `{1, …, q}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LevelSet(BTreeSet<Level>);

impl LevelSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, level: Level) -> bool {
        self.0.contains(&level)
    }

    pub fn insert(&mut self, level: Level) -> bool {
        self.0.insert(level)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Levels in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = Level> + '_ {
        self.0.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<Level> {
        self.iter().collect()
    }
}

impl FromIterator<Level> for LevelSet {
    fn from_iter<I: IntoIterator<Item = Level>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl fmt::Display for LevelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, n) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("condition of regime {0} does not hold")]
    ConditionNotSatisfied(Regime),
    #[error("lemma condition does not hold")]
    LemmaConditionFails,
    #[error("private level {level} collides with user 2 in state {state:?}")]
    CollisionWithInterferedBand { level: Level, state: StateTriple },
    #[error("level {level} outside 1..={q}")]
    LevelOutOfRange { level: Level, q: Level },
    #[error("q = {q} too large for exhaustive search (max {max})")]
    QTooLarge { q: Level, max: Level },
    #[error("unknown regime `{0}`")]
    UnknownRegime(String),
}
