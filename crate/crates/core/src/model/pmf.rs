use std::collections::BTreeMap;

use super::{Level, ModelError};
use crate::scalar::Probability;

/// Probability mass of a single level count on `0..=q`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf<T> {
    q: Level,
    mass: BTreeMap<Level, T>,
}

impl<T: Probability> Pmf<T> {
    pub fn new(q: Level, mass: BTreeMap<Level, T>) -> Result<Self, ModelError> {
        if q == 0 || q > super::MAX_LEVELS {
            return Err(ModelError::InvalidDepth(q));
        }
        if mass.is_empty() {
            return Err(ModelError::EmptySupport);
        }
        let mut total = T::zero();
        for (&n, p) in &mass {
            if n > q {
                return Err(ModelError::LevelOutOfRange { level: n.into(), q });
            }
            if *p < T::zero() {
                return Err(ModelError::NonPositiveProbability(p.to_string()));
            }
            total = total + p.clone();
        }
        if !total.same_as(&T::one()) {
            return Err(ModelError::NonUnitMass(total.to_string()));
        }
        Ok(Self { q, mass })
    }

    pub(crate) fn from_validated(q: Level, mass: BTreeMap<Level, T>) -> Self {
        Self { q, mass }
    }

    pub fn q(&self) -> Level {
        self.q
    }

    /// `Pr[N = n]`.
    pub fn mass(&self, n: Level) -> T {
        self.mass.get(&n).cloned().unwrap_or_else(T::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (Level, &T)> + '_ {
        self.mass.iter().map(|(&n, p)| (n, p))
    }

    /// Complementary cdf `Pr[N ≥ n]`.
    pub fn ccdf(&self, n: Level) -> T {
        self.mass.range(n..).fold(T::zero(), |acc, (_, p)| acc + p.clone())
    }

    /// `E[N]` as the tail sum `Σ_{n=1..q} Pr[N ≥ n]`.
    pub fn expected_level(&self) -> T {
        let tail = (1..=self.q).fold(T::zero(), |acc, n| acc + self.ccdf(n));
        debug_assert!(tail.same_as(&self.expected_level_direct()));
        tail
    }

    /// `E[N]` straight from the definition `Σ n · Pr[N = n]`.
    pub fn expected_level_direct(&self) -> T {
        self.mass.iter().fold(T::zero(), |acc, (&n, p)| acc + T::from_count(n.into()) * p.clone())
    }
}
