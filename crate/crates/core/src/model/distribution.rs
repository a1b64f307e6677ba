use std::collections::{BTreeMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use super::{ModelError, Pmf};
use crate::scalar::Probability;

/// Integer level count of a single link; `0..=q`.
pub type Level = u32;

/// A realization of a joint channel state.
pub trait ChannelState: Copy + Eq + Ord + Hash + Debug + Send + Sync {
    /// Largest level count appearing in the state.
    fn max_level(&self) -> Level;
}

/// Fading state of the one-sided interference channel. The cross link from
/// transmitter 2 to receiver 1 is absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StateTriple {
    pub n11: Level,
    pub n21: Level,
    pub n22: Level,
}

impl StateTriple {
    pub const fn new(n11: Level, n21: Level, n22: Level) -> Self {
        Self { n11, n21, n22 }
    }

    pub fn get(&self, link: Link) -> Level {
        match link {
            Link::N11 => self.n11,
            Link::N21 => self.n21,
            Link::N22 => self.n22,
        }
    }
}

impl ChannelState for StateTriple {
    fn max_level(&self) -> Level {
        self.n11.max(self.n21).max(self.n22)
    }
}

/// Fading state of the two-user multiple-access channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MacState {
    pub n1: Level,
    pub n2: Level,
}

impl MacState {
    pub const fn new(n1: Level, n2: Level) -> Self {
        Self { n1, n2 }
    }
}

impl ChannelState for MacState {
    fn max_level(&self) -> Level {
        self.n1.max(self.n2)
    }
}

/// Links of the one-sided interference channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Link {
    N11,
    N21,
    N22,
}

/// Links of the multiple-access channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MacLink {
    N1,
    N2,
}

/// Finite joint probability mass over channel states with maximum level `q`.
///
/// Construction validates: non-empty support, strictly positive masses that
/// sum to one, no repeated state, and every level within `0..=q`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution<S, T> {
    q: Level,
    atoms: Vec<(S, T)>,
}

pub type FadingDistribution<T> = JointDistribution<StateTriple, T>;
pub type MacDistribution<T> = JointDistribution<MacState, T>;

impl<S: ChannelState, T: Probability> JointDistribution<S, T> {
    pub fn new(q: Level, atoms: Vec<(S, T)>) -> Result<Self, ModelError> {
        if q == 0 || q > super::MAX_LEVELS {
            return Err(ModelError::InvalidDepth(q));
        }
        if atoms.is_empty() {
            return Err(ModelError::EmptySupport);
        }
        let mut seen = HashSet::with_capacity(atoms.len());
        let mut total = T::zero();
        for (state, p) in &atoms {
            let level = state.max_level();
            if level > q {
                return Err(ModelError::LevelOutOfRange { level: level.into(), q });
            }
            if *p <= T::zero() {
                return Err(ModelError::NonPositiveProbability(p.to_string()));
            }
            if !seen.insert(*state) {
                return Err(ModelError::DuplicateState(format!("{state:?}")));
            }
            total = total + p.clone();
        }
        if !total.same_as(&T::one()) {
            return Err(ModelError::NonUnitMass(total.to_string()));
        }
        Ok(Self { q, atoms })
    }

    /// Builds a distribution after summing the masses of repeated states.
    pub fn merged(q: Level, atoms: impl IntoIterator<Item = (S, T)>) -> Result<Self, ModelError> {
        let mut order = Vec::new();
        let mut mass: BTreeMap<S, T> = BTreeMap::new();
        for (s, p) in atoms {
            match mass.get_mut(&s) {
                Some(m) => *m = m.clone() + p,
                None => {
                    order.push(s);
                    mass.insert(s, p);
                }
            }
        }
        let atoms = order
            .into_iter()
            .map(|s| {
                let p = mass.remove(&s).expect("state recorded");
                (s, p)
            })
            .collect();
        Self::new(q, atoms)
    }

    /// Single-atom distribution.
    pub fn point_mass(q: Level, state: S) -> Result<Self, ModelError> {
        Self::new(q, vec![(state, T::one())])
    }

    pub fn q(&self) -> Level {
        self.q
    }

    pub fn atoms(&self) -> &[(S, T)] {
        &self.atoms
    }

    pub fn states(&self) -> impl Iterator<Item = &S> + '_ {
        self.atoms.iter().map(|(s, _)| s)
    }

    /// `Σ p · f(state)` over the support.
    pub fn expected_functional(&self, f: impl Fn(&S) -> i64) -> T {
        self.atoms.iter().fold(T::zero(), |acc, (s, p)| acc + p.clone() * T::from_count(f(s)))
    }

    /// Probability of the event `pred`.
    pub fn probability(&self, pred: impl Fn(&S) -> bool) -> T {
        self.atoms.iter().filter(|(s, _)| pred(s)).fold(T::zero(), |acc, (_, p)| acc + p.clone())
    }

    /// `true` when `pred` holds on every positive-probability state.
    pub fn almost_surely(&self, pred: impl Fn(&S) -> bool) -> bool {
        self.atoms.iter().all(|(s, _)| pred(s))
    }

    /// Law of `f(state)` as a level pmf.
    pub fn marginal_by(&self, f: impl Fn(&S) -> Level) -> Pmf<T> {
        let mut mass: BTreeMap<Level, T> = BTreeMap::new();
        for (s, p) in &self.atoms {
            let entry = mass.entry(f(s)).or_insert_with(T::zero);
            *entry = entry.clone() + p.clone();
        }
        Pmf::from_validated(self.q, mass)
    }
}

impl<T: Probability> FadingDistribution<T> {
    pub fn marginal(&self, link: Link) -> Pmf<T> {
        self.marginal_by(|s| s.get(link))
    }
}

impl<T: Probability> MacDistribution<T> {
    pub fn marginal(&self, link: MacLink) -> Pmf<T> {
        self.marginal_by(|s| match link {
            MacLink::N1 => s.n1,
            MacLink::N2 => s.n2,
        })
    }
}
