use rand::distributions::WeightedIndex;
use rand::prelude::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::SimError;
use crate::model::{BitColumn, ChannelState, Instance, JointDistribution, Level, StateTriple};
use crate::scalar::Probability;

/// i.i.d. draws of `len` states from the atom probabilities.
pub fn sample_states<S: ChannelState, T: Probability>(dist: &JointDistribution<S, T>, len: usize, seed: u64) -> Vec<S> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<f64> = dist.atoms().iter().map(|(_, p)| p.to_f64()).collect();
    let index = WeightedIndex::new(&weights).expect("validated distribution has positive mass");
    (0..len).map(|_| dist.atoms()[index.sample(&mut rng)].0).collect()
}

/// One use of the one-sided IFC.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChannelUse {
    pub state: StateTriple,
    pub x1: BitColumn,
    pub x2: BitColumn,
    pub y1: BitColumn,
    pub y2: BitColumn,
}

impl ChannelUse {
    pub fn new(state: StateTriple, x1: BitColumn, x2: BitColumn) -> Result<Self, SimError> {
        if x1.width() != x2.width() {
            return Err(SimError::WidthMismatch { expected: x1.width(), got: x2.width() });
        }
        if state.max_level() > x1.width() {
            return Err(SimError::WidthMismatch { expected: state.max_level(), got: x1.width() });
        }
        Ok(Self { state, x1, x2, y1: x1.shift(state.n11), y2: x1.shift(state.n21) ^ x2.shift(state.n22) })
    }
}

/// Runs the one-sided IFC over a state sequence: `y1 = S(x1, N11)` and
/// `y2 = S(x1, N21) ⊕ S(x2, N22)`.
pub fn transmit_receive(
    states: &[StateTriple],
    x1: &[BitColumn],
    x2: &[BitColumn],
) -> Result<(Vec<BitColumn>, Vec<BitColumn>), SimError> {
    if x1.len() != states.len() || x2.len() != states.len() {
        return Err(SimError::LengthMismatch { states: states.len(), x1: x1.len(), x2: x2.len() });
    }
    let mut y1 = Vec::with_capacity(states.len());
    let mut y2 = Vec::with_capacity(states.len());
    for ((s, a), b) in states.iter().zip(x1).zip(x2) {
        let u = ChannelUse::new(*s, *a, *b)?;
        y1.push(u.y1);
        y2.push(u.y2);
    }
    Ok((y1, y2))
}

/// What each receiver hears in every use: the surviving level counts of user 1
/// and user 2 (zero when a link is absent).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Geometry {
    pub q: Level,
    pub receivers: Vec<Vec<[Level; 2]>>,
    /// Receiver that must decode each user's message.
    pub intended: [usize; 2],
}

impl Geometry {
    pub fn sample<T: Probability>(instance: &Instance<T>, len: usize, seed: u64) -> Self {
        match instance {
            Instance::Ifc(d) => Self::ifc(d.q(), &sample_states(d, len, seed)),
            Instance::Mac(d) => {
                let states = sample_states(d, len, seed);
                Self { q: d.q(), receivers: vec![states.iter().map(|s| [s.n1, s.n2]).collect()], intended: [0, 0] }
            }
        }
    }

    pub fn ifc(q: Level, states: &[StateTriple]) -> Self {
        Self {
            q,
            receivers: vec![
                states.iter().map(|s| [s.n11, 0]).collect(),
                states.iter().map(|s| [s.n21, s.n22]).collect(),
            ],
            intended: [0, 1],
        }
    }

    pub fn uses(&self) -> usize {
        self.receivers[0].len()
    }

    /// Channel outputs at every receiver.
    pub fn outputs(&self, x: &[Vec<BitColumn>; 2]) -> Vec<Vec<BitColumn>> {
        self.receivers
            .iter()
            .map(|heard| heard.iter().enumerate().map(|(t, n)| x[0][t].shift(n[0]) ^ x[1][t].shift(n[1])).collect())
            .collect()
    }
}

/// Position (1-based, most significant first) at which level `level` of a user
/// heard with `n` levels lands, if it survives.
pub fn landing_position(q: Level, n: Level, level: Level) -> Option<Level> {
    (level >= 1 && level <= n).then(|| q - n + level)
}

/// Level of the other user sharing the position of `level`, if any.
pub fn overlapping_level(n_self: Level, n_other: Level, level: Level) -> Option<Level> {
    let other = i64::from(level) + i64::from(n_other) - i64::from(n_self);
    (level <= n_self && other >= 1 && other <= i64::from(n_other)).then_some(other as Level)
}
