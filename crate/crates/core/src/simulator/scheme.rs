use std::fmt;
use std::str::FromStr;

use super::SimError;
use crate::analysis::{interferes, mixed_rates, private_split, LevelSet, Regime};
use crate::model::{FadingDistribution, Instance, Level, MacDistribution, StateTriple};
use crate::scalar::Probability;

/// Coding scheme realizing one of the achievable rate points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    /// MAC corner `(E[(N1 − N2)⁺], E[N2])`, per-level codes, user 1 first.
    MacCorner,
    /// Per-level codes, receiver 2 decodes user 1 first.
    VeryStrong,
    /// Same pipeline as `VeryStrong` on strong-but-not-very-strong instances.
    SnVS,
    /// One user-1 code spread over all levels, receiver 2 decodes it first.
    StrongJoint,
    /// As `StrongJoint`, at rate `E[N11]`.
    ErgodicVS,
    /// Per-level codes, receiver 2 treats user 1 as noise.
    Weak,
    /// User 1 on `I1` only, user 2 jointly coded around the interfered slots.
    Mixed,
    /// Private user-1 levels for receiver 1 plus `inner` on the remaining channel.
    PrivateSplit { private: LevelSet, inner: Box<SchemeKind> },
}

impl SchemeKind {
    pub fn name(&self) -> &'static str {
        match self {
            SchemeKind::MacCorner => "mac-corner",
            SchemeKind::VeryStrong => "very-strong",
            SchemeKind::SnVS => "snvs",
            SchemeKind::StrongJoint => "strong-joint",
            SchemeKind::ErgodicVS => "ergodic-vs",
            SchemeKind::Weak => "weak",
            SchemeKind::Mixed => "mixed",
            SchemeKind::PrivateSplit { .. } => "private-split",
        }
    }

    /// Regime whose hypothesis the scheme needs, if any.
    pub fn required_regime(&self) -> Option<Regime> {
        match self {
            SchemeKind::VeryStrong => Some(Regime::VeryStrong),
            SchemeKind::SnVS => Some(Regime::StrongNotVeryStrong),
            SchemeKind::StrongJoint => Some(Regime::Strong),
            SchemeKind::ErgodicVS => Some(Regime::ErgodicVeryStrong),
            SchemeKind::Weak => Some(Regime::Weak),
            _ => None,
        }
    }
}

/// `private-split:2,3:strong-joint` for the composite scheme, the plain name
/// otherwise.
impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeKind::PrivateSplit { private, inner } => {
                let levels: Vec<String> = private.iter().map(|n| n.to_string()).collect();
                write!(f, "private-split:{}:{}", levels.join(","), inner)
            }
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for SchemeKind {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || SimError::UnknownScheme(s.to_string());
        if let Some(rest) = s.strip_prefix("private-split:") {
            let (levels, inner) = rest.split_once(':').ok_or_else(unknown)?;
            let private = levels
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse::<Level>().map_err(|_| unknown()))
                .collect::<Result<LevelSet, _>>()?;
            let inner: SchemeKind = inner.parse()?;
            return Ok(SchemeKind::PrivateSplit { private, inner: Box::new(inner) });
        }
        let kind = match s.to_ascii_lowercase().as_str() {
            "mac-corner" | "maccorner" => SchemeKind::MacCorner,
            "very-strong" | "verystrong" => SchemeKind::VeryStrong,
            "snvs" => SchemeKind::SnVS,
            "strong-joint" | "strongjoint" => SchemeKind::StrongJoint,
            "ergodic-vs" | "ergodicvs" => SchemeKind::ErgodicVS,
            "weak" => SchemeKind::Weak,
            "mixed" => SchemeKind::Mixed,
            _ => return Err(unknown()),
        };
        Ok(kind)
    }
}

/// A scheme with its rate backoff `ε` and block length `T`. Codebooks carry
/// `⌊(1 − ε) · rate · T⌋` bits; a negative `ε` overloads the scheme above its
/// formula rate.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeSpec {
    pub kind: SchemeKind,
    pub backoff: f64,
    pub block_length: usize,
}

impl SchemeSpec {
    pub fn new(kind: SchemeKind, backoff: f64, block_length: usize) -> Result<Self, SimError> {
        if !(backoff.is_finite() && backoff > -1.0 && backoff < 1.0) {
            return Err(SimError::Configuration(format!("rate backoff {backoff} outside (-1, 1)")));
        }
        if block_length == 0 {
            return Err(SimError::Configuration("block length must be positive".into()));
        }
        Ok(Self { kind, backoff, block_length })
    }
}

/// One codebook: the user sending it, the levels it occupies and its rate in
/// bits per channel use. Per-level codes occupy a single level.
#[derive(Debug, Clone, PartialEq)]
pub struct StreamDesign<T> {
    pub user: usize,
    pub levels: Vec<Level>,
    pub rate: T,
}

/// Streams of both users and the order in which each receiver decodes them.
#[derive(Debug, Clone, PartialEq)]
pub struct Design<T> {
    pub q: Level,
    pub streams: Vec<StreamDesign<T>>,
    pub decode_order: Vec<Vec<usize>>,
}

impl<T: Probability> Design<T> {
    /// Target `(R1, R2)` of the scheme.
    pub fn rates(&self) -> (T, T) {
        let sum = |u| self.streams.iter().filter(|s| s.user == u).fold(T::zero(), |acc, s| acc + s.rate.clone());
        (sum(0), sum(1))
    }

    fn builder(q: Level) -> DesignBuilder<T> {
        DesignBuilder { design: Design { q, streams: Vec::new(), decode_order: Vec::new() } }
    }
}

struct DesignBuilder<T> {
    design: Design<T>,
}

impl<T: Probability> DesignBuilder<T> {
    /// Adds a stream unless it is silent; returns its index.
    fn stream(&mut self, user: usize, levels: Vec<Level>, rate: T) -> Option<usize> {
        if rate <= T::zero() || levels.is_empty() {
            return None;
        }
        self.design.streams.push(StreamDesign { user, levels, rate });
        Some(self.design.streams.len() - 1)
    }

    fn per_level(&mut self, user: usize, rates: impl IntoIterator<Item = (Level, T)>) -> Vec<usize> {
        rates.into_iter().filter_map(|(n, r)| self.stream(user, vec![n], r)).collect()
    }

    fn joint(&mut self, user: usize, rate: T) -> Vec<usize> {
        let levels = (1..=self.design.q).collect();
        self.stream(user, levels, rate).into_iter().collect()
    }

    fn receivers(mut self, orders: Vec<Vec<usize>>) -> Design<T> {
        self.design.decode_order = orders;
        self.design
    }
}

fn concat(parts: &[&[usize]]) -> Vec<usize> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

fn design_mac<T: Probability>(dist: &MacDistribution<T>) -> Design<T> {
    let q = dist.q();
    let mut b = Design::builder(q);
    let u1 =
        b.per_level(0, (1..=q).map(|n| (n, dist.probability(|s| i64::from(s.n1) - i64::from(s.n2) >= i64::from(n)))));
    let u2 = b.per_level(1, (1..=q).map(|n| (n, dist.probability(|s| s.n2 >= n))));
    b.receivers(vec![concat(&[&u1, &u2])])
}

fn design_ifc<T: Probability>(kind: &SchemeKind, dist: &FadingDistribution<T>) -> Result<Design<T>, SimError> {
    if let Some(regime) = kind.required_regime() {
        if !regime.holds(dist) {
            return Err(SimError::RegimeMismatch { scheme: kind.to_string(), regime });
        }
    }
    let q = dist.q();
    let mut b = Design::builder(q);
    let user2_levels =
        |b: &mut DesignBuilder<T>| b.per_level(1, (1..=q).map(|m| (m, dist.probability(|s| s.n22 >= m))));
    let design = match kind {
        SchemeKind::VeryStrong | SchemeKind::SnVS => {
            let u1 = b.per_level(
                0,
                (1..=q).map(|n| {
                    let clean = |s: &StateTriple| i64::from(s.n11).min(i64::from(s.n21) - i64::from(s.n22));
                    (n, dist.probability(|s| clean(s) >= i64::from(n)))
                }),
            );
            let u2 = user2_levels(&mut b);
            b.receivers(vec![u1.clone(), concat(&[&u1, &u2])])
        }
        SchemeKind::StrongJoint | SchemeKind::ErgodicVS => {
            let direct = dist.expected_functional(|s| s.n11.into());
            let rate = if *kind == SchemeKind::ErgodicVS {
                direct
            } else {
                let clean = dist.expected_functional(|s| (i64::from(s.n21) - i64::from(s.n22)).max(0));
                direct.min_of(clean)
            };
            let u1 = b.joint(0, rate);
            let u2 = user2_levels(&mut b);
            b.receivers(vec![u1.clone(), concat(&[&u1, &u2])])
        }
        SchemeKind::Weak => {
            let u1 = b.per_level(0, (1..=q).map(|n| (n, dist.probability(|s| s.n11 >= n))));
            let u2 = b.per_level(
                1,
                (1..=q).map(|m| (m, dist.probability(|s| i64::from(s.n22) - i64::from(s.n21) >= i64::from(m)))),
            );
            b.receivers(vec![u1, u2])
        }
        SchemeKind::Mixed => {
            let (user1, user2) = mixed_rates(dist);
            let u1 = b.per_level(0, user1);
            let u2 = b.joint(1, user2);
            b.receivers(vec![u1, u2])
        }
        SchemeKind::PrivateSplit { private, inner } => {
            if matches!(**inner, SchemeKind::PrivateSplit { .. } | SchemeKind::MacCorner) {
                return Err(SimError::Configuration(format!("`{inner}` cannot be the inner scheme of a split")));
            }
            let split = private_split(dist, private)?;
            let inner_design = design_ifc(inner, &split.transformed)?;
            let public: Vec<Level> = (1..=q).filter(|n| !private.contains(*n)).collect();

            let own = b.per_level(0, private.iter().map(|p| (p, dist.probability(|s| s.n11 >= p))));
            let mut remap = Vec::with_capacity(inner_design.streams.len());
            for s in inner_design.streams {
                let levels = if s.user == 0 {
                    s.levels.iter().filter_map(|&n| public.get(n as usize - 1).copied()).collect()
                } else {
                    s.levels
                };
                remap.push(b.stream(s.user, levels, s.rate));
            }
            let mapped = |order: &[usize]| -> Vec<usize> { order.iter().filter_map(|&i| remap[i]).collect() };
            let rx1 = concat(&[&own, &mapped(&inner_design.decode_order[0])]);
            let rx2 = mapped(&inner_design.decode_order[1]);
            b.receivers(vec![rx1, rx2])
        }
        SchemeKind::MacCorner => return Err(SimError::KindMismatch { scheme: kind.to_string(), instance: "ifc" }),
    };
    Ok(design)
}

/// Stream layout of `kind` on `instance`, with exact target rates.
pub fn design<T: Probability>(kind: &SchemeKind, instance: &Instance<T>) -> Result<Design<T>, SimError> {
    match (kind, instance) {
        (SchemeKind::MacCorner, Instance::Mac(d)) => Ok(design_mac(d)),
        (_, Instance::Mac(_)) => Err(SimError::KindMismatch { scheme: kind.to_string(), instance: "mac" }),
        (_, Instance::Ifc(d)) => design_ifc(kind, d),
    }
}

/// Per-use erased user-2 levels at receiver 2 under the mixed scheme:
/// `{n − N21 + N22 : n ∈ I1, N21 − N22 < n ≤ N21}`.
pub fn mixed_erasures(i1: &LevelSet, state: &StateTriple) -> LevelSet {
    i1.iter().filter(|&n| interferes(state, n)).map(|n| n + state.n22 - state.n21).collect()
}
