use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::bounds::{outer_bound, triple};
use super::mixed::{lemma_condition, mixed_achievable};
use super::AnalysisError;
use crate::model::{FadingDistribution, StateTriple};
use crate::scalar::Probability;
use crate::simulator::SchemeKind;

/// Interference regimes with a known sum capacity. The derived order is the
/// precedence used to pick a single scheme when several labels hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// `N21 ≥ N11 + N22` almost surely.
    VeryStrong,
    /// `N11 ≤ N21 ≤ N11 + N22` almost surely.
    StrongNotVeryStrong,
    /// `N21 ≥ N11` almost surely.
    Strong,
    /// `E[max(N21, N22)] ≥ E[N11 + N22]`.
    ErgodicVeryStrong,
    /// `N21 ≤ N11` almost surely.
    Weak,
    /// Per-level lemma condition and `N21 ≤ N11 + N22` almost surely.
    MixedLemma,
}

impl Regime {
    pub const ALL: [Regime; 6] = [
        Regime::VeryStrong,
        Regime::StrongNotVeryStrong,
        Regime::Strong,
        Regime::ErgodicVeryStrong,
        Regime::Weak,
        Regime::MixedLemma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Regime::VeryStrong => "VeryStrong",
            Regime::StrongNotVeryStrong => "StrongNotVeryStrong",
            Regime::Strong => "Strong",
            Regime::ErgodicVeryStrong => "ErgodicVeryStrong",
            Regime::Weak => "Weak",
            Regime::MixedLemma => "MixedLemma",
        }
    }

    /// Scheme realizing this regime's sum capacity.
    pub fn scheme(self) -> SchemeKind {
        match self {
            Regime::VeryStrong => SchemeKind::VeryStrong,
            Regime::StrongNotVeryStrong => SchemeKind::SnVS,
            Regime::Strong => SchemeKind::StrongJoint,
            Regime::ErgodicVeryStrong => SchemeKind::ErgodicVS,
            Regime::Weak => SchemeKind::Weak,
            Regime::MixedLemma => SchemeKind::Mixed,
        }
    }

    /// Whether the regime's hypothesis holds for `dist`.
    pub fn holds<T: Probability>(self, dist: &FadingDistribution<T>) -> bool {
        let a_s = |f: fn(i64, i64, i64) -> bool| {
            dist.almost_surely(|s: &StateTriple| {
                let (a, b, c) = triple(s);
                f(a, b, c)
            })
        };
        match self {
            Regime::VeryStrong => a_s(|a, b, c| b >= a + c),
            Regime::StrongNotVeryStrong => a_s(|a, b, c| a <= b && b <= a + c),
            Regime::Strong => a_s(|a, b, _| b >= a),
            Regime::ErgodicVeryStrong => {
                let lhs = dist.expected_functional(|s| s.n21.max(s.n22).into());
                let rhs = dist.expected_functional(|s| i64::from(s.n11) + i64::from(s.n22));
                lhs >= rhs
            }
            Regime::Weak => a_s(|a, b, _| b <= a),
            Regime::MixedLemma => a_s(|a, b, c| b <= a + c) && lemma_condition(dist).holds,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Regime {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Regime::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| AnalysisError::UnknownRegime(s.to_string()))
    }
}

/// Regime labels of an instance with its sum capacity, or a bracket when no
/// label applies.
#[derive(Debug, Clone, PartialEq)]
pub struct RegimeReport<T> {
    pub satisfied: BTreeSet<Regime>,
    pub sum_capacity: Option<T>,
    pub lower: T,
    pub upper: T,
    pub chosen_regime: Option<Regime>,
    pub scheme_hint: SchemeKind,
}

/// Sum-capacity expression attached to `regime`, evaluated without checking
/// its hypothesis.
pub(crate) fn formula_value<T: Probability>(regime: Regime, dist: &FadingDistribution<T>) -> T {
    let sum_direct = || dist.expected_functional(|s| i64::from(s.n11) + i64::from(s.n22));
    let max_cross = || dist.expected_functional(|s| s.n21.max(s.n22).into());
    match regime {
        Regime::VeryStrong | Regime::ErgodicVeryStrong => sum_direct(),
        Regime::StrongNotVeryStrong => max_cross(),
        Regime::Strong => sum_direct().min_of(max_cross()),
        Regime::Weak => dist.expected_functional(|s| {
            let (a, b, c) = triple(s);
            a.max(a + c - b)
        }),
        Regime::MixedLemma => outer_bound(dist).sum_max,
    }
}

/// Sum capacity of `dist` under `regime`.
pub fn sum_capacity_formula<T: Probability>(regime: Regime, dist: &FadingDistribution<T>) -> Result<T, AnalysisError> {
    if !regime.holds(dist) {
        return Err(AnalysisError::ConditionNotSatisfied(regime));
    }
    Ok(formula_value(regime, dist))
}

/// Collects every satisfied regime label and the resulting sum capacity.
pub fn classify<T: Probability>(dist: &FadingDistribution<T>) -> RegimeReport<T> {
    let satisfied: BTreeSet<Regime> = Regime::ALL.into_iter().filter(|r| r.holds(dist)).collect();
    match satisfied.iter().next().copied() {
        Some(chosen) => {
            let value = formula_value(chosen, dist);
            RegimeReport {
                satisfied,
                sum_capacity: Some(value.clone()),
                lower: value.clone(),
                upper: value,
                chosen_regime: Some(chosen),
                scheme_hint: chosen.scheme(),
            }
        }
        None => RegimeReport {
            satisfied,
            sum_capacity: None,
            lower: mixed_achievable(dist),
            upper: outer_bound(dist).sum_max,
            chosen_regime: None,
            scheme_hint: SchemeKind::Mixed,
        },
    }
}
