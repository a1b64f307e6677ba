use serde::{Deserialize, Serialize};

use crate::model::{FadingDistribution, MacDistribution, MacState, StateTriple};
use crate::scalar::Probability;

/// Three independent facets `R1 ≤ r1_max`, `R2 ≤ r2_max`, `R1 + R2 ≤ sum_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RateBounds<T> {
    pub r1_max: T,
    pub r2_max: T,
    pub sum_max: T,
}

fn mac_levels(s: &MacState) -> (i64, i64) {
    (s.n1.into(), s.n2.into())
}

pub(crate) fn triple(s: &StateTriple) -> (i64, i64, i64) {
    (s.n11.into(), s.n21.into(), s.n22.into())
}

/// Capacity region of the layered erasure MAC:
/// `(E[N1], E[N2], E[max(N1, N2)])`.
pub fn mac_region<T: Probability>(dist: &MacDistribution<T>) -> RateBounds<T> {
    RateBounds {
        r1_max: dist.expected_functional(|s| mac_levels(s).0),
        r2_max: dist.expected_functional(|s| mac_levels(s).1),
        sum_max: dist.expected_functional(|s| {
            let (a, b) = mac_levels(s);
            a.max(b)
        }),
    }
}

/// Corner point decoded user 1 first: `(E[(N1 − N2)⁺], E[N2])`.
pub fn mac_corner<T: Probability>(dist: &MacDistribution<T>) -> (T, T) {
    (
        dist.expected_functional(|s| {
            let (a, b) = mac_levels(s);
            (a - b).max(0)
        }),
        dist.expected_functional(|s| mac_levels(s).1),
    )
}

/// The other corner, decoding user 2 first: `(E[N1], E[(N2 − N1)⁺])`.
pub fn mac_corner_swapped<T: Probability>(dist: &MacDistribution<T>) -> (T, T) {
    (
        dist.expected_functional(|s| mac_levels(s).0),
        dist.expected_functional(|s| {
            let (a, b) = mac_levels(s);
            (b - a).max(0)
        }),
    )
}

/// Outer bound on the capacity region of the one-sided IFC. The sum facet is
/// `E[max(N11, N22, N21, N11 + N22 − N21)]`.
pub fn outer_bound<T: Probability>(dist: &FadingDistribution<T>) -> RateBounds<T> {
    RateBounds {
        r1_max: dist.expected_functional(|s| triple(s).0),
        r2_max: dist.expected_functional(|s| triple(s).2),
        sum_max: dist.expected_functional(outer_sum_term),
    }
}

pub(crate) fn outer_sum_term(s: &StateTriple) -> i64 {
    let (a, b, c) = triple(s);
    a.max(b).max(c).max(a + c - b)
}
