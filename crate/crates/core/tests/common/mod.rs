//! Instance generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use layered_erasure::model::{MacState, StateTriple};
use layered_erasure::{rational, FadingDistribution, MacDistribution, Rational};
use num_traits::Zero;
use proptest::prelude::*;

/// Small IFC instances: `q ≤ 5`, at most four atoms with integer weights.
pub fn ifc_strategy() -> impl Strategy<Value = FadingDistribution> {
    (1u32..=5).prop_flat_map(|q| (Just(q), prop::collection::vec(((0..=q, 0..=q, 0..=q), 1i64..=6), 1..=4))).prop_map(
        |(q, raw)| {
            let total: i64 = raw.iter().map(|(_, w)| w).sum();
            let atoms = raw.into_iter().map(|((a, b, c), w)| (StateTriple::new(a, b, c), rational(w, total)));
            FadingDistribution::merged(q, atoms).expect("weights sum to one")
        },
    )
}

pub fn mac_strategy() -> impl Strategy<Value = MacDistribution> {
    (1u32..=5).prop_flat_map(|q| (Just(q), prop::collection::vec(((0..=q, 0..=q), 1i64..=6), 1..=4))).prop_map(
        |(q, raw)| {
            let total: i64 = raw.iter().map(|(_, w)| w).sum();
            let atoms = raw.into_iter().map(|((a, b), w)| (MacState::new(a, b), rational(w, total)));
            MacDistribution::merged(q, atoms).expect("weights sum to one")
        },
    )
}

/// `E[f(N11, N21, N22)]` summed straight over the atoms.
pub fn expect(d: &FadingDistribution, f: impl Fn(i64, i64, i64) -> i64) -> Rational {
    d.atoms().iter().fold(Rational::zero(), |acc, (s, p)| {
        acc + p * Rational::from_integer(f(s.n11.into(), s.n21.into(), s.n22.into()).into())
    })
}

pub fn expect_mac(d: &MacDistribution, f: impl Fn(i64, i64) -> i64) -> Rational {
    d.atoms()
        .iter()
        .fold(Rational::zero(), |acc, (s, p)| acc + p * Rational::from_integer(f(s.n1.into(), s.n2.into()).into()))
}

pub fn outer_sum_oracle(d: &FadingDistribution) -> Rational {
    expect(d, |a, b, c| a.max(c).max(b).max(a + c - b))
}

/// `(E[A1] − E[A2])⁺ = E[A1]` at every level, written literally.
pub fn lemma_oracle(d: &FadingDistribution) -> bool {
    (1..=i64::from(d.q())).all(|n| {
        let a1 = expect(d, |a, b, c| i64::from((b < n && n <= a) || a.min(b - c) >= n));
        let a2 = expect(d, |a, b, c| i64::from(a < n && b >= n && b - c < n));
        let diff = &a1 - &a2;
        let positive = if diff > Rational::zero() { diff } else { Rational::zero() };
        positive == a1
    })
}

/// Rank over GF(2) of rows packed into `u128`, by plain elimination.
pub fn rank_u128(mut rows: Vec<u128>) -> usize {
    let mut rank = 0;
    for bit in 0..128 {
        let mask = 1u128 << bit;
        let Some(i) = (rank..rows.len()).find(|&i| rows[i] & mask != 0) else { continue };
        rows.swap(rank, i);
        let pivot = rows[rank];
        for (j, row) in rows.iter_mut().enumerate() {
            if j != rank && *row & mask != 0 {
                *row ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}
