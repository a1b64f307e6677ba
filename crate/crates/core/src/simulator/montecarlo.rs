use rand::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::pipeline::{run_scheme, TrialResult};
use super::scheme::SchemeSpec;
use super::SimError;
use crate::model::Instance;
use crate::scalar::Probability;

/// Seed of trial `index`: first SplitMix64 output from
/// `master ^ (index · 0x9E3779B97F4A7C15)`.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    SplitMix64::seed_from_u64(master ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15)).next_u64()
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub result: TrialResult,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarlo {
    pub spec: SchemeSpec,
    pub success1: f64,
    pub success2: f64,
    pub mean_rate1: f64,
    pub mean_rate2: f64,
    pub trials: Vec<TrialRecord>,
}

impl MonteCarlo {
    pub fn mean_sum_rate(&self) -> f64 {
        self.mean_rate1 + self.mean_rate2
    }

    pub fn rows(&self) -> Vec<TrialRow> {
        self.trials
            .iter()
            .map(|t| TrialRow {
                trial: t.trial,
                scheme: self.spec.kind.to_string(),
                block_length: self.spec.block_length,
                epsilon: self.spec.backoff,
                ok1: u8::from(t.result.ok_user1),
                ok2: u8::from(t.result.ok_user2),
                rate1: t.result.rate1,
                rate2: t.result.rate2,
                clean_slots_rx1: t.result.diagnostics.clean_slots_rx1,
                clean_slots_rx2: t.result.diagnostics.clean_slots_rx2,
            })
            .collect()
    }

    pub fn summary(&self) -> SummaryRow {
        SummaryRow {
            scheme: self.spec.kind.to_string(),
            epsilon: self.spec.backoff,
            block_length: self.spec.block_length,
            trials: self.trials.len(),
            success1: self.success1,
            success2: self.success2,
            mean_rate1: self.mean_rate1,
            mean_rate2: self.mean_rate2,
        }
    }
}

/// Per-trial CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub trial: usize,
    pub scheme: String,
    #[serde(rename = "T")]
    pub block_length: usize,
    pub epsilon: f64,
    pub ok1: u8,
    pub ok2: u8,
    pub rate1: f64,
    pub rate2: f64,
    pub clean_slots_rx1: usize,
    pub clean_slots_rx2: usize,
}

/// Aggregate CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub scheme: String,
    pub epsilon: f64,
    #[serde(rename = "T")]
    pub block_length: usize,
    pub trials: usize,
    pub success1: f64,
    pub success2: f64,
    pub mean_rate1: f64,
    pub mean_rate2: f64,
}

/// Runs `trials` independent blocks. Trial `i` uses [`trial_seed`]`(master_seed, i)`,
/// so the outcome does not depend on scheduling.
pub fn monte_carlo<T: Probability>(
    instance: &Instance<T>,
    spec: &SchemeSpec,
    trials: usize,
    master_seed: u64,
) -> Result<MonteCarlo, SimError> {
    if trials == 0 {
        return Err(SimError::Configuration("at least one trial is required".into()));
    }
    let records = (0..trials)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(master_seed, i as u64);
            run_scheme(instance, spec, seed).map(|result| TrialRecord { trial: i, seed, result })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let n = trials as f64;
    let frac = |f: fn(&TrialResult) -> bool| records.iter().filter(|r| f(&r.result)).count() as f64 / n;
    // integer bit totals keep the means free of summation noise
    let mean = |f: fn(&TrialResult) -> usize| {
        records.iter().map(|r| f(&r.result)).sum::<usize>() as f64 / (n * spec.block_length as f64)
    };
    Ok(MonteCarlo {
        spec: spec.clone(),
        success1: frac(|r| r.ok_user1),
        success2: frac(|r| r.ok_user2),
        mean_rate1: mean(|r| r.bits1),
        mean_rate2: mean(|r| r.bits2),
        trials: records,
    })
}
