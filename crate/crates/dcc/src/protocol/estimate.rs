use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::codes::ProtocolCodes;
use super::trial::{run_trial, ProtocolConfig, Termination, TrialResult};
use super::ProtocolError;
use crate::decoder::EngineKind;

/// Aggregate of a batch of trials at one error rate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub p: f64,
    pub trials: usize,
    /// Mean gate count over trials that ended on a failed test.
    pub mean_gates: Option<f64>,
    pub p_l: Option<f64>,
    pub stderr: Option<f64>,
    /// With no failures: 1 / (mean gates over all trials).
    pub p_l_upper_bound: Option<f64>,
    pub n_logical_failures: usize,
    pub n_cleanability_failures: usize,
    pub n_decoder_failures: usize,
    pub n_censored: usize,
    pub n_retry_capped: usize,
    pub mean_retries: f64,
    pub mean_rounds: f64,
    pub mean_gates_all: f64,
    pub wall_seconds: f64,
}

/// RNG of trial `index`: the master seed with the trial index as stream.
#[must_use]
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Runs all trials of `config` in parallel; results are in trial order.
pub fn run_trials(codes: &ProtocolCodes, config: &ProtocolConfig) -> Result<Vec<TrialResult>, ProtocolError> {
    config.validate()?;
    let kernels = codes.memory_kernels(config.p, config.decoder == EngineKind::Sparse)?;
    (0..config.trials)
        .into_par_iter()
        .map(|i| run_trial(codes, config, &kernels, &mut trial_rng(config.seed, i as u64)))
        .collect()
}

/// p_L = 1/mean(gates) over failed trials, with a jackknife standard error.
#[must_use]
pub fn summarize(p: f64, results: &[TrialResult], wall_seconds: f64) -> Estimate {
    let count = |t: Termination| results.iter().filter(|r| r.termination == t).count();
    let failed: Vec<f64> = results
        .iter()
        .filter(|r| r.termination.is_failure())
        .map(|r| r.gates_implemented as f64)
        .collect();
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let k = failed.len();
    let mean_gates = (k > 0).then(|| mean(&failed));
    let p_l = mean_gates.map(|g| 1.0 / g);
    let stderr = (k > 1).then(|| {
        let total: f64 = failed.iter().sum();
        let loo: Vec<f64> = failed.iter().map(|g| (k - 1) as f64 / (total - g)).collect();
        let centre = mean(&loo);
        ((k - 1) as f64 / k as f64 * loo.iter().map(|x| (x - centre).powi(2)).sum::<f64>()).sqrt()
    });
    let n = results.len().max(1) as f64;
    let mean_gates_all = results.iter().map(|r| r.gates_implemented as f64).sum::<f64>() / n;
    Estimate {
        p,
        trials: results.len(),
        mean_gates,
        p_l,
        stderr,
        p_l_upper_bound: (k == 0 && mean_gates_all > 0.0).then(|| 1.0 / mean_gates_all),
        n_logical_failures: count(Termination::LogicalError),
        n_cleanability_failures: count(Termination::CleanabilityFailure),
        n_decoder_failures: count(Termination::DecoderFailure),
        n_censored: count(Termination::MaxGatesReached),
        n_retry_capped: count(Termination::RetryCapReached),
        mean_retries: results.iter().map(|r| r.retries as f64).sum::<f64>() / n,
        mean_rounds: results.iter().map(|r| r.rounds as f64).sum::<f64>() / n,
        mean_gates_all,
        wall_seconds,
    }
}

/// Runs the trials of `config` and summarizes them.
pub fn estimate_pl(codes: &ProtocolCodes, config: &ProtocolConfig) -> Result<Estimate, ProtocolError> {
    let start = Instant::now();
    let results = run_trials(codes, config)?;
    Ok(summarize(config.p, &results, start.elapsed().as_secs_f64()))
}
