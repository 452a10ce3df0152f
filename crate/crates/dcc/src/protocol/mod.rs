//! Monte Carlo simulation of the Clifford+T protocol on the 15-qubit code
//! triple: alternating C- and T-rounds, syndrome tests, recovery, transversal
//! gates and the logical error rate estimate.

mod codes;
mod estimate;
mod trial;

pub use codes::{ProtocolCodes, RoundKind, C_FACES};
pub use estimate::{estimate_pl, run_trials, summarize, trial_rng, Estimate};
pub use trial::{
    logical_error_test, run_trial, run_trial_with, syndrome_test, zeta_u, LogicalTest, ProtocolConfig,
    SyndromeRecord, Termination, TrialResult, TrialState,
};

use crate::codefamily::FamilyError;
use crate::csscode::CodeError;
use crate::decoder::DecoderError;
use crate::f2core::F2Error;
use crate::noise::NoiseError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ProtocolError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("code setup failed: {0}")]
    Setup(String),
    #[error(transparent)]
    Decoder(#[from] DecoderError),
    #[error(transparent)]
    Noise(#[from] NoiseError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    F2(#[from] F2Error),
}
