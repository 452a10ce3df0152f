//! Maximum-likelihood decoding over gauge cosets.
//!
//! The state is a likelihood vector ρ over coset labels f = (α, β). Two
//! engines implement [`Likelihood`]: [`DenseLikelihood`] keeps all 2^c
//! weights and updates them with Walsh-Hadamard transforms, while
//! [`SparseLikelihood`] keeps only labels above a cutoff.

mod dense;
mod maps;
mod sparse;

pub use dense::DenseLikelihood;
pub use maps::{CheckKind, DeformKind, DeformationMap, LabelLayout, LabelMap, MemoryKernel, SyndromeMap};
pub use sparse::{SparseLikelihood, DEFAULT_CUTOFF};

use serde::{Deserialize, Serialize};

use crate::csscode::CodeError;
use crate::f2core::F2Error;
use crate::noise::{NoiseError, TPropagator};

/// Largest label width the dense engine accepts.
pub const MAX_DENSE_BITS: usize = 26;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DecoderError {
    #[error("posterior vanished after a syndrome update")]
    Degenerate,
    #[error("no likelihood left on cleanable cosets")]
    ZeroMass,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("numerical error: {0}")]
    Numeric(String),
    #[error("{0}")]
    Capacity(String),
    #[error(transparent)]
    Noise(#[from] NoiseError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    F2(#[from] F2Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EngineKind {
    Exact,
    Sparse,
}

impl std::str::FromStr for EngineKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" | "dense" => Ok(Self::Exact),
            "sparse" => Ok(Self::Sparse),
            other => Err(format!("unknown decoder '{other}' (expected exact or sparse)")),
        }
    }
}

/// A likelihood vector together with its update rules.
///
/// Weights are kept up to an overall factor; [`Likelihood::weight`] and
/// [`Likelihood::distribution`] report sum-normalized values.
pub trait Likelihood: Clone + Send {
    /// Unit mass on label 0.
    fn init(layout: LabelLayout) -> Result<Self, DecoderError>
    where
        Self: Sized;

    fn layout(&self) -> LabelLayout;

    /// Convolution with the coset distribution of one memory error.
    fn apply_memory(&mut self, kernel: &MemoryKernel) -> Result<(), DecoderError>;

    /// Bayes update with observed syndrome `s` and independent flip rate `q`.
    fn apply_syndrome(&mut self, map: &SyndromeMap, s: u64, q: f64) -> Result<(), DecoderError>;

    fn deform(&mut self, map: &DeformationMap) -> Result<(), DecoderError>;

    /// ρ'(v f) = ρ(f).
    fn apply_clifford(&mut self, v: &LabelMap) -> Result<(), DecoderError>;

    /// Most likely X-coset α*, then shifts ρ by (α*, 0).
    fn choose_recovery(&mut self) -> u64;

    /// Projects onto cleanable X-cosets and applies the T-gate update per coset.
    fn apply_t(&mut self, prop: &TPropagator) -> Result<(), DecoderError>;

    /// Called once at the end of every protocol round. The sparse engine
    /// truncates here; the dense engine has nothing to do.
    fn end_round(&mut self) {}

    /// argmax_f ρ(f), smallest label on ties.
    fn final_coset(&self) -> u64;

    /// Normalized weight of one label.
    fn weight(&self, label: u64) -> f64;

    /// Labels with positive weight, normalized, sorted by label.
    fn distribution(&self) -> Vec<(u64, f64)>;

    fn support_size(&self) -> usize;

    /// Shannon entropy of the normalized vector, in bits.
    fn entropy(&self) -> f64 {
        self.distribution()
            .iter()
            .filter(|(_, p)| *p > 0.0)
            .map(|(_, p)| -p * p.log2())
            .sum()
    }
}

/// First index of the maximum, treating the slice as weights over labels.
pub(crate) fn argmax_smallest<I: IntoIterator<Item = (u64, f64)>>(items: I) -> u64 {
    let mut best = (0u64, f64::NEG_INFINITY);
    for (label, w) in items {
        if w > best.1 || (w == best.1 && label < best.0) {
            best = (label, w);
        }
    }
    best.0
}

/// Per-bit likelihoods q^d (1−q)^{b−d} for d = 0..=b.
pub(crate) fn flip_powers(bits: usize, q: f64) -> Result<Vec<f64>, DecoderError> {
    if !(0.0..=1.0).contains(&q) {
        return Err(DecoderError::Numeric(format!("flip probability {q} outside [0, 1]")));
    }
    Ok((0..=bits)
        .map(|d| q.powi(d as i32) * (1.0 - q).powi((bits - d) as i32))
        .collect())
}
