//! Subsystem CSS codes CSS(A, B): gauge structure, coset labels, distance,
//! evenness witnesses, transversality checks and cleanable cosets.

mod cleanability;
mod code;
mod evenness;
mod record;

pub use cleanability::{is_cleanable_support, CleanabilityTable, MAX_CLEANABILITY_QUBITS};
pub use code::{make_code, CosetMap, Gate, SubsystemCode, MAX_LABEL_BITS};
pub use evenness::{check_evenness, EvennessWitness, EXHAUSTIVE_EVENNESS_DIM};
pub use record::CodeRecord;

pub(crate) use code::low_mask;

use crate::f2core::F2Error;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CodeError {
    #[error("construction precondition failed: {0}")]
    Precondition(String),
    #[error("invalid coset rows: {0}")]
    BadCosetRows(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("this gate needs an evenness witness")]
    MissingWitness,
    #[error("invalid evenness witness: {0}")]
    InvalidWitness(String),
    #[error("code is not regular (A != dot(B))")]
    NotRegular,
    #[error("coset {0:#x} is not cleanable")]
    NotCleanable(u64),
    #[error("malformed code record: {0}")]
    BadRecord(String),
    #[error(transparent)]
    F2(#[from] F2Error),
}
