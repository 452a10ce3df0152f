//! Color-code lattices, the doubling map, recursive doubled codes and their
//! gadget-extended local versions.

mod certificates;
mod doubling;
mod family;
mod lattice;
mod layout;
mod record;

pub use certificates::{membership_certificates, Certificate, CertificateReport};
pub use doubling::{double, subdivide};
pub use family::{
    build_doubled, build_gadget_codes, CodeFamily, GadgetCodes, GadgetLevel, Generator, GeneratorKind, Stage,
    MAX_LEVEL,
};
pub use lattice::{build_lattice, face_space, ColorLattice};
pub use layout::{
    doubled_qubits, final_qubits, gadget_qubits, subdivided_qubits, Block, BlockKind, QubitLayout,
};
pub use record::{FamilyRecord, GeneratorRecord, QubitCounts};

use crate::csscode::CodeError;
use crate::f2core::F2Error;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FamilyError {
    #[error("level t = {0} is outside the supported range 1..={max}", max = MAX_LEVEL)]
    BadLevel(usize),
    #[error("unknown stage '{0}' (expected doubled, gadget, subdivided or final)")]
    BadStage(String),
    #[error("special face {i} at level {r} is not unique")]
    SpecialFace { r: usize, i: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    F2(#[from] F2Error),
}
