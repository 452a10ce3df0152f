//! Binary linear algebra over GF(2).
//!
//! Packed vectors and matrices, subspaces with their orthogonal complements,
//! the dot operation Ṡ = S^⊥ ∩ E, low-weight odd-vector search and the
//! Walsh-Hadamard transform.

mod bitmatrix;
mod bitvec;
mod fwht;
mod subspace;

pub use bitmatrix::BitMatrix;
pub use bitvec::BitVector;
pub use fwht::fwht;
pub use subspace::{OddWeight, Subspace, FULL_ENUMERATION_DIM};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum F2Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("the orthogonal complement contains no odd vectors")]
    NoOddVectors,
    #[error("dim(S^⊥) = {dim} is too large to enumerate and no weight bound was given")]
    SearchTooLarge { dim: usize },
    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("rows are linearly dependent")]
    Dependent,
    #[error("malformed hex row: {0}")]
    BadHex(String),
}
