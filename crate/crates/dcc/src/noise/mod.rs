//! Depolarizing memory noise, syndrome flips, the Pauli frame, single-qubit
//! Cliffords and the effective Z-error model of a transversal T gate.

mod clifford;
mod tgate;

pub use clifford::{frame_through_clifford, Clifford, Pauli, CLIFFORD_COUNT};
pub use tgate::{TEntry, TPropagator};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::csscode::CodeError;
use crate::f2core::{BitVector, Subspace};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NoiseError {
    #[error("probability {0} is outside [0, 1]")]
    BadProbability(f64),
    #[error("X-coset {0:#x} is not cleanable")]
    NotCleanable(u64),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Memory error rate and measurement flip rate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorModel {
    pub p_mem: f64,
    pub p_meas: f64,
}

impl ErrorModel {
    pub fn new(p_mem: f64, p_meas: f64) -> Result<Self, NoiseError> {
        for p in [p_mem, p_meas] {
            if !(0.0..=1.0).contains(&p) {
                return Err(NoiseError::BadProbability(p));
            }
        }
        Ok(Self { p_mem, p_meas })
    }

    /// Both rates equal to `p`.
    pub fn uniform(p: f64) -> Result<Self, NoiseError> {
        Self::new(p, p)
    }
}

/// Accumulated Pauli error X(a)Z(b), phases dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliFrame {
    pub a: BitVector,
    pub b: BitVector,
}

impl PauliFrame {
    #[must_use]
    pub fn identity(n: usize) -> Self {
        Self {
            a: BitVector::zeros(n),
            b: BitVector::zeros(n),
        }
    }

    #[must_use]
    pub fn new(a: BitVector, b: BitVector) -> Self {
        assert_eq!(a.len(), b.len(), "frame parts must have equal length");
        Self { a, b }
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn compose(&mut self, other: &PauliFrame) {
        self.a.xor_assign(&other.a);
        self.b.xor_assign(&other.b);
    }

    #[must_use]
    pub fn is_identity(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Number of qubits acted on non-trivially.
    #[must_use]
    pub fn weight(&self) -> usize {
        self.a.or(&self.b).weight()
    }
}

/// Independent depolarizing error: each qubit gets X, Y or Z with probability p/3 each.
pub fn sample_memory_error<R: Rng + ?Sized>(model: &ErrorModel, n: usize, rng: &mut R) -> PauliFrame {
    let mut frame = PauliFrame::identity(n);
    let p = model.p_mem;
    if p == 0.0 {
        return frame;
    }
    for j in 0..n {
        let r: f64 = rng.gen();
        if r < p {
            match (3.0 * r / p) as u32 {
                0 => frame.a.set(j, true),
                1 => {
                    frame.a.set(j, true);
                    frame.b.set(j, true);
                }
                _ => frame.b.set(j, true),
            }
        }
    }
    frame
}

/// XORs each of the low `bits` bits of `s` with an independent Bernoulli(p_meas) flip.
pub fn flip_syndrome<R: Rng + ?Sized>(model: &ErrorModel, s: u64, bits: usize, rng: &mut R) -> u64 {
    let q = model.p_meas;
    if q == 0.0 {
        return s;
    }
    (0..bits).fold(s, |acc, i| if rng.gen::<f64>() < q { acc ^ 1 << i } else { acc })
}

/// Uniformly random element of `space`, used for twirls and gauge randomization.
pub fn random_element<R: Rng + ?Sized>(space: &Subspace, rng: &mut R) -> BitVector {
    let mut v = BitVector::zeros(space.ambient());
    for row in space.basis().rows() {
        if rng.gen::<bool>() {
            v.xor_assign(row);
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn extreme_rates() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let zero = ErrorModel::uniform(0.0).unwrap();
        assert!(sample_memory_error(&zero, 20, &mut rng).is_identity());
        assert_eq!(flip_syndrome(&zero, 0b1010, 4, &mut rng), 0b1010);
        let one = ErrorModel::uniform(1.0).unwrap();
        assert_eq!(sample_memory_error(&one, 20, &mut rng).weight(), 20);
        assert_eq!(flip_syndrome(&one, 0b1010, 4, &mut rng), 0b0101);
        assert!(ErrorModel::new(1.5, 0.0).is_err());
    }
}
