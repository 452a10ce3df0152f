use std::fmt;

use rand::Rng;

use super::PauliFrame;

/// Size of the single-qubit Clifford group modulo phases.
pub const CLIFFORD_COUNT: usize = 24;

/// A single-qubit Pauli as (x, z) bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    #[must_use]
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }
}

/// Images of (X, Z) for the six permutations of {X, Y, Z}.
const CLASS_IMAGES: [(Pauli, Pauli); 6] = [
    (Pauli::X, Pauli::Z),
    (Pauli::Z, Pauli::X),
    (Pauli::Y, Pauli::Z),
    (Pauli::X, Pauli::Y),
    (Pauli::Y, Pauli::X),
    (Pauli::Z, Pauli::Y),
];

/// Element of the single-qubit Clifford group: index = 4·class + sign, where
/// the class is the induced permutation of {X, Y, Z} and the sign part (a
/// Pauli factor) only changes phases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Clifford(u8);

impl Clifford {
    pub const IDENTITY: Clifford = Clifford(0);
    pub const H: Clifford = Clifford(4);
    pub const S: Clifford = Clifford(8);

    /// Panics if `index` ≥ 24.
    #[must_use]
    pub fn from_index(index: usize) -> Self {
        assert!(index < CLIFFORD_COUNT, "Clifford index {index} out of range");
        Clifford(index as u8)
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Clifford(rng.gen_range(0..CLIFFORD_COUNT as u8))
    }

    #[must_use]
    pub fn index(self) -> usize {
        usize::from(self.0)
    }

    /// Which of the six {X,Y,Z} permutations this element induces.
    #[must_use]
    pub fn class(self) -> usize {
        usize::from(self.0 / 4)
    }

    /// U X U† and U Z U† up to phase.
    #[must_use]
    pub fn images(self) -> (Pauli, Pauli) {
        CLASS_IMAGES[self.class()]
    }

    /// Symplectic matrix m with a' = m[0][0]·a + m[0][1]·b and b' = m[1][0]·a + m[1][1]·b.
    #[must_use]
    pub fn matrix(self) -> [[bool; 2]; 2] {
        let (px, pz) = self.images();
        let (x1, z1) = px.bits();
        let (x2, z2) = pz.bits();
        [[x1, x2], [z1, z2]]
    }

    /// The class representative of U^{-1}.
    #[must_use]
    pub fn inverse(self) -> Self {
        let m = self.matrix();
        // Inverse of an invertible 2×2 matrix over F2 with det 1 is its adjugate.
        let inv = [[m[1][1], m[0][1]], [m[1][0], m[0][0]]];
        let class = (0..6)
            .find(|&c| Clifford((c * 4) as u8).matrix() == inv)
            .expect("every symplectic matrix is a class");
        Clifford((class * 4) as u8)
    }
}

impl fmt::Display for Clifford {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, z) = self.images();
        write!(f, "C{}(X->{x:?},Z->{z:?})", self.0)
    }
}

/// Conjugates the frame by U^{⊗n}: X(a)Z(b) ↦ U X(a)Z(b) U†.
#[must_use]
pub fn frame_through_clifford(frame: &PauliFrame, gate: Clifford) -> PauliFrame {
    let m = gate.matrix();
    let part = |ca: bool, cb: bool| match (ca, cb) {
        (true, true) => frame.a.xor(&frame.b),
        (true, false) => frame.a.clone(),
        (false, true) => frame.b.clone(),
        (false, false) => frame.a.xor(&frame.a),
    };
    PauliFrame {
        a: part(m[0][0], m[0][1]),
        b: part(m[1][0], m[1][1]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2core::BitVector;

    fn frame(a: &[usize], b: &[usize]) -> PauliFrame {
        PauliFrame::new(BitVector::from_indices(4, a).unwrap(), BitVector::from_indices(4, b).unwrap())
    }

    #[test]
    fn hadamard_swaps_and_phase_gate_adds() {
        let f = frame(&[0, 1], &[1, 2]);
        assert_eq!(frame_through_clifford(&f, Clifford::H), frame(&[1, 2], &[0, 1]));
        assert_eq!(frame_through_clifford(&f, Clifford::S), frame(&[0, 1], &[0, 2]));
        assert_eq!(frame_through_clifford(&f, Clifford::IDENTITY), f);
    }

    #[test]
    fn classes_are_symplectic_and_distinct() {
        let mut seen = Vec::new();
        for c in (0..24).map(Clifford::from_index) {
            let m = c.matrix();
            let det = (m[0][0] && m[1][1]) ^ (m[0][1] && m[1][0]);
            assert!(det);
            if c.index() % 4 == 0 {
                assert!(!seen.contains(&m));
                seen.push(m);
            }
            let back = frame_through_clifford(&frame_through_clifford(&frame(&[0, 3], &[3]), c), c.inverse());
            assert_eq!(back, frame(&[0, 3], &[3]));
        }
    }
}
