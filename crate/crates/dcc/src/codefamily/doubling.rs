use crate::f2core::{BitVector, Subspace};

/// The doubling map 2S+T on blocks A, B (length m each) and C (length n):
/// ⟨f[A]+f[B] : f ∈ S⟩ + T[C] + ⟨BC⟩.
#[must_use]
pub fn double(s: &Subspace, t: &Subspace) -> Subspace {
    let m = s.ambient();
    let n = t.ambient();
    let len = 2 * m + n;
    let mut rows = Vec::with_capacity(s.dim() + t.dim() + 1);
    for f in s.basis().rows() {
        rows.push(f.embed_at(len, 0).xor(&f.embed_at(len, m)));
    }
    for g in t.basis().rows() {
        rows.push(g.embed_at(len, 2 * m));
    }
    rows.push(BitVector::ones(m + n).embed_at(len, m));
    Subspace::span(len, &rows).expect("rows share a length")
}

/// V̇ = U̇ + chain: appends `ancillas` qubits and joins qubits `i` and `j`
/// through them by weight-two links. Needs e^i + e^j ∈ U̇ for the result to
/// describe the same code.
#[must_use]
pub fn subdivide(gauge: &Subspace, i: usize, j: usize, ancillas: usize) -> Subspace {
    let n = gauge.ambient();
    let len = n + ancillas;
    let mut rows: Vec<BitVector> = gauge.basis().rows().iter().map(|r| r.embed_at(len, 0)).collect();
    let mut chain = vec![i];
    chain.extend(n..len);
    chain.push(j);
    for w in chain.windows(2) {
        rows.push(BitVector::from_indices(len, w).expect("chain indices in range"));
    }
    Subspace::span(len, &rows).expect("rows share a length")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_adds_up() {
        let s = Subspace::span(3, &[BitVector::from_indices(3, &[0, 1]).unwrap()]).unwrap();
        let t = Subspace::zero(1);
        let u = double(&s, &t);
        assert_eq!(u.ambient(), 7);
        assert_eq!(u.dim(), s.dim() + t.dim() + 1);
    }
}
