use super::evenness::check_evenness_at;
use super::{CodeError, EvennessWitness};
use crate::f2core::{BitMatrix, BitVector, OddWeight, Subspace};

/// Maximum coset-label width; labels are packed into a `u64`.
pub const MAX_LABEL_BITS: usize = 64;

/// Parameterization of Pauli errors modulo the gauge group.
///
/// An error X(a)Z(b) gets the label `(x_rows·a) | (z_rows·b) << x_bits`, where
/// `x_rows` generates B+⟨1̄⟩ and `z_rows` generates A+⟨1̄⟩. Row order is part of
/// the label layout, so related codes can share row prefixes.
#[derive(Clone, Debug)]
pub struct CosetMap {
    n: usize,
    x_rows: BitMatrix,
    z_rows: BitMatrix,
    x_dual: Vec<BitVector>,
    z_dual: Vec<BitVector>,
}

impl CosetMap {
    pub fn new(n: usize, x_rows: Vec<BitVector>, z_rows: Vec<BitVector>) -> Result<Self, CodeError> {
        let x_rows = BitMatrix::from_rows(n, x_rows)?;
        let z_rows = BitMatrix::from_rows(n, z_rows)?;
        let c = x_rows.nrows() + z_rows.nrows();
        if c > MAX_LABEL_BITS {
            return Err(CodeError::Capacity(format!("coset labels need {c} bits")));
        }
        let x_dual = x_rows
            .right_inverse()
            .map_err(|_| CodeError::BadCosetRows("X-label rows are dependent".into()))?;
        let z_dual = z_rows
            .right_inverse()
            .map_err(|_| CodeError::BadCosetRows("Z-label rows are dependent".into()))?;
        Ok(Self {
            n,
            x_rows,
            z_rows,
            x_dual,
            z_dual,
        })
    }

    #[inline]
    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Label width c.
    #[inline]
    #[must_use]
    pub fn c(&self) -> usize {
        self.x_rows.nrows() + self.z_rows.nrows()
    }

    /// Width of the X-error part (low bits).
    #[inline]
    #[must_use]
    pub fn x_bits(&self) -> usize {
        self.x_rows.nrows()
    }

    #[inline]
    #[must_use]
    pub fn z_bits(&self) -> usize {
        self.z_rows.nrows()
    }

    #[must_use]
    pub fn x_rows(&self) -> &BitMatrix {
        &self.x_rows
    }

    #[must_use]
    pub fn z_rows(&self) -> &BitMatrix {
        &self.z_rows
    }

    #[must_use]
    pub fn x_label(&self, a: &BitVector) -> u64 {
        pack(&self.x_rows, a)
    }

    #[must_use]
    pub fn z_label(&self, b: &BitVector) -> u64 {
        pack(&self.z_rows, b)
    }

    #[must_use]
    pub fn label(&self, a: &BitVector, b: &BitVector) -> u64 {
        self.x_label(a) | self.z_label(b) << self.x_bits()
    }

    #[must_use]
    pub fn join(&self, alpha: u64, beta: u64) -> u64 {
        alpha | beta << self.x_bits()
    }

    #[must_use]
    pub fn split(&self, label: u64) -> (u64, u64) {
        let mask = low_mask(self.x_bits());
        (label & mask, label >> self.x_bits())
    }

    /// Some a with x_label(a) = alpha.
    #[must_use]
    pub fn x_preimage(&self, alpha: u64) -> BitVector {
        unpack(&self.x_dual, self.n, alpha)
    }

    /// Some b with z_label(b) = beta.
    #[must_use]
    pub fn z_preimage(&self, beta: u64) -> BitVector {
        unpack(&self.z_dual, self.n, beta)
    }

    /// Some error (a, b) carrying the given label.
    #[must_use]
    pub fn preimage(&self, label: u64) -> (BitVector, BitVector) {
        let (alpha, beta) = self.split(label);
        (self.x_preimage(alpha), self.z_preimage(beta))
    }

    /// Coefficients c with f = Σ c_i x_rows[i], so that f·a = parity(c & x_label(a)).
    #[must_use]
    pub fn x_coefficients(&self, f: &BitVector) -> Option<u64> {
        coefficients(&self.x_rows, &self.x_dual, f)
    }

    /// As [`Self::x_coefficients`] for the Z-label rows.
    #[must_use]
    pub fn z_coefficients(&self, f: &BitVector) -> Option<u64> {
        coefficients(&self.z_rows, &self.z_dual, f)
    }
}

fn coefficients(rows: &BitMatrix, dual: &[BitVector], f: &BitVector) -> Option<u64> {
    if f.len() != rows.ncols() {
        return None;
    }
    let c = pack_dual(dual, f);
    let mut back = BitVector::zeros(f.len());
    for (i, r) in rows.rows().iter().enumerate() {
        if c >> i & 1 == 1 {
            back.xor_assign(r);
        }
    }
    (&back == f).then_some(c)
}

fn pack_dual(dual: &[BitVector], v: &BitVector) -> u64 {
    dual.iter()
        .enumerate()
        .fold(0, |acc, (i, d)| acc | u64::from(d.dot(v)) << i)
}

#[inline]
pub(crate) fn low_mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

fn pack(rows: &BitMatrix, v: &BitVector) -> u64 {
    let mut out = 0u64;
    for (i, r) in rows.rows().iter().enumerate() {
        if r.dot(v) {
            out |= 1u64 << i;
        }
    }
    out
}

fn unpack(dual: &[BitVector], n: usize, bits: u64) -> BitVector {
    let mut v = BitVector::zeros(n);
    for (i, d) in dual.iter().enumerate() {
        if bits >> i & 1 == 1 {
            v.xor_assign(d);
        }
    }
    v
}

/// A CSS code CSS(A, B) with A, B ⊆ E mutually orthogonal on an odd number of
/// qubits. X-type stabilizers come from A, Z-type from B; the gauge group is
/// CSS(Ḃ, Ȧ).
#[derive(Clone, Debug)]
pub struct SubsystemCode {
    name: String,
    n: usize,
    a: Subspace,
    b: Subspace,
    dot_a: Subspace,
    dot_b: Subspace,
    coset: CosetMap,
}

/// Builds CSS(A, B) with the default label layout (reduced bases followed by 1̄).
pub fn make_code(name: &str, a: Subspace, b: Subspace) -> Result<SubsystemCode, CodeError> {
    let n = a.ambient();
    if b.ambient() != n {
        return Err(CodeError::Precondition(format!(
            "A lives in F2^{n} but B lives in F2^{}",
            b.ambient()
        )));
    }
    if n % 2 == 0 {
        return Err(CodeError::Precondition(format!("n = {n} is not odd")));
    }
    if !a.is_even() {
        return Err(CodeError::Precondition("A is not contained in the even subspace".into()));
    }
    if !b.is_even() {
        return Err(CodeError::Precondition("B is not contained in the even subspace".into()));
    }
    if !a.is_subspace_of(&b.orthogonal_complement())? {
        return Err(CodeError::Precondition("A and B are not orthogonal".into()));
    }
    let ones = BitVector::ones(n);
    let mut x_rows = b.basis().rows().to_vec();
    x_rows.push(ones.clone());
    let mut z_rows = a.basis().rows().to_vec();
    z_rows.push(ones);
    let coset = CosetMap::new(n, x_rows, z_rows)?;
    Ok(SubsystemCode {
        name: name.to_string(),
        n,
        dot_a: a.dot(),
        dot_b: b.dot(),
        a,
        b,
        coset,
    })
}

/// Transversal gates whose availability can be certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    T,
    S,
    H,
}

impl SubsystemCode {
    /// Replaces the label layout. `x_rows` must be a basis of B+⟨1̄⟩ and
    /// `z_rows` a basis of A+⟨1̄⟩.
    pub fn with_coset_rows(mut self, x_rows: Vec<BitVector>, z_rows: Vec<BitVector>) -> Result<Self, CodeError> {
        let ones = BitVector::ones(self.n);
        let bx = self.b.sum(&Subspace::span(self.n, std::slice::from_ref(&ones))?)?;
        let az = self.a.sum(&Subspace::span(self.n, &[ones])?)?;
        if Subspace::span(self.n, &x_rows)? != bx || x_rows.len() != bx.dim() {
            return Err(CodeError::BadCosetRows("X-label rows are not a basis of B+<1>".into()));
        }
        if Subspace::span(self.n, &z_rows)? != az || z_rows.len() != az.dim() {
            return Err(CodeError::BadCosetRows("Z-label rows are not a basis of A+<1>".into()));
        }
        self.coset = CosetMap::new(self.n, x_rows, z_rows)?;
        Ok(self)
    }

    #[must_use]
    pub fn name(&self) -> &str {
        &self.name
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    /// X-stabilizer space A.
    #[must_use]
    pub fn a(&self) -> &Subspace {
        &self.a
    }

    /// Z-stabilizer space B.
    #[must_use]
    pub fn b(&self) -> &Subspace {
        &self.b
    }

    /// Ȧ, the Z-part of the gauge group.
    #[must_use]
    pub fn dot_a(&self) -> &Subspace {
        &self.dot_a
    }

    /// Ḃ, the X-part of the gauge group.
    #[must_use]
    pub fn dot_b(&self) -> &Subspace {
        &self.dot_b
    }

    #[must_use]
    pub fn coset_map(&self) -> &CosetMap {
        &self.coset
    }

    #[must_use]
    pub fn is_regular(&self) -> bool {
        self.a == self.dot_b
    }

    #[must_use]
    pub fn stabilizer_dim(&self) -> usize {
        self.a.dim() + self.b.dim()
    }

    /// Coset label of the error X(a)Z(b).
    #[must_use]
    pub fn coset_label(&self, a: &BitVector, b: &BitVector) -> u64 {
        self.coset.label(a, b)
    }

    /// Labels of the logical operators X(1̄) and Z(1̄).
    #[must_use]
    pub fn logical_labels(&self) -> (u64, u64) {
        let ones = BitVector::ones(self.n);
        let zero = BitVector::zeros(self.n);
        (self.coset.label(&ones, &zero), self.coset.label(&zero, &ones))
    }

    /// True iff X(a)Z(b) is an element of the gauge group CSS(Ḃ, Ȧ).
    #[must_use]
    pub fn is_gauge(&self, a: &BitVector, b: &BitVector) -> bool {
        self.dot_b.contains(a) && self.dot_a.contains(b)
    }

    /// min{d(A), d(B)}; `max_weight` bounds the search for large spaces.
    pub fn distance(&self, max_weight: Option<usize>) -> Result<OddWeight, CodeError> {
        let da = self.a.min_odd_weight(max_weight)?;
        let db = self.b.min_odd_weight(max_weight)?;
        Ok(match (da, db) {
            (OddWeight::Exact(x), OddWeight::Exact(y)) => OddWeight::Exact(x.min(y)),
            (OddWeight::Exact(x), OddWeight::ExceedsMax(m)) | (OddWeight::ExceedsMax(m), OddWeight::Exact(x)) => {
                if x <= m {
                    OddWeight::Exact(x)
                } else {
                    OddWeight::ExceedsMax(m)
                }
            }
            (OddWeight::ExceedsMax(m), OddWeight::ExceedsMax(_)) => OddWeight::ExceedsMax(m),
        })
    }

    /// Sufficient algebraic conditions for a transversal logical gate.
    pub fn verify_transversality(&self, gate: Gate, witness: Option<&EvennessWitness>) -> Result<bool, CodeError> {
        match gate {
            Gate::H => Ok(self.a == self.b),
            Gate::T => {
                let w = witness.ok_or(CodeError::MissingWitness)?;
                Ok(self.b == self.a.dot() && w.m() % 2 != 0 && check_evenness_at(&self.a, w, 8)?)
            }
            Gate::S => {
                let w = witness.ok_or(CodeError::MissingWitness)?;
                Ok(self.a.is_subspace_of(&self.b)? && w.m() % 2 != 0 && check_evenness_at(&self.a, w, 4)?)
            }
        }
    }
}
