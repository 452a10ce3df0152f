use serde::{Deserialize, Serialize};

use super::DecoderError;
use crate::csscode::{low_mask, SubsystemCode};
use crate::f2core::{fwht, BitMatrix, BitVector};
use crate::noise::{frame_through_clifford, Clifford, PauliFrame};

/// Split of a coset label into an X part (low bits) and a Z part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabelLayout {
    pub x_bits: usize,
    pub z_bits: usize,
}

impl LabelLayout {
    #[must_use]
    pub fn new(x_bits: usize, z_bits: usize) -> Self {
        Self { x_bits, z_bits }
    }

    #[must_use]
    pub fn of(code: &SubsystemCode) -> Self {
        let m = code.coset_map();
        Self::new(m.x_bits(), m.z_bits())
    }

    #[must_use]
    pub fn c(self) -> usize {
        self.x_bits + self.z_bits
    }

    #[must_use]
    pub fn x_mask(self) -> u64 {
        low_mask(self.x_bits)
    }

    #[must_use]
    pub fn split(self, label: u64) -> (u64, u64) {
        (label & self.x_mask(), label >> self.x_bits)
    }

    #[must_use]
    pub fn join(self, alpha: u64, beta: u64) -> u64 {
        alpha | beta << self.x_bits
    }
}

/// Images of all 2^k inputs of the linear map with the given columns.
pub(crate) fn linear_table(columns: &[u64]) -> Vec<u64> {
    let mut table = vec![0u64; 1usize << columns.len()];
    for i in 1..table.len() {
        table[i] = table[i & (i - 1)] ^ columns[i.trailing_zeros() as usize];
    }
    table
}

/// A linear map between label spaces, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelMap {
    input: LabelLayout,
    output: LabelLayout,
    columns: Vec<u64>,
}

impl LabelMap {
    pub fn new(input: LabelLayout, output: LabelLayout, columns: Vec<u64>) -> Result<Self, DecoderError> {
        if columns.len() != input.c() {
            return Err(DecoderError::Shape(format!(
                "{} columns for a {}-bit input",
                columns.len(),
                input.c()
            )));
        }
        if columns.iter().any(|&col| col & !low_mask(output.c()) != 0) {
            return Err(DecoderError::Shape("column wider than the output".into()));
        }
        Ok(Self { input, output, columns })
    }

    #[must_use]
    pub fn identity(layout: LabelLayout) -> Self {
        Self {
            input: layout,
            output: layout,
            columns: (0..layout.c()).map(|i| 1u64 << i).collect(),
        }
    }

    /// Action of a transversal Clifford on the cosets of `code`.
    pub fn from_clifford(code: &SubsystemCode, gate: Clifford) -> Result<Self, DecoderError> {
        let map = code.coset_map();
        let layout = LabelLayout::of(code);
        let columns = (0..layout.c())
            .map(|i| {
                let (a, b) = map.preimage(1u64 << i);
                let out = frame_through_clifford(&PauliFrame::new(a, b), gate);
                map.label(&out.a, &out.b)
            })
            .collect();
        let v = Self::new(layout, layout, columns)?;
        if !v.is_invertible() {
            return Err(DecoderError::Shape(format!("{gate} does not permute the cosets of {}", code.name())));
        }
        Ok(v)
    }

    #[must_use]
    pub fn input(&self) -> LabelLayout {
        self.input
    }

    #[must_use]
    pub fn output(&self) -> LabelLayout {
        self.output
    }

    #[must_use]
    pub fn columns(&self) -> &[u64] {
        &self.columns
    }

    #[must_use]
    pub fn apply(&self, label: u64) -> u64 {
        let mut out = 0;
        let mut rest = label;
        while rest != 0 {
            out ^= self.columns[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        out
    }

    #[must_use]
    pub fn table(&self) -> Vec<u64> {
        linear_table(&self.columns)
    }

    fn as_matrix(&self) -> BitMatrix {
        // Rows of the matrix are the output bits.
        let rows = (0..self.output.c())
            .map(|r| BitVector::from_bools(&self.columns.iter().map(|col| col >> r & 1 == 1).collect::<Vec<_>>()))
            .collect();
        BitMatrix::from_rows(self.input.c(), rows).expect("rows share a length")
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.as_matrix().rank()
    }

    #[must_use]
    pub fn is_invertible(&self) -> bool {
        self.input.c() == self.output.c() && self.rank() == self.input.c()
    }

    /// Basis of {f : D f = 0}.
    #[must_use]
    pub fn kernel(&self) -> Vec<u64> {
        self.as_matrix().kernel().rows().iter().map(BitVector::to_u64).collect()
    }

    /// Some right inverse R (D R = I on the output), when D is surjective.
    pub fn right_inverse(&self) -> Result<LabelMap, DecoderError> {
        let cols = self
            .as_matrix()
            .right_inverse()
            .map_err(|_| DecoderError::Shape("label map is not surjective".into()))?;
        Self::new(self.output, self.input, cols.iter().map(BitVector::to_u64).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeformKind {
    /// Gauge group grows; D maps old labels onto new ones.
    Merge,
    /// Gauge group shrinks; D maps new labels onto old ones.
    Split,
}

/// Label update for a change of gauge group.
#[derive(Clone, Debug)]
pub struct DeformationMap {
    kind: DeformKind,
    d: LabelMap,
    /// Split only: a right inverse of D and a basis of ker D.
    lift: Option<(LabelMap, Vec<u64>)>,
}

impl DeformationMap {
    /// Gauge group of `old` contained in that of `new`.
    pub fn merge(old: &SubsystemCode, new: &SubsystemCode) -> Result<Self, DecoderError> {
        check_gauge_inclusion(old, new)?;
        let d = relabel(old, new)?;
        Self::from_parts(DeformKind::Merge, d)
    }

    /// Gauge group of `new` contained in that of `old`.
    pub fn split(old: &SubsystemCode, new: &SubsystemCode) -> Result<Self, DecoderError> {
        check_gauge_inclusion(new, old)?;
        let d = relabel(new, old)?;
        Self::from_parts(DeformKind::Split, d)
    }

    pub fn from_parts(kind: DeformKind, d: LabelMap) -> Result<Self, DecoderError> {
        if d.rank() != d.output().c() {
            return Err(DecoderError::Shape("deformation map must be onto".into()));
        }
        let lift = match kind {
            DeformKind::Merge => None,
            DeformKind::Split => Some((d.right_inverse()?, d.kernel())),
        };
        Ok(Self { kind, d, lift })
    }

    #[must_use]
    pub fn kind(&self) -> DeformKind {
        self.kind
    }

    #[must_use]
    pub fn d(&self) -> &LabelMap {
        &self.d
    }

    /// Label layout before the deformation.
    #[must_use]
    pub fn source(&self) -> LabelLayout {
        match self.kind {
            DeformKind::Merge => self.d.input(),
            DeformKind::Split => self.d.output(),
        }
    }

    /// Label layout after the deformation.
    #[must_use]
    pub fn target(&self) -> LabelLayout {
        match self.kind {
            DeformKind::Merge => self.d.output(),
            DeformKind::Split => self.d.input(),
        }
    }

    pub(crate) fn lift(&self) -> Option<&(LabelMap, Vec<u64>)> {
        self.lift.as_ref()
    }
}

fn check_gauge_inclusion(small: &SubsystemCode, big: &SubsystemCode) -> Result<(), DecoderError> {
    if small.n() != big.n() {
        return Err(DecoderError::Shape("codes act on different qubit counts".into()));
    }
    let x_ok = small.dot_b().is_subspace_of(big.dot_b())?;
    let z_ok = small.dot_a().is_subspace_of(big.dot_a())?;
    if x_ok && z_ok {
        Ok(())
    } else {
        Err(DecoderError::Shape(format!(
            "gauge group of {} is not inside that of {}",
            small.name(),
            big.name()
        )))
    }
}

/// Labels of `small` mapped to labels of `big` (whose gauge group is larger).
fn relabel(small: &SubsystemCode, big: &SubsystemCode) -> Result<LabelMap, DecoderError> {
    let (sm, bm) = (small.coset_map(), big.coset_map());
    let columns = (0..sm.c())
        .map(|i| {
            let (a, b) = sm.preimage(1u64 << i);
            bm.label(&a, &b)
        })
        .collect();
    LabelMap::new(LabelLayout::of(small), LabelLayout::of(big), columns)
}

/// Pauli type of a measured check operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckKind {
    /// X(f): outcome f·b.
    X,
    /// Z(f): outcome f·a.
    Z,
}

/// Ideal syndrome M f of a coset label f, one mask per measured bit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyndromeMap {
    layout: LabelLayout,
    rows: Vec<u64>,
}

impl SyndromeMap {
    pub fn new(layout: LabelLayout, rows: Vec<u64>) -> Result<Self, DecoderError> {
        if rows.len() > 64 || rows.iter().any(|&r| r & !low_mask(layout.c()) != 0) {
            return Err(DecoderError::Shape("syndrome rows do not fit the label".into()));
        }
        Ok(Self { layout, rows })
    }

    /// One syndrome bit per check, in order. Each check must be constant on gauge cosets.
    pub fn from_checks(code: &SubsystemCode, checks: &[(CheckKind, BitVector)]) -> Result<Self, DecoderError> {
        let map = code.coset_map();
        let rows = checks
            .iter()
            .map(|(kind, f)| {
                let coeffs = match kind {
                    CheckKind::Z => map.x_coefficients(f),
                    CheckKind::X => map.z_coefficients(f).map(|c| c << map.x_bits()),
                };
                coeffs.ok_or_else(|| {
                    DecoderError::Shape(format!("{kind:?}-check {} is not a function of the coset", f.to_hex()))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(LabelLayout::of(code), rows)
    }

    #[must_use]
    pub fn layout(&self) -> LabelLayout {
        self.layout
    }

    #[must_use]
    pub fn bits(&self) -> usize {
        self.rows.len()
    }

    #[must_use]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[must_use]
    pub fn syndrome(&self, label: u64) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &r)| acc | u64::from((r & label).count_ones() & 1) << i)
    }

    /// Syndrome of each unit label, usable with [`linear_table`].
    pub(crate) fn columns(&self) -> Vec<u64> {
        (0..self.layout.c()).map(|j| self.syndrome(1u64 << j)).collect()
    }
}

/// Distribution of the coset label of one round's memory error.
#[derive(Clone, Debug)]
pub enum MemoryKernel {
    /// The Walsh-Hadamard image P̂ over all 2^c labels.
    Dense { layout: LabelLayout, p_hat: Vec<f64> },
    /// Explicit (label, probability) pairs, labels distinct.
    Sparse { layout: LabelLayout, entries: Vec<(u64, f64)> },
}

impl MemoryKernel {
    /// Full depolarizing noise in closed form: P̂(s) = (1−4p/3)^k where k counts
    /// qubits j with (x_rowsᵀ s_α, z_rowsᵀ s_β)_j ≠ (0, 0).
    pub fn depolarizing_dense(code: &SubsystemCode, p: f64) -> Result<Self, DecoderError> {
        let map = code.coset_map();
        let n = code.n();
        if n > 64 {
            return Err(DecoderError::Shape("dense memory kernel needs n ≤ 64".into()));
        }
        let layout = LabelLayout::of(code);
        let to_masks = |m: &BitMatrix| m.rows().iter().map(BitVector::to_u64).collect::<Vec<_>>();
        let u = linear_table(&to_masks(map.x_rows()));
        let w = linear_table(&to_masks(map.z_rows()));
        let r = 1.0 - 4.0 * p / 3.0;
        let powers: Vec<f64> = (0..=n as i32).map(|k| r.powi(k)).collect();
        let mut p_hat = vec![0.0; 1usize << layout.c()];
        for (beta, wb) in w.iter().enumerate() {
            for (alpha, ua) in u.iter().enumerate() {
                p_hat[layout.join(alpha as u64, beta as u64) as usize] = powers[(ua | wb).count_ones() as usize];
            }
        }
        Ok(Self::Dense { layout, p_hat })
    }

    /// Depolarizing noise restricted to errors of weight ≤ 1: identity 1−p and
    /// each single-qubit Pauli p/3. Only the ratios matter since every update
    /// renormalizes, so the total is left at 1+(n−1)p.
    pub fn depolarizing_sparse(code: &SubsystemCode, p: f64) -> Result<Self, DecoderError> {
        let map = code.coset_map();
        let n = code.n();
        let mut pairs = vec![(0u64, 1.0 - p)];
        for j in 0..n {
            let unit = BitVector::unit(n, j);
            let zero = BitVector::zeros(n);
            pairs.push((map.label(&unit, &zero), p / 3.0));
            pairs.push((map.label(&unit, &unit), p / 3.0));
            pairs.push((map.label(&zero, &unit), p / 3.0));
        }
        Self::from_distribution(LabelLayout::of(code), pairs)
    }

    /// Aggregates (label, probability) pairs; repeated labels are summed.
    pub fn from_distribution(layout: LabelLayout, pairs: Vec<(u64, f64)>) -> Result<Self, DecoderError> {
        let mut entries: Vec<(u64, f64)> = Vec::with_capacity(pairs.len());
        let mut sorted = pairs;
        sorted.sort_by_key(|&(l, _)| l);
        for (label, p) in sorted {
            if label & !low_mask(layout.c()) != 0 {
                return Err(DecoderError::Shape(format!("label {label:#x} is wider than {} bits", layout.c())));
            }
            if p < 0.0 {
                return Err(DecoderError::Numeric(format!("negative probability {p}")));
            }
            match entries.last_mut() {
                Some((l, acc)) if *l == label => *acc += p,
                _ => entries.push((label, p)),
            }
        }
        Ok(Self::Sparse { layout, entries })
    }

    #[must_use]
    pub fn layout(&self) -> LabelLayout {
        match self {
            Self::Dense { layout, .. } | Self::Sparse { layout, .. } => *layout,
        }
    }

    /// The dense form, transforming an explicit distribution if needed.
    pub fn to_dense(&self) -> Result<MemoryKernel, DecoderError> {
        match self {
            Self::Dense { .. } => Ok(self.clone()),
            Self::Sparse { layout, entries } => {
                let mut p = vec![0.0; 1usize << layout.c()];
                for &(l, w) in entries {
                    p[l as usize] += w;
                }
                fwht(&mut p)?;
                Ok(Self::Dense {
                    layout: *layout,
                    p_hat: p,
                })
            }
        }
    }
}
