use super::{CodeError, SubsystemCode};
use crate::f2core::{BitMatrix, BitVector, Subspace};

/// Largest code for which the 2^n enumeration in [`CleanabilityTable::build`] runs.
pub const MAX_CLEANABILITY_QUBITS: usize = 25;

/// True iff no odd vector of A^⊥ is supported inside `e`.
///
/// That holds iff the all-ones vector on `e` lies in the row space of A
/// restricted to `e`, i.e. some element of A covers `e`.
pub fn is_cleanable_support(a: &Subspace, e: &BitVector) -> bool {
    let coords = e.support();
    if coords.is_empty() {
        return true;
    }
    let rows: Vec<BitVector> = a.basis().rows().iter().map(|r| r.restrict(&coords)).collect();
    let restricted = BitMatrix::from_rows(coords.len(), rows).expect("restricted rows share a length");
    Subspace::span_unchecked(coords.len(), restricted.into_rows()).contains(&BitVector::ones(coords.len()))
}

/// Cleanable X-cosets of a regular code, indexed by X-label α, with a
/// representative e(α) of minimum weight (ties: smallest sorted support list).
#[derive(Clone, Debug)]
pub struct CleanabilityTable {
    n: usize,
    reps: Vec<Option<BitVector>>,
    count: usize,
}

impl CleanabilityTable {
    pub fn build(code: &SubsystemCode) -> Result<Self, CodeError> {
        let n = code.n();
        if !code.is_regular() {
            return Err(CodeError::NotRegular);
        }
        if n > MAX_CLEANABILITY_QUBITS {
            return Err(CodeError::Capacity(format!(
                "cleanability enumeration over 2^{n} supports (limit {MAX_CLEANABILITY_QUBITS} qubits)"
            )));
        }
        let map = code.coset_map();
        let x_rows: Vec<u64> = map.x_rows().rows().iter().map(BitVector::to_u64).collect();
        let label = |e: u64| -> u64 {
            x_rows
                .iter()
                .enumerate()
                .fold(0, |acc, (i, r)| acc | u64::from((r & e).count_ones() & 1) << i)
        };

        // Every subset of the support of an element of A is cleanable, and nothing else is.
        let mut covered = vec![false; 1usize << n];
        for a in code.a().elements() {
            let mask = a.to_u64();
            let mut sub = mask;
            loop {
                covered[sub as usize] = true;
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & mask;
            }
        }
        let mut is_clean = vec![false; 1usize << map.x_bits()];
        let mut count = 0;
        for (e, _) in covered.iter().enumerate().filter(|(_, &c)| c) {
            let l = label(e as u64) as usize;
            if !is_clean[l] {
                is_clean[l] = true;
                count += 1;
            }
        }

        // Lexicographic combination order within each weight gives the tie-break.
        let mut reps: Vec<Option<BitVector>> = vec![None; 1usize << map.x_bits()];
        let mut found = 0;
        'weights: for w in 0..=n {
            let mut idx: Vec<usize> = (0..w).collect();
            loop {
                let e = idx.iter().fold(0u64, |acc, &i| acc | 1 << i);
                if covered[e as usize] {
                    let l = label(e) as usize;
                    if reps[l].is_none() {
                        reps[l] = Some(BitVector::from_u64(n, e));
                        found += 1;
                        if found == count {
                            break 'weights;
                        }
                    }
                }
                let Some(d) = (0..w).rev().find(|&d| idx[d] < n - w + d) else {
                    break;
                };
                idx[d] += 1;
                for k in d + 1..w {
                    idx[k] = idx[k - 1] + 1;
                }
            }
        }
        Ok(Self { n, reps, count })
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of cleanable cosets.
    #[must_use]
    pub fn count(&self) -> usize {
        self.count
    }

    /// Total number of X-cosets (2^{x_bits}).
    #[must_use]
    pub fn num_cosets(&self) -> usize {
        self.reps.len()
    }

    #[must_use]
    pub fn is_cleanable(&self, alpha: u64) -> bool {
        self.reps.get(alpha as usize).is_some_and(Option::is_some)
    }

    #[must_use]
    pub fn representative(&self, alpha: u64) -> Option<&BitVector> {
        self.reps.get(alpha as usize).and_then(Option::as_ref)
    }

    /// Cleanable labels in increasing order.
    pub fn cleanable(&self) -> impl Iterator<Item = u64> + '_ {
        self.reps
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_some())
            .map(|(i, _)| i as u64)
    }
}
