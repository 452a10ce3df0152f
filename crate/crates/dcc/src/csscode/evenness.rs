use serde::{Deserialize, Serialize};

use super::CodeError;
use crate::f2core::{BitVector, Subspace};

/// Largest dimension for which [`check_evenness`] also runs an exhaustive check.
pub const EXHAUSTIVE_EVENNESS_DIM: usize = 20;

/// Disjoint sets M^+ and M^- certifying a doubly (order 4) or triply (order 8)
/// even subspace: |f∩M^+| − |f∩M^-| ≡ 0 (mod order) for every f.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvennessWitness {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
    pub order: u8,
}

impl EvennessWitness {
    pub fn new(mut plus: Vec<usize>, mut minus: Vec<usize>, order: u8) -> Result<Self, CodeError> {
        plus.sort_unstable();
        minus.sort_unstable();
        let w = Self { plus, minus, order };
        w.validate(None)?;
        Ok(w)
    }

    /// m = |M^+| − |M^-|.
    #[must_use]
    pub fn m(&self) -> i64 {
        self.plus.len() as i64 - self.minus.len() as i64
    }

    pub(crate) fn validate(&self, n: Option<usize>) -> Result<(), CodeError> {
        if self.order != 4 && self.order != 8 {
            return Err(CodeError::InvalidWitness(format!("order {} is not 4 or 8", self.order)));
        }
        if self.plus.is_empty() && self.minus.is_empty() {
            return Err(CodeError::InvalidWitness("both sets are empty".into()));
        }
        let mut all: Vec<usize> = self.plus.iter().chain(&self.minus).copied().collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(CodeError::InvalidWitness("M+ and M- overlap or repeat a site".into()));
        }
        if let (Some(n), Some(&max)) = (n, all.last()) {
            if max >= n {
                return Err(CodeError::InvalidWitness(format!("site {max} outside [0, {n})")));
            }
        }
        Ok(())
    }

    fn masks(&self, n: usize) -> (BitVector, BitVector) {
        (
            BitVector::from_indices(n, &self.plus).expect("validated"),
            BitVector::from_indices(n, &self.minus).expect("validated"),
        )
    }
}

/// Signed overlap φ(x) = |x∩M^+| − |x∩M^-|.
fn phi(x: &BitVector, plus: &BitVector, minus: &BitVector) -> i64 {
    x.overlap(plus) as i64 - x.overlap(minus) as i64
}

/// Checks the witness condition on every element of `s` (at the witness order).
pub fn check_evenness(s: &Subspace, w: &EvennessWitness) -> Result<bool, CodeError> {
    check_evenness_at(s, w, w.order)
}

pub(crate) fn check_evenness_at(s: &Subspace, w: &EvennessWitness, order: u8) -> Result<bool, CodeError> {
    w.validate(Some(s.ambient()))?;
    let (plus, minus) = w.masks(s.ambient());
    let by_overlaps = overlap_criterion(s, &plus, &minus, order);
    if s.dim() <= EXHAUSTIVE_EVENNESS_DIM {
        let exhaustive = exhaustive_criterion(s, &plus, &minus, order);
        debug_assert_eq!(exhaustive, by_overlaps);
        return Ok(exhaustive);
    }
    Ok(by_overlaps)
}

fn exhaustive_criterion(s: &Subspace, plus: &BitVector, minus: &BitVector, order: u8) -> bool {
    let m = i64::from(order);
    let k = s.dim();
    let mut cur = BitVector::zeros(s.ambient());
    for i in 1u64..(1u64 << k) {
        cur.xor_assign(s.basis().row(i.trailing_zeros() as usize));
        if phi(&cur, plus, minus).rem_euclid(m) != 0 {
            return false;
        }
    }
    true
}

/// Inclusion-exclusion form of the condition on a basis g_1..g_k:
/// φ(⊕ g_i) = Σ_I (−2)^{|I|−1} φ(∧_{i∈I} g_i), so mod 4 it suffices that
/// φ(g_i) ≡ 0 (4) and φ(g_i∧g_j) ≡ 0 (2); mod 8 additionally needs
/// φ(g_i) ≡ 0 (8), φ(g_i∧g_j) ≡ 0 (4), φ(g_i∧g_j∧g_k) ≡ 0 (2).
/// Both conditions are also necessary.
fn overlap_criterion(s: &Subspace, plus: &BitVector, minus: &BitVector, order: u8) -> bool {
    let rows = s.basis().rows();
    let singles = i64::from(order);
    let pairs = singles / 2;
    for (i, gi) in rows.iter().enumerate() {
        if phi(gi, plus, minus).rem_euclid(singles) != 0 {
            return false;
        }
        for (j, gj) in rows.iter().enumerate().skip(i + 1) {
            let gij = gi.and(gj);
            if phi(&gij, plus, minus).rem_euclid(pairs) != 0 {
                return false;
            }
            if order == 8 {
                for gk in &rows[j + 1..] {
                    if phi(&gij.and(gk), plus, minus).rem_euclid(2) != 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_subspace_is_even() {
        let w = EvennessWitness::new(vec![0], vec![], 8).unwrap();
        assert!(check_evenness(&Subspace::zero(5), &w).unwrap());
    }

    #[test]
    fn overlapping_sets_rejected() {
        assert!(EvennessWitness::new(vec![0, 1], vec![1], 4).is_err());
        assert!(EvennessWitness::new(vec![0], vec![], 6).is_err());
    }

    #[test]
    fn weight_four_vector_is_not_triply_even() {
        let f = BitVector::from_indices(7, &[0, 1, 2, 3]).unwrap();
        let s = Subspace::span(7, &[f]).unwrap();
        let w4 = EvennessWitness::new((0..7).collect(), vec![], 4).unwrap();
        let w8 = EvennessWitness::new((0..7).collect(), vec![], 8).unwrap();
        assert!(check_evenness(&s, &w4).unwrap());
        assert!(!check_evenness(&s, &w8).unwrap());
    }
}
