use super::bitvec::{word_count, Words};
use super::{BitMatrix, BitVector, F2Error};

/// Largest dim(S^⊥) for which [`Subspace::min_odd_weight`] enumerates the whole space.
pub const FULL_ENUMERATION_DIM: usize = 25;

/// Outcome of a bounded search for the minimum odd weight in S^⊥.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OddWeight {
    /// The exact minimum.
    Exact(usize),
    /// No odd vector of weight at most the given bound exists.
    ExceedsMax(usize),
}

impl OddWeight {
    #[must_use]
    pub fn exact(self) -> Option<usize> {
        match self {
            OddWeight::Exact(d) => Some(d),
            OddWeight::ExceedsMax(_) => None,
        }
    }
}

/// A linear subspace of F_2^n.
///
/// Both the basis and the parity checks (a basis of S^⊥) are kept in reduced
/// echelon form, so two subspaces are equal iff their bases are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    basis: BitMatrix,
    checks: BitMatrix,
}

impl Subspace {
    pub fn span(n: usize, vectors: &[BitVector]) -> Result<Self, F2Error> {
        let basis = BitMatrix::from_rows(n, vectors.to_vec())?.rref().0;
        let checks = basis.kernel();
        Ok(Self { n, basis, checks })
    }

    /// Same as [`Subspace::span`] for vectors already known to have length `n`.
    pub(crate) fn span_unchecked(n: usize, vectors: Vec<BitVector>) -> Self {
        let basis = BitMatrix::from_rows(n, vectors)
            .expect("vector lengths checked by caller")
            .rref()
            .0;
        let checks = basis.kernel();
        Self { n, basis, checks }
    }

    #[must_use]
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            basis: BitMatrix::empty(n),
            checks: BitMatrix::identity(n),
        }
    }

    #[must_use]
    pub fn full(n: usize) -> Self {
        Self::zero(n).orthogonal_complement()
    }

    /// The even-weight subspace E.
    #[must_use]
    pub fn even(n: usize) -> Self {
        Self::span_unchecked(n, vec![BitVector::ones(n)]).orthogonal_complement()
    }

    #[inline]
    #[must_use]
    pub fn ambient(&self) -> usize {
        self.n
    }

    #[inline]
    #[must_use]
    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    #[inline]
    #[must_use]
    pub fn basis(&self) -> &BitMatrix {
        &self.basis
    }

    /// Reduced basis of S^⊥; its kernel is S.
    #[inline]
    #[must_use]
    pub fn parity_checks(&self) -> &BitMatrix {
        &self.checks
    }

    #[must_use]
    pub fn contains(&self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.n, "membership test with wrong length");
        self.checks.rows().iter().all(|c| !c.dot(v))
    }

    pub fn checked_contains(&self, v: &BitVector) -> Result<bool, F2Error> {
        self.same_ambient(v.len())?;
        Ok(self.contains(v))
    }

    #[must_use]
    pub fn orthogonal_complement(&self) -> Self {
        Self {
            n: self.n,
            basis: self.checks.clone(),
            checks: self.basis.clone(),
        }
    }

    pub fn sum(&self, other: &Self) -> Result<Self, F2Error> {
        self.same_ambient(other.n)?;
        let mut rows = self.basis.rows().to_vec();
        rows.extend(other.basis.rows().iter().cloned());
        Ok(Self::span_unchecked(self.n, rows))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, F2Error> {
        Ok(self
            .orthogonal_complement()
            .sum(&other.orthogonal_complement())?
            .orthogonal_complement())
    }

    /// Ṡ = S^⊥ ∩ E.
    #[must_use]
    pub fn dot(&self) -> Self {
        let mut rows = self.basis.rows().to_vec();
        rows.push(BitVector::ones(self.n));
        Self::span_unchecked(self.n, rows).orthogonal_complement()
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool, F2Error> {
        self.same_ambient(other.n)?;
        Ok(self.basis.rows().iter().all(|r| other.contains(r)))
    }

    /// S ⊆ E.
    #[must_use]
    pub fn is_even(&self) -> bool {
        self.basis.rows().iter().all(|r| !r.is_odd())
    }

    #[must_use]
    pub fn is_self_orthogonal(&self) -> bool {
        let rows = self.basis.rows();
        rows.iter()
            .enumerate()
            .all(|(i, a)| rows[i..].iter().all(|b| !a.dot(b)))
    }

    /// Coordinates of `v` in the reduced basis, if `v ∈ S`.
    #[must_use]
    pub fn coordinates(&self, v: &BitVector) -> Option<BitVector> {
        let mut rest = v.clone();
        let mut coeffs = BitVector::zeros(self.dim());
        for (i, row) in self.basis.rows().iter().enumerate() {
            let p = row.first_one().expect("basis rows are nonzero");
            if rest.get(p) {
                rest.xor_assign(row);
                coeffs.set(i, true);
            }
        }
        rest.is_zero().then_some(coeffs)
    }

    /// All 2^dim elements in Gray-code order. Panics above dimension 24.
    #[must_use]
    pub fn elements(&self) -> Vec<BitVector> {
        let k = self.dim();
        assert!(k <= 24, "refusing to enumerate a subspace of dimension {k}");
        let mut out = Vec::with_capacity(1 << k);
        let mut cur = BitVector::zeros(self.n);
        out.push(cur.clone());
        for i in 1u64..(1u64 << k) {
            cur.xor_assign(self.basis.row(i.trailing_zeros() as usize));
            out.push(cur.clone());
        }
        out
    }

    /// d(S) = min{|f| : f ∈ S^⊥ odd}.
    ///
    /// Enumerates S^⊥ when dim(S^⊥) ≤ 25; otherwise scans odd weights
    /// 1, 3, ... up to `max_weight`, which is then mandatory.
    pub fn min_odd_weight(&self, max_weight: Option<usize>) -> Result<OddWeight, F2Error> {
        Ok(match self.min_odd_vector(max_weight)? {
            Some(v) => OddWeight::Exact(v.weight()),
            None => OddWeight::ExceedsMax(max_weight.unwrap_or(self.n)),
        })
    }

    /// A minimum-weight odd vector of S^⊥, found by the same strategy as
    /// [`Subspace::min_odd_weight`]. `None` means the bound was exceeded.
    pub fn min_odd_vector(&self, max_weight: Option<usize>) -> Result<Option<BitVector>, F2Error> {
        if self.contains(&BitVector::ones(self.n)) {
            return Err(F2Error::NoOddVectors);
        }
        if self.checks.nrows() <= FULL_ENUMERATION_DIM {
            return Ok(Some(self.enumerate_min_odd()));
        }
        let bound = max_weight.ok_or(F2Error::SearchTooLarge {
            dim: self.checks.nrows(),
        })?;
        Ok(self.combination_min_odd(bound))
    }

    /// Exhaustive path: walks S^⊥ in Gray-code order.
    pub(crate) fn enumerate_min_odd(&self) -> BitVector {
        let k = self.checks.nrows();
        let nw = word_count(self.n);
        let rows: Vec<&[u64]> = self.checks.rows().iter().map(BitVector::words).collect();
        let mut cur: Words = smallvec::smallvec![0u64; nw];
        let mut best: Option<(u32, u64)> = None;
        for i in 1u64..(1u64 << k) {
            let r = rows[i.trailing_zeros() as usize];
            let mut wt = 0u32;
            for (c, x) in cur.iter_mut().zip(r) {
                *c ^= x;
                wt += c.count_ones();
            }
            if wt % 2 == 1 && best.is_none_or(|(b, _)| wt < b) {
                best = Some((wt, i ^ (i >> 1)));
                if wt == 1 {
                    break;
                }
            }
        }
        let (_, gray) = best.expect("an odd vector exists when 1̄ ∉ S");
        let mut v = BitVector::zeros(self.n);
        for j in 0..k {
            if gray >> j & 1 == 1 {
                v.xor_assign(self.checks.row(j));
            }
        }
        v
    }

    /// Bounded path: v ∈ S^⊥ iff the columns of the basis indexed by supp(v) sum to zero.
    pub(crate) fn combination_min_odd(&self, bound: usize) -> Option<BitVector> {
        let k = self.dim();
        let kw = word_count(k).max(1);
        let mut cols = vec![0u64; self.n * kw];
        for (i, row) in self.basis.rows().iter().enumerate() {
            for j in row.iter_ones() {
                cols[j * kw + i / 64] |= 1u64 << (i % 64);
            }
        }
        let col = |j: usize| &cols[j * kw..(j + 1) * kw];
        let mut w = 1;
        while w <= bound.min(self.n) {
            let mut idx: Vec<usize> = (0..w).collect();
            // acc[d] = sum of the first d chosen columns
            let mut acc = vec![0u64; (w + 1) * kw];
            for d in 0..w {
                for q in 0..kw {
                    acc[(d + 1) * kw + q] = acc[d * kw + q] ^ col(idx[d])[q];
                }
            }
            loop {
                if acc[w * kw..(w + 1) * kw].iter().all(|&x| x == 0) {
                    let mut v = BitVector::zeros(self.n);
                    for &j in &idx {
                        v.set(j, true);
                    }
                    return Some(v);
                }
                // advance to the next combination in lexicographic order
                let Some(d) = (0..w).rev().find(|&d| idx[d] < self.n - w + d) else {
                    break;
                };
                idx[d] += 1;
                for e in d + 1..w {
                    idx[e] = idx[e - 1] + 1;
                }
                for e in d..w {
                    for q in 0..kw {
                        acc[(e + 1) * kw + q] = acc[e * kw + q] ^ col(idx[e])[q];
                    }
                }
            }
            w += 2;
        }
        None
    }

    fn same_ambient(&self, n: usize) -> Result<(), F2Error> {
        if self.n == n {
            Ok(())
        } else {
            Err(F2Error::DimensionMismatch { left: self.n, right: n })
        }
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(n={}, dim={}) ", self.n, self.dim())?;
        f.debug_list().entries(self.basis.rows()).finish()
    }
}
