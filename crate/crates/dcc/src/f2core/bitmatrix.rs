use super::{BitVector, F2Error};

/// A dense binary matrix stored as a list of rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    ncols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    #[must_use]
    pub fn empty(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new() }
    }

    pub fn from_rows(ncols: usize, rows: Vec<BitVector>) -> Result<Self, F2Error> {
        if let Some(r) = rows.iter().find(|r| r.len() != ncols) {
            return Err(F2Error::DimensionMismatch {
                left: ncols,
                right: r.len(),
            });
        }
        Ok(Self { ncols, rows })
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        Self {
            ncols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    #[inline]
    #[must_use]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    #[must_use]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    #[must_use]
    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    #[must_use]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    #[must_use]
    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    /// Reduced row echelon form with leftmost pivots, zero rows removed.
    /// Returns the reduced matrix and its pivot columns (strictly increasing).
    #[must_use]
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut rows: Vec<BitVector> = self.rows.iter().filter(|r| !r.is_zero()).cloned().collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.ncols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            r += 1;
        }
        rows.truncate(r);
        (
            BitMatrix {
                ncols: self.ncols,
                rows,
            },
            pivots,
        )
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.rref().0.nrows()
    }

    /// Basis of {x : row·x = 0 for every row}, in reduced echelon form.
    #[must_use]
    pub fn kernel(&self) -> BitMatrix {
        let (red, pivots) = self.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::with_capacity(self.ncols - pivots.len());
        for j in (0..self.ncols).filter(|&j| !is_pivot[j]) {
            let mut x = BitVector::unit(self.ncols, j);
            for (row, &p) in red.rows.iter().zip(&pivots) {
                if row.get(j) {
                    x.set(p, true);
                }
            }
            out.push(x);
        }
        BitMatrix {
            ncols: self.ncols,
            rows: out,
        }
        .rref()
        .0
    }

    /// Vectors d_j with row_i·d_j = δ_ij. Needs independent rows.
    pub fn right_inverse(&self) -> Result<Vec<BitVector>, F2Error> {
        let k = self.rows.len();
        let n = self.ncols;
        let aug: Vec<BitVector> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.concat(&BitVector::unit(k, i)))
            .collect();
        let (red, pivots) = BitMatrix { ncols: n + k, rows: aug }.rref();
        if pivots.len() < k || pivots.iter().any(|&p| p >= n) {
            return Err(F2Error::Dependent);
        }
        // red = T·[M | I] with RREF(M) = T·M; then d_j = Σ_i T_ij e_{p_i}.
        let mut d = vec![BitVector::zeros(n); k];
        for (row, &p) in red.rows.iter().zip(&pivots) {
            for j in 0..k {
                if row.get(n + j) {
                    d[j].set(p, true);
                }
            }
        }
        Ok(d)
    }

    /// Matrix-vector product M·v.
    #[must_use]
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(i, true);
            }
        }
        out
    }

    pub fn checked_mul_vec(&self, v: &BitVector) -> Result<BitVector, F2Error> {
        if v.len() != self.ncols {
            return Err(F2Error::DimensionMismatch {
                left: self.ncols,
                right: v.len(),
            });
        }
        Ok(self.mul_vec(v))
    }

    /// Row combination Σ_i c_i row_i, i.e. Mᵀ·c.
    #[must_use]
    pub fn combine(&self, coeffs: &BitVector) -> BitVector {
        assert_eq!(coeffs.len(), self.rows.len());
        let mut out = BitVector::zeros(self.ncols);
        for i in coeffs.iter_ones() {
            out.xor_assign(&self.rows[i]);
        }
        out
    }

    #[must_use]
    pub fn transpose(&self) -> BitMatrix {
        let mut rows = vec![BitVector::zeros(self.rows.len()); self.ncols];
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.iter_ones() {
                rows[j].set(i, true);
            }
        }
        BitMatrix {
            ncols: self.rows.len(),
            rows,
        }
    }

    /// Rows stacked on top of `other`'s rows.
    pub fn stack(&self, other: &BitMatrix) -> Result<BitMatrix, F2Error> {
        if self.ncols != other.ncols {
            return Err(F2Error::DimensionMismatch {
                left: self.ncols,
                right: other.ncols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(BitMatrix {
            ncols: self.ncols,
            rows,
        })
    }

    #[must_use]
    pub fn to_hex_rows(&self) -> Vec<String> {
        self.rows.iter().map(BitVector::to_hex).collect()
    }

    pub fn from_hex_rows<S: AsRef<str>>(ncols: usize, rows: &[S]) -> Result<Self, F2Error> {
        let rows = rows
            .iter()
            .map(|h| BitVector::from_hex(ncols, h.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { ncols, rows })
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows.len(), self.ncols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> BitMatrix {
        let n = rows[0].len();
        let rows = rows
            .iter()
            .map(|s| BitVector::from_bools(&s.chars().map(|c| c == '1').collect::<Vec<_>>()))
            .collect();
        BitMatrix::from_rows(n, rows).unwrap()
    }

    #[test]
    fn rref_drops_dependent_rows() {
        let a = m(&["101", "011", "110"]);
        let (r, piv) = a.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r.nrows(), 2);
        assert_eq!(format!("{}", r.row(0)), "101");
        assert_eq!(format!("{}", r.row(1)), "011");
    }

    #[test]
    fn kernel_is_orthogonal() {
        let a = m(&["1101000", "0110100", "1110010", "1010001"]);
        let k = a.kernel();
        assert_eq!(k.nrows() + a.rank(), 7);
        for x in k.rows() {
            assert!(a.mul_vec(x).is_zero());
        }
    }

    #[test]
    fn transpose_twice() {
        let a = m(&["10110", "01101"]);
        assert_eq!(a.transpose().transpose(), a);
    }
}
