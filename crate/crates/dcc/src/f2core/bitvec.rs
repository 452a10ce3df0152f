use std::fmt;

use smallvec::SmallVec;

use super::F2Error;

pub(crate) type Words = SmallVec<[u64; 2]>;

#[inline]
pub(crate) fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

/// A vector over GF(2) packed into 64-bit words.
///
/// Bit `i` lives in word `i / 64` at position `i % 64`. Bits beyond `len`
/// are always zero, so equality and hashing can compare words directly.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Words,
}

impl BitVector {
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: SmallVec::from_elem(0, word_count(len)),
        }
    }

    /// The all-ones vector, written 1̄ in the literature.
    #[must_use]
    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = u64::MAX;
        }
        v.mask_tail();
        v
    }

    /// Unit vector with a single set bit.
    #[must_use]
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// Vector with ones exactly at `indices` (duplicates cancel).
    pub fn from_indices(len: usize, indices: &[usize]) -> Result<Self, F2Error> {
        let mut v = Self::zeros(len);
        for &i in indices {
            if i >= len {
                return Err(F2Error::IndexOutOfRange { index: i, len });
            }
            v.flip(i);
        }
        Ok(v)
    }

    /// Low `len` bits of `bits`; `len` must be at most 64.
    #[must_use]
    pub fn from_u64(len: usize, bits: u64) -> Self {
        assert!(len <= 64, "from_u64 needs len <= 64");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = bits;
            v.mask_tail();
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    fn mask_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    #[inline]
    #[must_use]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    #[must_use]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    #[must_use]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let m = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    /// Hamming weight |x|.
    #[inline]
    #[must_use]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    #[must_use]
    pub fn is_odd(&self) -> bool {
        self.weight() % 2 == 1
    }

    /// Inner product over GF(2). Panics on a length mismatch.
    #[inline]
    #[must_use]
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones();
        }
        acc & 1 == 1
    }

    pub fn checked_dot(&self, other: &Self) -> Result<bool, F2Error> {
        self.check_len(other)?;
        Ok(self.dot(other))
    }

    /// Size of the overlap |x ∩ y|.
    #[must_use]
    pub fn overlap(&self, other: &Self) -> usize {
        assert_eq!(self.len, other.len, "overlap of vectors with different lengths");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    #[must_use]
    pub fn xor(&self, other: &Self) -> Self {
        let mut v = self.clone();
        v.xor_assign(other);
        v
    }

    pub fn checked_xor(&self, other: &Self) -> Result<Self, F2Error> {
        self.check_len(other)?;
        Ok(self.xor(other))
    }

    #[must_use]
    pub fn and(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "and of vectors with different lengths");
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        Self { len: self.len, words }
    }

    #[must_use]
    pub fn or(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "or of vectors with different lengths");
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        Self { len: self.len, words }
    }

    /// Complement within the ambient length.
    #[must_use]
    pub fn not(&self) -> Self {
        let mut v = Self {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        v.mask_tail();
        v
    }

    /// True iff supp(self) ⊆ supp(other).
    #[must_use]
    pub fn is_subset_of(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Sorted list of set positions.
    #[must_use]
    pub fn support(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }

    /// Lowest set position, if any.
    #[must_use]
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    /// The vector as an integer; only valid when `len <= 64`.
    #[must_use]
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= 64, "to_u64 needs len <= 64");
        self.words.first().copied().unwrap_or(0)
    }

    /// Restriction x_A onto the listed coordinates, in the listed order.
    #[must_use]
    pub fn restrict(&self, coords: &[usize]) -> Self {
        let mut v = Self::zeros(coords.len());
        for (k, &i) in coords.iter().enumerate() {
            if self.get(i) {
                v.set(k, true);
            }
        }
        v
    }

    /// Embedding y[A]: places `self` on coordinates `coords` of a length-`len` vector.
    #[must_use]
    pub fn embed(&self, len: usize, coords: &[usize]) -> Self {
        assert_eq!(coords.len(), self.len, "embedding needs one coordinate per bit");
        let mut v = Self::zeros(len);
        for i in self.iter_ones() {
            v.set(coords[i], true);
        }
        v
    }

    /// Embedding into a contiguous block starting at `offset`.
    #[must_use]
    pub fn embed_at(&self, len: usize, offset: usize) -> Self {
        assert!(offset + self.len <= len, "block does not fit");
        let mut v = Self::zeros(len);
        for i in self.iter_ones() {
            v.set(offset + i, true);
        }
        v
    }

    /// Concatenation self ‖ other.
    #[must_use]
    pub fn concat(&self, other: &Self) -> Self {
        let mut v = Self::zeros(self.len + other.len);
        for i in self.iter_ones() {
            v.set(i, true);
        }
        for i in other.iter_ones() {
            v.set(self.len + i, true);
        }
        v
    }

    /// Lowercase hex, most-significant nibble first, ⌈len/4⌉ digits.
    ///
    /// The vector is read as the integer Σ x_i 2^i, so qubit 0 is the
    /// least significant bit of the last digit.
    #[must_use]
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4);
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let bit = 4 * d;
            let nib = (self.words[bit / 64] >> (bit % 64)) & 0xf;
            s.push(char::from_digit(nib as u32, 16).unwrap());
        }
        s
    }

    pub fn from_hex(len: usize, hex: &str) -> Result<Self, F2Error> {
        let digits = len.div_ceil(4);
        if hex.len() != digits {
            return Err(F2Error::BadHex(format!(
                "expected {digits} hex digits for length {len}, got {}",
                hex.len()
            )));
        }
        let mut v = Self::zeros(len);
        for (k, ch) in hex.chars().enumerate() {
            let nib = ch
                .to_digit(16)
                .ok_or_else(|| F2Error::BadHex(format!("invalid digit {ch:?}")))?;
            let d = digits - 1 - k;
            for j in 0..4 {
                if nib >> j & 1 == 1 {
                    let i = 4 * d + j;
                    if i >= len {
                        return Err(F2Error::BadHex(format!("bit {i} set beyond length {len}")));
                    }
                    v.set(i, true);
                }
            }
        }
        Ok(v)
    }

    fn check_len(&self, other: &Self) -> Result<(), F2Error> {
        if self.len == other.len {
            Ok(())
        } else {
            Err(F2Error::DimensionMismatch {
                left: self.len,
                right: other.len,
            })
        }
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector[{}]{{", self.len)?;
        for (k, i) in self.iter_ones().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_round_trip_and_layout() {
        let v = BitVector::from_indices(7, &[0, 2, 4, 6]).unwrap();
        assert_eq!(v.to_hex(), "55");
        assert_eq!(BitVector::from_hex(7, "55").unwrap(), v);
        let w = BitVector::from_indices(70, &[0, 65, 69]).unwrap();
        assert_eq!(BitVector::from_hex(70, &w.to_hex()).unwrap(), w);
        assert!(BitVector::from_hex(7, "f5").is_err());
    }

    #[test]
    fn ones_masks_tail() {
        let v = BitVector::ones(67);
        assert_eq!(v.weight(), 67);
        assert_eq!(v.not().weight(), 0);
    }

    #[test]
    fn restrict_embed() {
        let v = BitVector::from_indices(10, &[1, 4, 9]).unwrap();
        let r = v.restrict(&[4, 5, 9]);
        assert_eq!(r.support(), vec![0, 2]);
        assert_eq!(r.embed(10, &[4, 5, 9]).support(), vec![4, 9]);
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = BitVector::zeros(3);
        let b = BitVector::zeros(4);
        assert!(matches!(a.checked_dot(&b), Err(F2Error::DimensionMismatch { .. })));
    }
}
