//! Bit-packed linear algebra over GF(2).
//!
//! Rows are stored as little-endian `u64` words: bit `i` of a vector lives in
//! word `i / 64` at position `i % 64`. Elimination always picks the
//! lowest-index pivot column and, within a column, the first eligible row, so
//! echelon forms are reproducible.

use std::fmt;

use crate::error::Error;

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// Fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Builds a vector from the low `len` bits of `word`.
    pub fn from_u64(len: usize, word: u64) -> Self {
        assert!(len <= WORD, "from_u64 supports at most 64 bits");
        let mut v = BitVec::zeros(len);
        if len > 0 {
            let mask = if len == WORD { u64::MAX } else { (1u64 << len) - 1 };
            v.words[0] = word & mask;
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Parses a string of `0`/`1` characters, bit 0 first.
    pub fn from_bit_str(s: &str) -> Option<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Some(BitVec::from_bools(&bits))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let bit = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= bit;
        } else {
            self.words[i / WORD] &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    fn check_len(&self, other: &BitVec) -> Result<(), Error> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                found: other.len,
            });
        }
        Ok(())
    }

    pub fn xor_assign(&mut self, other: &BitVec) -> Result<(), Error> {
        self.check_len(other)?;
        self.xor_words(other);
        Ok(())
    }

    fn xor_words(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    /// GF(2) dot product.
    pub fn dot(&self, other: &BitVec) -> Result<bool, Error> {
        self.check_len(other)?;
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        Ok(ones % 2 == 1)
    }

    /// Concatenation `self ‖ other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec(")?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        write!(f, ")")
    }
}

/// Dense GF(2) matrix with a fixed column count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GF2Matrix {
    ncols: usize,
    rows: Vec<BitVec>,
}

impl GF2Matrix {
    pub fn new(ncols: usize) -> Self {
        GF2Matrix {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        GF2Matrix {
            ncols,
            rows: vec![BitVec::zeros(ncols); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = GF2Matrix::zeros(n, n);
        for (i, row) in m.rows.iter_mut().enumerate() {
            row.set(i, true);
        }
        m
    }

    pub fn from_rows(ncols: usize, rows: Vec<BitVec>) -> Result<Self, Error> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::LengthMismatch {
                expected: ncols,
                found: bad.len(),
            });
        }
        Ok(GF2Matrix { ncols, rows })
    }

    /// Convenience constructor from `0`/`1` strings of equal length.
    pub fn from_bit_strs(rows: &[&str]) -> Result<Self, Error> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| BitVec::from_bit_str(r).ok_or(Error::InvalidBitString(r.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        GF2Matrix::from_rows(ncols, rows)
    }

    pub fn push_row(&mut self, row: BitVec) -> Result<(), Error> {
        if row.len() != self.ncols {
            return Err(Error::LengthMismatch {
                expected: self.ncols,
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }

    /// `rows[dst] ^= rows[src]`.
    pub fn add_row(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst, "adding a row to itself zeroes it");
        let src_row = self.rows[src].clone();
        self.rows[dst].xor_words(&src_row);
    }

    /// Reduces in place to reduced row echelon form and returns the pivot
    /// columns. Zero rows end up at the bottom.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.ncols {
            if next == self.rows.len() {
                break;
            }
            let Some(p) = (next..self.rows.len()).find(|&r| self.rows[r].get(col)) else {
                continue;
            };
            self.rows.swap(next, p);
            let pivot = self.rows[next].clone();
            for (r, row) in self.rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.xor_words(&pivot);
                }
            }
            pivots.push(col);
            next += 1;
        }
        pivots
    }

    /// Reduced row echelon form without touching `self`.
    pub fn echelon(&self) -> (GF2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.row_reduce();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Whether `v` is a GF(2) combination of the rows.
    pub fn in_row_span(&self, v: &BitVec) -> Result<bool, Error> {
        if v.len() != self.ncols {
            return Err(Error::LengthMismatch {
                expected: self.ncols,
                found: v.len(),
            });
        }
        let (reduced, pivots) = self.echelon();
        Ok(reduce_against(&reduced, &pivots, v).is_zero())
    }
}

/// Reduces `v` by an echelon basis as returned by [`GF2Matrix::echelon`].
pub fn reduce_against(reduced: &GF2Matrix, pivots: &[usize], v: &BitVec) -> BitVec {
    let mut out = v.clone();
    for (row, &col) in reduced.rows.iter().zip(pivots) {
        if out.get(col) {
            out.xor_words(row);
        }
    }
    out
}

/// Symplectic form `a.x·b.z + a.z·b.x` on `(x, z)` bit pairs.
pub fn symplectic_inner(
    a_x: &BitVec,
    a_z: &BitVec,
    b_x: &BitVec,
    b_z: &BitVec,
) -> Result<bool, Error> {
    Ok(a_x.dot(b_z)? ^ a_z.dot(b_x)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force rank: size of the row span is 2^rank.
    fn span_size(m: &GF2Matrix) -> usize {
        let mut seen = std::collections::HashSet::new();
        for combo in 0u32..(1 << m.nrows()) {
            let mut acc = BitVec::zeros(m.ncols());
            for (i, row) in m.rows().iter().enumerate() {
                if combo >> i & 1 == 1 {
                    acc.xor_assign(row).unwrap();
                }
            }
            seen.insert(acc);
        }
        seen.len()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(GF2Matrix::identity(3).rank(), 3);
        assert_eq!(GF2Matrix::zeros(4, 6).rank(), 0);
        let m = GF2Matrix::from_bit_strs(&["110", "011", "101"]).unwrap();
        assert_eq!(span_size(&m), 4);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rank_does_not_mutate() {
        let m = GF2Matrix::from_bit_strs(&["110", "011", "101"]).unwrap();
        let before = m.clone();
        let _ = m.rank();
        assert_eq!(m, before);
    }

    #[test]
    fn span_examples() {
        let m = GF2Matrix::from_bit_strs(&["110", "011"]).unwrap();
        assert!(m.in_row_span(&BitVec::zeros(3)).unwrap());
        assert!(!m.in_row_span(&BitVec::from_bit_str("100").unwrap()).unwrap());
        let e = GF2Matrix::from_bit_strs(&["10", "01"]).unwrap();
        assert!(e.in_row_span(&BitVec::from_bit_str("11").unwrap()).unwrap());
        assert!(matches!(
            e.in_row_span(&BitVec::zeros(3)),
            Err(Error::LengthMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let n = 150;
        let mut m = GF2Matrix::new(n);
        for i in [0usize, 63, 64, 127, 128, 149] {
            let mut r = BitVec::zeros(n);
            r.set(i, true);
            r.set((i + 70) % n, true);
            m.push_row(r).unwrap();
        }
        let mut sum = BitVec::zeros(n);
        for r in m.rows() {
            sum.xor_assign(r).unwrap();
        }
        m.push_row(sum).unwrap();
        assert_eq!(m.rank(), 6);
    }

    #[test]
    fn symplectic_examples() {
        let x = BitVec::from_bit_str("1").unwrap();
        let o = BitVec::from_bit_str("0").unwrap();
        assert!(symplectic_inner(&x, &o, &o, &x).unwrap());
        assert!(!symplectic_inner(&x, &o, &x, &o).unwrap());
        // XZZXI vs IXZZX
        let ax = BitVec::from_bit_str("10010").unwrap();
        let az = BitVec::from_bit_str("01100").unwrap();
        let bx = BitVec::from_bit_str("01001").unwrap();
        let bz = BitVec::from_bit_str("00110").unwrap();
        assert!(!symplectic_inner(&ax, &az, &bx, &bz).unwrap());
        assert!(symplectic_inner(&ax, &az, &bx, &BitVec::zeros(4)).is_err());
    }

    #[test]
    fn first_one_and_count() {
        let mut v = BitVec::zeros(130);
        assert_eq!(v.first_one(), None);
        v.set(129, true);
        v.set(70, true);
        assert_eq!(v.first_one(), Some(70));
        assert_eq!(v.count_ones(), 2);
        v.flip(70);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![129]);
    }
}
