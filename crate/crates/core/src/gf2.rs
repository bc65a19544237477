//! Dense bit-packed linear algebra over GF(2).
//!
//! Rows are stored as contiguous runs of `u64` words. Padding bits past the
//! last column are kept at zero by every mutating operation, so word-level
//! comparisons and popcounts are exact.
//!
//! Elimination is deterministic: pivots are taken leftmost-column first and,
//! within a column, from the topmost eligible row.

use std::fmt;
use std::ops::{BitXor, BitXorAssign};

use thiserror::Error;

const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

#[inline]
fn tail_mask(bits: usize) -> u64 {
    match bits % WORD_BITS {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("dimension mismatch in {op}: left is {}x{}, right is {}x{}", .left.0, .left.1, .right.0, .right.1)]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
}

fn mismatch(op: &'static str, left: (usize, usize), right: (usize, usize)) -> Gf2Error {
    Gf2Error::DimensionMismatch { op, left, right }
}

/// A bit-packed vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        v.clear_padding();
        v
    }

    /// Builds a vector with ones exactly at `support`.
    ///
    /// Panics if an index is out of range.
    pub fn from_support<I: IntoIterator<Item = usize>>(len: usize, support: I) -> Self {
        let mut v = Self::zeros(len);
        for i in support {
            assert!(i < len, "support index {i} out of range for length {len}");
            v.set(i, true);
        }
        v
    }

    /// Builds a vector from a slice of 0/1 values (any nonzero counts as 1).
    pub fn from_bits(bits: &[u8]) -> Self {
        Self::from_support(
            bits.len(),
            bits.iter().enumerate().filter(|(_, &b)| b != 0).map(|(i, _)| i),
        )
    }

    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        let mut v = Self { len, words };
        v.clear_padding();
        v
    }

    fn clear_padding(&mut self) {
        if let Some(last) = self.words.last_mut() {
            *last &= tail_mask(self.len);
        }
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

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Inner product mod 2. Panics on length mismatch.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Indices of the set bits, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let bit = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(wi * WORD_BITS + bit)
                }
            })
        })
    }

    /// Concatenation `[self | other]`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// The sub-vector `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        assert!(start + len <= self.len);
        BitVec::from_support(
            len,
            self.iter_ones()
                .filter(|&i| i >= start && i < start + len)
                .map(|i| i - start),
        )
    }
}

impl BitXorAssign<&BitVec> for BitVec {
    fn bitxor_assign(&mut self, rhs: &BitVec) {
        assert_eq!(self.len, rhs.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitXor<&BitVec> for &BitVec {
    type Output = BitVec;

    fn bitxor(self, rhs: &BitVec) -> BitVec {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

/// A dense, row-major, bit-packed matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

/// Reduced row-echelon form of a matrix together with its pivot structure.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    pub rref: BitMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl RowEchelon {
    /// Reduces `v` against the pivot rows. The residual is zero iff `v` lies in
    /// the row space.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.rref.cols);
        let mut words = v.words.clone();
        for (r, &p) in self.pivot_cols.iter().enumerate() {
            if (words[p / WORD_BITS] >> (p % WORD_BITS)) & 1 == 1 {
                for (a, b) in words.iter_mut().zip(self.rref.row_words(r)) {
                    *a ^= b;
                }
            }
        }
        BitVec::from_words(v.len(), words)
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from fixed-width rows of 0/1 entries.
    pub fn from_dense<const C: usize>(rows: &[[u8; C]]) -> Self {
        Self::from_fn(rows.len(), C, |r, c| rows[r][c] != 0)
    }

    /// Builds a matrix from per-row lists of column indices.
    ///
    /// Panics if an index is out of range.
    pub fn from_supports<S: AsRef<[usize]>>(rows: usize, cols: usize, supports: &[S]) -> Self {
        assert_eq!(supports.len(), rows);
        let mut m = Self::zeros(rows, cols);
        for (r, s) in supports.iter().enumerate() {
            for &c in s.as_ref() {
                m.set(r, c, true);
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Result<Self, Gf2Error> {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            if v.len() != cols {
                return Err(mismatch("from_rows", (rows.len(), cols), (1, v.len())));
            }
            m.row_words_mut(r).copy_from_slice(&v.words);
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "({r},{c}) out of bounds for {}x{}", self.rows, self.cols);
        (self.data[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "({r},{c}) out of bounds for {}x{}", self.rows, self.cols);
        let idx = r * self.stride + c / WORD_BITS;
        let mask = 1u64 << (c % WORD_BITS);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn row_vecs(&self) -> Vec<BitVec> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn row_support(&self, r: usize) -> Vec<usize> {
        self.row(r).support()
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_support(self.rows, (0..self.rows).filter(|&r| self.get(r, c)))
    }

    pub fn row_weights(&self) -> Vec<usize> {
        (0..self.rows)
            .map(|r| self.row_words(r).iter().map(|w| w.count_ones() as usize).sum())
            .collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut out = vec![0; self.cols];
        for r in 0..self.rows {
            for c in self.row(r).iter_ones() {
                out[c] += 1;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn xor_row_into(&mut self, src: usize, dst: usize, from_word: usize) {
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s], &mut lo[dst * s..(dst + 1) * s])
        };
        for w in from_word..s {
            b[w] ^= a[w];
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product mod 2.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.cols != other.rows {
            return Err(mismatch("mul", self.shape(), other.shape()));
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let dst = r * out.stride;
            for k in self.row(r).iter_ones() {
                for (w, &x) in other.row_words(k).iter().enumerate() {
                    out.data[dst + w] ^= x;
                }
            }
        }
        Ok(out)
    }

    /// `A·v` for a column vector `v`.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec, Gf2Error> {
        if self.cols != v.len() {
            return Err(mismatch("mul_vec", self.shape(), (v.len(), 1)));
        }
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let parity = self
                .row_words(r)
                .iter()
                .zip(v.words())
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            if parity & 1 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// `vᵀ·A` for a row vector `v`.
    pub fn vec_mul(&self, v: &BitVec) -> Result<BitVec, Gf2Error> {
        if self.rows != v.len() {
            return Err(mismatch("vec_mul", (1, v.len()), self.shape()));
        }
        let mut words = vec![0u64; self.stride];
        for r in v.iter_ones() {
            for (a, b) in words.iter_mut().zip(self.row_words(r)) {
                *a ^= b;
            }
        }
        Ok(BitVec::from_words(self.cols, words))
    }

    /// Entrywise sum mod 2.
    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.shape() != other.shape() {
            return Err(mismatch("add", self.shape(), other.shape()));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        Ok(out)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &BitMatrix) -> BitMatrix {
        let (br, bc) = other.shape();
        let mut out = BitMatrix::zeros(self.rows * br, self.cols * bc);
        let other_supports: Vec<Vec<usize>> = (0..br).map(|r| other.row_support(r)).collect();
        for r in 0..self.rows {
            for c in self.row(r).iter_ones() {
                for (i, sup) in other_supports.iter().enumerate() {
                    for &j in sup {
                        out.set(r * br + i, c * bc + j, true);
                    }
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[A | B | ...]`.
    pub fn hstack(blocks: &[&BitMatrix]) -> Result<BitMatrix, Gf2Error> {
        let Some(first) = blocks.first() else {
            return Ok(BitMatrix::zeros(0, 0));
        };
        let rows = first.rows;
        let mut cols = 0;
        for b in blocks {
            if b.rows != rows {
                return Err(mismatch("hstack", first.shape(), b.shape()));
            }
            cols += b.cols;
        }
        let mut out = BitMatrix::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for r in 0..rows {
                for c in b.row(r).iter_ones() {
                    out.set(r, offset + c, true);
                }
            }
            offset += b.cols;
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn vstack(blocks: &[&BitMatrix]) -> Result<BitMatrix, Gf2Error> {
        let Some(first) = blocks.first() else {
            return Ok(BitMatrix::zeros(0, 0));
        };
        let cols = first.cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(mismatch("vstack", first.shape(), b.shape()));
            }
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Ok(BitMatrix {
            rows,
            cols,
            stride: words_for(cols),
            data,
        })
    }

    /// The matrix whose row `i` is row `rows[i]` of `self`.
    pub fn select_rows(&self, rows: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            out.row_words_mut(i).copy_from_slice(self.row_words(r));
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> BitMatrix {
        BitMatrix::from_fn(self.rows, cols.len(), |r, c| self.get(r, cols[c]))
    }

    /// Row `r` of `self` lands at row `image[r]` of the result.
    pub fn permute_rows(&self, image: &[usize]) -> BitMatrix {
        assert_eq!(image.len(), self.rows);
        let mut out = BitMatrix::zeros(self.rows, self.cols);
        for (r, &dst) in image.iter().enumerate() {
            out.row_words_mut(dst).copy_from_slice(self.row_words(r));
        }
        out
    }

    /// Column `c` of `self` lands at column `image[c]` of the result.
    pub fn permute_cols(&self, image: &[usize]) -> BitMatrix {
        assert_eq!(image.len(), self.cols);
        let mut out = BitMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in self.row(r).iter_ones() {
                out.set(r, image[c], true);
            }
        }
        out
    }

    /// Gauss–Jordan elimination to reduced row-echelon form.
    pub fn row_reduce(&self) -> RowEchelon {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let w = c / WORD_BITS;
            let bit = 1u64 << (c % WORD_BITS);
            let Some(p) = (rank..m.rows).find(|&r| m.data[r * m.stride + w] & bit != 0) else {
                continue;
            };
            m.swap_rows(p, rank);
            for r in 0..m.rows {
                if r != rank && m.data[r * m.stride + w] & bit != 0 {
                    m.xor_row_into(rank, r, w);
                }
            }
            pivot_cols.push(c);
            rank += 1;
        }
        RowEchelon {
            rref: m,
            rank,
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().rank
    }

    /// A basis of `{x : A·x = 0}`, one vector per free column in ascending
    /// column order.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let ech = self.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivot_cols {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = BitVec::zeros(self.cols);
                x.set(f, true);
                for (r, &p) in ech.pivot_cols.iter().enumerate() {
                    if ech.rref.get(r, f) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect()
    }

    /// True iff some combination of rows equals `v`.
    pub fn in_rowspace(&self, v: &BitVec) -> Result<bool, Gf2Error> {
        if v.len() != self.cols {
            return Err(mismatch("in_rowspace", self.shape(), (1, v.len())));
        }
        Ok(self.row_reduce().contains(v))
    }

    /// Some `x` with `A·x = b`, free variables set to zero; `None` if
    /// inconsistent.
    pub fn solve(&self, b: &BitVec) -> Result<Option<BitVec>, Gf2Error> {
        if b.len() != self.rows {
            return Err(mismatch("solve", self.shape(), (b.len(), 1)));
        }
        let mut aug = BitMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in self.row(r).iter_ones() {
                aug.set(r, c, true);
            }
            if b.get(r) {
                aug.set(r, self.cols, true);
            }
        }
        let ech = aug.row_reduce();
        if ech.pivot_cols.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = BitVec::zeros(self.cols);
        for (r, &p) in ech.pivot_cols.iter().enumerate() {
            if ech.rref.get(r, self.cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }

    /// Indices of a maximal set of linearly independent rows, chosen greedily
    /// top to bottom.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut basis: Vec<(usize, BitVec)> = Vec::new();
        let mut keep = Vec::new();
        for r in 0..self.rows {
            let mut v = self.row(r);
            for (p, b) in &basis {
                if v.get(*p) {
                    v ^= b;
                }
            }
            let pivot = v.iter_ones().next();
            if let Some(p) = pivot {
                // keep the basis reduced on its pivots
                for (_, b) in basis.iter_mut() {
                    if b.get(p) {
                        *b ^= &v;
                    }
                }
                basis.push((p, v));
                keep.push(r);
            }
        }
        keep
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                writeln!(f)?;
            }
            for c in 0..self.cols {
                f.write_str(if self.get(r, c) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_rank(m: &BitMatrix) -> usize {
        // plain Vec<Vec<bool>> elimination, independent of the packed path
        let mut a: Vec<Vec<bool>> = (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect())
            .collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            if let Some(p) = (rank..a.len()).find(|&r| a[r][c]) {
                a.swap(rank, p);
                for r in 0..a.len() {
                    if r != rank && a[r][c] {
                        let pivot = a[rank].clone();
                        for (x, y) in a[r].iter_mut().zip(pivot) {
                            *x ^= y;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    fn cycle6() -> BitMatrix {
        BitMatrix::from_fn(6, 6, |r, c| c == r || c == (r + 1) % 6)
    }

    #[test]
    fn identity_product() {
        let i3 = BitMatrix::identity(3);
        assert_eq!(i3.mul(&i3).unwrap(), i3);
    }

    #[test]
    fn unipotent_squares_to_identity() {
        let a = BitMatrix::from_dense(&[[1, 1], [0, 1]]);
        assert_eq!(a.mul(&a).unwrap(), BitMatrix::identity(2));
    }

    #[test]
    fn mul_dimension_mismatch_names_shapes() {
        let a = BitMatrix::zeros(2, 3);
        let err = a.mul(&a).unwrap_err();
        assert_eq!(
            err,
            Gf2Error::DimensionMismatch { op: "mul", left: (2, 3), right: (2, 3) }
        );
        assert!(err.to_string().contains("2x3"));
    }

    #[test]
    fn row_reduce_basics() {
        let z = BitMatrix::zeros(4, 5).row_reduce();
        assert_eq!(z.rank, 0);
        assert!(z.pivot_cols.is_empty());
        let id = BitMatrix::identity(5).row_reduce();
        assert_eq!(id.rank, 5);
        assert_eq!(id.pivot_cols, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn six_cycle_rank_matches_naive_elimination() {
        let i = cycle6();
        let expected = naive_rank(&i);
        assert_eq!(expected, 5);
        assert_eq!(i.rank(), expected);
    }

    #[test]
    fn kernel_edge_cases() {
        assert!(BitMatrix::identity(4).kernel_basis().is_empty());
        let ones = BitMatrix::from_fn(1, 7, |_, _| true);
        let ker = ones.kernel_basis();
        assert_eq!(ker.len(), 6);
        for v in &ker {
            assert!(ones.mul_vec(v).unwrap().is_zero());
        }
    }

    #[test]
    fn rowspace_membership() {
        let i = cycle6();
        for r in 0..6 {
            assert!(i.in_rowspace(&i.row(r)).unwrap());
        }
        assert!(i.in_rowspace(&BitVec::zeros(6)).unwrap());
        // odd-weight vectors are outside the span of weight-2 rows
        assert!(!i.in_rowspace(&BitVec::from_support(6, [0])).unwrap());
        assert!(i.in_rowspace(&BitVec::zeros(5)).is_err());
    }

    #[test]
    fn solve_cases() {
        let b = BitVec::from_bits(&[1, 0, 1, 1]);
        assert_eq!(BitMatrix::identity(4).solve(&b).unwrap(), Some(b.clone()));
        let zero = BitVec::zeros(3);
        let a = cycle6().select_rows(&[0, 1, 2]);
        assert_eq!(a.solve(&zero).unwrap(), Some(BitVec::zeros(6)));
        assert_eq!(BitMatrix::zeros(4, 4).solve(&b).unwrap(), None);
        assert!(BitMatrix::zeros(3, 4).solve(&b).is_err());
    }

    #[test]
    fn solve_sets_free_variables_to_zero() {
        let a = BitMatrix::from_dense(&[[1, 1, 0], [0, 0, 1]]);
        let x = a.solve(&BitVec::from_bits(&[1, 1])).unwrap().unwrap();
        assert_eq!(x, BitVec::from_bits(&[1, 0, 1]));
    }

    #[test]
    fn padding_stays_clear() {
        let v = BitVec::ones(70);
        assert_eq!(v.weight(), 70);
        let m = BitMatrix::from_fn(3, 70, |_, _| true);
        let t = m.transpose().transpose();
        assert_eq!(t, m);
        assert_eq!(m.row(1).weight(), 70);
        let mut x = BitVec::zeros(70);
        x ^= &v;
        assert_eq!(x.words()[1] >> 6, 0);
    }

    #[test]
    fn kron_shapes_and_entries() {
        let a = BitMatrix::from_dense(&[[1, 1]]);
        let i2 = BitMatrix::identity(2);
        let k = a.kron(&i2);
        assert_eq!(k, BitMatrix::from_dense(&[[1, 0, 1, 0], [0, 1, 0, 1]]));
        let k = i2.kron(&a);
        assert_eq!(k, BitMatrix::from_dense(&[[1, 1, 0, 0], [0, 0, 1, 1]]));
    }

    #[test]
    fn independent_rows_greedy() {
        let m = BitMatrix::from_dense(&[[1, 1, 0], [0, 1, 1], [1, 0, 1], [0, 0, 1]]);
        assert_eq!(m.independent_rows(), vec![0, 1, 3]);
    }

    fn arb_matrix(max_r: usize, max_c: usize) -> impl Strategy<Value = BitMatrix> {
        (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| {
            proptest::collection::vec(any::<bool>(), r * c)
                .prop_map(move |bits| BitMatrix::from_fn(r, c, |i, j| bits[i * c + j]))
        })
    }

    proptest! {
        #[test]
        fn transpose_is_involution(m in arb_matrix(20, 90)) {
            prop_assert_eq!(m.transpose().transpose(), m);
        }

        #[test]
        fn rank_is_transpose_invariant(m in arb_matrix(16, 80)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert_eq!(m.rank(), naive_rank(&m));
        }

        #[test]
        fn rank_nullity(m in arb_matrix(16, 80)) {
            let ker = m.kernel_basis();
            prop_assert_eq!(ker.len() + m.rank(), m.cols());
            for v in &ker {
                prop_assert!(m.mul_vec(v).unwrap().is_zero());
            }
            if !ker.is_empty() {
                let stacked = BitMatrix::from_rows(m.cols(), &ker).unwrap();
                prop_assert_eq!(stacked.rank(), ker.len());
            }
        }

        #[test]
        fn kernel_span_is_annihilated(m in arb_matrix(10, 14), mask in any::<u32>()) {
            let ker = m.kernel_basis();
            let mut x = BitVec::zeros(m.cols());
            for (i, v) in ker.iter().enumerate() {
                if (mask >> (i % 32)) & 1 == 1 {
                    x ^= v;
                }
            }
            prop_assert!(m.mul_vec(&x).unwrap().is_zero());
        }

        #[test]
        fn rowspace_matches_enumeration(m in arb_matrix(8, 10), bits in proptest::collection::vec(any::<bool>(), 10)) {
            let v = BitVec::from_support(m.cols(), (0..m.cols()).filter(|&i| bits[i]));
            let mut found = false;
            for mask in 0u32..(1 << m.rows()) {
                let mut acc = BitVec::zeros(m.cols());
                for r in 0..m.rows() {
                    if (mask >> r) & 1 == 1 {
                        acc ^= &m.row(r);
                    }
                }
                if acc == v {
                    found = true;
                    break;
                }
            }
            prop_assert_eq!(m.in_rowspace(&v).unwrap(), found);
        }

        #[test]
        fn solve_produces_solutions(m in arb_matrix(12, 12), bits in proptest::collection::vec(any::<bool>(), 12)) {
            let x0 = BitVec::from_support(m.cols(), (0..m.cols()).filter(|&i| bits[i]));
            let b = m.mul_vec(&x0).unwrap();
            let x = m.solve(&b).unwrap().expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
        }

        #[test]
        fn product_matches_definition(a in arb_matrix(6, 70), seed in any::<u64>()) {
            let b = BitMatrix::from_fn(a.cols(), 5, |r, c| (seed.rotate_left((r * 5 + c) as u32 % 64) ^ (r as u64 * 31 + c as u64)) & 1 == 1);
            let p = a.mul(&b).unwrap();
            for i in 0..a.rows() {
                for j in 0..b.cols() {
                    let s = (0..a.cols()).filter(|&k| a.get(i, k) && b.get(k, j)).count();
                    prop_assert_eq!(p.get(i, j), s % 2 == 1);
                }
            }
        }
    }
}
