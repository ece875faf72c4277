//! Dense linear algebra over the two-element field.
//!
//! Vectors are packed into `u64` words. Addition is XOR and every routine
//! here is deterministic: pivots are always chosen at the lowest available
//! column so that golden outputs stay stable.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum F2Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix is not alternating: diagonal entry {index} is 1")]
    NotAlternating { index: usize },
    #[error("gram matrix is degenerate (rank {rank} < dimension {dim})")]
    Degenerate { rank: usize, dim: usize },
    #[error("alternating form on odd dimension {dim}")]
    OddDimension { dim: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// A vector over F₂ of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vector {
    words: Vec<u64>,
    len: usize,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// The `i`-th standard basis vector.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Builds a vector from 0/1 entries; any odd integer counts as 1.
    pub fn from_u8s(bits: &[u8]) -> Self {
        Self::from_bits(bits.iter().map(|b| b & 1 == 1))
    }

    /// Reads the low `len` bits of `mask` (bit `i` is coordinate `i`).
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= 64, "mask constructor limited to 64 coordinates");
        let mut v = Self::zeros(len);
        if len > 0 {
            let keep = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
            v.words[0] = mask & keep;
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let bit = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// In-place addition.
    pub fn add_assign(&mut self, other: &F2Vector) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn add(&self, other: &F2Vector) -> F2Vector {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Standard dot product mod 2.
    pub fn dot(&self, other: &F2Vector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    /// Indices of the nonzero coordinates, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn first_one(&self) -> Option<usize> {
        for (w, word) in self.words.iter().enumerate() {
            if *word != 0 {
                return Some(w * 64 + word.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Low 64 coordinates as a mask.
    pub fn to_mask(&self) -> u64 {
        assert!(self.len <= 64, "vector too long for a u64 mask");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2[")?;
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.len {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.get(i) as u8)?;
        }
        write!(f, ")")
    }
}

/// A matrix over F₂ stored as rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: Vec<F2Vector>,
    cols: usize,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![F2Vector::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n).map(|i| F2Vector::unit(n, i)).collect(),
            cols: n,
        }
    }

    /// Builds a matrix from rows; all rows must share a length.
    pub fn from_rows(rows: Vec<F2Vector>) -> Self {
        let cols = rows.first().map_or(0, F2Vector::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self { rows, cols }
    }

    /// Like [`F2Matrix::from_rows`] but with an explicit column count, so
    /// that `0 x n` matrices can be expressed.
    pub fn from_rows_with_cols(rows: Vec<F2Vector>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self { rows, cols }
    }

    pub fn from_u8_rows(rows: &[&[u8]]) -> Self {
        Self::from_rows(rows.iter().map(|r| F2Vector::from_u8s(r)).collect())
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[F2Vector]) -> Self {
        let nrows = columns.first().map_or(0, F2Vector::len);
        let mut m = Self::zeros(nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for i in col.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    pub fn row(&self, i: usize) -> &F2Vector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[F2Vector] {
        &self.rows
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &F2Vector) -> F2Vector {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        F2Vector::from_bits(self.rows.iter().map(|r| r.dot(v)))
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.nrows(), "dimension mismatch");
        let mut out = F2Matrix::zeros(self.nrows(), other.ncols());
        for (i, row) in self.rows.iter().enumerate() {
            for k in row.ones() {
                out.rows[i].add_assign(&other.rows[k]);
            }
        }
        out
    }

    /// The bilinear pairing `xᵀ·M·y`.
    pub fn bilinear(&self, x: &F2Vector, y: &F2Vector) -> bool {
        x.dot(&self.mul_vec(y))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_alternating(&self) -> bool {
        self.is_symmetric() && (0..self.nrows()).all(|i| !self.get(i, i))
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &F2Matrix) -> F2Matrix {
        let mut out = F2Matrix::zeros(self.nrows() + other.nrows(), self.cols + other.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.ones() {
                out.set(i, j, true);
            }
        }
        for (i, row) in other.rows.iter().enumerate() {
            for j in row.ones() {
                out.set(self.nrows() + i, self.cols + j, true);
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    ///
    /// Pivots are taken at the lowest column index with a nonzero entry
    /// below the current row, and the first such row supplies the pivot.
    pub fn rref(&self) -> (F2Matrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.add_assign(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (
            F2Matrix {
                rows,
                cols: self.cols,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the right kernel `{v : M·v = 0}`, one vector per free
    /// column in ascending order.
    pub fn kernel_basis(&self) -> Vec<F2Vector> {
        let (reduced, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        (0..self.cols)
            .filter(|&f| is_pivot[f].is_none())
            .map(|f| {
                let mut v = F2Vector::unit(self.cols, f);
                for (r, &c) in pivots.iter().enumerate() {
                    if reduced.get(r, f) {
                        v.set(c, true);
                    }
                }
                v
            })
            .collect()
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.rows.iter().map(|r| r.to_bits()))
            .finish()
    }
}

/// A symplectic pair `(e, f)` with `I(e, f) = 1`.
pub type SymplecticPair = (F2Vector, F2Vector);

/// Symplectic basis of a nondegenerate alternating form.
///
/// Runs the alternating Gram-Schmidt process over the standard basis: take
/// the first remaining vector `e`, pair it with the first remaining `f`
/// satisfying `I(e, f) = 1`, and project every other vector off the plane
/// they span.
pub fn symplectic_basis(gram: &F2Matrix) -> Result<Vec<SymplecticPair>, F2Error> {
    if !gram.is_square() {
        return Err(F2Error::NotSquare {
            rows: gram.nrows(),
            cols: gram.ncols(),
        });
    }
    if !gram.is_symmetric() {
        return Err(F2Error::NotSymmetric);
    }
    let dim = gram.nrows();
    if let Some(index) = (0..dim).find(|&i| gram.get(i, i)) {
        return Err(F2Error::NotAlternating { index });
    }
    if dim % 2 == 1 {
        return Err(F2Error::OddDimension { dim });
    }
    let rank = gram.rank();
    if rank < dim {
        return Err(F2Error::Degenerate { rank, dim });
    }

    let pair = |x: &F2Vector, y: &F2Vector| gram.bilinear(x, y);
    let mut remaining: Vec<F2Vector> = (0..dim).map(|i| F2Vector::unit(dim, i)).collect();
    let mut out = Vec::with_capacity(dim / 2);
    while !remaining.is_empty() {
        let e = remaining.remove(0);
        let Some(pos) = remaining.iter().position(|w| pair(&e, w)) else {
            // unreachable for a nondegenerate form
            return Err(F2Error::Degenerate { rank, dim });
        };
        let f = remaining.remove(pos);
        for w in remaining.iter_mut() {
            let we = pair(w, &e);
            let wf = pair(w, &f);
            if wf {
                w.add_assign(&e);
            }
            if we {
                w.add_assign(&f);
            }
        }
        out.push((e, f));
    }
    Ok(out)
}

/// The change-of-basis matrix whose columns are `e₁, f₁, e₂, f₂, …`.
pub fn symplectic_change_of_basis(pairs: &[SymplecticPair], dim: usize) -> F2Matrix {
    let cols: Vec<F2Vector> = pairs
        .iter()
        .flat_map(|(e, f)| [e.clone(), f.clone()])
        .collect();
    if cols.is_empty() {
        return F2Matrix::zeros(dim, 0);
    }
    F2Matrix::from_columns(&cols)
}

/// `⊕ [[0,1],[1,0]]`, the standard symplectic block form of size `2g`.
pub fn standard_symplectic(genus: usize) -> F2Matrix {
    let mut m = F2Matrix::zeros(2 * genus, 2 * genus);
    for i in 0..genus {
        m.set(2 * i, 2 * i + 1, true);
        m.set(2 * i + 1, 2 * i, true);
    }
    m
}
