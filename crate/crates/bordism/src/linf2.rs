//! Exact linear algebra over GF(2) with 64-bit word packing.
//!
//! Everything downstream (quotient normal forms, primitive searches, kernel
//! computations) reduces to row operations on bit vectors, so this module is
//! deliberately small and fast: XOR row updates, deterministic lowest-column
//! pivoting, and incremental reduced echelon forms that support membership
//! tests, complements and solution tracking.

use std::collections::BTreeMap;

const WORD_BITS: usize = 64;

/// A fixed-width vector over GF(2), packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    /// Builds a vector with ones exactly at `indices`.
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// In-place XOR with another vector of the same width.
    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "width mismatch in xor_assign");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit, if any.
    pub fn first_set(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Raw packed words (low bit of word 0 is coordinate 0); for serialization.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Rebuilds a vector from packed words; bits beyond `len` must be clear.
    pub fn from_words(len: usize, words: Vec<u64>) -> Self {
        assert_eq!(words.len(), len.div_ceil(WORD_BITS), "word count mismatch");
        if len % WORD_BITS != 0 {
            if let Some(&last) = words.last() {
                assert_eq!(last >> (len % WORD_BITS), 0, "stray bits beyond len");
            }
        }
        BitVec { len, words }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(move |(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }
}

/// A dense matrix over GF(2), stored as packed rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    pub cols: usize,
    pub rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn new(cols: usize) -> Self {
        BitMatrix { cols, rows: Vec::new() }
    }

    pub fn push_row(&mut self, row: BitVec) {
        assert_eq!(row.len(), self.cols, "width mismatch in push_row");
        self.rows.push(row);
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::new(n);
        for i in 0..n {
            m.push_row(BitVec::from_indices(n, [i]));
        }
        m
    }

    /// Reduced row echelon form with deterministic lowest-column pivoting.
    ///
    /// Returns the reduced matrix (nonzero rows sorted by pivot column, zero
    /// rows dropped) together with the pivot column list.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut space = Subspace::new(self.cols);
        for row in &self.rows {
            space.insert(row.clone());
        }
        let pivots: Vec<usize> = space.rows.keys().copied().collect();
        let mut out = BitMatrix::new(self.cols);
        for row in space.rows.values() {
            out.push_row(row.clone());
        }
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis (in reduced echelon form over the free coordinates) of the
    /// right kernel {v : for every row r, r·v = 0}.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            // Back-substitute: the free column determines each pivot coordinate.
            let mut v = BitVec::from_indices(self.cols, [free]);
            for (row, &p) in r.rows.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// An incrementally built row space kept in fully reduced echelon form.
///
/// Rows are keyed by pivot column; every stored row has zeros in all other
/// rows' pivot columns, which makes reduction canonical and single-pass.
#[derive(Clone, Debug)]
pub struct Subspace {
    width: usize,
    rows: BTreeMap<usize, BitVec>,
}

impl Subspace {
    pub fn new(width: usize) -> Self {
        Subspace { width, rows: BTreeMap::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Fully reduces `v` against the stored rows (canonical coset representative).
    pub fn reduce(&self, mut v: BitVec) -> BitVec {
        assert_eq!(v.len(), self.width, "width mismatch in reduce");
        for (&p, row) in &self.rows {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Inserts a vector; returns true if it enlarged the space.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.first_set() else {
            return false;
        };
        for row in self.rows.values_mut() {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        self.rows.insert(p, v);
        true
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn basis(&self) -> impl Iterator<Item = &BitVec> {
        self.rows.values()
    }

    /// Indices of the non-pivot coordinates: a deterministic complement basis
    /// of this row space inside the ambient coordinate space.
    pub fn quotient_complement(&self) -> Vec<usize> {
        (0..self.width).filter(|i| !self.rows.contains_key(i)).collect()
    }
}

/// A reduced echelon form that additionally tracks, for a designated subset of
/// inserted rows, which combination of them (plus untracked rows) reproduces a
/// queried vector.
#[derive(Clone, Debug)]
pub struct TrackedSolver {
    width: usize,
    tracked: usize,
    capacity: usize,
    rows: BTreeMap<usize, (BitVec, BitVec)>,
}

impl TrackedSolver {
    /// `capacity` bounds the number of tracked rows that will ever be inserted.
    pub fn new(width: usize, capacity: usize) -> Self {
        TrackedSolver {
            width,
            tracked: 0,
            capacity,
            rows: BTreeMap::new(),
        }
    }

    fn reduce_pair(&self, mut v: BitVec, mut combo: BitVec) -> (BitVec, BitVec) {
        for (&p, (row, c)) in &self.rows {
            if v.get(p) {
                v.xor_assign(row);
                combo.xor_assign(c);
            }
        }
        (v, combo)
    }

    fn insert_pair(&mut self, v: BitVec, combo: BitVec) -> bool {
        let (v, combo) = self.reduce_pair(v, combo);
        let Some(p) = v.first_set() else {
            return false;
        };
        for (row, c) in self.rows.values_mut() {
            if row.get(p) {
                row.xor_assign(&v);
                c.xor_assign(&combo);
            }
        }
        self.rows.insert(p, (v, combo));
        true
    }

    /// Inserts a row that never appears in reported combinations.
    pub fn insert_untracked(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.width, "width mismatch");
        self.insert_pair(v, BitVec::zeros(self.capacity))
    }

    /// Inserts a tracked row and returns its combination index, or None if the
    /// row was already in the span.
    pub fn insert_tracked(&mut self, v: BitVec) -> Option<usize> {
        assert_eq!(v.len(), self.width, "width mismatch");
        let id = self.tracked;
        assert!(id < self.capacity, "tracked row capacity exceeded");
        let combo = BitVec::from_indices(self.capacity, [id]);
        if self.insert_pair(v, combo) {
            self.tracked += 1;
            Some(id)
        } else {
            None
        }
    }

    /// Expresses `target` over the inserted rows; the returned vector marks
    /// which tracked rows participate. None if the target is not in the span.
    pub fn solve(&self, target: &BitVec) -> Option<BitVec> {
        assert_eq!(target.len(), self.width, "width mismatch");
        let (v, combo) = self.reduce_pair(target.clone(), BitVec::zeros(self.capacity));
        if v.is_zero() {
            Some(combo)
        } else {
            None
        }
    }
}

/// Inverts a square matrix given as rows; panics if singular.
pub fn invert(m: &BitMatrix) -> BitMatrix {
    let n = m.rows.len();
    assert_eq!(n, m.cols, "invert requires a square matrix");
    // Gauss-Jordan on [M | I].
    let mut left: Vec<BitVec> = m.rows.clone();
    let mut right: Vec<BitVec> = (0..n).map(|i| BitVec::from_indices(n, [i])).collect();
    let mut row_of_pivot: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    for col in 0..n {
        let Some(r) = (0..n).find(|&r| !used[r] && left[r].get(col)) else {
            panic!("singular matrix in invert (column {col})");
        };
        used[r] = true;
        row_of_pivot.push(r);
        let (lv, rv) = (left[r].clone(), right[r].clone());
        for k in 0..n {
            if k != r && left[k].get(col) {
                left[k].xor_assign(&lv);
                right[k].xor_assign(&rv);
            }
        }
    }
    // Row i of the inverse answers "column i of M": reorder by pivot column.
    let mut out = BitMatrix::new(n);
    for &r in &row_of_pivot {
        out.push_row(right[r].clone());
    }
    out
}

pub fn mat_mul(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
    assert_eq!(a.cols, b.rows.len(), "dimension mismatch in mat_mul");
    let mut out = BitMatrix::new(b.cols);
    for row in &a.rows {
        let mut acc = BitVec::zeros(b.cols);
        for i in row.iter_ones() {
            acc.xor_assign(&b.rows[i]);
        }
        out.push_row(acc);
    }
    out
}
