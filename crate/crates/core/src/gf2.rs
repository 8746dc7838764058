//! Linear algebra over GF(2).
//!
//! [`BitMatrix`] stores rows as packed `u64` words. Everything here treats
//! rank-deficient matrices as the normal case: parity-check matrices in this
//! crate routinely carry redundant rows.
//!
//! Binary vectors crossing the public API are `&[u8]` slices holding 0 or 1.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// Packs a 0/1 slice into words, bit `i` at word `i / 64`, position `i % 64`.
pub fn pack(bits: &[u8]) -> Vec<u64> {
    let mut out = vec![0u64; words_for(bits.len())];
    for (i, &b) in bits.iter().enumerate() {
        if b & 1 == 1 {
            out[i / WORD] |= 1 << (i % WORD);
        }
    }
    out
}

pub fn unpack(words: &[u64], len: usize) -> Vec<u8> {
    (0..len)
        .map(|i| ((words[i / WORD] >> (i % WORD)) & 1) as u8)
        .collect()
}

#[inline]
pub(crate) fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

#[inline]
pub(crate) fn test_bit(words: &[u64], i: usize) -> bool {
    (words[i / WORD] >> (i % WORD)) & 1 == 1
}

#[inline]
pub(crate) fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Dense binary matrix with row-major packed storage.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        if self.rows <= 64 && self.cols <= 128 {
            for r in 0..self.rows {
                for c in 0..self.cols {
                    f.write_str(if self.get(r, c) { "1" } else { "0" })?;
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl BitMatrix {
    /// All-zero matrix. Panics if either dimension is zero.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "BitMatrix dimensions must be positive");
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from 0/1 rows of equal length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, &b) in row.iter().enumerate() {
                if b & 1 == 1 {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        test_bit(self.row_words(r), c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.words[r * self.stride + c / WORD];
        let mask = 1u64 << (c % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        self.words[r * self.stride + c / WORD] ^= 1 << (c % WORD);
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.words[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.words[r * self.stride..(r + 1) * self.stride]
    }

    /// `row[dst] ^= row[src]`.
    pub fn xor_row(&mut self, dst: usize, src: usize) {
        if dst == src {
            self.row_words_mut(dst).fill(0);
            return;
        }
        let s = self.stride;
        let (a, b) = if dst < src {
            let (lo, hi) = self.words.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.words.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s])
        };
        xor_into(a, b);
    }

    /// XORs a packed vector into row `r`.
    pub fn xor_words_into_row(&mut self, r: usize, words: &[u64]) {
        xor_into(self.row_words_mut(r), words);
    }

    /// Column indices of the ones in row `r`, ascending.
    pub fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        let cols = self.cols;
        self.row_words(r)
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| BitIter(w).map(move |b| wi * WORD + b))
            .take_while(move |&c| c < cols)
    }

    pub fn row_weight(&self, r: usize) -> usize {
        popcount(self.row_words(r))
    }

    pub fn col_weight(&self, c: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, c)).count()
    }

    pub fn count_ones(&self) -> usize {
        popcount(&self.words)
    }

    pub fn row(&self, r: usize) -> Vec<u8> {
        unpack(self.row_words(r), self.cols)
    }

    /// Sparse row view: for every row, the ascending list of its columns.
    pub fn row_lists(&self) -> Vec<Vec<usize>> {
        (0..self.rows).map(|r| self.row_ones(r).collect()).collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut words = self.words.clone();
        words.extend_from_slice(&other.words);
        BitMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            stride: self.stride,
            words,
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            m.row_words_mut(i).copy_from_slice(self.row_words(r));
        }
        m
    }

    /// Prepends `col` as a new column 0 (the syndrome column of an extended
    /// parity-check matrix).
    pub fn prepend_column(&self, col: &[u8]) -> BitMatrix {
        assert_eq!(col.len(), self.rows);
        let mut m = BitMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            if col[r] & 1 == 1 {
                m.set(r, 0, true);
            }
            for c in self.row_ones(r) {
                m.set(r, c + 1, true);
            }
        }
        m
    }

    /// Drops column 0, returning it alongside the remaining matrix.
    pub fn split_first_column(&self) -> (Vec<u8>, BitMatrix) {
        assert!(self.cols >= 2);
        let mut rest = BitMatrix::zeros(self.rows, self.cols - 1);
        let mut first = vec![0u8; self.rows];
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                if c == 0 {
                    first[r] = 1;
                } else {
                    rest.set(r, c - 1, true);
                }
            }
        }
        (first, rest)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                t.set(c, r, true);
            }
        }
        t
    }

    /// `M · vᵀ` over GF(2).
    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols, "mul_vec length mismatch");
        let packed = pack(v);
        self.mul_packed(&packed)
    }

    pub fn mul_packed(&self, v: &[u64]) -> Vec<u8> {
        (0..self.rows)
            .map(|r| {
                let acc = self
                    .row_words(r)
                    .iter()
                    .zip(v)
                    .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
                (acc & 1) as u8
            })
            .collect()
    }

    /// GF(2) product `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in self.row_ones(r).collect::<Vec<_>>() {
                xor_into(out.row_words_mut(r), other.row_words(k));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn rank(&self) -> usize {
        Echelon::new(self).pivots.len()
    }

    /// A basis of `{v : M·vᵀ = 0}`; `cols - rank` vectors.
    pub fn nullspace_basis(&self) -> Vec<Vec<u8>> {
        let ech = Echelon::new(self);
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u8; self.cols];
                v[free] = 1;
                for (i, &p) in ech.pivots.iter().enumerate() {
                    if ech.reduced.get(i, free) {
                        v[p] = 1;
                    }
                }
                v
            })
            .collect()
    }

    /// True iff `v` is a GF(2) combination of the rows of `self`.
    pub fn row_space_contains(&self, v: &[u8]) -> bool {
        assert_eq!(v.len(), self.cols);
        Echelon::new(self).contains(&pack(v))
    }

    /// Triangulation plan for coset encoding; see [`TriangulationPlan`].
    pub fn triangularize(&self) -> TriangulationPlan {
        TriangulationPlan::new(self)
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let b = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(b)
        }
    }
}

/// Reduced row echelon form: `reduced` holds `pivots.len()` independent rows,
/// row `i` has a leading one at column `pivots[i]` and zeros at every other
/// pivot column.
pub(crate) struct Echelon {
    pub reduced: BitMatrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(m: &BitMatrix) -> Self {
        let mut work = m.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| work.get(i, c)) else {
                continue;
            };
            if p != r {
                work.xor_row(r, p);
                work.xor_row(p, r);
                work.xor_row(r, p);
            }
            for i in 0..m.rows {
                if i != r && work.get(i, c) {
                    work.xor_row(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let keep: Vec<usize> = (0..r).collect();
        let reduced = if r == 0 {
            // Keep a placeholder row; callers only index by pivot.
            BitMatrix::zeros(1, m.cols)
        } else {
            work.select_rows(&keep)
        };
        Echelon { reduced, pivots }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut v = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if test_bit(&v, p) {
                xor_into(&mut v, self.reduced.row_words(i));
            }
        }
        v.iter().all(|&w| w == 0)
    }
}

/// Inverse of a square matrix, `None` when singular.
pub fn invert(m: &BitMatrix) -> Option<BitMatrix> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut a = m.clone();
    let mut inv = BitMatrix::identity(n);
    for c in 0..n {
        let p = (c..n).find(|&i| a.get(i, c))?;
        if p != c {
            for mat in [&mut a, &mut inv] {
                mat.xor_row(c, p);
                mat.xor_row(p, c);
                mat.xor_row(c, p);
            }
        }
        for i in 0..n {
            if i != c && a.get(i, c) {
                a.xor_row(i, c);
                inv.xor_row(i, c);
            }
        }
    }
    Some(inv)
}

/// Approximate lower-triangular form of a parity-check matrix, prepared for
/// solving `M·cᵀ = sᵀ` with prescribed values on the information columns.
///
/// Rows are split into `triangular` rows, each owning one pivot column whose
/// value follows from earlier pivots, and `gap` rows that only touch
/// already-assigned columns. Columns that were deferred during the greedy
/// pass are either information (free) columns or gap pivots; gap pivots are
/// fixed through a small dense system so that the gap rows hold.
///
/// The column permutation lists free columns, then gap pivots, then the
/// triangular pivots in row order; with that ordering the triangular rows of
/// the permuted matrix are lower triangular with a unit diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangulationPlan {
    rows: usize,
    cols: usize,
    row_lists: Vec<Vec<usize>>,
    row_order: Vec<usize>,
    col_order: Vec<usize>,
    /// Pivot column of each triangular row, in `row_order` order.
    tri_pivots: Vec<usize>,
    gap_rows: Vec<usize>,
    gap_pivots: Vec<usize>,
    free: Vec<usize>,
    /// Positions (within `gap_rows`) of the independent gap rows used for
    /// the dense correction.
    correction_rows: Vec<usize>,
    correction: Option<(BitMatrix, BitMatrix)>,
}

impl TriangulationPlan {
    fn new(m: &BitMatrix) -> Self {
        let rows = m.rows;
        let cols = m.cols;
        let row_lists = m.row_lists();
        let mut col_lists = vec![Vec::new(); cols];
        for (r, list) in row_lists.iter().enumerate() {
            for &c in list {
                col_lists[c].push(r);
            }
        }

        let mut degree: Vec<usize> = row_lists.iter().map(Vec::len).collect();
        let mut done = vec![false; rows];
        let mut assigned = vec![false; cols];
        let mut row_order = Vec::with_capacity(rows);
        let mut tri_pivots = Vec::new();
        let mut gap_rows = Vec::new();
        let mut deferred = Vec::new();

        let assign = |c: usize, assigned: &mut [bool], degree: &mut [usize]| {
            assigned[c] = true;
            for &r in &col_lists[c] {
                degree[r] -= 1;
            }
        };

        // Greedy pass: always take the lowest-index row of minimum residual
        // degree. Degree-0 rows become gap rows; a row with several residual
        // columns keeps its lowest one as pivot and defers the rest.
        for _ in 0..rows {
            let r = (0..rows)
                .filter(|&r| !done[r])
                .min_by_key(|&r| (degree[r], r))
                .expect("unprocessed row");
            done[r] = true;
            if degree[r] == 0 {
                gap_rows.push(r);
                continue;
            }
            let residual: Vec<usize> = row_lists[r]
                .iter()
                .copied()
                .filter(|&c| !assigned[c])
                .collect();
            for &c in &residual[1..] {
                deferred.push(c);
                assign(c, &mut assigned, &mut degree);
            }
            assign(residual[0], &mut assigned, &mut degree);
            row_order.push(r);
            tri_pivots.push(residual[0]);
        }
        deferred.extend((0..cols).filter(|&c| !assigned[c]));
        deferred.sort_unstable();
        row_order.extend_from_slice(&gap_rows);

        let mut plan = TriangulationPlan {
            rows,
            cols,
            row_lists,
            row_order,
            col_order: Vec::new(),
            tri_pivots,
            gap_rows,
            gap_pivots: Vec::new(),
            free: Vec::new(),
            correction_rows: Vec::new(),
            correction: None,
        };

        // Response of the gap rows to each deferred column (s = 0).
        let g = plan.gap_rows.len();
        let mut phi_cols: Vec<Vec<u64>> = Vec::with_capacity(deferred.len());
        let mut c = vec![0u8; cols];
        for &d in &deferred {
            c.fill(0);
            c[d] = 1;
            plan.back_substitute(&mut c, None);
            let res: Vec<u8> = plan.gap_residual(&c, None);
            phi_cols.push(pack(&res));
        }

        // Column-wise elimination on phi: lowest deferred column first.
        let mut basis: Vec<(usize, Vec<u64>)> = Vec::new(); // (lead row, vector)
        let mut gap_pivots = Vec::new();
        let mut free = Vec::new();
        for (idx, &d) in deferred.iter().enumerate() {
            let mut v = phi_cols[idx].clone();
            for (lead, b) in &basis {
                if test_bit(&v, *lead) {
                    xor_into(&mut v, b);
                }
            }
            match (0..g).find(|&r| test_bit(&v, r)) {
                Some(lead) => {
                    basis.push((lead, v));
                    gap_pivots.push(idx);
                }
                None => free.push(d),
            }
        }

        let rho = gap_pivots.len();
        if rho > 0 {
            // Pick rho independent gap rows of phi restricted to the gap
            // pivots; that square block is the dense correction.
            let mut sub = BitMatrix::zeros(g, rho);
            for (j, &idx) in gap_pivots.iter().enumerate() {
                for r in 0..g {
                    if test_bit(&phi_cols[idx], r) {
                        sub.set(r, j, true);
                    }
                }
            }
            let ech = Echelon::new(&sub.transpose());
            let rows_sel = ech.pivots.clone();
            debug_assert_eq!(rows_sel.len(), rho);
            let square = sub.select_rows(&rows_sel);
            let inverse = invert(&square).expect("selected correction block is invertible");
            plan.correction_rows = rows_sel;
            plan.correction = Some((square, inverse));
        }
        plan.gap_pivots = gap_pivots.iter().map(|&i| deferred[i]).collect();
        plan.free = free;

        let mut col_order = plan.free.clone();
        col_order.extend_from_slice(&plan.gap_pivots);
        col_order.extend_from_slice(&plan.tri_pivots);
        plan.col_order = col_order;
        plan
    }

    /// Fills triangular pivots of `c` from the current values of all other
    /// columns and the syndrome.
    fn back_substitute(&self, c: &mut [u8], s: Option<&[u8]>) {
        for (t, &pivot) in self.tri_pivots.iter().enumerate() {
            let r = self.row_order[t];
            let mut v = s.map_or(0, |s| s[r] & 1);
            for &col in &self.row_lists[r] {
                if col != pivot {
                    v ^= c[col];
                }
            }
            c[pivot] = v;
        }
    }

    fn gap_residual(&self, c: &[u8], s: Option<&[u8]>) -> Vec<u8> {
        self.gap_rows
            .iter()
            .map(|&r| {
                let mut v = s.map_or(0, |s| s[r] & 1);
                for &col in &self.row_lists[r] {
                    v ^= c[col];
                }
                v
            })
            .collect()
    }

    /// Solves `M·cᵀ = sᵀ` with `c` equal to `info` on the free columns.
    ///
    /// Runs in time linear in the number of nonzeros plus the square of the
    /// correction size. Returns [`Error::Inconsistent`] if `s` is not in the
    /// column space of `M`.
    pub fn solve_coset(&self, s: &[u8], info: &[u8]) -> Result<Vec<u8>> {
        if s.len() != self.rows {
            return Err(Error::Dimension {
                expected: self.rows,
                got: s.len(),
            });
        }
        if info.len() != self.free.len() {
            return Err(Error::Dimension {
                expected: self.free.len(),
                got: info.len(),
            });
        }
        let mut c = vec![0u8; self.cols];
        for (&col, &b) in self.free.iter().zip(info) {
            c[col] = b & 1;
        }
        self.back_substitute(&mut c, Some(s));
        if let Some((_, inverse)) = &self.correction {
            let res = self.gap_residual(&c, Some(s));
            let rhs: Vec<u8> = self.correction_rows.iter().map(|&i| res[i]).collect();
            let x = inverse.mul_vec(&rhs);
            for (&col, &b) in self.gap_pivots.iter().zip(&x) {
                c[col] = b;
            }
            self.back_substitute(&mut c, Some(s));
        }
        if self.gap_residual(&c, Some(s)).iter().any(|&b| b != 0) {
            return Err(Error::Inconsistent);
        }
        Ok(c)
    }

    /// Rows in processing order: triangular rows first, then gap rows.
    pub fn row_permutation(&self) -> &[usize] {
        &self.row_order
    }

    /// Free columns, then gap pivots, then triangular pivots.
    pub fn column_permutation(&self) -> &[usize] {
        &self.col_order
    }

    /// Number of rows left outside the triangular part.
    pub fn gap(&self) -> usize {
        self.gap_rows.len()
    }

    pub fn triangular_rows(&self) -> usize {
        self.tri_pivots.len()
    }

    /// The dense correction block and its inverse, if any gap pivots exist.
    pub fn dense_correction(&self) -> Option<(&BitMatrix, &BitMatrix)> {
        self.correction.as_ref().map(|(a, b)| (a, b))
    }

    /// Information positions, ascending.
    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    /// Triangular pivots followed by gap pivots.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut p = self.tri_pivots.clone();
        p.extend_from_slice(&self.gap_pivots);
        p
    }

    pub fn rank(&self) -> usize {
        self.tri_pivots.len() + self.gap_pivots.len()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(BitMatrix::zeros(2, 4).rank(), 0);
    }

    #[test]
    fn nullspace_small_cases() {
        assert!(BitMatrix::identity(4).nullspace_basis().is_empty());
        let m = BitMatrix::from_rows(&[[1u8, 1]]);
        assert_eq!(m.nullspace_basis(), vec![vec![1u8, 1]]);
    }

    #[test]
    fn row_space_membership() {
        let m = BitMatrix::from_rows(&[[1u8, 0, 1, 1], [0, 1, 1, 0]]);
        assert!(m.row_space_contains(&[1, 0, 1, 1]));
        assert!(m.row_space_contains(&[1, 1, 0, 1]));
        assert!(!m.row_space_contains(&[1, 1, 1, 1]));
        let single = BitMatrix::from_rows(&[[1u8, 1, 0, 1]]);
        assert!(!single.row_space_contains(&[1, 1, 1, 1]));
    }

    #[test]
    fn lower_triangular_gives_identity_plan() {
        let m = BitMatrix::from_rows(&[[1u8, 0, 0, 0], [1, 1, 0, 0], [0, 1, 1, 0], [1, 0, 1, 1]]);
        let plan = m.triangularize();
        assert_eq!(plan.gap(), 0);
        assert_eq!(plan.row_permutation(), &[0, 1, 2, 3]);
        assert_eq!(plan.column_permutation(), &[0, 1, 2, 3]);
        assert!(plan.free_columns().is_empty());
    }

    #[test]
    fn single_row_pivot_choice() {
        let m = BitMatrix::from_rows(&[[1u8, 1]]);
        let plan = m.triangularize();
        assert_eq!(plan.free_columns(), &[1]);
        let c = plan.solve_coset(&[1], &[1]).unwrap();
        assert_eq!(c, vec![0, 1]);
        assert_eq!(m.mul_vec(&c), vec![1]);
        assert_eq!(plan.solve_coset(&[0], &[0]).unwrap(), vec![0, 0]);
    }

    #[test]
    fn inconsistent_syndrome_detected() {
        // Two identical rows: syndromes must agree.
        let m = BitMatrix::from_rows(&[[1u8, 1, 0], [1, 1, 0]]);
        let plan = m.triangularize();
        assert_eq!(plan.rank(), 1);
        assert_eq!(plan.solve_coset(&[1, 0], &[0, 0]), Err(Error::Inconsistent));
        assert!(plan.solve_coset(&[1, 1], &[0, 0]).is_ok());
    }

    #[test]
    fn permuted_rows_are_lower_triangular() {
        let m = BitMatrix::from_rows(&[
            [1u8, 1, 0, 1, 0, 0, 1],
            [0, 1, 1, 0, 1, 0, 1],
            [1, 0, 1, 0, 0, 1, 1],
            [1, 1, 1, 1, 1, 1, 1],
        ]);
        let plan = m.triangularize();
        let cols = plan.column_permutation();
        let offset = cols.len() - plan.triangular_rows();
        for (t, &r) in plan.row_permutation()[..plan.triangular_rows()].iter().enumerate() {
            let pos = offset + t;
            assert!(m.get(r, cols[pos]));
            for &c in &cols[pos + 1..] {
                assert!(!m.get(r, c), "row {r} has a one right of its pivot");
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let m = BitMatrix::from_rows(&[[1u8, 1, 0], [0, 1, 1], [0, 0, 1]]);
        let inv = invert(&m).unwrap();
        assert_eq!(m.mul(&inv), BitMatrix::identity(3));
        assert!(invert(&BitMatrix::from_rows(&[[1u8, 1], [1, 1]])).is_none());
    }
}
