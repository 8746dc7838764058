//! The two-level Construction D′ lattice defined by a nested check family.
//!
//! A point `x ∈ Zⁿ` is in the lattice iff `h_j · x ≡ 0 (mod 4)` for the
//! level-1 rows and `h_j · x ≡ 0 (mod 2)` for the level-0 rows.

use alloc::vec::Vec;

use crate::codes::{verify_nesting, NestedPair};
use crate::error::{Error, Result};

/// Number of coding levels handled here.
pub const LEVELS: usize = 2;

/// Ordered 0/1 check rows with the level boundary.
///
/// Rows `0..m1` are the rows of `H1` (modulus 4); rows `m1..` are level-0
/// rows (modulus 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckFamily {
    n: usize,
    /// Support of every row, ascending column indices.
    rows: Vec<Vec<usize>>,
    m1: usize,
}

impl CheckFamily {
    pub fn new(n: usize, rows: Vec<Vec<usize>>, m1: usize) -> Self {
        assert!(m1 <= rows.len());
        assert!(rows.iter().flatten().all(|&c| c < n));
        CheckFamily { n, rows, m1 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of congruences `M`.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Boundary `m1`: the number of level-1 rows.
    pub fn level1_len(&self) -> usize {
        self.m1
    }

    pub fn level1_rows(&self) -> &[Vec<usize>] {
        &self.rows[..self.m1]
    }

    pub fn level0_rows(&self) -> &[Vec<usize>] {
        &self.rows[self.m1..]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Modulus of row `j`.
    pub fn modulus(&self, j: usize) -> i64 {
        if j < self.m1 {
            4
        } else {
            2
        }
    }

    pub fn is_member(&self, x: &[i64]) -> bool {
        assert_eq!(x.len(), self.n);
        self.rows.iter().enumerate().all(|(j, row)| {
            let dot: i64 = row.iter().map(|&c| x[c]).sum();
            dot.rem_euclid(self.modulus(j)) == 0
        })
    }
}

/// Builds the check family: `H1` rows first, then the level-0 rows that are
/// not already in `H1` (all of `H0` for the row-sum variant).
pub fn make_family(pair: &NestedPair) -> Result<CheckFamily> {
    if !verify_nesting(pair) {
        return Err(Error::NotNested);
    }
    let mut rows = pair.h1.row_lists();
    let m1 = rows.len();
    for r in pair.level0_only_rows() {
        rows.push(pair.h0.row_ones(r).collect());
    }
    Ok(CheckFamily::new(pair.n, rows, m1))
}

/// `(k0, k1)` with `k_l = n - rank(H_l)`.
pub fn code_dimensions(pair: &NestedPair) -> (usize, usize) {
    (pair.n - pair.h0.rank(), pair.n - pair.h1.rank())
}

/// Dimension, rates, volume and coding gain of a two-level lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeProfile {
    /// Reported dimension (code length plus the dummy coordinate).
    pub dimension: usize,
    pub k: [usize; LEVELS],
    pub rates: [f64; LEVELS],
    /// Design Hamming distances per level.
    pub d: [usize; LEVELS],
    pub d2min: f64,
    /// `V(Λ)^{2/N} = 4^{L - Σ r_l}`.
    pub normalized_volume: f64,
    pub gain_db: f64,
}

impl LatticeProfile {
    /// Coding gain `d²min / V^{2/N}`, linear scale.
    pub fn gain(&self) -> f64 {
        self.d2min / self.normalized_volume
    }
}

/// Volume and coding gain from per-level dimensions.
pub fn volume_gain(k: (usize, usize), dimension: usize, d: (usize, usize), d2min: f64) -> LatticeProfile {
    assert!(dimension > 0 && d2min > 0.0);
    let r0 = k.0 as f64 / dimension as f64;
    let r1 = k.1 as f64 / dimension as f64;
    let normalized_volume = libm::pow(4.0, LEVELS as f64 - r0 - r1);
    LatticeProfile {
        dimension,
        k: [k.0, k.1],
        rates: [r0, r1],
        d: [d.0, d.1],
        d2min,
        normalized_volume,
        gain_db: 10.0 * libm::log10(d2min / normalized_volume),
    }
}

/// Bounds `min{d0, 4·d1} ≤ d²min ≤ 4^L` for the two-level construction.
pub fn dmin_bounds(d0: usize, d1: usize) -> (usize, usize) {
    let upper = 4usize.pow(LEVELS as u32);
    (d0.min(4 * d1).min(upper), upper)
}

/// True iff `4^l · d_l` is the same at every level.
pub fn balanced_check(d: &[usize]) -> bool {
    let mut scaled = d.iter().enumerate().map(|(l, &dl)| 4usize.pow(l as u32) * dl);
    match scaled.next() {
        Some(first) => scaled.all(|v| v == first),
        None => true,
    }
}
