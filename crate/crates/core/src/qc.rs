//! Quasi-cyclic parity-check matrices described by prototype (base) matrices
//! of circulant shift exponents.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::wmin;

/// One `z × z` block of a prototype matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cell {
    /// The zero block (shift `-1` in the usual notation).
    Zero,
    /// A circulant permutation matrix: identity with columns shifted right.
    Cpm(u32),
    /// GF(2) sum of two distinct CPMs (weight-2 circulant). Stored with the
    /// smaller exponent first.
    Double(u32, u32),
}

impl Cell {
    /// Builds a double cell, normalising the order. Equal exponents cancel.
    pub fn double(a: u32, b: u32) -> Cell {
        match a.cmp(&b) {
            core::cmp::Ordering::Less => Cell::Double(a, b),
            core::cmp::Ordering::Greater => Cell::Double(b, a),
            core::cmp::Ordering::Equal => Cell::Zero,
        }
    }

    pub fn exponents(&self) -> impl Iterator<Item = u32> {
        let (a, b) = match *self {
            Cell::Zero => (None, None),
            Cell::Cpm(a) => (Some(a), None),
            Cell::Double(a, b) => (Some(a), Some(b)),
        };
        a.into_iter().chain(b)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Cell::Zero)
    }

    /// GF(2) sum of two cells.
    pub fn add(&self, other: &Cell) -> Result<Cell> {
        let mut exps: Vec<u32> = self.exponent_vec();
        for e in other.exponent_vec() {
            if let Some(pos) = exps.iter().position(|&x| x == e) {
                exps.remove(pos);
            } else {
                exps.push(e);
            }
        }
        Cell::from_exponents(&exps)
    }

    pub fn exponent_vec(&self) -> Vec<u32> {
        self.exponents().collect()
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Cell> {
        match *exps {
            [] => Ok(Cell::Zero),
            [a] => Ok(Cell::Cpm(a)),
            [a, b] if a != b => Ok(Cell::double(a, b)),
            [_, _] => Err(Error::BadCell("double cell needs distinct exponents")),
            _ => Err(Error::BadCell("more than two circulants in one cell")),
        }
    }
}

/// Block-level description of a QC parity-check matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProtoMatrix {
    block_rows: usize,
    block_cols: usize,
    z: usize,
    cells: Vec<Cell>,
}

impl ProtoMatrix {
    /// Checks the exponent range and shape.
    pub fn new(block_rows: usize, block_cols: usize, z: usize, cells: Vec<Cell>) -> Result<Self> {
        if block_rows == 0 || block_cols == 0 || z == 0 {
            return Err(Error::BadCell("prototype dimensions and z must be positive"));
        }
        if cells.len() != block_rows * block_cols {
            return Err(Error::Dimension {
                expected: block_rows * block_cols,
                got: cells.len(),
            });
        }
        for cell in &cells {
            if cell.exponent_vec().iter().any(|&e| e as usize >= z) {
                return Err(Error::BadCell("shift exponent must be below z"));
            }
            if let Cell::Double(a, b) = *cell {
                if a >= b {
                    return Err(Error::BadCell("double cell exponents must be distinct"));
                }
            }
        }
        Ok(ProtoMatrix {
            block_rows,
            block_cols,
            z,
            cells,
        })
    }

    /// Prototype with one CPM per cell, `shifts[i][j]`, where a negative shift
    /// denotes the zero block.
    pub fn from_shifts<R: AsRef<[i64]>>(shifts: &[R], z: usize) -> Result<Self> {
        let rows = shifts.len();
        let cols = shifts.first().map_or(0, |r| r.as_ref().len());
        let mut cells = Vec::with_capacity(rows * cols);
        for row in shifts {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::Dimension {
                    expected: cols,
                    got: row.len(),
                });
            }
            for &b in row {
                cells.push(if b < 0 { Cell::Zero } else { Cell::Cpm(b as u32) });
            }
        }
        ProtoMatrix::new(rows, cols, z, cells)
    }

    pub fn block_rows(&self) -> usize {
        self.block_rows
    }

    pub fn block_cols(&self) -> usize {
        self.block_cols
    }

    pub fn z(&self) -> usize {
        self.z
    }

    /// Code length `z · n_b`.
    pub fn n(&self) -> usize {
        self.z * self.block_cols
    }

    pub fn cell(&self, i: usize, j: usize) -> Cell {
        self.cells[i * self.block_cols + j]
    }

    pub fn block_row(&self, i: usize) -> &[Cell] {
        &self.cells[i * self.block_cols..(i + 1) * self.block_cols]
    }

    /// Expands to the `(z·m_b) × (z·n_b)` binary matrix: a cell with shift
    /// `b` puts a one at `(r, c)` of its block iff `c ≡ r + b (mod z)`.
    pub fn expand(&self) -> BitMatrix {
        let z = self.z;
        let mut m = BitMatrix::zeros(z * self.block_rows, z * self.block_cols);
        for i in 0..self.block_rows {
            for j in 0..self.block_cols {
                for b in self.cell(i, j).exponents() {
                    for r in 0..z {
                        m.flip(i * z + r, j * z + (r + b as usize) % z);
                    }
                }
            }
        }
        m
    }

    /// Expands block row `i` alone into a `z × n` band.
    pub fn expand_block_row(&self, i: usize) -> BitMatrix {
        let z = self.z;
        let mut m = BitMatrix::zeros(z, z * self.block_cols);
        for j in 0..self.block_cols {
            for b in self.cell(i, j).exponents() {
                for r in 0..z {
                    m.flip(r, j * z + (r + b as usize) % z);
                }
            }
        }
        m
    }

    /// Rescales a length-2304 (z = 96) 802.16e prototype to code length `n`
    /// by reducing every shift modulo the new circulant size `96·n/2304`.
    /// Zero blocks stay zero.
    pub fn scale_shifts(&self, n: usize) -> Result<ProtoMatrix> {
        if self.z != 96 || !(96 * n).is_multiple_of(2304) || n == 0 {
            return Err(Error::BadLength(n));
        }
        let z = 96 * n / 2304;
        let cells = self
            .cells
            .iter()
            .map(|cell| {
                let exps: Vec<u32> = cell.exponent_vec().iter().map(|&b| b % z as u32).collect();
                Cell::from_exponents(&exps)
            })
            .collect::<Result<Vec<_>>>()?;
        ProtoMatrix::new(self.block_rows, self.block_cols, z, cells)
    }

    /// Copy with the listed cells replaced.
    pub fn apply_edits(&self, edits: &[(usize, usize, Cell)]) -> Result<ProtoMatrix> {
        let mut cells = self.cells.clone();
        for &(i, j, cell) in edits {
            if i >= self.block_rows || j >= self.block_cols {
                return Err(Error::OutOfRange { row: i, col: j });
            }
            cells[i * self.block_cols + j] = cell;
        }
        ProtoMatrix::new(self.block_rows, self.block_cols, self.z, cells)
    }

    /// Whether the Tanner graph of [`expand`](Self::expand) has a 4-cycle.
    ///
    /// Works on the base multigraph: each exponent of cell `(i, j)` is an
    /// edge between block row `i` and block column `j`. A closed walk
    /// `i1 → j1 → i2 → j2 → i1` whose consecutive edges are distinct lifts to
    /// a 4-cycle iff the alternating sum of its exponents is `0 mod z`.
    pub fn has_four_cycle(&self) -> bool {
        let z = self.z as i64;
        let edges: Vec<Vec<Vec<i64>>> = (0..self.block_rows)
            .map(|i| {
                (0..self.block_cols)
                    .map(|j| self.cell(i, j).exponent_vec().iter().map(|&e| e as i64).collect())
                    .collect()
            })
            .collect();
        let rows = self.block_rows;
        let cols = self.block_cols;
        for i1 in 0..rows {
            for j1 in 0..cols {
                for (a_idx, &a) in edges[i1][j1].iter().enumerate() {
                    for i2 in 0..rows {
                        for (b_idx, &b) in edges[i2][j1].iter().enumerate() {
                            if i2 == i1 && b_idx == a_idx {
                                continue;
                            }
                            for j2 in 0..cols {
                                for (c_idx, &c) in edges[i2][j2].iter().enumerate() {
                                    if j2 == j1 && c_idx == b_idx {
                                        continue;
                                    }
                                    for (d_idx, &d) in edges[i1][j2].iter().enumerate() {
                                        if i1 == i2 && d_idx == c_idx {
                                            continue;
                                        }
                                        if j1 == j2 && d_idx == a_idx {
                                            continue;
                                        }
                                        if (a - b + c - d).rem_euclid(z) == 0 {
                                            return true;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        false
    }
}

/// Outcome of [`random_proto_search`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProtoSearchResult {
    pub proto: ProtoMatrix,
    /// Lowest codeword weight found for `proto`; an upper bound on its
    /// minimum distance.
    pub weight_bound: usize,
    /// Candidates drawn (including rejected ones).
    pub candidates: usize,
}

/// Knobs for [`random_proto_search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProtoSearchConfig {
    pub block_rows: usize,
    pub block_cols: usize,
    pub z: usize,
    /// Stop as soon as a candidate's searched weight reaches this value.
    pub target_weight: usize,
    pub reject_four_cycles: bool,
    /// Number of candidates to draw.
    pub budget: usize,
    /// Low-weight-search iterations spent per candidate.
    pub isd_iterations: usize,
    pub seed: u64,
}

/// Draws prototype matrices with uniform shifts and keeps the one whose
/// low-weight codeword search finds the largest minimum weight.
///
/// Candidate `i` uses its own sub-seed derived from `seed` and `i`, so the
/// result is reproducible. A candidate's search stops as soon as it finds a
/// codeword lighter than the best bound so far, since it can no longer win.
/// When four-cycle rejection is on, rejected draws still consume budget.
pub fn random_proto_search(cfg: &ProtoSearchConfig) -> Option<ProtoSearchResult> {
    let mut best: Option<ProtoSearchResult> = None;
    for i in 0..cfg.budget.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(i as u64);
        let cells: Vec<Cell> = (0..cfg.block_rows * cfg.block_cols)
            .map(|_| Cell::Cpm(rng.random_range(0..cfg.z as u32)))
            .collect();
        let proto = ProtoMatrix::new(cfg.block_rows, cfg.block_cols, cfg.z, cells).ok()?;
        if cfg.reject_four_cycles && proto.has_four_cycle() {
            continue;
        }
        let floor = best.as_ref().map(|b| b.weight_bound);
        let isd_seed = rng.random::<u64>();
        // Stop the candidate once it is below the current best.
        let stop_below = floor.map(|f| f.saturating_sub(1));
        let found = wmin::low_weight_search(&proto.expand(), cfg.isd_iterations, isd_seed, stop_below);
        let weight = match found {
            Some(lw) => lw.weight,
            // Trivial code: no nonzero codewords at all.
            None => usize::MAX,
        };
        if floor.is_none_or(|f| weight > f) {
            best = Some(ProtoSearchResult {
                proto,
                weight_bound: weight,
                candidates: i + 1,
            });
        }
        if let Some(b) = best.as_mut() {
            b.candidates = i + 1;
            if b.weight_bound >= cfg.target_weight {
                break;
            }
        }
    }
    best
}
