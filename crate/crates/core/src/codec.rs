//! Lattice encoding and multistage decoding.
//!
//! Encoding is sequential: the level-0 codeword is drawn first, its
//! level-1 congruence residues become the syndrome that the level-1
//! codeword must satisfy, and the integer part is added last. Each level
//! carries a dummy coordinate (index 0) fixed to one; its column in the
//! extended parity-check matrix is the level syndrome, so every level is an
//! ordinary codeword `(1, c)` of `[s | H]`.
//!
//! LLR convention throughout: positive favours bit 0.

use alloc::vec;
use alloc::vec::Vec;

use crate::codes::NestedPair;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, TriangulationPlan};
use crate::lattice::{make_family, CheckFamily};

/// LLR used to pin the dummy coordinate to one.
pub const DUMMY_LLR: f64 = -64.0;
/// Message magnitude cap inside the sum-product decoder.
pub const MESSAGE_CLIP: f64 = 30.0;
/// SPA iteration cap used by the simulations.
pub const DEFAULT_MAX_ITER: usize = 100;

// ---------------------------------------------------------------------------
// Channel metrics

fn window(sigma: f64) -> i64 {
    (libm::ceil(6.0 * sigma) as i64).max(3)
}

fn log_sum_exp(terms: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = terms.clone().fold(f64::NEG_INFINITY, f64::max);
    max + libm::log(terms.map(|t| libm::exp(t - max)).sum::<f64>())
}

/// `ln Σ_k exp(-(y - offset - 2k)² / 2σ²)` over the truncation window
/// `|k - round(y/2)| ≤ max(3, ⌈6σ⌉)`.
pub fn wrapped_log_sum(y: f64, offset: f64, sigma: f64, window: i64) -> f64 {
    let center = libm::round(y / 2.0) as i64;
    let inv = 1.0 / (2.0 * sigma * sigma);
    log_sum_exp((center - window..=center + window).map(move |k| {
        let d = y - offset - 2.0 * k as f64;
        -d * d * inv
    }))
}

/// LLR of one mod-2 Gaussian observation.
pub fn wrapped_llr_scalar(y: f64, sigma: f64) -> f64 {
    wrapped_llr_scalar_window(y, sigma, window(sigma))
}

/// As [`wrapped_llr_scalar`] with an explicit window half-width.
pub fn wrapped_llr_scalar_window(y: f64, sigma: f64, window: i64) -> f64 {
    assert!(sigma > 0.0, "sigma must be positive");
    wrapped_log_sum(y, 0.0, sigma, window) - wrapped_log_sum(y, 1.0, sigma, window)
}

/// Per-coordinate LLRs for the bit `x mod 2` given `y = x + w`,
/// `w ~ N(0, σ²)`:
/// `ln Σ_k φ(y - 2k) / Σ_k φ(y - 1 - 2k)`.
pub fn wrapped_llr(y: &[f64], sigma: f64) -> Vec<f64> {
    let w = window(sigma);
    y.iter().map(|&v| wrapped_llr_scalar_window(v, sigma, w)).collect()
}

/// Density at `y` of `(bit + w) mod 2` with `w ~ N(0, σ²)`.
pub fn wrapped_density(y: f64, bit: u8, sigma: f64) -> f64 {
    let norm = 1.0 / (sigma * libm::sqrt(2.0 * core::f64::consts::PI));
    norm * libm::exp(wrapped_log_sum(y, bit as f64, sigma, window(sigma)))
}

// ---------------------------------------------------------------------------
// Sum-product decoding

/// Decoder settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpaConfig {
    pub max_iter: usize,
    /// Stop as soon as the hard decision satisfies every check.
    pub early_stop: bool,
}

impl Default for SpaConfig {
    fn default() -> Self {
        SpaConfig {
            max_iter: DEFAULT_MAX_ITER,
            early_stop: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpaOutput {
    /// Hard decision over the extended word; index 0 is the dummy (always 1).
    pub decision: Vec<u8>,
    /// Final a-posteriori LLRs over the extended word.
    pub posterior: Vec<f64>,
    pub iterations: usize,
    /// All checks satisfied and no coordinate left at exactly zero LLR.
    pub converged: bool,
}

/// Flooding-schedule tanh-rule decoder for the extended matrix `[s | H]`.
///
/// The Tanner graph of `H` is fixed at construction; the syndrome column is
/// supplied per call and attaches the dummy variable (coordinate 0) to the
/// checks with `s_j = 1`.
#[derive(Debug, Clone)]
pub struct SpaDecoder {
    rows: usize,
    cols: usize,
    check_ptr: Vec<usize>,
    /// Variable (1-based, extended indexing) of every edge, grouped by check.
    edge_var: Vec<usize>,
    var_ptr: Vec<usize>,
    /// Edges grouped by variable (extended index minus one).
    var_edges: Vec<usize>,
}

impl SpaDecoder {
    pub fn new(h: &BitMatrix) -> Self {
        let rows = h.rows();
        let cols = h.cols();
        let mut check_ptr = Vec::with_capacity(rows + 1);
        let mut edge_var = Vec::new();
        check_ptr.push(0);
        for r in 0..rows {
            edge_var.extend(h.row_ones(r).map(|c| c + 1));
            check_ptr.push(edge_var.len());
        }
        let mut counts = vec![0usize; cols];
        for &v in &edge_var {
            counts[v - 1] += 1;
        }
        let mut var_ptr = Vec::with_capacity(cols + 1);
        var_ptr.push(0);
        for c in &counts {
            var_ptr.push(var_ptr.last().unwrap() + c);
        }
        let mut fill = var_ptr.clone();
        let mut var_edges = vec![0usize; edge_var.len()];
        for (e, &v) in edge_var.iter().enumerate() {
            var_edges[fill[v - 1]] = e;
            fill[v - 1] += 1;
        }
        SpaDecoder {
            rows,
            cols,
            check_ptr,
            edge_var,
            var_ptr,
            var_edges,
        }
    }

    /// Number of checks.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Code length without the dummy coordinate.
    pub fn cols(&self) -> usize {
        self.cols
    }

    fn satisfied(&self, decision: &[u8], syndrome: &[u8]) -> bool {
        (0..self.rows).all(|j| {
            let parity = self.edge_var[self.check_ptr[j]..self.check_ptr[j + 1]]
                .iter()
                .fold(syndrome[j] & decision[0], |acc, &v| acc ^ decision[v]);
            parity == 0
        })
    }

    /// Decodes LLRs over the extended word (`llr[0]` is the dummy).
    pub fn decode(&self, llr: &[f64], syndrome: &[u8], cfg: SpaConfig) -> SpaOutput {
        assert_eq!(llr.len(), self.cols + 1, "llr length must be n + 1");
        assert_eq!(syndrome.len(), self.rows, "syndrome length must equal checks");
        let edges = self.edge_var.len();
        let mut v2c: Vec<f64> = self
            .edge_var
            .iter()
            .map(|&v| llr[v].clamp(-MESSAGE_CLIP, MESSAGE_CLIP))
            .collect();
        let mut c2v = vec![0.0f64; edges];
        // Dummy edges: one per check with s_j = 1.
        let dummy_checks: Vec<usize> = (0..self.rows).filter(|&j| syndrome[j] & 1 == 1).collect();
        let mut d2c = vec![llr[0].clamp(-MESSAGE_CLIP, MESSAGE_CLIP); dummy_checks.len()];
        let mut c2d = vec![0.0f64; dummy_checks.len()];
        let mut dummy_slot = vec![usize::MAX; self.rows];
        for (slot, &j) in dummy_checks.iter().enumerate() {
            dummy_slot[j] = slot;
        }

        let mut posterior = llr.to_vec();
        let mut decision: Vec<u8> = posterior.iter().map(|&l| u8::from(l < 0.0)).collect();
        decision[0] = 1;
        let resolved = |post: &[f64]| post[1..].iter().all(|&l| l != 0.0);
        if cfg.early_stop && resolved(&posterior) && self.satisfied(&decision, syndrome) {
            return SpaOutput {
                decision,
                posterior,
                iterations: 0,
                converged: true,
            };
        }

        let mut t = Vec::new();
        let mut prefix = Vec::new();
        let mut iterations = 0;
        let mut converged = false;
        for it in 1..=cfg.max_iter {
            iterations = it;
            // Check-node update.
            for j in 0..self.rows {
                let range = self.check_ptr[j]..self.check_ptr[j + 1];
                t.clear();
                t.extend(v2c[range.clone()].iter().map(|&m| libm::tanh(0.5 * m)));
                let slot = dummy_slot[j];
                if slot != usize::MAX {
                    t.push(libm::tanh(0.5 * d2c[slot]));
                }
                prefix.clear();
                let mut acc = 1.0;
                for &x in &t {
                    prefix.push(acc);
                    acc *= x;
                }
                let mut suffix = 1.0;
                for i in (0..t.len()).rev() {
                    let excl = (prefix[i] * suffix).clamp(-1.0 + 1e-15, 1.0 - 1e-15);
                    let msg = (2.0 * libm::atanh(excl)).clamp(-MESSAGE_CLIP, MESSAGE_CLIP);
                    if i < range.len() {
                        c2v[range.start + i] = msg;
                    } else {
                        c2d[slot] = msg;
                    }
                    suffix *= t[i];
                }
            }
            // Variable-node update.
            for c in 0..self.cols {
                let es = &self.var_edges[self.var_ptr[c]..self.var_ptr[c + 1]];
                let total = llr[c + 1] + es.iter().map(|&e| c2v[e]).sum::<f64>();
                for &e in es {
                    v2c[e] = (total - c2v[e]).clamp(-MESSAGE_CLIP, MESSAGE_CLIP);
                }
                posterior[c + 1] = total;
                decision[c + 1] = u8::from(total < 0.0);
            }
            let dummy_total = llr[0] + c2d.iter().sum::<f64>();
            for (m, &incoming) in d2c.iter_mut().zip(&c2d) {
                *m = (dummy_total - incoming).clamp(-MESSAGE_CLIP, MESSAGE_CLIP);
            }
            posterior[0] = dummy_total;

            if resolved(&posterior) && self.satisfied(&decision, syndrome) {
                converged = true;
                if cfg.early_stop {
                    break;
                }
            } else {
                converged = false;
            }
        }
        SpaOutput {
            decision,
            posterior,
            iterations,
            converged,
        }
    }
}

/// Sum-product decoding of an extended matrix whose column 0 is the syndrome
/// column and whose coordinate 0 is the dummy bit.
pub fn spa_decode(h_ext: &BitMatrix, llr: &[f64], cfg: SpaConfig) -> SpaOutput {
    let (syndrome, h) = h_ext.split_first_column();
    SpaDecoder::new(&h).decode(llr, &syndrome, cfg)
}

// ---------------------------------------------------------------------------
// Encoding

/// Encoder plan for one level: information positions are the plan's free
/// columns.
pub fn plan_level(h: &BitMatrix) -> TriangulationPlan {
    h.triangularize()
}

/// `s_j = ((h_j · c0) mod 4) / 2` for every level-1 row.
///
/// Fails with [`Error::OddDot`] if some `h_j · c0` is odd, which can only
/// happen when `c0` is not a level-0 codeword or the levels are not nested.
pub fn stage_syndrome(level1_rows: &[Vec<usize>], c0: &[u8]) -> Result<Vec<u8>> {
    level1_rows
        .iter()
        .enumerate()
        .map(|(j, row)| {
            let dot: usize = row.iter().map(|&c| c0[c] as usize).sum();
            if dot % 2 == 1 {
                Err(Error::OddDot(j))
            } else {
                Ok(((dot % 4) / 2) as u8)
            }
        })
        .collect()
}

/// Same as [`stage_syndrome`] but rounds odd dot products down; used on
/// tentative decisions where a wrong `ĉ0` already means a block error.
fn stage_syndrome_lenient(level1_rows: &[Vec<usize>], c0: &[u8]) -> Vec<u8> {
    level1_rows
        .iter()
        .map(|row| {
            let dot: usize = row.iter().map(|&c| c0[c] as usize).sum();
            ((dot % 4) / 2) as u8
        })
        .collect()
}

/// Encoded lattice point with its components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeWord {
    pub c0: Vec<u8>,
    pub c1: Vec<u8>,
    pub s1: Vec<u8>,
    pub zvec: Vec<i64>,
    /// Integer part of the dummy coordinate.
    pub z0: i64,
    /// `x = (3 + 4·z0, c0 + 2·c1 + 4·zvec)`; coordinate 0 is the dummy.
    pub x: Vec<i64>,
}

impl LatticeWord {
    pub fn assemble(c0: Vec<u8>, c1: Vec<u8>, s1: Vec<u8>, zvec: Vec<i64>, z0: i64) -> Self {
        let mut x = Vec::with_capacity(c0.len() + 1);
        x.push(3 + 4 * z0);
        x.extend(
            c0.iter()
                .zip(&c1)
                .zip(&zvec)
                .map(|((&a, &b), &z)| a as i64 + 2 * b as i64 + 4 * z),
        );
        LatticeWord {
            c0,
            c1,
            s1,
            zvec,
            z0,
            x,
        }
    }
}

/// Stage where a multistage decode first went wrong.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Level0,
    Level1,
    Integer,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StageReport {
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultistageOutput {
    pub word: LatticeWord,
    pub stages: [StageReport; 2],
}

impl MultistageOutput {
    /// First stage whose output differs from `sent`, if any.
    pub fn first_failure(&self, sent: &LatticeWord) -> Option<Stage> {
        if self.word.c0 != sent.c0 {
            Some(Stage::Level0)
        } else if self.word.c1 != sent.c1 {
            Some(Stage::Level1)
        } else if self.word.x != sent.x {
            Some(Stage::Integer)
        } else {
            None
        }
    }
}

/// Encoder and decoder state for one nested pair. Immutable once built and
/// shareable across threads.
#[derive(Debug, Clone)]
pub struct LatticeCodec {
    n: usize,
    family: CheckFamily,
    h0: BitMatrix,
    h1: BitMatrix,
    plan0: TriangulationPlan,
    plan1: TriangulationPlan,
    spa0: SpaDecoder,
    spa1: SpaDecoder,
}

impl LatticeCodec {
    pub fn new(pair: &NestedPair) -> Result<Self> {
        let family = make_family(pair)?;
        Ok(LatticeCodec {
            n: pair.n,
            family,
            plan0: plan_level(&pair.h0),
            plan1: plan_level(&pair.h1),
            spa0: SpaDecoder::new(&pair.h0),
            spa1: SpaDecoder::new(&pair.h1),
            h0: pair.h0.clone(),
            h1: pair.h1.clone(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> &CheckFamily {
        &self.family
    }

    pub fn h0(&self) -> &BitMatrix {
        &self.h0
    }

    pub fn h1(&self) -> &BitMatrix {
        &self.h1
    }

    pub fn plan0(&self) -> &TriangulationPlan {
        &self.plan0
    }

    pub fn plan1(&self) -> &TriangulationPlan {
        &self.plan1
    }

    /// Information bits per level, `(k0, k1)`.
    pub fn info_lengths(&self) -> (usize, usize) {
        (self.plan0.free_columns().len(), self.plan1.free_columns().len())
    }

    /// Sequential encoding.
    pub fn encode(&self, info0: &[u8], info1: &[u8], zvec: &[i64], z0: i64) -> Result<LatticeWord> {
        if zvec.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                got: zvec.len(),
            });
        }
        let c0 = self.plan0.solve_coset(&vec![0u8; self.h0.rows()], info0)?;
        let s1 = stage_syndrome(self.family.level1_rows(), &c0)?;
        let c1 = self.plan1.solve_coset(&s1, info1)?;
        Ok(LatticeWord::assemble(c0, c1, s1, zvec.to_vec(), z0))
    }

    /// Multistage decoding of `y` (length `n + 1`, dummy first) at noise
    /// standard deviation `sigma`.
    pub fn decode(&self, y: &[f64], sigma: f64, cfg: SpaConfig) -> MultistageOutput {
        assert_eq!(y.len(), self.n + 1);
        assert!(sigma > 0.0);
        let n = self.n;

        // Level 0: bits x mod 2 under the wrapped channel.
        let mut llr = wrapped_llr(y, sigma);
        llr[0] = DUMMY_LLR;
        let zero = vec![0u8; self.h0.rows()];
        let out0 = self.spa0.decode(&llr, &zero, cfg);
        let c0: Vec<u8> = out0.decision[1..].to_vec();

        // Level 1: strip c0, halve, decode with the recomputed syndrome.
        let s1 = stage_syndrome_lenient(self.family.level1_rows(), &c0);
        let mut y1 = Vec::with_capacity(n + 1);
        y1.push((y[0] - 1.0) / 2.0);
        y1.extend(y[1..].iter().zip(&c0).map(|(&v, &b)| (v - b as f64) / 2.0));
        let mut llr1 = wrapped_llr(&y1, sigma / 2.0);
        llr1[0] = DUMMY_LLR;
        let out1 = self.spa1.decode(&llr1, &s1, cfg);
        let c1: Vec<u8> = out1.decision[1..].to_vec();

        // Integer part.
        let z0 = libm::round((y[0] - 3.0) / 4.0) as i64;
        let zvec: Vec<i64> = (0..n)
            .map(|i| libm::round((y[i + 1] - c0[i] as f64 - 2.0 * c1[i] as f64) / 4.0) as i64)
            .collect();
        let word = LatticeWord::assemble(c0, c1, s1, zvec, z0);
        MultistageOutput {
            word,
            stages: [
                StageReport {
                    iterations: out0.iterations,
                    converged: out0.converged,
                },
                StageReport {
                    iterations: out1.iterations,
                    converged: out1.converged,
                },
            ],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn llr_symmetry_and_reference_values() {
        assert!(wrapped_llr_scalar(0.5, 0.3).abs() < 1e-12);
        assert!(wrapped_llr_scalar(0.5, 1.7).abs() < 1e-12);
        let a = wrapped_llr_scalar(0.0, 0.5);
        let b = wrapped_llr_scalar(1.0, 0.5);
        assert!((a - 1.3069).abs() < 1e-3, "{a}");
        assert!((a + b).abs() < 1e-12);
    }

    #[test]
    fn stage_syndrome_cases() {
        assert_eq!(stage_syndrome(&[vec![0, 1]], &[0, 0, 0]).unwrap(), vec![0]);
        assert_eq!(stage_syndrome(&[vec![0, 1]], &[1, 1, 0]).unwrap(), vec![1]);
        assert_eq!(stage_syndrome(&[vec![0, 1]], &[1, 0, 0]), Err(Error::OddDot(0)));
    }

    #[test]
    fn zero_llrs_never_converge() {
        let h = BitMatrix::from_rows(&[[1u8, 1, 0], [0, 1, 1]]);
        let out = SpaDecoder::new(&h).decode(&[DUMMY_LLR, 0.0, 0.0, 0.0], &[0, 0], SpaConfig::default());
        assert!(!out.converged);
        assert_eq!(out.iterations, DEFAULT_MAX_ITER);
    }

    #[test]
    fn noiseless_codeword_converges_immediately() {
        let h = BitMatrix::from_rows(&[[1u8, 1, 0], [0, 1, 1]]);
        let out = SpaDecoder::new(&h).decode(&[DUMMY_LLR, -5.0, -5.0, -5.0], &[0, 0], SpaConfig::default());
        assert!(out.converged);
        assert!(out.iterations <= 1);
        assert_eq!(out.decision, vec![1, 1, 1, 1]);
    }

    #[test]
    fn syndrome_column_is_respected() {
        // c = (1, 0, 0) satisfies H·c = (1, 0).
        let h = BitMatrix::from_rows(&[[1u8, 1, 0], [0, 1, 1]]);
        let out = SpaDecoder::new(&h).decode(&[DUMMY_LLR, -0.2, 0.1, 3.0], &[1, 0], SpaConfig::default());
        assert!(out.converged);
        assert_eq!(&out.decision[1..], &[1, 0, 0]);
        let ext = h.prepend_column(&[1, 0]);
        assert_eq!(spa_decode(&ext, &[DUMMY_LLR, -0.2, 0.1, 3.0], SpaConfig::default()), out);
    }
}
