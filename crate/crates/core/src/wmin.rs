//! Minimum Hamming distance tools.
//!
//! [`exact_dmin`] enumerates the whole code and is only usable for small
//! dimensions. [`low_weight_search`] is a randomized information-set search
//! (Lee–Brickell style, at most two information columns per candidate) that
//! certifies upper bounds on larger codes.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix};

/// Largest dimension accepted by [`exact_dmin`].
pub const MAX_EXACT_DIMENSION: usize = 28;

/// Exact minimum nonzero weight of the null space of `h`.
///
/// Returns `Ok(None)` for the zero code.
pub fn exact_dmin(h: &BitMatrix) -> Result<Option<usize>> {
    let basis = h.nullspace_basis();
    let k = basis.len();
    if k > MAX_EXACT_DIMENSION {
        return Err(Error::TooLarge(k));
    }
    if k == 0 {
        return Ok(None);
    }
    let packed: Vec<Vec<u64>> = basis.iter().map(|v| gf2::pack(v)).collect();
    let mut word = vec![0u64; packed[0].len()];
    let mut best = usize::MAX;
    // Gray-code walk: consecutive codewords differ by one basis vector.
    for i in 1u64..(1u64 << k) {
        let flip = i.trailing_zeros() as usize;
        gf2::xor_into(&mut word, &packed[flip]);
        best = best.min(gf2::popcount(&word));
    }
    Ok(Some(best))
}

/// A nonzero codeword and its weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowWeightWord {
    pub weight: usize,
    pub codeword: Vec<u8>,
    /// Iterations actually run (the search may stop early).
    pub iterations: usize,
}

/// Randomized search for a low-weight nonzero codeword of `{c : H·cᵀ = 0}`.
///
/// Each iteration permutes the columns, row-reduces `H` to systematic form on
/// the permuted order, and scans every codeword with one or two ones on the
/// information set. The lightest codeword seen is returned. The search stops
/// early once a codeword of weight `<= stop_at` has been found.
///
/// Returns `None` only for the zero code. Deterministic for a given `seed`.
pub fn low_weight_search(
    h: &BitMatrix,
    iterations: usize,
    seed: u64,
    stop_at: Option<usize>,
) -> Option<LowWeightWord> {
    let n = h.cols();
    let rank = h.rank();
    if rank == n {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    let mut best: Option<LowWeightWord> = None;
    let pivot_words = rank.div_ceil(64);

    for it in 0..iterations.max(1) {
        order.shuffle(&mut rng);
        let (pivots, reduced) = systematic(h, &order);
        debug_assert_eq!(pivots.len(), rank);
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let info: Vec<usize> = order.iter().copied().filter(|&c| !is_pivot[c]).collect();
        // Column of the systematic matrix for each information position,
        // packed over the pivot rows.
        let cols: Vec<Vec<u64>> = info
            .iter()
            .map(|&c| {
                let mut v = vec![0u64; pivot_words];
                for r in 0..pivots.len() {
                    if gf2::test_bit(reduced.row_words(r), c) {
                        v[r / 64] |= 1 << (r % 64);
                    }
                }
                v
            })
            .collect();

        let mut current = best.as_ref().map_or(usize::MAX, |b| b.weight);
        let mut pick: Option<(usize, Option<usize>)> = None;
        for (a, col_a) in cols.iter().enumerate() {
            let w = 1 + gf2::popcount(col_a);
            if w < current {
                current = w;
                pick = Some((a, None));
            }
            for (b, col_b) in cols.iter().enumerate().skip(a + 1) {
                let w = 2 + col_a
                    .iter()
                    .zip(col_b)
                    .map(|(x, y)| (x ^ y).count_ones() as usize)
                    .sum::<usize>();
                if w < current {
                    current = w;
                    pick = Some((a, Some(b)));
                }
            }
        }
        if let Some((a, b)) = pick {
            let mut word = vec![0u8; n];
            let mut acc = cols[a].clone();
            word[info[a]] = 1;
            if let Some(b) = b {
                word[info[b]] = 1;
                gf2::xor_into(&mut acc, &cols[b]);
            }
            for (r, &p) in pivots.iter().enumerate() {
                if gf2::test_bit(&acc, r) {
                    word[p] = 1;
                }
            }
            best = Some(LowWeightWord {
                weight: current,
                codeword: word,
                iterations: it + 1,
            });
        }
        if let Some(b) = best.as_mut() {
            b.iterations = it + 1;
            if stop_at.is_some_and(|s| b.weight <= s) {
                break;
            }
        }
    }
    best
}

/// Row-reduces `h` taking pivot columns in the given order. Returns the
/// pivot columns (one per independent row) and the reduced rows.
fn systematic(h: &BitMatrix, order: &[usize]) -> (Vec<usize>, BitMatrix) {
    let mut work = h.clone();
    let rows = h.rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in order {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| work.get(i, c)) else {
            continue;
        };
        if p != r {
            work.xor_row(r, p);
            work.xor_row(p, r);
            work.xor_row(r, p);
        }
        for i in 0..rows {
            if i != r && work.get(i, c) {
                work.xor_row(i, r);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (pivots, work)
}
