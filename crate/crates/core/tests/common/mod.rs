#![allow(dead_code)]

use qcdp_core::codes::NestedPair;
use qcdp_core::gf2::BitMatrix;
use qcdp_core::qc::ProtoMatrix;

pub const EXAMPLE1_SHIFTS: [[i64; 5]; 3] = [[7, 13, 19, 22, 31], [1, 11, 3, 2, 19], [31, 25, 18, 3, 26]];

pub fn example1_proto() -> ProtoMatrix {
    ProtoMatrix::from_shifts(&EXAMPLE1_SHIFTS, 34).unwrap()
}

pub fn example1_pair() -> NestedPair {
    NestedPair::block_row(&example1_proto(), 0).unwrap()
}

/// n = 6 toy pair with k0 = 1, k1 = 2.
pub fn toy_pair() -> NestedPair {
    let p = ProtoMatrix::from_shifts(&[[0i64, 0, 0], [-1, 1, 0]], 2).unwrap();
    NestedPair::block_row(&p, 0).unwrap()
}

/// Every binary word of length `n` (n ≤ 20).
pub fn all_words(n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0u32..(1 << n)).map(move |m| (0..n).map(|i| ((m >> i) & 1) as u8).collect())
}

pub fn codewords(h: &BitMatrix) -> Vec<Vec<u8>> {
    all_words(h.cols())
        .filter(|c| h.mul_vec(c).iter().all(|&b| b == 0))
        .collect()
}

/// Dense Gaussian elimination on the augmented system `[M | s]`; free
/// variables set to zero. `None` if inconsistent.
pub fn dense_solve(m: &BitMatrix, s: &[u8]) -> Option<Vec<u8>> {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<u8>> = (0..rows)
        .map(|r| {
            let mut row = m.row(r);
            row.push(s[r]);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| a[i][c] == 1) else { continue };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && a[i][c] == 1 {
                let src = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(src) {
                    *x ^= y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if a[r..].iter().any(|row| row[cols] == 1) {
        return None;
    }
    let mut x = vec![0u8; cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][cols];
    }
    Some(x)
}

pub fn weight(v: &[u8]) -> usize {
    v.iter().filter(|&&b| b == 1).count()
}
