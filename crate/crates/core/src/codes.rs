//! Component-code parity-check matrices: SPC product codes, the staircase
//! block, and nested level-0 / level-1 pairs built from a QC prototype.
//!
//! Row order is fixed: QC rows (or CPM bands) first, staircase rows last.
//! Redundant rows are kept; dimensions always come from ranks.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, Echelon};
use crate::qc::ProtoMatrix;

/// `p × (p·q)` block whose row `j` has ones in columns `jq .. jq+q-1`.
pub fn build_staircase(p: usize, q: usize) -> BitMatrix {
    assert!(p >= 1 && q >= 1);
    let mut s = BitMatrix::zeros(p, p * q);
    for j in 0..p {
        for c in j * q..(j + 1) * q {
            s.set(j, c, true);
        }
    }
    s
}

/// `(p+q) × pq` parity-check matrix of the SPC product code: `p` side-by-side
/// `q × q` identities over the staircase.
pub fn build_spc(p: usize, q: usize) -> BitMatrix {
    assert!(p >= 2 && q >= 2);
    let mut top = BitMatrix::zeros(q, p * q);
    for j in 0..p {
        for r in 0..q {
            top.set(r, j * q + r, true);
        }
    }
    top.vstack(&build_staircase(p, q))
}

/// `H0 = [H_qc; S]` with `S` the staircase for `p = n/z`, `q = z`.
pub fn build_h0(proto: &ProtoMatrix) -> BitMatrix {
    proto
        .expand()
        .vstack(&build_staircase(proto.block_cols(), proto.z()))
}

/// Block row `i` of the expanded prototype over the staircase. Requires
/// every cell of that block row to be nonzero.
pub fn build_h1_block_row(proto: &ProtoMatrix, i: usize) -> Result<BitMatrix> {
    if i >= proto.block_rows() {
        return Err(Error::OutOfRange { row: i, col: 0 });
    }
    if proto.block_row(i).iter().any(|c| c.is_zero()) {
        return Err(Error::ZeroBlock(i));
    }
    Ok(proto
        .expand_block_row(i)
        .vstack(&build_staircase(proto.block_cols(), proto.z())))
}

/// One `z`-row band per group, each the GF(2) sum of the expanded block
/// rows in the group, over the staircase.
///
/// Every group must be nonempty and the union of the groups' nonzero cells
/// must cover every block column.
pub fn build_h1_row_sums(proto: &ProtoMatrix, groups: &[Vec<usize>]) -> Result<BitMatrix> {
    if groups.is_empty() || groups.iter().any(Vec::is_empty) {
        return Err(Error::BadGroups("every group must be nonempty"));
    }
    if groups.iter().flatten().any(|&i| i >= proto.block_rows()) {
        return Err(Error::BadGroups("block row index out of range"));
    }
    let mut bands: Option<BitMatrix> = None;
    let mut covered = vec![false; proto.block_cols()];
    for group in groups {
        let mut band = proto.expand_block_row(group[0]);
        for &i in &group[1..] {
            let other = proto.expand_block_row(i);
            for r in 0..band.rows() {
                band.xor_words_into_row(r, other.row_words(r));
            }
        }
        for (j, flag) in covered.iter_mut().enumerate() {
            let z = proto.z();
            if (0..z).any(|r| (j * z..(j + 1) * z).any(|c| band.get(r, c))) {
                *flag = true;
            }
        }
        bands = Some(match bands {
            None => band,
            Some(b) => b.vstack(&band),
        });
    }
    if covered.iter().any(|&c| !c) {
        return Err(Error::BadGroups("some block column is not covered"));
    }
    let bands = bands.expect("nonempty groups");
    Ok(bands.vstack(&build_staircase(proto.block_cols(), proto.z())))
}

/// How the level-1 check matrix was derived from the prototype.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Level1Kind {
    /// `H1` is block row `i` of `H_qc` plus the staircase; a submatrix of `H0`.
    BlockRow(usize),
    /// `H1` bands are sums of block-row groups; not rows of `H0`.
    RowSums(Vec<Vec<usize>>),
}

/// Nested parity-check pair `(H0, H1)` with `g0 ⊆ g1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestedPair {
    pub h0: BitMatrix,
    pub h1: BitMatrix,
    pub n: usize,
    pub z: usize,
    pub kind: Level1Kind,
    /// Block rows of the prototype (needed to locate `H0`'s QC bands).
    pub block_rows: usize,
}

impl NestedPair {
    pub fn block_row(proto: &ProtoMatrix, i: usize) -> Result<Self> {
        Ok(NestedPair {
            h0: build_h0(proto),
            h1: build_h1_block_row(proto, i)?,
            n: proto.n(),
            z: proto.z(),
            kind: Level1Kind::BlockRow(i),
            block_rows: proto.block_rows(),
        })
    }

    pub fn row_sums(proto: &ProtoMatrix, groups: &[Vec<usize>]) -> Result<Self> {
        Ok(NestedPair {
            h0: build_h0(proto),
            h1: build_h1_row_sums(proto, groups)?,
            n: proto.n(),
            z: proto.z(),
            kind: Level1Kind::RowSums(groups.to_vec()),
            block_rows: proto.block_rows(),
        })
    }

    /// `p = n/z`, the number of staircase rows.
    pub fn p(&self) -> usize {
        self.n / self.z
    }

    /// `q = z`, the staircase run length.
    pub fn q(&self) -> usize {
        self.z
    }

    /// Rows of `H0` that are not already rows of `H1`, in `H0` order.
    pub fn level0_only_rows(&self) -> Vec<usize> {
        match &self.kind {
            Level1Kind::BlockRow(i) => {
                let band = i * self.z..(i + 1) * self.z;
                (0..self.block_rows * self.z)
                    .filter(|r| !band.contains(r))
                    .collect()
            }
            Level1Kind::RowSums(_) => (0..self.h0.rows()).collect(),
        }
    }
}

/// True iff every row of `H1` lies in the row space of `H0`, i.e. the code
/// of `H0` is a subcode of the code of `H1`.
pub fn verify_nesting(pair: &NestedPair) -> bool {
    verify_rows_nested(&pair.h0, &pair.h1)
}

pub fn verify_rows_nested(h0: &BitMatrix, h1: &BitMatrix) -> bool {
    if h0.cols() != h1.cols() {
        return false;
    }
    let ech = Echelon::new(h0);
    (0..h1.rows()).all(|r| ech.contains(h1.row_words(r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qc::Cell;

    #[test]
    fn staircase_patterns() {
        let s = build_staircase(2, 3);
        assert_eq!(s, BitMatrix::from_rows(&[[1u8, 1, 1, 0, 0, 0], [0, 0, 0, 1, 1, 1]]));
        assert_eq!(build_staircase(1, 4), BitMatrix::from_rows(&[[1u8; 4]]));
        let big = build_staircase(5, 34);
        assert_eq!((big.rows(), big.cols()), (5, 170));
    }

    #[test]
    fn spc_small() {
        let h = build_spc(2, 2);
        assert_eq!(h.rank(), 3);
        assert_eq!(h.nullspace_basis(), vec![vec![1u8, 1, 1, 1]]);
        assert_eq!(build_spc(3, 3).rank(), 5);
    }

    #[test]
    fn h0_toy() {
        let p = ProtoMatrix::new(1, 1, 2, vec![Cell::Cpm(0)]).unwrap();
        let h0 = build_h0(&p);
        assert_eq!(h0, BitMatrix::from_rows(&[[1u8, 0], [0, 1], [1, 1]]));
        assert_eq!(h0.rank(), 2);
    }

    #[test]
    fn h1_zero_block_rejected() {
        let p = ProtoMatrix::from_shifts(&[[0i64, -1], [1, 0]], 3).unwrap();
        assert_eq!(build_h1_block_row(&p, 0), Err(Error::ZeroBlock(0)));
        assert!(build_h1_block_row(&p, 1).is_ok());
    }

    #[test]
    fn row_sum_single_group_matches_block_row() {
        let p = ProtoMatrix::from_shifts(&[[0i64, 2, 1], [1, -1, 0]], 3).unwrap();
        assert_eq!(
            build_h1_row_sums(&p, &[vec![0]]).unwrap(),
            build_h1_block_row(&p, 0).unwrap()
        );
        assert!(matches!(build_h1_row_sums(&p, &[vec![1]]), Err(Error::BadGroups(_))));
        assert!(matches!(build_h1_row_sums(&p, &[vec![]]), Err(Error::BadGroups(_))));
    }

    #[test]
    fn appended_random_row_breaks_nesting() {
        let p = ProtoMatrix::from_shifts(&[[0i64, 0, 0], [0, 1, 0]], 2).unwrap();
        let pair = NestedPair::block_row(&p, 0).unwrap();
        assert!(verify_nesting(&pair));
        let extra = BitMatrix::from_rows(&[[1u8, 0, 0, 0, 0, 0]]);
        let bad = NestedPair {
            h1: pair.h1.vstack(&extra),
            ..pair.clone()
        };
        assert!(!verify_nesting(&bad));
    }
}
