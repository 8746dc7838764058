use std::collections::BTreeSet;

use qcdp::builtins::{wimax1152, wimax1152_proto, wimax2304_proto};
use qcdp_core::codes::verify_nesting;
use qcdp_core::gf2::BitMatrix;
use qcdp_core::lattice::{code_dimensions, make_family};
use qcdp_core::qc::{Cell, ProtoMatrix};
use qcdp_core::wmin::low_weight_search;

const Z: usize = 48;

/// Block-row pairs of the expansion that share two or more columns.
fn four_cycle_block_rows(h: &BitMatrix, z: usize) -> BTreeSet<(usize, usize)> {
    let rows = h.row_lists();
    let mut out = BTreeSet::new();
    for a in 0..rows.len() {
        for b in a + 1..rows.len() {
            if rows[a].iter().filter(|c| rows[b].binary_search(c).is_ok()).count() >= 2 {
                out.insert((a / z, b / z));
            }
        }
    }
    out
}

#[test]
fn full_length_prototype_has_no_four_cycles() {
    let p = wimax2304_proto();
    assert!(!p.has_four_cycle());
}

#[test]
fn four_cycles_at_z48_come_from_unmodified_rows() {
    let modified = wimax1152_proto();
    let brute = four_cycle_block_rows(&modified.expand(), Z);
    assert_eq!(modified.has_four_cycle(), !brute.is_empty());
    // Modulo scaling maps b(5,7) = 82 to 34; with b(5,12) = 0, b(11,7) = 41
    // and b(11,12) = 7 the closed-walk sum vanishes mod 48.
    assert_eq!(brute, BTreeSet::from([(5, 11)]));
    let unmodified = wimax2304_proto().scale_shifts(1152).unwrap();
    assert_eq!(four_cycle_block_rows(&unmodified.expand(), Z), brute);
}

#[test]
fn modified_block_row_one() {
    let p = wimax1152_proto();
    let cols: Vec<usize> = (0..24).filter(|&j| !p.cell(1, j).is_zero()).collect();
    assert_eq!(cols, vec![1, 5, 7, 11, 12, 13, 14]);
    assert_eq!(p.cell(1, 6), Cell::Zero);
    assert_eq!(p.cell(1, 12), Cell::Cpm(33));
    assert_eq!(p.cell(4, 15), Cell::Cpm(6));
    assert_eq!(p.cell(8, 18), Cell::Cpm(10));
    assert_eq!(p.cell(10, 19), Cell::Cpm(46));
}

/// The two level-1 bands as printed for n = 1152, with double cells
/// written `a/b` and shifts still at z = 96 (hence reduced mod 48 here).
const BANDS: [[&str; 24]; 2] = [
    ["12", "27", "-1", "-1", "83", "22/24", "-1", "9/43", "-1", "-1", "-1", "12/51", "33", "0", "0", "-1", "-1", "-1", "10", "-1", "0", "0", "-1", "-1"],
    ["-1", "-1", "39/7", "65", "-1", "-1", "84", "-1", "39", "41/49", "72", "-1", "-1", "-1", "-1", "6", "0", "0", "-1", "46", "-1", "-1", "0", "0"],
];

fn band_cell(tok: &str, col: usize) -> Cell {
    // The four inserted CPMs (columns 12, 15, 18, 19) are already z = 48 shifts.
    let scale = |v: u32| if [12, 15, 18, 19].contains(&col) { v } else { v % Z as u32 };
    match tok.split_once('/') {
        _ if tok == "-1" => Cell::Zero,
        Some((a, b)) => Cell::double(scale(a.parse().unwrap()), scale(b.parse().unwrap())),
        None => Cell::Cpm(scale(tok.parse().unwrap())),
    }
}

#[test]
fn level1_bands_match_table() {
    let c = wimax1152().unwrap();
    let h1 = &c.pair.h1;
    assert_eq!((h1.rows(), h1.cols()), (120, 1152));
    let cells: Vec<Cell> = BANDS
        .iter()
        .flat_map(|row| row.iter().enumerate().map(|(j, t)| band_cell(t, j)))
        .collect();
    let expected = ProtoMatrix::new(2, 24, Z, cells).unwrap();
    assert_eq!(count_doubles(&expected), 5);
    assert_eq!(h1.select_rows(&(0..96).collect::<Vec<_>>()), expected.expand());
    let band_one: Vec<usize> = (0..24).filter(|&j| !expected.cell(0, j).is_zero()).collect();
    assert_eq!(band_one, vec![0, 1, 4, 5, 7, 11, 12, 13, 14, 18, 20, 21]);
    let band_two: Vec<usize> = (0..24).filter(|&j| !expected.cell(1, j).is_zero()).collect();
    assert!(band_one.iter().all(|j| !band_two.contains(j)));
    assert_eq!(band_one.len() + band_two.len(), 24);
}

fn count_doubles(p: &ProtoMatrix) -> usize {
    (0..p.block_rows())
        .flat_map(|i| p.block_row(i).iter())
        .filter(|c| matches!(c, Cell::Double(..)))
        .count()
}

#[test]
fn nested_pair_shapes_and_dimensions() {
    let c = wimax1152().unwrap();
    assert_eq!((c.pair.h0.rows(), c.pair.h0.cols()), (600, 1152));
    assert!(verify_nesting(&c.pair));
    assert_eq!(code_dimensions(&c.pair), (564, 1034));
    let fam = make_family(&c.pair).unwrap();
    assert_eq!((fam.level1_len(), fam.len()), (120, 720));
}

#[test]
fn sum_of_block_rows_one_and_eight_is_in_the_row_space() {
    let h = wimax1152_proto().expand();
    let v: Vec<u8> = h
        .row(Z)
        .iter()
        .zip(h.row(8 * Z))
        .map(|(a, b)| a ^ b)
        .collect();
    assert!(h.row_space_contains(&v));
}

#[test]
fn row_sum_code_has_minimum_weight_four() {
    let h1 = wimax1152().unwrap().pair.h1;
    // Staircase rows force even weight, so weight 2 is the only lighter
    // candidate; it needs two identical columns.
    let cols = h1.transpose();
    let distinct: BTreeSet<Vec<u8>> = (0..cols.rows()).map(|c| cols.row(c)).collect();
    assert_eq!(distinct.len(), h1.cols());
    let found = low_weight_search(&h1, 50, 7, Some(4)).unwrap();
    assert_eq!(found.weight, 4);
    assert!(h1.mul_vec(&found.codeword).iter().all(|&b| b == 0));
}
