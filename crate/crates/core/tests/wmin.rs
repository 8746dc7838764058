mod common;

use common::*;
use qcdp_core::codes::build_spc;
use qcdp_core::qc::{Cell, ProtoMatrix};
use qcdp_core::wmin::{exact_dmin, low_weight_search};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn search_matches_exact_on_small_qc_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut checked = 0;
    while checked < 30 {
        let z = rng.random_range(3..=8usize);
        let cols = rng.random_range(3..=5usize);
        let cells = (0..2 * cols).map(|_| Cell::Cpm(rng.random_range(0..z as u32))).collect();
        let h = ProtoMatrix::new(2, cols, z, cells).unwrap().expand();
        let Ok(Some(exact)) = exact_dmin(&h) else { continue };
        if h.cols() - h.rank() > 16 {
            continue;
        }
        let found = low_weight_search(&h, 10_000, rng.random(), Some(exact)).unwrap();
        assert!(found.weight >= exact);
        assert_eq!(found.weight, exact);
        assert!(h.mul_vec(&found.codeword).iter().all(|&b| b == 0));
        assert_eq!(weight(&found.codeword), found.weight);
        checked += 1;
    }
}

#[test]
fn exact_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let rows = rng.random_range(1..=6);
        let data: Vec<Vec<u8>> = (0..rows)
            .map(|_| (0..12).map(|_| rng.random_range(0..2)).collect())
            .collect();
        let h = qcdp_core::gf2::BitMatrix::from_rows(&data);
        let brute = codewords(&h).iter().map(|c| weight(c)).filter(|&w| w > 0).min();
        assert_eq!(exact_dmin(&h).unwrap(), brute);
    }
}

#[test]
fn spc_search_weight_four() {
    let found = low_weight_search(&build_spc(4, 4), 200, 1, None).unwrap();
    assert_eq!(found.weight, 4);
}

#[test]
fn example1_qc_code_weight_sixteen() {
    let h = example1_proto().expand();
    let found = low_weight_search(&h, 400, 2024, Some(16)).unwrap();
    assert_eq!(found.weight, 16);
    assert!(h.mul_vec(&found.codeword).iter().all(|&b| b == 0));
}

#[test]
fn bound_never_below_true_distance() {
    let pair = toy_pair();
    let exact = exact_dmin(&pair.h0).unwrap().unwrap();
    for seed in 0..20 {
        assert!(low_weight_search(&pair.h0, 3, seed, None).unwrap().weight >= exact);
    }
}
