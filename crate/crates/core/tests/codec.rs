mod common;

use common::*;
use proptest::prelude::*;
use qcdp_core::codec::{
    spa_decode, stage_syndrome, wrapped_density, wrapped_llr_scalar, wrapped_llr_scalar_window,
    LatticeCodec, SpaConfig, SpaDecoder,
};
use qcdp_core::codes::build_spc;
use qcdp_core::gf2::BitMatrix;
use qcdp_core::lattice::make_family;
use qcdp_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

#[test]
fn llr_window_is_accurate() {
    for &sigma in &[0.05f64, 0.2, 0.5, 1.0, 2.0] {
        for i in -40..=40 {
            let y = i as f64 * 0.173;
            let w = (6.0 * sigma).ceil().max(3.0) as i64;
            let wide = wrapped_llr_scalar_window(y, sigma, 10 * w);
            assert!((wrapped_llr_scalar(y, sigma) - wide).abs() < 1e-9, "y={y} sigma={sigma}");
        }
    }
}

#[test]
fn llr_reference_value() {
    assert!((wrapped_llr_scalar(0.0, 0.5) - 1.3069).abs() < 1e-3);
}

proptest! {
    #[test]
    fn llr_symmetries(y in -20.0f64..20.0, sigma in 0.05f64..3.0) {
        let l = wrapped_llr_scalar(y, sigma);
        prop_assert!((wrapped_llr_scalar(y + 1.0, sigma) + l).abs() < 1e-8);
        prop_assert!((wrapped_llr_scalar(-y, sigma) - l).abs() < 1e-8);
        prop_assert!((wrapped_llr_scalar(y + 2.0, sigma) - l).abs() < 1e-8);
    }
}

#[test]
fn density_integrates_to_one() {
    for &sigma in &[0.1, 0.2, 0.5, 1.0, 1.3] {
        for bit in 0..2u8 {
            let steps = 20_000;
            let h = 2.0 / steps as f64;
            let total: f64 = (0..steps).map(|i| wrapped_density((i as f64 + 0.5) * h, bit, sigma) * h).sum();
            assert!((total - 1.0).abs() < 1e-9, "sigma={sigma} bit={bit} total={total}");
        }
    }
}

fn brute_posterior(h: &BitMatrix, syndrome: &[u8], llr: &[f64]) -> Vec<f64> {
    let n = h.cols();
    let mut p0 = vec![0.0f64; n];
    let mut p1 = vec![0.0f64; n];
    for c in all_words(n) {
        if h.mul_vec(&c) != syndrome {
            continue;
        }
        let w: f64 = c
            .iter()
            .zip(llr)
            .map(|(&b, &l)| if b == 0 { 1.0 / (1.0 + (-l).exp()) } else { 1.0 / (1.0 + l.exp()) })
            .product();
        for i in 0..n {
            if c[i] == 0 {
                p0[i] += w;
            } else {
                p1[i] += w;
            }
        }
    }
    p0.iter().zip(&p1).map(|(a, b)| (a / b).ln()).collect()
}

#[test]
fn spa_is_exact_on_a_tree() {
    let h = BitMatrix::from_rows(&[
        [1u8, 1, 1, 0, 0, 0, 0],
        [0, 0, 1, 1, 1, 0, 0],
        [0, 0, 0, 0, 1, 1, 1],
    ]);
    let dec = SpaDecoder::new(&h);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cfg = SpaConfig { max_iter: 10, early_stop: false };
    for trial in 0..50 {
        let llr: Vec<f64> = (0..7).map(|_| rng.random_range(-3.0..3.0)).collect();
        let syndrome: Vec<u8> = if trial % 2 == 0 { vec![0; 3] } else { vec![1, 0, 1] };
        let mut ext = vec![qcdp_core::codec::DUMMY_LLR];
        ext.extend(&llr);
        let out = dec.decode(&ext, &syndrome, cfg);
        let exact = brute_posterior(&h, &syndrome, &llr);
        for i in 0..7 {
            assert!((out.posterior[i + 1] - exact[i]).abs() < 1e-9, "{} vs {}", out.posterior[i + 1], exact[i]);
        }
    }
}

#[test]
fn syndrome_column_form_matches_decoder() {
    let h = build_spc(3, 3);
    let s = vec![1u8, 0, 0, 1, 0, 0];
    let joined = h.prepend_column(&s);
    let mut llr = vec![qcdp_core::codec::DUMMY_LLR];
    llr.extend((0..9).map(|i| if i % 3 == 0 { -1.5 } else { 2.0 }));
    let a = spa_decode(&joined, &llr, SpaConfig::default());
    let b = SpaDecoder::new(&h).decode(&llr, &s, SpaConfig::default());
    assert_eq!(a, b);
}

#[test]
fn spc_corrects_any_single_flip() {
    let h = build_spc(3, 3);
    let dec = SpaDecoder::new(&h);
    for flip in 0..9 {
        let mut llr = vec![qcdp_core::codec::DUMMY_LLR];
        llr.extend((0..9).map(|i| if i == flip { -2.0 } else { 2.0 }));
        let out = dec.decode(&llr, &[0; 6], SpaConfig::default());
        assert!(out.converged);
        assert!(out.decision[1..].iter().all(|&b| b == 0), "flip {flip}");
    }
}

#[test]
fn toy_encodes_are_distinct_members() {
    let pair = toy_pair();
    let codec = LatticeCodec::new(&pair).unwrap();
    let fam = make_family(&pair).unwrap();
    let (k0, k1) = codec.info_lengths();
    assert_eq!((k0, k1), (1, 2));
    let mut seen = Vec::new();
    for i0 in all_words(k0) {
        for i1 in all_words(k1) {
            let w = codec.encode(&i0, &i1, &[0, 1, -1, 2, 0, -2], 1).unwrap();
            assert_eq!(w.x[0], 7);
            assert!(fam.is_member(&w.x[1..]));
            assert!(!seen.contains(&w.x));
            seen.push(w.x);
        }
    }
}

fn nearest_member(fam: &qcdp_core::lattice::CheckFamily, y: &[f64]) -> Vec<i64> {
    let n = y.len();
    let mut best = (f64::INFINITY, Vec::new());
    for m in 0..4usize.pow(n as u32) {
        let mut t = m;
        let x: Vec<i64> = y
            .iter()
            .map(|&v| {
                let base = (v.floor() as i64) - 1;
                let x = base + (t % 4) as i64;
                t /= 4;
                x
            })
            .collect();
        if fam.is_member(&x) {
            let d: f64 = x.iter().zip(y).map(|(&a, &b)| (a as f64 - b).powi(2)).sum();
            if d < best.0 {
                best = (d, x);
            }
        }
    }
    best.1
}

#[test]
fn toy_decoder_agrees_with_nearest_point_at_low_noise() {
    let pair = toy_pair();
    let codec = LatticeCodec::new(&pair).unwrap();
    let fam = codec.family().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let sigma = 0.08;
    let noise = Normal::new(0.0, sigma).unwrap();
    for _ in 0..300 {
        let i0 = vec![rng.random_range(0..2u8)];
        let i1: Vec<u8> = (0..2).map(|_| rng.random_range(0..2)).collect();
        let z: Vec<i64> = (0..6).map(|_| rng.random_range(-2..=2)).collect();
        let w = codec.encode(&i0, &i1, &z, rng.random_range(-2..=2)).unwrap();
        let y: Vec<f64> = w.x.iter().map(|&v| v as f64 + noise.sample(&mut rng)).collect();
        let out = codec.decode(&y, sigma, SpaConfig::default());
        let ml = nearest_member(&fam, &y[1..]);
        assert_eq!(ml, w.x[1..].to_vec());
        assert_eq!(out.word.x, w.x);
        assert_eq!(out.first_failure(&w), None);
    }
}

#[test]
fn example1_round_trips_at_low_noise() {
    let codec = LatticeCodec::new(&example1_pair()).unwrap();
    let (k0, k1) = codec.info_lengths();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let noise = Normal::new(0.0, 0.01).unwrap();
    for _ in 0..50 {
        let i0: Vec<u8> = (0..k0).map(|_| rng.random_range(0..2)).collect();
        let i1: Vec<u8> = (0..k1).map(|_| rng.random_range(0..2)).collect();
        let z: Vec<i64> = (0..170).map(|_| rng.random_range(-2..=2)).collect();
        let w = codec.encode(&i0, &i1, &z, rng.random_range(-2..=2)).unwrap();
        assert!(codec.family().is_member(&w.x[1..]));
        let y: Vec<f64> = w.x.iter().map(|&v| v as f64 + noise.sample(&mut rng)).collect();
        let out = codec.decode(&y, 0.01, SpaConfig::default());
        assert_eq!(out.word, w);
        assert!(out.stages.iter().all(|s| s.converged && s.iterations == 0));
    }
}

#[test]
fn level0_codewords_give_solvable_level1_syndromes() {
    let pair = example1_pair();
    let codec = LatticeCodec::new(&pair).unwrap();
    let fam = codec.family();
    let basis = pair.h0.nullspace_basis();
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    let mut odd = 0;
    for _ in 0..1000 {
        let mut c0 = vec![0u8; 170];
        for b in &basis {
            if rng.random_bool(0.5) {
                for (x, y) in c0.iter_mut().zip(b) {
                    *x ^= y;
                }
            }
        }
        let s1 = stage_syndrome(fam.level1_rows(), &c0).unwrap();
        assert!(dense_solve(&pair.h1, &s1).is_some());
        let info = vec![0u8; codec.info_lengths().1];
        assert_eq!(pair.h1.mul_vec(&codec.plan1().solve_coset(&s1, &info).unwrap()), s1);

        let noise: Vec<u8> = (0..170).map(|_| rng.random_range(0..2)).collect();
        if matches!(stage_syndrome(fam.level1_rows(), &noise), Err(Error::OddDot(_))) {
            odd += 1;
        }
    }
    assert!(odd > 900, "random words almost always have an odd dot: {odd}");
}
