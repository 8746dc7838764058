//! Channel models and the seeded Monte Carlo engine.
//!
//! Every trial draws from its own ChaCha stream addressed by
//! `(seed, point index, trial index)`, so results do not depend on how the
//! trials are spread over threads. Trials run in parallel batches; the
//! stop rule is then applied by a sequential scan in trial order, which
//! makes the reported counts exact.

use std::f64::consts::{E, PI};
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader};
use std::path::Path;

use qcdp_core::codec::{
    wrapped_llr, LatticeCodec, LatticeWord, SpaConfig, SpaDecoder, Stage, DUMMY_LLR,
};
use qcdp_core::gf2::{BitMatrix, TriangulationPlan};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_TRIALS: u64 = 1_000_000;
pub const DEFAULT_TARGET_ERRORS: u64 = 100;
/// Integer parts of simulated lattice points are uniform on `{-R, …, R}`.
pub const INTEGER_RANGE: i64 = 2;

pub const CSV_HEADER: [&str; 11] = [
    "kind",
    "label",
    "x_db",
    "trials",
    "block_errors",
    "bler",
    "stage0_errors",
    "stage1_errors",
    "integer_errors",
    "iterations_mean",
    "seed",
];

/// `σ² = 10^(-SNR/10)`.
pub fn snr_to_sigma2(snr_db: f64) -> f64 {
    10f64.powf(-snr_db / 10.0)
}

/// `σ² = V^{2/N} / (2πe · 10^(VNR/10))`.
pub fn vnr_to_sigma2(vnr_db: f64, normalized_volume: f64) -> f64 {
    assert!(normalized_volume > 0.0);
    normalized_volume / (2.0 * PI * E * 10f64.powf(vnr_db / 10.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    pub sigma2: f64,
    pub snr_db: f64,
    pub vnr_db: f64,
}

impl ChannelParams {
    pub fn from_sigma2(sigma2: f64, normalized_volume: f64) -> Self {
        assert!(sigma2 > 0.0);
        ChannelParams {
            sigma2,
            snr_db: -10.0 * sigma2.log10(),
            vnr_db: 10.0 * (normalized_volume / (2.0 * PI * E * sigma2)).log10(),
        }
    }

    pub fn from_snr_db(snr_db: f64, normalized_volume: f64) -> Self {
        Self::from_sigma2(snr_to_sigma2(snr_db), normalized_volume)
    }

    pub fn from_vnr_db(vnr_db: f64, normalized_volume: f64) -> Self {
        Self::from_sigma2(vnr_to_sigma2(vnr_db, normalized_volume), normalized_volume)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma2.sqrt()
    }
}

/// Ends a sweep point at `max_trials` trials or as soon as `target_errors`
/// block errors have been seen, whichever comes first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StopRule {
    pub max_trials: u64,
    pub target_errors: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule {
            max_trials: DEFAULT_MAX_TRIALS,
            target_errors: DEFAULT_TARGET_ERRORS,
        }
    }
}

/// One sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    /// `code` or `lattice`.
    pub kind: String,
    pub label: String,
    /// SNR (codes) or VNR (lattices) in dB.
    pub x_db: f64,
    pub trials: u64,
    pub block_errors: u64,
    pub bler: f64,
    /// First-failing-stage counts; zero for component-code sweeps.
    pub stage0_errors: u64,
    pub stage1_errors: u64,
    pub integer_errors: u64,
    /// Mean SPA iterations per trial, summed over stages.
    pub iterations_mean: f64,
    pub seed: u64,
}

impl SimReport {
    pub fn record(&self) -> [String; 11] {
        [
            self.kind.clone(),
            self.label.clone(),
            self.x_db.to_string(),
            self.trials.to_string(),
            self.block_errors.to_string(),
            self.bler.to_string(),
            self.stage0_errors.to_string(),
            self.stage1_errors.to_string(),
            self.integer_errors.to_string(),
            self.iterations_mean.to_string(),
            self.seed.to_string(),
        ]
    }
}

/// The random stream of one trial.
pub fn trial_rng(seed: u64, point: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(point);
    // 2^32 words per trial, far more than any trial consumes.
    rng.set_word_pos(u128::from(trial) << 32);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialOutcome {
    pub error: bool,
    pub stage: Option<Stage>,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Tally {
    trials: u64,
    errors: u64,
    stages: [u64; 3],
    iterations: u64,
}

fn run_point(stop: StopRule, trial: impl Fn(u64) -> TrialOutcome + Sync) -> Tally {
    let mut tally = Tally::default();
    let mut batch = 64u64;
    while tally.trials < stop.max_trials && tally.errors < stop.target_errors {
        let start = tally.trials;
        let end = (start + batch).min(stop.max_trials);
        let outcomes: Vec<TrialOutcome> = (start..end).into_par_iter().map(&trial).collect();
        for o in outcomes {
            tally.trials += 1;
            tally.iterations += o.iterations as u64;
            if o.error {
                tally.errors += 1;
                if let Some(s) = o.stage {
                    tally.stages[s as usize] += 1;
                }
                if tally.errors >= stop.target_errors {
                    break;
                }
            }
        }
        batch = (batch * 2).min(4096);
    }
    tally
}

fn report(kind: &str, label: &str, x_db: f64, seed: u64, t: Tally) -> SimReport {
    let trials = t.trials.max(1) as f64;
    SimReport {
        kind: kind.into(),
        label: label.into(),
        x_db,
        trials: t.trials,
        block_errors: t.errors,
        bler: t.errors as f64 / trials,
        stage0_errors: t.stages[Stage::Level0 as usize],
        stage1_errors: t.stages[Stage::Level1 as usize],
        integer_errors: t.stages[Stage::Integer as usize],
        iterations_mean: t.iterations as f64 / trials,
        seed,
    }
}

fn gaussian(rng: &mut impl Rng, sigma: f64) -> f64 {
    let w: f64 = StandardNormal.sample(rng);
    sigma * w
}

fn random_bits(rng: &mut impl Rng, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.random_range(0..2u8)).collect()
}

/// A random codeword of `{c : H·cᵀ = 0}` and its AMGN observation
/// `(c + w) mod 2`, folded into `[0, 2)`.
pub fn draw_code_trial(plan: &TriangulationPlan, sigma: f64, rng: &mut impl Rng) -> (Vec<u8>, Vec<f64>) {
    let info = random_bits(rng, plan.free_columns().len());
    let c = plan
        .solve_coset(&vec![0; plan.rows()], &info)
        .expect("zero syndrome is always achievable");
    let y = c
        .iter()
        .map(|&b| (b as f64 + gaussian(rng, sigma)).rem_euclid(2.0))
        .collect();
    (c, y)
}

/// Channel LLRs for a component-code trial, dummy coordinate pinned.
pub fn code_llr(y: &[f64], sigma: f64) -> Vec<f64> {
    let mut llr = Vec::with_capacity(y.len() + 1);
    llr.push(DUMMY_LLR);
    llr.extend(wrapped_llr(y, sigma));
    llr
}

/// Component-code BLER sweep over the AMGN channel.
pub fn sweep_code(
    label: &str,
    h: &BitMatrix,
    snr_db: &[f64],
    stop: StopRule,
    seed: u64,
    spa: SpaConfig,
) -> Vec<SimReport> {
    let plan = h.triangularize();
    let decoder = SpaDecoder::new(h);
    let zero = vec![0u8; h.rows()];
    snr_db
        .iter()
        .enumerate()
        .map(|(point, &x)| {
            let sigma = snr_to_sigma2(x).sqrt();
            let tally = run_point(stop, |t| {
                let mut rng = trial_rng(seed, point as u64, t);
                let (c, y) = draw_code_trial(&plan, sigma, &mut rng);
                let out = decoder.decode(&code_llr(&y, sigma), &zero, spa);
                TrialOutcome {
                    error: out.decision[1..] != c[..],
                    stage: None,
                    iterations: out.iterations,
                }
            });
            report("code", label, x, seed, tally)
        })
        .collect()
}

/// A random lattice point (uniform information bits, integer parts
/// uniform on `{-R..R}`) and its AWGN observation `x + w`.
pub fn draw_lattice_trial(codec: &LatticeCodec, sigma: f64, rng: &mut impl Rng) -> (LatticeWord, Vec<f64>) {
    let (k0, k1) = codec.info_lengths();
    let info0 = random_bits(rng, k0);
    let info1 = random_bits(rng, k1);
    let zvec: Vec<i64> = (0..codec.n())
        .map(|_| rng.random_range(-INTEGER_RANGE..=INTEGER_RANGE))
        .collect();
    let z0 = rng.random_range(-INTEGER_RANGE..=INTEGER_RANGE);
    let word = codec
        .encode(&info0, &info1, &zvec, z0)
        .expect("nested pair always encodes");
    let y = word.x.iter().map(|&v| v as f64 + gaussian(rng, sigma)).collect();
    (word, y)
}

/// Lattice BLER sweep over the power-unconstrained AWGN channel.
pub fn sweep_lattice(
    label: &str,
    codec: &LatticeCodec,
    normalized_volume: f64,
    vnr_db: &[f64],
    stop: StopRule,
    seed: u64,
    spa: SpaConfig,
) -> Vec<SimReport> {
    vnr_db
        .iter()
        .enumerate()
        .map(|(point, &x)| {
            let sigma = vnr_to_sigma2(x, normalized_volume).sqrt();
            let tally = run_point(stop, |t| {
                let mut rng = trial_rng(seed, point as u64, t);
                let (word, y) = draw_lattice_trial(codec, sigma, &mut rng);
                let out = codec.decode(&y, sigma, spa);
                let stage = out.first_failure(&word);
                TrialOutcome {
                    error: stage.is_some(),
                    stage,
                    iterations: out.stages.iter().map(|s| s.iterations).sum(),
                }
            });
            report("lattice", label, x, seed, tally)
        })
        .collect()
}

/// Appends reports to a CSV file, writing the header only when the file
/// is new or empty. An existing file with a different header is refused.
pub fn append_csv(path: &Path, reports: &[SimReport]) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let existing = match std::fs::File::open(path) {
        Ok(f) => BufReader::new(f).lines().next().transpose().map_err(io)?,
        Err(_) => None,
    };
    let need_header = match existing.as_deref() {
        None | Some("") => true,
        Some(h) if h == CSV_HEADER.join(",") => false,
        Some(h) => {
            return Err(Error::data(format!(
                "{}: existing header {h:?} does not match the report schema",
                path.display()
            )))
        }
    };
    let file = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
    let mut w = csv::Writer::from_writer(file);
    if need_header {
        w.write_record(CSV_HEADER)?;
    }
    for r in reports {
        w.write_record(r.record())?;
    }
    w.flush().map_err(io)?;
    Ok(())
}

/// Expands `a:step:b` into an inclusive grid.
pub fn parse_grid(spec: &str) -> Option<Vec<f64>> {
    let parts: Vec<f64> = spec.split(':').map(|t| t.trim().parse().ok()).collect::<Option<_>>()?;
    match parts[..] {
        [a] => Some(vec![a]),
        [a, step, b] if step > 0.0 && b >= a => {
            let count = ((b - a) / step + 1e-9).floor() as usize;
            Some((0..=count).map(|i| a + i as f64 * step).collect())
        }
        _ => None,
    }
}
