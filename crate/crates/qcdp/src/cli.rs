//! Command-line front end.
//!
//! Every subcommand accepts `--config FILE` (flat `key=value`) and a flag
//! per key; flags override the file. Simulations append to a CSV file and
//! write `<out>.manifest`, a config file that reproduces the run.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::parser::ValueSource;
use clap::{Arg, ArgMatches, Command};
use qcdp_core::codec::{LatticeCodec, SpaConfig, DEFAULT_MAX_ITER};
use qcdp_core::codes::NestedPair;
use qcdp_core::lattice::{code_dimensions, make_family};
use qcdp_core::qc::{random_proto_search, ProtoSearchConfig};
use qcdp_core::wmin::{exact_dmin, low_weight_search, MAX_EXACT_DIMENSION};

use crate::builtins::{builtin, Construction, BUILTIN_NAMES};
use crate::config::{parse_config, Settings};
use crate::error::{Error, Result};
use crate::formats::{parse_edits, parse_proto, read_text, write_proto, write_sparse, write_text};
use crate::sim::{self, StopRule};

pub const DEFAULT_SEED: u64 = 1;

const LATTICE_KEYS: [(&str, &str); 7] = [
    ("lattice", "built-in construction: example1 or wimax1152"),
    ("proto", "prototype matrix file (instead of a built-in)"),
    ("edits", "cell edits applied to the prototype"),
    ("length", "scale z = 96 shifts to this code length first"),
    ("level1", "level-1 rule: row:I or sums:A+B,C+D (default row:0)"),
    ("d0", "design distance of level 0 (default 16)"),
    ("d1", "design distance of level 1 (default 4)"),
];

const SIM_KEYS: [(&str, &str); 5] = [
    ("max-trials", "trial cap per point (default 1000000)"),
    ("target-errors", "stop a point after this many block errors (default 100)"),
    ("iters", "SPA iteration cap (default 100)"),
    ("seed", "master seed"),
    ("out", "CSV file to append to"),
];

fn keys(name: &str) -> Vec<(&'static str, &'static str)> {
    let mut k: Vec<(&str, &str)> = Vec::new();
    match name {
        "info" => k.extend(LATTICE_KEYS),
        "build" => {
            k.extend(LATTICE_KEYS);
            k.push(("out", "output directory"));
        }
        "search" => k.extend([
            ("rows", "block rows"),
            ("cols", "block columns"),
            ("z", "circulant size"),
            ("target", "stop once a candidate reaches this weight"),
            ("budget", "number of candidates"),
            ("isd-iterations", "low-weight search iterations per candidate (default 200)"),
            ("girth4", "reject prototypes with 4-cycles: true or false"),
            ("seed", "master seed"),
            ("out", "file for the best prototype"),
        ]),
        "distance" => {
            k.extend(LATTICE_KEYS);
            k.extend([
                ("matrix", "qc, h0 or h1 (default qc)"),
                ("iterations", "low-weight search iterations (default 1000)"),
                ("seed", "search seed"),
            ]);
        }
        "simulate-code" => {
            k.extend(LATTICE_KEYS);
            k.push(("level", "component code: 0 or 1"));
            k.push(("snr", "SNR grid a:step:b in dB"));
            k.extend(SIM_KEYS);
        }
        "simulate-lattice" => {
            k.extend(LATTICE_KEYS);
            k.push(("vnr", "VNR grid a:step:b in dB"));
            k.extend(SIM_KEYS);
        }
        _ => unreachable!("unknown subcommand {name}"),
    }
    k
}

const SUBCOMMANDS: [(&str, &str); 6] = [
    ("info", "print the lattice profile of a construction"),
    ("build", "write the prototype and expanded check matrices"),
    ("search", "random prototype search scored by low-weight codewords"),
    ("distance", "minimum distance (exact when small, else a search bound)"),
    ("simulate-code", "component-code BLER over the mod-2 Gaussian channel"),
    ("simulate-lattice", "lattice BLER over the unconstrained AWGN channel"),
];

pub fn command() -> Command {
    let mut cmd = Command::new("qcdp")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Two-level lattices from quasi-cyclic LDPC and SPC product codes")
        .subcommand_required(true)
        .arg_required_else_help(true);
    for (name, about) in SUBCOMMANDS {
        let mut sub = Command::new(name).about(about).arg(
            Arg::new("config")
                .long("config")
                .value_name("FILE")
                .help("key=value settings file"),
        );
        for (key, help) in keys(name) {
            sub = sub.arg(Arg::new(key).long(key).value_name("VALUE").help(help));
        }
        cmd = cmd.subcommand(sub);
    }
    cmd
}

fn settings(name: &str, m: &ArgMatches) -> Result<Settings> {
    let allowed: Vec<&str> = keys(name).into_iter().map(|(k, _)| k).collect();
    let base = match m.get_one::<String>("config") {
        Some(path) => parse_config(&read_config(Path::new(path))?, &allowed)?,
        None => BTreeMap::new(),
    };
    let overrides = allowed
        .iter()
        .filter(|k| m.value_source(k) == Some(ValueSource::CommandLine))
        .filter_map(|k| m.get_one::<String>(k).map(|v| (k.to_string(), v.clone())))
        .collect();
    Ok(Settings::new(base, overrides))
}

fn read_config(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::config(format!("{}: {e}", path.display())))
}

/// Parses arguments and runs one subcommand, writing human-readable output
/// to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = command().try_get_matches_from(args)?;
    let (name, m) = matches.subcommand().expect("subcommand required");
    let mut s = settings(name, m)?;
    let header = vec![format!("qcdp {} {name}", env!("CARGO_PKG_VERSION"))];
    match name {
        "info" => info(&mut s, out),
        "build" => build(&mut s, out, &header),
        "search" => search(&mut s, out, &header),
        "distance" => distance(&mut s, out),
        "simulate-code" => simulate_code(&mut s, out, &header),
        "simulate-lattice" => simulate_lattice(&mut s, out, &header),
        _ => unreachable!(),
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(io_err(Path::new("<stdout>")))?
    };
}

/// Parses `row:I` or `sums:A+B,C+D`.
fn parse_level1(spec: &str) -> Result<Level1> {
    let bad = || Error::config(format!("invalid value for `level1`: {spec:?}"));
    let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
    match kind {
        "row" => Ok(Level1::Row(rest.trim().parse().map_err(|_| bad())?)),
        "sums" => rest
            .split(',')
            .map(|g| g.split('+').map(|i| i.trim().parse().map_err(|_| bad())).collect())
            .collect::<Result<_>>()
            .map(Level1::Sums),
        _ => Err(bad()),
    }
}

enum Level1 {
    Row(usize),
    Sums(Vec<Vec<usize>>),
}

fn construction(s: &mut Settings) -> Result<Construction> {
    if let Some(name) = s.raw("lattice") {
        return builtin(&name).unwrap_or_else(|| {
            Err(Error::config(format!(
                "invalid value for `lattice`: {name:?} (built-ins: {})",
                BUILTIN_NAMES.join(", ")
            )))
        });
    }
    let path: PathBuf = s
        .get("proto")?
        .ok_or_else(|| Error::config("missing key `lattice` (or `proto`)"))?;
    let mut proto = parse_proto(&read_text(&path)?)?;
    if let Some(n) = s.get::<usize>("length")? {
        proto = proto.scale_shifts(n).map_err(|e| Error::config(format!("`length`: {e}")))?;
    }
    if let Some(edits) = s.get::<PathBuf>("edits")? {
        proto = proto.apply_edits(&parse_edits(&read_text(&edits)?)?)?;
    }
    let pair = match parse_level1(&s.get_or("level1", "row:0".to_string())?)? {
        Level1::Row(i) => NestedPair::block_row(&proto, i),
        Level1::Sums(groups) => NestedPair::row_sums(&proto, &groups),
    }
    .map_err(|e| Error::config(format!("`level1`: {e}")))?;
    Ok(Construction {
        label: path
            .file_stem()
            .map_or_else(|| "custom".into(), |s| s.to_string_lossy().into_owned()),
        proto,
        pair,
        d: (s.get_or("d0", 16)?, s.get_or("d1", 4)?),
    })
}

fn info(s: &mut Settings, out: &mut dyn Write) -> Result<()> {
    let c = construction(s)?;
    let p = c.profile();
    let fam = make_family(&c.pair)?;
    say!(out, "label={}", c.label);
    say!(out, "N={}", p.dimension);
    say!(out, "n={} z={} p={} q={}", c.pair.n, c.pair.z, c.pair.p(), c.pair.q());
    say!(out, "k=({},{})", p.k[0], p.k[1]);
    say!(out, "rates=({:.6},{:.6})", p.rates[0], p.rates[1]);
    say!(out, "d=({},{})", p.d[0], p.d[1]);
    say!(out, "d2min={}", p.d2min);
    say!(out, "normalized_volume={:.6}", p.normalized_volume);
    say!(out, "gain={:.2} dB", p.gain_db);
    say!(out, "congruences={} (level1 {})", fam.len(), fam.level1_len());
    say!(out, "four_cycle_free={}", !c.proto.has_four_cycle());
    Ok(())
}

fn build(s: &mut Settings, out: &mut dyn Write, header: &[String]) -> Result<()> {
    let c = construction(s)?;
    let dir: PathBuf = s.require("out")?;
    std::fs::create_dir_all(&dir).map_err(io_err(&dir))?;
    write_text(&dir.join("proto.txt"), &write_proto(&c.proto))?;
    write_text(&dir.join("h0.txt"), &write_sparse(&c.pair.h0))?;
    write_text(&dir.join("h1.txt"), &write_sparse(&c.pair.h1))?;
    write_text(&dir.join("manifest.txt"), &s.manifest(header))?;
    let (k0, k1) = code_dimensions(&c.pair);
    say!(out, "wrote {} (H0 {}x{}, H1 {}x{}, k=({k0},{k1}))", dir.display(), c.pair.h0.rows(), c.pair.h0.cols(), c.pair.h1.rows(), c.pair.h1.cols());
    Ok(())
}

fn search(s: &mut Settings, out: &mut dyn Write, header: &[String]) -> Result<()> {
    let cfg = ProtoSearchConfig {
        block_rows: s.require("rows")?,
        block_cols: s.require("cols")?,
        z: s.require("z")?,
        target_weight: s.require("target")?,
        reject_four_cycles: s.get_or("girth4", false)?,
        budget: s.require("budget")?,
        isd_iterations: s.get_or("isd-iterations", 200)?,
        seed: s.get_or("seed", DEFAULT_SEED)?,
    };
    if cfg.block_rows == 0 || cfg.block_cols == 0 || cfg.z == 0 || cfg.budget == 0 {
        return Err(Error::config("`rows`, `cols`, `z` and `budget` must be positive"));
    }
    let dest: Option<PathBuf> = s.get("out")?;
    let Some(best) = random_proto_search(&cfg) else {
        say!(out, "no candidate accepted");
        return Ok(());
    };
    match &dest {
        Some(path) => {
            write_text(path, &write_proto(&best.proto))?;
            write_text(&with_suffix(path, "manifest"), &s.manifest(header))?;
        }
        None => write!(out, "{}", write_proto(&best.proto)).map_err(io_err(Path::new("<stdout>")))?,
    }
    say!(out, "weight_bound={}", best.weight_bound);
    say!(out, "candidates={}", best.candidates);
    say!(out, "target_reached={}", best.weight_bound >= cfg.target_weight);
    Ok(())
}

fn distance(s: &mut Settings, out: &mut dyn Write) -> Result<()> {
    let c = construction(s)?;
    let which = s.get_or("matrix", "qc".to_string())?;
    let h = match which.as_str() {
        "qc" => c.proto.expand(),
        "h0" => c.pair.h0.clone(),
        "h1" => c.pair.h1.clone(),
        _ => return Err(Error::config(format!("invalid value for `matrix`: {which:?}"))),
    };
    let k = h.cols() - h.rank();
    say!(out, "matrix={which} n={} k={k}", h.cols());
    if k <= MAX_EXACT_DIMENSION {
        match exact_dmin(&h)? {
            Some(d) => say!(out, "exact_distance={d}"),
            None => say!(out, "zero code"),
        }
        return Ok(());
    }
    let iterations = s.get_or("iterations", 1000usize)?;
    let seed = s.get_or("seed", DEFAULT_SEED)?;
    match low_weight_search(&h, iterations, seed, None) {
        Some(w) => {
            say!(out, "weight_bound={}", w.weight);
            say!(out, "iterations={}", w.iterations);
        }
        None => say!(out, "zero code"),
    }
    Ok(())
}

struct SimSetup {
    stop: StopRule,
    spa: SpaConfig,
    seed: u64,
    out: Option<PathBuf>,
}

fn sim_setup(s: &mut Settings) -> Result<SimSetup> {
    let stop = StopRule {
        max_trials: s.get_or("max-trials", sim::DEFAULT_MAX_TRIALS)?,
        target_errors: s.get_or("target-errors", sim::DEFAULT_TARGET_ERRORS)?,
    };
    if stop.max_trials == 0 || stop.target_errors == 0 {
        return Err(Error::config("`max-trials` and `target-errors` must be positive"));
    }
    Ok(SimSetup {
        stop,
        spa: SpaConfig {
            max_iter: s.get_or("iters", DEFAULT_MAX_ITER)?,
            early_stop: true,
        },
        seed: s.get_or("seed", DEFAULT_SEED)?,
        out: s.get("out")?,
    })
}

fn grid(s: &mut Settings, key: &str) -> Result<Vec<f64>> {
    let spec: String = s.require(key)?;
    sim::parse_grid(&spec).ok_or_else(|| Error::config(format!("invalid value for `{key}`: {spec:?}")))
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut p = path.as_os_str().to_owned();
    p.push(".");
    p.push(suffix);
    PathBuf::from(p)
}

fn emit(reports: &[sim::SimReport], setup: &SimSetup, s: &Settings, out: &mut dyn Write, header: &[String]) -> Result<()> {
    say!(out, "{}", sim::CSV_HEADER.join(","));
    for r in reports {
        say!(out, "{}", r.record().join(","));
    }
    if let Some(path) = &setup.out {
        sim::append_csv(path, reports)?;
        write_text(&with_suffix(path, "manifest"), &s.manifest(header))?;
    }
    Ok(())
}

fn simulate_code(s: &mut Settings, out: &mut dyn Write, header: &[String]) -> Result<()> {
    let c = construction(s)?;
    let level: u8 = s.require("level")?;
    let h = match level {
        0 => &c.pair.h0,
        1 => &c.pair.h1,
        _ => return Err(Error::config(format!("invalid value for `level`: {level}"))),
    };
    let points = grid(s, "snr")?;
    let setup = sim_setup(s)?;
    let label = format!("{}-g{level}", c.label);
    let reports = sim::sweep_code(&label, h, &points, setup.stop, setup.seed, setup.spa);
    emit(&reports, &setup, s, out, header)
}

fn simulate_lattice(s: &mut Settings, out: &mut dyn Write, header: &[String]) -> Result<()> {
    let c = construction(s)?;
    let points = grid(s, "vnr")?;
    let setup = sim_setup(s)?;
    let codec = LatticeCodec::new(&c.pair)?;
    let nv = c.profile().normalized_volume;
    let reports = sim::sweep_lattice(&c.label, &codec, nv, &points, setup.stop, setup.seed, setup.spa);
    emit(&reports, &setup, s, out, header)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_is_well_formed() {
        command().debug_assert();
    }

    #[test]
    fn level1_specs() {
        assert!(matches!(parse_level1("row:2"), Ok(Level1::Row(2))));
        match parse_level1("sums:1+8,4+10") {
            Ok(Level1::Sums(g)) => assert_eq!(g, vec![vec![1, 8], vec![4, 10]]),
            _ => panic!(),
        }
        assert!(parse_level1("row").is_err());
        assert!(parse_level1("cols:1").is_err());
        assert!(parse_level1("sums:1+x").is_err());
    }
}
