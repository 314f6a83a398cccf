//! Command-line front end: combinatorial bounds (`bound`), randomized index
//! estimates (`index`), the full-catalog conjecture sweep (`sweep`, JSON
//! lines with resume), and form stability reports (`stability`).
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 conjecture counterexample
//! found under `sweep --check`.

use std::collections::HashSet;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use borel_index_core::hseq::{
    conclude_index_from_bound, min_c, min_length, panov_sequence, HSequence, SearchOutcome,
};
use borel_index_core::ideals::{enumerate_ideals, parse_ideal, AdNilpotentIdeal};
use borel_index_core::oracle::{
    index_of, is_stable, module_index, Certainty, IndexEstimate,
};
use borel_index_core::quotients::{
    build_quotient, special_form, LinearForm, QuotientAlgebra, QuotientKind,
};
use borel_index_core::rootsys::{ChevalleyConstants, Convention, RootSystem, TypeLabel};

const DEFAULT_TRIALS: u32 = 8;
const DEFAULT_COEFF_BOUND: u64 = 10_000;
const DEFAULT_BUDGET: u64 = 100_000_000;
const MAX_SWEEP_ROOTS: usize = 49;
const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "borel-index", version, about = "Index bounds and estimates for Borel quotients by ad-nilpotent ideals")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimal peeling length and minimal c over all peeling sequences
    Bound(BoundArgs),
    /// Randomized exact-rank index estimate for q, m, or the module action
    Index(IndexArgs),
    /// Catalog every ideal of a type: bounds, estimates, conjecture status
    Sweep(SweepArgs),
    /// Stabilizer and stability of a linear form on the Borel quotient
    Stability(StabilityArgs),
}

#[derive(Args)]
struct SystemArgs {
    /// Root system type: A, B, C, D, E, F, or G
    #[arg(long = "type", value_name = "LETTER")]
    type_label: String,
    /// Rank of the root system
    #[arg(long)]
    rank: usize,
    /// Structure constant sign convention: plus or minus
    #[arg(long, default_value = "plus")]
    convention: String,
}

#[derive(Args)]
struct BoundArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Ideal generators: semicolon-separated roots (coordinates or type-A
    /// "i,j" intervals); empty string for the empty ideal
    #[arg(long, default_value = "")]
    ideal: String,
    /// Search-node budget for the exhaustive minimizations
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Emit a JSON object instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    /// Borel quotient as a Lie algebra
    Q,
    /// Nilradical quotient as a Lie algebra
    M,
    /// Borel quotient acting on the nilradical quotient
    Module,
}

#[derive(Args)]
struct IndexArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[arg(long, default_value = "")]
    ideal: String,
    /// What to estimate the index of
    #[arg(long, value_enum, default_value_t = Target::Q)]
    target: Target,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: u32,
    /// Random coefficients are drawn uniformly from [1, this bound]
    #[arg(long, default_value_t = DEFAULT_COEFF_BOUND)]
    coeff_bound: u64,
    /// Sampling seed (default: BOREL_INDEX_SEED env var, else 0)
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Root system type to sweep
    #[arg(long = "type", value_name = "LETTER")]
    type_label: String,
    /// Sweep exactly this rank
    #[arg(long)]
    rank: Option<usize>,
    /// Sweep every valid rank up to this one
    #[arg(long)]
    max_rank: Option<usize>,
    #[arg(long, default_value = "plus")]
    convention: String,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: u32,
    #[arg(long, default_value_t = DEFAULT_COEFF_BOUND)]
    coeff_bound: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Sampling seed (default: BOREL_INDEX_SEED env var, else 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (1 = deterministic record order)
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Output file for JSON lines; existing records are kept and their
    /// ideals skipped.  Default: stdout, no resume.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Exit 2 if an exhaustive bound disagrees with the estimated index
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
struct StabilityArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[arg(long, default_value = "")]
    ideal: String,
    /// Form: "panov:a1,...,as" (type A), "random:SEED", or "a1,...,as"
    /// coefficients on the default peeling sequence
    #[arg(long)]
    form: Option<String>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    json: bool,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    let code = match run(cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32, String> {
    match cli.cmd {
        Cmd::Bound(a) => cmd_bound(a),
        Cmd::Index(a) => cmd_index(a),
        Cmd::Sweep(a) => cmd_sweep(a),
        Cmd::Stability(a) => cmd_stability(a),
    }
}

// ---------- shared helpers ----------

struct Context {
    rs: RootSystem,
    nc: ChevalleyConstants,
    convention: Convention,
}

fn build_context(sys: &SystemArgs) -> Result<Context, String> {
    let type_label = TypeLabel::from_str(&sys.type_label).map_err(|e| e.to_string())?;
    let convention = Convention::from_str(&sys.convention).map_err(|e| e.to_string())?;
    let rs = RootSystem::build(type_label, sys.rank).map_err(|e| e.to_string())?;
    let nc = rs.chevalley_constants(convention);
    Ok(Context { rs, nc, convention })
}

fn resolve_seed(explicit: Option<u64>) -> Result<u64, String> {
    if let Some(s) = explicit {
        return Ok(s);
    }
    match std::env::var("BOREL_INDEX_SEED") {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map_err(|_| format!("BOREL_INDEX_SEED is not an integer: {v:?}")),
        Err(_) => Ok(0),
    }
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Per-ideal sampling seed, stable across runs and independent of sweep order.
fn derive_seed(global: u64, type_label: TypeLabel, rank: usize, key: &str) -> u64 {
    fnv1a64(format!("{global}|{type_label}|{rank}|{key}").as_bytes())
}

fn now_epoch() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

fn certainty_str(c: Certainty) -> &'static str {
    match c {
        Certainty::Probabilistic => "probabilistic",
        Certainty::ForcedByParityAndBound => "forced_by_parity_and_bound",
    }
}

#[derive(Serialize, Deserialize, Clone)]
struct EstimateSummary {
    value: i64,
    certainty: String,
    samples: u32,
    coeff_bound: u64,
}

fn summarize(est: &IndexEstimate) -> EstimateSummary {
    EstimateSummary {
        value: est.value,
        certainty: certainty_str(est.certainty).to_string(),
        samples: est.samples,
        coeff_bound: est.coeff_bound,
    }
}

fn witness_texts(rs: &RootSystem, h: &HSequence) -> Vec<String> {
    h.thetas().iter().map(|&i| rs.root(i).text()).collect()
}

fn parse_rational_list(text: &str) -> Result<Vec<BigRational>, String> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            BigRational::from_str(t).map_err(|_| format!("bad coefficient {t:?}"))
        })
        .collect()
}

// ---------- bound ----------

#[derive(Serialize)]
struct SearchJson {
    value: Option<i64>,
    exhaustive: bool,
    witness: Option<Vec<String>>,
    witness_d: Option<usize>,
    witness_t: Option<usize>,
    witness_c: Option<i64>,
}

fn search_json(rs: &RootSystem, s: &SearchOutcome) -> SearchJson {
    SearchJson {
        value: s.value,
        exhaustive: s.exhaustive,
        witness: s.witness.as_ref().map(|h| witness_texts(rs, h)),
        witness_d: s.witness.as_ref().map(HSequence::d),
        witness_t: s.witness.as_ref().map(HSequence::t),
        witness_c: s.witness.as_ref().map(HSequence::c),
    }
}

fn cmd_bound(args: BoundArgs) -> Result<i32, String> {
    let ctx = build_context(&args.system)?;
    let rs = &ctx.rs;
    let ideal = parse_ideal(rs, &args.ideal).map_err(|e| e.to_string())?;
    let e = ideal.complement();
    let key = ideal.key(rs);
    let ml = min_length(rs, &e, args.budget).map_err(|e| e.to_string())?;
    let mc = min_c(rs, &e, args.budget).map_err(|e| e.to_string())?;
    let panov = if rs.type_label() == TypeLabel::A {
        Some(panov_sequence(rs, &e).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let conclusion = match (mc.exhaustive, mc.value) {
        (true, Some(v)) => conclude_index_from_bound(v),
        _ => None,
    };
    if args.json {
        #[derive(Serialize)]
        struct BoundJson {
            type_label: String,
            rank: usize,
            ideal_generators: String,
            phi_size: usize,
            e_size: usize,
            min_length: SearchJson,
            min_c: SearchJson,
            panov: Option<PanovJson>,
            conclusion: Option<i64>,
            budget: u64,
            convention_id: String,
        }
        #[derive(Serialize)]
        struct PanovJson {
            thetas: Vec<String>,
            length: usize,
            d: usize,
            t: usize,
            c: i64,
        }
        let payload = BoundJson {
            type_label: rs.type_label().to_string(),
            rank: rs.rank(),
            ideal_generators: key,
            phi_size: ideal.phi().card(),
            e_size: e.card(),
            min_length: search_json(rs, &ml),
            min_c: search_json(rs, &mc),
            panov: panov.as_ref().map(|h| PanovJson {
                thetas: witness_texts(rs, h),
                length: h.len(),
                d: h.d(),
                t: h.t(),
                c: h.c(),
            }),
            conclusion,
            budget: args.budget,
            convention_id: ctx.convention.id().to_string(),
        };
        println!("{}", serde_json::to_string(&payload).map_err(|e| e.to_string())?);
    } else {
        println!(
            "bound {}{} ideal \"{}\" (|phi|={}, |E|={})",
            rs.type_label(),
            rs.rank(),
            key,
            ideal.phi().card(),
            e.card()
        );
        print_search("min_length", rs, &ml);
        print_search("min_c", rs, &mc);
        match &panov {
            Some(h) => println!(
                "panov: [{}] length={} d={} t={} c={}",
                h.to_text(rs),
                h.len(),
                h.d(),
                h.t(),
                h.c()
            ),
            None => println!("panov: n/a (type {})", rs.type_label()),
        }
        match conclusion {
            Some(v) => println!("conclusion: index(q) = {v}"),
            None => println!("conclusion: none (bound does not force the index)"),
        }
    }
    Ok(0)
}

fn print_search(name: &str, rs: &RootSystem, s: &SearchOutcome) {
    let status = if s.exhaustive { "exhaustive" } else { "budget-limited" };
    match (s.value, &s.witness) {
        (Some(v), Some(h)) => println!(
            "{name} {v} ({status}), witness [{}] d={} t={} c={}",
            h.to_text(rs),
            h.d(),
            h.t(),
            h.c()
        ),
        (Some(v), None) => println!("{name} {v} ({status}), no witness recovered"),
        _ => println!("{name} absent ({status})"),
    }
}

// ---------- index ----------

fn cmd_index(args: IndexArgs) -> Result<i32, String> {
    let ctx = build_context(&args.system)?;
    let rs = &ctx.rs;
    let ideal = parse_ideal(rs, &args.ideal).map_err(|e| e.to_string())?;
    let seed = resolve_seed(args.seed)?;
    let q = build_quotient(rs, ideal.phi(), QuotientKind::BorelQuotient, &ctx.nc)
        .map_err(|e| e.to_string())?;
    let m = build_quotient(rs, ideal.phi(), QuotientKind::NilradicalQuotient, &ctx.nc)
        .map_err(|e| e.to_string())?;
    let (target_name, dim, est) = match args.target {
        Target::Q => (
            "q",
            q.dim(),
            index_of(&q, args.trials, args.coeff_bound, seed).map_err(|e| e.to_string())?,
        ),
        Target::M => (
            "m",
            m.dim(),
            index_of(&m, args.trials, args.coeff_bound, seed).map_err(|e| e.to_string())?,
        ),
        Target::Module => (
            "module",
            m.dim(),
            module_index(&q, &m, args.trials, args.coeff_bound, seed)
                .map_err(|e| e.to_string())?,
        ),
    };
    let alg_for_names = if args.target == Target::Q { &q } else { &m };
    if args.json {
        #[derive(Serialize)]
        struct IndexJson {
            type_label: String,
            rank: usize,
            ideal_generators: String,
            target: String,
            dim: usize,
            value: i64,
            certainty: String,
            samples: u32,
            coeff_bound: u64,
            seed: u64,
            convention_id: String,
            witness: Vec<String>,
        }
        let payload = IndexJson {
            type_label: rs.type_label().to_string(),
            rank: rs.rank(),
            ideal_generators: ideal.key(rs),
            target: target_name.to_string(),
            dim,
            value: est.value,
            certainty: certainty_str(est.certainty).to_string(),
            samples: est.samples,
            coeff_bound: est.coeff_bound,
            seed: est.seed,
            convention_id: ctx.convention.id().to_string(),
            witness: est.witness.values().iter().map(|v| v.to_string()).collect(),
        };
        println!("{}", serde_json::to_string(&payload).map_err(|e| e.to_string())?);
    } else {
        println!(
            "index target={} {}{} ideal \"{}\" dim={}",
            target_name,
            rs.type_label(),
            rs.rank(),
            ideal.key(rs),
            dim
        );
        println!(
            "value {} ({}) trials={} coeff_bound={} seed={} convention={}",
            est.value,
            certainty_str(est.certainty),
            est.samples,
            est.coeff_bound,
            est.seed,
            ctx.convention.id()
        );
        let support: Vec<String> = est
            .witness
            .values()
            .iter()
            .enumerate()
            .filter(|(_, v)| !num_traits::Zero::is_zero(*v))
            .map(|(i, v)| format!("{}={}", alg_for_names.basis_name(rs, i), v))
            .collect();
        println!("witness: {}", if support.is_empty() { "0".to_string() } else { support.join(" ") });
    }
    Ok(0)
}

// ---------- sweep ----------

#[derive(Serialize, Deserialize, Clone)]
struct Timestamps {
    started_epoch_s: u64,
    finished_epoch_s: u64,
}

#[derive(Serialize, Deserialize, Clone)]
struct SweepRecord {
    schema_version: u32,
    type_label: String,
    rank: usize,
    ideal_generators: String,
    dim_q: usize,
    dim_m: usize,
    min_c: Option<i64>,
    min_c_exhaustive: bool,
    min_length: Option<i64>,
    min_length_exhaustive: bool,
    panov_c: Option<i64>,
    chi_q: EstimateSummary,
    chi_m: EstimateSummary,
    chi_module: EstimateSummary,
    conjecture_ok: bool,
    timestamps: Timestamps,
    seed: u64,
    convention_id: String,
}

fn valid_ranks(t: TypeLabel) -> std::ops::RangeInclusive<usize> {
    match t {
        TypeLabel::A => 1..=usize::MAX,
        TypeLabel::B => 2..=usize::MAX,
        TypeLabel::C => 3..=usize::MAX,
        TypeLabel::D => 4..=usize::MAX,
        TypeLabel::E => 6..=8,
        TypeLabel::F => 4..=4,
        TypeLabel::G => 2..=2,
    }
}

fn cmd_sweep(args: SweepArgs) -> Result<i32, String> {
    let type_label = TypeLabel::from_str(&args.type_label).map_err(|e| e.to_string())?;
    let convention = Convention::from_str(&args.convention).map_err(|e| e.to_string())?;
    let global_seed = resolve_seed(args.seed)?;
    let valid = valid_ranks(type_label);
    let ranks: Vec<usize> = match (args.rank, args.max_rank) {
        (Some(_), Some(_)) => return Err("give --rank or --max-rank, not both".into()),
        (None, None) => return Err("give --rank or --max-rank".into()),
        (Some(r), None) => vec![r],
        (None, Some(m)) => {
            if m < *valid.start() {
                return Err(format!("type {type_label} starts at rank {}", valid.start()));
            }
            (*valid.start()..=m.min(*valid.end())).collect()
        }
    };
    let mut systems = Vec::new();
    for &r in &ranks {
        let rs = RootSystem::build(type_label, r).map_err(|e| e.to_string())?;
        if rs.num_positive_roots() > MAX_SWEEP_ROOTS {
            return Err(format!(
                "{type_label}{r} has {} positive roots, sweep guard is {MAX_SWEEP_ROOTS}",
                rs.num_positive_roots()
            ));
        }
        systems.push(rs);
    }

    // resume: collect keys already present in the output file
    let mut existing: HashSet<(usize, String)> = HashSet::new();
    if let Some(path) = &args.out {
        if path.exists() {
            let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
            for line in text.lines() {
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<SweepRecord>(line) {
                    Ok(rec)
                        if rec.schema_version == SCHEMA_VERSION
                            && rec.type_label == type_label.to_string() =>
                    {
                        existing.insert((rec.rank, rec.ideal_generators));
                    }
                    Ok(_) => {}
                    Err(_) => eprintln!("warning: skipping unparsable catalog line"),
                }
            }
        }
    }

    let writer: Mutex<Box<dyn Write + Send>> = Mutex::new(match &args.out {
        Some(path) => {
            let f = fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| e.to_string())?;
            Box::new(BufWriter::new(f))
        }
        None => Box::new(std::io::stdout()),
    });

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.max(1))
        .build()
        .map_err(|e| e.to_string())?;

    let counterexample = AtomicBool::new(false);
    let written = AtomicU64::new(0);
    let skipped = AtomicU64::new(0);

    for rs in &systems {
        let nc = rs.chevalley_constants(convention);
        let ideals = enumerate_ideals(rs);
        pool.install(|| {
            ideals
                .par_iter()
                .try_for_each(|ideal| -> Result<(), String> {
                    let key = ideal.key(rs);
                    if existing.contains(&(rs.rank(), key.clone())) {
                        skipped.fetch_add(1, Ordering::Relaxed);
                        return Ok(());
                    }
                    let record = build_record(
                        rs,
                        &nc,
                        convention,
                        ideal,
                        &key,
                        global_seed,
                        args.trials,
                        args.coeff_bound,
                        args.budget,
                    )?;
                    if !record.conjecture_ok && record.min_c_exhaustive {
                        counterexample.store(true, Ordering::Relaxed);
                        eprintln!(
                            "counterexample candidate: {}{} ideal \"{}\": chi_q={} min_c={:?}",
                            record.type_label,
                            record.rank,
                            record.ideal_generators,
                            record.chi_q.value,
                            record.min_c
                        );
                    }
                    let line = serde_json::to_string(&record).map_err(|e| e.to_string())?;
                    let mut w = writer.lock().map_err(|_| "writer poisoned".to_string())?;
                    writeln!(w, "{line}").map_err(|e| e.to_string())?;
                    w.flush().map_err(|e| e.to_string())?;
                    written.fetch_add(1, Ordering::Relaxed);
                    Ok(())
                })
        })?;
    }

    eprintln!(
        "sweep complete: {} written, {} skipped (resume), counterexamples: {}",
        written.load(Ordering::Relaxed),
        skipped.load(Ordering::Relaxed),
        if counterexample.load(Ordering::Relaxed) { "found" } else { "none" }
    );
    if args.check && counterexample.load(Ordering::Relaxed) {
        return Ok(2);
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn build_record(
    rs: &RootSystem,
    nc: &ChevalleyConstants,
    convention: Convention,
    ideal: &AdNilpotentIdeal,
    key: &str,
    global_seed: u64,
    trials: u32,
    coeff_bound: u64,
    budget: u64,
) -> Result<SweepRecord, String> {
    let started = now_epoch();
    let e = ideal.complement();
    let q = build_quotient(rs, ideal.phi(), QuotientKind::BorelQuotient, nc)
        .map_err(|e| e.to_string())?;
    let m = build_quotient(rs, ideal.phi(), QuotientKind::NilradicalQuotient, nc)
        .map_err(|e| e.to_string())?;
    let ml = min_length(rs, &e, budget).map_err(|e| e.to_string())?;
    let mc = min_c(rs, &e, budget).map_err(|e| e.to_string())?;
    let panov_c = if rs.type_label() == TypeLabel::A {
        Some(panov_sequence(rs, &e).map_err(|e| e.to_string())?.c())
    } else {
        None
    };
    let seed = derive_seed(global_seed, rs.type_label(), rs.rank(), key);
    let chi_q = index_of(&q, trials, coeff_bound, seed).map_err(|e| e.to_string())?;
    let chi_m = index_of(&m, trials, coeff_bound, seed).map_err(|e| e.to_string())?;
    let chi_module = module_index(&q, &m, trials, coeff_bound, seed).map_err(|e| e.to_string())?;
    let record = SweepRecord {
        schema_version: SCHEMA_VERSION,
        type_label: rs.type_label().to_string(),
        rank: rs.rank(),
        ideal_generators: key.to_string(),
        dim_q: q.dim(),
        dim_m: m.dim(),
        min_c: mc.value,
        min_c_exhaustive: mc.exhaustive,
        min_length: ml.value,
        min_length_exhaustive: ml.exhaustive,
        panov_c,
        chi_q: summarize(&chi_q),
        chi_m: summarize(&chi_m),
        chi_module: summarize(&chi_module),
        conjecture_ok: mc.value.map_or(true, |v| chi_q.value == v),
        timestamps: Timestamps { started_epoch_s: started, finished_epoch_s: now_epoch() },
        seed,
        convention_id: convention.id().to_string(),
    };
    // the estimates are upper-bounded by the exhaustive minima; a violation
    // is an internal error, dumped in full and aborted
    let chi_q_bad = record.min_c_exhaustive
        && record.min_c.is_some_and(|v| record.chi_q.value > v);
    let chi_m_bad = record.min_length_exhaustive
        && record.min_length.is_some_and(|v| record.chi_m.value > v);
    if chi_q_bad || chi_m_bad {
        let dump = serde_json::to_string_pretty(&record).unwrap_or_default();
        return Err(format!("bound inequality violated; offending record:\n{dump}"));
    }
    Ok(record)
}

// ---------- stability ----------

fn default_sequence(
    rs: &RootSystem,
    e: &borel_index_core::ideals::RootSubset,
    budget: u64,
) -> Result<HSequence, String> {
    if rs.type_label() == TypeLabel::A {
        panov_sequence(rs, e).map_err(|e| e.to_string())
    } else {
        let mc = min_c(rs, e, budget).map_err(|e| e.to_string())?;
        mc.witness.ok_or_else(|| "no peeling sequence found within budget".to_string())
    }
}

fn stability_form(
    rs: &RootSystem,
    alg: &QuotientAlgebra,
    e: &borel_index_core::ideals::RootSubset,
    spec: Option<&str>,
    seed: u64,
    budget: u64,
) -> Result<(HSequence, Vec<BigRational>, LinearForm), String> {
    let spec = spec.unwrap_or("random:");
    let (h, coeffs) = if let Some(rest) = spec.strip_prefix("panov:") {
        let h = panov_sequence(rs, e).map_err(|e| e.to_string())?;
        let coeffs = if rest.trim().is_empty() {
            random_coeffs(h.len(), seed)
        } else {
            parse_rational_list(rest)?
        };
        (h, coeffs)
    } else if let Some(rest) = spec.strip_prefix("random:") {
        let s = if rest.trim().is_empty() { seed } else { rest.trim().parse::<u64>().map_err(|_| format!("bad seed {rest:?}"))? };
        let h = default_sequence(rs, e, budget)?;
        let coeffs = random_coeffs(h.len(), s);
        (h, coeffs)
    } else {
        let h = default_sequence(rs, e, budget)?;
        let coeffs = if spec.trim().is_empty() {
            random_coeffs(h.len(), seed)
        } else {
            parse_rational_list(spec)?
        };
        (h, coeffs)
    };
    if coeffs.len() != h.len() {
        return Err(format!(
            "{} coefficients for a length-{} sequence",
            coeffs.len(),
            h.len()
        ));
    }
    let f = special_form(alg, &h, &coeffs).map_err(|e| e.to_string())?;
    Ok((h, coeffs, f))
}

fn random_coeffs(n: usize, seed: u64) -> Vec<BigRational> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| BigRational::from_integer(num_bigint::BigInt::from(rng.gen_range(1..=50u64))))
        .collect()
}

fn cmd_stability(args: StabilityArgs) -> Result<i32, String> {
    let ctx = build_context(&args.system)?;
    let rs = &ctx.rs;
    let ideal = parse_ideal(rs, &args.ideal).map_err(|e| e.to_string())?;
    let e = ideal.complement();
    let seed = resolve_seed(args.seed)?;
    let q = build_quotient(rs, ideal.phi(), QuotientKind::BorelQuotient, &ctx.nc)
        .map_err(|e| e.to_string())?;
    let (h, coeffs, f) = stability_form(rs, &q, &e, args.form.as_deref(), seed, args.budget)?;
    let report = is_stable(&q, &f).map_err(|e| e.to_string())?;
    if args.json {
        #[derive(Serialize)]
        struct StabilityJson {
            type_label: String,
            rank: usize,
            ideal_generators: String,
            sequence: Vec<String>,
            coefficients: Vec<String>,
            stabilizer_dim: usize,
            bracket_span_dim: usize,
            intersection_dim: usize,
            stable: bool,
            stabilizer_basis: Vec<Vec<String>>,
            convention_id: String,
        }
        let payload = StabilityJson {
            type_label: rs.type_label().to_string(),
            rank: rs.rank(),
            ideal_generators: ideal.key(rs),
            sequence: witness_texts(rs, &h),
            coefficients: coeffs.iter().map(|c| c.to_string()).collect(),
            stabilizer_dim: report.stabilizer.dim(),
            bracket_span_dim: report.bracket_span.dim(),
            intersection_dim: report.intersection_dim,
            stable: report.stable,
            stabilizer_basis: report
                .stabilizer
                .basis()
                .iter()
                .map(|v| v.iter().map(|x| x.to_string()).collect())
                .collect(),
            convention_id: ctx.convention.id().to_string(),
        };
        println!("{}", serde_json::to_string(&payload).map_err(|e| e.to_string())?);
    } else {
        println!(
            "stability {}{} ideal \"{}\" sequence [{}] coefficients [{}]",
            rs.type_label(),
            rs.rank(),
            ideal.key(rs),
            h.to_text(rs),
            coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        );
        println!(
            "stabilizer dim {} | bracket span dim {} | intersection dim {} | stable {}",
            report.stabilizer.dim(),
            report.bracket_span.dim(),
            report.intersection_dim,
            report.stable
        );
        for v in report.stabilizer.basis() {
            let support: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
                .map(|(i, x)| format!("{}={}", q.basis_name(rs, i), x))
                .collect();
            println!("stabilizer vector: {}", support.join(" "));
        }
    }
    Ok(0)
}
