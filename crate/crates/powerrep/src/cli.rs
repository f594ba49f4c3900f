//! Command-line surface: verification grids, decompositions, coefficient
//! checks, divisibility witnesses, the conjecture harness, and the backend
//! cost comparison.
//!
//! Exit codes: 0 when every check in the run passed, 1 when a mathematical
//! mismatch was found (and reported), 2 for usage errors. Reports are
//! deterministic: the same invocation (including `--seed`) produces
//! byte-identical output.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coefficients::{
    alt_sum, check_difference_form, check_quadratic_split, check_recursion_step,
    even_alt_sum_value, windowed_alt_sum,
};
use crate::conjecture::{decompose_mod3_with, run_grid};
use crate::exactnum::pow_int;
use crate::fermat::{make_witness, non_prime_failure_probe, primes_below, DEFAULT_PRIME_BOUND};
use crate::identities::{eval_consecutive, eval_mod2_with, eval_telescope, DecompositionReport};
use crate::powersum::{
    build_table_counted, double_sum_counted, triple_sum_counted, Backend, OpCounter,
};
use crate::{Error, IntRange};
use num_traits::Zero;

#[derive(Debug, Parser)]
#[command(
    name = "powerrep",
    version,
    about = "Exact nested-sum representations of integer powers: evaluate, decompose, verify"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that the identity evaluators agree with direct exponentiation
    Verify(VerifyArgs),
    /// Print the term-by-term decomposition of x^n
    Decompose(DecomposeArgs),
    /// Check the alternating reciprocal-factorial coefficient identities
    Coeffs(CoeffsArgs),
    /// Build exact divisibility witnesses for x^p - x over a prime range
    Fermat(FermatArgs),
    /// Evaluate the mod-3 form over a grid and report any counterexample
    Conjecture(ConjectureArgs),
    /// Compare bigint operation counts of the naive and table backends
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Naive,
    Table,
}

impl From<BackendArg> for Backend {
    fn from(arg: BackendArg) -> Backend {
        match arg {
            BackendArg::Naive => Backend::Naive,
            BackendArg::Table => Backend::Table,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IdentityArg {
    Mod2,
    Mod3,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Base range A..B (inclusive)
    #[arg(long, default_value = "1..50")]
    pub x: IntRange,
    /// Exponent range A..B (inclusive)
    #[arg(long, default_value = "1..12")]
    pub n: IntRange,
    #[arg(long, value_enum, default_value_t = BackendArg::Table)]
    pub backend: BackendArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Check this many randomly sampled cells instead of the full grid
    #[arg(long)]
    pub sample: Option<u64>,
    /// RNG seed for --sample
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    /// Base (positive integer)
    pub x: u64,
    /// Exponent (positive integer)
    pub n: u32,
    /// Which decomposition to print
    #[arg(long, value_enum, default_value_t = IdentityArg::Mod2)]
    pub identity: IdentityArg,
    #[arg(long, value_enum, default_value_t = BackendArg::Table)]
    pub backend: BackendArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    /// Range of s values to check, A..B (inclusive)
    #[arg(long, default_value = "1..50")]
    pub s: IntRange,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FermatArgs {
    /// Check every prime p < this bound
    #[arg(long = "p-max", default_value_t = 100)]
    pub p_max: u64,
    /// Base range A..B (inclusive)
    #[arg(long, default_value = "1..200")]
    pub x: IntRange,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConjectureArgs {
    /// Base range A..B (inclusive)
    #[arg(long, default_value = "1..40")]
    pub x: IntRange,
    /// Exponent range A..B (inclusive)
    #[arg(long, default_value = "1..15")]
    pub n: IntRange,
    #[arg(long, value_enum, default_value_t = BackendArg::Table)]
    pub backend: BackendArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Inner exponent of the summed powers
    #[arg(long, default_value_t = 5)]
    pub e: u32,
    /// Comma-separated list of sum limits
    #[arg(long, default_value = "50,100,200", value_delimiter = ',')]
    pub limits: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A finished run: the rendered report, whether a mathematical mismatch was
/// found, and where the report should go.
pub struct Execution {
    pub body: String,
    pub mismatch_found: bool,
    pub out: Option<PathBuf>,
}

/// Exit code for a finished or failed run: 0 clean, 1 mismatch reported,
/// 2 usage error.
pub fn exit_code(result: &Result<Execution, Error>) -> i32 {
    match result {
        Ok(exec) if exec.mismatch_found => 1,
        Ok(_) => 0,
        Err(_) => 2,
    }
}

pub fn execute(command: Command) -> Result<Execution, Error> {
    match command {
        Command::Verify(args) => cmd_verify(args),
        Command::Decompose(args) => cmd_decompose(args),
        Command::Coeffs(args) => cmd_coeffs(args),
        Command::Fermat(args) => cmd_fermat(args),
        Command::Conjecture(args) => cmd_conjecture(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct VerifyCellRecord {
    x: u64,
    n: u32,
    consecutive: String,
    telescope: String,
    mod2: String,
    power: String,
    agree: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct VerifySummary {
    total: u64,
    agree: u64,
    disagree: u64,
}

#[derive(Debug, Serialize, Deserialize)]
struct VerifyDoc {
    x_range: IntRange,
    n_range: IntRange,
    backend: Backend,
    mode: String,
    seed: Option<u64>,
    cells: Vec<VerifyCellRecord>,
    summary: VerifySummary,
}

fn verify_cell(x: u64, n: u32, backend: Backend) -> VerifyCellRecord {
    let consecutive = eval_consecutive(x, n);
    let telescope = eval_telescope(x, n);
    let mod2 = eval_mod2_with(x, n, backend).total;
    let power = pow_int(&BigInt::from(x), n);
    let agree = consecutive == power && telescope == power && mod2 == power;
    VerifyCellRecord {
        x,
        n,
        consecutive: consecutive.to_string(),
        telescope: telescope.to_string(),
        mod2: mod2.to_string(),
        power: power.to_string(),
        agree,
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<Execution, Error> {
    args.x.require_min(1, "--x")?;
    args.n.require_min(1, "--n")?;
    require_exponent_range(&args.n)?;
    let backend = Backend::from(args.backend);

    let (mode, seed, cells) = match args.sample {
        None => {
            let mut cells = Vec::new();
            for n in args.n.iter() {
                for x in args.x.iter() {
                    cells.push(verify_cell(x, n as u32, backend));
                }
            }
            ("grid".to_string(), None, cells)
        }
        Some(count) => {
            if count == 0 {
                return Err(Error::InvalidRange {
                    text: "0".to_string(),
                    reason: "--sample must be at least 1".to_string(),
                });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let cells = (0..count)
                .map(|_| {
                    let x = rng.random_range(args.x.lo..=args.x.hi);
                    let n = rng.random_range(args.n.lo..=args.n.hi) as u32;
                    verify_cell(x, n, backend)
                })
                .collect();
            ("sample".to_string(), Some(args.seed), cells)
        }
    };

    let disagree = cells.iter().filter(|c| !c.agree).count() as u64;
    let doc = VerifyDoc {
        x_range: args.x,
        n_range: args.n,
        backend,
        mode,
        seed,
        summary: VerifySummary {
            total: cells.len() as u64,
            agree: cells.len() as u64 - disagree,
            disagree,
        },
        cells,
    };

    let body = match args.format {
        Format::Json => to_json(&doc),
        Format::Csv => {
            let mut out = String::from("x,n,consecutive,telescope,mod2,power,agree\n");
            for c in &doc.cells {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    c.x, c.n, c.consecutive, c.telescope, c.mod2, c.power, c.agree
                );
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "identity equivalence: x in {}, n in {} (backend {}, {})\n",
                doc.x_range,
                doc.n_range,
                doc.backend.name(),
                match doc.seed {
                    Some(s) => format!("{} sampled cells, seed {s}", doc.summary.total),
                    None => "full grid".to_string(),
                }
            );
            let _ = writeln!(out, "cells checked: {}", doc.summary.total);
            for c in doc.cells.iter().filter(|c| !c.agree) {
                let _ = writeln!(
                    out,
                    "DISAGREE x={} n={}: consecutive={} telescope={} mod2={} power={}",
                    c.x, c.n, c.consecutive, c.telescope, c.mod2, c.power
                );
            }
            if doc.summary.disagree == 0 {
                out.push_str("all identities agree with direct exponentiation\n");
            } else {
                let _ = writeln!(out, "disagreements: {}", doc.summary.disagree);
            }
            out
        }
    };

    Ok(Execution {
        body,
        mismatch_found: disagree > 0,
        out: args.out,
    })
}

// ---------------------------------------------------------------------------
// decompose
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct TermRecord {
    label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    coefficient: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inner_exponent: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inner_sum: Option<String>,
    value: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct DecomposeDoc {
    identity: String,
    x: u64,
    n: u32,
    m: u32,
    terms: Vec<TermRecord>,
    total: String,
    matches_power: bool,
}

fn decompose_doc(report: &DecompositionReport, x: u64, m: u32) -> DecomposeDoc {
    let matches_power = report.total == pow_int(&report.base, report.exponent);
    DecomposeDoc {
        identity: report.identity.name().to_string(),
        x,
        n: report.exponent,
        m,
        terms: report
            .terms
            .iter()
            .map(|t| TermRecord {
                label: t.label.clone(),
                coefficient: t.detail.as_ref().map(|d| d.coefficient.to_string()),
                inner_exponent: t.detail.as_ref().map(|d| d.inner_exponent),
                inner_sum: t.detail.as_ref().map(|d| d.inner_sum.to_string()),
                value: t.value.to_string(),
            })
            .collect(),
        total: report.total.to_string(),
        matches_power,
    }
}

fn cmd_decompose(args: DecomposeArgs) -> Result<Execution, Error> {
    if args.x < 1 || args.n < 1 {
        return Err(Error::InvalidRange {
            text: format!("{} {}", args.x, args.n),
            reason: "decompose requires x >= 1 and n >= 1".to_string(),
        });
    }
    let backend = Backend::from(args.backend);
    let (report, m) = match args.identity {
        IdentityArg::Mod2 => (
            eval_mod2_with(args.x, args.n, backend),
            crate::identities::mod2_term_count(args.n),
        ),
        IdentityArg::Mod3 => (
            decompose_mod3_with(args.x, args.n, backend),
            crate::conjecture::term_count(args.n),
        ),
    };
    let doc = decompose_doc(&report, args.x, m);

    let body = match args.format {
        Format::Json => to_json(&doc),
        Format::Csv => {
            let mut out = String::from("label,coefficient,inner_exponent,inner_sum,value\n");
            for t in &doc.terms {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    t.label,
                    t.coefficient.as_deref().unwrap_or(""),
                    t.inner_exponent.map(|e| e.to_string()).unwrap_or_default(),
                    t.inner_sum.as_deref().unwrap_or(""),
                    t.value
                );
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "{} decomposition: x = {}, n = {}, m = {}\n",
                doc.identity, doc.x, doc.n, doc.m
            );
            for t in &doc.terms {
                match (&t.coefficient, &t.inner_sum, t.inner_exponent) {
                    (Some(c), Some(s), Some(e)) => {
                        let _ = writeln!(
                            out,
                            "  {:<6} {} * {} = {}   (inner exponent {})",
                            t.label, c, s, t.value, e
                        );
                    }
                    _ => {
                        let _ = writeln!(out, "  {:<6} {}", t.label, t.value);
                    }
                }
            }
            let _ = writeln!(out, "{}", report.addends_line());
            let _ = writeln!(
                out,
                "total matches direct exponentiation: {}",
                if doc.matches_power { "yes" } else { "NO" }
            );
            out
        }
    };

    Ok(Execution {
        body,
        mismatch_found: !doc.matches_power,
        out: args.out,
    })
}

// ---------------------------------------------------------------------------
// coeffs
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct CoeffRow {
    s: u32,
    odd_sum_zero: bool,
    even_sum_matches: bool,
    recursion_step: bool,
    quadratic_split: bool,
    difference_form: bool,
    window_stable: bool,
}

impl CoeffRow {
    fn ok(&self) -> bool {
        self.odd_sum_zero
            && self.even_sum_matches
            && self.recursion_step
            && self.quadratic_split
            && self.difference_form
            && self.window_stable
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CoeffsDoc {
    s_range: IntRange,
    rows: Vec<CoeffRow>,
    summary: CoeffsSummary,
}

#[derive(Debug, Serialize, Deserialize)]
struct CoeffsSummary {
    total: u64,
    failures: u64,
}

fn cmd_coeffs(args: CoeffsArgs) -> Result<Execution, Error> {
    args.s.require_min(1, "--s")?;
    let rows: Vec<CoeffRow> = args
        .s
        .iter()
        .map(|s| {
            let s = s as u32;
            CoeffRow {
                s,
                odd_sum_zero: alt_sum(2 * s + 1).is_zero(),
                even_sum_matches: alt_sum(2 * s) == even_alt_sum_value(s),
                recursion_step: check_recursion_step(s),
                quadratic_split: check_quadratic_split(s),
                difference_form: check_difference_form(s),
                window_stable: (0..=s).all(|t| windowed_alt_sum(s, t) == windowed_alt_sum(s, t + 1)),
            }
        })
        .collect();
    let failures = rows.iter().filter(|r| !r.ok()).count() as u64;
    let doc = CoeffsDoc {
        s_range: args.s,
        summary: CoeffsSummary {
            total: rows.len() as u64,
            failures,
        },
        rows,
    };

    let body = match args.format {
        Format::Json => to_json(&doc),
        Format::Csv => {
            let mut out = String::from(
                "s,odd_sum_zero,even_sum_matches,recursion_step,quadratic_split,difference_form,window_stable\n",
            );
            for r in &doc.rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.s,
                    r.odd_sum_zero,
                    r.even_sum_matches,
                    r.recursion_step,
                    r.quadratic_split,
                    r.difference_form,
                    r.window_stable
                );
            }
            out
        }
        Format::Text => {
            let mut out = format!("coefficient identities: s in {}\n", doc.s_range);
            for r in doc.rows.iter().filter(|r| !r.ok()) {
                let _ = writeln!(
                    out,
                    "FAIL s={}: odd_zero={} even_matches={} recursion={} quadratic={} difference={} window={}",
                    r.s,
                    r.odd_sum_zero,
                    r.even_sum_matches,
                    r.recursion_step,
                    r.quadratic_split,
                    r.difference_form,
                    r.window_stable
                );
            }
            let _ = writeln!(out, "rows checked: {}", doc.summary.total);
            if doc.summary.failures == 0 {
                out.push_str("all coefficient identities hold exactly\n");
            } else {
                let _ = writeln!(out, "failures: {}", doc.summary.failures);
            }
            out
        }
    };

    Ok(Execution {
        body,
        mismatch_found: failures > 0,
        out: args.out,
    })
}

// ---------------------------------------------------------------------------
// fermat
// ---------------------------------------------------------------------------

const NEGATIVE_CONTROL_COMPOSITES: [u64; 5] = [4, 6, 8, 9, 10];

#[derive(Debug, Serialize, Deserialize)]
struct FermatPrimeRow {
    p: u64,
    cells: u64,
    all_divisible: bool,
    all_witnesses_match: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct FermatControlRow {
    p: u64,
    failing_indices: Vec<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct FermatDoc {
    p_max: u64,
    x_range: IntRange,
    primes: Vec<FermatPrimeRow>,
    controls: Vec<FermatControlRow>,
    summary: FermatSummary,
}

#[derive(Debug, Serialize, Deserialize)]
struct FermatSummary {
    primes: u64,
    cells: u64,
    failures: u64,
    controls_nonempty: bool,
}

fn cmd_fermat(args: FermatArgs) -> Result<Execution, Error> {
    args.x.require_min(1, "--x")?;
    if args.p_max < 3 || args.p_max > DEFAULT_PRIME_BOUND {
        return Err(Error::InvalidRange {
            text: args.p_max.to_string(),
            reason: format!("--p-max must be in 3..={DEFAULT_PRIME_BOUND}"),
        });
    }

    let mut primes = Vec::new();
    let mut failures = 0u64;
    for p in primes_below(args.p_max) {
        let mut all_divisible = true;
        let mut all_witnesses_match = true;
        for x in args.x.iter() {
            let witness = make_witness(p, x)?;
            let direct = pow_int(&BigInt::from(x), p as u32) - BigInt::from(x);
            let reconstructed = BigInt::from(p) * &witness.quotient;
            use num_integer::Integer;
            if !direct.mod_floor(&BigInt::from(p)).is_zero() {
                all_divisible = false;
            }
            if reconstructed != direct {
                all_witnesses_match = false;
            }
        }
        if !all_divisible || !all_witnesses_match {
            failures += 1;
        }
        primes.push(FermatPrimeRow {
            p,
            cells: args.x.len(),
            all_divisible,
            all_witnesses_match,
        });
    }

    let controls: Vec<FermatControlRow> = NEGATIVE_CONTROL_COMPOSITES
        .iter()
        .map(|&p| {
            Ok(FermatControlRow {
                p,
                failing_indices: non_prime_failure_probe(p)?,
            })
        })
        .collect::<Result<_, Error>>()?;
    let controls_nonempty = controls.iter().all(|c| !c.failing_indices.is_empty());

    let doc = FermatDoc {
        p_max: args.p_max,
        x_range: args.x,
        summary: FermatSummary {
            primes: primes.len() as u64,
            cells: primes.len() as u64 * args.x.len(),
            failures,
            controls_nonempty,
        },
        primes,
        controls,
    };

    let body = match args.format {
        Format::Json => to_json(&doc),
        Format::Csv => {
            let mut out =
                String::from("kind,p,cells,all_divisible,all_witnesses_match,failing_indices\n");
            for r in &doc.primes {
                let _ = writeln!(
                    out,
                    "prime,{},{},{},{},",
                    r.p, r.cells, r.all_divisible, r.all_witnesses_match
                );
            }
            for c in &doc.controls {
                let idx: Vec<String> = c.failing_indices.iter().map(u64::to_string).collect();
                let _ = writeln!(out, "control,{},,,,{}", c.p, idx.join(";"));
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "divisibility witnesses: primes p < {}, x in {}\n",
                doc.p_max, doc.x_range
            );
            for r in doc.primes.iter().filter(|r| !r.all_divisible || !r.all_witnesses_match) {
                let _ = writeln!(
                    out,
                    "FAIL p={}: divisible={} witnesses={}",
                    r.p, r.all_divisible, r.all_witnesses_match
                );
            }
            let _ = writeln!(
                out,
                "primes checked: {} ({} cells)",
                doc.summary.primes, doc.summary.cells
            );
            for c in &doc.controls {
                let idx: Vec<String> = c.failing_indices.iter().map(u64::to_string).collect();
                let _ = writeln!(
                    out,
                    "composite {}: exact division fails at i = [{}]",
                    c.p,
                    idx.join(", ")
                );
            }
            if doc.summary.failures == 0 && controls_nonempty {
                out.push_str("every x^p - x is divisible by p; all witnesses reconstruct exactly\n");
            } else {
                let _ = writeln!(out, "failures: {}", doc.summary.failures);
            }
            out
        }
    };

    Ok(Execution {
        body,
        mismatch_found: failures > 0 || !controls_nonempty,
        out: args.out,
    })
}

// ---------------------------------------------------------------------------
// conjecture
// ---------------------------------------------------------------------------

fn cmd_conjecture(args: ConjectureArgs) -> Result<Execution, Error> {
    args.x.require_min(1, "--x")?;
    args.n.require_min(1, "--n")?;
    require_exponent_range(&args.n)?;
    let report = run_grid(args.x, args.n, Backend::from(args.backend));
    let doc = report.doc();

    let body = match args.format {
        Format::Json => doc.to_json_string(),
        Format::Csv => doc.to_csv_string(),
        Format::Text => {
            let mut out = format!(
                "mod3 grid: x in {}, n in {} (backend {})\n",
                doc.x_range,
                doc.n_range,
                doc.backend.name()
            );
            let _ = writeln!(
                out,
                "cells: {}  match: {}  mismatch: {}",
                doc.summary.total, doc.summary.matches, doc.summary.mismatch
            );
            for c in &doc.counterexamples {
                let _ = writeln!(
                    out,
                    "MISMATCH x={} n={}: lhs={} rhs={} residual={} tail={}",
                    c.x, c.n, c.lhs, c.rhs, c.residual, c.tail
                );
            }
            if doc.counterexamples.is_empty() {
                out.push_str("no counterexamples found\n");
            }
            out
        }
    };

    Ok(Execution {
        body,
        mismatch_found: report.summary.mismatch > 0,
        out: args.out,
    })
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct BenchRow {
    limit: u64,
    sum: String,
    naive_adds: u64,
    naive_muls: u64,
    table_adds: u64,
    table_muls: u64,
    equal: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct BenchDoc {
    e: u32,
    limits: Vec<u64>,
    rows: Vec<BenchRow>,
}

fn cmd_bench(args: BenchArgs) -> Result<Execution, Error> {
    if args.limits.is_empty() {
        return Err(Error::InvalidRange {
            text: String::new(),
            reason: "--limits needs at least one value".to_string(),
        });
    }

    let mut rows = Vec::new();
    for &limit in &args.limits {
        let mut table_ops = OpCounter::new();
        let table = build_table_counted(args.e, limit, &mut table_ops);

        let mut naive_double = OpCounter::new();
        let double = double_sum_counted(args.e, limit, &mut naive_double);
        rows.push(BenchRow {
            limit,
            sum: "double".to_string(),
            naive_adds: naive_double.big_int_adds,
            naive_muls: naive_double.big_int_muls,
            table_adds: table_ops.big_int_adds,
            table_muls: table_ops.big_int_muls,
            equal: &double == table.double(limit),
        });

        let mut naive_triple = OpCounter::new();
        let triple = triple_sum_counted(args.e, limit, &mut naive_triple);
        rows.push(BenchRow {
            limit,
            sum: "triple".to_string(),
            naive_adds: naive_triple.big_int_adds,
            naive_muls: naive_triple.big_int_muls,
            table_adds: table_ops.big_int_adds,
            table_muls: table_ops.big_int_muls,
            equal: &triple == table.triple(limit),
        });
    }

    let all_equal = rows.iter().all(|r| r.equal);
    let doc = BenchDoc {
        e: args.e,
        limits: args.limits,
        rows,
    };

    let body = match args.format {
        Format::Json => to_json(&doc),
        Format::Csv => {
            let mut out =
                String::from("limit,sum,naive_adds,naive_muls,table_adds,table_muls,equal\n");
            for r in &doc.rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.limit, r.sum, r.naive_adds, r.naive_muls, r.table_adds, r.table_muls, r.equal
                );
            }
            out
        }
        Format::Text => {
            let mut out = format!("backend op counts: inner exponent e = {}\n", doc.e);
            let _ = writeln!(
                out,
                "{:>8} {:>7} {:>12} {:>12} {:>12} {:>12} {:>6}",
                "L", "sum", "naive.adds", "naive.muls", "table.adds", "table.muls", "equal"
            );
            for r in &doc.rows {
                let _ = writeln!(
                    out,
                    "{:>8} {:>7} {:>12} {:>12} {:>12} {:>12} {:>6}",
                    r.limit,
                    r.sum,
                    r.naive_adds,
                    r.naive_muls,
                    r.table_adds,
                    r.table_muls,
                    if r.equal { "yes" } else { "NO" }
                );
            }
            out
        }
    };

    Ok(Execution {
        body,
        mismatch_found: !all_equal,
        out: args.out,
    })
}

// ---------------------------------------------------------------------------

fn require_exponent_range(n: &IntRange) -> Result<(), Error> {
    if n.hi > u64::from(u32::MAX) {
        return Err(Error::InvalidRange {
            text: n.to_string(),
            reason: format!("exponents above {} are not supported", u32::MAX),
        });
    }
    Ok(())
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("report serializes");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjecture::{GridReport, GridSummary, Verdict};

    fn run(command: Command) -> Execution {
        execute(command).unwrap()
    }

    #[test]
    fn verify_single_cell_json_carries_values() {
        let exec = run(Command::Verify(VerifyArgs {
            x: IntRange::new(5, 5),
            n: IntRange::new(7, 7),
            backend: BackendArg::Table,
            format: Format::Json,
            out: None,
            sample: None,
            seed: 0,
        }));
        assert!(!exec.mismatch_found);
        let doc: VerifyDoc = serde_json::from_str(&exec.body).unwrap();
        assert_eq!(doc.cells.len(), 1);
        assert_eq!(doc.cells[0].power, "78125");
        assert_eq!(doc.cells[0].consecutive, "78125");
        assert!(doc.cells[0].agree);
    }

    #[test]
    fn verify_rejects_zero_base_range() {
        let result = execute(Command::Verify(VerifyArgs {
            x: IntRange::new(0, 3),
            n: IntRange::new(1, 2),
            backend: BackendArg::Table,
            format: Format::Text,
            out: None,
            sample: None,
            seed: 0,
        }));
        assert!(matches!(result, Err(Error::InvalidRange { .. })));
        assert_eq!(exit_code(&result), 2);
    }

    #[test]
    fn verify_sampling_is_seed_deterministic() {
        let make = || {
            run(Command::Verify(VerifyArgs {
                x: IntRange::new(1, 30),
                n: IntRange::new(1, 8),
                backend: BackendArg::Table,
                format: Format::Json,
                out: None,
                sample: Some(25),
                seed: 42,
            }))
            .body
        };
        assert_eq!(make(), make());
    }

    #[test]
    fn decompose_text_golden() {
        let exec = run(Command::Decompose(DecomposeArgs {
            x: 5,
            n: 7,
            identity: IdentityArg::Mod2,
            backend: BackendArg::Table,
            format: Format::Text,
            out: None,
        }));
        assert!(exec.body.contains("5 + 67620 + 10220 + 280 = 78125"));
        assert!(!exec.mismatch_found);
    }

    #[test]
    fn decompose_exponent_one_is_just_x() {
        let exec = run(Command::Decompose(DecomposeArgs {
            x: 9,
            n: 1,
            identity: IdentityArg::Mod2,
            backend: BackendArg::Table,
            format: Format::Text,
            out: None,
        }));
        assert!(exec.body.contains("9 = 9"));
    }

    #[test]
    fn coeffs_all_pass() {
        let exec = run(Command::Coeffs(CoeffsArgs {
            s: IntRange::new(1, 20),
            format: Format::Text,
            out: None,
        }));
        assert!(!exec.mismatch_found);
        assert!(exec.body.contains("all coefficient identities hold exactly"));
    }

    #[test]
    fn fermat_small_run() {
        let exec = run(Command::Fermat(FermatArgs {
            p_max: 20,
            x: IntRange::new(1, 25),
            format: Format::Text,
            out: None,
        }));
        assert!(!exec.mismatch_found);
        assert!(exec.body.contains("composite 4: exact division fails at i = [2]"));
    }

    #[test]
    fn conjecture_exit_is_clean_on_default_style_grid() {
        let exec = run(Command::Conjecture(ConjectureArgs {
            x: IntRange::new(1, 10),
            n: IntRange::new(1, 8),
            backend: BackendArg::Table,
            format: Format::Text,
            out: None,
        }));
        assert!(!exec.mismatch_found);
        assert!(exec.body.contains("no counterexamples found"));
    }

    #[test]
    fn bench_reports_equal_results() {
        let exec = run(Command::Bench(BenchArgs {
            e: 5,
            limits: vec![0, 10, 20],
            format: Format::Csv,
            out: None,
        }));
        assert!(!exec.mismatch_found);
        let lines: Vec<&str> = exec.body.lines().collect();
        assert_eq!(lines.len(), 1 + 6);
        // L = 0: empty sums, zero counts
        assert_eq!(lines[1], "0,double,0,0,0,0,true");
    }

    #[test]
    fn json_reports_roundtrip_byte_identically() {
        let verify = run(Command::Verify(VerifyArgs {
            x: IntRange::new(1, 6),
            n: IntRange::new(1, 5),
            backend: BackendArg::Table,
            format: Format::Json,
            out: None,
            sample: None,
            seed: 0,
        }));
        let doc: VerifyDoc = serde_json::from_str(&verify.body).unwrap();
        assert_eq!(to_json(&doc), verify.body);

        let decompose = run(Command::Decompose(DecomposeArgs {
            x: 5,
            n: 7,
            identity: IdentityArg::Mod3,
            backend: BackendArg::Table,
            format: Format::Json,
            out: None,
        }));
        let doc: DecomposeDoc = serde_json::from_str(&decompose.body).unwrap();
        assert_eq!(to_json(&doc), decompose.body);

        let coeffs = run(Command::Coeffs(CoeffsArgs {
            s: IntRange::new(1, 8),
            format: Format::Json,
            out: None,
        }));
        let doc: CoeffsDoc = serde_json::from_str(&coeffs.body).unwrap();
        assert_eq!(to_json(&doc), coeffs.body);

        let fermat = run(Command::Fermat(FermatArgs {
            p_max: 15,
            x: IntRange::new(1, 10),
            format: Format::Json,
            out: None,
        }));
        let doc: FermatDoc = serde_json::from_str(&fermat.body).unwrap();
        assert_eq!(to_json(&doc), fermat.body);

        let bench = run(Command::Bench(BenchArgs {
            e: 3,
            limits: vec![5, 10],
            format: Format::Json,
            out: None,
        }));
        let doc: BenchDoc = serde_json::from_str(&bench.body).unwrap();
        assert_eq!(to_json(&doc), bench.body);
    }

    #[test]
    fn exit_code_mapping() {
        let ok = Ok(Execution {
            body: String::new(),
            mismatch_found: false,
            out: None,
        });
        assert_eq!(exit_code(&ok), 0);

        let mismatch = Ok(Execution {
            body: String::new(),
            mismatch_found: true,
            out: None,
        });
        assert_eq!(exit_code(&mismatch), 1);

        let usage: Result<Execution, Error> = Err(Error::ZeroBase);
        assert_eq!(exit_code(&usage), 2);
    }

    #[test]
    fn synthetic_mismatch_grid_maps_to_exit_one() {
        // No honest input produces a mod-3 mismatch on tested ranges, so the
        // reporting path is driven with a hand-built report.
        let mut cell = crate::conjecture::eval_mod3_rhs(3, 4);
        cell.rhs += 1;
        cell.verdict = Verdict::Mismatch;
        let report = GridReport {
            x_range: IntRange::new(3, 3),
            n_range: IntRange::new(4, 4),
            backend: Backend::Table,
            counterexamples: vec![cell.clone()],
            cells: vec![cell],
            summary: GridSummary {
                total: 1,
                matches: 0,
                mismatch: 1,
            },
        };
        let doc = report.doc();
        assert_eq!(doc.counterexamples.len(), 1);
        let exec = Execution {
            body: doc.to_json_string(),
            mismatch_found: report.summary.mismatch > 0,
            out: None,
        };
        assert_eq!(exit_code(&Ok(exec)), 1);
    }
}
