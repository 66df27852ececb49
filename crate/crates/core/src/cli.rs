//! Command-line front end.
//!
//! All commands write to caller-supplied streams and return a process exit
//! code, so they can be driven in-process by tests.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cascade::{CascadeState, FloatCascade};
use crate::coeffs::{
    coefficient_polynomials, coefficients_closed, coefficients_stirling, CoefficientSet,
};
use crate::costmodel::{self, complexity_table, OpCount};
use crate::exactmath::{
    appendix_identity_lhs, appendix_identity_rhs, binomial, pow, rising_factorial, stirling2,
    ExactInt,
};
use crate::oracle::direct_sum;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EMPTY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "powersum",
    version,
    about = "Time-index powered weighted sums via cascaded accumulators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute sum_n n^K v[n] for each requested K in one pass over the samples
    Moment(MomentArgs),
    /// Print the combination coefficients c_1..c_{K+1} for a concrete K and N
    Coeffs(CoeffsArgs),
    /// Print the coefficients as polynomials in N for every K up to --kmax
    Table(TableArgs),
    /// Emit operation counts of the cascade and the addition-chain baseline
    Complexity(ComplexityArgs),
    /// Run randomized oracle-equivalence and identity checks
    Selfcheck(SelfcheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Args)]
pub struct MomentArgs {
    /// Power K (repeatable)
    #[arg(short = 'K', long = "power", required = true)]
    pub powers: Vec<usize>,
    /// Sample file, one integer per line (default: standard input)
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Expected sample count, checked at end of stream
    #[arg(short = 'N', long = "length", value_parser = clap::value_parser!(u64).range(1..))]
    pub len: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Use the double-precision cascade (results are not exact)
    #[arg(long)]
    pub float: bool,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[arg(short = 'K', long = "power")]
    pub power: usize,
    #[arg(short = 'N', long = "length", value_parser = clap::value_parser!(u64).range(1..))]
    pub len: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Largest power listed
    #[arg(long, default_value_t = 5)]
    pub kmax: usize,
}

#[derive(Debug, Args)]
pub struct ComplexityArgs {
    #[arg(long = "Ks", value_delimiter = ',', default_values_t = vec![2usize, 4, 7])]
    pub powers: Vec<usize>,
    #[arg(long = "Ns", value_delimiter = ',', default_values_t = vec![1u64, 2, 5, 10, 20, 50, 100, 200, 500, 1000])]
    pub lens: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SelfcheckArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random sequences per (K, N) pair
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    /// Perturb c_1 to exercise the failure path
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

/// Dispatches a parsed command. `stdin` is only read by `moment` without
/// `--input`.
pub fn run<R: BufRead, W: Write, E: Write>(cli: Cli, stdin: R, mut out: W, mut err: E) -> i32 {
    let result = match cli.command {
        Command::Moment(args) => match &args.input {
            Some(path) => match File::open(path) {
                Ok(f) => cmd_moment(&args, BufReader::new(f), &mut out, &mut err),
                Err(e) => {
                    let _ = writeln!(err, "error: cannot open {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            },
            None => cmd_moment(&args, stdin, &mut out, &mut err),
        },
        Command::Coeffs(args) => cmd_coeffs(&args, &mut out),
        Command::Table(args) => cmd_table(args.kmax, &mut out).map(|_| EXIT_OK),
        Command::Complexity(args) => cmd_complexity(&args, &mut out),
        Command::Selfcheck(args) => cmd_selfcheck(&args, &mut out),
    };
    match result {
        Ok(code) => code,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Reads samples one line at a time, reusing a single line buffer. Blank
/// lines and lines starting with `#` are skipped.
pub struct SampleReader<R> {
    reader: R,
    line: String,
    line_no: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampleError {
    Io(String),
    Parse { line: usize, text: String },
}

impl std::fmt::Display for SampleError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SampleError::Io(e) => write!(f, "read error: {e}"),
            SampleError::Parse { line, text } => {
                write!(f, "line {line}: cannot parse sample {text:?}")
            }
        }
    }
}

impl<R: BufRead> SampleReader<R> {
    pub fn new(reader: R) -> Self {
        Self {
            reader,
            line: String::new(),
            line_no: 0,
        }
    }

    /// Next sample parsed as `T`, or `None` at end of stream.
    pub fn next_sample<T: FromStr>(&mut self) -> Option<Result<T, SampleError>> {
        loop {
            self.line.clear();
            match self.reader.read_line(&mut self.line) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => return Some(Err(SampleError::Io(e.to_string()))),
            }
            self.line_no += 1;
            let text = self.line.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            return Some(text.parse().map_err(|_| SampleError::Parse {
                line: self.line_no,
                text: text.to_owned(),
            }));
        }
    }
}

#[derive(Serialize)]
struct MomentResult {
    #[serde(rename = "K")]
    power: usize,
    #[serde(rename = "S")]
    sum: String,
    ops: OpCount,
}

#[derive(Serialize)]
struct MomentReport {
    #[serde(rename = "N")]
    len: u64,
    results: Vec<MomentResult>,
}

#[derive(Serialize)]
struct FloatResult {
    #[serde(rename = "K")]
    power: usize,
    #[serde(rename = "S")]
    sum: f64,
}

#[derive(Serialize)]
struct FloatReport {
    #[serde(rename = "N")]
    len: u64,
    exact: bool,
    warning: &'static str,
    results: Vec<FloatResult>,
}

const FLOAT_WARNING: &str =
    "double-precision cascade: results may be inexact once registers exceed 2^53";

fn cmd_moment<R: BufRead, W: Write, E: Write>(
    args: &MomentArgs,
    input: R,
    out: &mut W,
    err: &mut E,
) -> io::Result<i32> {
    let max_power = *args
        .powers
        .iter()
        .max()
        .expect("clap requires at least one power");
    if args.float {
        return cmd_moment_float(args, max_power, input, out, err);
    }
    let mut samples = SampleReader::new(input);
    let mut cascade = CascadeState::new(max_power);
    while let Some(sample) = samples.next_sample::<ExactInt>() {
        match sample {
            Ok(v) => cascade.push(&v),
            Err(e) => {
                writeln!(err, "error: {e}")?;
                return Ok(EXIT_USAGE);
            }
        }
    }
    let len = cascade.samples_seen();
    if let Some(code) = check_len(args.len, len, err)? {
        return Ok(code);
    }
    let results: Vec<MomentResult> = args
        .powers
        .iter()
        .map(|&p| {
            let (sum, ops) = cascade.moment_counted(p).expect("power and length checked");
            MomentResult {
                power: p,
                sum: sum.to_string(),
                ops,
            }
        })
        .collect();
    match args.format {
        Format::Json => {
            serde_json::to_writer(&mut *out, &MomentReport { len, results })?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "K,N,S,general_mults,constant_mults,additions")?;
            for r in &results {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.power, len, r.sum, r.ops.general_mults, r.ops.constant_mults, r.ops.additions
                )?;
            }
        }
        Format::Plain => {
            writeln!(out, "N = {len}")?;
            for r in &results {
                writeln!(out, "K = {}: S = {}", r.power, r.sum)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn check_len<E: Write>(declared: Option<u64>, seen: u64, err: &mut E) -> io::Result<Option<i32>> {
    if seen == 0 {
        writeln!(
            err,
            "error: empty input; the weighted sum is undefined for N = 0"
        )?;
        return Ok(Some(EXIT_EMPTY));
    }
    if let Some(n) = declared.filter(|&n| n != seen) {
        writeln!(
            err,
            "error: declared N = {n} but the stream held {seen} samples"
        )?;
        return Ok(Some(EXIT_USAGE));
    }
    Ok(None)
}

fn cmd_moment_float<R: BufRead, W: Write, E: Write>(
    args: &MomentArgs,
    max_power: usize,
    input: R,
    out: &mut W,
    err: &mut E,
) -> io::Result<i32> {
    writeln!(err, "warning: {FLOAT_WARNING}")?;
    let mut samples = SampleReader::new(input);
    let mut cascade = FloatCascade::new(max_power);
    while let Some(sample) = samples.next_sample::<f64>() {
        match sample {
            Ok(v) => cascade.push(v),
            Err(e) => {
                writeln!(err, "error: {e}")?;
                return Ok(EXIT_USAGE);
            }
        }
    }
    let len = cascade.samples_seen();
    if let Some(code) = check_len(args.len, len, err)? {
        return Ok(code);
    }
    let results: Vec<FloatResult> = args
        .powers
        .iter()
        .map(|&p| FloatResult {
            power: p,
            sum: cascade.moment(p).expect("power and length checked"),
        })
        .collect();
    match args.format {
        Format::Json => {
            let report = FloatReport {
                len,
                exact: false,
                warning: FLOAT_WARNING,
                results,
            };
            serde_json::to_writer(&mut *out, &report)?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "K,N,S")?;
            for r in &results {
                writeln!(out, "{},{},{}", r.power, len, r.sum)?;
            }
        }
        Format::Plain => {
            writeln!(out, "N = {len}")?;
            for r in &results {
                writeln!(out, "K = {}: S = {}", r.power, r.sum)?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CoeffsReport {
    #[serde(rename = "K")]
    power: usize,
    #[serde(rename = "N")]
    len: u64,
    coeffs: Vec<String>,
    unique_on_grid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
}

const NON_UNIQUE_NOTE: &str =
    "N < K + 1: these coefficients are valid but not the only ones reproducing n^K on n = 0..N-1";

fn cmd_coeffs<W: Write>(args: &CoeffsArgs, out: &mut W) -> io::Result<i32> {
    let set = match coefficients_closed(args.power, args.len) {
        Ok(set) => set,
        Err(e) => return Err(io::Error::new(io::ErrorKind::InvalidInput, e.to_string())),
    };
    let unique = set.is_unique_on_grid();
    let note = (!unique).then_some(NON_UNIQUE_NOTE);
    let coeffs: Vec<String> = set.coeffs().iter().map(ToString::to_string).collect();
    match args.format {
        Format::Json => {
            let report = CoeffsReport {
                power: args.power,
                len: args.len,
                coeffs,
                unique_on_grid: unique,
                note,
            };
            serde_json::to_writer(&mut *out, &report)?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "k,c_k")?;
            for (i, c) in coeffs.iter().enumerate() {
                writeln!(out, "{},{c}", i + 1)?;
            }
        }
        Format::Plain => {
            for (i, c) in coeffs.iter().enumerate() {
                writeln!(out, "c_{} = {c}", i + 1)?;
            }
            if let Some(note) = note {
                writeln!(out, "note: {note}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// Tab-separated table of `c_k(N)` for `K = 0..=kmax`, one row per `K`.
pub fn cmd_table<W: Write>(kmax: usize, out: &mut W) -> io::Result<()> {
    write!(out, "K")?;
    for k in 1..=kmax + 1 {
        write!(out, "\tc_{k}(N)")?;
    }
    writeln!(out)?;
    for power in 0..=kmax {
        write!(out, "{power}")?;
        for p in coefficient_polynomials(power) {
            write!(out, "\t{p}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn cmd_complexity<W: Write>(args: &ComplexityArgs, out: &mut W) -> io::Result<i32> {
    let reports = complexity_table(&args.powers, &args.lens);
    match args.format {
        Format::Json => {
            serde_json::to_writer(&mut *out, &reports)?;
            writeln!(out)?;
        }
        Format::Csv | Format::Plain => costmodel::write_csv(&reports, &mut *out)?,
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct CheckOutcome {
    name: &'static str,
    cases: u64,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<String>,
}

#[derive(Serialize)]
struct SelfcheckReport {
    seed: u64,
    checks: Vec<CheckOutcome>,
    summary: String,
}

struct Check {
    name: &'static str,
    cases: u64,
    counterexample: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            counterexample: None,
        }
    }

    /// Records one case; keeps the first failure only.
    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name,
            cases: self.cases,
            passed: self.counterexample.is_none(),
            counterexample: self.counterexample,
        }
    }
}

fn fmt_samples(v: &[ExactInt]) -> String {
    let items: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", items.join(","))
}

fn cmd_selfcheck<W: Write>(args: &SelfcheckArgs, out: &mut W) -> io::Result<i32> {
    let coefficients = |power: usize, len: u64| -> CoefficientSet {
        let set = coefficients_closed(power, len).expect("len >= 1");
        if !args.inject_fault {
            return set;
        }
        let mut values = set.into_values();
        values[0] += 1;
        CoefficientSet::from_values(power, len, values).expect("len >= 1")
    };

    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut checks = Vec::new();

    let mut oracle = Check::new("oracle_equivalence");
    for power in 0..=8usize {
        for len in 1..=32u64 {
            let coeffs = coefficients(power, len);
            for _ in 0..args.trials {
                let v: Vec<ExactInt> = (0..len)
                    .map(|_| ExactInt::from(rng.gen_range(-1_000_000i64..=1_000_000)))
                    .collect();
                let mut cascade = CascadeState::new(power);
                cascade.push_all(&v);
                let got = cascade.finalize(&coeffs).expect("dimensions match");
                let want = direct_sum(&v, power);
                oracle.case(got == want, || {
                    format!(
                        "K={power} N={len} v={} cascade={got} direct={want}",
                        fmt_samples(&v)
                    )
                });
            }
        }
    }
    checks.push(oracle.finish());

    let mut pointwise = Check::new("basis_identity");
    for power in 0..=8usize {
        for len in (power as u64 + 1).max(1)..=40 {
            let coeffs = coefficients(power, len);
            for n in 0..len {
                let rhs = coeffs
                    .coeffs()
                    .iter()
                    .enumerate()
                    .fold(ExactInt::default(), |acc, (i, c)| {
                        acc + c * binomial(len - n + i as u64 - 1, i as u64)
                    });
                let lhs = pow(&ExactInt::from(n), power as u32);
                pointwise.case(lhs == rhs, || {
                    format!("K={power} N={len} n={n} n^K={lhs} basis={rhs}")
                });
            }
        }
    }
    checks.push(pointwise.finish());

    let mut cross = Check::new("coefficient_cross_path");
    for power in 0..=10usize {
        for len in 1..=50u64 {
            let closed = coefficients(power, len);
            let stirling = coefficients_stirling(power, len).expect("len >= 1");
            cross.case(closed == stirling, || format!("K={power} N={len}"));
        }
    }
    checks.push(cross.finish());

    let mut monomial = Check::new("monomial_expansion");
    for m in 0..=12u32 {
        for x in 0..=12i64 {
            let rhs = (0..=m).fold(ExactInt::default(), |acc, j| {
                let term = stirling2(m, j) * rising_factorial(x, j);
                if (m - j) % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            });
            monomial.case(pow(&ExactInt::from(x), m) == rhs, || format!("m={m} x={x}"));
        }
    }
    checks.push(monomial.finish());

    let mut appendix = Check::new("alternating_sum_identity");
    for m in 0..=12u32 {
        for k in 1..=13u32 {
            appendix.case(
                appendix_identity_lhs(m, k) == appendix_identity_rhs(m, k),
                || format!("m={m} k={k}"),
            );
        }
    }
    checks.push(appendix.finish());

    let mut impulse = Check::new("impulse_response");
    for power in 0..=6usize {
        for at in 0..=5u64 {
            let len = at + 4;
            let mut cascade = CascadeState::new(power);
            for n in 0..len {
                cascade.push(&ExactInt::from((n == at) as u8));
            }
            let ok = cascade
                .snapshot()
                .iter()
                .enumerate()
                .all(|(i, a)| *a == binomial(len - 1 - at + i as u64, i as u64));
            impulse.case(ok, || format!("K={power} m={at} N={len}"));
        }
    }
    checks.push(impulse.finish());

    let mut costs = Check::new("operation_counts");
    for power in 0..=8usize {
        for len in [1u64, 2, 3, 17, 64] {
            let v = vec![ExactInt::one(); len as usize];
            let proposed = costmodel::measure_proposed(&v, power);
            let baseline = costmodel::measure_baseline(&v, power);
            costs.case(
                proposed == costmodel::predict_proposed(power, len)
                    && baseline == costmodel::predict_baseline(power, len),
                || format!("K={power} N={len} proposed={proposed:?} baseline={baseline:?}"),
            );
        }
    }
    checks.push(costs.finish());

    let failed = checks.iter().filter(|c| !c.passed).count();
    let summary = if failed == 0 {
        "all checks passed".to_owned()
    } else {
        format!("{failed} check(s) failed")
    };
    let report = SelfcheckReport {
        seed: args.seed,
        checks,
        summary,
    };
    serde_json::to_writer_pretty(&mut *out, &report)?;
    writeln!(out)?;
    Ok(if failed == 0 {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}
