use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::bench::{bench_vars, parse_sizes};
use super::report::{instance_digest, RunReport};
use super::{solve_logged, suite};
use crate::circuit::{ArithmeticCircuit, CircuitError, Verdict, DEFAULT_MONOMIAL_CAP};
use crate::expalgos::{
    permanent_brute, permanent_fsets, permanent_via_formulation, permanent_via_formulation_logged, setcover_min,
    BinaryMatrix, CoverMethod, ExpError, SetFamily,
};
use crate::ls::formulation::stream_cap;
use crate::ls::{brute_solve, FormulationStream, LSInstance, LsError};
use crate::oracle::{OracleCallLog, OracleError};
use crate::poly::SparsePolynomial;
use crate::problems::{ProblemError, ProblemKind};

#[derive(Parser, Debug)]
#[command(name = "polyoracle", version, about = "Polynomial formulations and exact counting with cross-checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide a problem instance.
    Solve {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = SolveMethod::Formulation)]
        method: SolveMethod,
        #[arg(long, default_value_t = 2)]
        theta: u32,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write the encoded instance as JSON.
        #[arg(long)]
        emit_instance: Option<PathBuf>,
    },
    /// Write the formulation polynomial for a size as JSON.
    Formulate {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        size: u64,
        #[arg(long, default_value_t = 1)]
        theta: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check that a circuit computes a polynomial after homogenization.
    VerifyCircuit {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        delta: u32,
        #[arg(long, default_value_t = DEFAULT_MONOMIAL_CAP)]
        cap: usize,
    },
    /// Permanent of a 0/1 matrix.
    Permanent {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = PermanentMethod::Formulation)]
        method: PermanentMethod,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, default_value_t = 2)]
        theta: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Minimum set cover size.
    Setcover {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = CoverChoice::Reduction)]
        method: CoverChoice,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Variable counts over a size grid, as CSV, with the log-log slope.
    BenchVars {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        theta: u32,
        #[arg(long)]
        sizes: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized cross-checks of every pipeline.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SolveMethod {
    Brute,
    Formulation,
    Direct,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PermanentMethod {
    Brute,
    Fsets,
    Formulation,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CoverChoice {
    Brute,
    Reduction,
}

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug)]
enum CliError {
    Usage(String),
    Cap(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Cap(_) => EXIT_CAP,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Cap(m) => m,
        }
    }
}

impl From<LsError> for CliError {
    fn from(e: LsError) -> Self {
        match e {
            LsError::UniverseTooLarge { .. } | LsError::StreamTooLarge { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ProblemError> for CliError {
    fn from(e: ProblemError) -> Self {
        match e {
            ProblemError::Ls(inner) => inner.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Ls(inner) => inner.into(),
            OracleError::QueryTooLarge { .. } => CliError::Cap(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<ExpError> for CliError {
    fn from(e: ExpError) -> Self {
        match e {
            ExpError::TooLarge { .. } | ExpError::PreconditionViolated(_) => CliError::Cap(e.to_string()),
            ExpError::InvalidInput(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<CircuitError> for CliError {
    fn from(e: CircuitError) -> Self {
        match e {
            CircuitError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn problem(name: &str) -> Result<ProblemKind, CliError> {
    name.parse::<ProblemKind>().map_err(|e| CliError::Usage(e.to_string()))
}

fn yes_no(answer: bool) -> &'static str {
    if answer {
        "yes"
    } else {
        "no"
    }
}

/// Encoded instance as written by `--emit-instance`.
#[derive(Serialize, Deserialize)]
struct InstanceFile {
    problem: String,
    n: u64,
    r: u32,
    elements: Vec<u64>,
}

/// Problems whose verifier has no per-input parameters, so an encoded
/// instance can be solved without the natural input.
fn reads_encoded(kind: ProblemKind) -> bool {
    matches!(kind, ProblemKind::Collinearity | ProblemKind::Triangle | ProblemKind::InducedC4)
}

fn solve(
    kind: ProblemKind,
    input: &Path,
    method: SolveMethod,
    theta: u32,
    report: Option<&Path>,
    emit: Option<&Path>,
) -> Result<i32, CliError> {
    let text = read(input)?;
    let start = Instant::now();
    let raw: Value = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("malformed JSON: {e}")))?;
    let encoded = if raw.get("elements").is_some() {
        if !reads_encoded(kind) || !matches!(method, SolveMethod::Brute | SolveMethod::Formulation) {
            return Err(CliError::Usage(format!("encoded input is not supported for {kind} with this method")));
        }
        let file: InstanceFile =
            serde_json::from_value(raw).map_err(|e| CliError::Usage(format!("bad instance file: {e}")))?;
        if file.problem != kind.name() {
            return Err(CliError::Usage(format!("instance is for {}, not {kind}", file.problem)));
        }
        let spec = kind.default_spec(file.n as usize)?;
        Some((spec, LSInstance::new(file.n, file.r, file.elements)?))
    } else {
        None
    };
    let mut log = OracleCallLog::default();
    let answer = match method {
        SolveMethod::Direct => kind.direct_solve_json(&text)?,
        SolveMethod::Brute | SolveMethod::Formulation => {
            let (spec, inst) = match encoded {
                Some(pair) => pair,
                None => {
                    let enc = kind.encode_json(&text)?;
                    (enc.spec, enc.instance)
                }
            };
            if let Some(path) = emit {
                let file = InstanceFile {
                    problem: kind.name().into(),
                    n: inst.n(),
                    r: inst.r(),
                    elements: inst.elements().to_vec(),
                };
                write(path, &serde_json::to_string(&file).expect("instance serializes"))?;
            }
            if let SolveMethod::Brute = method {
                brute_solve(&spec, &inst)?
            } else {
                if theta == 0 {
                    return Err(CliError::Usage("theta must be positive".into()));
                }
                let (answer, calls) = solve_logged(&spec, &inst, theta)?;
                log = calls;
                answer
            }
        }
    };
    println!("{}", yes_no(answer));
    if let Some(path) = report {
        let r = RunReport::new(
            kind.name(),
            instance_digest(text.as_bytes()),
            Value::from(yes_no(answer)),
            log,
            start.elapsed().as_secs_f64(),
        );
        write(path, &r.to_json())?;
    }
    Ok(if answer { EXIT_OK } else { EXIT_NO })
}

fn formulate(kind: ProblemKind, size: u64, theta: u32, out: &Path) -> Result<i32, CliError> {
    if theta == 0 || size == 0 {
        return Err(CliError::Usage("size and theta must be positive".into()));
    }
    let spec = kind.default_spec(size as usize)?;
    let stream = FormulationStream::new(&spec, size, theta, stream_cap())?;
    let poly = stream.to_polynomial()?;
    let json = serde_json::to_string(&poly).map_err(|e| CliError::Usage(e.to_string()))?;
    write(out, &json)?;
    println!("variables {} monomials {} degree {}", stream.num_vars(), poly.num_terms(), poly.total_degree());
    Ok(EXIT_OK)
}

fn verify_circuit(circuit: &Path, poly: &Path, delta: u32, cap: usize) -> Result<i32, CliError> {
    let c: ArithmeticCircuit =
        serde_json::from_str(&read(circuit)?).map_err(|e| CliError::Usage(format!("bad circuit: {e}")))?;
    let p: SparsePolynomial =
        serde_json::from_str(&read(poly)?).map_err(|e| CliError::Usage(format!("bad polynomial: {e}")))?;
    let verdict = c.verify(&p, delta, cap);
    println!("{}", verdict.reason());
    Ok(match verdict {
        Verdict::Accepted => EXIT_OK,
        Verdict::CapExceeded => EXIT_CAP,
        _ => EXIT_NO,
    })
}

fn count_report(
    path: Option<&Path>,
    name: &str,
    text: &str,
    answer: Value,
    log: OracleCallLog,
    start: Instant,
) -> Result<(), CliError> {
    if let Some(path) = path {
        let r = RunReport::new(name, instance_digest(text.as_bytes()), answer, log, start.elapsed().as_secs_f64());
        write(path, &r.to_json())?;
    }
    Ok(())
}

fn permanent(
    matrix: &Path,
    method: PermanentMethod,
    alpha: f64,
    theta: usize,
    report: Option<&Path>,
) -> Result<i32, CliError> {
    let text = read(matrix)?;
    let start = Instant::now();
    let a: BinaryMatrix = text.parse()?;
    let (value, log) = match method {
        PermanentMethod::Brute => (permanent_brute(&a)?, OracleCallLog::default()),
        PermanentMethod::Fsets => (permanent_fsets(&a, alpha)?, OracleCallLog::default()),
        PermanentMethod::Formulation => permanent_via_formulation_logged(&a, alpha, theta)?,
    };
    println!("{value}");
    let answer = u64::try_from(value).map_or_else(|_| Value::from(value.to_string()), Value::from);
    count_report(report, "permanent", &text, answer, log, start)?;
    Ok(EXIT_OK)
}

fn setcover(input: &Path, method: CoverChoice, report: Option<&Path>) -> Result<i32, CliError> {
    let text = read(input)?;
    let start = Instant::now();
    let f = SetFamily::from_json(&text)?;
    let method = match method {
        CoverChoice::Brute => CoverMethod::Brute,
        CoverChoice::Reduction => CoverMethod::Reduction,
    };
    let best = setcover_min(&f, method)?;
    match best {
        Some(k) => println!("{k}"),
        None => println!("none"),
    }
    count_report(report, "setcover", &text, best.map_or(Value::Null, Value::from), OracleCallLog::default(), start)?;
    Ok(if best.is_some() { EXIT_OK } else { EXIT_NO })
}

fn bench(kind: ProblemKind, theta: u32, sizes: &str, out: Option<&Path>) -> Result<i32, CliError> {
    let sizes = parse_sizes(sizes).map_err(CliError::Usage)?;
    let r = kind.default_spec(2)?.r();
    let table = bench_vars(r, theta, &sizes).map_err(CliError::Usage)?;
    match out {
        Some(path) => write(path, &table.to_csv())?,
        None => print!("{}", table.to_csv()),
    }
    println!("slope {}", table.slope_text());
    Ok(EXIT_OK)
}

fn selftest(seed: u64, count: usize) -> Result<i32, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for kind in ProblemKind::ALL {
        let mut bad = 0;
        for _ in 0..count {
            let json = suite::random_input(kind, &mut rng);
            let direct = kind.direct_solve_json(&json)?;
            let enc = kind.encode_json(&json)?;
            let brute = brute_solve(&enc.spec, &enc.instance)?;
            let mut agree = brute == direct;
            for theta in 1..=3 {
                agree &= solve_logged(&enc.spec, &enc.instance, theta)?.0 == direct;
            }
            bad += usize::from(!agree);
        }
        println!("{} {kind}: {} instances", if bad == 0 { "pass" } else { "FAIL" }, count);
        failures += bad;
    }
    let mut bad = 0;
    for _ in 0..count {
        let n = rand::Rng::gen_range(&mut rng, 1..=6);
        let rows = (0..n).map(|_| (0..n).map(|_| rand::Rng::gen_bool(&mut rng, 0.6) as u8).collect()).collect();
        let a = BinaryMatrix::from_rows(rows)?;
        let want = permanent_brute(&a)?;
        bad += usize::from(permanent_via_formulation(&a, 0.5, 2)? != want || permanent_fsets(&a, 0.5)? != want);
    }
    println!("{} permanent: {count} matrices", if bad == 0 { "pass" } else { "FAIL" });
    failures += bad;
    let mut bad = 0;
    for _ in 0..count {
        let n = rand::Rng::gen_range(&mut rng, 1..=6);
        let sets = (0..rand::Rng::gen_range(&mut rng, 1..=6))
            .map(|_| rand::Rng::gen_range(&mut rng, 1u32..1 << n) & ((1 << n) - 1))
            .filter(|s| s.count_ones() <= 3)
            .collect();
        let f = SetFamily::new(n, sets)?;
        bad += usize::from(setcover_min(&f, CoverMethod::Reduction)? != setcover_min(&f, CoverMethod::Brute)?);
    }
    println!("{} setcover: {count} families", if bad == 0 { "pass" } else { "FAIL" });
    failures += bad;
    Ok(if failures == 0 { EXIT_OK } else { EXIT_NO })
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Solve { problem: p, input, method, theta, report, emit_instance } => {
            solve(problem(&p)?, &input, method, theta, report.as_deref(), emit_instance.as_deref())
        }
        Command::Formulate { problem: p, size, theta, out } => formulate(problem(&p)?, size, theta, &out),
        Command::VerifyCircuit { circuit, poly, delta, cap } => verify_circuit(&circuit, &poly, delta, cap),
        Command::Permanent { matrix, method, alpha, theta, report } => {
            permanent(&matrix, method, alpha, theta, report.as_deref())
        }
        Command::Setcover { input, method, report } => setcover(&input, method, report.as_deref()),
        Command::BenchVars { problem: p, theta, sizes, out } => bench(problem(&p)?, theta, &sizes, out.as_deref()),
        Command::Selftest { seed, count } => selftest(seed, count),
    }
}

/// Runs the command line with `args` (program name first) and returns the
/// exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}
