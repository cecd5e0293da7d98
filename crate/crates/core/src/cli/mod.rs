//! Command-line front end: JSON problem files in, JSON documents out.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 interlacing rejected,
//! 3 reconstruction error, 4 verification failed.

pub mod problem;
pub mod solution;

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fuzz::{run_fuzz, Arithmetic, FuzzConfig, Setting};
use crate::interlacing::{
    bands_real, check_interlace_circle, check_interlace_real, normalize_circle, BandDecomposition,
    CircleInput, CircleSpectrumPair, RealSpectrumPair,
};
use crate::kernel::{admissible_family, circuit_circle, circuit_real, RECORD_LIMIT};
use crate::reconstruct::{reconstruct_circle, reconstruct_real};
use crate::scalar::{Rational, Real};
use crate::verify::Profile;

pub use problem::{
    parse_param_key, parse_pi_multiple, CirclePoint, Instance, Overrides, ProblemFile, Resolved,
    Strategy, WeightSpec, SCHEMA,
};
pub use solution::{
    Angles, CheckReport, CircuitListing, CircuitTerm, ErrorFile, ErrorInfo, Num, Polynomials,
    Recurrence, SolutionFile,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Usage = 1,
    Rejected = 2,
    Reconstruction = 3,
    Verification = 4,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn for_error(e: &Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::Unsupported(_)
            | Error::NotUnitModulus { .. }
            | Error::LengthMismatch { .. }
            | Error::NegativeCoefficient { .. }
            | Error::UnknownParameter { .. } => Exit::Usage,
            Error::InvalidSize { .. } => Exit::Rejected,
            e if e.is_interlacing_violation() => Exit::Rejected,
            _ => Exit::Reconstruction,
        }
    }
}

/// What a command produced: the JSON document, its exit status, and the
/// optional reference-code snippet.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit: Exit,
    pub document: Value,
    pub mathematica: Option<String>,
}

impl Outcome {
    fn new(exit: Exit, doc: &impl Serialize) -> Self {
        Outcome {
            exit,
            document: serde_json::to_value(doc).expect("documents serialize"),
            mathematica: None,
        }
    }

    fn error(command: &str, e: &Error) -> Self {
        Self::new(
            Exit::for_error(e),
            &ErrorFile {
                schema: SCHEMA.into(),
                command: command.into(),
                error: e.into(),
            },
        )
    }

    /// Pretty JSON with sorted keys.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.document).expect("values serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "twospectra",
    version,
    about = "Rebuild Jacobi and CMV matrices from two interlacing spectra"
)]
pub struct Cli {
    /// Problem file; standard input when absent or `-`.
    #[arg(short, long, global = true)]
    pub input: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(short, long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub arithmetic: Option<Arithmetic>,
    /// `strict`, `standard`, or a tolerance such as `1e-8`.
    #[arg(long, global = true)]
    pub profile: Option<Profile>,
    #[arg(long, global = true, value_enum)]
    pub strategy: Option<Strategy>,
    /// Circuit coefficient `s<k>=<value>`; repeatable, implies the coefficients strategy.
    #[arg(long = "param", global = true, value_parser = parse_assignment)]
    pub params: Vec<(String, String)>,
    /// Print the equivalent reference-code call on standard error.
    #[arg(long, global = true)]
    pub emit_mathematica: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test strict interlacing and report the bands.
    Check,
    /// Rebuild both matrices and verify them.
    Reconstruct,
    /// List the admissible circuits.
    Circuits,
    /// Reconstruct a batch of random interlacing instances.
    Fuzz(FuzzArgs),
}

#[derive(Debug, Args)]
pub struct FuzzArgs {
    #[arg(long, value_enum, default_value = "real")]
    pub setting: Setting,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 12)]
    pub max_n: usize,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn parse_assignment(s: &str) -> std::result::Result<(String, String), String> {
    s.split_once('=')
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .ok_or_else(|| format!("expected name=value, got {s:?}"))
}

/// A checked problem: the interlacing pair and its bands.
enum Checked {
    Real {
        pair: RealSpectrumPair<Rational>,
        indices: Vec<usize>,
        bands: BandDecomposition,
    },
    Circle {
        pair: CircleSpectrumPair,
        bands: BandDecomposition,
    },
}

fn real_pair(xs: &[Rational], ys: &[Rational]) -> Result<RealSpectrumPair<Rational>> {
    RealSpectrumPair::from_unsorted(xs.to_vec(), ys.to_vec())
}

fn circle_pair(zn: &[CirclePoint], zm: &[CirclePoint]) -> Result<CircleSpectrumPair> {
    let inputs = |v: &[CirclePoint]| {
        v.iter()
            .map(CirclePoint::input)
            .collect::<Vec<CircleInput>>()
    };
    normalize_circle(&inputs(zn), &inputs(zm))
}

fn run_check(instance: &Instance) -> Result<Checked> {
    match instance {
        Instance::Real { xs, ys } => {
            let pair = real_pair(xs, ys)?;
            let idx = check_interlace_real(&pair)?;
            let bands = bands_real(&pair, &idx);
            Ok(Checked::Real {
                indices: idx.as_slice().to_vec(),
                pair,
                bands,
            })
        }
        Instance::Circle { zn, zm } => {
            let pair = circle_pair(zn, zm)?;
            let bands = check_interlace_circle(&pair)?;
            Ok(Checked::Circle { pair, bands })
        }
    }
}

/// `∏ |band|` without overflow.
pub fn family_size(bands: &BandDecomposition) -> BigUint {
    bands
        .bands()
        .iter()
        .map(|b| BigUint::from(b.len()))
        .product()
}

fn sizes(instance: &Instance) -> (usize, usize) {
    match instance {
        Instance::Real { xs, ys } => (xs.len(), ys.len()),
        Instance::Circle { zn, zm } => (zn.len(), zm.len()),
    }
}

fn resolve(
    problem: &ProblemFile,
    over: &Overrides,
    command: &str,
) -> std::result::Result<Resolved, Outcome> {
    problem
        .resolve(over)
        .map_err(|e| Outcome::error(command, &e))
}

fn with_mathematica(mut out: Outcome, r: &Resolved) -> Outcome {
    out.mathematica = Some(r.mathematica());
    out
}

pub fn cmd_check(problem: &ProblemFile, over: &Overrides) -> Outcome {
    let r = match resolve(problem, over, "check") {
        Ok(r) => r,
        Err(o) => return o,
    };
    let (n, m) = sizes(&r.instance);
    let mut report = CheckReport {
        schema: SCHEMA.into(),
        command: "check".into(),
        setting: r.setting(),
        accepted: false,
        n,
        m,
        indices: None,
        bands: None,
        family_size: None,
        error: None,
    };
    let exit = match run_check(&r.instance) {
        Ok(checked) => {
            let (indices, bands) = match checked {
                Checked::Real { indices, bands, .. } => (Some(indices), bands),
                Checked::Circle { bands, .. } => (None, bands),
            };
            report.accepted = true;
            report.indices = indices;
            report.family_size = Some(family_size(&bands).to_string());
            report.bands = Some(bands.one_based());
            Exit::Ok
        }
        Err(e) => {
            let exit = Exit::for_error(&e);
            if exit != Exit::Rejected {
                return with_mathematica(Outcome::error("check", &e), &r);
            }
            report.error = Some((&e).into());
            exit
        }
    };
    with_mathematica(Outcome::new(exit, &report), &r)
}

fn real_solution<T: Real>(
    pair: &RealSpectrumPair<Rational>,
    r: &Resolved,
) -> std::result::Result<SolutionFile, Error> {
    let pair = pair.map(|q| T::from_rational(q.clone()));
    let sol = reconstruct_real(&pair, &r.selection::<T>(), r.profile)?;
    Ok(SolutionFile::from_real(&sol, r))
}

pub fn cmd_reconstruct(problem: &ProblemFile, over: &Overrides) -> Outcome {
    let r = match resolve(problem, over, "reconstruct") {
        Ok(r) => r,
        Err(o) => return o,
    };
    let solved = run_check(&r.instance).and_then(|checked| match checked {
        Checked::Real { pair, .. } => match r.arithmetic {
            Arithmetic::Rational => real_solution::<Rational>(&pair, &r),
            Arithmetic::Float64 => real_solution::<f64>(&pair, &r),
        },
        Checked::Circle { pair, .. } => {
            let sol = reconstruct_circle(&pair, &r.selection::<f64>(), r.profile)?;
            let angles = Angles {
                theta: pair.thetas().to_vec(),
                phi: pair.phis().to_vec(),
            };
            Ok(SolutionFile::from_circle(&sol, &r, angles))
        }
    });
    let out = match solved {
        Ok(sol) => {
            let exit = if sol.verification.passed() {
                Exit::Ok
            } else {
                Exit::Verification
            };
            Outcome::new(exit, &sol)
        }
        Err(e) => Outcome::error("reconstruct", &e),
    };
    with_mathematica(out, &r)
}

fn list_circuits(checked: &Checked, arithmetic: Arithmetic) -> Result<Vec<CircuitTerm>> {
    match checked {
        Checked::Real { pair, bands, .. } => {
            let float = pair.map(|q| q.to_f64());
            admissible_family(bands)
                .take(RECORD_LIMIT)
                .map(|support| match arithmetic {
                    Arithmetic::Rational => {
                        circuit_real(pair, &support).map(|c| CircuitTerm::real(&c, None))
                    }
                    Arithmetic::Float64 => {
                        circuit_real(&float, &support).map(|c| CircuitTerm::real(&c, None))
                    }
                })
                .collect()
        }
        Checked::Circle { pair, bands } => admissible_family(bands)
            .take(RECORD_LIMIT)
            .map(|support| circuit_circle(pair, &support).map(|c| CircuitTerm::real(&c, None)))
            .collect(),
    }
}

pub fn cmd_circuits(problem: &ProblemFile, over: &Overrides) -> Outcome {
    let r = match resolve(problem, over, "circuits") {
        Ok(r) => r,
        Err(o) => return o,
    };
    let listed = run_check(&r.instance).and_then(|checked| {
        let circuits = list_circuits(&checked, r.arithmetic)?;
        let bands = match &checked {
            Checked::Real { bands, .. } | Checked::Circle { bands, .. } => bands,
        };
        let size = family_size(bands);
        Ok(CircuitListing {
            schema: SCHEMA.into(),
            command: "circuits".into(),
            setting: r.setting(),
            bands: bands.one_based(),
            truncated: size > BigUint::from(RECORD_LIMIT),
            family_size: size.to_string(),
            circuits,
        })
    });
    let out = match listed {
        Ok(listing) => Outcome::new(Exit::Ok, &listing),
        Err(e) => Outcome::error("circuits", &e),
    };
    with_mathematica(out, &r)
}

pub fn cmd_fuzz(cfg: &FuzzConfig) -> Outcome {
    let n_ok = cfg.n.map_or(cfg.max_n >= 2, |n| n >= 2);
    let m_ok = match (cfg.n, cfg.m) {
        (Some(n), Some(m)) => (1..n).contains(&m),
        (None, Some(m)) => m >= 1 && m < cfg.max_n,
        _ => true,
    };
    if !n_ok || !m_ok {
        let e = Error::InvalidSize {
            n: cfg.n.unwrap_or(cfg.max_n),
            m: cfg.m.unwrap_or(0),
        };
        let mut out = Outcome::error("fuzz", &e);
        out.exit = Exit::Usage;
        return out;
    }
    if cfg.setting == Setting::Circle && cfg.arithmetic == Arithmetic::Rational {
        return Outcome::error(
            "fuzz",
            &Error::Unsupported("circle problems run in float64 arithmetic".into()),
        );
    }
    let summary = run_fuzz(cfg);
    let exit = if summary.all_passed() {
        Exit::Ok
    } else {
        Exit::Verification
    };
    let mut out = Outcome::new(exit, &summary);
    if let Value::Object(map) = &mut out.document {
        map.insert("schema".into(), SCHEMA.into());
        map.insert("command".into(), "fuzz".into());
        map.insert(
            "arithmetic".into(),
            serde_json::to_value(cfg.arithmetic).expect("enum"),
        );
        map.insert("profile".into(), cfg.profile.to_string().into());
    }
    out
}

fn read_problem(cli: &Cli, stdin: &mut dyn Read) -> Result<ProblemFile> {
    let io_err = |e: std::io::Error| Error::Parse {
        what: "input",
        input: e.to_string(),
    };
    let text = match cli.input.as_deref() {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map_err(io_err)?,
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(io_err)?;
            s
        }
    };
    ProblemFile::from_json(&text)
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli, stdin: &mut dyn Read) -> Outcome {
    let over = Overrides {
        arithmetic: cli.arithmetic,
        profile: cli.profile,
        strategy: cli.strategy,
        params: cli.params.clone(),
    };
    let name = match &cli.command {
        Command::Check => "check",
        Command::Reconstruct => "reconstruct",
        Command::Circuits => "circuits",
        Command::Fuzz(_) => "fuzz",
    };
    if let Command::Fuzz(f) = &cli.command {
        return cmd_fuzz(&FuzzConfig {
            setting: f.setting,
            n: f.n,
            m: f.m,
            max_n: f.max_n,
            count: f.count,
            seed: f.seed,
            profile: cli.profile.unwrap_or_default(),
            arithmetic: cli.arithmetic.unwrap_or(Arithmetic::Float64),
        });
    }
    let problem = match read_problem(cli, stdin) {
        Ok(p) => p,
        Err(e) => return Outcome::error(name, &e),
    };
    match cli.command {
        Command::Check => cmd_check(&problem, &over),
        Command::Reconstruct => cmd_reconstruct(&problem, &over),
        Command::Circuits => cmd_circuits(&problem, &over),
        Command::Fuzz(_) => unreachable!(),
    }
}

/// Full driver over explicit streams; returns the process exit code.
pub fn run_with<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => Exit::Usage.code(),
            };
        }
    };
    let outcome = execute(&cli, stdin);
    if cli.emit_mathematica {
        if let Some(snippet) = &outcome.mathematica {
            let _ = writeln!(stderr, "{snippet}");
        }
    }
    if let Some(Value::Object(err)) = outcome.document.get("error") {
        if let Some(Value::String(msg)) = err.get("message") {
            let _ = writeln!(stderr, "error: {msg}");
        }
    }
    let text = outcome.render();
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return Exit::Usage.code();
    }
    outcome.exit.code()
}

/// Driver over the process streams.
pub fn run() -> i32 {
    run_with(
        std::env::args_os(),
        &mut std::io::stdin().lock(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}
