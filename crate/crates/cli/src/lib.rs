//! Command-line front end: argument grammar, configuration layering and the exit-code
//! contract (0 success, 2 domain error with a JSON error object, 64 usage error).

mod commands;
mod config;
mod selftest;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use dshuffle_core::{Index, Word};
use serde_json::{json, Value};

pub use config::{Config, Format, DIGITS_ENV};

pub const EXIT_OK: u8 = 0;
pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

/// Malformed flags, unreadable configuration or invalid settings.
#[derive(Debug, Clone, PartialEq)]
pub struct UsageError(pub String);

/// What a command produced: a JSON value and its human-readable rendering.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub text: String,
}

/// A finished invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(name = "dshuffle", version, about = "Double shuffle relations, regularized zeta values and their oracles")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// TOML file with default settings (digits, p, precision, branch, format, degree, seed).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for every randomized step.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate extended double shuffle relations of one weight.
    Relations(RelationsArgs),
    /// Integral or series regularized value of an index or word.
    Regularize(RegularizeArgs),
    /// Apply the comparison map between the two regularizations.
    Lmap(LmapArgs),
    /// Multiple zeta value of an admissible index.
    Eval(EvalArgs),
    /// Multiple polylogarithm at a point.
    EvalMpl(EvalMplArgs),
    /// p-adic multiple polylogarithm at a point.
    EvalPadic(EvalPadicArgs),
    /// Membership test for the double shuffle and regularization conditions.
    DmrCheck(DmrArgs),
    /// Boundary strata and coordinates of the moduli of marked genus zero curves.
    #[command(subcommand)]
    Moduli(ModuliCommand),
    /// Run the invariant suite at small scale.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct RelationsArgs {
    #[arg(long)]
    pub weight: u32,
    /// Verify every relation numerically at this many digits.
    #[arg(long)]
    pub verify_digits: Option<u32>,
    /// Output an echelon basis of the span instead of the raw list.
    #[arg(long)]
    pub reduce: bool,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum RegMode {
    Integral,
    Series,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "input")]
pub struct RegInput {
    /// Index such as "(1,2)".
    #[arg(long, value_parser = parse_index)]
    pub index: Option<Index>,
    /// Word over A and B, for the integral mode.
    #[arg(long, value_parser = parse_word)]
    pub word: Option<Word>,
}

#[derive(Debug, Args)]
pub struct RegularizeArgs {
    #[arg(long, value_enum)]
    pub mode: RegMode,
    #[command(flatten)]
    pub input: RegInput,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct LmapArgs {
    /// Apply the map to the integral regularized value of this index.
    #[arg(long, value_parser = parse_index)]
    pub index: Option<Index>,
    /// Apply the map to T^k.
    #[arg(long)]
    pub t_power: Option<u32>,
    /// Apply the map to a value in JSON term form.
    #[arg(long)]
    pub value: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Strategy {
    Holder,
    Direct,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_parser = parse_index)]
    pub index: Index,
    #[arg(long)]
    pub digits: Option<u32>,
    #[arg(long, value_enum, default_value_t = Strategy::Holder)]
    pub strategy: Strategy,
}

#[derive(Debug, Args)]
pub struct EvalMplArgs {
    #[arg(long, value_parser = parse_index)]
    pub index: Index,
    /// Comma-separated rationals or decimals: one per index entry, or a single `z` for the
    /// one-variable function.
    #[arg(long)]
    pub point: String,
    #[arg(long)]
    pub digits: Option<u32>,
}

#[derive(Debug, Args)]
pub struct EvalPadicArgs {
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub prec: Option<u32>,
    /// Value assigned to log(p).
    #[arg(long)]
    pub branch: Option<String>,
    #[arg(long, value_parser = parse_index)]
    pub index: Index,
    /// Comma-separated rationals: one per index entry, or a single `z`.
    #[arg(long)]
    pub point: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DmrSource {
    /// The truncated associator with B replaced by -B, over balls.
    Complex,
    /// exp(alpha A + beta B) over the rationals.
    Exp,
    /// The constant series 1.
    Unit,
}

#[derive(Debug, Args)]
pub struct DmrArgs {
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long, value_enum, default_value_t = DmrSource::Complex)]
    pub source: DmrSource,
    #[arg(long)]
    pub digits: Option<u32>,
    #[arg(long, default_value = "0")]
    pub alpha: String,
    #[arg(long, default_value = "0")]
    pub beta: String,
    /// Largest accepted residual; defaults to 0 for exact sources and 10^-15 otherwise.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum ModuliCommand {
    /// Boundary divisors for n labels.
    Divisors {
        #[arg(long)]
        n: u32,
        /// Also list the partitions.
        #[arg(long)]
        list: bool,
    },
    /// Whether two boundary divisors meet.
    Intersect {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Chart coordinates attached to a stable tree.
    Chart {
        /// `star(1,2,3,4)`, partitions separated by `;`, or the JSON edge-list form.
        #[arg(long)]
        tree: String,
        /// Label ranking used to break ties, comma-separated.
        #[arg(long)]
        ranking: Option<String>,
    },
    /// The special point on the divisor z_N = 0.
    PointR {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Number of random samples per sampled check.
    #[arg(long, default_value_t = 5)]
    pub samples: usize,
}

fn parse_index(s: &str) -> Result<Index, String> {
    s.parse().map_err(|e: dshuffle_core::Error| e.to_string())
}

fn parse_word(s: &str) -> Result<Word, String> {
    s.parse().map_err(|e: dshuffle_core::Error| e.to_string())
}

/// Builds the effective configuration: defaults, then `--config`, then the digits
/// environment variable, then flags.
pub fn resolve_config(cli: &Cli, env_digits: Option<String>) -> Result<Config, UsageError> {
    let mut config = Config::default();
    if let Some(path) = &cli.config {
        config.apply_file(path)?;
    }
    config.apply_env(env_digits)?;
    if let Some(f) = cli.format {
        config.format = f;
    }
    if let Some(s) = cli.seed {
        config.seed = s;
    }
    match &cli.command {
        Command::Eval(a) => override_digits(&mut config, a.digits),
        Command::EvalMpl(a) => override_digits(&mut config, a.digits),
        Command::DmrCheck(a) => {
            override_digits(&mut config, a.digits);
            if let Some(d) = a.degree {
                config.degree = d;
            }
        }
        Command::Relations(a) => override_digits(&mut config, a.verify_digits),
        Command::EvalPadic(a) => {
            if let Some(p) = a.p {
                config.p = p;
            }
            if let Some(n) = a.prec {
                config.precision = n;
            }
            if let Some(b) = &a.branch {
                config.branch = config::parse_rational_arg(b)?;
            }
        }
        _ => {}
    }
    config.validate()?;
    Ok(config)
}

fn override_digits(config: &mut Config, digits: Option<u32>) {
    if let Some(d) = digits {
        config.digits = d;
    }
}

fn error_json(kind: &str, message: &str) -> Value {
    json!({ "error": { "kind": kind, "message": message } })
}

fn usage(message: String) -> Output {
    let body = error_json("UsageError", &message);
    Output { code: EXIT_USAGE, stdout: format!("{body}\n"), stderr: format!("usage error: {message}\n") }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_env(args, std::env::var(DIGITS_ENV).ok())
}

/// As [`run`], with the digits environment variable given explicitly.
pub fn run_with_env<I, T>(args: I, env_digits: Option<String>) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Output { code: EXIT_OK, stdout: e.to_string(), stderr: String::new() }
                }
                _ => {
                    let rendered = e.to_string();
                    let first = rendered.lines().next().unwrap_or_default().trim_start_matches("error: ").to_string();
                    let mut out = usage(first);
                    out.stderr = rendered;
                    out
                }
            };
        }
    };
    let config = match resolve_config(&cli, env_digits) {
        Ok(c) => c,
        Err(UsageError(m)) => return usage(m),
    };
    match commands::execute(&cli.command, &config) {
        Ok(report) => {
            let stdout = match config.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&report.json).expect("JSON value")),
                Format::Text => format!("{}\n", report.text.trim_end()),
            };
            Output { code: EXIT_OK, stdout, stderr: String::new() }
        }
        Err(commands::Failure::Usage(m)) => usage(m),
        Err(commands::Failure::Domain { kind, message, detail }) => {
            let mut body = error_json(&kind, &message);
            if let Some(d) = detail {
                body["error"]["detail"] = d;
            }
            Output { code: EXIT_DOMAIN, stdout: format!("{body}\n"), stderr: format!("error: {message}\n") }
        }
    }
}
