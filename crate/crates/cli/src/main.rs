//! `ncsurf`: reproducible experiments on noncommutative surface algebras.
//!
//! Exit status: 0 on success, 1 when a verification fails or output cannot be
//! written, 2 on usage errors (including parameters outside a domain).

mod commands;
mod svg;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use ncsurf::exact::{parse_rational, to_f64, Rational};

/// A number given as a decimal or `p/q`, kept exactly alongside its text.
#[derive(Clone, Debug, PartialEq)]
pub struct Num {
    pub text: String,
    pub exact: Rational,
}

impl Num {
    pub fn f64(&self) -> f64 {
        to_f64(&self.exact)
    }
}

impl FromStr for Num {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim();
        let exact = parse_rational(t).map_err(|e| e.to_string())?;
        Ok(Num {
            text: t.to_string(),
            exact,
        })
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// `auto` or a number.
#[derive(Clone, Debug, PartialEq)]
pub enum NuArg {
    Auto,
    Value(Num),
}

impl FromStr for NuArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim() == "auto" {
            Ok(NuArg::Auto)
        } else {
            s.parse().map(NuArg::Value)
        }
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let v: Num = s.parse()?;
    if v.f64() > 0.0 {
        Ok(v.f64())
    } else {
        Err("must be positive".into())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "ncsurf",
    version,
    about = "Noncommutative surface algebra experiments"
)]
pub struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Morse counting and Euler characteristic of a constraint surface.
    Genus(GenusArgs),
    /// Overlap resolvability and Casimir centrality for the torus relations.
    Confluence(ConfluenceArgs),
    /// Construct, verify or classify a hermitian representation.
    #[command(subcommand)]
    Rep(RepCommand),
    /// Spectrum of the position matrix with branch detection.
    Spectrum(SpectrumArgs),
    /// Spectra over several values of mu.
    Sweep(SweepArgs),
    /// Berezin-Toeplitz matrices against the single-loop representation.
    Bt(BtArgs),
    /// Matrix commutators against Poisson brackets over growing N.
    Converge(ConvergeArgs),
}

#[derive(Args, Debug)]
pub struct GenusArgs {
    /// Target genus; builds P(x) = alpha G(x^2) - mu.
    #[arg(long, conflicts_with = "coeffs")]
    pub g: Option<u32>,
    #[arg(long)]
    pub mu: Num,
    #[arg(long, required_unless_present = "coeffs")]
    pub alpha: Option<Num>,
    /// Coefficients of P from the constant term up, instead of --g.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Option<Vec<Num>>,
}

#[derive(Args, Debug)]
pub struct ConfluenceArgs {
    #[arg(long)]
    pub mu: Num,
    /// hbar squared, strictly between 0 and 1.
    #[arg(long)]
    pub hbar2: Num,
}

#[derive(Subcommand, Debug)]
pub enum RepCommand {
    Construct(RepArgs),
    Verify(RepArgs),
    Classify(RepArgs),
}

#[derive(Args, Debug, Clone)]
pub struct RepArgs {
    /// Builder name: loop, string or degenerate.
    #[arg(long)]
    pub kind: Option<String>,
    /// Read a representation written by `rep construct --out`.
    #[arg(long = "in", alias = "input", conflicts_with = "kind")]
    pub input: Option<PathBuf>,
    #[arg(long, default_value = "30")]
    pub n: usize,
    #[arg(long, default_value = "1")]
    pub k: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<Num>,
    #[arg(long, default_value = "1")]
    pub c: Num,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub beta: Num,
    /// Overrides the default angle (pi k/n for loops, solved for strings).
    #[arg(long)]
    pub theta: Option<Num>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub phases: Option<Vec<Num>>,
    /// Largest accepted relation residual.
    #[arg(long, default_value = "1e-10", value_parser = positive)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub rep: RepArgs,
    /// Ratio M0/M1 at or above which an interval has two branches.
    #[arg(long, default_value = "2", value_parser = positive)]
    pub threshold: f64,
    #[arg(long, default_value = "nalgebra")]
    pub solver: String,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub mu: Vec<Num>,
    #[arg(long, default_value = "30")]
    pub n: usize,
    #[arg(long, default_value = "1")]
    pub c: Num,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub beta: Num,
    #[arg(long, default_value = "2", value_parser = positive)]
    pub threshold: f64,
    #[arg(long, default_value = "1")]
    pub workers: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BtArgs {
    #[arg(long, default_value = "30")]
    pub n: usize,
    #[arg(long)]
    pub mu: Num,
    /// A number, or `auto` for 1/cos(pi/N).
    #[arg(long, default_value = "auto")]
    pub nu: NuArg,
    /// Residual tolerance per unit of N.
    #[arg(long, default_value = "1e-12", value_parser = positive)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct ConvergeArgs {
    #[arg(long, default_value = "x^2")]
    pub f: String,
    #[arg(long, default_value = "y^2")]
    pub g: String,
    /// mu at c = 1, i.e. the ratio mu/sqrt(c).
    #[arg(long, default_value = "1.3")]
    pub mu: Num,
    #[arg(long, default_value = "1")]
    pub c: Num,
    #[arg(long, value_delimiter = ',', default_value = "10,20,40,80")]
    pub ns: Vec<usize>,
}

/// Outcome of a command that ran to completion.
pub enum Failure {
    /// Bad flag or parameter outside its domain.
    Usage(String),
    /// A check failed or output could not be written.
    Check(String),
}

impl From<ncsurf::Error> for Failure {
    fn from(e: ncsurf::Error) -> Self {
        Failure::Usage(commands::describe(&e))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Check(format!("io: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
