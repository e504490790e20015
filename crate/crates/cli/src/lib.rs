//! The `twinned` command line: argument parsing, input loading and report
//! rendering. The subcommands themselves live in [`commands`].

pub mod commands;
pub mod golden;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;
use twinned::groebner::OrderError;
use twinned::poset::{Poset, PosetError};

/// Largest `d` accepted without `--dmax`.
pub const DEFAULT_DMAX: usize = 6;

#[derive(Parser, Debug, Clone)]
#[command(name = "twinned", version, about = "Exact checks on twinned order polytopes and their toric ideals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; csv is only available for `delta`.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Largest poset size accepted. Values above 6 are allowed but slow.
    #[arg(long, default_value_t = DEFAULT_DMAX, global = true)]
    pub dmax: usize,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Ideal counts, common linear extension and interior-origin verdicts.
    Analyze(PairArgs),
    /// The quadratic family, the reduced Gröbner basis and its checks.
    Groebner {
        #[command(flatten)]
        pair: PairArgs,
        /// Ranking file (variable names, smallest first) or `default`.
        #[arg(long, default_value = "default")]
        order: String,
    },
    /// Lattice-point counts, δ-vector and the reflexive/Fano/normal checks.
    Delta {
        #[command(flatten)]
        pair: PairArgs,
        /// Largest dilate for the normality check [default: d + 1].
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        tmax: Option<u32>,
    },
    /// Recomputes the reference results and diffs them against the golden values.
    Reproduce {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random valid rankings sampled for the counterexample.
        #[arg(long, default_value_t = 25, value_parser = clap::value_parser!(u32).range(1..))]
        trials: u32,
        /// Golden file to compare against instead of the built-in one.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Random poset pairs checked against every statement.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 25, value_parser = clap::value_parser!(u32).range(1..))]
        trials: u32,
        /// Largest poset size sampled.
        #[arg(long, default_value_t = 4)]
        max_d: usize,
        /// Forced first pair.
        #[arg(long, requires = "poset_q")]
        poset_p: Option<PathBuf>,
        #[arg(long, requires = "poset_p")]
        poset_q: Option<PathBuf>,
        /// Directory receiving one poset-file pair per violation.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    #[arg(long)]
    pub poset_p: PathBuf,
    #[arg(long)]
    pub poset_q: PathBuf,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Problems with the input; the process exits with status 2.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Poset { path: String, source: PosetError },
    #[error(transparent)]
    Pair(#[from] PosetError),
    #[error("ranking {path}: {source}")]
    Order { path: String, source: OrderError },
    #[error("d = {d} exceeds the cap {cap}; raise it with --dmax")]
    DimensionCap { d: usize, cap: usize },
    #[error("golden file {path}: {msg}")]
    Golden { path: String, msg: String },
    #[error("--format csv is only available for delta")]
    CsvUnsupported,
}

/// A finished command: `passed` decides the exit status.
#[derive(Debug, Clone)]
pub struct Report {
    pub passed: bool,
    pub text: String,
    pub json: serde_json::Value,
    pub csv: Option<String>,
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String, InputError> {
        match format {
            Format::Text => Ok(self.text.clone()),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("report values serialize");
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self.csv.clone().ok_or(InputError::CsvUnsupported),
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed { 0 } else { 1 }
    }
}

pub fn read_poset(path: &Path) -> Result<Poset, InputError> {
    let text = read_text(path)?;
    Poset::parse(text.trim()).map_err(|source| InputError::Poset { path: path.display().to_string(), source })
}

pub fn read_text(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Read { path: path.display().to_string(), source })
}

pub fn read_pair(args: &PairArgs) -> Result<(Poset, Poset), InputError> {
    let p = read_poset(&args.poset_p)?;
    let q = read_poset(&args.poset_q)?;
    if p.size() != q.size() {
        return Err(PosetError::DimensionMismatch(p.size(), q.size()).into());
    }
    Ok((p, q))
}

fn check_cap(d: usize, cap: usize) -> Result<(), InputError> {
    if d > cap {
        return Err(InputError::DimensionCap { d, cap });
    }
    Ok(())
}

/// Messages for stderr that do not stop the run.
pub fn warnings(cli: &Cli) -> Vec<String> {
    let mut out = Vec::new();
    if cli.dmax > DEFAULT_DMAX {
        out.push(format!(
            "warning: --dmax {} is above {DEFAULT_DMAX}; counting and Gröbner computations may take very long",
            cli.dmax
        ));
    }
    out
}

pub fn run(cli: &Cli) -> Result<Report, InputError> {
    if cli.format == Format::Csv && !matches!(cli.command, Command::Delta { .. }) {
        return Err(InputError::CsvUnsupported);
    }
    match &cli.command {
        Command::Analyze(pair) => {
            let (p, q) = read_pair(pair)?;
            commands::cmd_analyze(&p, &q)
        }
        Command::Groebner { pair, order } => {
            let (p, q) = read_pair(pair)?;
            check_cap(p.size(), cli.dmax)?;
            let ranking = match order.as_str() {
                "default" => None,
                path => Some((path.to_string(), read_text(Path::new(path))?)),
            };
            commands::cmd_groebner(&p, &q, ranking.as_ref().map(|(a, b)| (a.as_str(), b.as_str())))
        }
        Command::Delta { pair, tmax } => {
            let (p, q) = read_pair(pair)?;
            check_cap(p.size(), cli.dmax)?;
            commands::cmd_delta(&p, &q, tmax.unwrap_or(p.size() as u32 + 1))
        }
        Command::Reproduce { seed, trials, golden } => {
            let golden = match golden {
                Some(path) => Some((path.display().to_string(), read_text(path)?)),
                None => None,
            };
            commands::cmd_reproduce(*seed, *trials, golden.as_ref().map(|(a, b)| (a.as_str(), b.as_str())))
        }
        Command::Fuzz { seed, trials, max_d, poset_p, poset_q, dump } => {
            check_cap(*max_d, cli.dmax)?;
            let forced = match (poset_p, poset_q) {
                (Some(a), Some(b)) => {
                    let pair = read_pair(&PairArgs { poset_p: a.clone(), poset_q: b.clone() })?;
                    check_cap(pair.0.size(), cli.dmax)?;
                    Some(pair)
                }
                _ => None,
            };
            commands::cmd_fuzz(&commands::FuzzConfig {
                seed: *seed,
                trials: *trials,
                max_d: (*max_d).max(1),
                forced,
                dump: dump.clone(),
            })
        }
    }
}

/// `yes` / `no` for text reports.
pub(crate) fn yn(b: bool) -> &'static str {
    if b { "yes" } else { "no" }
}

pub(crate) fn push_line(out: &mut String, line: impl AsRef<str>) {
    let _ = writeln!(out, "{}", line.as_ref());
}
