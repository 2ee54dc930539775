//! Command-line front end for two-qubit separability analysis.
//!
//! `analyze` runs the full pipeline on a JSON state file, `classify` names the
//! normal-form class, and `sample` cross-validates the two separability
//! criteria on random states.

pub mod report;
pub mod state;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use lorentz_sep_core::analysis::{self, Tolerances};
use lorentz_sep_core::normal_form;
use lorentz_sep_core::oracle::{self, Family, SampleSpec};
use lorentz_sep_core::{DEFAULT_BETA_LIMIT, DEFAULT_PSD_TOL, DEFAULT_VERDICT_TOL};
use rayon::prelude::*;

use report::{AnalysisReport, SampleReport};
use state::{InputError, StateFile};

pub const EXIT_SEPARABLE: i32 = 0;
pub const EXIT_ENTANGLED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_PPT_ONLY: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "lorentz-sep", version, about = "Two-qubit separability analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze one state. Exit code 0 separable, 1 entangled, 2 error or not
    /// a state, 3 non-generic (decided by the partial transpose alone).
    Analyze {
        file: PathBuf,
        /// Smallest admissible eigenvalue of ρ is −tol.
        #[arg(long, default_value_t = DEFAULT_PSD_TOL)]
        tol_psd: f64,
        /// Margin below which a witness counts as entangled.
        #[arg(long, default_value_t = DEFAULT_VERDICT_TOL)]
        tol_verdict: f64,
        /// Boost velocities must stay below 1 − limit.
        #[arg(long, default_value_t = DEFAULT_BETA_LIMIT)]
        beta_limit: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the normal-form class of a state.
    Classify { file: PathBuf },
    /// Cross-validate both criteria on random states. Exit code 0 iff they
    /// never disagree.
    Sample {
        #[arg(long)]
        family: String,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: InputError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] lorentz_sep_core::Error),
}

pub fn load_state(path: &Path) -> Result<lorentz_sep_core::hs::HsParams, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })?;
    StateFile::parse(&text)
        .and_then(|s| s.to_params())
        .map_err(|source| CliError::Input {
            path: path.to_owned(),
            source,
        })
}

fn check_tol(name: &str, value: f64) -> Result<(), CliError> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--{name} must be a finite non-negative number")))
    }
}

pub fn analyze(path: &Path, tol: &Tolerances) -> Result<AnalysisReport, CliError> {
    check_tol("tol-psd", tol.psd)?;
    check_tol("tol-verdict", tol.verdict)?;
    check_tol("beta-limit", tol.beta_limit)?;
    let params = load_state(path)?;
    let a = analysis::analyze(&params, tol)?;
    Ok(AnalysisReport::from_analysis(&a))
}

/// Samples in parallel, then folds the records in index order so the report
/// does not depend on scheduling.
pub fn sample(family: &str, count: usize, seed: u64) -> Result<SampleReport, CliError> {
    let family = Family::from_name(family).ok_or_else(|| {
        let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
        CliError::Usage(format!("unknown family `{family}`; expected one of {}", names.join(", ")))
    })?;
    if count == 0 {
        return Err(CliError::Usage("--count must be at least 1".to_owned()));
    }
    let spec = SampleSpec {
        family,
        count,
        seed,
    };
    let records = (0..count as u64)
        .into_par_iter()
        .map(|i| oracle::random_state(&spec, i).and_then(|p| oracle::cross_validate(&p)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SampleReport::from(&oracle::aggregate(&spec, &records)))
}

fn emit<T: serde::Serialize>(report: &T, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let s = serde_json::to_string_pretty(report).expect("reports serialize");
            writeln!(out, "{s}")
        }
        Format::Text => write!(out, "{}", report::render_text(report)),
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let io = |e: std::io::Error| CliError::Usage(format!("writing output: {e}"));
    match command {
        Command::Analyze {
            file,
            tol_psd,
            tol_verdict,
            beta_limit,
            format,
        } => {
            let tol = Tolerances {
                psd: tol_psd,
                verdict: tol_verdict,
                beta_limit,
            };
            let report = analyze(&file, &tol)?;
            emit(&report, format, out).map_err(io)?;
            if !report.psd {
                let min = report.eigenvalues_4lambda[0] / 4.0;
                let _ = writeln!(err, "{}: not a state, smallest eigenvalue {min}", file.display());
            }
            Ok(report.exit_code())
        }
        Command::Classify { file } => {
            let params = load_state(&file)?;
            let c = normal_form::classify(&params)?;
            writeln!(out, "{}: {}", c.kind.label(), c.detail).map_err(io)?;
            Ok(0)
        }
        Command::Sample {
            family,
            count,
            seed,
            format,
        } => {
            let report = sample(&family, count, seed)?;
            emit(&report, format, out).map_err(io)?;
            Ok(if report.passed { 0 } else { 1 })
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. Every failure maps to [`EXIT_ERROR`].
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}
