//! Command line front end.
//!
//! Exit codes: 0 on success, 1 on domain errors, 2 on usage errors. Errors
//! are written to stderr as a single JSON line `{"error": ..., "message": ...}`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::model::{parse_system, BilinearSystem, IndexSet, SamplePoint};
use crate::reduction::{compute_reduction, is_valid_j, witness_nonequivalence};
use crate::relax::{self, LpSolution, Mode, RelaxationComparison, RowKind};
use crate::verify::{check_equivalence, oracle_all_valid_j_capped, ORACLE_CAP};

#[derive(Debug, Parser)]
#[command(
    name = "bilinred",
    version,
    about = "Replace bilinear terms w_j = x_j*y by linear reduction constraints Aw - by = 0"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Io {
    /// Problem file (JSON)
    #[arg(long)]
    pub input: PathBuf,
    /// Write the JSON result here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Full,
    Reduced,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Full => Mode::Full,
            ModeArg::Reduced => Mode::Reduced,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute J and the reduced system
    Reduce {
        #[command(flatten)]
        io: Io,
    },
    /// Randomized check of C = R_J
    Verify {
        #[command(flatten)]
        io: Io,
        /// Comma-separated 1-based indices; defaults to the computed J
        #[arg(long = "J")]
        j: Option<String>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Enumerate every valid J
    Oracle {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = ORACLE_CAP)]
        cap: usize,
    },
    /// Point of R_J outside C for an invalid J
    Witness {
        #[command(flatten)]
        io: Io,
        /// Comma-separated 1-based indices
        #[arg(long = "J")]
        j: String,
    },
    /// Build (and optionally solve) a McCormick LP relaxation
    Relax {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Write the LP in CPLEX LP format
        #[arg(long)]
        emit_lp: Option<PathBuf>,
        /// Solve the LP and compare against the other mode
        #[arg(long)]
        solve: bool,
    },
}

fn parse_index_list(text: &str, n: usize) -> Result<IndexSet> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(IndexSet::empty());
    }
    let indices = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::BadIndexSet(format!("{t:?} is not a 1-based index")))
        })
        .collect::<Result<Vec<_>>>()?;
    IndexSet::from_one_based(&indices, n)
}

fn load(path: &Path) -> Result<BilinearSystem> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_system(&text)
}

#[derive(Serialize)]
struct OracleOut {
    n: usize,
    m: usize,
    count: usize,
    #[serde(rename = "valid_J")]
    valid_j: Vec<IndexSet>,
    #[serde(rename = "reduction_J")]
    reduction_j: IndexSet,
}

#[derive(Serialize)]
struct WitnessOut {
    #[serde(rename = "J")]
    j: IndexSet,
    valid: bool,
    witness: Option<SamplePoint>,
}

#[derive(Serialize)]
struct RelaxOut {
    mode: Mode,
    rows: usize,
    linear_rows: usize,
    envelope_rows: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    lp_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    solution: Option<LpSolution>,
    #[serde(skip_serializing_if = "Option::is_none")]
    comparison: Option<RelaxationComparison>,
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializing plain data cannot fail")
}

fn execute(command: &Command) -> Result<(String, Option<&Path>)> {
    let out = match command {
        Command::Reduce { io } => {
            let system = load(&io.input)?;
            (compute_reduction(&system)?.to_json(), io.output.as_deref())
        }
        Command::Verify {
            io,
            j,
            trials,
            seed,
        } => {
            let system = load(&io.input)?;
            let j = match j {
                Some(text) => parse_index_list(text, system.n())?,
                None => compute_reduction(&system)?.j,
            };
            let report = check_equivalence(&system, &j, *trials, *seed)?;
            (report.to_json(), io.output.as_deref())
        }
        Command::Oracle { io, cap } => {
            let system = load(&io.input)?;
            let valid_j = oracle_all_valid_j_capped(&system, *cap)?;
            let out = OracleOut {
                n: system.n(),
                m: system.m(),
                count: valid_j.len(),
                valid_j,
                reduction_j: compute_reduction(&system)?.j,
            };
            (to_json(&out), io.output.as_deref())
        }
        Command::Witness { io, j } => {
            let system = load(&io.input)?;
            let j = parse_index_list(j, system.n())?;
            let out = WitnessOut {
                valid: is_valid_j(&system, &j)?,
                witness: witness_nonequivalence(&system, &j)?,
                j,
            };
            (to_json(&out), io.output.as_deref())
        }
        Command::Relax {
            io,
            mode,
            emit_lp,
            solve,
        } => {
            let system = load(&io.input)?;
            let mode = Mode::from(*mode);
            let lp = relax::build_relaxation(&system, mode)?;
            if let Some(path) = emit_lp {
                relax::emit_lp_file(&lp, path)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            }
            let (solution, comparison) = if *solve {
                (
                    Some(relax::solve_lp(&lp)),
                    Some(relax::compare_relaxations(&system)?),
                )
            } else {
                (None, None)
            };
            let out = RelaxOut {
                mode,
                rows: lp.rows.len(),
                linear_rows: lp.count_rows(RowKind::Linear) + lp.count_rows(RowKind::Reduction),
                envelope_rows: lp.count_rows(RowKind::Envelope),
                lp_file: emit_lp.as_ref().map(|p| p.display().to_string()),
                solution,
                comparison,
            };
            (to_json(&out), io.output.as_deref())
        }
    };
    Ok(out)
}

fn error_line(name: &str, message: &str) -> String {
    json!({"error": name, "message": message}).to_string()
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let summary: Vec<&str> = msg
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:"))
                .filter(|l| !l.is_empty())
                .collect();
            let _ = writeln!(stderr, "{}", error_line("Usage", &summary.join(" ")));
            return 2;
        }
    };

    let result = execute(&cli.command).and_then(|(text, output)| match output {
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => writeln!(stdout, "{text}").map_err(Error::from),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "{}", error_line(e.name(), &e.to_string()));
            1
        }
    }
}
