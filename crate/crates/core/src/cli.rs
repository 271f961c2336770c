//! Command-line surface.
//!
//! Exit codes: 0 success / yes, 3 no, 4 oracle and solver disagree,
//! 2 bad input, 1 internal error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{OracleError, ParseError, SolverError};
use crate::io::{self, parse_election_file, ElectionFile};
use crate::majority::{build_majority_graph, overlay_identical_manipulators};
use crate::model::Mode;
use crate::oracle::brute_force_wcm;
use crate::schulze::{path_strength_matrix, winners_from_strengths};
use crate::solver::{solve_wcm, verify_manipulation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NO: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "schulze-wcm",
    version,
    about = "Schulze winners and weighted coalitional manipulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the Schulze winner set.
    Winners {
        file: PathBuf,
        /// Also print the path strength matrix.
        #[arg(long)]
        strengths: bool,
    },
    /// Decide whether the manipulators can make the target win, and how.
    Manipulate {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        json: bool,
    },
    /// Check whether all manipulators casting the given ranking makes the target win.
    Verify {
        file: PathBuf,
        /// Ranking such as "c > a > b".
        #[arg(long)]
        vote: String,
        #[arg(long, value_enum, default_value = "unique")]
        mode: ModeArg,
    },
    /// Compare the solver against exhaustive search.
    OracleCheck {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Restrict the search to all manipulators casting one ranking.
        #[arg(long)]
        identical_only: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Unique,
    Cowinner,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Unique => Mode::Unique,
            ModeArg::Cowinner => Mode::Cowinner,
        }
    }
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::Model(m) => Failure::Input(m.to_string()),
            SolverError::Capacity(_) => Failure::Input(e.to_string()),
            SolverError::Invariant(_) => Failure::Internal(e.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_INPUT
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            EXIT_INTERNAL
        }
    }
}

fn load(path: &Path) -> Result<ElectionFile, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_election_file(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut text = String::new();
    let code = match command {
        Command::Winners { file, strengths } => {
            let election = load(&file)?;
            let graph = build_majority_graph(&election.profile).map_err(SolverError::from)?;
            let table = path_strength_matrix(&graph);
            text.push_str(&io::render_winners(
                election.candidates(),
                &winners_from_strengths(&table),
            ));
            if strengths {
                text.push_str(&io::render_strengths(&table));
            }
            EXIT_OK
        }
        Command::Manipulate { file, mode, json } => {
            let election = load(&file)?;
            let cands = election.candidates().clone();
            let instance = election.into_instance(mode.into())?;
            let outcome = solve_wcm(&instance)?;
            text = if json {
                io::render_outcome_json(&outcome, &cands)
            } else {
                io::render_outcome_text(&outcome, &cands)
            };
            if outcome.manipulable {
                EXIT_OK
            } else {
                EXIT_NO
            }
        }
        Command::Verify { file, vote, mode } => {
            let election = load(&file)?;
            let cands = election.candidates().clone();
            let instance = election.into_instance(mode.into())?;
            let vote = io::parse_ballot_ranking(&vote, &cands, 0)
                .map_err(|e| Failure::Input(format!("--vote: {}", e.message)))?;
            let valid = verify_manipulation(&instance, &vote)?;
            let base = build_majority_graph(instance.profile()).map_err(SolverError::from)?;
            let combined = overlay_identical_manipulators(&base, &vote, instance.manipulator_total())
                .map_err(SolverError::from)?;
            let winners = winners_from_strengths(&path_strength_matrix(&combined));
            text.push_str(&format!("vote: {}\n", vote.display(&cands)));
            text.push_str(&io::render_winners(&cands, &winners));
            text.push_str(if valid { "result: VALID\n" } else { "result: INVALID\n" });
            if valid {
                EXIT_OK
            } else {
                EXIT_NO
            }
        }
        Command::OracleCheck {
            file,
            mode,
            identical_only,
        } => {
            let election = load(&file)?;
            let instance = election.into_instance(mode.into())?;
            let oracle = brute_force_wcm(&instance, identical_only)?;
            let outcome = solve_wcm(&instance)?;
            let agree = oracle.manipulable == outcome.manipulable;
            text.push_str(&format!("solver: {}\n", io::verdict_word(outcome.manipulable)));
            text.push_str(&format!("oracle: {}\n", io::verdict_word(oracle.manipulable)));
            text.push_str(if agree { "agreement: yes\n" } else { "agreement: NO\n" });
            if agree {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            }
        }
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Internal(format!("cannot write output: {e}")))?;
    Ok(code)
}
