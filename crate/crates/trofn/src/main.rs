use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use trofn::cli::{self, CliError, Command, RunOptions};
use trofn::spectrum::SpectrumLimits;
use trofn::ExactNumber;

/// Exact arithmetic and evaluation-order spectra for trapezoidal ordered
/// fuzzy numbers.
///
/// Input is a JSON document `{"operands": [{"a": .., "b": .., "c": ..,
/// "d": ..}, ..]}`; coordinates are JSON integers or quoted exact numbers
/// ("2.5", "9/2"), and a record without "d" is triangular. Pass "-" to read
/// the document from stdin.
#[derive(Parser)]
#[command(name = "trofn", version)]
struct Args {
    #[command(subcommand)]
    action: Action,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Operand count limit for enumeration commands.
    #[arg(long, global = true, default_value_t = 8)]
    cap: usize,

    /// Evaluation count limit for the full spectrum.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: u64,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Action {
    /// Revised sum of exactly two operands.
    Add { input: PathBuf },
    /// Component-wise sum of exactly two operands; exit 3 if it does not exist.
    Kosinski { input: PathBuf },
    /// Left-to-right revised sum of the whole operand list.
    Fold { input: PathBuf },
    /// Revised sums over every parenthesization of the given operand order.
    Assoc { input: PathBuf },
    /// Left-folded revised sums over every operand permutation.
    Perms { input: PathBuf },
    /// Revised sums over every parenthesization of every permutation.
    Full { input: PathBuf },
    /// Membership degrees of a single operand at the given points.
    Membership {
        input: PathBuf,
        /// Sample point, exact ("2", "4.5", "9/2"); repeatable.
        #[arg(long = "at", value_name = "NUMBER")]
        at: Vec<String>,
    },
    /// Per-record validity and orientation of the operand document.
    Validate { input: PathBuf },
}

impl Action {
    fn split(self) -> Result<(Command, PathBuf), CliError> {
        Ok(match self {
            Action::Add { input } => (Command::Add, input),
            Action::Kosinski { input } => (Command::Kosinski, input),
            Action::Fold { input } => (Command::Fold, input),
            Action::Assoc { input } => (Command::Assoc, input),
            Action::Perms { input } => (Command::Perms, input),
            Action::Full { input } => (Command::Full, input),
            Action::Membership { input, at } => {
                let points = at
                    .iter()
                    .map(|text| {
                        text.parse::<ExactNumber>().map_err(|err| {
                            CliError::Parse(format!("sample point {text:?}: {err}"))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                (Command::Membership { points }, input)
            }
            Action::Validate { input } => (Command::Validate, input),
        })
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|err| CliError::Io(format!("cannot read stdin: {err}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path)
            .map_err(|err| CliError::Io(format!("cannot read {}: {err}", path.display())))
    }
}

fn run(args: Args) -> Result<i32, CliError> {
    let (command, input) = args.action.split()?;
    let text = read_input(&input)?;
    let document = cli::parse_document(&text)?;
    let options = RunOptions {
        limits: SpectrumLimits {
            cap: args.cap,
            budget: args.budget,
        },
    };
    let report = cli::run_command(&command, &document, &options)?;
    let rendered = match args.format {
        Format::Table => cli::render_table(&report),
        Format::Json => cli::render_json(&report),
    };
    match &args.output {
        Some(path) => fs::write(path, rendered)
            .map_err(|err| CliError::Io(format!("cannot write {}: {err}", path.display())))?,
        None => print!("{rendered}"),
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
