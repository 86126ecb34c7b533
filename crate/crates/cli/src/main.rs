//! `weaknull`: batch front-end for the weak-nullity engines.

mod problem;
mod report;
mod tasks;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use weaknull_core::error::Error as CoreError;

use problem::Overrides;
use report::Report;
use tasks::Task;

/// Exit statuses shared by every task.
pub mod exit {
    pub const DEFINITE: u8 = 0;
    pub const MISMATCH: u8 = 1;
    pub const INCONCLUSIVE: u8 = 2;
    pub const INPUT: u8 = 3;
    pub const ENGINE: u8 = 4;
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed config, literal or flag.
    Input(String),
    /// The engine refused or failed; message is the engine's own.
    Engine(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => exit::INPUT,
            CliError::Engine(_) => exit::ENGINE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Engine(m) => write!(f, "engine error: {m}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> CliError {
        match e {
            CoreError::Parse(_)
            | CoreError::InvalidArgument(_)
            | CoreError::NotInDomain(_)
            | CoreError::OutsideDomain(_) => CliError::Input(e.to_string()),
            other => CliError::Engine(other.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Parser, Debug)]
#[command(
    name = "weaknull",
    version,
    about = "Weak-null verdicts, essential ranges, finite models and C0 restrictions"
)]
struct Cli {
    /// Longest prefix J tabulated.
    #[arg(long = "budget-J", global = true)]
    budget_j: Option<usize>,
    /// Certificates are verified for k up to this index.
    #[arg(long = "budget-k", global = true)]
    budget_k: Option<u64>,
    /// Comma-separated positive thresholds, e.g. `1/2,1/4`.
    #[arg(long = "alpha-grid", global = true)]
    alpha_grid: Option<String>,
    /// Semicolon-separated strategies: identity, even, odd, dyadic, chain,
    /// arith:START:STEP or an explicit list such as `2,4,8,16`.
    #[arg(long = "subseq", global = true)]
    subseq: Option<String>,
    #[arg(long, value_enum, default_value = "human", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Global weak-null verdict for a sequence family.
    Weaknull { config: PathBuf },
    /// Weak-null verdict at a point of the one-point compactification.
    WeaknullAt {
        config: PathBuf,
        /// Rational or `inf`; overrides the config's `x0`.
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<String>,
    },
    /// Essential range of a piecewise-linear function.
    Essrange { config: PathBuf },
    /// Essential range at a point.
    EssrangeAt {
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<String>,
    },
    /// 0-1 measures, extreme points, Jordan split and ranges on a finite space.
    FiniteModel {
        config: Option<PathBuf>,
        /// Comma-separated point weights.
        #[arg(long)]
        weights: Option<String>,
        /// Comma-separated function values.
        #[arg(long)]
        values: Option<String>,
        /// Comma-separated point masses of an additive set function.
        #[arg(long)]
        measure: Option<String>,
    },
    /// Restriction of a finitely additive measure to C0.
    Restrict { config: PathBuf },
    /// Runs the built-in corpus against its expected verdicts.
    Corpus,
    /// Re-runs a machine report from its embedded inputs and compares.
    Replay { report: PathBuf },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let mut o = Overrides {
        budget_j: cli.budget_j,
        budget_k: cli.budget_k,
        alpha_grid: cli.alpha_grid,
        subseq: cli.subseq,
        ..Overrides::default()
    };
    let (task, path) = match cli.command {
        Command::Weaknull { config } => (Task::Weaknull, Some(config)),
        Command::WeaknullAt { config, x0 } => {
            o.x0 = x0;
            (Task::WeaknullAt, Some(config))
        }
        Command::Essrange { config } => (Task::Essrange, Some(config)),
        Command::EssrangeAt { config, x0 } => {
            o.x0 = x0;
            (Task::EssrangeAt, Some(config))
        }
        Command::FiniteModel {
            config,
            weights,
            values,
            measure,
        } => {
            o.weights = weights;
            o.values = values;
            o.measure = measure;
            (Task::FiniteModel, config)
        }
        Command::Restrict { config } => (Task::Restrict, Some(config)),
        Command::Corpus => (Task::Corpus, None),
        Command::Replay { report } => {
            let text = read(&report)?;
            let outcome = report::replay(&text)?;
            match cli.format {
                Format::Human => println!("{}", outcome.summary()),
                Format::Machine => println!("{}", outcome.to_json_line()),
            }
            return Ok(if outcome.identical {
                exit::DEFINITE
            } else {
                exit::MISMATCH
            });
        }
    };
    let source = path.as_ref().map(read).transpose()?;
    let path = path.map(|p| p.display().to_string());
    let report = Report::run(task, path, source, o)?;
    match cli.format {
        Format::Human => print!("{}", report.human()),
        Format::Machine => {
            for line in report.machine_lines() {
                println!("{line}");
            }
        }
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::INPUT } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("weaknull: {e}");
            ExitCode::from(e.code())
        }
    }
}
