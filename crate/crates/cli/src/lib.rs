//! The `sepalg` command line: argument parsing, field dispatch and exit codes.
//!
//! Exit codes: 0 when a verdict was computed (whatever it is), 1 for invalid
//! input, 2 when a search ran out of budget, 3 when two routes that must agree
//! did not.

pub mod commands;
pub mod input;
pub mod report;
pub mod verify;
pub mod witness;

use clap::{Args, Parser, Subcommand};
use sepalg::search::SearchConfig;
use sepalg::Error;

pub use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_COHERENCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "sepalg",
    version,
    about = "Exact separability and approximation checks for finite-dimensional algebras"
)]
pub struct Cli {
    /// Print the machine-readable report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Trials per round of randomized searches.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Length cutoff for resolutions.
    #[arg(long, global = true, default_value_t = sepalg::homological::DEFAULT_CUTOFF)]
    pub cutoff: usize,
    /// Characteristic to read fixtures over (0 or 2, 3, 5, 7).
    #[arg(long, global = true)]
    pub field: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Args)]
pub struct Target {
    /// A bimodule: `fixtures:NAME`, `FILE.json#NAME` or `FILE.json`.
    #[arg(long, conflicts_with = "extension", required_unless_present = "extension")]
    pub bimodule: Option<String>,
    /// A ring extension, referenced the same way.
    #[arg(long)]
    pub extension: Option<String>,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Decide separability of a bimodule or an extension.
    CheckSeparable(Target),
    /// Compute a separability element of a bimodule or of `M^n`.
    SepElement {
        #[arg(long)]
        bimodule: String,
        #[arg(long)]
        power: Option<usize>,
    },
    /// Decide biseparability of a bimodule.
    CheckBiseparable {
        #[arg(long)]
        bimodule: String,
    },
    /// Separable, split and Frobenius verdicts for an extension.
    CheckExtension {
        #[arg(long)]
        extension: String,
    },
    /// Projective dimension of a catalog module.
    Projdim {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        module: String,
    },
    /// Dominant dimension of an algebra.
    Domdim {
        #[arg(long)]
        algebra: String,
    },
    /// Counit approximation of a module over the left algebra of a bimodule.
    Approximate {
        #[arg(long)]
        bimodule: String,
        #[arg(long)]
        module: String,
    },
    /// Look for a Frobenius isomorphism of an extension.
    FrobeniusCheck {
        #[arg(long)]
        extension: String,
    },
    /// Non-degeneracy of the conditional expectation of a Frobenius extension.
    Nondegenerate {
        #[arg(long)]
        extension: String,
    },
    /// Run one check, or every check when `--thm` is absent.
    Verify(VerifyArgs),
    /// Inspect the built-in catalog.
    #[command(subcommand)]
    Fixtures(FixturesCommand),
    /// Re-check the witness of a saved `--json` report.
    Revalidate { report: String },
}

#[derive(Clone, Debug, Default, Args)]
pub struct VerifyArgs {
    /// Check identifier (see `verify --list`).
    #[arg(long)]
    pub thm: Option<String>,
    #[arg(long)]
    pub list: bool,
    #[arg(long)]
    pub bimodule: Option<String>,
    /// Second bimodule for checks on pairs.
    #[arg(long)]
    pub with: Option<String>,
    #[arg(long)]
    pub extension: Option<String>,
    /// Power for transport through `M^n`.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Clone, Debug, Subcommand)]
pub enum FixturesCommand {
    /// Names of algebras, extensions, bimodules and modules.
    List,
    /// The catalog as a JSON document.
    Export,
}

/// Shared knobs passed to every command.
#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub search: SearchConfig,
    pub cutoff: usize,
    pub field: Option<u64>,
}

impl Options {
    fn from_cli(cli: &Cli) -> Self {
        let mut search = SearchConfig {
            seed: cli.seed,
            ..SearchConfig::default()
        };
        if let Some(b) = cli.budget {
            search.trials = b;
        }
        Options {
            search,
            cutoff: cli.cutoff,
            field: cli.field,
        }
    }
}

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Coherence(_) => EXIT_COHERENCE,
        Error::InfiniteDimensional(_) => EXIT_INCONCLUSIVE,
        _ => EXIT_INVALID,
    }
}

fn verdict_code(r: &Report) -> i32 {
    match r.verdict.as_str() {
        "inconclusive" => EXIT_INCONCLUSIVE,
        "fail" => EXIT_COHERENCE,
        _ => EXIT_OK,
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let opts = Options::from_cli(&cli);
    match commands::execute(&cli.command, &opts) {
        Ok(commands::Output::Report(r)) => Outcome {
            code: verdict_code(&r),
            stdout: if cli.json { r.json() + "\n" } else { r.text() },
            stderr: String::new(),
        },
        Ok(commands::Output::Raw(text)) => Outcome {
            code: EXIT_OK,
            stdout: text,
            stderr: String::new(),
        },
        Err(e) => {
            let code = exit_code(&e);
            let stdout = if cli.json {
                serde_json::to_string_pretty(&serde_json::json!({ "error": e.to_string(), "exit": code }))
                    .expect("json")
                    + "\n"
            } else {
                String::new()
            };
            Outcome {
                code,
                stdout,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}
