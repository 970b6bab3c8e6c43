use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pontryagin::commands::{self, FuzzArgs, MeasureArg};
use pontryagin::report::{render_json, render_text};
use pontryagin::{CliError, Outcome, EXIT_FAILURE, EXIT_INPUT};
use pontryagin_core::linalg::Tolerance;

/// Finite *-semigroups, their characters, and shift operators on RKHS realizations.
///
/// Instance arguments are `.sgp` files or built-in names such as `catalog:z2^3`.
/// Exit codes: 0 success, 1 a checked assertion failed, 2 input error.
#[derive(Parser)]
#[command(name = "pontryagin", version)]
struct Cli {
    /// Emit canonical JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Classification tolerance (positive).
    #[arg(long, global = true, default_value_t = Tolerance::DEFAULT_EPS)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MeasureChoice {
    /// Measure file of `atom <character> <weight>` lines.
    #[arg(long)]
    measure: Option<PathBuf>,
    /// Draw a random measure with this many atoms.
    #[arg(long)]
    random: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the *-semigroup laws; violations come with witnesses.
    Validate { instance: String },
    /// List the characters in canonical order.
    Characters { instance: String },
    /// The separative quotient and its class map.
    Quotient { instance: String },
    /// Archimedean components and their order.
    Components { instance: String },
    /// Realize a moment function and analyze the shift by `u`.
    Analyze {
        instance: String,
        /// Label of the shifting element.
        #[arg(long)]
        u: String,
        #[command(flatten)]
        measure: MeasureChoice,
        /// Seed for `--random`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the built-in example suite.
    Examples,
    /// Randomized checks over the catalog or the given instances.
    Fuzz {
        instances: Vec<String>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write one replay directory per violation here.
        #[arg(long)]
        dump: Option<PathBuf>,
        /// Harness self-test: corrupt the negative-squares count by one.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(CliError::Input(format!("--tol must be positive, got {}", cli.tol)));
    }
    let tol = Tolerance::new(cli.tol);
    match &cli.command {
        Command::Validate { instance } => commands::validate(instance),
        Command::Characters { instance } => commands::characters(instance),
        Command::Quotient { instance } => commands::quotient(instance),
        Command::Components { instance } => commands::components(instance),
        Command::Analyze {
            instance,
            u,
            measure,
            seed,
        } => {
            let m = match (&measure.measure, measure.random) {
                (Some(path), _) => MeasureArg::File(path.clone()),
                (None, Some(atoms)) => MeasureArg::Random { atoms, seed: *seed },
                (None, None) => unreachable!("clap requires one measure option"),
            };
            commands::analyze_cmd(instance, u, &m, tol)
        }
        Command::Examples => Ok(commands::examples()),
        Command::Fuzz {
            instances,
            trials,
            seed,
            dump,
            inject_fault,
        } => commands::fuzz(&FuzzArgs {
            instances,
            trials: *trials,
            seed: *seed,
            tol,
            dump: dump.as_deref(),
            inject_fault: *inject_fault,
        }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            let text = if cli.json { render_json(&out.report) } else { render_text(&out.report) };
            print!("{text}");
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILURE)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
