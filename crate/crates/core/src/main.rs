use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use krall::classical_families::DualHahnParams;
use krall::cli_reporter::{self, error_outcome, EightCouplesConfig, Family, Outcome, Suite, EXIT_PARAMETER};
use krall::exact_algebra::{parse_rational, rat, Rational};
use krall::krall_builder::KrallInstance;
use krall::Error;

/// Exact dual Hahn polynomials, their Christoffel transforms and the higher-order
/// difference operators they are eigenfunctions of. Every command prints JSON.
#[derive(Parser)]
#[command(name = "krall", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Coefficients of a classical polynomial, or its value at `--x`.
    Eval {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        alpha: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        beta: Rational,
        #[arg(long = "N", value_parser = rational, allow_hyphen_values = true)]
        big_n: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        x: Option<Rational>,
    },
    /// The polynomials q_n, the operator, P_S and the target measure of an instance file.
    Construct { instance: PathBuf },
    /// Runs the verification suite on an instance file.
    Verify {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "full")]
        suite: SuiteArg,
        /// Adds wall-clock milliseconds to every check (the output is then no longer reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Reproduces a worked example.
    Examples {
        #[arg(value_enum)]
        name: ExampleArg,
        /// Overrides N (defaults: 7, 100 and 6).
        #[arg(long = "N")]
        big_n: Option<i64>,
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    DualHahn,
    Hahn,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Full,
    Fast,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleArg {
    Geronimus,
    EightCouples,
    DOperatorDisplay,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn load(path: &PathBuf) -> krall::Result<KrallInstance> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    KrallInstance::from_json(&text)
}

fn params(n: Option<i64>) -> Option<DualHahnParams> {
    n.map(|n| DualHahnParams::new(rat(1, 2), rat(1, 3), Rational::from_integer(n.into())))
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Eval { family, n, alpha, beta, big_n, x } => {
            let family = match family {
                FamilyArg::DualHahn => Family::DualHahn,
                FamilyArg::Hahn => Family::Hahn,
            };
            cli_reporter::eval(family, n, alpha, beta, big_n, x)
        }
        Command::Construct { instance } => match load(&instance) {
            Ok(inst) => cli_reporter::construct(&inst),
            Err(e) => error_outcome(&e),
        },
        Command::Verify { instance, suite, timing } => {
            let suite = match suite {
                SuiteArg::Full => Suite::Full,
                SuiteArg::Fast => Suite::Fast,
            };
            match load(&instance) {
                Ok(inst) => cli_reporter::verify(&inst, suite, timing),
                Err(e) => error_outcome(&e),
            }
        }
        Command::Examples { name, big_n, timing } => {
            let report = match name {
                ExampleArg::Geronimus => Ok(cli_reporter::geronimus(params(big_n), timing)),
                ExampleArg::DOperatorDisplay => cli_reporter::d_operator_display(params(big_n), timing),
                ExampleArg::EightCouples => {
                    let mut config = EightCouplesConfig::default();
                    if let Some(p) = params(big_n) {
                        config.params = p;
                    }
                    cli_reporter::eight_couples(&config, timing)
                }
            };
            match report {
                Ok(r) => r.to_outcome(),
                Err(e) => error_outcome(&e),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let out = Outcome {
                json: json!({ "error": { "kind": "Usage", "message": e.to_string().trim_end() } }),
                exit: EXIT_PARAMETER,
            };
            print!("{}", out.render());
            return ExitCode::from(out.exit as u8);
        }
    };
    let out = run(cli.command);
    print!("{}", out.render());
    ExitCode::from(out.exit as u8)
}
