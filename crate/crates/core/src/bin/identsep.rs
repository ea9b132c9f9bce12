use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use identsep::cases::{self, CaseResult};
use identsep::random::DEFAULT_SEED;
use identsep::report;
use identsep::tol::TOL;
use identsep::verify;

#[derive(Parser)]
#[command(name = "identsep", version, about = "Separability checks for two identical particles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the registered cases.
    List,
    /// Run cases and compare against their expected values.
    Run {
        /// Case ids to run.
        ids: Vec<String>,
        /// Run every registered case.
        #[arg(long, conflicts_with = "ids")]
        all: bool,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Run the property suites.
    Verify {
        #[command(flatten)]
        config: RunConfig,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct RunConfig {
    #[arg(long, default_value_t = TOL, value_parser = positive)]
    tolerance: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(_) => Err("tolerance must be positive".into()),
        Err(e) => Err(e.to_string()),
    }
}

const NUMERIC_FAILURE: u8 = 1;
const USAGE: u8 = 2;

fn write(config: &RunConfig, text: &str) -> Result<(), u8> {
    match &config.output {
        Some(path) => fs::write(path, text).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", path.display());
            USAGE
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(ids: Vec<String>, all: bool, config: &RunConfig) -> Result<(), u8> {
    let ids: Vec<String> = if all || ids.is_empty() {
        cases::list().iter().map(|c| c.id.to_string()).collect()
    } else {
        ids
    };
    let mut results: Vec<CaseResult> = Vec::with_capacity(ids.len());
    for id in &ids {
        match cases::run_case(id) {
            Ok(r) => results.push(r),
            Err(identsep::Error::UnknownCase(id)) => {
                eprintln!("error: unknown case {id:?}; see `identsep list`");
                return Err(USAGE);
            }
            Err(e) => {
                eprintln!("error: case {id} failed to run: {e}");
                return Err(NUMERIC_FAILURE);
            }
        }
    }
    let text = match config.format {
        Format::Text => report::emit_text(&results, config.tolerance),
        Format::Json => report::emit_json(&results) + "\n",
    };
    write(config, &text)?;
    let failed: Vec<&CaseResult> = results.iter().filter(|r| !r.passed(config.tolerance)).collect();
    if failed.is_empty() {
        return Ok(());
    }
    if config.output.is_some() || matches!(config.format, Format::Json) {
        for r in failed {
            eprint!("{}", report::case_table(r, config.tolerance));
        }
    }
    Err(NUMERIC_FAILURE)
}

fn verify(config: &RunConfig) -> Result<(), u8> {
    let outcomes = verify::run_suites(config.tolerance, config.seed).map_err(|e| {
        eprintln!("error: {e}");
        NUMERIC_FAILURE
    })?;
    let text = match config.format {
        Format::Text => report::property_table(&outcomes),
        Format::Json => {
            let rows: Vec<serde_json::Value> = outcomes
                .iter()
                .map(|o| {
                    serde_json::json!({
                        "name": o.name,
                        "checks": o.checks,
                        "max_deviation": o.max_deviation,
                        "tolerance": o.tolerance,
                        "passed": o.passed(),
                        "witness": o.witness,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&rows).expect("plain data serializes") + "\n"
        }
    };
    write(config, &text)?;
    if outcomes.iter().all(|o| o.passed()) {
        Ok(())
    } else {
        Err(NUMERIC_FAILURE)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::List => {
            print!("{}", report::case_listing(cases::list()));
            Ok(())
        }
        Command::Run { ids, all, config } => run(ids, all, &config),
        Command::Verify { config } => verify(&config),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}
