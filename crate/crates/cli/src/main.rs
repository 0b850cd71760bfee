use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use biased_collapse::config;
use biased_collapse::error::CliError;
use biased_collapse::report::ReportFormat;
use biased_collapse::run::run_scenario;
use biased_collapse::twirl::twirl_report;
use biased_collapse::verify::{verify_report, verify_suite};

#[derive(Parser)]
#[command(name = "biased-collapse", version, about = "Density-matrix measurement simulator with pluggable outcome policies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => ReportFormat::Csv,
            Format::Json => ReportFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Execute one configured scenario and write its report.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Falls back to BIASED_COLLAPSE_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run the invariant battery; exit 0 on pass, 1 on any failure.
    Verify {
        /// Optional JSON `{"tolerance": <f64>}` overriding the default
        /// 1e-12 residual tolerance.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Estimate a twirl and report its distance to the exact limit.
    Twirl {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("BIASED_COLLAPSE_SEED") {
        Ok(value) => value.parse::<u64>().map_err(|_| {
            CliError::BadInput(format!(
                "BIASED_COLLAPSE_SEED must be an unsigned 64-bit integer, got '{value}'"
            ))
        }),
        Err(_) => Ok(0),
    }
}

fn dispatch(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Run {
            config,
            seed,
            out,
            format,
        } => {
            let seed = resolve_seed(seed)?;
            let scenario = config::load_run_config(&config, seed)?;
            let report = run_scenario(&scenario, seed)?;
            report.write(format.into(), &out)?;
            for row in &report.rows {
                println!(
                    "{}: analytic={} empirical={} stderr={} n={}",
                    row.label, row.analytic, row.empirical, row.stderr, row.n
                );
            }
            Ok(0)
        }
        Command::Verify {
            config,
            seed,
            out,
            format,
        } => {
            let seed = resolve_seed(seed)?;
            let tolerance = config::load_verify_config(config.as_deref())?;
            let (outcomes, all_passed) = verify_suite(tolerance, seed)?;
            for check in &outcomes {
                println!(
                    "{}: {} (observed {:e}, bound {:e}, n {})",
                    if check.passed() { "PASS" } else { "FAIL" },
                    check.name,
                    check.observed,
                    check.bound,
                    check.n
                );
            }
            let report = verify_report(&outcomes, tolerance, seed);
            if let Some(path) = out {
                report.write(format.into(), &path)?;
            }
            Ok(if all_passed { 0 } else { 1 })
        }
        Command::Twirl {
            config,
            seed,
            out,
            format,
        } => {
            let seed = resolve_seed(seed)?;
            let (dim, n_samples) = config::load_twirl_config(&config)?;
            let report = twirl_report(dim, n_samples, seed)?;
            report.write(format.into(), &out)?;
            for row in &report.rows {
                println!("{}: {}", row.label, row.empirical);
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
