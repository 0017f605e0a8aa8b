use clap::{Parser, ValueEnum};
use nilcon::driver::{DEFAULT_SAMPLES, DEFAULT_SEED};
use nilcon::{parse, run, RunConfig};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// Run the analyses declared in a spec file and print a report.
///
/// Exits with status 0 only when every claim passes. A failed or skipped
/// claim gives status 1; an unreadable or malformed spec gives status 2.
#[derive(Debug, Parser)]
#[command(name = "nilcon", version)]
struct Cli {
    /// Spec file, or `-` for standard input.
    spec: PathBuf,
    /// Master seed; each analysis derives its own seed from it.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Monte Carlo samples per radius for growth analyses.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: u64,
    /// Multiplies every numeric tolerance.
    #[arg(long = "tol-scale", default_value_t = 1.0)]
    tol_scale: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn read_input(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.tol_scale > 0.0 && cli.tol_scale.is_finite()) {
        eprintln!("nilcon: --tol-scale must be a positive number");
        return ExitCode::from(2);
    }
    let input = match read_input(&cli.spec) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("nilcon: cannot read {}: {e}", cli.spec.display());
            return ExitCode::from(2);
        }
    };
    let doc = match parse(&input) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("{}:{e}", cli.spec.display());
            return ExitCode::from(2);
        }
    };
    let cfg = RunConfig { seed: cli.seed, samples: cli.samples, tol_scale: cli.tol_scale };
    let report = run(&doc, &input, &cfg);
    match cli.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
        Format::Csv => print!("{}", report.to_csv()),
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
