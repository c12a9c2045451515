use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use qbattery_cli::config::{self, Recipe};
use qbattery_cli::recipes;
use qbattery_cli::sweep::{self, SweepOptions};
use qbattery_cli::verify;

#[derive(Parser)]
#[command(name = "qbattery", about = "Quantum-battery sweep runner and verifier")]
struct Cli {
    /// Output directory (overrides config and QBATTERY_OUT).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for grid evaluation.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Relative tolerance for the adaptive integrators.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Override the Fock truncation size (both modes).
    #[arg(long, global = true)]
    fock_n: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep described by a config file.
    Sweep { config: PathBuf },
    /// Run the acceptance-criteria battery and print a pass/fail table.
    Verify,
    /// List recipe presets and what they reproduce.
    Recipes,
}

fn main() -> ExitCode {
    match run() {
        Ok(ok) => {
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run() -> anyhow::Result<bool> {
    let cli = Cli::parse();
    let opts = SweepOptions {
        workers: cli.workers,
        tol: cli.tol,
        fock_n: cli.fock_n,
    };
    match cli.command {
        Command::Sweep { config } => {
            let text = std::fs::read_to_string(&config)
                .with_context(|| format!("reading {}", config.display()))?;
            let mut spec = config::parse_config(&text).map_err(|e| anyhow::anyhow!("{e}"))?;
            if let Some(out) = cli.out {
                spec.output_path = out;
            } else if let Ok(env_out) = std::env::var("QBATTERY_OUT") {
                spec.output_path = PathBuf::from(env_out)
                    .join(spec.recipe.to_string().to_ascii_lowercase());
            }
            let report = sweep::run_sweep(&spec, &opts)?;
            println!("wrote {}", report.manifest_path.display());
            for f in &report.files {
                println!("wrote {}", f.display());
            }
            for (status, count) in &report.status_counts {
                println!("{status}: {count}");
            }
            Ok(true)
        }
        Command::Verify => {
            let report = verify::run_all(cli.tol);
            print!("{}", verify::render_table(&report));
            Ok(report.iter().all(|r| r.pass))
        }
        Command::Recipes => {
            for recipe in Recipe::ALL {
                println!("{:8}  {}", recipe.to_string(), recipes::describe(recipe));
            }
            Ok(true)
        }
    }
}
