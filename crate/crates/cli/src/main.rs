//! `qkd-turbo`: sweep the interception probability, run BB84 with turbo-code
//! reconciliation at each point, and write the results as CSV.

mod settings;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::Parser;
use qkd_turbo::harness::{emit_csv, run_sweep};

use settings::Settings;

#[derive(Debug, Parser)]
#[command(name = "qkd-turbo", version, about)]
struct Cli {
    /// TOML file with the same keys as the long flags (e.g. `s-max = 0.5`)
    #[arg(long)]
    config: Option<PathBuf>,

    #[command(flatten)]
    settings: Settings,
}

fn run(cli: Cli) -> Result<()> {
    let file = match &cli.config {
        Some(path) => Settings::from_file(path)?,
        None => Settings::default(),
    };
    let config = cli.settings.or(file).into_config()?;
    let records = run_sweep(&config)?;
    emit_csv(&records, &config.output_path)?;
    eprintln!(
        "wrote {} sweep points to {}",
        records.len(),
        config.output_path.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
