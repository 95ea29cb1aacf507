use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use oscdecay::{run, Command, EXIT_USAGE};

/// Numerical experiments on oscillatory integrals, dispersive decay and
/// restriction scaling.
#[derive(Parser)]
#[command(name = "oscdecay", version)]
struct Cli {
    /// Experiment to run.
    #[arg(value_enum)]
    command: Command,
    /// TOML run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides `output` in the config).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG plot.
    #[arg(long)]
    plot: bool,
}

/// `OSCDECAY_THREADS` caps the worker pool; unset means one per core.
#[cfg(feature = "parallel")]
fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("OSCDECAY_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| format!("OSCDECAY_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

#[cfg(not(feature = "parallel"))]
fn configure_threads() -> Result<(), String> {
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    ExitCode::from(run(cli.command, &cli.config, cli.out, cli.plot) as u8)
}
