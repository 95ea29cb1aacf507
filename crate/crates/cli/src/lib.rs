//! The `oscdecay` command line: one subcommand per experiment, each driven by
//! a TOML config and writing `<command>.csv`, `<command>.json` and optionally
//! `<command>.svg` into the output directory.

// `!(x > 0.0)` style guards are kept on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod plot;
pub mod report;

use std::fs;
use std::path::{Path, PathBuf};

pub use config::{parse_config, Command, ConfigErrors, RunConfig};
pub use plot::{emit_plot, PlotError, PlotSpec, Series};
pub use report::{ResultRow, Summary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn write(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

/// Runs one experiment end to end and returns the process exit code.
/// Diagnostics go to stderr, a one-line-per-result digest to stdout.
pub fn run(command: Command, config_path: &Path, out: Option<PathBuf>, plot: bool) -> i32 {
    let text = match fs::read_to_string(config_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", config_path.display());
            return EXIT_USAGE;
        }
    };
    let cfg = match parse_config(&text, command, out) {
        Ok(c) => c,
        Err(errs) => {
            eprintln!("error: invalid config {}:", config_path.display());
            for e in &errs.0 {
                eprintln!("  {e}");
            }
            return EXIT_USAGE;
        }
    };
    if let Err(e) = fs::create_dir_all(&cfg.output) {
        eprintln!("error: cannot create output directory {}: {e}", cfg.output.display());
        return EXIT_USAGE;
    }
    let stem = cfg.output.join(command.name());
    let json_path = stem.with_extension("json");
    let mut summary = Summary {
        command: command.name().into(),
        config_hash: cfg.config_hash.clone(),
        version: VERSION.into(),
        inputs: cfg.inputs.clone(),
        results: Vec::new(),
        exit_reason: String::new(),
    };

    let outcome = match commands::execute(&cfg) {
        Ok(o) => o,
        Err(e) => {
            summary.exit_reason = format!("error: {e}");
            eprintln!("{}", summary.exit_reason);
            return match write(&json_path, &summary.to_json()) {
                Ok(()) => EXIT_FAILURE,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    EXIT_FAILURE
                }
            };
        }
    };
    summary.results = outcome.results;
    summary.exit_reason = report::exit_reason(&summary.results);

    let mut artifacts = vec![(stem.with_extension("csv"), outcome.csv)];
    if plot {
        match outcome.plot.as_ref().map(emit_plot) {
            Some(Ok(svg)) => artifacts.push((stem.with_extension("svg"), svg)),
            Some(Err(e)) => {
                summary.exit_reason = format!("error: plot: {e}");
            }
            None => eprintln!("note: {command} has no plot"),
        }
    }
    artifacts.push((json_path, summary.to_json()));
    for (path, contents) in &artifacts {
        if let Err(msg) = write(path, contents) {
            eprintln!("error: {msg}");
            return EXIT_FAILURE;
        }
    }

    for r in &summary.results {
        let bound = r.bound.map(|b| format!(" (bound {b:.6e})")).unwrap_or_default();
        println!(
            "{} {} = {:.6e}{bound}",
            if r.pass { "PASS" } else { "FAIL" },
            r.name,
            r.value
        );
    }
    println!("{}: {}", command, summary.exit_reason);
    if summary.exit_reason == "ok" {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}
