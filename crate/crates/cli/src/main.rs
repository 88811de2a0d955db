//! `specad` — spectral anomaly detection for multichannel time series.
//!
//! Subcommands cover the full workflow: `simulate` produces labeled
//! synthetic datasets, `detect` slides a window over a series and emits
//! indicator traces plus alarm events, `fit` analyzes a single window in
//! depth, `locate` exports the per-channel location profile, and `evaluate`
//! scores alarms against ground truth.

mod args;
mod commands;
mod config;
mod errors;
mod io;

use clap::Parser;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
