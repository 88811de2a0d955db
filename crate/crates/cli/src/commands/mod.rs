pub mod detect;
pub mod evaluate;
pub mod fit;
pub mod locate;
pub mod simulate;

use crate::args::{Cli, Command};
use crate::config;
use crate::errors::{config_error, CliResult};

pub fn run(cli: Cli) -> CliResult<()> {
    let file = config::load(cli.config.as_deref())?;
    if let Some(n) = cli.threads.or(file.threads) {
        if n == 0 {
            return Err(config_error("thread count must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| config_error(format!("configuring {n} worker threads: {e}")))?;
    }
    match &cli.command {
        Command::Simulate(args) => simulate::run(&file, args),
        Command::Detect(args) => detect::run(&file, args),
        Command::Fit(args) => fit::run(&file, args),
        Command::Locate(args) => locate::run(&file, args),
        Command::Evaluate(args) => evaluate::run(&file, args),
    }
}
