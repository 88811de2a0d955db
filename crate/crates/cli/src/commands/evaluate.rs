use specad_core::detect::evaluate_tdr_far;

use crate::args::EvaluateArgs;
use crate::config::FileConfig;
use crate::errors::{config_error, CliResult, Classify, Kind};
use crate::io;

pub fn run(file: &FileConfig, args: &EvaluateArgs) -> CliResult<()> {
    let tolerance = args.tolerance.or(file.tolerance).unwrap_or(10);
    if tolerance < 0 {
        return Err(config_error("tolerance must be non-negative"));
    }
    let alarms = io::read_alarms(&args.alarms)?;
    let truths = io::read_truth(&args.truth)?;
    let evaluation = evaluate_tdr_far(&alarms, &truths, tolerance);
    let json = serde_json::to_string_pretty(&evaluation)
        .classify(Kind::Io, "serializing evaluation report")?;
    match &args.out {
        Some(path) => std::fs::write(path, json + "\n")
            .classify(Kind::Io, format!("writing {}", path.display()))?,
        None => println!("{json}"),
    }
    Ok(())
}
