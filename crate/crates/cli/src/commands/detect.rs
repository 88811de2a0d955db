use specad_core::detect::run_detection;

use crate::args::DetectArgs;
use crate::config::{resolve_detection, FileConfig};
use crate::errors::{from_core, CliResult};
use crate::io;

pub fn run(file: &FileConfig, args: &DetectArgs) -> CliResult<()> {
    let cfg = resolve_detection(file, &args.detection)?;
    let data = io::read_time_series(&args.input)?;
    let run = run_detection(&data, &cfg).map_err(from_core)?;

    for failure in &run.failures {
        eprintln!("window ending at {}: {}", failure.end_time, failure.reason);
    }
    if let Some(path) = &args.indicators {
        io::write_indicators(path, &run.series, &data.channels, cfg.located_channel_count)?;
    }
    if let Some(path) = &args.alarms {
        io::write_alarms(path, &run.alarms)?;
    }
    println!(
        "{} windows evaluated, {} alarm event(s), {} window failure(s)",
        run.series.len(),
        run.alarms.len(),
        run.failures.len()
    );
    Ok(())
}
