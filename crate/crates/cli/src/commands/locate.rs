use specad_core::detect::run_detection;

use crate::args::LocateArgs;
use crate::config::{resolve_detection, FileConfig};
use crate::errors::{from_core, CliResult};
use crate::io;

pub fn run(file: &FileConfig, args: &LocateArgs) -> CliResult<()> {
    let cfg = resolve_detection(file, &args.detection)?;
    let data = io::read_time_series(&args.input)?;
    let run = run_detection(&data, &cfg).map_err(from_core)?;

    for failure in &run.failures {
        eprintln!("window ending at {}: {}", failure.end_time, failure.reason);
    }
    io::write_location_profile(&args.out, &run.series, &data.channels)?;
    println!(
        "wrote location profiles for {} windows x {} channels to {}",
        run.series.len(),
        data.n_channels(),
        args.out.display()
    );
    Ok(())
}
