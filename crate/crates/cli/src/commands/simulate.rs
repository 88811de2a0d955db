use specad_core::detect::TruthEvent;
use specad_core::synth::{generate, plant_factors, AnomalyKind};

use crate::args::SimulateArgs;
use crate::config::{resolve_scenario, FileConfig};
use crate::errors::{from_core, CliResult};
use crate::io;

pub fn run(file: &FileConfig, args: &SimulateArgs) -> CliResult<()> {
    let spec = resolve_scenario(file, args);
    let data = if let Some(p) = args.plant_factors {
        let scale = args.loading_scale.unwrap_or(4.0);
        let lag = args.residual_lag.unwrap_or(spec.noise.lag);
        plant_factors(spec.channels, spec.samples, p, scale, lag, spec.seed)
            .map_err(from_core)?
    } else {
        generate(&spec).map_err(from_core)?
    };
    io::write_time_series(&args.out, &data)?;

    if let Some(truth_path) = &args.truth {
        let events: Vec<TruthEvent> = if args.plant_factors.is_some() {
            Vec::new()
        } else {
            spec.anomalies
                .iter()
                .map(|a| TruthEvent {
                    onset: a.onset as i64,
                    // Drift perturbations touch every channel, so no single
                    // channel label applies.
                    channel: match a.kind {
                        AnomalyKind::Drift => None,
                        _ => Some(a.channel),
                    },
                })
                .collect()
        };
        io::write_truth(truth_path, &events)?;
    }

    println!(
        "wrote {} channels x {} samples to {}",
        data.n_channels(),
        data.n_samples(),
        args.out.display()
    );
    Ok(())
}
