use serde::Serialize;
use specad_core::factor::{fit_window, residual_density, FitConfig, ModelDensityCache};
use specad_core::spectra::{ar1_binned_density, Ar1SpectrumParams, SpectralDensity};
use specad_core::window::{covariance, esd_eigenvalues, form_window, standardize_rows};

use crate::args::FitArgs;
use crate::config::{resolve_fit, FileConfig};
use crate::errors::{from_core, CliResult, Classify, Kind};
use crate::io;

#[derive(Serialize)]
struct FitReport {
    factor_count: usize,
    lag: f64,
    divergence: f64,
    window_width: usize,
    end_index: usize,
    aspect_ratio: f64,
}

pub fn run(file: &FileConfig, args: &FitArgs) -> CliResult<()> {
    let cfg = resolve_fit(file, args);
    let data = io::read_time_series(&args.input)?;
    let width = args.window_width.unwrap_or_else(|| data.n_samples());
    let end = args.end_index.unwrap_or(data.n_samples().saturating_sub(1));

    let window = form_window(&data, end, width).map_err(from_core)?;
    let standardized = standardize_rows(&window).map_err(from_core)?;
    let ratio = standardized.aspect_ratio();
    let cache = ModelDensityCache::build(ratio, &cfg).map_err(from_core)?;
    let est = fit_window(&standardized, &cache, &cfg).map_err(from_core)?;

    let report = FitReport {
        factor_count: est.factor_count,
        lag: est.lag,
        divergence: est.divergence,
        window_width: width,
        end_index: end,
        aspect_ratio: ratio,
    };
    let json = serde_json::to_string_pretty(&report)
        .classify(Kind::Io, "serializing fit report")?;
    match &args.report {
        Some(path) => std::fs::write(path, json + "\n")
            .classify(Kind::Io, format!("writing {}", path.display()))?,
        None => println!("{json}"),
    }

    if let Some(path) = &args.surface {
        io::write_surface(path, &est.factor_candidates, &est.lag_grid, &est.distance_surface)?;
    }
    if let Some(path) = &args.empirical_density {
        let density = match &est.decomposition {
            Some(decomp) => residual_density(decomp, &est.bin_edges).map_err(from_core)?,
            None => {
                let eigs = esd_eigenvalues(&covariance(&standardized));
                SpectralDensity::from_eigenvalues(&eigs, &est.bin_edges).map_err(from_core)?
            }
        };
        io::write_density(path, &density)?;
    }
    if let Some(path) = &args.model_density {
        io::write_density(path, &model_density(&cfg, est.lag, ratio, &est.bin_edges)?)?;
    }
    Ok(())
}

fn model_density(
    cfg: &FitConfig,
    lag: f64,
    ratio: f64,
    edges: &[f64],
) -> CliResult<SpectralDensity> {
    let params = Ar1SpectrumParams::new(lag, ratio).map_err(from_core)?;
    let grid = params.default_grid(cfg.curve_points, cfg.curve_headroom);
    ar1_binned_density(params, &grid, cfg.smoothing, edges).map_err(from_core)
}
