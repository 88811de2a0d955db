use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Spectral anomaly detection for multichannel time series.
#[derive(Debug, Parser)]
#[command(name = "specad", version, about)]
pub struct Cli {
    /// TOML file supplying scenario, detection, and fit settings.
    /// Command-line flags override values from the file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Worker threads for window evaluation (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic dataset from a scenario description.
    Simulate(SimulateArgs),
    /// Slide a window over a dataset and report indicator series and alarms.
    Detect(DetectArgs),
    /// Estimate factor count and noise lag for one window.
    Fit(FitArgs),
    /// Export the per-channel location profile over time.
    Locate(LocateArgs),
    /// Score an alarm list against labeled ground truth.
    Evaluate(EvaluateArgs),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Destination CSV for the generated series.
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,

    /// Optional destination for ground-truth event records (JSON lines).
    #[arg(long, value_name = "PATH")]
    pub truth: Option<PathBuf>,

    /// RNG seed override.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Channel count override.
    #[arg(long)]
    pub channels: Option<usize>,

    /// Sample count override.
    #[arg(long)]
    pub samples: Option<usize>,

    /// AR(1) lag coefficient of the background noise.
    #[arg(long, value_name = "B")]
    pub noise_lag: Option<f64>,

    /// Signal-to-noise ratio of the baseline against the noise.
    #[arg(long)]
    pub snr: Option<f64>,

    /// Instead of the scenario, plant this many shared factors on top of
    /// AR(1) rows (ignores baseline/anomaly settings).
    #[arg(long, value_name = "P")]
    pub plant_factors: Option<usize>,

    /// Loading scale for planted factors.
    #[arg(long, value_name = "S", requires = "plant_factors")]
    pub loading_scale: Option<f64>,

    /// AR(1) lag of the residual rows under planted factors.
    #[arg(long, value_name = "B", requires = "plant_factors")]
    pub residual_lag: Option<f64>,
}

/// Detection settings shared by `detect` and `locate`.
#[derive(Debug, Args)]
pub struct DetectionFlags {
    /// Sliding window width in samples.
    #[arg(long, value_name = "T")]
    pub window_width: Option<usize>,

    /// Trailing indicator history length used for confidence scoring.
    #[arg(long, value_name = "T2")]
    pub history_length: Option<usize>,

    /// Confidence threshold in (0, 1] above which a window is alarming.
    #[arg(long)]
    pub threshold: Option<f64>,

    /// Spectral test function: chebyshev, entropy, likelihood_ratio, wasserstein.
    #[arg(long, value_name = "NAME")]
    pub test_function: Option<String>,

    /// Indicator driving alarms: combined, n_phi, b_hat.
    #[arg(long, value_name = "NAME")]
    pub alarm_indicator: Option<String>,

    /// Shortest run of alarming windows reported as an event.
    #[arg(long, value_name = "N")]
    pub min_event_length: Option<usize>,

    /// How many top-profile channels to attach to each event.
    #[arg(long, value_name = "K")]
    pub top_channels: Option<usize>,

    /// Smallest factor count tried by the per-window fit.
    #[arg(long, value_name = "P")]
    pub min_factors: Option<usize>,

    /// Largest factor count tried by the per-window fit.
    #[arg(long, value_name = "P")]
    pub max_factors: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    /// Input series CSV (rows = channels, columns = timestamped samples).
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,

    /// Destination CSV for the per-window indicator series.
    #[arg(long, value_name = "PATH")]
    pub indicators: Option<PathBuf>,

    /// Destination for alarm events (JSON lines).
    #[arg(long, value_name = "PATH")]
    pub alarms: Option<PathBuf>,

    #[command(flatten)]
    pub detection: DetectionFlags,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Input series CSV.
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,

    /// Index of the last sample in the window (default: last sample).
    #[arg(long, value_name = "IDX")]
    pub end_index: Option<usize>,

    /// Window width in samples (default: the whole series).
    #[arg(long, value_name = "T")]
    pub window_width: Option<usize>,

    /// Destination JSON report (default: print to stdout).
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,

    /// Optional CSV of the full (factor count, lag) distance surface.
    #[arg(long, value_name = "PATH")]
    pub surface: Option<PathBuf>,

    /// Optional CSV of the binned residual spectrum at the chosen fit.
    #[arg(long, value_name = "PATH")]
    pub empirical_density: Option<PathBuf>,

    /// Optional CSV of the binned model density at the chosen fit.
    #[arg(long, value_name = "PATH")]
    pub model_density: Option<PathBuf>,

    /// Smallest factor count tried.
    #[arg(long, value_name = "P")]
    pub min_factors: Option<usize>,

    /// Largest factor count tried.
    #[arg(long, value_name = "P")]
    pub max_factors: Option<usize>,

    /// Largest lag on the grid (0 ≤ b < 1).
    #[arg(long, value_name = "B")]
    pub max_lag: Option<f64>,

    /// Lag grid spacing.
    #[arg(long, value_name = "STEP")]
    pub lag_step: Option<f64>,

    /// Histogram bin count for the spectral comparison.
    #[arg(long, value_name = "K")]
    pub bins: Option<usize>,
}

#[derive(Debug, Args)]
pub struct LocateArgs {
    /// Input series CSV.
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,

    /// Destination CSV: one row per window, one column per channel.
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,

    #[command(flatten)]
    pub detection: DetectionFlags,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Alarm events to score (JSON lines, as written by `detect`).
    #[arg(long, value_name = "PATH")]
    pub alarms: PathBuf,

    /// Ground-truth events (JSON lines with an `onset` field).
    #[arg(long, value_name = "PATH")]
    pub truth: PathBuf,

    /// Maximum |alarm start − onset| for a correct detection, in samples.
    #[arg(long, value_name = "N")]
    pub tolerance: Option<i64>,

    /// Destination JSON report (default: print to stdout).
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}
