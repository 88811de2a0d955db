use std::path::Path;

use serde::Deserialize;
use specad_core::detect::{AlarmIndicator, DetectionConfig, TestFunction};
use specad_core::factor::FitConfig;
use specad_core::synth::ScenarioSpec;

use crate::args::{DetectionFlags, FitArgs, SimulateArgs};
use crate::errors::{config_error, CliResult, Classify, Kind};

/// Root of the optional TOML settings file. Every section is optional;
/// command-line flags override anything given here.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub scenario: Option<ScenarioSpec>,
    pub detection: Option<DetectionConfig>,
    pub fit: Option<FitConfig>,
    /// Match tolerance (samples) for `evaluate`.
    pub tolerance: Option<i64>,
    /// Worker thread count.
    pub threads: Option<usize>,
}

pub fn load(path: Option<&Path>) -> CliResult<FileConfig> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .classify(Kind::Io, format!("reading config file {}", path.display()))?;
    toml::from_str(&text)
        .classify(Kind::Config, format!("parsing config file {}", path.display()))
}

pub fn parse_test_function(name: &str) -> CliResult<TestFunction> {
    match name {
        "chebyshev" => Ok(TestFunction::Chebyshev),
        "entropy" => Ok(TestFunction::Entropy),
        "likelihood_ratio" => Ok(TestFunction::LikelihoodRatio),
        "wasserstein" => Ok(TestFunction::Wasserstein),
        other => Err(config_error(format!(
            "unknown test function '{other}' (expected chebyshev, entropy, \
             likelihood_ratio, or wasserstein)"
        ))),
    }
}

pub fn parse_alarm_indicator(name: &str) -> CliResult<AlarmIndicator> {
    match name {
        "combined" => Ok(AlarmIndicator::Combined),
        "n_phi" => Ok(AlarmIndicator::NPhi),
        "b_hat" => Ok(AlarmIndicator::BHat),
        other => Err(config_error(format!(
            "unknown alarm indicator '{other}' (expected combined, n_phi, or b_hat)"
        ))),
    }
}

/// Detection settings resolved as defaults ← config file ← flags.
pub fn resolve_detection(
    file: &FileConfig,
    flags: &DetectionFlags,
) -> CliResult<DetectionConfig> {
    let mut cfg = file.detection.clone().unwrap_or_default();
    if let Some(w) = flags.window_width {
        cfg.window_width = w;
    }
    if let Some(h) = flags.history_length {
        cfg.history_length = h;
    }
    if let Some(x) = flags.threshold {
        cfg.threshold = x;
    }
    if let Some(name) = &flags.test_function {
        cfg.test_function = parse_test_function(name)?;
    }
    if let Some(name) = &flags.alarm_indicator {
        cfg.alarm_indicator = parse_alarm_indicator(name)?;
    }
    if let Some(l) = flags.min_event_length {
        cfg.min_event_length = l;
    }
    if let Some(k) = flags.top_channels {
        cfg.located_channel_count = k;
    }
    if let Some(p) = flags.min_factors {
        cfg.fit.min_factors = p;
    }
    if let Some(p) = flags.max_factors {
        cfg.fit.max_factors = p;
    }
    Ok(cfg)
}

/// Scenario resolved as defaults ← config file ← flags.
pub fn resolve_scenario(file: &FileConfig, flags: &SimulateArgs) -> ScenarioSpec {
    let mut spec = file.scenario.clone().unwrap_or_default();
    if let Some(s) = flags.seed {
        spec.seed = s;
    }
    if let Some(n) = flags.channels {
        spec.channels = n;
    }
    if let Some(t) = flags.samples {
        spec.samples = t;
    }
    if let Some(b) = flags.noise_lag {
        spec.noise.lag = b;
    }
    if let Some(s) = flags.snr {
        spec.noise.snr = s;
    }
    spec
}

/// Single-window fit settings resolved as defaults ← config file ← flags.
pub fn resolve_fit(file: &FileConfig, flags: &FitArgs) -> FitConfig {
    let mut cfg = file.fit.clone().unwrap_or_default();
    if let Some(p) = flags.min_factors {
        cfg.min_factors = p;
    }
    if let Some(p) = flags.max_factors {
        cfg.max_factors = p;
    }
    if let Some(b) = flags.max_lag {
        cfg.max_lag = b;
    }
    if let Some(s) = flags.lag_step {
        cfg.lag_step = s;
    }
    if let Some(k) = flags.bins {
        cfg.bins = k;
    }
    cfg
}
