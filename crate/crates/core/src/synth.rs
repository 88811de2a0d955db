//! Synthetic multichannel scenarios with planted anomalies.
//!
//! Generation is deliberately simple: per-channel baseline levels, additive
//! anomalies (steps, ramps, or slow structural drift) with a cross-channel
//! coupling profile, and AR(1) noise scaled to a target signal-to-noise
//! ratio. Planting the ground truth directly gives sharp oracles — the
//! injected channel, onset, and factor count are known exactly.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::ar1_sample::sample_ar1_rows;
use crate::window::TimeSeriesSet;

/// Per-channel constant baseline: `level` plus a seeded Gaussian offset of
/// standard deviation `jitter`, drawn once per channel.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BaselineSpec {
    pub level: f64,
    pub jitter: f64,
}

impl Default for BaselineSpec {
    fn default() -> Self {
        Self { level: 1.0, jitter: 0.04 }
    }
}

/// AR(1) noise shared by every channel, scaled so that
/// var(noise)/var(clean signal) = 1/snr.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseSpec {
    /// Lag-one coefficient of the noise.
    pub lag: f64,
    /// Signal-to-noise ratio; may be infinite for noiseless output.
    pub snr: f64,
}

impl Default for NoiseSpec {
    fn default() -> Self {
        Self { lag: 0.3, snr: 500.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnomalyKind {
    /// Additive level shift on the target channel from the onset onward.
    Step,
    /// Additive shift growing linearly from 0 at the onset to `magnitude`
    /// at `end` (then held).
    Ramp,
    /// System-wide slowly varying structure riding on the noise: smooth
    /// per-channel processes under a linear envelope, scaled by `magnitude`
    /// noise standard deviations. Ignores `channel` and coupling.
    Drift,
}

/// One planted anomaly.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnomalySpec {
    pub kind: AnomalyKind,
    /// Target channel (0-based) for step/ramp.
    #[serde(default)]
    pub channel: usize,
    /// Sample index at which the anomaly begins.
    pub onset: usize,
    /// Last sample of the growth interval for ramp/drift; defaults to the
    /// end of the series.
    #[serde(default)]
    pub end: Option<usize>,
    /// Step height / ramp end value (data units), or drift amplitude in
    /// units of the noise standard deviation.
    pub magnitude: f64,
    /// How many channels on each side of the target receive a coupled copy.
    #[serde(default = "default_coupling_neighbors")]
    pub coupling_neighbors: usize,
    /// Coupled copy on channel `channel ± d` has height
    /// `coupling_strength·magnitude/d` — a fixed spatial loading profile, so
    /// the anomaly enters the data as a rank-one component.
    #[serde(default = "default_coupling_strength")]
    pub coupling_strength: f64,
    /// Temporal correlation length of the drift processes, in samples.
    #[serde(default = "default_smoothness")]
    pub smoothness: f64,
}

fn default_coupling_neighbors() -> usize {
    7
}

fn default_coupling_strength() -> f64 {
    0.15
}

fn default_smoothness() -> f64 {
    8.0
}

/// Full description of a synthetic dataset.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioSpec {
    pub channels: usize,
    pub samples: usize,
    pub baseline: BaselineSpec,
    pub anomalies: Vec<AnomalySpec>,
    pub noise: NoiseSpec,
    pub seed: u64,
}

impl Default for ScenarioSpec {
    fn default() -> Self {
        Self {
            channels: 33,
            samples: 1000,
            baseline: BaselineSpec::default(),
            anomalies: Vec::new(),
            noise: NoiseSpec::default(),
            seed: 0,
        }
    }
}

impl ScenarioSpec {
    fn validate(&self) -> Result<()> {
        if self.channels < 2 || self.samples < 2 {
            return Err(Error::InvalidScenario {
                what: format!("need ≥ 2 channels and ≥ 2 samples, got {}×{}", self.channels, self.samples),
            });
        }
        if !(self.noise.snr > 0.0) {
            return Err(Error::InvalidScenario {
                what: format!("snr must be positive, got {}", self.noise.snr),
            });
        }
        if !(self.noise.lag.abs() < 1.0) {
            return Err(Error::InvalidScenario {
                what: format!("noise lag must satisfy |b| < 1, got {}", self.noise.lag),
            });
        }
        if !(self.baseline.jitter >= 0.0) {
            return Err(Error::InvalidScenario {
                what: format!("baseline jitter must be ≥ 0, got {}", self.baseline.jitter),
            });
        }
        for (i, a) in self.anomalies.iter().enumerate() {
            if a.onset >= self.samples {
                return Err(Error::InvalidScenario {
                    what: format!("anomaly {i}: onset {} outside 0..{}", a.onset, self.samples),
                });
            }
            if !a.magnitude.is_finite() {
                return Err(Error::InvalidScenario {
                    what: format!("anomaly {i}: magnitude must be finite"),
                });
            }
            if matches!(a.kind, AnomalyKind::Step | AnomalyKind::Ramp) && a.channel >= self.channels
            {
                return Err(Error::InvalidScenario {
                    what: format!("anomaly {i}: channel {} outside 0..{}", a.channel, self.channels),
                });
            }
            if let Some(end) = a.end {
                if end <= a.onset || end > self.samples {
                    return Err(Error::InvalidScenario {
                        what: format!("anomaly {i}: end {end} must lie in (onset, samples]"),
                    });
                }
            }
            if matches!(a.kind, AnomalyKind::Drift) && !(a.smoothness > 0.0) {
                return Err(Error::InvalidScenario {
                    what: format!("anomaly {i}: smoothness must be positive"),
                });
            }
        }
        Ok(())
    }
}

fn channel_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("ch{i:02}")).collect()
}

/// Cross-channel loading profile of a step/ramp anomaly: full magnitude on
/// the target channel, decaying coupled copies on its neighbours.
fn coupling_profile(n: usize, a: &AnomalySpec) -> Vec<f64> {
    let mut amp = vec![0.0; n];
    amp[a.channel] = a.magnitude;
    for d in 1..=a.coupling_neighbors {
        let height = a.coupling_strength * a.magnitude / d as f64;
        if a.channel >= d {
            amp[a.channel - d] = height;
        }
        if a.channel + d < n {
            amp[a.channel + d] = height;
        }
    }
    amp
}

/// Independent unit-variance smooth processes, one per row: white noise
/// convolved with an L2-normalized Gaussian kernel of the given width.
fn smooth_processes(
    n: usize,
    t: usize,
    width: f64,
    rng: &mut impl Rng,
) -> DMatrix<f64> {
    let half = (3.0 * width).ceil() as i64;
    let taps = (2 * half + 1) as usize;
    let mut kernel: Vec<f64> = (-half..=half)
        .map(|j| (-0.5 * (j as f64 / width).powi(2)).exp())
        .collect();
    let norm = kernel.iter().map(|k| k * k).sum::<f64>().sqrt();
    for k in &mut kernel {
        *k /= norm;
    }
    let padded = t + taps - 1;
    let mut out = DMatrix::<f64>::zeros(n, t);
    let mut white = vec![0.0f64; padded];
    for i in 0..n {
        for w in white.iter_mut() {
            *w = rng.sample(StandardNormal);
        }
        for j in 0..t {
            let mut acc = 0.0;
            for (k, &kv) in kernel.iter().enumerate() {
                acc += kv * white[j + k];
            }
            out[(i, j)] = acc;
        }
    }
    out
}

/// Generates the dataset a scenario describes. Deterministic under the
/// scenario's seed: the RNG is consumed in a fixed order (baseline levels,
/// then drift processes in listing order, then AR noise).
pub fn generate(spec: &ScenarioSpec) -> Result<TimeSeriesSet> {
    spec.validate()?;
    let (n, t) = (spec.channels, spec.samples);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let levels: Vec<f64> = (0..n)
        .map(|_| spec.baseline.level + spec.baseline.jitter * rng.sample::<f64, _>(StandardNormal))
        .collect();
    let mut clean = DMatrix::from_fn(n, t, |i, _| levels[i]);

    for a in &spec.anomalies {
        if matches!(a.kind, AnomalyKind::Drift) {
            continue;
        }
        let amp = coupling_profile(n, a);
        let end = a.end.unwrap_or(t);
        for j in a.onset..t {
            let frac = match a.kind {
                AnomalyKind::Step => 1.0,
                AnomalyKind::Ramp => {
                    (((j - a.onset) as f64) / ((end - a.onset) as f64)).min(1.0)
                }
                AnomalyKind::Drift => unreachable!(),
            };
            for (i, &ai) in amp.iter().enumerate() {
                clean[(i, j)] += ai * frac;
            }
        }
    }

    // Noise amplitude from the clean signal's overall variance:
    // m = √(var(signal) / snr), the AR rows having unit variance already.
    let mean = clean.iter().sum::<f64>() / (n * t) as f64;
    let var = clean.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n * t) as f64;
    let m = if spec.noise.snr.is_infinite() { 0.0 } else { (var / spec.noise.snr).sqrt() };

    let mut data = clean;
    for a in &spec.anomalies {
        if !matches!(a.kind, AnomalyKind::Drift) {
            continue;
        }
        let g = smooth_processes(n, t, a.smoothness, &mut rng);
        let end = a.end.unwrap_or(t);
        for j in a.onset..t {
            let alpha = (((j - a.onset) as f64) / ((end - a.onset) as f64)).min(1.0);
            let scale = a.magnitude * m * alpha;
            for i in 0..n {
                data[(i, j)] += scale * g[(i, j)];
            }
        }
    }
    if m > 0.0 {
        let noise = sample_ar1_rows(n, t, spec.noise.lag, &mut rng)?;
        data += noise * m;
    }

    let timestamps: Vec<i64> = (0..t as i64).collect();
    TimeSeriesSet::new(channel_names(n), timestamps, data)
}

/// Dataset with `factor_count` planted common components over AR(1)
/// residuals: orthonormal random loading directions scaled by
/// `loading_scale`, unit-variance Gaussian factor series, plus
/// unit-variance AR(1) rows. `factor_count = 0` yields pure noise.
pub fn plant_factors(
    channels: usize,
    samples: usize,
    factor_count: usize,
    loading_scale: f64,
    residual_lag: f64,
    seed: u64,
) -> Result<TimeSeriesSet> {
    if channels < 2 || samples < 2 {
        return Err(Error::InvalidScenario {
            what: format!("need ≥ 2 channels and ≥ 2 samples, got {channels}×{samples}"),
        });
    }
    if factor_count >= channels {
        return Err(Error::RankDeficient { requested: factor_count, available: channels - 1 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = DMatrix::<f64>::zeros(channels, samples);
    if factor_count > 0 {
        let raw = DMatrix::from_fn(channels, factor_count, |_, _| {
            rng.sample::<f64, _>(StandardNormal)
        });
        let q = raw.qr().q();
        let factors = DMatrix::from_fn(factor_count, samples, |_, _| {
            rng.sample::<f64, _>(StandardNormal)
        });
        // A zero scale degrades gracefully to pure residuals while consuming
        // the same draws, so the noise stream is scale-invariant.
        data = q * factors * loading_scale;
    }
    let residuals = sample_ar1_rows(channels, samples, residual_lag, &mut rng)?;
    data += residuals;
    let timestamps: Vec<i64> = (0..samples as i64).collect();
    TimeSeriesSet::new(channel_names(channels), timestamps, data)
}
