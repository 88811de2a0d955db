//! Window-by-window anomaly indicators, confidence levels, alarms, and
//! detection-quality metrics.
//!
//! Each sliding window yields three indicators: N_φ (a partial linear
//! eigenvalue statistic over the retained factor eigenvalues — spatial
//! correlation), b̂ (the fitted noise lag — temporal correlation), and η
//! (an eigenvalue-weighted channel profile — location). Each indicator is
//! standardized against its own trailing history and mapped through a
//! Student-t tail to a confidence level; alarms are maximal runs of
//! above-threshold confidence.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};
use crate::factor::{fit_window, FitConfig, ModelDensityCache};
use crate::window::{form_window, standardize_rows, TimeSeriesSet};

/// Test function applied to retained eigenvalues in the spatial indicator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestFunction {
    /// 2λ² − 1 (second Chebyshev polynomial); defined for all λ.
    Chebyshev,
    /// −λ·ln λ; requires λ > 0.
    Entropy,
    /// λ − ln λ − 1; requires λ > 0, nonnegative, zero only at λ = 1.
    LikelihoodRatio,
    /// λ − 2√λ + 1 = (√λ − 1)²; requires λ ≥ 0, zero only at λ = 1.
    Wasserstein,
}

impl TestFunction {
    pub fn eval(self, lambda: f64) -> Result<f64> {
        let domain_err = || Error::InvalidParameter {
            what: format!("test function {self:?} undefined at λ = {lambda}"),
        };
        match self {
            TestFunction::Chebyshev => Ok(2.0 * lambda * lambda - 1.0),
            TestFunction::Entropy => {
                if lambda > 0.0 {
                    Ok(-lambda * lambda.ln())
                } else {
                    Err(domain_err())
                }
            }
            TestFunction::LikelihoodRatio => {
                if lambda > 0.0 {
                    Ok(lambda - lambda.ln() - 1.0)
                } else {
                    Err(domain_err())
                }
            }
            TestFunction::Wasserstein => {
                if lambda >= 0.0 {
                    let s = lambda.sqrt() - 1.0;
                    Ok(s * s)
                } else {
                    Err(domain_err())
                }
            }
        }
    }
}

/// Partial linear eigenvalue statistic: Σ φ(λᵢ) over the given (top)
/// eigenvalues. An empty slice sums to zero.
pub fn partial_les(eigenvalues: &[f64], phi: TestFunction) -> Result<f64> {
    eigenvalues.iter().try_fold(0.0, |acc, &l| Ok(acc + phi.eval(l)?))
}

/// Location indicator η: per-channel sum of eigenvalue-weighted absolute
/// eigenvector entries, η_j = Σᵢ λᵢ·|v_{j,i}|. Nonnegative for nonnegative
/// eigenvalues; channels loaded on the retained components score highest.
pub fn location_indicator(eigenvalues: &[f64], eigenvectors: &DMatrix<f64>) -> Result<Vec<f64>> {
    if eigenvectors.ncols() != eigenvalues.len() {
        return Err(Error::InvalidParameter {
            what: format!(
                "{} eigenvalues but {} eigenvector columns",
                eigenvalues.len(),
                eigenvectors.ncols()
            ),
        });
    }
    let n = eigenvectors.nrows();
    let mut eta = vec![0.0; n];
    for (i, &l) in eigenvalues.iter().enumerate() {
        for j in 0..n {
            eta[j] += l * eigenvectors[(j, i)].abs();
        }
    }
    Ok(eta)
}

/// Per-channel contribution fractions of a direction vector: squared entries
/// normalized by the squared norm, so they always sum to 1. For the unit
/// eigenvectors this is applied to, the normalization is a no-op up to
/// rounding. A zero vector has no direction and yields all zeros.
pub fn contribution_fractions(vector: &[f64]) -> Vec<f64> {
    let norm_sq: f64 = vector.iter().map(|v| v * v).sum();
    if norm_sq <= 0.0 {
        return vec![0.0; vector.len()];
    }
    vector.iter().map(|v| v * v / norm_sq).collect()
}

/// Two-sided Student-t confidence of a standardized score:
/// P(|T| ≤ |score|) with the given degrees of freedom.
pub fn confidence_from_score(score: f64, dof: f64) -> f64 {
    if !(dof >= 1.0) || !score.is_finite() {
        return 0.0;
    }
    let dist = StudentsT::new(0.0, 1.0, dof).expect("valid t parameters");
    (2.0 * dist.cdf(score.abs()) - 1.0).clamp(0.0, 1.0)
}

/// Confidence that the last value of `history` differs from the rest of its
/// own trailing window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Confidence {
    /// Two-sided Student-t confidence in [0, 1).
    pub value: f64,
    /// True when the history had (numerically) zero spread, in which case
    /// the value is reported as 0 — no evidence of change, flagged so
    /// callers can distinguish it from a genuinely unremarkable value.
    pub zero_variance: bool,
}

/// Standardizes the final entry of `history` by the mean and sample standard
/// deviation of the whole slice (current value included) and returns the
/// two-sided Student-t confidence with len−1 degrees of freedom.
pub fn confidence_level(history: &[f64]) -> Result<Confidence> {
    let n = history.len();
    if n < 3 {
        return Err(Error::InvalidParameter {
            what: format!("confidence needs a history of ≥ 3 values, got {n}"),
        });
    }
    let current = history[n - 1];
    let mean = history.iter().sum::<f64>() / n as f64;
    let var = history.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
    let sd = var.sqrt();
    if !(sd > 1e-12 * (1.0 + mean.abs())) {
        return Ok(Confidence { value: 0.0, zero_variance: true });
    }
    let score = (current - mean) / sd;
    Ok(Confidence { value: confidence_from_score(score, (n - 1) as f64), zero_variance: false })
}

/// Which indicator's confidence drives alarm emission.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlarmIndicator {
    /// Product N_φ·b̂ — spatial and temporal evidence combined.
    Combined,
    /// Spatial indicator N_φ alone.
    NPhi,
    /// Temporal indicator b̂ alone.
    BHat,
}

impl AlarmIndicator {
    pub fn name(self) -> &'static str {
        match self {
            AlarmIndicator::Combined => "combined",
            AlarmIndicator::NPhi => "n_phi",
            AlarmIndicator::BHat => "b_hat",
        }
    }
}

/// Detection pipeline configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DetectionConfig {
    /// Sliding window width T.
    pub window_width: usize,
    /// Trailing history length T' for confidence standardization.
    pub history_length: usize,
    /// Alarm threshold on the confidence level, in (0, 1].
    pub threshold: f64,
    /// Test function for the spatial indicator.
    pub test_function: TestFunction,
    /// Indicator whose confidence triggers alarms.
    pub alarm_indicator: AlarmIndicator,
    /// Shortest above-threshold run reported as an alarm, in windows.
    /// Isolated noise excursions at a 95% threshold run a handful of
    /// windows; genuine events persist for a large fraction of the window
    /// width, so a floor of 10 suppresses the former without delaying or
    /// shifting reported event starts.
    pub min_event_length: usize,
    /// How many top channels to list per time step in exports.
    pub located_channel_count: usize,
    /// Joint (factor count, lag) estimator settings.
    pub fit: FitConfig,
}

impl Default for DetectionConfig {
    fn default() -> Self {
        Self {
            window_width: 200,
            history_length: 200,
            threshold: 0.95,
            test_function: TestFunction::Chebyshev,
            alarm_indicator: AlarmIndicator::Combined,
            min_event_length: 10,
            located_channel_count: 3,
            // Detection windows always retain at least one component: on
            // quiet data the top eigenvalue sits at the bulk edge and the
            // indicator history stays informative, instead of collapsing to
            // a constant zero.
            fit: FitConfig { min_factors: 1, ..FitConfig::default() },
        }
    }
}

impl DetectionConfig {
    fn validate(&self) -> Result<()> {
        if self.history_length < 3 {
            return Err(Error::InvalidParameter {
                what: format!("history_length must be ≥ 3, got {}", self.history_length),
            });
        }
        if !(self.threshold > 0.0 && self.threshold <= 1.0) {
            return Err(Error::InvalidParameter {
                what: format!("threshold must lie in (0, 1], got {}", self.threshold),
            });
        }
        if self.window_width < 2 {
            return Err(Error::InvalidParameter {
                what: format!("window_width must be ≥ 2, got {}", self.window_width),
            });
        }
        if self.min_event_length == 0 {
            return Err(Error::InvalidParameter {
                what: "min_event_length must be ≥ 1".into(),
            });
        }
        Ok(())
    }
}

/// Per-window indicator curves plus their confidence levels.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IndicatorSeries {
    /// End timestamp of each window.
    pub times: Vec<i64>,
    /// Spatial indicator N_φ.
    pub n_phi: Vec<f64>,
    /// Temporal indicator b̂ ∈ [0, 1).
    pub b_hat: Vec<f64>,
    /// Combined indicator N_φ·b̂.
    pub combined: Vec<f64>,
    /// Estimated factor count per window.
    pub factor_count: Vec<usize>,
    /// Location profile per window (length-N, nonnegative).
    pub eta: Vec<Vec<f64>>,
    pub confidence_n_phi: Vec<f64>,
    pub confidence_b_hat: Vec<f64>,
    pub confidence_combined: Vec<f64>,
    /// Per-window per-channel confidence of the η profile.
    pub confidence_eta: Vec<Vec<f64>>,
    /// True once a full confidence history is available; alarms only fire
    /// on armed windows.
    pub armed: Vec<bool>,
}

impl IndicatorSeries {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn confidence_of(&self, indicator: AlarmIndicator) -> &[f64] {
        match indicator {
            AlarmIndicator::Combined => &self.confidence_combined,
            AlarmIndicator::NPhi => &self.confidence_n_phi,
            AlarmIndicator::BHat => &self.confidence_b_hat,
        }
    }

    /// Indices of the k channels with the largest η at window `idx`,
    /// descending.
    pub fn top_channels(&self, idx: usize, k: usize) -> Vec<usize> {
        let eta = &self.eta[idx];
        let mut order: Vec<usize> = (0..eta.len()).collect();
        order.sort_by(|&a, &b| eta[b].total_cmp(&eta[a]).then(a.cmp(&b)));
        order.truncate(k);
        order
    }
}

/// One channel implicated by an alarm.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LocatedChannel {
    pub index: usize,
    pub name: String,
    pub confidence: f64,
}

/// A merged above-threshold event.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlarmRecord {
    /// End timestamp of the first above-threshold window.
    pub start_time: i64,
    /// End timestamp of the last above-threshold window.
    pub end_time: i64,
    /// Timestamp of the maximum confidence within the event.
    pub peak_time: i64,
    /// Number of consecutive above-threshold windows merged into the event.
    pub window_count: usize,
    /// Name of the indicator that triggered ("combined", "n_phi", "b_hat").
    pub indicator: String,
    /// Maximum confidence over the event. Always ≥ the configured threshold.
    pub confidence: f64,
    /// Channel with the largest η at the declaration window.
    pub leading_channel: usize,
    /// Channels whose η-confidence cleared the threshold at declaration.
    pub located_channels: Vec<LocatedChannel>,
}

/// A window whose estimation failed; recorded, not fatal.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindowFailure {
    pub end_time: i64,
    pub reason: String,
}

/// Full output of a detection run.
#[derive(Debug, Clone)]
pub struct DetectionRun {
    pub series: IndicatorSeries,
    pub alarms: Vec<AlarmRecord>,
    pub failures: Vec<WindowFailure>,
}

struct WindowOutcome {
    end_time: i64,
    result: std::result::Result<(f64, f64, usize, Vec<f64>), String>,
}

/// Runs the full sliding-window pipeline: per-window estimation, indicator
/// and confidence series, and merged alarms.
///
/// Windows are evaluated independently (in parallel); the confidence pass is
/// a sequential scan over the resulting series. A window whose estimation
/// fails is recorded in `failures` and skipped; the series holds only
/// successful windows.
pub fn run_detection(data: &TimeSeriesSet, config: &DetectionConfig) -> Result<DetectionRun> {
    config.validate()?;
    let t_width = config.window_width;
    let total = data.n_samples();
    if total < t_width + config.history_length {
        return Err(Error::InvalidParameter {
            what: format!(
                "need ≥ window_width + history_length = {} samples, got {total}",
                t_width + config.history_length
            ),
        });
    }
    let n = data.n_channels();
    let ratio = n as f64 / t_width as f64;
    let cache = ModelDensityCache::build(ratio, &config.fit)?;

    let end_indices: Vec<usize> = (t_width - 1..total).collect();
    let outcomes: Vec<WindowOutcome> = end_indices
        .par_iter()
        .map(|&end| {
            let end_time = data.timestamps[end];
            let result = (|| {
                let window = form_window(data, end, t_width).map_err(|e| e.to_string())?;
                let std_w = standardize_rows(&window).map_err(|e| e.to_string())?;
                let est = fit_window(&std_w, &cache, &config.fit).map_err(|e| e.to_string())?;
                let (n_phi, eta) = match &est.decomposition {
                    Some(d) => {
                        let n_phi = partial_les(&d.retained_eigenvalues, config.test_function)
                            .map_err(|e| e.to_string())?;
                        let eta = location_indicator(&d.retained_eigenvalues, &d.retained_vectors)
                            .map_err(|e| e.to_string())?;
                        (n_phi, eta)
                    }
                    None => (0.0, vec![0.0; n]),
                };
                Ok((n_phi, est.lag, est.factor_count, eta))
            })();
            WindowOutcome { end_time, result }
        })
        .collect();

    let mut series = IndicatorSeries {
        times: Vec::new(),
        n_phi: Vec::new(),
        b_hat: Vec::new(),
        combined: Vec::new(),
        factor_count: Vec::new(),
        eta: Vec::new(),
        confidence_n_phi: Vec::new(),
        confidence_b_hat: Vec::new(),
        confidence_combined: Vec::new(),
        confidence_eta: Vec::new(),
        armed: Vec::new(),
    };
    let mut failures = Vec::new();
    for o in outcomes {
        match o.result {
            Ok((n_phi, b_hat, p, eta)) => {
                series.times.push(o.end_time);
                series.n_phi.push(n_phi);
                series.b_hat.push(b_hat);
                series.combined.push(n_phi * b_hat);
                series.factor_count.push(p);
                series.eta.push(eta);
            }
            Err(reason) => failures.push(WindowFailure { end_time: o.end_time, reason }),
        }
    }

    let hist = config.history_length;
    series.confidence_n_phi = trailing_confidence(&series.n_phi, hist);
    series.confidence_b_hat = trailing_confidence(&series.b_hat, hist);
    series.confidence_combined = trailing_confidence(&series.combined, hist);
    let nw = series.len();
    series.armed = (0..nw).map(|w| w + 1 >= hist).collect();
    let mut conf_eta = vec![vec![0.0; n]; nw];
    let mut channel_series = vec![0.0; nw];
    for ch in 0..n {
        for w in 0..nw {
            channel_series[w] = series.eta[w][ch];
        }
        let conf = trailing_confidence(&channel_series, hist);
        for w in 0..nw {
            conf_eta[w][ch] = conf[w];
        }
    }
    series.confidence_eta = conf_eta;

    let alarms = merge_alarms(&series, config, &data.channels);
    Ok(DetectionRun { series, alarms, failures })
}

/// Confidence of each value against its trailing window of up to `hist`
/// values (current included); 0 while fewer than 3 values are available.
fn trailing_confidence(values: &[f64], hist: usize) -> Vec<f64> {
    (0..values.len())
        .map(|w| {
            let lo = (w + 1).saturating_sub(hist);
            let h = &values[lo..=w];
            if h.len() < 3 {
                0.0
            } else {
                confidence_level(h).map(|c| c.value).unwrap_or(0.0)
            }
        })
        .collect()
}

fn merge_alarms(
    series: &IndicatorSeries,
    config: &DetectionConfig,
    channel_names: &[String],
) -> Vec<AlarmRecord> {
    let conf = series.confidence_of(config.alarm_indicator);
    let nw = series.len();
    let mut alarms = Vec::new();
    let mut w = 0;
    while w < nw {
        if !(series.armed[w] && conf[w] >= config.threshold) {
            w += 1;
            continue;
        }
        let start = w;
        while w < nw && series.armed[w] && conf[w] >= config.threshold {
            w += 1;
        }
        let len = w - start;
        if len < config.min_event_length {
            continue;
        }
        let peak = (start..w).max_by(|&a, &b| conf[a].total_cmp(&conf[b])).unwrap_or(start);
        let eta = &series.eta[start];
        let leading = (0..eta.len())
            .max_by(|&a, &b| eta[a].total_cmp(&eta[b]))
            .expect("eta vectors are non-empty");
        let located = series.confidence_eta[start]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c >= config.threshold)
            .map(|(idx, &c)| LocatedChannel {
                index: idx,
                name: channel_names.get(idx).cloned().unwrap_or_else(|| idx.to_string()),
                confidence: c,
            })
            .collect();
        alarms.push(AlarmRecord {
            start_time: series.times[start],
            end_time: series.times[w - 1],
            peak_time: series.times[peak],
            window_count: len,
            indicator: config.alarm_indicator.name().to_string(),
            confidence: conf[peak],
            leading_channel: leading,
            located_channels: located,
        });
    }
    alarms
}

/// A labeled ground-truth anomaly for evaluation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TruthEvent {
    /// Sample timestamp at which the anomaly begins.
    pub onset: i64,
    /// Optional anomalous channel index (not used by the rate metrics).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub channel: Option<usize>,
}

/// Detection-quality rates over labeled events.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Evaluation {
    pub n_truth: usize,
    pub n_correct: usize,
    pub n_alarms: usize,
    /// True detection rate N_cr/N_gt; absent when there is no ground truth.
    pub tdr: Option<f64>,
    /// False alarm rate (N_al − N_cr)/N_al; 0 when there are no alarms.
    pub far: f64,
}

/// Rates from raw counts: TDR = n_correct/n_truth (absent when n_truth = 0),
/// FAR = (n_alarms − n_correct)/n_alarms (0 when n_alarms = 0).
pub fn rates_from_counts(n_truth: usize, n_correct: usize, n_alarms: usize) -> Evaluation {
    let tdr = if n_truth == 0 { None } else { Some(n_correct as f64 / n_truth as f64) };
    let far = if n_alarms == 0 {
        0.0
    } else {
        (n_alarms as f64 - n_correct as f64) / n_alarms as f64
    };
    Evaluation { n_truth, n_correct, n_alarms, tdr, far }
}

/// Matches alarms to ground-truth events and computes TDR/FAR.
///
/// An alarm matches a truth event when its start time lies within
/// `tolerance` samples of the labeled onset; each truth event is consumed by
/// at most one alarm (earliest first).
pub fn evaluate_tdr_far(
    alarms: &[AlarmRecord],
    truths: &[TruthEvent],
    tolerance: i64,
) -> Evaluation {
    let mut sorted_alarms: Vec<&AlarmRecord> = alarms.iter().collect();
    sorted_alarms.sort_by_key(|a| a.start_time);
    let mut matched = vec![false; truths.len()];
    let mut n_correct = 0;
    for alarm in sorted_alarms {
        let candidate = truths
            .iter()
            .enumerate()
            .filter(|(i, t)| !matched[*i] && (alarm.start_time - t.onset).abs() <= tolerance)
            .min_by_key(|(_, t)| (alarm.start_time - t.onset).abs());
        if let Some((i, _)) = candidate {
            matched[i] = true;
            n_correct += 1;
        }
    }
    rates_from_counts(truths.len(), n_correct, alarms.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_function_values() {
        assert_eq!(TestFunction::Chebyshev.eval(2.0).unwrap(), 7.0);
        assert!((TestFunction::Wasserstein.eval(4.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((TestFunction::LikelihoodRatio.eval(1.0).unwrap()).abs() < 1e-15);
        assert!((TestFunction::Entropy.eval(1.0).unwrap()).abs() < 1e-15);
        assert!(TestFunction::Entropy.eval(0.0).is_err());
        assert!(TestFunction::LikelihoodRatio.eval(-1.0).is_err());
        assert!(TestFunction::Wasserstein.eval(-0.1).is_err());
    }

    #[test]
    fn partial_les_sums_over_given_eigenvalues() {
        let v = partial_les(&[1.0, 1.0, 1.0], TestFunction::LikelihoodRatio).unwrap();
        assert!(v.abs() < 1e-15);
        let v = partial_les(&[4.0, 1.0], TestFunction::Wasserstein).unwrap();
        assert!((v - 1.0).abs() < 1e-15);
        assert_eq!(partial_les(&[], TestFunction::Chebyshev).unwrap(), 0.0);
    }

    #[test]
    fn location_indicator_localizes_single_spike() {
        let v = DMatrix::from_column_slice(4, 1, &[0.0, 0.0, 1.0, 0.0]);
        let eta = location_indicator(&[2.0], &v).unwrap();
        assert_eq!(eta, vec![0.0, 0.0, 2.0, 0.0]);
    }

    #[test]
    fn uniform_eigenvector_gives_flat_profile() {
        let n = 16;
        let entry = 1.0 / (n as f64).sqrt();
        let v = DMatrix::from_element(n, 1, entry);
        let eta = location_indicator(&[3.0], &v).unwrap();
        for e in &eta {
            assert!((e - 3.0 * entry).abs() < 1e-14);
        }
    }

    #[test]
    fn contribution_fractions_of_basis_and_uniform() {
        let c = contribution_fractions(&[1.0, 0.0, 0.0]);
        assert_eq!(c, vec![1.0, 0.0, 0.0]);
        let n = 9;
        let u = vec![1.0 / 3.0; n];
        let c = contribution_fractions(&u);
        assert!(c.iter().all(|x| (x - 1.0 / 9.0).abs() < 1e-15));
        assert!((c.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn worked_confidence_example() {
        let c = confidence_from_score(2.650, 13.0);
        assert!((c - 0.98).abs() < 1e-3, "confidence {c}");
    }

    #[test]
    fn confidence_symmetry_and_center() {
        assert_eq!(confidence_from_score(1.7, 20.0), confidence_from_score(-1.7, 20.0));
        assert!(confidence_from_score(0.0, 20.0).abs() < 1e-12);
        // Current value equal to the history mean → zero confidence.
        let hist = [1.0, 3.0, 2.0];
        let c = confidence_level(&hist).unwrap();
        assert!(c.value.abs() < 1e-12 && !c.zero_variance);
    }

    #[test]
    fn constant_history_flags_zero_variance() {
        let c = confidence_level(&[2.0, 2.0, 2.0, 2.0]).unwrap();
        assert_eq!(c.value, 0.0);
        assert!(c.zero_variance);
    }

    #[test]
    fn rate_arithmetic() {
        let e = rates_from_counts(80, 68, 81);
        assert!((e.tdr.unwrap() - 0.85).abs() < 1e-12);
        assert!((e.far - 13.0 / 81.0).abs() < 1e-12);
        assert!(rates_from_counts(0, 0, 5).tdr.is_none());
        assert_eq!(rates_from_counts(3, 0, 0).far, 0.0);
        assert_eq!(rates_from_counts(3, 0, 0).tdr, Some(0.0));
    }

    #[test]
    fn alarm_matching_consumes_each_truth_once() {
        let mk = |t: i64| AlarmRecord {
            start_time: t,
            end_time: t + 10,
            peak_time: t + 2,
            window_count: 11,
            indicator: "combined".into(),
            confidence: 0.99,
            leading_channel: 0,
            located_channels: vec![],
        };
        let truths = vec![TruthEvent { onset: 100, channel: None }];
        let alarms = vec![mk(101), mk(104)];
        let e = evaluate_tdr_far(&alarms, &truths, 5);
        assert_eq!((e.n_correct, e.n_alarms), (1, 2));
        assert_eq!(e.tdr, Some(1.0));
        assert!((e.far - 0.5).abs() < 1e-12);
    }
}
