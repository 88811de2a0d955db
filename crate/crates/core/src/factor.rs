//! Factor extraction and joint estimation of factor count and noise memory.
//!
//! A window is modelled as a small number of common components plus
//! channel-wise AR(1) noise. Removing the top principal components and
//! asking "how autocorrelated must pure noise be to produce the remaining
//! spectrum?" yields two numbers per window — the factor count and the noise
//! lag coefficient — that drive all downstream indicators.
//!
//! The estimator compares the residual eigenvalue histogram against a family
//! of model spectra over a (factor count, lag) grid using the Jensen-Shannon
//! distance. Two design points matter for its stability:
//!
//! * Removing p components makes the residual covariance rank-deficient by
//!   exactly p, so a narrow bin pinned at zero counts the removed directions
//!   and penalizes over-removal by a fixed, monotone amount per extra factor.
//! * The histogram range is set from the spectrum with *all* candidate
//!   factors removed, so remaining spikes land beyond the top edge and are
//!   clamped into the last bin, where no bulk model puts mass — penalizing
//!   under-removal.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::ar1_law::{ar1_density_curve, Ar1SpectrumParams};
use crate::spectra::density::{js_divergence, SpectralDensity};
use crate::window::{covariance, esd_eigen, esd_eigenvalues, StandardizedWindow};

/// Relative singular-value cutoff for the factor pseudo-inverse.
const PINV_RCOND: f64 = 1e-10;

/// Result of projecting a window onto its top principal subspace.
#[derive(Debug, Clone)]
pub struct FactorDecomposition {
    /// p×T common component series.
    pub factors: DMatrix<f64>,
    /// N×p channel exposures to each factor.
    pub loadings: DMatrix<f64>,
    /// N×T remainder after subtracting loadings × factors.
    pub residuals: DMatrix<f64>,
    /// Top p eigenvalues of the window covariance, descending.
    pub retained_eigenvalues: Vec<f64>,
    /// N×p matrix of the matching unit eigenvectors.
    pub retained_vectors: DMatrix<f64>,
}

/// Splits a standardized window into p factors plus residuals.
///
/// Factors are the projections of the window onto its top p covariance
/// eigenvectors; loadings are the least-squares regression of the window on
/// those factors, so `residuals = window − loadings·factors` is orthogonal to
/// the factor series.
pub fn extract_factors(window: &StandardizedWindow, p: usize) -> Result<FactorDecomposition> {
    let n = window.n();
    if p == 0 || p >= n {
        return Err(Error::RankDeficient { requested: p, available: n.saturating_sub(1) });
    }
    let sigma = covariance(window);
    let (evals, evecs) = esd_eigen(&sigma);
    decompose_with_eigen(window, &evals, &evecs, p)
}

fn decompose_with_eigen(
    window: &StandardizedWindow,
    evals: &[f64],
    evecs: &DMatrix<f64>,
    p: usize,
) -> Result<FactorDecomposition> {
    let top = evecs.columns(0, p).into_owned();
    let factors = top.transpose() * &window.matrix;
    // Least-squares loadings via the factor pseudo-inverse. The factors are
    // projections onto orthogonal eigenvectors, so this is well-conditioned
    // whenever the retained eigenvalues are away from zero; near-zero ones
    // are truncated by the cutoff instead of amplifying noise.
    let svd = factors.clone().svd(true, true);
    let sigma_max = svd.singular_values.max();
    let pinv = svd
        .pseudo_inverse(PINV_RCOND * sigma_max.max(f64::MIN_POSITIVE))
        .map_err(|e| Error::Numerical { what: format!("factor pseudo-inverse: {e}") })?;
    let loadings = &window.matrix * pinv;
    let residuals = &window.matrix - &loadings * &factors;
    Ok(FactorDecomposition {
        factors,
        loadings,
        residuals,
        retained_eigenvalues: evals[..p].to_vec(),
        retained_vectors: top,
    })
}

/// Row standardization that maps variance-free rows to zero instead of
/// failing. Residual channels fully explained by the factors carry no
/// spectral information; they must not abort the fit.
fn standardize_rows_lenient(m: &DMatrix<f64>) -> DMatrix<f64> {
    let (n, t) = (m.nrows(), m.ncols());
    let mut out = DMatrix::zeros(n, t);
    for i in 0..n {
        let row = m.row(i);
        let mean = row.sum() / t as f64;
        let var = row.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / t as f64;
        let std = var.sqrt();
        if std > 1e-13 * (1.0 + mean.abs()) {
            for j in 0..t {
                out[(i, j)] = (m[(i, j)] - mean) / std;
            }
        }
    }
    out
}

/// Eigenvalues (descending) of the re-standardized residual covariance after
/// removing the top p factors; p = 0 returns the spectrum of the window
/// covariance itself. All N eigenvalues are returned, including the ~p zeros
/// introduced by factor removal.
pub fn residual_esd(window: &StandardizedWindow, p: usize) -> Result<Vec<f64>> {
    if p == 0 {
        return Ok(esd_eigenvalues(&covariance(window)));
    }
    let decomp = extract_factors(window, p)?;
    Ok(residual_spectrum(&decomp, window.t()))
}

fn residual_spectrum(decomp: &FactorDecomposition, t: usize) -> Vec<f64> {
    let std_res = standardize_rows_lenient(&decomp.residuals);
    let mut sigma = &std_res * std_res.transpose();
    sigma /= t as f64;
    esd_eigenvalues(&sigma)
}

/// Histogram of the residual eigenvalue spectrum on the given bin edges.
pub fn residual_density(
    decomp: &FactorDecomposition,
    edges: &[f64],
) -> Result<crate::spectra::SpectralDensity> {
    let eigs = residual_spectrum(decomp, decomp.residuals.ncols());
    crate::spectra::SpectralDensity::from_eigenvalues(&eigs, edges)
}

/// Knobs of the joint (factor count, lag) estimator.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FitConfig {
    /// Smallest candidate factor count (0 = allow "no factors").
    pub min_factors: usize,
    /// Largest candidate factor count.
    pub max_factors: usize,
    /// Largest lag coefficient on the grid.
    pub max_lag: f64,
    /// Spacing of the lag grid.
    pub lag_step: f64,
    /// Number of histogram bins (one pinned at zero + the rest uniform).
    pub bins: usize,
    /// Histogram top edge = margin × top residual eigenvalue at max_factors.
    pub edge_margin: f64,
    /// Width of the zero-pinned bin as a fraction of the top edge.
    pub zero_bin_fraction: f64,
    /// Imaginary offset when evaluating model densities.
    pub smoothing: f64,
    /// Points per model density curve.
    pub curve_points: usize,
    /// Model curve range beyond the nominal support edge.
    pub curve_headroom: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            min_factors: 0,
            max_factors: 5,
            max_lag: 0.99,
            lag_step: 0.01,
            bins: 12,
            edge_margin: 1.25,
            zero_bin_fraction: 0.003,
            smoothing: 0.005,
            curve_points: 1000,
            curve_headroom: 1.2,
        }
    }
}

impl FitConfig {
    pub fn lag_grid(&self) -> Vec<f64> {
        let steps = (self.max_lag / self.lag_step).round() as usize;
        (0..=steps).map(|i| i as f64 * self.lag_step).collect()
    }

    fn validate(&self) -> Result<()> {
        if self.min_factors > self.max_factors {
            return Err(Error::InvalidParameter {
                what: format!(
                    "min_factors {} exceeds max_factors {}",
                    self.min_factors, self.max_factors
                ),
            });
        }
        if !(self.max_lag >= 0.0 && self.max_lag < 1.0) || !(self.lag_step > 0.0) {
            return Err(Error::InvalidParameter {
                what: "lag grid requires 0 <= max_lag < 1 and lag_step > 0".into(),
            });
        }
        if self.bins < 2 {
            return Err(Error::InvalidParameter { what: "need at least 2 bins".into() });
        }
        if !(self.zero_bin_fraction > 0.0 && self.zero_bin_fraction < 1.0) {
            return Err(Error::InvalidParameter {
                what: "zero_bin_fraction must lie in (0, 1)".into(),
            });
        }
        if !(self.edge_margin > 0.0) || !(self.smoothing > 0.0) || !(self.curve_headroom > 0.0) {
            return Err(Error::InvalidParameter {
                what: "edge_margin, smoothing and curve_headroom must be positive".into(),
            });
        }
        if self.curve_points < 2 {
            return Err(Error::InvalidParameter { what: "need at least 2 curve points".into() });
        }
        Ok(())
    }
}

/// Model density curves for every lag on the grid at one aspect ratio.
///
/// Building the curves costs a quartic solve per grid point and is shared by
/// every window of the same shape, so callers construct this once per run.
pub struct ModelDensityCache {
    ratio: f64,
    lag_grid: Vec<f64>,
    /// Per lag: (evaluation grid, density samples).
    curves: Vec<(Vec<f64>, Vec<f64>)>,
}

impl ModelDensityCache {
    pub fn build(ratio: f64, config: &FitConfig) -> Result<Self> {
        config.validate()?;
        let lag_grid = config.lag_grid();
        let curves: Result<Vec<(Vec<f64>, Vec<f64>)>> = lag_grid
            .par_iter()
            .map(|&lag| {
                let params = Ar1SpectrumParams::new(lag, ratio)?;
                let grid = params.default_grid(config.curve_points, config.curve_headroom);
                let dens = ar1_density_curve(params, &grid, config.smoothing)?;
                Ok((grid, dens))
            })
            .collect();
        Ok(Self { ratio, lag_grid, curves: curves? })
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    pub fn lag_grid(&self) -> &[f64] {
        &self.lag_grid
    }

    /// All model curves rebinned onto one set of histogram edges.
    fn rebinned(&self, edges: &[f64]) -> Result<Vec<SpectralDensity>> {
        self.curves
            .iter()
            .map(|(grid, dens)| SpectralDensity::from_curve(grid, dens, edges))
            .collect()
    }
}

/// Outcome of the joint estimation on one window.
#[derive(Debug, Clone)]
pub struct EstimationResult {
    /// Estimated factor count.
    pub factor_count: usize,
    /// Estimated AR(1) lag coefficient of the noise.
    pub lag: f64,
    /// Jensen-Shannon distance at the chosen grid point.
    pub divergence: f64,
    /// Candidate factor counts, ascending (rows of `distance_surface`).
    pub factor_candidates: Vec<usize>,
    /// Lag grid (columns of `distance_surface`).
    pub lag_grid: Vec<f64>,
    /// distance_surface[i][j] = distance at (factor_candidates[i], lag_grid[j]).
    pub distance_surface: Vec<Vec<f64>>,
    /// Decomposition at the estimated factor count (None when it is 0).
    pub decomposition: Option<FactorDecomposition>,
    /// Histogram edges used for the comparison.
    pub bin_edges: Vec<f64>,
}

/// Estimates factor count and noise lag for one window by scanning the
/// (factor count, lag) grid for the smallest spectral distance between the
/// residual histogram and the model density.
///
/// Ties (within 1e-15) resolve to the smallest factor count, then the
/// smallest lag, so the estimator never pays model complexity for nothing.
pub fn fit_window(
    window: &StandardizedWindow,
    cache: &ModelDensityCache,
    config: &FitConfig,
) -> Result<EstimationResult> {
    config.validate()?;
    let n = window.n();
    let ratio = window.aspect_ratio();
    if (ratio - cache.ratio).abs() > 1e-12 {
        return Err(Error::InvalidParameter {
            what: format!(
                "window aspect ratio {ratio} does not match cache ratio {}",
                cache.ratio
            ),
        });
    }
    if config.max_factors >= n {
        return Err(Error::RankDeficient { requested: config.max_factors, available: n - 1 });
    }

    // Shared eigendecomposition of the window covariance.
    let sigma = covariance(window);
    let (evals, evecs) = esd_eigen(&sigma);

    let candidates: Vec<usize> = (config.min_factors..=config.max_factors).collect();
    let mut decompositions: Vec<Option<FactorDecomposition>> = Vec::new();
    let mut spectra: Vec<Vec<f64>> = Vec::new();
    for &p in &candidates {
        if p == 0 {
            decompositions.push(None);
            spectra.push(evals.clone());
        } else {
            let d = decompose_with_eigen(window, &evals, &evecs, p)?;
            spectra.push(residual_spectrum(&d, window.t()));
            decompositions.push(Some(d));
        }
    }
    // Histogram range from the deepest residual: with every candidate factor
    // removed, the top eigenvalue tracks the noise bulk edge, so genuine
    // spikes in shallower residuals overflow into the last bin.
    let deep_top = spectra.last().expect("candidate list is non-empty")[0];
    let hi = config.edge_margin * deep_top;
    if !(hi > 0.0) {
        return Err(Error::Numerical { what: "residual spectrum has no positive mass".into() });
    }
    let z0 = config.zero_bin_fraction * hi;
    let mut edges = Vec::with_capacity(config.bins + 1);
    edges.push(0.0);
    let uniform = config.bins - 1;
    for i in 0..=uniform {
        edges.push(z0 + (hi - z0) * i as f64 / uniform as f64);
    }

    let models = cache.rebinned(&edges)?;
    let mut surface: Vec<Vec<f64>> = Vec::with_capacity(candidates.len());
    let mut best: Option<(f64, usize, f64, usize)> = None; // (distance, p, lag, row)
    for (row, (&p, eigs)) in candidates.iter().zip(&spectra).enumerate() {
        let empirical = SpectralDensity::from_eigenvalues(eigs, &edges)?;
        let mut row_dist = Vec::with_capacity(models.len());
        let mut best_here: Option<(f64, f64)> = None;
        for (model, &lag) in models.iter().zip(&cache.lag_grid) {
            let d = js_divergence(&empirical, model)?;
            row_dist.push(d);
            if best_here.map_or(true, |(bd, _)| d < bd) {
                best_here = Some((d, lag));
            }
        }
        surface.push(row_dist);
        let (d, lag) = best_here.expect("lag grid is non-empty");
        if best.map_or(true, |(bd, ..)| d < bd - 1e-15) {
            best = Some((d, p, lag, row));
        }
    }
    let (divergence, factor_count, lag, row) = best.expect("candidate list is non-empty");
    Ok(EstimationResult {
        factor_count,
        lag,
        divergence,
        factor_candidates: candidates,
        lag_grid: cache.lag_grid.clone(),
        distance_surface: surface,
        decomposition: decompositions.swap_remove(row),
        bin_edges: edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::window::standardize_matrix;
    use nalgebra::DMatrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn gaussian_matrix(n: usize, t: usize, seed: u64) -> DMatrix<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        DMatrix::from_fn(n, t, |_, _| rand::Rng::sample(&mut rng, StandardNormal))
    }

    #[test]
    fn reconstruction_error_is_tiny() {
        let w = standardize_matrix(&gaussian_matrix(20, 100, 1)).unwrap();
        let d = extract_factors(&w, 3).unwrap();
        let rebuilt = &d.loadings * &d.factors + &d.residuals;
        let err = (&rebuilt - &w.matrix).norm() / w.matrix.norm();
        assert!(err < 1e-10, "relative reconstruction error {err}");
    }

    #[test]
    fn residual_orthogonal_to_factors() {
        let w = standardize_matrix(&gaussian_matrix(15, 80, 2)).unwrap();
        let d = extract_factors(&w, 2).unwrap();
        let cross = &d.residuals * d.factors.transpose();
        assert!(cross.norm() < 1e-8 * w.matrix.norm(), "cross norm {}", cross.norm());
    }

    #[test]
    fn removing_factors_introduces_zero_eigenvalues() {
        let w = standardize_matrix(&gaussian_matrix(25, 120, 3)).unwrap();
        for p in 1..=4usize {
            let eigs = residual_esd(&w, p).unwrap();
            let zeros = eigs.iter().filter(|&&e| e.abs() < 1e-8).count();
            assert!(zeros >= p, "p={p}: only {zeros} zero eigenvalues in {eigs:?}");
        }
    }

    #[test]
    fn factor_count_bounds_enforced() {
        let w = standardize_matrix(&gaussian_matrix(6, 30, 4)).unwrap();
        assert!(matches!(extract_factors(&w, 0), Err(Error::RankDeficient { .. })));
        assert!(matches!(extract_factors(&w, 6), Err(Error::RankDeficient { .. })));
        assert!(extract_factors(&w, 5).is_ok());
    }
}
