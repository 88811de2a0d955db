//! Limiting eigenvalue density of sample covariance matrices built from
//! row-standardized AR(1) noise.
//!
//! An AR(1) process with lag-one coefficient `b` has a Toeplitz
//! autocovariance matrix whose spectrum fills the interval
//! [(1−b)/(1+b), (1+b)/(1−b)] — the extrema of the process power spectrum.
//! Combining that autocovariance spectrum with the white-noise sample
//! covariance law yields a quartic equation for the moment generating
//! function M(z) of the sample covariance spectrum (see the `quartic`
//! module); this module selects the physical branch among its four roots and
//! evaluates the density along real-axis grids.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectra::quartic::mgf_roots;

/// Lag coefficient and aspect ratio identifying one autocorrelated-noise law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ar1SpectrumParams {
    /// AR(1) lag-one coefficient b, |b| < 1.
    pub lag: f64,
    /// Aspect ratio c = N/T, in (0, 1].
    pub ratio: f64,
}

impl Ar1SpectrumParams {
    pub fn new(lag: f64, ratio: f64) -> Result<Self> {
        if !(lag.abs() < 1.0) {
            return Err(Error::DegenerateCoefficients { b: lag });
        }
        if !(ratio > 0.0 && ratio <= 1.0) {
            return Err(Error::InvalidParameter {
                what: format!("aspect ratio must lie in (0, 1], got {ratio}"),
            });
        }
        Ok(Self { lag, ratio })
    }

    /// A practical upper bound for density grids: the white-noise upper edge
    /// stretched by the largest autocovariance eigenvalue, times `headroom`.
    pub fn grid_upper_bound(&self, headroom: f64) -> f64 {
        let s = self.ratio.sqrt();
        (1.0 + s) * (1.0 + s) * (1.0 + self.lag) / (1.0 - self.lag) * headroom
    }

    /// Uniform evaluation grid from 0 to `grid_upper_bound(headroom)`.
    pub fn default_grid(&self, npts: usize, headroom: f64) -> Vec<f64> {
        let hi = self.grid_upper_bound(headroom);
        let n = npts.max(2);
        (0..n).map(|i| hi * i as f64 / (n - 1) as f64).collect()
    }
}

/// Moment generating function of the AR(1) autocovariance spectrum,
///
///   M(z) = 1 / (√(z − f_min) · √(z − f_max)),
///
/// with f_min = (1−b)/(1+b), f_max = (1+b)/(1−b) and principal square roots.
/// At b = 0 the autocovariance is the identity and M(z) = 1/(z−1).
pub fn autocovariance_mgf(z: Complex64, lag: f64) -> Complex64 {
    let f_min = (1.0 - lag) / (1.0 + lag);
    let f_max = (1.0 + lag) / (1.0 - lag);
    ((z - f_min).sqrt() * (z - f_max).sqrt()).inv()
}

/// How far a candidate root M violates the scaling relation
/// c·M(z) = M_auto(z / (c·(1 + M(z)))) tying the sample covariance spectrum
/// back to the autocovariance spectrum. Zero (up to round-off) on the
/// physical branch.
pub fn scaling_relation_residual(m: Complex64, z: Complex64, lag: f64, ratio: f64) -> f64 {
    let denom = ratio * (1.0 + m);
    if denom.norm() < 1e-300 {
        return f64::INFINITY;
    }
    let v = (ratio * m - autocovariance_mgf(z / denom, lag)).norm();
    if v.is_finite() {
        v
    } else {
        f64::INFINITY
    }
}

/// Spectral density implied by a candidate M at z = λ + iε, via the
/// Stieltjes transform G(z) = (M(z) + 1)/z and ρ = −Im G / π.
fn implied_density(m: Complex64, z: Complex64) -> f64 {
    -((m + 1.0) / z).im / std::f64::consts::PI
}

/// Physical value of the moment generating function at z (Im z > 0).
///
/// The quartic has four branches; the physical one must imply a nonnegative
/// density and satisfy the autocovariance scaling relation. Among the roots
/// with nonnegative implied density (all four if none qualifies, which can
/// happen from round-off far outside the support), the one with the smallest
/// relation residual is returned together with its implied density.
pub fn physical_mgf(params: Ar1SpectrumParams, z: Complex64) -> Result<(Complex64, f64)> {
    if !(z.im > 0.0) {
        return Err(Error::InvalidParameter {
            what: "moment generating function requires Im z > 0".into(),
        });
    }
    let roots = mgf_roots(z, params.lag, params.ratio)?;
    let scored: Vec<(Complex64, f64, f64)> = roots
        .iter()
        .map(|&m| {
            (m, implied_density(m, z), scaling_relation_residual(m, z, params.lag, params.ratio))
        })
        .collect();
    let admissible: Vec<&(Complex64, f64, f64)> =
        scored.iter().filter(|(_, dens, _)| *dens >= 0.0).collect();
    let pool = if admissible.is_empty() { scored.iter().collect() } else { admissible };
    let (m, dens, _) = pool
        .into_iter()
        .min_by(|a, b| a.2.total_cmp(&b.2))
        .expect("quartic always yields four roots");
    Ok((*m, *dens))
}

/// Density of the autocorrelated-noise law at one point, evaluated a height
/// `epsilon` above the real axis and clipped at zero.
pub fn ar1_density_at(params: Ar1SpectrumParams, lambda: f64, epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParameter {
            what: format!("imaginary offset must be positive, got {epsilon}"),
        });
    }
    let (_, dens) = physical_mgf(params, Complex64::new(lambda, epsilon))?;
    Ok(dens.max(0.0))
}

/// Density evaluated along a grid of real points.
///
/// Returns one clipped density value per grid point. The grid may include 0;
/// the offset `epsilon` keeps every evaluation strictly above the real axis.
pub fn ar1_density_curve(
    params: Ar1SpectrumParams,
    grid: &[f64],
    epsilon: f64,
) -> Result<Vec<f64>> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid { what: "density grid" });
    }
    grid.iter().map(|&x| ar1_density_at(params, x, epsilon)).collect()
}

/// Model density evaluated on a grid and then normalized onto histogram
/// bins, ready for comparison against an empirical eigenvalue histogram on
/// the same edges.
pub fn ar1_binned_density(
    params: Ar1SpectrumParams,
    grid: &[f64],
    epsilon: f64,
    edges: &[f64],
) -> Result<crate::spectra::density::SpectralDensity> {
    let dens = ar1_density_curve(params, grid, epsilon)?;
    crate::spectra::density::SpectralDensity::from_curve(grid, &dens, edges)
}
