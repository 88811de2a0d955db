//! Binned spectral densities and the Jensen-Shannon spectral distance.
//!
//! Both empirical eigenvalue histograms and model densities are reduced to
//! the same representation — probability mass on a shared set of bin edges —
//! so they can be compared with a single bounded, symmetric distance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A probability mass function over contiguous eigenvalue bins.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralDensity {
    /// K+1 strictly ascending edges.
    pub bin_edges: Vec<f64>,
    /// K nonnegative masses summing to 1.
    pub mass: Vec<f64>,
}

impl SpectralDensity {
    fn validate_edges(edges: &[f64]) -> Result<()> {
        if edges.len() < 2 {
            return Err(Error::EmptyGrid { what: "bin edges" });
        }
        if !edges.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter {
                what: "bin edges must be strictly ascending".into(),
            });
        }
        Ok(())
    }

    /// Midpoints of each bin, for plotting and CSV export.
    pub fn bin_centers(&self) -> Vec<f64> {
        self.bin_edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    pub fn total_mass(&self) -> f64 {
        self.mass.iter().sum()
    }

    /// Histogram of eigenvalues on the given edges, normalized to unit mass.
    ///
    /// Values outside the edge range are clamped into the first/last bin so
    /// that spike mass separated far above the bulk still shows up in the
    /// comparison instead of being silently dropped.
    pub fn from_eigenvalues(eigs: &[f64], edges: &[f64]) -> Result<Self> {
        Self::validate_edges(edges)?;
        if eigs.is_empty() {
            return Err(Error::EmptyGrid { what: "eigenvalues" });
        }
        let k = edges.len() - 1;
        let mut counts = vec![0.0f64; k];
        for &e in eigs {
            counts[bin_index(edges, e)] += 1.0;
        }
        let total = eigs.len() as f64;
        for c in &mut counts {
            *c /= total;
        }
        Ok(Self { bin_edges: edges.to_vec(), mass: counts })
    }

    /// Bins a continuous density curve, given as samples `rho[i]` at grid
    /// points `grid[i]`, onto the edges.
    ///
    /// Each trapezoid segment's mass is assigned to the bin containing its
    /// midpoint (segments are much finer than bins, so boundary smearing is
    /// negligible); segments falling outside the edge range clamp to the end
    /// bins, mirroring the eigenvalue clamping rule. The result is normalized
    /// to unit mass.
    pub fn from_curve(grid: &[f64], rho: &[f64], edges: &[f64]) -> Result<Self> {
        Self::validate_edges(edges)?;
        if grid.len() != rho.len() || grid.len() < 2 {
            return Err(Error::InvalidParameter {
                what: "curve grid and density must have equal length ≥ 2".into(),
            });
        }
        let k = edges.len() - 1;
        let mut mass = vec![0.0f64; k];
        for i in 0..grid.len() - 1 {
            let seg = 0.5 * (rho[i] + rho[i + 1]) * (grid[i + 1] - grid[i]);
            let mid = 0.5 * (grid[i] + grid[i + 1]);
            mass[bin_index(edges, mid)] += seg;
        }
        let total: f64 = mass.iter().sum();
        if !(total > 0.0) {
            return Err(Error::Numerical { what: "curve has zero total mass on the edges".into() });
        }
        for m in &mut mass {
            *m /= total;
        }
        Ok(Self { bin_edges: edges.to_vec(), mass })
    }
}

/// Index of the bin containing x, clamping outside values to the end bins.
/// Bins are half-open [e_i, e_{i+1}) except the last, which is closed.
fn bin_index(edges: &[f64], x: f64) -> usize {
    let k = edges.len() - 1;
    if x < edges[0] {
        return 0;
    }
    if x >= edges[k] {
        return k - 1;
    }
    // partition_point returns the first edge > x; subtract one for the bin.
    edges.partition_point(|&e| e <= x).saturating_sub(1).min(k - 1)
}

/// Jensen-Shannon divergence between two histograms on identical edges.
///
/// D = ½·KL(p‖m) + ½·KL(q‖m) with m = (p+q)/2, natural logarithm and the
/// convention 0·ln(0/x) = 0. Symmetric, and bounded by ln 2.
pub fn js_divergence(p: &SpectralDensity, q: &SpectralDensity) -> Result<f64> {
    if p.bin_edges.len() != q.bin_edges.len()
        || p.bin_edges
            .iter()
            .zip(&q.bin_edges)
            .any(|(a, b)| (a - b).abs() > 1e-12 * (1.0 + a.abs().max(b.abs())))
    {
        return Err(Error::BinMismatch);
    }
    let mut d = 0.0;
    for (&pi, &qi) in p.mass.iter().zip(&q.mass) {
        let mi = 0.5 * (pi + qi);
        if pi > 0.0 {
            d += 0.5 * pi * (pi / mi).ln();
        }
        if qi > 0.0 {
            d += 0.5 * qi * (qi / mi).ln();
        }
    }
    // Clamp away negative round-off so callers can rely on d ≥ 0.
    Ok(d.max(0.0))
}

/// K+1 uniformly spaced edges over [lo, hi].
pub fn uniform_edges(lo: f64, hi: f64, bins: usize) -> Vec<f64> {
    let k = bins.max(1);
    (0..=k).map(|i| lo + (hi - lo) * i as f64 / k as f64).collect()
}
