//! Marchenko-Pastur law for white-noise sample covariance matrices.
//!
//! For an N×T matrix of i.i.d. entries with variance σ², the eigenvalue
//! distribution of the sample covariance (1/T)WWᵀ converges, as N,T → ∞ with
//! N/T → c ∈ (0,1], to a deterministic density supported on
//! [σ²(1−√c)², σ²(1+√c)²]. This module provides the density, its support,
//! and the closed-form Stieltjes transform used as an oracle for the general
//! correlated-noise solver.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Parameters of the white-noise limit law.
#[derive(Debug, Clone, Copy)]
pub struct MpParams {
    /// Aspect ratio c = N/T, in (0, 1].
    pub ratio: f64,
    /// Entry variance σ² (1 after row standardization).
    pub variance: f64,
}

impl MpParams {
    pub fn new(ratio: f64, variance: f64) -> Result<Self> {
        if !(ratio > 0.0 && ratio <= 1.0) {
            return Err(Error::InvalidParameter {
                what: format!("aspect ratio must lie in (0, 1], got {ratio}"),
            });
        }
        if !(variance > 0.0) {
            return Err(Error::InvalidParameter {
                what: format!("variance must be positive, got {variance}"),
            });
        }
        Ok(Self { ratio, variance })
    }

    /// Support endpoints [σ²(1−√c)², σ²(1+√c)²].
    pub fn support(&self) -> (f64, f64) {
        let s = self.ratio.sqrt();
        (self.variance * (1.0 - s) * (1.0 - s), self.variance * (1.0 + s) * (1.0 + s))
    }

    /// Density ρ(λ) = √((b−λ)(λ−a)) / (2π c σ² λ) on the support, 0 outside.
    pub fn density(&self, lambda: f64) -> f64 {
        let (a, b) = self.support();
        if lambda <= a || lambda >= b || lambda <= 0.0 {
            return 0.0;
        }
        ((b - lambda) * (lambda - a)).sqrt()
            / (2.0 * std::f64::consts::PI * self.ratio * self.variance * lambda)
    }

    /// Closed-form Stieltjes transform G(z) = ∫ ρ(λ)/(z−λ) dλ for Im z > 0,
    /// with the branch of each square root taken so G(z) → 1/z at large |z|.
    pub fn stieltjes(&self, z: Complex64) -> Complex64 {
        let s2 = self.variance;
        let c = self.ratio;
        let (a, b) = self.support();
        // G(z) = [z − σ²(1−c) − √(z−a)·√(z−b)] / (2 c σ² z)
        // with principal square roots; this choice decays like 1/z above the
        // real axis.
        let root = (z - a).sqrt() * (z - b).sqrt();
        (z - s2 * (1.0 - c) - root) / (2.0 * c * s2 * z)
    }
}
