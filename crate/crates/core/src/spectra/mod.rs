//! Spectral machinery: binned densities, the white-noise and
//! autocorrelated-noise limit laws, and finite-sample AR(1) draws.

pub mod ar1_law;
pub mod ar1_sample;
pub mod density;
pub mod mp;
pub mod quartic;

pub use ar1_law::{
    ar1_binned_density, ar1_density_at, ar1_density_curve, autocovariance_mgf, physical_mgf,
    scaling_relation_residual, Ar1SpectrumParams,
};
pub use ar1_sample::{sample_ar1_rows, sample_ar1_rows_seeded};
pub use density::{js_divergence, uniform_edges, SpectralDensity};
pub use mp::MpParams;
pub use quartic::{mgf_quartic_coeffs, mgf_roots, solve_quartic};
