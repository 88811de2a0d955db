//! Spectral anomaly detection for multichannel time series.
//!
//! The pipeline slides an N×T window over the data, standardizes each row,
//! and studies the eigenvalue spectrum of the sample covariance matrix.
//! Quiet data produces a noise bulk whose shape is fully determined by the
//! aspect ratio N/T and the temporal memory of the noise; events inject
//! common components that separate from the bulk as spikes. Per window, a
//! joint fit recovers the factor count p̂ and the noise lag b̂ by matching
//! the residual spectrum against a family of model densities; spike
//! eigenvalues and eigenvectors then yield spatial, temporal, and location
//! indicators whose standardized histories drive alarming.
//!
//! Module map:
//! - [`window`]: windowing, row standardization, covariance, eigenvalues.
//! - [`spectra`]: model spectral laws (white and AR(1) noise), histogram
//!   densities, spectral distances, AR(1) sampling.
//! - [`factor`]: factor extraction, residual spectra, the (p̂, b̂) fit.
//! - [`detect`]: indicators, confidence levels, alarms, TDR/FAR metrics.
//! - [`synth`]: synthetic scenarios with planted ground truth.

pub mod detect;
pub mod error;
pub mod factor;
pub mod spectra;
pub mod synth;
pub mod window;

pub use error::{Error, Result};
