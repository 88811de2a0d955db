use thiserror::Error;

/// Errors shared across the analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// A channel row has zero variance (dead sensor); standardization is undefined.
    #[error("degenerate row {row}: zero standard deviation (constant channel)")]
    DegenerateRow { row: usize },

    /// Requested window extends past the start of the series.
    #[error("window out of range: end index {end_index} needs at least {width} samples")]
    WindowOutOfRange { end_index: usize, width: usize },

    /// More rows than columns; the model's reference densities assume c = N/T ≤ 1.
    #[error("aspect ratio N/T = {n}/{t} exceeds 1; wider-than-tall windows are not supported")]
    AspectRatio { n: usize, t: usize },

    /// Fewer strictly positive covariance eigenvalues than requested factors.
    #[error("rank deficient: requested {requested} factors but only {available} positive eigenvalues")]
    RankDeficient { requested: usize, available: usize },

    /// Jensen-Shannon divergence requires both histograms on identical edges.
    #[error("bin mismatch: distributions have different bin edges")]
    BinMismatch,

    /// A parameter grid or range was empty.
    #[error("empty grid: {what}")]
    EmptyGrid { what: &'static str },

    /// Model parameters outside the supported domain.
    #[error("invalid parameter: {what}")]
    InvalidParameter { what: String },

    /// The quartic's leading coefficient underflows as b → 1.
    #[error("degenerate quartic coefficients at b = {b}: leading coefficient underflow")]
    DegenerateCoefficients { b: f64 },

    /// A numerical routine failed to converge or produced non-finite values.
    #[error("numerical failure: {what}")]
    Numerical { what: String },

    /// Scenario description fails validation.
    #[error("invalid scenario: {what}")]
    InvalidScenario { what: String },
}

pub type Result<T> = std::result::Result<T, Error>;
