//! Sliding-window formation, row standardization, and spectral decomposition.
//!
//! Every analysis step downstream consumes an N×T window of the multichannel
//! series: N channels (rows) observed at T consecutive sample times (columns).
//! Rows are standardized to mean 0 / standard deviation 1 so that the sample
//! covariance Σ = (1/T)·W·Wᵀ is simultaneously the correlation matrix, with
//! unit diagonal and trace exactly N.
//!
//! Standard deviations use the population convention (denominator T, not
//! T−1): this is what makes the Σ diagonal exactly 1 and keeps the eigenvalue
//! trace identity exact instead of holding only up to a (T−1)/T factor.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// A full multichannel series: N labeled channels sampled at T_total times.
///
/// Missing entries are rejected at construction; there is no imputation rule.
#[derive(Debug, Clone)]
pub struct TimeSeriesSet {
    pub channels: Vec<String>,
    pub timestamps: Vec<i64>,
    /// N×T_total, row i = channel i.
    pub values: DMatrix<f64>,
}

impl TimeSeriesSet {
    pub fn new(channels: Vec<String>, timestamps: Vec<i64>, values: DMatrix<f64>) -> Result<Self> {
        if values.nrows() != channels.len() || values.ncols() != timestamps.len() {
            return Err(Error::InvalidParameter {
                what: format!(
                    "shape mismatch: {} channels, {} timestamps, {}×{} values",
                    channels.len(),
                    timestamps.len(),
                    values.nrows(),
                    values.ncols()
                ),
            });
        }
        if !timestamps.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter {
                what: "timestamps must be strictly increasing".into(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter {
                what: "values contain non-finite entries".into(),
            });
        }
        Ok(Self { channels, timestamps, values })
    }

    pub fn n_channels(&self) -> usize {
        self.values.nrows()
    }

    pub fn n_samples(&self) -> usize {
        self.values.ncols()
    }
}

/// One N×T slice of the series ending at a specific sample.
#[derive(Debug, Clone)]
pub struct DataWindow {
    pub matrix: DMatrix<f64>,
    /// Timestamp of the last (most recent) column.
    pub end_time: i64,
    pub channels: Vec<String>,
}

impl DataWindow {
    /// Builds a window directly from a matrix, for callers that do not carry
    /// channel labels or timestamps (tests, synthetic pipelines).
    pub fn from_matrix(matrix: DMatrix<f64>) -> Result<Self> {
        let (n, t) = (matrix.nrows(), matrix.ncols());
        if n < 2 || t < 2 {
            return Err(Error::InvalidParameter {
                what: format!("window must be at least 2×2, got {n}×{t}"),
            });
        }
        if n > t {
            return Err(Error::AspectRatio { n, t });
        }
        let channels = (0..n).map(|i| format!("ch{i}")).collect();
        Ok(Self { matrix, end_time: (t - 1) as i64, channels })
    }

    /// Aspect ratio c = N/T of this window.
    pub fn aspect_ratio(&self) -> f64 {
        self.matrix.nrows() as f64 / self.matrix.ncols() as f64
    }
}

/// A window whose rows have been brought to mean 0, standard deviation 1.
///
/// The original row means and stds are kept for audit so the transform can be
/// reported or inverted.
#[derive(Debug, Clone)]
pub struct StandardizedWindow {
    pub matrix: DMatrix<f64>,
    pub row_means: DVector<f64>,
    pub row_stds: DVector<f64>,
}

impl StandardizedWindow {
    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn t(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn aspect_ratio(&self) -> f64 {
        self.n() as f64 / self.t() as f64
    }
}

/// Extracts the T-wide window of `data` ending at column `end_index` (inclusive).
pub fn form_window(data: &TimeSeriesSet, end_index: usize, width: usize) -> Result<DataWindow> {
    if width < 2 {
        return Err(Error::InvalidParameter { what: format!("window width {width} < 2") });
    }
    if end_index + 1 < width || end_index >= data.n_samples() {
        return Err(Error::WindowOutOfRange { end_index, width });
    }
    let n = data.n_channels();
    if n > width {
        return Err(Error::AspectRatio { n, t: width });
    }
    let start = end_index + 1 - width;
    let matrix = data.values.columns(start, width).into_owned();
    Ok(DataWindow {
        matrix,
        end_time: data.timestamps[end_index],
        channels: data.channels.clone(),
    })
}

/// Row mean and population standard deviation (denominator T).
fn row_stats(row: &[f64]) -> (f64, f64) {
    let t = row.len() as f64;
    let mean = row.iter().sum::<f64>() / t;
    let var = row.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / t;
    (mean, var.sqrt())
}

/// Threshold below which a row's standard deviation counts as zero.
///
/// Relative to the row's magnitude so that rescaling the data does not change
/// which channels are flagged dead.
const DEGENERATE_STD_TOL: f64 = 1e-13;

/// Standardizes each row to mean 0, population standard deviation 1.
pub fn standardize_rows(w: &DataWindow) -> Result<StandardizedWindow> {
    standardize_matrix(&w.matrix)
}

/// Standardization on a bare matrix; used both for raw windows and for
/// re-standardizing factor-model residuals.
pub fn standardize_matrix(m: &DMatrix<f64>) -> Result<StandardizedWindow> {
    let (n, t) = (m.nrows(), m.ncols());
    let mut out = DMatrix::zeros(n, t);
    let mut means = DVector::zeros(n);
    let mut stds = DVector::zeros(n);
    for i in 0..n {
        let row: Vec<f64> = m.row(i).iter().copied().collect();
        let (mean, std) = row_stats(&row);
        let scale = mean.abs().max(row.iter().fold(0.0f64, |a, v| a.max(v.abs()))).max(1.0);
        if std <= DEGENERATE_STD_TOL * scale {
            return Err(Error::DegenerateRow { row: i });
        }
        means[i] = mean;
        stds[i] = std;
        for j in 0..t {
            out[(i, j)] = (m[(i, j)] - mean) / std;
        }
    }
    Ok(StandardizedWindow { matrix: out, row_means: means, row_stds: stds })
}

/// Sample covariance Σ = (1/T)·W·Wᵀ of a standardized window.
///
/// Equals the correlation matrix of the original window: unit diagonal,
/// symmetric positive semi-definite, trace N.
pub fn covariance(w: &StandardizedWindow) -> DMatrix<f64> {
    let t = w.t() as f64;
    let mut sigma = &w.matrix * w.matrix.transpose();
    sigma /= t;
    // Symmetrize away the last bits of floating-point asymmetry so the
    // symmetric eigensolver sees an exactly symmetric matrix.
    let n = sigma.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (sigma[(i, j)] + sigma[(j, i)]);
            sigma[(i, j)] = v;
            sigma[(j, i)] = v;
        }
    }
    sigma
}

/// Eigenvalues of a symmetric matrix, sorted descending.
pub fn esd_eigenvalues(sigma: &DMatrix<f64>) -> Vec<f64> {
    let mut eigs: Vec<f64> = sigma.clone().symmetric_eigenvalues().iter().copied().collect();
    eigs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    eigs
}

/// Eigendecomposition of a symmetric matrix with eigenvalues sorted
/// descending and eigenvectors as matching unit columns.
pub fn esd_eigen(sigma: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let se = sigma.clone().symmetric_eigen();
    let n = sigma.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    // Descending by eigenvalue; ties keep the solver's original index order.
    order.sort_by(|&a, &b| {
        se.eigenvalues[b]
            .partial_cmp(&se.eigenvalues[a])
            .unwrap()
            .then(a.cmp(&b))
    });
    let eigs: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vecs = DMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vecs.set_column(k, &se.eigenvectors.column(i));
    }
    (eigs, vecs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_slicing_takes_trailing_columns() {
        let values = DMatrix::from_fn(3, 10, |i, j| (i * 10 + j) as f64);
        let ts = TimeSeriesSet::new(
            (0..3).map(|i| format!("c{i}")).collect(),
            (0..10).collect(),
            values,
        )
        .unwrap();
        let w = form_window(&ts, 9, 4).unwrap();
        assert_eq!(w.matrix.ncols(), 4);
        assert_eq!(w.matrix[(0, 0)], 6.0);
        assert_eq!(w.matrix[(2, 3)], 29.0);
        assert_eq!(w.end_time, 9);
    }

    #[test]
    fn window_out_of_range_rejected() {
        let values = DMatrix::from_element(3, 10, 1.0);
        let ts = TimeSeriesSet::new(
            (0..3).map(|i| format!("c{i}")).collect(),
            (0..10).collect(),
            values,
        )
        .unwrap();
        assert!(matches!(
            form_window(&ts, 2, 4),
            Err(Error::WindowOutOfRange { .. })
        ));
    }

    #[test]
    fn standardize_row_basic() {
        let w = DataWindow::from_matrix(DMatrix::from_row_slice(2, 3, &[
            1.0, 2.0, 3.0, //
            4.0, 0.0, 2.0,
        ]))
        .unwrap();
        let s = standardize_rows(&w).unwrap();
        for i in 0..2 {
            let row: Vec<f64> = s.matrix.row(i).iter().copied().collect();
            let (m, sd) = row_stats(&row);
            assert!(m.abs() < 1e-12);
            assert!((sd - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_row_is_degenerate() {
        let w = DataWindow::from_matrix(DMatrix::from_row_slice(2, 3, &[
            5.0, 5.0, 5.0, //
            1.0, 2.0, 3.0,
        ]))
        .unwrap();
        assert!(matches!(standardize_rows(&w), Err(Error::DegenerateRow { row: 0 })));
    }

    #[test]
    fn covariance_of_orthogonal_rows_is_identity() {
        // Two orthogonal ±1 rows of norm √T are already standardized.
        let w = StandardizedWindow {
            matrix: DMatrix::from_row_slice(2, 4, &[
                1.0, 1.0, -1.0, -1.0, //
                1.0, -1.0, 1.0, -1.0,
            ]),
            row_means: DVector::zeros(2),
            row_stds: DVector::from_element(2, 1.0),
        };
        let sigma = covariance(&w);
        assert!((sigma[(0, 0)] - 1.0).abs() < 1e-12);
        assert!((sigma[(1, 1)] - 1.0).abs() < 1e-12);
        assert!(sigma[(0, 1)].abs() < 1e-12);
    }

    #[test]
    fn identical_rows_have_unit_correlation() {
        let w = DataWindow::from_matrix(DMatrix::from_row_slice(2, 4, &[
            1.0, 2.0, 3.0, 4.0, //
            1.0, 2.0, 3.0, 4.0,
        ]))
        .unwrap();
        let s = standardize_rows(&w).unwrap();
        let sigma = covariance(&s);
        assert!((sigma[(0, 1)] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_sorted_and_match_diag() {
        let sigma = DMatrix::from_diagonal(&DVector::from_vec(vec![3.0, 1.0, 0.0]));
        let eigs = esd_eigenvalues(&sigma);
        assert_eq!(eigs, vec![3.0, 1.0, 0.0]);
    }
}
