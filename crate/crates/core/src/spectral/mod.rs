//! Eigenvalues, singular values, ε-ranks, and cluster classification.

mod cluster;
mod dense;

pub use cluster::{classify_cluster, cluster_of_sections, report_from_spectra, ClusterReport, ClusterThresholds, Verdict};

use crate::error::{Error, Result};
use crate::structured::ComplexMatrix;

/// Relative level below which singular values are reported as zero.
pub const CLAMP_RELATIVE: f64 = 1e-12;

/// Singular values of an order-`n` matrix, nonincreasing and nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSpectrum {
    n: usize,
    values: Vec<f64>,
}

impl SingularSpectrum {
    /// Sorts descending and clamps values below `1e−12·σ_max` (and any
    /// negative rounding noise) to zero.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("non-finite singular value".into()));
        }
        if let Some(v) = values.iter().find(|&&v| v < -1e-12) {
            return Err(Error::InvalidArgument(format!("negative singular value {v}")));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        let floor = values.first().copied().unwrap_or(0.0) * CLAMP_RELATIVE;
        for v in &mut values {
            if *v < floor || *v < 0.0 {
                *v = 0.0;
            }
        }
        Ok(Self { n: values.len(), values })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of singular values `≥ eps`; a tie counts as an outlier.
    pub fn outlier_count(&self, eps: f64) -> Result<usize> {
        if eps.is_nan() || eps <= 0.0 {
            return Err(Error::InvalidArgument(format!("threshold must be positive, got {eps}")));
        }
        // values are sorted descending
        Ok(self.values.partition_point(|&v| v >= eps))
    }
}

/// Number of singular values `≥ eps`.
pub fn outlier_count(s: &SingularSpectrum, eps: f64) -> Result<usize> {
    s.outlier_count(eps)
}

/// All eigenvalues of a Hermitian matrix, descending.
///
/// Fails when `‖M − M*‖_F > 1e−10·(1 + ‖M‖_F)`; within that tolerance the
/// Hermitian part is used.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let asymmetry = m.hermitian_asymmetry();
    let tolerance = 1e-10 * (1.0 + m.frobenius_norm());
    if asymmetry > tolerance {
        return Err(Error::NotHermitian { asymmetry, tolerance });
    }
    let n = m.order();
    let (d, e) = dense::tridiagonalize_hermitian(m.hermitian_part().into_data(), n);
    let mut ev = dense::tridiagonal_eigenvalues(d, &e)?;
    ev.sort_by(|a, b| b.total_cmp(a));
    Ok(ev)
}

/// Singular values via Householder bidiagonalization followed by the
/// Golub–Kahan tridiagonal eigenproblem. Absolute accuracy is a modest
/// multiple of `ε_mach·‖M‖`, so tiny singular values are not squared away.
pub fn singular_values(m: &ComplexMatrix) -> Result<SingularSpectrum> {
    let n = m.order();
    let (d, e) = dense::bidiagonalize(m.as_slice().to_vec(), n);
    SingularSpectrum::new(dense::bidiagonal_singular_values(&d, &e)?)
}

/// Minimal rank `r` with `M = R + N`, `rank R = r`, `‖N‖₂ < eps`; by
/// Eckart–Young this is the number of singular values `≥ eps`.
pub fn eps_rank(m: &ComplexMatrix, eps: f64) -> Result<usize> {
    singular_values(m)?.outlier_count(eps)
}
