//! Numerical workbench for finite Toeplitz and Hankel sections built from the
//! Fourier coefficients of symbols on the unit circle.
//!
//! The crate is organised bottom-up:
//!
//! * [`symbols`] produces Fourier coefficients (closed form or FFT quadrature),
//!   conjugates, reflects and multiplies symbols, and measures mean oscillation.
//! * [`structured`] builds dense Toeplitz/Hankel sections, semicommutators
//!   `T_n(fg) − T_n(f)T_n(g)`, the flip matrix, and the two-term Hankel-product
//!   (Widom) decomposition of the semicommutator.
//! * [`spectral`] computes eigenvalues and singular values with a dense
//!   Householder + QL solver and turns outlier counts into cluster verdicts.
//! * [`lab`] is the config-driven experiment runner behind the `toeplab` CLI.

pub mod error;
pub mod lab;
pub mod spectral;
pub mod structured;
pub mod symbols;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use spectral::{
    classify_cluster, cluster_of_sections, eps_rank, hermitian_eigenvalues, outlier_count, singular_values, ClusterReport,
    ClusterThresholds, SingularSpectrum, Verdict,
};
pub use structured::{flip_matrix, hankel_section, semicommutator, toeplitz, widom_check, widom_rhs, ComplexMatrix, WidomDecomposition};
pub use symbols::{
    catalog_coeffs, conjugate_coeffs, mean_oscillation, oscillation_profile, product_coeffs, reflect_coeffs, sample_coeffs, FourierCoeffs,
    OscillationProfile, SampledGrid, SymbolKind, SymbolSpec,
};
