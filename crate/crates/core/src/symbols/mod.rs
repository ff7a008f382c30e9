//! Symbols on the unit circle: Fourier coefficients, products, conjugation,
//! reflection, and mean-oscillation diagnostics.

mod coeffs;
mod oscillation;
mod spec;

pub use coeffs::{conjugate_coeffs, product_coeffs, reflect_coeffs, FourierCoeffs};
pub use oscillation::{default_deltas, mean_oscillation, oscillation_profile, vmo_verdict, OscillationProfile, VmoThresholds, VmoVerdict};
pub use spec::{catalog_coeffs, sample_coeffs, symbol_coeffs, term_product, SampledGrid, SymbolClass, SymbolKind, SymbolSpec, SymbolTerm};

/// Default quadrature grid size.
pub const DEFAULT_GRID_POINTS: usize = 4096;
/// Default coefficient truncation.
pub const DEFAULT_K: usize = 128;
