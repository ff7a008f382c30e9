use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::symbols::FourierCoeffs;

/// Toeplitz section `T_n(f)` with entries `A_{ij} = c_{i−j}`.
///
/// Flagged truncated when `K < n − 1` and the symbol is not band-limited;
/// the missing diagonals are zero.
pub fn toeplitz(c: &FourierCoeffs, n: usize) -> ComplexMatrix {
    let diag: Vec<Complex64> = (-(n as i64 - 1)..=(n as i64 - 1)).map(|k| c.get(k)).collect();
    let off = n as i64 - 1;
    ComplexMatrix::from_fn(n, |i, j| diag[(i as i64 - j as i64 + off) as usize]).with_truncated(!c.is_band_limited() && c.k_max() + 1 < n)
}

/// Hankel section `H_{ij} = c_{i+j+1}`, `0 ≤ i, j < n`.
///
/// Flagged truncated when `K < 2n − 1` and the symbol is not band-limited.
pub fn hankel_section(c: &FourierCoeffs, n: usize) -> ComplexMatrix {
    let anti: Vec<Complex64> = (1..=2 * n as i64 - 1).map(|k| c.get(k)).collect();
    ComplexMatrix::from_fn(n, |i, j| anti[i + j]).with_truncated(!c.is_band_limited() && c.k_max() + 1 < 2 * n)
}

/// `T_n(fg) − T_n(f)·T_n(g)`. The caller supplies the product coefficients so
/// their provenance stays explicit.
pub fn semicommutator(f: &FourierCoeffs, g: &FourierCoeffs, fg: &FourierCoeffs, n: usize) -> ComplexMatrix {
    toeplitz(fg, n).sub(&toeplitz(f, n).matmul(&toeplitz(g, n)))
}

/// Reversal matrix `J_n` with `(J_n)_{ij} = 1` iff `i + j = n − 1`.
pub fn flip_matrix(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |i, j| if i + j == n - 1 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::symbols::{catalog_coeffs, SymbolSpec};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn coeffs(label: &str, k: usize) -> FourierCoeffs {
        catalog_coeffs(&SymbolSpec::parse(label).unwrap(), k).unwrap()
    }

    #[test]
    fn toeplitz_of_one_is_identity() {
        assert_eq!(toeplitz(&coeffs("constant:1", 2), 3), ComplexMatrix::identity(3));
    }

    #[test]
    fn toeplitz_of_z_is_lower_shift() {
        let t = toeplitz(&coeffs("monomial:1", 2), 3);
        let expected = ComplexMatrix::from_real_rows(&[vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]);
        assert_eq!(t, expected);
        assert!(!t.truncated());
    }

    #[test]
    fn toeplitz_of_sawtooth_order_two() {
        let t = toeplitz(&coeffs("sawtooth", 1), 2);
        assert_eq!(t.get(0, 0), c(0.0, 0.0));
        assert!((t.get(0, 1) - c(0.0, 1.0 / PI)).norm() < 1e-15);
        assert!((t.get(1, 0) - c(0.0, -1.0 / PI)).norm() < 1e-15);
    }

    #[test]
    fn short_coefficients_flag_truncation() {
        assert!(toeplitz(&coeffs("sawtooth", 2), 4).truncated());
        assert!(!toeplitz(&coeffs("sawtooth", 3), 4).truncated());
        assert!(hankel_section(&coeffs("sawtooth", 6), 4).truncated());
        assert!(!hankel_section(&coeffs("sawtooth", 7), 4).truncated());
    }

    #[test]
    fn hankel_examples() {
        let h = hankel_section(&coeffs("monomial:1", 6), 3);
        let mut e = ComplexMatrix::zeros(3);
        e.set(0, 0, c(1.0, 0.0));
        assert_eq!(h, e);
        assert_eq!(hankel_section(&coeffs("constant:1", 6), 3), ComplexMatrix::zeros(3));
        let s = hankel_section(&coeffs("sawtooth", 6), 3);
        for i in 0..3 {
            for j in 0..3 {
                let expected = c(0.0, -1.0 / (PI * (i + j + 1) as f64));
                assert!((s.get(i, j) - expected).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn semicommutator_of_z_and_zbar() {
        let z = coeffs("monomial:1", 4);
        let zb = coeffs("monomial:-1", 4);
        let one = coeffs("constant:1", 4);
        let s = semicommutator(&z, &zb, &one, 4);
        let mut e = ComplexMatrix::zeros(4);
        e.set(0, 0, c(1.0, 0.0));
        assert_eq!(s, e);
    }

    #[test]
    fn semicommutator_of_analytic_pair_vanishes() {
        let z = coeffs("monomial:1", 4);
        let z2 = coeffs("monomial:2", 4);
        assert_eq!(semicommutator(&z, &z, &z2, 4), ComplexMatrix::zeros(4));
        let k = coeffs("constant:2", 2);
        let k2 = coeffs("constant:4", 2);
        assert_eq!(semicommutator(&k, &k, &k2, 3), ComplexMatrix::zeros(3));
    }

    #[test]
    fn flip_examples() {
        assert_eq!(flip_matrix(1), ComplexMatrix::identity(1));
        assert_eq!(flip_matrix(2), ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]));
        let j7 = flip_matrix(7);
        assert_eq!(j7.matmul(&j7), ComplexMatrix::identity(7));
    }
}
