use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::sections::semicommutator;
use crate::symbols::FourierCoeffs;

/// Semicommutator together with its two Hankel-product terms,
///
/// `T_n(fg) − T_n(f)T_n(g) = P_n H(f)H(g̃) P_n + J_n H(f̃)H(g) J_n`,
///
/// where `H(a)` has entries `a_{i+j+1}` and `ã(z) = a(1/z)`.
#[derive(Debug, Clone)]
pub struct WidomDecomposition {
    pub lhs: ComplexMatrix,
    pub p_term: ComplexMatrix,
    pub q_term: ComplexMatrix,
    /// `‖lhs − p_term − q_term‖_F`.
    pub residual_fro: f64,
    /// Both symbols band-limited with exact coefficients and `inner` covering
    /// their degree: the identity must hold to rounding.
    pub exact: bool,
    /// Inner truncation length used for the Hankel products.
    pub inner: usize,
    /// Upper bound on the Frobenius residual caused by truncating the inner
    /// sums, the coefficient ranges, and the product coefficients. `None`
    /// when some ingredient has no known tail or bias.
    pub truncation_bound: Option<f64>,
}

impl WidomDecomposition {
    /// Tolerance appropriate for this decomposition: `1e−10·(1 + ‖lhs‖_F)`,
    /// plus the truncation bound for inexact inputs.
    pub fn tolerance(&self) -> Option<f64> {
        let rounding = 1e-10 * (1.0 + self.lhs.frobenius_norm());
        if self.exact {
            Some(rounding)
        } else {
            self.truncation_bound.map(|b| b + rounding)
        }
    }
}

/// `Σ_{k<inner} a(i, k)·b(k, j)` as an `n × n` matrix.
fn hankel_product(n: usize, inner: usize, a: impl Fn(usize, usize) -> Complex64, b: impl Fn(usize, usize) -> Complex64) -> ComplexMatrix {
    let zero = Complex64::new(0.0, 0.0);
    let rows_b: Vec<Vec<Complex64>> = (0..inner).map(|k| (0..n).map(|j| b(k, j)).collect()).collect();
    let mut out = vec![zero; n * n];
    for i in 0..n {
        let out_row = &mut out[i * n..(i + 1) * n];
        for (k, row_b) in rows_b.iter().enumerate() {
            let av = a(i, k);
            if av == zero {
                continue;
            }
            for (o, &bv) in out_row.iter_mut().zip(row_b) {
                *o += av * bv;
            }
        }
    }
    ComplexMatrix::from_fn(n, |i, j| out[i * n + j])
}

/// The two terms of the Hankel-product decomposition:
///
/// * `p_{ij} = Σ_{k<inner} f_{i+k+1} g_{−(k+j+1)}`,
/// * `q = J_n M J_n` with `M_{ij} = Σ_{k<inner} f_{−(i+k+1)} g_{k+j+1}`.
///
/// Coefficients outside `[−K, K]` count as zero; the terms are flagged
/// truncated when that cuts off a non-band-limited symbol.
pub fn widom_rhs(f: &FourierCoeffs, g: &FourierCoeffs, n: usize, inner: usize) -> (ComplexMatrix, ComplexMatrix) {
    assert!(inner >= 1, "inner truncation must be at least 1");
    // every term with k ≥ min(K_f, K_g) involves an index beyond K
    let cap = inner.min(f.k_max()).min(g.k_max());
    let reach = n + inner - 1;
    let truncated = (!f.is_band_limited() && f.k_max() < reach) || (!g.is_band_limited() && g.k_max() < reach);

    let p = hankel_product(n, cap, |i, k| f.get((i + k + 1) as i64), |k, j| g.get(-((k + j + 1) as i64)));
    let m = hankel_product(n, cap, |i, k| f.get(-((i + k + 1) as i64)), |k, j| g.get((k + j + 1) as i64));
    (p.with_truncated(truncated), m.flip_conjugate().with_truncated(truncated))
}

/// Builds both sides of the decomposition and measures the residual.
pub fn widom_check(f: &FourierCoeffs, g: &FourierCoeffs, fg: &FourierCoeffs, n: usize, inner: usize) -> WidomDecomposition {
    let lhs = semicommutator(f, g, fg, n);
    let (p_term, q_term) = widom_rhs(f, g, n, inner);
    let residual_fro = lhs.sub(&p_term).sub(&q_term).frobenius_norm();

    let exact = f.is_band_limited()
        && g.is_band_limited()
        && fg.is_band_limited()
        && f.exact()
        && g.exact()
        && fg.exact()
        && inner >= f.degree().max(g.degree());

    WidomDecomposition { truncation_bound: truncation_bound(f, g, fg, n, inner), lhs, p_term, q_term, residual_fro, exact, inner }
}

/// Each dropped term `f_a g_b` of either Hankel product has both `|a|, |b| > m`
/// with `m = min(inner, K_f − n + 1, K_g − n + 1)`, so every entry error is at
/// most `τ_f(m)·τ_g(m)` by Cauchy–Schwarz (`τ` the ℓ² coefficient tail). Two
/// terms of `n²` entries give `2n·τ_f·τ_g` in Frobenius norm, and the product
/// coefficient bias adds `n·bias(fg)`.
fn truncation_bound(f: &FourierCoeffs, g: &FourierCoeffs, fg: &FourierCoeffs, n: usize, inner: usize) -> Option<f64> {
    if f.bias()? != 0.0 || g.bias()? != 0.0 {
        return None;
    }
    let covers = |c: &FourierCoeffs| c.is_band_limited() || c.k_max() + 1 >= n;
    if !covers(f) || !covers(g) || !covers(fg) {
        return None;
    }
    let reach = |c: &FourierCoeffs| if c.is_band_limited() { usize::MAX } else { c.k_max() + 1 - n };
    let m = inner.min(reach(f)).min(reach(g));
    let tf = f.l2_tail_beyond(m)?;
    let tg = g.l2_tail_beyond(m)?;
    let nf = n as f64;
    Some(2.0 * nf * tf * tg + nf * fg.bias()?)
}
