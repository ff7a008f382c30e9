use num_complex::Complex64;

use crate::error::{Error, Result};

/// Finitely supported two-sided Fourier coefficient sequence `c_k`, `|k| ≤ K`.
///
/// Position `j` of [`values`](Self::values) holds `c_{j−K}`. Coefficients follow
/// the convention `c_k = (1/2π) ∫ f(e^{iθ}) e^{−ikθ} dθ`.
///
/// Besides the values, a sequence carries provenance:
///
/// * `exact`: the values are closed-form, not quadrature estimates;
/// * `l2_tail`: an upper bound on `(Σ_{|k|>K} |c_k|²)^{1/2}` for the underlying
///   symbol, `Some(0.0)` when nothing was cut off, `None` when unknown;
/// * `bias`: an entrywise bound on the error of the stored values, `Some(0.0)`
///   for closed forms, `None` when unknown.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoeffs {
    k_max: usize,
    values: Vec<Complex64>,
    exact: bool,
    l2_tail: Option<f64>,
    bias: Option<f64>,
}

impl FourierCoeffs {
    /// Wraps `values` (length `2K+1`, centre at index `K`).
    pub fn new(values: Vec<Complex64>, exact: bool) -> Result<Self> {
        if values.len() % 2 == 0 {
            return Err(Error::InvalidCoefficients(format!("length must be odd (2K+1), got {}", values.len())));
        }
        if let Some(pos) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidCoefficients(format!("non-finite coefficient at index {}", pos as i64 - (values.len() / 2) as i64)));
        }
        Ok(Self { k_max: values.len() / 2, values, exact, l2_tail: None, bias: if exact { Some(0.0) } else { None } })
    }

    /// Builds coefficients from a closed form `k ↦ c_k`.
    pub fn from_fn(k_max: usize, exact: bool, f: impl Fn(i64) -> Complex64) -> Result<Self> {
        let k = k_max as i64;
        Self::new((-k..=k).map(f).collect(), exact)
    }

    /// All-zero sequence of half-width `k_max`.
    pub fn zeros(k_max: usize) -> Self {
        Self { k_max, values: vec![Complex64::new(0.0, 0.0); 2 * k_max + 1], exact: true, l2_tail: Some(0.0), bias: Some(0.0) }
    }

    pub fn with_l2_tail(mut self, tail: Option<f64>) -> Self {
        self.l2_tail = tail;
        self
    }

    pub fn with_bias(mut self, bias: Option<f64>) -> Self {
        self.bias = bias;
        self
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn exact(&self) -> bool {
        self.exact
    }

    pub fn l2_tail(&self) -> Option<f64> {
        self.l2_tail
    }

    pub fn bias(&self) -> Option<f64> {
        self.bias
    }

    /// `c_k`, zero for `|k| > K`.
    #[inline]
    pub fn get(&self, k: i64) -> Complex64 {
        let idx = k + self.k_max as i64;
        if idx < 0 || idx as usize >= self.values.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.values[idx as usize]
        }
    }

    /// `(k, c_k)` pairs in ascending `k`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let k = self.k_max as i64;
        self.values.iter().enumerate().map(move |(j, &v)| (j as i64 - k, v))
    }

    /// True when the underlying symbol has no coefficients beyond `K`.
    pub fn is_band_limited(&self) -> bool {
        self.l2_tail == Some(0.0)
    }

    /// Largest `|k|` with `c_k ≠ 0` (0 for the zero sequence).
    pub fn degree(&self) -> usize {
        self.iter().filter(|(_, v)| *v != Complex64::new(0.0, 0.0)).map(|(k, _)| k.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Upper bound on `(Σ_{|k|>m} |c_k|²)^{1/2}` for the underlying symbol,
    /// combining stored values above `m` with the recorded tail beyond `K`.
    pub fn l2_tail_beyond(&self, m: usize) -> Option<f64> {
        let tail = self.l2_tail?;
        let stored: f64 = self.iter().filter(|(k, _)| k.unsigned_abs() as usize > m).map(|(_, v)| v.norm_sqr()).sum();
        Some((stored + tail * tail).sqrt())
    }

    /// ℓ² norm of the stored values.
    pub fn l2_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Checks `c_{−k} = conj(c_k)` within `tol`, the coefficient signature of
    /// a real-valued symbol.
    pub fn is_hermitian_symmetric(&self, tol: f64) -> bool {
        let k = self.k_max as i64;
        (0..=k).all(|j| (self.get(-j) - self.get(j).conj()).norm() <= tol)
    }

    /// Zero-pads (or truncates) to half-width `k_max`. Truncation updates the
    /// recorded tail bound.
    pub fn resized(&self, k_max: usize) -> Self {
        let k = k_max as i64;
        let values: Vec<_> = (-k..=k).map(|j| self.get(j)).collect();
        let l2_tail = if k_max >= self.k_max { self.l2_tail } else { self.l2_tail_beyond(k_max) };
        Self { k_max, values, exact: self.exact, l2_tail, bias: self.bias }
    }
}

/// Coefficients of `conj(f)`: `(f̄)_k = conj(f_{−k})`.
pub fn conjugate_coeffs(c: &FourierCoeffs) -> FourierCoeffs {
    FourierCoeffs { values: c.values.iter().rev().map(|v| v.conj()).collect(), ..c.clone() }
}

/// Coefficients of `f̃(z) = f(z^{−1})`: `(f̃)_k = f_{−k}`.
pub fn reflect_coeffs(c: &FourierCoeffs) -> FourierCoeffs {
    FourierCoeffs { values: c.values.iter().rev().copied().collect(), ..c.clone() }
}

/// Coefficients of the pointwise product by discrete convolution
/// `(ab)_k = Σ_j a_j b_{k−j}`, with output half-width `a.K + b.K`.
///
/// The result is exact only when both inputs are exact and band-limited.
/// Otherwise the entrywise error caused by truncating the factors is bounded
/// by Cauchy–Schwarz, `‖a − a_K‖₂‖b‖₂ + ‖a_K‖₂‖b − b_K‖₂`, and recorded as the
/// bias when both tails are known.
pub fn product_coeffs(a: &FourierCoeffs, b: &FourierCoeffs) -> FourierCoeffs {
    let k_max = a.k_max + b.k_max;
    let mut values = vec![Complex64::new(0.0, 0.0); 2 * k_max + 1];
    // index(a) + index(b) = index(out) because both are offset by their K
    for (i, &av) in a.values.iter().enumerate() {
        if av == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (j, &bv) in b.values.iter().enumerate() {
            values[i + j] += av * bv;
        }
    }

    let band_limited = a.is_band_limited() && b.is_band_limited();
    let exact = a.exact && b.exact && band_limited;
    let truncation = match (a.l2_tail, b.l2_tail) {
        (Some(ta), Some(tb)) => {
            let (na, nb) = (a.l2_norm(), b.l2_norm());
            Some(ta * (nb + tb) + na * tb)
        }
        _ => None,
    };
    let bias = match (a.bias, b.bias, truncation) {
        (Some(ba), Some(bb), Some(t)) if ba == 0.0 && bb == 0.0 => Some(t),
        _ => None,
    };
    FourierCoeffs { k_max, values, exact, l2_tail: if band_limited { Some(0.0) } else { None }, bias }
}
