//! Reference computations that share no code with the library: cyclic Jacobi
//! eigenvalues, naive matrix products, Simpson quadrature, brute-force mean
//! oscillation.
#![allow(dead_code)]

use std::f64::consts::PI;

use toeplab::{Complex64, ComplexMatrix};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Eigenvalues of a real symmetric matrix (row-major) by cyclic Jacobi
/// rotations, descending.
pub fn jacobi_symmetric(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    let total: f64 = a.iter().map(|x| x * x).sum();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i * n + j].powi(2)).sum();
        if off <= 1e-30 * total.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = cs * akp - sn * akq;
                    a[k * n + q] = sn * akp + cs * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = cs * apk - sn * aqk;
                    a[q * n + k] = sn * apk + cs * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    ev.sort_by(|x, y| y.total_cmp(x));
    ev
}

/// Eigenvalues of a Hermitian matrix through its real embedding
/// `[[A, −B], [B, A]]`, which carries every eigenvalue twice.
pub fn oracle_hermitian_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.order();
    let w = 2 * n;
    let mut s = vec![0.0; w * w];
    for i in 0..n {
        for j in 0..n {
            let v = m.get(i, j);
            s[i * w + j] = v.re;
            s[(i + n) * w + j + n] = v.re;
            s[i * w + j + n] = -v.im;
            s[(i + n) * w + j] = v.im;
        }
    }
    jacobi_symmetric(s, w).into_iter().step_by(2).collect()
}

/// Singular values from the eigenvalues `±σ` of `[[0, M], [M*, 0]]`.
pub fn oracle_singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.order();
    let big = ComplexMatrix::from_fn(2 * n, |i, j| match (i < n, j < n) {
        (true, false) => m.get(i, j - n),
        (false, true) => m.get(j, i - n).conj(),
        _ => c(0.0, 0.0),
    });
    oracle_hermitian_eigenvalues(&big).into_iter().take(n).map(|v| v.max(0.0)).collect()
}

/// Dense product by the textbook triple loop.
pub fn naive_matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let n = a.order();
    ComplexMatrix::from_fn(n, |i, j| (0..n).map(|k| a.get(i, k) * b.get(k, j)).sum())
}

/// `(c_{i−j})` from a coefficient function.
pub fn naive_toeplitz(n: usize, coef: impl Fn(i64) -> Complex64) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |i, j| coef(i as i64 - j as i64))
}

/// `(1/2π)∫_0^{2π} f(θ) e^{−ikθ} dθ` by composite Simpson on `intervals`
/// (even) subintervals, with `f` evaluated on the open interval so one-sided
/// limits are used at the endpoints.
pub fn simpson_coefficient(f: impl Fn(f64) -> f64, k: i64, intervals: usize) -> Complex64 {
    assert!(intervals % 2 == 0);
    let h = 2.0 * PI / intervals as f64;
    let mut acc = c(0.0, 0.0);
    for j in 0..=intervals {
        // nudge the endpoints inside so a jump at 0 is seen from the inside
        let theta = (j as f64 * h).clamp(1e-15, 2.0 * PI - 1e-15);
        let w = if j == 0 || j == intervals {
            1.0
        } else if j % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc += Complex64::from_polar(f(theta), -(k as f64) * theta) * w;
    }
    acc * (h / 3.0) / (2.0 * PI)
}

pub fn sawtooth(theta: f64) -> f64 {
    (PI - theta) / PI
}

/// `max` over windows of `1..=⌊δ/h⌋` consecutive grid points (wrapping) of
/// the RMS deviation from the window mean, computed directly per window.
pub fn brute_mean_oscillation(values: &[Complex64], delta: f64) -> f64 {
    let m = values.len();
    let h = 2.0 * PI / m as f64;
    let max_w = ((delta / h) * (1.0 + 1e-12)).floor() as usize;
    let mut best: f64 = 0.0;
    for w in 1..=max_w.min(m) {
        for s in 0..m {
            let window: Vec<Complex64> = (0..w).map(|t| values[(s + t) % m]).collect();
            let mean: Complex64 = window.iter().sum::<Complex64>() / w as f64;
            let var = window.iter().map(|v| (v - mean).norm_sqr()).sum::<f64>() / w as f64;
            best = best.max(var.sqrt());
        }
    }
    best
}

/// Deterministic pseudo-random reals in `[−1, 1)` (64-bit LCG), so fixtures
/// do not depend on the library's generator.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next(&mut self) -> f64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((self.0 >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    }

    pub fn complex(&mut self) -> Complex64 {
        c(self.next(), self.next())
    }

    pub fn matrix(&mut self, n: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, |_, _| self.complex())
    }

    pub fn hermitian(&mut self, n: usize) -> ComplexMatrix {
        let a = self.matrix(n);
        a.add(&a.adjoint()).scale(c(0.5, 0.0))
    }
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Trig polynomial labels of degree ≤ 8 used across the test targets, with
/// their degrees.
pub fn trig_polynomial_catalog() -> Vec<(String, usize)> {
    let mut v: Vec<(String, usize)> = vec![
        ("constant:2.5".into(), 0),
        ("monomial:1".into(), 1),
        ("monomial:-1".into(), 1),
        ("monomial:3".into(), 3),
        ("cos".into(), 1),
        ("sin".into(), 1),
        ("trigpoly:[1@-1,1@1]".into(), 1),
        ("trigpoly:[1@-8,2i@3,0.5-0.25i@0,-1@8]".into(), 8),
    ];
    let mut rng = Lcg(0x5eed);
    for d in [2usize, 4, 6, 8] {
        let terms: Vec<String> = (-(d as i64)..=d as i64).map(|k| format!("{:.6}{:+.6}i@{k}", rng.next(), rng.next())).collect();
        v.push((format!("trigpoly:[{}]", terms.join(",")), d));
    }
    v
}
