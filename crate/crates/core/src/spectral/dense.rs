//! Dense reductions to real tridiagonal / bidiagonal form and an implicit QL
//! eigenvalue iteration for symmetric tridiagonal matrices.
//!
//! Unitary diagonal scalings make any Hermitian tridiagonal (or complex
//! bidiagonal) matrix equivalent to one with nonnegative off-diagonals, so the
//! reductions only keep moduli and never track Householder phases.

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const MAX_SWEEPS: usize = 60;

/// Householder reflector `H = I − τ v v*` with `H x = α e₁`. Overwrites `x`
/// with `v` and returns `(τ, α)`; `τ = 0` means `x` was already zero.
fn householder(x: &mut [Complex64]) -> (f64, Complex64) {
    // work on x / max|x_i| so squared norms neither underflow nor overflow
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.re.abs()).max(v.im.abs()));
    if scale == 0.0 {
        return (0.0, ZERO);
    }
    for v in x.iter_mut() {
        *v /= scale;
    }
    let norm = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let x0 = x[0];
    let phase = if x0 == ZERO { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
    x[0] += phase * norm;
    let vnorm2 = x.iter().map(|v| v.norm_sqr()).sum::<f64>();
    (2.0 / vnorm2, -phase * (norm * scale))
}

/// Reduces a Hermitian matrix (row-major, full storage, consumed) to a real
/// symmetric tridiagonal `(diag, off)` with `off.len() = n − 1`.
pub(crate) fn tridiagonalize_hermitian(mut a: Vec<Complex64>, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n.saturating_sub(1)];
    let mut v = vec![ZERO; n];
    let mut p = vec![ZERO; n];

    for k in 0..n.saturating_sub(1) {
        diag[k] = a[k * n + k].re;
        let m = n - k - 1;
        let lo = k + 1;
        let v = &mut v[..m];
        for (t, vi) in v.iter_mut().enumerate() {
            *vi = a[(lo + t) * n + k];
        }
        if m == 1 {
            off[k] = v[0].norm();
            continue;
        }
        let (tau, alpha) = householder(v);
        off[k] = alpha.norm();
        if tau == 0.0 {
            continue;
        }
        // p = τ S v over the trailing block S = a[lo.., lo..]
        let p = &mut p[..m];
        for (r, pr) in p.iter_mut().enumerate() {
            let row = &a[(lo + r) * n + lo..(lo + r) * n + n];
            *pr = row.iter().zip(v.iter()).map(|(s, x)| s * x).sum::<Complex64>() * tau;
        }
        // w = p − (τ/2)(v* p) v
        let vp: Complex64 = v.iter().zip(p.iter()).map(|(x, y)| x.conj() * y).sum();
        let kcoef = vp * (0.5 * tau);
        for (pr, vr) in p.iter_mut().zip(v.iter()) {
            *pr -= kcoef * vr;
        }
        // S ← S − v w* − w v*
        for r in 0..m {
            let (vr, wr) = (v[r], p[r]);
            let row = &mut a[(lo + r) * n + lo..(lo + r) * n + n];
            for ((s, vc), wc) in row.iter_mut().zip(v.iter()).zip(p.iter()) {
                *s -= vr * wc.conj() + wr * vc.conj();
            }
        }
    }
    if n > 0 {
        diag[n - 1] = a[(n - 1) * n + n - 1].re;
    }
    (diag, off)
}

/// Reduces a general square matrix (row-major, consumed) to a real upper
/// bidiagonal `(d, e)` with the same singular values.
pub(crate) fn bidiagonalize(mut a: Vec<Complex64>, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n.saturating_sub(1)];
    let mut v = vec![ZERO; n];
    let mut w = vec![ZERO; n];

    for k in 0..n {
        // left reflector zeroes a[k+1.., k]
        let m = n - k;
        let v = &mut v[..m];
        for (t, vi) in v.iter_mut().enumerate() {
            *vi = a[(k + t) * n + k];
        }
        let (tau, alpha) = householder(v);
        d[k] = alpha.norm();
        if tau != 0.0 && k + 1 < n {
            let cols = k + 1..n;
            let w = &mut w[..n - k - 1];
            w.fill(ZERO);
            for (t, vt) in v.iter().enumerate() {
                let vc = vt.conj();
                let row = &a[(k + t) * n + cols.start..(k + t) * n + n];
                for (wj, aij) in w.iter_mut().zip(row) {
                    *wj += vc * aij;
                }
            }
            for (t, vt) in v.iter().enumerate() {
                let s = vt * tau;
                let row = &mut a[(k + t) * n + cols.start..(k + t) * n + n];
                for (aij, wj) in row.iter_mut().zip(w.iter()) {
                    *aij -= s * wj;
                }
            }
        }
        if k + 1 >= n {
            break;
        }
        // right reflector zeroes a[k, k+2..]
        let m = n - k - 1;
        let u = &mut v[..m];
        for (t, ui) in u.iter_mut().enumerate() {
            *ui = a[k * n + k + 1 + t].conj();
        }
        let (tau, beta) = householder(u);
        e[k] = beta.norm();
        if tau != 0.0 {
            for r in k + 1..n {
                let row = &mut a[r * n + k + 1..r * n + n];
                let s: Complex64 = row.iter().zip(u.iter()).map(|(x, y)| x * y).sum::<Complex64>() * tau;
                for (x, uj) in row.iter_mut().zip(u.iter()) {
                    *x -= s * uj.conj();
                }
            }
        }
    }
    (d, e)
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (`off.len() + 1 == diag.len()`), by implicit QL with
/// Wilkinson shifts. Unsorted.
pub(crate) fn tridiagonal_eigenvalues(mut d: Vec<f64>, off: &[f64]) -> Result<Vec<f64>> {
    let n = d.len();
    if n == 0 {
        return Ok(d);
    }
    if d.iter().chain(off).any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("tridiagonal matrix has non-finite entries".into()));
    }
    let mut e = off.to_vec();
    e.push(0.0);
    let anorm = d.iter().chain(off).fold(0.0f64, |m, x| m.max(x.abs()));
    let small = f64::EPSILON * anorm;

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= small {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if m == l + 1 {
                // isolated 2×2 block: closed form
                let (a, b, c) = (d[l], e[l], d[l + 1]);
                let mean = 0.5 * (a + c);
                let rt = (0.5 * (a - c)).hypot(b);
                d[l] = mean + rt;
                d[l + 1] = mean - rt;
                e[l] = 0.0;
                continue;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(Error::NoConvergence { index: l, iterations: MAX_SWEEPS });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(d)
}

/// Singular values of the upper bidiagonal `(d, e)` as the nonnegative half of
/// the spectrum of its Golub–Kahan tridiagonal form (zero diagonal,
/// off-diagonal `d₀, e₀, d₁, e₁, …`). Descending.
pub(crate) fn bidiagonal_singular_values(d: &[f64], e: &[f64]) -> Result<Vec<f64>> {
    let n = d.len();
    let mut off = Vec::with_capacity(2 * n);
    for k in 0..n {
        off.push(d[k]);
        if k + 1 < n {
            off.push(e[k]);
        }
    }
    let mut ev = tridiagonal_eigenvalues(vec![0.0; 2 * n], &off)?;
    ev.sort_by(|a, b| b.total_cmp(a));
    ev.truncate(n);
    Ok(ev.into_iter().map(|x| x.max(0.0)).collect())
}
