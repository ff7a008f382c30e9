//! C ABI over the `toeplab` core.
//!
//! Objects are opaque heap handles owned by the caller and released with the
//! matching `*_free`. Every fallible call returns a [`TlStatus`]; on failure a
//! description is available from [`tl_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use toeplab::symbols::{sample_coeffs, symbol_coeffs, SampledGrid};
use toeplab::{
    conjugate_coeffs, hankel_section, hermitian_eigenvalues, product_coeffs, reflect_coeffs, semicommutator, singular_values, toeplitz,
    widom_check, widom_rhs, Complex64, ComplexMatrix, Error, FourierCoeffs, SingularSpectrum, SymbolSpec,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    NotHermitian = 4,
    NoConvergence = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Fourier coefficients `c_{−K..K}` of a symbol.
pub struct TlCoeffs(FourierCoeffs);

/// Dense complex square matrix.
pub struct TlMatrix(ComplexMatrix);

/// Singular values, nonincreasing.
pub struct TlSpectrum(SingularSpectrum);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> TlStatus {
    match e {
        Error::SymbolLabel { .. } => TlStatus::ParseError,
        Error::NotHermitian { .. } => TlStatus::NotHermitian,
        Error::NoConvergence { .. } => TlStatus::NoConvergence,
        _ => TlStatus::InvalidArgument,
    }
}

struct Fail(TlStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(TlStatus::NullPointer, format!("{what} is null"))
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> TlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => TlStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            TlStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// Message of the last failed call on this thread; empty if none. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Coefficients `c_{−k..k}` of a catalog symbol given by its label, e.g.
/// `"sawtooth"`, `"monomial:1"`, `"trigpoly:[1@-1,1@1]"`.
///
/// # Safety
/// `label` must be a NUL-terminated string; `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_coeffs_from_label(label: *const c_char, k: usize, out: *mut *mut TlCoeffs) -> TlStatus {
    guard(|| {
        if label.is_null() {
            return Err(null("label"));
        }
        let label = CStr::from_ptr(label).to_str().map_err(|_| Fail(TlStatus::ParseError, "label is not UTF-8".into()))?;
        let spec = SymbolSpec::parse(label)?;
        store(out, TlCoeffs(symbol_coeffs(&spec, k)?))
    })
}

/// Coefficients `c_{−k..k}` of `m` uniform samples `re[j] + i·im[j]` at
/// `θ_j = 2πj/m` (`im` may be null for real data). Needs `m ≥ 4k + 4`, `m` a
/// power of two.
///
/// # Safety
/// `re` (and `im` if non-null) must point to `m` doubles.
#[no_mangle]
pub unsafe extern "C" fn tl_coeffs_from_samples(re: *const f64, im: *const f64, m: usize, k: usize, out: *mut *mut TlCoeffs) -> TlStatus {
    guard(|| {
        if re.is_null() {
            return Err(null("re"));
        }
        let re = std::slice::from_raw_parts(re, m);
        let values: Vec<Complex64> = if im.is_null() {
            re.iter().map(|&x| Complex64::new(x, 0.0)).collect()
        } else {
            let im = std::slice::from_raw_parts(im, m);
            re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)).collect()
        };
        store(out, TlCoeffs(sample_coeffs(&SampledGrid::new(values)?, k)?))
    })
}

/// Largest stored index `K`; 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tl_coeffs_k_max(c: *const TlCoeffs) -> usize {
    c.as_ref().map_or(0, |c| c.0.k_max())
}

/// `c_k`; zero outside `[−K, K]`.
///
/// # Safety
/// `c` must be a live handle; `re`, `im` writable.
#[no_mangle]
pub unsafe extern "C" fn tl_coeffs_get(c: *const TlCoeffs, k: i64, re: *mut f64, im: *mut f64) -> TlStatus {
    guard(|| {
        let v = deref(c, "coeffs")?.0.get(k);
        if re.is_null() || im.is_null() {
            return Err(null("output pointer"));
        }
        *re = v.re;
        *im = v.im;
        Ok(())
    })
}

/// Coefficients of `conj(f)`.
///
/// # Safety
/// `c` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tl_coeffs_conjugate(c: *const TlCoeffs, out: *mut *mut TlCoeffs) -> TlStatus {
    guard(|| store(out, TlCoeffs(conjugate_coeffs(&deref(c, "coeffs")?.0))))
}

/// Coefficients of the reflected symbol `f(1/z)`.
///
/// # Safety
/// `c` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tl_coeffs_reflect(c: *const TlCoeffs, out: *mut *mut TlCoeffs) -> TlStatus {
    guard(|| store(out, TlCoeffs(reflect_coeffs(&deref(c, "coeffs")?.0))))
}

/// Coefficients of `a·b` by convolution, on `[−(K_a + K_b), K_a + K_b]`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tl_coeffs_product(a: *const TlCoeffs, b: *const TlCoeffs, out: *mut *mut TlCoeffs) -> TlStatus {
    guard(|| store(out, TlCoeffs(product_coeffs(&deref(a, "a")?.0, &deref(b, "b")?.0))))
}

/// # Safety
/// `c` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tl_coeffs_free(c: *mut TlCoeffs) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// `T_n(f)` with entries `c_{i−j}`.
///
/// # Safety
/// `c` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tl_toeplitz(c: *const TlCoeffs, n: usize, out: *mut *mut TlMatrix) -> TlStatus {
    guard(|| store(out, TlMatrix(toeplitz(&deref(c, "coeffs")?.0, n))))
}

/// `H_n(f)` with entries `c_{i+j+1}`.
///
/// # Safety
/// `c` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tl_hankel(c: *const TlCoeffs, n: usize, out: *mut *mut TlMatrix) -> TlStatus {
    guard(|| store(out, TlMatrix(hankel_section(&deref(c, "coeffs")?.0, n))))
}

/// `T_n(fg) − T_n(f)T_n(g)`, with `fg` the coefficients of the product.
///
/// # Safety
/// `f`, `g`, `fg` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tl_semicommutator(
    f: *const TlCoeffs,
    g: *const TlCoeffs,
    fg: *const TlCoeffs,
    n: usize,
    out: *mut *mut TlMatrix,
) -> TlStatus {
    guard(|| store(out, TlMatrix(semicommutator(&deref(f, "f")?.0, &deref(g, "g")?.0, &deref(fg, "fg")?.0, n))))
}

/// The two Hankel-product terms of the semicommutator, with inner sums
/// truncated at `inner`.
///
/// # Safety
/// `f`, `g` must be live handles; `p_out`, `q_out` writable.
#[no_mangle]
pub unsafe extern "C" fn tl_widom_terms(
    f: *const TlCoeffs,
    g: *const TlCoeffs,
    n: usize,
    inner: usize,
    p_out: *mut *mut TlMatrix,
    q_out: *mut *mut TlMatrix,
) -> TlStatus {
    guard(|| {
        if inner == 0 {
            return Err(Fail(TlStatus::InvalidArgument, "inner truncation must be positive".into()));
        }
        if p_out.is_null() || q_out.is_null() {
            return Err(null("output pointer"));
        }
        let (p, q) = widom_rhs(&deref(f, "f")?.0, &deref(g, "g")?.0, n, inner);
        store(p_out, TlMatrix(p))?;
        store(q_out, TlMatrix(q))
    })
}

/// Frobenius residual of the Hankel-product decomposition and the tolerance
/// it must meet; `tolerance` is set to infinity when no bound is known.
///
/// # Safety
/// `f`, `g`, `fg` must be live handles; `residual`, `tolerance` writable.
#[no_mangle]
pub unsafe extern "C" fn tl_widom_residual(
    f: *const TlCoeffs,
    g: *const TlCoeffs,
    fg: *const TlCoeffs,
    n: usize,
    inner: usize,
    residual: *mut f64,
    tolerance: *mut f64,
) -> TlStatus {
    guard(|| {
        if inner == 0 {
            return Err(Fail(TlStatus::InvalidArgument, "inner truncation must be positive".into()));
        }
        if residual.is_null() || tolerance.is_null() {
            return Err(null("output pointer"));
        }
        let w = widom_check(&deref(f, "f")?.0, &deref(g, "g")?.0, &deref(fg, "fg")?.0, n, inner);
        *residual = w.residual_fro;
        *tolerance = w.tolerance().unwrap_or(f64::INFINITY);
        Ok(())
    })
}

/// Order `n`; 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tl_matrix_order(m: *const TlMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.order())
}

/// Entry `(i, j)`.
///
/// # Safety
/// `m` must be a live handle; `re`, `im` writable.
#[no_mangle]
pub unsafe extern "C" fn tl_matrix_get(m: *const TlMatrix, i: usize, j: usize, re: *mut f64, im: *mut f64) -> TlStatus {
    guard(|| {
        let m = &deref(m, "matrix")?.0;
        if i >= m.order() || j >= m.order() {
            return Err(Fail(TlStatus::InvalidArgument, format!("index ({i}, {j}) out of range for order {}", m.order())));
        }
        if re.is_null() || im.is_null() {
            return Err(null("output pointer"));
        }
        let v = m.get(i, j);
        *re = v.re;
        *im = v.im;
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tl_matrix_free(m: *mut TlMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Singular values of `m`.
///
/// # Safety
/// `m` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tl_singular_values(m: *const TlMatrix, out: *mut *mut TlSpectrum) -> TlStatus {
    guard(|| store(out, TlSpectrum(singular_values(&deref(m, "matrix")?.0)?)))
}

/// Number of stored singular values; 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tl_spectrum_len(s: *const TlSpectrum) -> usize {
    s.as_ref().map_or(0, |s| s.0.values().len())
}

/// Copies the singular values (descending) into `buf` of length `len`.
///
/// # Safety
/// `s` must be a live handle; `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn tl_spectrum_values(s: *const TlSpectrum, buf: *mut f64, len: usize) -> TlStatus {
    guard(|| {
        let v = deref(s, "spectrum")?.0.values();
        copy_out(v, buf, len)
    })
}

/// Number of singular values `≥ eps`.
///
/// # Safety
/// `s` must be a live handle; `count` writable.
#[no_mangle]
pub unsafe extern "C" fn tl_spectrum_outlier_count(s: *const TlSpectrum, eps: f64, count: *mut usize) -> TlStatus {
    guard(|| {
        let c = deref(s, "spectrum")?.0.outlier_count(eps)?;
        if count.is_null() {
            return Err(null("count"));
        }
        *count = c;
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tl_spectrum_free(s: *mut TlSpectrum) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Eigenvalues (descending) of a Hermitian matrix into `buf` of length `len ≥ n`.
///
/// # Safety
/// `m` must be a live handle; `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn tl_hermitian_eigenvalues(m: *const TlMatrix, buf: *mut f64, len: usize) -> TlStatus {
    guard(|| {
        let ev = hermitian_eigenvalues(&deref(m, "matrix")?.0)?;
        copy_out(&ev, buf, len)
    })
}

/// Number of singular values of `m` that are `≥ eps`.
///
/// # Safety
/// `m` must be a live handle; `rank` writable.
#[no_mangle]
pub unsafe extern "C" fn tl_eps_rank(m: *const TlMatrix, eps: f64, rank: *mut usize) -> TlStatus {
    guard(|| {
        let r = toeplab::eps_rank(&deref(m, "matrix")?.0, eps)?;
        if rank.is_null() {
            return Err(null("rank"));
        }
        *rank = r;
        Ok(())
    })
}

unsafe fn copy_out(values: &[f64], buf: *mut f64, len: usize) -> Result<(), Fail> {
    if buf.is_null() {
        return Err(null("buffer"));
    }
    if len < values.len() {
        return Err(Fail(TlStatus::BufferTooSmall, format!("buffer holds {len}, need {}", values.len())));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    Ok(())
}
