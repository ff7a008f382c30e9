#ifndef TOEPLAB_H
#define TOEPLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum TlStatus {
  TL_STATUS_OK = 0,
  TL_STATUS_NULL_POINTER = 1,
  TL_STATUS_INVALID_ARGUMENT = 2,
  TL_STATUS_PARSE_ERROR = 3,
  TL_STATUS_NOT_HERMITIAN = 4,
  TL_STATUS_NO_CONVERGENCE = 5,
  TL_STATUS_BUFFER_TOO_SMALL = 6,
  TL_STATUS_PANIC = 7,
} TlStatus;

/**
 * Fourier coefficients `c_{−K..K}` of a symbol.
 */
typedef struct TlCoeffs TlCoeffs;

/**
 * Dense complex square matrix.
 */
typedef struct TlMatrix TlMatrix;

/**
 * Singular values, nonincreasing.
 */
typedef struct TlSpectrum TlSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty if none. Valid
 * until the next failing call on the same thread.
 */
const char *tl_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *tl_version(void);

/**
 * Coefficients `c_{−k..k}` of a catalog symbol given by its label, e.g.
 * `"sawtooth"`, `"monomial:1"`, `"trigpoly:[1@-1,1@1]"`.
 *
 * # Safety
 * `label` must be a NUL-terminated string; `out` a writable pointer.
 */
enum TlStatus tl_coeffs_from_label(const char *label, size_t k, struct TlCoeffs **out);

/**
 * Coefficients `c_{−k..k}` of `m` uniform samples `re[j] + i·im[j]` at
 * `θ_j = 2πj/m` (`im` may be null for real data). Needs `m ≥ 4k + 4`, `m` a
 * power of two.
 *
 * # Safety
 * `re` (and `im` if non-null) must point to `m` doubles.
 */
enum TlStatus tl_coeffs_from_samples(const double *re,
                                     const double *im,
                                     size_t m,
                                     size_t k,
                                     struct TlCoeffs **out);

/**
 * Largest stored index `K`; 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a live handle.
 */
size_t tl_coeffs_k_max(const struct TlCoeffs *c);

/**
 * `c_k`; zero outside `[−K, K]`.
 *
 * # Safety
 * `c` must be a live handle; `re`, `im` writable.
 */
enum TlStatus tl_coeffs_get(const struct TlCoeffs *c, int64_t k, double *re, double *im);

/**
 * Coefficients of `conj(f)`.
 *
 * # Safety
 * `c` must be a live handle; `out` writable.
 */
enum TlStatus tl_coeffs_conjugate(const struct TlCoeffs *c, struct TlCoeffs **out);

/**
 * Coefficients of the reflected symbol `f(1/z)`.
 *
 * # Safety
 * `c` must be a live handle; `out` writable.
 */
enum TlStatus tl_coeffs_reflect(const struct TlCoeffs *c, struct TlCoeffs **out);

/**
 * Coefficients of `a·b` by convolution, on `[−(K_a + K_b), K_a + K_b]`.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` writable.
 */
enum TlStatus tl_coeffs_product(const struct TlCoeffs *a,
                                const struct TlCoeffs *b,
                                struct TlCoeffs **out);

/**
 * # Safety
 * `c` must be null or a handle not yet freed.
 */
void tl_coeffs_free(struct TlCoeffs *c);

/**
 * `T_n(f)` with entries `c_{i−j}`.
 *
 * # Safety
 * `c` must be a live handle; `out` writable.
 */
enum TlStatus tl_toeplitz(const struct TlCoeffs *c, size_t n, struct TlMatrix **out);

/**
 * `H_n(f)` with entries `c_{i+j+1}`.
 *
 * # Safety
 * `c` must be a live handle; `out` writable.
 */
enum TlStatus tl_hankel(const struct TlCoeffs *c, size_t n, struct TlMatrix **out);

/**
 * `T_n(fg) − T_n(f)T_n(g)`, with `fg` the coefficients of the product.
 *
 * # Safety
 * `f`, `g`, `fg` must be live handles; `out` writable.
 */
enum TlStatus tl_semicommutator(const struct TlCoeffs *f,
                                const struct TlCoeffs *g,
                                const struct TlCoeffs *fg,
                                size_t n,
                                struct TlMatrix **out);

/**
 * The two Hankel-product terms of the semicommutator, with inner sums
 * truncated at `inner`.
 *
 * # Safety
 * `f`, `g` must be live handles; `p_out`, `q_out` writable.
 */
enum TlStatus tl_widom_terms(const struct TlCoeffs *f,
                             const struct TlCoeffs *g,
                             size_t n,
                             size_t inner,
                             struct TlMatrix **p_out,
                             struct TlMatrix **q_out);

/**
 * Frobenius residual of the Hankel-product decomposition and the tolerance
 * it must meet; `tolerance` is set to infinity when no bound is known.
 *
 * # Safety
 * `f`, `g`, `fg` must be live handles; `residual`, `tolerance` writable.
 */
enum TlStatus tl_widom_residual(const struct TlCoeffs *f,
                                const struct TlCoeffs *g,
                                const struct TlCoeffs *fg,
                                size_t n,
                                size_t inner,
                                double *residual,
                                double *tolerance);

/**
 * Order `n`; 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t tl_matrix_order(const struct TlMatrix *m);

/**
 * Entry `(i, j)`.
 *
 * # Safety
 * `m` must be a live handle; `re`, `im` writable.
 */
enum TlStatus tl_matrix_get(const struct TlMatrix *m, size_t i, size_t j, double *re, double *im);

/**
 * # Safety
 * `m` must be null or a handle not yet freed.
 */
void tl_matrix_free(struct TlMatrix *m);

/**
 * Singular values of `m`.
 *
 * # Safety
 * `m` must be a live handle; `out` writable.
 */
enum TlStatus tl_singular_values(const struct TlMatrix *m, struct TlSpectrum **out);

/**
 * Number of stored singular values; 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
size_t tl_spectrum_len(const struct TlSpectrum *s);

/**
 * Copies the singular values (descending) into `buf` of length `len`.
 *
 * # Safety
 * `s` must be a live handle; `buf` must hold `len` doubles.
 */
enum TlStatus tl_spectrum_values(const struct TlSpectrum *s, double *buf, size_t len);

/**
 * Number of singular values `≥ eps`.
 *
 * # Safety
 * `s` must be a live handle; `count` writable.
 */
enum TlStatus tl_spectrum_outlier_count(const struct TlSpectrum *s, double eps, size_t *count);

/**
 * # Safety
 * `s` must be null or a handle not yet freed.
 */
void tl_spectrum_free(struct TlSpectrum *s);

/**
 * Eigenvalues (descending) of a Hermitian matrix into `buf` of length `len ≥ n`.
 *
 * # Safety
 * `m` must be a live handle; `buf` must hold `len` doubles.
 */
enum TlStatus tl_hermitian_eigenvalues(const struct TlMatrix *m, double *buf, size_t len);

/**
 * Number of singular values of `m` that are `≥ eps`.
 *
 * # Safety
 * `m` must be a live handle; `rank` writable.
 */
enum TlStatus tl_eps_rank(const struct TlMatrix *m, double eps, size_t *rank);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TOEPLAB_H */
