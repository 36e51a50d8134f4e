#ifndef BOHMSPEC_H
#define BOHMSPEC_H

/* Generated by cbindgen from bohmspec-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result discriminant for every fallible call.
 */
typedef enum BsStatus {
  /**
   * Success; out parameters are valid.
   */
  BsStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  BsStatus_NullPointer = 1,
  /**
   * An argument lies outside the mathematical domain of the operation.
   */
  BsStatus_Domain = 2,
  /**
   * A grid was malformed or too coarse for the requested integration.
   */
  BsStatus_Grid = 3,
  /**
   * Adaptive quadrature failed to reach the requested tolerance.
   */
  BsStatus_Quadrature = 4,
} BsStatus;

/**
 * Stationary branch with envelope `R^2 = A(1 + eps sin^2(kx))`. Opaque.
 */
typedef struct BsBranch BsBranch;

/**
 * Integrated difference dynamics of a near-degenerate pair. Opaque.
 */
typedef struct BsDifference BsDifference;

/**
 * Truncated sideband coefficient set of a branch. Opaque.
 */
typedef struct BsSpectrum BsSpectrum;

/**
 * Defining data of a pair of stationary branches: energies, currents, and
 * wave numbers, plus the physical constants they share.
 */
typedef struct BsPairSpec {
  double e1;
  double e2;
  double c1;
  double c2;
  double k1;
  double k2;
  double hbar;
  double mass;
  double potential;
} BsPairSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on the calling thread, as a
 * nul-terminated UTF-8 string. Empty until a call fails. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *bs_last_error_message(void);

/**
 * Static name of a status code, e.g. `"ok"` or `"domain"`.
 */
const char *bs_status_name(enum BsStatus status);

/**
 * Library version as a static nul-terminated string.
 */
const char *bs_version(void);

/**
 * Build a stationary branch from envelope `A`, modulation `eps` with
 * `|eps| < 0.5`, carrier `k > 0`, phase anchor `s0`, and `hbar > 0`. The
 * current is derived from the Wronskian constraint with positive sign.
 * On success writes a heap handle to `out`; release with `bs_branch_free`.
 */
enum BsStatus bs_branch_new(double a,
                            double eps,
                            double k,
                            double s0,
                            double hbar,
                            struct BsBranch **out);

/**
 * Release a branch handle. Null is ignored.
 */
void bs_branch_free(struct BsBranch *branch);

/**
 * Conserved current `C = R^2 S'` of the branch; NaN on a null handle.
 */
double bs_branch_current(const struct BsBranch *branch);

/**
 * Envelope `R^2(x)`; NaN on a null handle.
 */
double bs_branch_amplitude_sq(const struct BsBranch *branch, double x);

/**
 * First-order phase `S(x) ~ S0 + hbar k x + (hbar eps/4) sin 2kx`; NaN on a
 * null handle.
 */
double bs_branch_phase_first_order(const struct BsBranch *branch, double x);

/**
 * Exact phase `S(x)` from adaptive quadrature of `C/R^2` anchored at `x0`,
 * to absolute tolerance `tol`; written to `out`.
 */
enum BsStatus bs_branch_phase_exact(const struct BsBranch *branch,
                                    double x0,
                                    double x,
                                    double tol,
                                    double *out);

/**
 * Wavefunction `psi(x) = R e^{iS/hbar}` with the exact phase; real and
 * imaginary parts written to `out_re`/`out_im`.
 */
enum BsStatus bs_branch_wavefunction(const struct BsBranch *branch,
                                     double x,
                                     double *out_re,
                                     double *out_im);

/**
 * Principal-index sideband coefficient `(1 + eps/4 - n) J_n(eps/4)`,
 * written to `out`. Requires `|eps| < 0.5`.
 */
enum BsStatus bs_sideband_coefficient(int32_t n, double eps, double *out);

/**
 * Decompose a branch into sideband coefficients, truncating once
 * `|C_n| < tol`. On success writes a heap handle to `out`; release with
 * `bs_spectrum_free`.
 */
enum BsStatus bs_spectrum_new(const struct BsBranch *branch, double tol, struct BsSpectrum **out);

/**
 * Release a spectrum handle. Null is ignored.
 */
void bs_spectrum_free(struct BsSpectrum *spectrum);

/**
 * Truncation half-width `N`: coefficients are stored for `n` in `[-N, N]`.
 * Returns -1 on a null handle.
 */
int32_t bs_spectrum_halfwidth(const struct BsSpectrum *spectrum);

/**
 * Stored coefficient for sideband `n`; zero outside `[-N, N]`, NaN on a
 * null handle.
 */
double bs_spectrum_coefficient(const struct BsSpectrum *spectrum, int32_t n);

/**
 * Sum of squared stored coefficients; NaN on a null handle.
 */
double bs_spectrum_norm(const struct BsSpectrum *spectrum);

/**
 * Evaluate the sideband sum at `x`; real and imaginary parts written to
 * `out_re`/`out_im`.
 */
enum BsStatus bs_spectrum_reconstruct(const struct BsSpectrum *spectrum,
                                      double x,
                                      double *out_re,
                                      double *out_im);

/**
 * Integrate the difference dynamics of the pair in `spec`, linearized
 * around the mean envelope `(a, eps)`, from initial conditions
 * `(rho0, rho0_prime)` over `n` uniform samples of `[x0, x1]`. The mean
 * current follows the `(C1 + C2)/2` convention. On success writes a heap
 * handle to `out`; release with `bs_difference_free`.
 */
enum BsStatus bs_difference_solve(const struct BsPairSpec *spec,
                                  double a,
                                  double eps,
                                  double rho0,
                                  double rho0_prime,
                                  double x0,
                                  double x1,
                                  size_t n,
                                  struct BsDifference **out);

/**
 * Release a difference handle. Null is ignored.
 */
void bs_difference_free(struct BsDifference *diff);

/**
 * Number of samples in the solution; zero on a null handle.
 */
size_t bs_difference_len(const struct BsDifference *diff);

/**
 * Whether the wave-number split satisfied the near-degeneracy check at
 * construction. False on a null handle.
 */
bool bs_difference_near_degenerate(const struct BsDifference *diff);

/**
 * Whether `max |rho| <= sqrt(A)/2` held along the trajectory, i.e. the
 * linearization stayed inside its validity window. False on a null handle.
 */
bool bs_difference_amplitude_bounded(const struct BsDifference *diff);

/**
 * Grid abscissa of sample `i`; NaN on a null handle or out-of-range index.
 */
double bs_difference_x(const struct BsDifference *diff, size_t i);

/**
 * Copy the sampled fields into caller-provided buffers of
 * `bs_difference_len` elements each. Any of `rho`, `rho_prime`, `ds` may be
 * null to skip that field.
 */
enum BsStatus bs_difference_copy(const struct BsDifference *diff,
                                 double *rho,
                                 double *rho_prime,
                                 double *ds);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BOHMSPEC_H */
