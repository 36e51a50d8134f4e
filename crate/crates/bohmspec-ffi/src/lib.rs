//! C ABI over the `bohmspec` library.
//!
//! The binding follows the usual opaque-handle discipline:
//!
//! - Handles (`BsBranch`, `BsSpectrum`, `BsDifference`) are created by
//!   `bs_*_new`/`bs_*_solve`, owned by the caller, and released with the
//!   matching `bs_*_free`. Freeing null is a no-op; everything else treats
//!   null handles as an error (`BS_STATUS_NULL_POINTER` or NaN for plain
//!   value accessors).
//! - Fallible calls return a [`BsStatus`] and write results through out
//!   pointers only on `BS_STATUS_OK`. The most recent failure message on the
//!   current thread is available via [`bs_last_error_message`].
//! - Handles are immutable after construction, so sharing them across
//!   threads for read-only calls is sound; creation and destruction must not
//!   race on the same handle.
//!
//! The C header is generated into `include/bohmspec.h` at build time.

#![deny(improper_ctypes_definitions)]
// Safety contracts are part of each function's C-facing doc comment (they
// land in the generated header): pointers must be valid or null, and null
// is always handled. A separate Rust-only `# Safety` section would
// duplicate that text.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::CString;
use std::os::raw::c_char;

use bohmspec::ermakov::{weakmod_amplitude_squared, WeakModBranch};
use bohmspec::moddiff::{decompose_pair, integrate_difference, BranchPair, DifferenceSolution};
use bohmspec::phase::{phase_exact, phase_first_order, wavefunction_direct};
use bohmspec::spectral::{coefficient, decompose, norm_sum, reconstruct, SpectralDecomposition};
use bohmspec::{build_grid, Error, PhysicalConstants};

/// Result discriminant for every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BsStatus {
    /// Success; out parameters are valid.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument lies outside the mathematical domain of the operation.
    Domain = 2,
    /// A grid was malformed or too coarse for the requested integration.
    Grid = 3,
    /// Adaptive quadrature failed to reach the requested tolerance.
    Quadrature = 4,
}

/// Stationary branch with envelope `R^2 = A(1 + eps sin^2(kx))`. Opaque.
pub struct BsBranch(WeakModBranch);

/// Truncated sideband coefficient set of a branch. Opaque.
pub struct BsSpectrum(SpectralDecomposition);

/// Integrated difference dynamics of a near-degenerate pair. Opaque.
pub struct BsDifference {
    solution: DifferenceSolution,
    near_degenerate: bool,
}

/// Defining data of a pair of stationary branches: energies, currents, and
/// wave numbers, plus the physical constants they share.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct BsPairSpec {
    pub e1: f64,
    pub e2: f64,
    pub c1: f64,
    pub c2: f64,
    pub k1: f64,
    pub k2: f64,
    pub hbar: f64,
    pub mass: f64,
    pub potential: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(err: &Error) -> BsStatus {
    let msg = CString::new(err.to_string()).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = msg);
    match err {
        Error::Domain(_) => BsStatus::Domain,
        Error::Grid(_) => BsStatus::Grid,
        Error::Quadrature { .. } => BsStatus::Quadrature,
        // Config and I/O errors belong to the CLI layer and cannot arise
        // from the handle-based surface; classify defensively.
        Error::Config { .. } | Error::Io(_) => BsStatus::Domain,
    }
}

/// Message of the most recent failure on the calling thread, as a
/// nul-terminated UTF-8 string. Empty until a call fails. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Static name of a status code, e.g. `"ok"` or `"domain"`.
#[no_mangle]
pub extern "C" fn bs_status_name(status: BsStatus) -> *const c_char {
    let name: &'static str = match status {
        BsStatus::Ok => "ok\0",
        BsStatus::NullPointer => "null pointer\0",
        BsStatus::Domain => "domain\0",
        BsStatus::Grid => "grid\0",
        BsStatus::Quadrature => "quadrature\0",
    };
    name.as_ptr() as *const c_char
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn bs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Build a stationary branch from envelope `A`, modulation `eps` with
/// `|eps| < 0.5`, carrier `k > 0`, phase anchor `s0`, and `hbar > 0`. The
/// current is derived from the Wronskian constraint with positive sign.
/// On success writes a heap handle to `out`; release with `bs_branch_free`.
#[no_mangle]
pub unsafe extern "C" fn bs_branch_new(
    a: f64,
    eps: f64,
    k: f64,
    s0: f64,
    hbar: f64,
    out: *mut *mut BsBranch,
) -> BsStatus {
    if out.is_null() {
        return BsStatus::NullPointer;
    }
    match WeakModBranch::with_derived_current(a, eps, k, s0, hbar, false) {
        Ok(branch) => {
            *out = Box::into_raw(Box::new(BsBranch(branch)));
            BsStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Release a branch handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bs_branch_free(branch: *mut BsBranch) {
    if !branch.is_null() {
        drop(Box::from_raw(branch));
    }
}

/// Conserved current `C = R^2 S'` of the branch; NaN on a null handle.
#[no_mangle]
pub unsafe extern "C" fn bs_branch_current(branch: *const BsBranch) -> f64 {
    match branch.as_ref() {
        Some(b) => b.0.c,
        None => f64::NAN,
    }
}

/// Envelope `R^2(x)`; NaN on a null handle.
#[no_mangle]
pub unsafe extern "C" fn bs_branch_amplitude_sq(branch: *const BsBranch, x: f64) -> f64 {
    match branch.as_ref() {
        Some(b) => weakmod_amplitude_squared(&b.0, x),
        None => f64::NAN,
    }
}

/// First-order phase `S(x) ~ S0 + hbar k x + (hbar eps/4) sin 2kx`; NaN on a
/// null handle.
#[no_mangle]
pub unsafe extern "C" fn bs_branch_phase_first_order(branch: *const BsBranch, x: f64) -> f64 {
    match branch.as_ref() {
        Some(b) => phase_first_order(&b.0, x),
        None => f64::NAN,
    }
}

/// Exact phase `S(x)` from adaptive quadrature of `C/R^2` anchored at `x0`,
/// to absolute tolerance `tol`; written to `out`.
#[no_mangle]
pub unsafe extern "C" fn bs_branch_phase_exact(
    branch: *const BsBranch,
    x0: f64,
    x: f64,
    tol: f64,
    out: *mut f64,
) -> BsStatus {
    let (Some(b), Some(out)) = (branch.as_ref(), out.as_mut()) else {
        return BsStatus::NullPointer;
    };
    match phase_exact(&b.0, x0, x, tol) {
        Ok(s) => {
            *out = s;
            BsStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Wavefunction `psi(x) = R e^{iS/hbar}` with the exact phase; real and
/// imaginary parts written to `out_re`/`out_im`.
#[no_mangle]
pub unsafe extern "C" fn bs_branch_wavefunction(
    branch: *const BsBranch,
    x: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> BsStatus {
    let (Some(b), Some(re), Some(im)) = (branch.as_ref(), out_re.as_mut(), out_im.as_mut())
    else {
        return BsStatus::NullPointer;
    };
    let psi = wavefunction_direct(&b.0, x);
    *re = psi.re;
    *im = psi.im;
    BsStatus::Ok
}

/// Principal-index sideband coefficient `(1 + eps/4 - n) J_n(eps/4)`,
/// written to `out`. Requires `|eps| < 0.5`.
#[no_mangle]
pub unsafe extern "C" fn bs_sideband_coefficient(n: i32, eps: f64, out: *mut f64) -> BsStatus {
    let Some(out) = out.as_mut() else {
        return BsStatus::NullPointer;
    };
    match coefficient(n, eps) {
        Ok(c) => {
            *out = c;
            BsStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Decompose a branch into sideband coefficients, truncating once
/// `|C_n| < tol`. On success writes a heap handle to `out`; release with
/// `bs_spectrum_free`.
#[no_mangle]
pub unsafe extern "C" fn bs_spectrum_new(
    branch: *const BsBranch,
    tol: f64,
    out: *mut *mut BsSpectrum,
) -> BsStatus {
    if out.is_null() {
        return BsStatus::NullPointer;
    }
    let Some(b) = branch.as_ref() else {
        return BsStatus::NullPointer;
    };
    match decompose(&b.0, tol) {
        Ok(spec) => {
            *out = Box::into_raw(Box::new(BsSpectrum(spec)));
            BsStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Release a spectrum handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bs_spectrum_free(spectrum: *mut BsSpectrum) {
    if !spectrum.is_null() {
        drop(Box::from_raw(spectrum));
    }
}

/// Truncation half-width `N`: coefficients are stored for `n` in `[-N, N]`.
/// Returns -1 on a null handle.
#[no_mangle]
pub unsafe extern "C" fn bs_spectrum_halfwidth(spectrum: *const BsSpectrum) -> i32 {
    match spectrum.as_ref() {
        Some(s) => s.0.n_max,
        None => -1,
    }
}

/// Stored coefficient for sideband `n`; zero outside `[-N, N]`, NaN on a
/// null handle.
#[no_mangle]
pub unsafe extern "C" fn bs_spectrum_coefficient(spectrum: *const BsSpectrum, n: i32) -> f64 {
    match spectrum.as_ref() {
        Some(s) => s.0.coefficient_at(n),
        None => f64::NAN,
    }
}

/// Sum of squared stored coefficients; NaN on a null handle.
#[no_mangle]
pub unsafe extern "C" fn bs_spectrum_norm(spectrum: *const BsSpectrum) -> f64 {
    match spectrum.as_ref() {
        Some(s) => norm_sum(&s.0),
        None => f64::NAN,
    }
}

/// Evaluate the sideband sum at `x`; real and imaginary parts written to
/// `out_re`/`out_im`.
#[no_mangle]
pub unsafe extern "C" fn bs_spectrum_reconstruct(
    spectrum: *const BsSpectrum,
    x: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> BsStatus {
    let (Some(s), Some(re), Some(im)) = (spectrum.as_ref(), out_re.as_mut(), out_im.as_mut())
    else {
        return BsStatus::NullPointer;
    };
    let psi = reconstruct(&s.0, x);
    *re = psi.re;
    *im = psi.im;
    BsStatus::Ok
}

/// Integrate the difference dynamics of the pair in `spec`, linearized
/// around the mean envelope `(a, eps)`, from initial conditions
/// `(rho0, rho0_prime)` over `n` uniform samples of `[x0, x1]`. The mean
/// current follows the `(C1 + C2)/2` convention. On success writes a heap
/// handle to `out`; release with `bs_difference_free`.
#[no_mangle]
pub unsafe extern "C" fn bs_difference_solve(
    spec: *const BsPairSpec,
    a: f64,
    eps: f64,
    rho0: f64,
    rho0_prime: f64,
    x0: f64,
    x1: f64,
    n: usize,
    out: *mut *mut BsDifference,
) -> BsStatus {
    if out.is_null() {
        return BsStatus::NullPointer;
    }
    let Some(spec) = spec.as_ref() else {
        return BsStatus::NullPointer;
    };
    let result = (|| {
        let constants = PhysicalConstants::new(spec.hbar, spec.mass, spec.potential)?;
        let pair = BranchPair::new(spec.e1, spec.e2, spec.c1, spec.c2, spec.k1, spec.k2, constants)?;
        let params = decompose_pair(&pair, a, eps)?;
        let grid = build_grid(x0, x1, n)?;
        let solution = integrate_difference(&params, rho0, rho0_prime, grid)?;
        Ok(BsDifference {
            solution,
            near_degenerate: pair.near_degenerate(),
        })
    })();
    match result {
        Ok(diff) => {
            *out = Box::into_raw(Box::new(diff));
            BsStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Release a difference handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bs_difference_free(diff: *mut BsDifference) {
    if !diff.is_null() {
        drop(Box::from_raw(diff));
    }
}

/// Number of samples in the solution; zero on a null handle.
#[no_mangle]
pub unsafe extern "C" fn bs_difference_len(diff: *const BsDifference) -> usize {
    match diff.as_ref() {
        Some(d) => d.solution.rho.len(),
        None => 0,
    }
}

/// Whether the wave-number split satisfied the near-degeneracy check at
/// construction. False on a null handle.
#[no_mangle]
pub unsafe extern "C" fn bs_difference_near_degenerate(diff: *const BsDifference) -> bool {
    diff.as_ref().is_some_and(|d| d.near_degenerate)
}

/// Whether `max |rho| <= sqrt(A)/2` held along the trajectory, i.e. the
/// linearization stayed inside its validity window. False on a null handle.
#[no_mangle]
pub unsafe extern "C" fn bs_difference_amplitude_bounded(diff: *const BsDifference) -> bool {
    diff.as_ref().is_some_and(|d| d.solution.amplitude_bounded)
}

/// Grid abscissa of sample `i`; NaN on a null handle or out-of-range index.
#[no_mangle]
pub unsafe extern "C" fn bs_difference_x(diff: *const BsDifference, i: usize) -> f64 {
    match diff.as_ref() {
        Some(d) if i < d.solution.rho.len() => d.solution.grid.sample(i),
        _ => f64::NAN,
    }
}

/// Copy the sampled fields into caller-provided buffers of
/// `bs_difference_len` elements each. Any of `rho`, `rho_prime`, `ds` may be
/// null to skip that field.
#[no_mangle]
pub unsafe extern "C" fn bs_difference_copy(
    diff: *const BsDifference,
    rho: *mut f64,
    rho_prime: *mut f64,
    ds: *mut f64,
) -> BsStatus {
    let Some(d) = diff.as_ref() else {
        return BsStatus::NullPointer;
    };
    let n = d.solution.rho.len();
    if !rho.is_null() {
        std::ptr::copy_nonoverlapping(d.solution.rho.as_ptr(), rho, n);
    }
    if !rho_prime.is_null() {
        std::ptr::copy_nonoverlapping(d.solution.rho_prime.as_ptr(), rho_prime, n);
    }
    if !ds.is_null() {
        std::ptr::copy_nonoverlapping(d.solution.ds.as_ptr(), ds, n);
    }
    BsStatus::Ok
}
