//! Stationary phase from the continuity relation.
//!
//! For a stationary branch the continuity equation collapses to
//! `(R^2 S')' = 0`, so the phase is fixed nonlocally by the current:
//!
//! ```text
//! S'(x) = C / R^2(x),
//! S(x)  = S0 + \int_{x0}^{x} C / R^2(xi) dxi.
//! ```
//!
//! This module provides the exact quadrature of that integral, the
//! first-order closed form `S = S0 + hbar k x + (hbar eps/4) sin(2kx)`,
//! the assembled first-order wavefunction, and residual diagnostics for
//! the energy (Hamilton–Jacobi) and continuity equations.

use num_complex::Complex64;

use crate::constants::PhysicalConstants;
use crate::ermakov::{weakmod_amplitude_squared, WeakModBranch, WronskianBranch};
use crate::error::{Error, Result};
use crate::grid::Grid1D;

/// How a phase profile was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseMethod {
    ExactQuadrature,
    FirstOrder,
}

/// Phase samples on a grid, tagged with the construction method.
/// Monotone increasing whenever the branch current is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseProfile {
    pub grid: Grid1D,
    pub s_values: Vec<f64>,
    pub method: PhaseMethod,
}

/// Adaptive Simpson quadrature of `f` over `[x0, x1]` to absolute
/// tolerance `tol`, with Richardson extrapolation of the accepted panels.
/// Reversed limits negate the result. Panels that hit the recursion depth
/// cap contribute their local error estimate to `achieved`; if that total
/// exceeds `tol` the quadrature reports non-convergence.
pub fn adaptive_simpson(f: impl Fn(f64) -> f64, x0: f64, x1: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::domain(format!("quadrature tol must be positive, got {tol}")));
    }
    if x0 == x1 {
        return Ok(0.0);
    }
    let (lo, hi, sign) = if x0 < x1 { (x0, x1, 1.0) } else { (x1, x0, -1.0) };

    fn simpson(a: f64, fa: f64, b: f64, fb: f64, fm: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
        missed: &mut f64,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(a, fa, m, fm, flm);
        let right = simpson(m, fm, b, fb, frm);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol || depth == 0 {
            if delta.abs() > 15.0 * tol {
                *missed += delta.abs() / 15.0;
            }
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1, missed)
                + recurse(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1, missed)
        }
    }

    let fa = f(lo);
    let fb = f(hi);
    let fm = f(0.5 * (lo + hi));
    let whole = simpson(lo, fa, hi, fb, fm);
    let mut missed = 0.0;
    let value = recurse(&f, lo, fa, hi, fb, fm, whole, tol, 48, &mut missed);
    if missed > tol {
        return Err(Error::Quadrature {
            achieved: missed,
            requested: tol,
        });
    }
    Ok(sign * value)
}

/// `S'(x) = C / R^2(x)` for the weakly modulated branch.
pub fn phase_derivative_exact(branch: &WeakModBranch, x: f64) -> f64 {
    branch.c / weakmod_amplitude_squared(branch, x)
}

/// Exact phase `S(x) = S0 + \int_{x0}^{x} C/R^2`, by adaptive quadrature.
pub fn phase_exact(branch: &WeakModBranch, x0: f64, x: f64, tol: f64) -> Result<f64> {
    let s = adaptive_simpson(|xi| phase_derivative_exact(branch, xi), x0, x, tol)?;
    Ok(branch.s0 + s)
}

/// First-order closed form `S(x) = S0 + hbar k x + (hbar eps/4) sin(2kx)`.
pub fn phase_first_order(branch: &WeakModBranch, x: f64) -> f64 {
    branch.s0
        + branch.hbar * branch.k * x
        + branch.hbar * branch.eps / 4.0 * (2.0 * branch.k * x).sin()
}

/// Cumulative exact phase over a grid. The quadrature budget `tol` is the
/// absolute target for the whole profile; each interval receives a
/// proportional share.
pub fn phase_profile_exact(branch: &WeakModBranch, grid: Grid1D, tol: f64) -> Result<PhaseProfile> {
    if !(tol > 0.0) {
        return Err(Error::domain(format!("profile tol must be positive, got {tol}")));
    }
    let per_interval = (tol / (grid.n() - 1) as f64).max(1e-15);
    let mut s_values = Vec::with_capacity(grid.n());
    let mut acc = branch.s0;
    s_values.push(acc);
    for i in 1..grid.n() {
        acc += adaptive_simpson(
            |xi| phase_derivative_exact(branch, xi),
            grid.sample(i - 1),
            grid.sample(i),
            per_interval,
        )?;
        s_values.push(acc);
    }
    Ok(PhaseProfile {
        grid,
        s_values,
        method: PhaseMethod::ExactQuadrature,
    })
}

/// First-order phase sampled over a grid.
pub fn phase_profile_first_order(branch: &WeakModBranch, grid: Grid1D) -> PhaseProfile {
    PhaseProfile {
        grid,
        s_values: grid.samples().map(|x| phase_first_order(branch, x)).collect(),
        method: PhaseMethod::FirstOrder,
    }
}

/// First-order wavefunction
/// `psi(x) = sqrt(A) [1 + (eps/2) sin^2(kx)] e^{i(kx + (eps/4) sin 2kx + S0/hbar)}`:
/// the first-order amplitude carrying the exact modulated phase factor.
pub fn wavefunction_direct(branch: &WeakModBranch, x: f64) -> Complex64 {
    let s = (branch.k * x).sin();
    let modulus = branch.a.sqrt() * (1.0 + 0.5 * branch.eps * s * s);
    let arg = branch.k * x
        + 0.25 * branch.eps * (2.0 * branch.k * x).sin()
        + branch.s0 / branch.hbar;
    Complex64::from_polar(modulus, arg)
}

/// Residual of the stationary energy equation
/// `(S')^2 / 2m + V - (hbar^2 / 2m) R''/R - E` with `S' = C/R^2` and `R''`
/// analytic from the closed form. Identically zero (to roundoff) when the
/// branch satisfies its constraint and `E = V + hbar^2 k^2 / 2m`; affine in
/// `E`, so an energy offset `delta` shifts the residual by exactly `-delta`.
pub fn hj_residual(branch: &WronskianBranch, e: f64, constants: &PhysicalConstants, x: f64) -> f64 {
    let (q, q1, q2) = branch.q_derivatives(x);
    let m2 = 2.0 * constants.mass;
    let kinetic = branch.c * branch.c / (m2 * q * q);
    // R''/R = (2QQ'' - Q'^2) / (4Q^2)
    let curvature = (2.0 * q * q2 - q1 * q1) / (4.0 * q * q);
    kinetic + constants.potential - constants.hbar * constants.hbar / m2 * curvature - e
}

/// Residual of the continuity equation: central difference of `R^2 S'`
/// with step `h`. With the exact phase derivative the product is the
/// constant current and the residual is pure roundoff; with the
/// first-order derivative it is bounded by an O(eps^2) envelope.
pub fn continuity_residual(branch: &WeakModBranch, method: PhaseMethod, x: f64, h: f64) -> f64 {
    let flux = |xi: f64| {
        let sp = match method {
            PhaseMethod::ExactQuadrature => phase_derivative_exact(branch, xi),
            PhaseMethod::FirstOrder => {
                // d/dx of the first-order closed form.
                branch.hbar * branch.k
                    + 0.5 * branch.hbar * branch.eps * branch.k * (2.0 * branch.k * xi).cos()
            }
        };
        weakmod_amplitude_squared(branch, xi) * sp
    };
    (flux(x + h) - flux(x - h)) / (2.0 * h)
}
