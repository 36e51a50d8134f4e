//! Closed-form stationary amplitudes in Wronskian form.
//!
//! The nonlinear amplitude equation
//!
//! ```text
//! R'' + k^2 R = C^2 / (hbar^2 R^3)
//! ```
//!
//! has the general positive solution
//!
//! ```text
//! R^2(x) = a sin^2(kx) + b cos^2(kx) + 2 d sin(kx) cos(kx),
//! ```
//!
//! a quadratic form in the Helmholtz basis (cos kx, sin kx) with Wronskian
//! `W = k`, provided the constants satisfy `a*b - d^2 = C^2 / (hbar^2 k^2)`.
//! The weak-modulation parameterization `R^2 = A (1 + eps sin^2(kx))` is the
//! special case `a = A(1+eps)`, `b = A`, `d = 0` and is the workhorse for the
//! spectral representation downstream.

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

/// Exact amplitude branch `R^2(x) = a sin^2(kx) + b cos^2(kx) + 2d sin(kx)cos(kx)`
/// with stationary current `c`. The branch is physically admissible when the
/// constraint `a*b - d^2 = c^2/(hbar^2 k^2)` holds; construction does not
/// enforce it so that [`ermakov_residual`] stays usable as an independent
/// diagnostic for violated constraints. Use [`WronskianBranch::constraint_gap`]
/// to inspect the defect directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WronskianBranch {
    /// Coefficient of `sin^2(kx)`.
    pub a: f64,
    /// Coefficient of `cos^2(kx)`.
    pub b: f64,
    /// Half the mixed-term coefficient: the cross term is `2d sin cos`.
    pub d: f64,
    /// Wave number; also the Wronskian of the (cos, sin) basis.
    pub k: f64,
    /// Stationary current `C = R^2 S'`.
    pub c: f64,
    pub hbar: f64,
}

impl WronskianBranch {
    pub fn new(a: f64, b: f64, d: f64, k: f64, c: f64, hbar: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b), ("k", k), ("hbar", hbar)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::domain(format!(
                    "branch constant {name} must be positive, got {v}"
                )));
            }
        }
        if !d.is_finite() || !c.is_finite() {
            return Err(Error::domain("branch constants d, c must be finite"));
        }
        Ok(Self { a, b, d, k, c, hbar })
    }

    /// Defect of the Wronskian constraint: `a*b - d^2 - c^2/(hbar^2 k^2)`.
    /// Zero (up to roundoff) for admissible branches.
    pub fn constraint_gap(&self) -> f64 {
        self.a * self.b - self.d * self.d - self.c * self.c / (self.hbar * self.hbar * self.k * self.k)
    }

    /// `R^2` written as `p + q cos(2kx) + d sin(2kx)`; this harmonic form is
    /// what the analytic derivatives differentiate.
    fn harmonic_constants(&self) -> (f64, f64, f64) {
        ((self.a + self.b) / 2.0, (self.b - self.a) / 2.0, self.d)
    }

    /// `(Q, Q', Q'')` of `Q = R^2` at `x`, all in closed form.
    pub(crate) fn q_derivatives(&self, x: f64) -> (f64, f64, f64) {
        let (p, q, r) = self.harmonic_constants();
        let (s2, c2) = (2.0 * self.k * x).sin_cos();
        let big_q = p + q * c2 + r * s2;
        let big_q1 = 2.0 * self.k * (-q * s2 + r * c2);
        let big_q2 = -4.0 * self.k * self.k * (q * c2 + r * s2);
        (big_q, big_q1, big_q2)
    }
}

/// `R^2(x)` for a Wronskian branch.
pub fn amplitude_squared(branch: &WronskianBranch, x: f64) -> f64 {
    let (s, c) = (branch.k * x).sin_cos();
    branch.a * s * s + branch.b * c * c + 2.0 * branch.d * s * c
}

/// Residual of the amplitude equation `R'' + k^2 R - C^2/(hbar^2 R^3)` with
/// `R = sqrt(Q)` and `R'' = (2QQ'' - Q'^2) / (4 Q^{3/2})` assembled from the
/// analytic derivatives of the closed form. Vanishes identically when the
/// constraint holds; grows linearly with a relative perturbation of `C`.
pub fn ermakov_residual(branch: &WronskianBranch, x: f64) -> f64 {
    let (q, q1, q2) = branch.q_derivatives(x);
    let r = q.sqrt();
    let r2nd = (2.0 * q * q2 - q1 * q1) / (4.0 * q * r);
    let h = branch.hbar;
    r2nd + branch.k * branch.k * r - branch.c * branch.c / (h * h * q * r)
}

/// Weakly modulated stationary branch `R^2(x) = a (1 + eps sin^2(kx))` with
/// phase offset `s0`. The modulation is restricted to `|eps| < 0.5`, the
/// window in which the first-order identities downstream are certified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakModBranch {
    /// Envelope constant (the unmodulated `R^2` level).
    pub a: f64,
    /// Modulation depth.
    pub eps: f64,
    /// Carrier wave number.
    pub k: f64,
    /// Stationary current.
    pub c: f64,
    /// Global phase offset (action units).
    pub s0: f64,
    pub hbar: f64,
}

impl WeakModBranch {
    pub fn new(a: f64, eps: f64, k: f64, c: f64, s0: f64, hbar: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("k", k), ("hbar", hbar)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::domain(format!(
                    "branch constant {name} must be positive, got {v}"
                )));
            }
        }
        if !(eps.abs() < 0.5) {
            return Err(Error::domain(format!(
                "modulation eps must satisfy |eps| < 0.5, got {eps}"
            )));
        }
        if !c.is_finite() || !s0.is_finite() {
            return Err(Error::domain("branch constants c, s0 must be finite"));
        }
        Ok(Self { a, eps, k, c, s0, hbar })
    }

    /// Branch with the current derived from the constraint,
    /// `C = hbar k a sqrt(1+eps)`; `reverse` selects the negative root
    /// (which only flips the phase direction).
    pub fn with_derived_current(
        a: f64,
        eps: f64,
        k: f64,
        s0: f64,
        hbar: f64,
        reverse: bool,
    ) -> Result<Self> {
        let c = current_from_weakmod(a, eps, k, hbar)?;
        Self::new(a, eps, k, if reverse { -c } else { c }, s0, hbar)
    }
}

/// `R^2(x) = a (1 + eps sin^2(kx))`.
pub fn weakmod_amplitude_squared(branch: &WeakModBranch, x: f64) -> f64 {
    let s = (branch.k * x).sin();
    branch.a * (1.0 + branch.eps * s * s)
}

/// Current fixed by the constraint for a weakly modulated branch:
/// `C = hbar k a sqrt(1+eps)` (positive root).
pub fn current_from_weakmod(a: f64, eps: f64, k: f64, hbar: f64) -> Result<f64> {
    if 1.0 + eps <= 0.0 {
        return Err(Error::domain(format!(
            "current requires 1 + eps > 0, got eps = {eps}"
        )));
    }
    Ok(hbar * k * a * (1.0 + eps).sqrt())
}

/// Mean wave number from the mean energy, `k = sqrt(2m(E - V)) / hbar`.
/// Rejects `E <= V` (classically forbidden).
pub fn mean_wavenumber(e_m: f64, constants: &PhysicalConstants) -> Result<f64> {
    if e_m <= constants.potential {
        return Err(Error::domain(format!(
            "mean energy {e_m} must exceed the potential {}",
            constants.potential
        )));
    }
    Ok((2.0 * constants.mass * (e_m - constants.potential)).sqrt() / constants.hbar)
}

/// Express a weakly modulated branch in the general quadratic form:
/// `a (1 + eps sin^2) = a(1+eps) sin^2 + a cos^2`, i.e. the sin^2
/// coefficient is `a(1+eps)`, the cos^2 coefficient is `a`, no mixed term.
pub fn to_wronskian(branch: &WeakModBranch) -> WronskianBranch {
    WronskianBranch {
        a: branch.a * (1.0 + branch.eps),
        b: branch.a,
        d: 0.0,
        k: branch.k,
        c: branch.c,
        hbar: branch.hbar,
    }
}
