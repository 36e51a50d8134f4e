//! Shared test oracles, deliberately kept out of the library's public API.

use std::f64::consts::PI;

/// Closed-form phase of a weakly modulated branch via the arctan
/// antiderivative, continued across its branch cuts:
///
/// ```text
/// S(x) = S0 + C/(A k sqrt(1+eps)) * Phi(kx),
/// Phi(u) = atan2(sqrt(1+eps) sin u, cos u) unwrapped to follow u.
/// ```
///
/// The principal value is lifted by the multiple of `2 pi` that keeps it
/// within half a turn of `u` itself; the warp `|Phi(u) - u|` stays far
/// below that for every admissible modulation, so the lift is unambiguous.
pub fn closed_form_phase(a: f64, eps: f64, k: f64, c: f64, s0: f64, x0: f64, x: f64) -> f64 {
    let g = (1.0 + eps).sqrt();
    let anti = |x: f64| {
        let u = k * x;
        let principal = (g * u.sin()).atan2(u.cos());
        let turns = ((u - principal) / (2.0 * PI)).round();
        (principal + 2.0 * PI * turns) / (a * k * g)
    };
    s0 + c * (anti(x) - anti(x0))
}

#[allow(dead_code)]
pub fn sup<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}
