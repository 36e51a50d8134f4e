//! Fourier–Bessel representation of the weakly modulated branch.
//!
//! The modulated phase factor expands through the Jacobi–Anger identity
//! `e^{i z sin t} = sum_n J_n(z) e^{i n t}`, and combining it with the
//! first-order amplitude collapses the branch into sidebands at odd
//! harmonics of the carrier:
//!
//! ```text
//! psi(x) = sqrt(A) sum_n  Cn(eps) e^{i (2n+1) k x},
//! Cn(eps) = (1 + eps/4 - n) J_n(eps/4).
//! ```
//!
//! The rearrangement is algebraically exact (no additional truncation is
//! introduced beyond the first-order amplitude itself), which is what the
//! reconstruction tests certify. The coefficient norm obeys the closed form
//! `sum Cn^2 = 1 + eps/2 + 3 eps^2/32`.
//!
//! Bessel functions are evaluated by the ascending power series
//! `J_n(z) = sum_m (-1)^m (z/2)^{n+2m} / (m! (n+m)!)`, which at the tiny
//! arguments used here (`|z| <= 0.5`, typically `|eps|/4 <= 0.125`) reaches
//! machine accuracy in a dozen terms.

use num_complex::Complex64;

use crate::ermakov::WeakModBranch;
use crate::error::{Error, Result};

/// Hard ceiling on sideband indices; the factorial decay of `J_n` makes
/// every coefficient beyond this range vanish at double precision for the
/// admissible modulation window.
const MAX_SIDEBAND: i32 = 64;

/// Largest Bessel argument accepted by the power-series evaluator.
const MAX_ARGUMENT: f64 = 0.5;

/// Bessel function of the first kind by ascending power series, valid for
/// `|z| <= 0.5`; absolute error below 1e-15. Negative orders use
/// `J_{-n}(z) = (-1)^n J_n(z)`.
pub fn bessel_j(n: i32, z: f64) -> Result<f64> {
    if !(z.abs() <= MAX_ARGUMENT) {
        return Err(Error::domain(format!(
            "bessel_j argument |{z}| exceeds the validated series domain {MAX_ARGUMENT}"
        )));
    }
    let nn = n.unsigned_abs();
    let sign = if n < 0 && nn % 2 == 1 { -1.0 } else { 1.0 };
    let half = 0.5 * z;

    // Leading term (z/2)^n / n!.
    let mut term = 1.0;
    for j in 1..=nn {
        term *= half / j as f64;
    }
    let mut sum = term;
    let mut m = 1u32;
    while term != 0.0 && m <= 40 {
        term *= -(half * half) / (m as f64 * (nn + m) as f64);
        sum += term;
        if term.abs() < 1e-18 * (1.0 + sum.abs()) {
            break;
        }
        m += 1;
    }
    Ok(sign * sum)
}

fn check_modulation(eps: f64) -> Result<()> {
    if !(eps.abs() < 0.5) {
        return Err(Error::domain(format!(
            "spectral coefficients require |eps| < 0.5, got {eps}"
        )));
    }
    Ok(())
}

/// Sideband coefficient in principal-index form, `(1 + eps/4 - n) J_n(eps/4)`.
pub fn coefficient(n: i32, eps: f64) -> Result<f64> {
    check_modulation(eps)?;
    Ok((1.0 + 0.25 * eps - n as f64) * bessel_j(n, 0.25 * eps)?)
}

/// Sideband coefficient before the recurrence reduction:
/// `(1 + eps/4) J_n(eps/4) - (eps/8) [J_{n-1}(eps/4) + J_{n+1}(eps/4)]`.
/// Kept as an independent cross-check of [`coefficient`]; the two agree
/// identically through `J_{n-1} + J_{n+1} = (2n/z) J_n`.
pub fn coefficient_raw(n: i32, eps: f64) -> Result<f64> {
    check_modulation(eps)?;
    let z = 0.25 * eps;
    Ok((1.0 + z) * bessel_j(n, z)?
        - 0.125 * eps * (bessel_j(n - 1, z)? + bessel_j(n + 1, z)?))
}

/// Truncated sideband set for one branch: coefficients `Cn` for
/// `n in [-n_max, n_max]` around carrier `k`, envelope `a`, plus the global
/// phase offset applied at reconstruction.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub k: f64,
    pub a: f64,
    pub eps: f64,
    /// Truncation half-width: every |coefficient| beyond it is below the
    /// construction tolerance.
    pub n_max: i32,
    /// Coefficients in index order `n = -n_max ..= n_max`.
    pub coeffs: Vec<f64>,
    /// Global phase `S0 / hbar` carried over from the branch.
    pub phase0: f64,
}

impl SpectralDecomposition {
    /// Coefficient `Cn`, zero outside the stored window.
    pub fn coefficient_at(&self, n: i32) -> f64 {
        if n.abs() > self.n_max {
            0.0
        } else {
            self.coeffs[(n + self.n_max) as usize]
        }
    }

    /// Iterate `(n, Cn)` over the stored window.
    pub fn iter(&self) -> impl Iterator<Item = (i32, f64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as i32 - self.n_max, c))
    }
}

/// Truncate the sideband series of a branch: the smallest `N` such that
/// `|Cn| < tol` for every `|n| > N`.
pub fn decompose(branch: &WeakModBranch, tol: f64) -> Result<SpectralDecomposition> {
    if !(tol > 0.0) {
        return Err(Error::domain(format!("truncation tol must be positive, got {tol}")));
    }
    check_modulation(branch.eps)?;
    let mut n_max = 0;
    for nn in 1..=MAX_SIDEBAND {
        if coefficient(nn, branch.eps)?.abs() >= tol || coefficient(-nn, branch.eps)?.abs() >= tol
        {
            n_max = nn;
        }
    }
    let coeffs = (-n_max..=n_max)
        .map(|n| coefficient(n, branch.eps))
        .collect::<Result<Vec<f64>>>()?;
    Ok(SpectralDecomposition {
        k: branch.k,
        a: branch.a,
        eps: branch.eps,
        n_max,
        coeffs,
        phase0: branch.s0 / branch.hbar,
    })
}

/// Weighted sideband sum `sqrt(A) e^{i phase0} sum_n w(n) Cn e^{i(2n+1)kx}`.
/// The shifted-source operations reuse this with trigonometric weights, so
/// degenerate weights (identically one) reproduce [`reconstruct`] bit for bit.
pub(crate) fn modulated_sum(
    decomp: &SpectralDecomposition,
    x: f64,
    weight: impl Fn(i32) -> f64,
) -> Complex64 {
    let mut sum = Complex64::ZERO;
    for (n, c) in decomp.iter() {
        let harmonic = (2 * n + 1) as f64 * decomp.k * x;
        sum += weight(n) * c * Complex64::from_polar(1.0, harmonic);
    }
    Complex64::from_polar(decomp.a.sqrt(), decomp.phase0) * sum
}

/// Truncated reconstruction `sqrt(A) e^{i phase0} sum_n Cn e^{i(2n+1)kx}`.
pub fn reconstruct(decomp: &SpectralDecomposition, x: f64) -> Complex64 {
    modulated_sum(decomp, x, |_| 1.0)
}

/// Sum of squared stored coefficients.
pub fn norm_sum(decomp: &SpectralDecomposition) -> f64 {
    decomp.coeffs.iter().map(|c| c * c).sum()
}

/// Closed-form coefficient norm `1 + eps/2 + 3 eps^2 / 32`.
pub fn closed_form_norm(eps: f64) -> f64 {
    1.0 + 0.5 * eps + 3.0 * eps * eps / 32.0
}

/// Truncated versions of the three standard sums
/// `(sum J_n^2, sum n J_n^2, sum n^2 J_n^2)` over `n in [-n_cap, n_cap]`,
/// which converge to `(1, 0, z^2/2)`.
pub fn bessel_identity_suite(z: f64, n_cap: u32) -> Result<(f64, f64, f64)> {
    if n_cap < 8 {
        return Err(Error::domain(format!(
            "identity suite needs n_cap >= 8, got {n_cap}"
        )));
    }
    let mut sums = (0.0, 0.0, 0.0);
    for n in -(n_cap as i32)..=(n_cap as i32) {
        let j = bessel_j(n, z)?;
        let j2 = j * j;
        sums.0 += j2;
        sums.1 += n as f64 * j2;
        sums.2 += (n as f64) * (n as f64) * j2;
    }
    Ok(sums)
}

/// Envelope constant that normalizes the branch over an interval of
/// length `L`: `A = 1 / (L (1 + eps/2))`.
pub fn normalization_constant(l: f64, eps: f64) -> Result<f64> {
    if !(l > 0.0) {
        return Err(Error::domain(format!("interval length must be positive, got {l}")));
    }
    let denom = 1.0 + 0.5 * eps;
    if denom <= 0.0 {
        return Err(Error::domain(format!(
            "normalization requires 1 + eps/2 > 0, got eps = {eps}"
        )));
    }
    Ok(1.0 / (l * denom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ermakov::WeakModBranch;
    use crate::phase::{adaptive_simpson, wavefunction_direct};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn branch(eps: f64) -> WeakModBranch {
        WeakModBranch::with_derived_current(1.0, eps, 1.0, 0.0, 1.0, false).unwrap()
    }

    #[test]
    fn bessel_at_zero() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        for n in 1..8 {
            assert_eq!(bessel_j(n, 0.0).unwrap(), 0.0);
            assert_eq!(bessel_j(-n, 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn bessel_reference_values() {
        // Frozen from an independent high-precision evaluation.
        assert_relative_eq!(bessel_j(0, 0.025).unwrap(), 0.9998437561034097, max_relative = 1e-15);
        assert_relative_eq!(bessel_j(1, 0.025).unwrap(), 0.012499023462930985, max_relative = 1e-15);
        assert_relative_eq!(bessel_j(0, 0.0125).unwrap(), 0.9999609378814681, max_relative = 1e-15);
        assert_relative_eq!(bessel_j(0, 0.5).unwrap(), 0.9384698072408129, max_relative = 1e-14);
        assert_relative_eq!(bessel_j(1, 0.5).unwrap(), 0.24226845767487388, max_relative = 1e-14);
        assert_relative_eq!(bessel_j(2, 0.5).unwrap(), 0.03060402345868264, max_relative = 1e-14);
        assert_relative_eq!(bessel_j(3, 0.5).unwrap(), 0.002563729994587244, max_relative = 1e-14);
        assert_relative_eq!(bessel_j(5, 0.125).unwrap(), 7.942e-9, max_relative = 1e-3);
    }

    #[test]
    fn bessel_rejects_large_argument() {
        assert!(bessel_j(0, 0.6).is_err());
        assert!(bessel_j(2, -0.51).is_err());
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(coefficient(0, 0.0).unwrap(), 1.0);
        for n in [-3, -1, 1, 2, 5] {
            assert_eq!(coefficient(n, 0.0).unwrap(), 0.0);
        }
        assert_relative_eq!(
            coefficient(-1, 0.1).unwrap(),
            -0.02531052251243525,
            max_relative = 1e-12
        );
        assert!(coefficient(0, 0.5).is_err());
    }

    #[test]
    fn raw_equals_principal_form() {
        for &eps in &[0.05, 0.1, 0.2] {
            for n in -12..=12 {
                let a = coefficient(n, eps).unwrap();
                let b = coefficient_raw(n, eps).unwrap();
                assert!((a - b).abs() <= 1e-14, "n={n} eps={eps}: {a} vs {b}");
            }
        }
        assert_eq!(coefficient_raw(0, 0.0).unwrap(), 1.0);
        assert_eq!(coefficient_raw(1, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn decompose_unmodulated_is_carrier_only() {
        let d = decompose(&branch(0.0), 1e-12).unwrap();
        assert_eq!(d.n_max, 0);
        assert_eq!(d.coeffs, vec![1.0]);
    }

    #[test]
    fn decompose_truncation_width() {
        let d = decompose(&branch(0.1), 1e-12).unwrap();
        assert!(d.n_max <= 6, "n_max = {}", d.n_max);
        // Everything just outside the window is genuinely below tolerance.
        assert!(coefficient(d.n_max + 1, 0.1).unwrap().abs() < 1e-12);
        assert!(coefficient(-(d.n_max + 1), 0.1).unwrap().abs() < 1e-12);
        assert_relative_eq!(norm_sum(&d), 1.0509375, max_relative = 1e-10);
    }

    #[test]
    fn reconstruct_unmodulated_plane_wave() {
        let d = decompose(&branch(0.0), 1e-12).unwrap();
        for x in [0.0, 0.7, 2.0] {
            let psi = reconstruct(&d, x);
            let expected = Complex64::from_polar(1.0, x);
            assert!((psi - expected).norm() <= 1e-15);
        }
    }

    #[test]
    fn reconstruct_at_origin_is_real() {
        let d = decompose(&branch(0.1), 1e-12).unwrap();
        let psi = reconstruct(&d, 0.0);
        assert_eq!(psi.im, 0.0);
        assert_relative_eq!(psi.re, d.coeffs.iter().sum::<f64>(), max_relative = 1e-15);
    }

    #[test]
    fn reconstruct_matches_direct_product_form() {
        for &eps in &[0.05, 0.1, 0.2] {
            let br = branch(eps);
            let d = decompose(&br, 1e-12).unwrap();
            let worst = (0..2000)
                .map(|i| {
                    let x = i as f64 * 2.0 * PI / 1999.0;
                    (reconstruct(&d, x) - wavefunction_direct(&br, x)).norm()
                })
                .fold(0.0, f64::max);
            assert!(worst <= 1e-10, "eps={eps}: sup gap {worst}");
        }
    }

    #[test]
    fn norm_closed_forms() {
        assert_eq!(closed_form_norm(0.0), 1.0);
        assert_relative_eq!(closed_form_norm(0.02), 1.0100375, max_relative = 1e-15);
        assert_relative_eq!(closed_form_norm(0.05), 1.025234375, max_relative = 1e-15);
        assert_relative_eq!(closed_form_norm(0.1), 1.0509375, max_relative = 1e-15);
        assert_relative_eq!(closed_form_norm(0.2), 1.10375, max_relative = 1e-15);
        assert_relative_eq!(closed_form_norm(-0.1), 0.9509375, max_relative = 1e-15);
    }

    #[test]
    fn norm_sum_matches_closed_form() {
        for &eps in &[0.02, 0.05, 0.1, 0.2, -0.1] {
            let d = decompose(&branch(eps), 1e-12).unwrap();
            assert_abs_diff_eq!(norm_sum(&d), closed_form_norm(eps), epsilon = 1e-10);
        }
    }

    #[test]
    fn truncation_is_sound() {
        // Widening the window beyond the tol-selected N moves the norm by
        // less than tol^2.
        let tol = 1e-12;
        for &eps in &[0.05, 0.1, 0.2] {
            let d = decompose(&branch(eps), tol).unwrap();
            let widened: f64 = (-(d.n_max + 4)..=(d.n_max + 4))
                .map(|n| {
                    let c = coefficient(n, eps).unwrap();
                    c * c
                })
                .sum();
            assert!((widened - norm_sum(&d)).abs() < tol * tol);
        }
    }

    #[test]
    fn identity_suite_values() {
        let (s0, s1, s2) = bessel_identity_suite(0.0, 10).unwrap();
        assert_eq!((s0, s1, s2), (1.0, 0.0, 0.0));

        let (s0, s1, s2) = bessel_identity_suite(0.025, 10).unwrap();
        assert_abs_diff_eq!(s0, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s1, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s2, 3.125e-4, epsilon = 1e-12);

        let (_, _, s2) = bessel_identity_suite(0.125, 12).unwrap();
        assert_abs_diff_eq!(s2, 7.8125e-3, epsilon = 1e-12);

        assert!(bessel_identity_suite(0.1, 7).is_err());
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(normalization_constant(1.0, 0.0).unwrap(), 1.0);
        assert_eq!(normalization_constant(2.0, 0.0).unwrap(), 0.5);
        assert_relative_eq!(
            normalization_constant(1.0, 0.1).unwrap(),
            1.0 / 1.05,
            max_relative = 1e-15
        );
        assert!(normalization_constant(0.0, 0.1).is_err());
        assert!(normalization_constant(1.0, -2.0).is_err());
    }

    #[test]
    fn spatial_average_matches_norm_slope() {
        // Mean of R^2/A over one period equals 1 + eps/2.
        for &eps in &[0.05, 0.1, 0.2] {
            let br = branch(eps);
            let period = 2.0 * PI / br.k;
            let avg = adaptive_simpson(
                |x| crate::ermakov::weakmod_amplitude_squared(&br, x),
                0.0,
                period,
                1e-13,
            )
            .unwrap()
                / (period * br.a);
            assert_abs_diff_eq!(avg, 1.0 + 0.5 * eps, epsilon = 1e-10);
        }
    }

    proptest! {
        // J_{-n}(z) = (-1)^n J_n(z).
        #[test]
        fn reflection_symmetry(n in 0i32..12, z in -0.5f64..0.5) {
            let plus = bessel_j(n, z).unwrap();
            let minus = bessel_j(-n, z).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((minus - sign * plus).abs() <= 1e-15);
        }

        // |J_n(z)| <= (|z|/2)^n / n! for n >= 0.
        #[test]
        fn leading_term_bounds_magnitude(n in 0u32..12, z in -0.5f64..0.5) {
            let j = bessel_j(n as i32, z).unwrap().abs();
            let mut envelope = 1.0;
            for m in 1..=n {
                envelope *= z.abs() / 2.0 / m as f64;
            }
            prop_assert!(j <= envelope * (1.0 + 1e-15));
        }

        // The recurrence-reduced and raw coefficient forms agree everywhere.
        #[test]
        fn raw_matches_principal(n in -12i32..=12, eps in -0.45f64..0.45) {
            let a = coefficient(n, eps).unwrap();
            let b = coefficient_raw(n, eps).unwrap();
            prop_assert!((a - b).abs() <= 1e-14);
        }
    }
}
