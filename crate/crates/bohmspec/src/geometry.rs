//! Source geometries built on top of the sideband representation:
//! two translated copies of one branch, separable rectangular apertures
//! with quantized wave numbers, and the parabolic (near-axis) slit
//! reduction whose sidebands carry Fresnel-type chirps.

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::ermakov::WeakModBranch;
use crate::spectral::{
    bessel_j, decompose, modulated_sum, normalization_constant, SpectralDecomposition,
};
use num_complex::Complex64;

/// Fraction of the curvature radius inside which the parabolic reduction
/// of the circular wavefront is trusted: `|x| <= 0.3 R` keeps the dropped
/// quartic term of the circle expansion below a percent of the quadratic.
pub const PARAXIAL_WINDOW_FRACTION: f64 = 0.3;

const MAX_TRUNCATION: i32 = 64;

/// One branch decomposition evaluated as two copies displaced to
/// `x - a/2` and `x + a/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedPair {
    pub base: SpectralDecomposition,
    /// Source separation; zero collapses both copies onto the original.
    pub a: f64,
}

/// Symmetric combination `Psi(x) = psi(x + a/2) + psi(x - a/2)` in sideband
/// form: each coefficient picks up the weight `2 cos[(2n+1) k a / 2]`.
pub fn shifted_sum(pair: &ShiftedPair, x: f64) -> Complex64 {
    let half_ka = 0.5 * pair.base.k * pair.a;
    modulated_sum(&pair.base, x, |n| {
        2.0 * ((2 * n + 1) as f64 * half_ka).cos()
    })
}

/// Antisymmetric combination `psi(x + a/2) - psi(x - a/2)`: sideband
/// weights `2 sin[(2n+1) k a / 2]` and a global factor `i`.
pub fn shifted_diff(pair: &ShiftedPair, x: f64) -> Complex64 {
    let half_ka = 0.5 * pair.base.k * pair.a;
    Complex64::I
        * modulated_sum(&pair.base, x, |n| {
            2.0 * ((2 * n + 1) as f64 * half_ka).sin()
        })
}

/// Dirichlet wave numbers of an `L x L` aperture mode `(u, v)` and the
/// energy they imply: `k_x = u pi / L`, `k_y = v pi / L`,
/// `E = hbar^2 pi^2 (u^2 + v^2) / (2 m L^2)`.
pub fn quantized_wavenumbers(
    l: f64,
    u: u32,
    v: u32,
    constants: &PhysicalConstants,
) -> Result<(f64, f64, f64)> {
    if !(l > 0.0) {
        return Err(Error::domain(format!(
            "aperture width must be positive, got {l}"
        )));
    }
    if u < 1 || v < 1 {
        return Err(Error::domain(format!(
            "Dirichlet modes start at 1, got (u, v) = ({u}, {v})"
        )));
    }
    let k_x = u as f64 * std::f64::consts::PI / l;
    let k_y = v as f64 * std::f64::consts::PI / l;
    let h2 = constants.hbar * constants.hbar;
    let energy = h2 * (k_x * k_x + k_y * k_y) / (2.0 * constants.mass);
    Ok((k_x, k_y, energy))
}

/// Separable mode of a square aperture: per-axis branches with their own
/// modulation depths, each normalized over the width and decomposed into
/// sidebands once at construction. The quantization relation
/// `(pi^2/L^2)(u^2 + v^2) = 2 m E / hbar^2` holds by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct RectAperture {
    pub l: f64,
    pub u: u32,
    pub v: u32,
    pub k_x: f64,
    pub k_y: f64,
    pub energy: f64,
    pub axis_x: SpectralDecomposition,
    pub axis_y: SpectralDecomposition,
    pub constants: PhysicalConstants,
}

impl RectAperture {
    /// Build the mode `(u, v)` with per-axis modulations; the envelopes
    /// default to the normalization over the width `L`.
    pub fn new(
        l: f64,
        u: u32,
        v: u32,
        eps_x: f64,
        eps_y: f64,
        tol: f64,
        constants: PhysicalConstants,
    ) -> Result<Self> {
        let (k_x, k_y, energy) = quantized_wavenumbers(l, u, v, &constants)?;
        let a_x = normalization_constant(l, eps_x)?;
        let a_y = normalization_constant(l, eps_y)?;
        let axis_x = decompose(
            &WeakModBranch::with_derived_current(a_x, eps_x, k_x, 0.0, constants.hbar, false)?,
            tol,
        )?;
        let axis_y = decompose(
            &WeakModBranch::with_derived_current(a_y, eps_y, k_y, 0.0, constants.hbar, false)?,
            tol,
        )?;
        Ok(Self {
            l,
            u,
            v,
            k_x,
            k_y,
            energy,
            axis_x,
            axis_y,
            constants,
        })
    }
}

/// Aperture wavefunction as the explicit double sideband sum
/// `sqrt(A_x A_y) sum_{u,v} C_u C_v e^{i(2u+1)k_x x} e^{i(2v+1)k_y y}`.
/// Separability into the two one-axis reconstructions is a verified
/// property, not an implementation shortcut.
pub fn rect_wavefunction(ap: &RectAperture, x: f64, y: f64) -> Complex64 {
    let mut sum = Complex64::ZERO;
    for (nu, cu) in ap.axis_x.iter() {
        let phase_x = (2 * nu + 1) as f64 * ap.axis_x.k * x;
        for (nv, cv) in ap.axis_y.iter() {
            let phase_y = (2 * nv + 1) as f64 * ap.axis_y.k * y;
            sum += cu * cv * Complex64::from_polar(1.0, phase_x + phase_y);
        }
    }
    let scale = (ap.axis_x.a * ap.axis_y.a).sqrt();
    Complex64::from_polar(scale, ap.axis_x.phase0 + ap.axis_y.phase0) * sum
}

/// Near-axis reduction of a slit on a circular wavefront of radius
/// `r_curv`. The longitudinal coordinate is eliminated through
/// `y = R - x^2/(2R)`, which turns the transverse modulation into the
/// chirped argument `theta(x) = k_y R - k_y x^2 / (2 R)`.
///
/// `eps` is the transverse modulation depth; it feeds both the effective
/// envelope and the Jacobi-Anger sideband weights `J_n(eps/4)` frozen at
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ParabolicSlit {
    pub r_curv: f64,
    pub k_x: f64,
    pub k_y: f64,
    pub a: f64,
    pub eps: f64,
    pub n_trunc: i32,
    pub hbar: f64,
    weights: Vec<f64>,
}

impl ParabolicSlit {
    pub fn new(
        r_curv: f64,
        k_x: f64,
        k_y: f64,
        a: f64,
        eps: f64,
        n_trunc: i32,
        hbar: f64,
    ) -> Result<Self> {
        if !(r_curv > 0.0) {
            return Err(Error::domain(format!(
                "curvature radius must be positive, got {r_curv}"
            )));
        }
        if !(k_x >= 0.0) || !(k_y > 0.0) {
            return Err(Error::domain(format!(
                "need k_x >= 0 and k_y > 0, got ({k_x}, {k_y})"
            )));
        }
        if !(a > 0.0) {
            return Err(Error::domain(format!("envelope must be positive, got {a}")));
        }
        if !(eps.abs() < 0.5) {
            return Err(Error::domain(format!(
                "modulation must satisfy |eps| < 0.5, got {eps}"
            )));
        }
        if !(0..=MAX_TRUNCATION).contains(&n_trunc) {
            return Err(Error::domain(format!(
                "truncation order must lie in 0..={MAX_TRUNCATION}, got {n_trunc}"
            )));
        }
        if !(hbar > 0.0) {
            return Err(Error::domain(format!("hbar must be positive, got {hbar}")));
        }
        let weights = (-n_trunc..=n_trunc)
            .map(|n| bessel_j(n, 0.25 * eps))
            .collect::<Result<Vec<f64>>>()?;
        Ok(Self {
            r_curv,
            k_x,
            k_y,
            a,
            eps,
            n_trunc,
            hbar,
            weights,
        })
    }

    /// Half-width of the validity window, `0.3 r_curv`.
    pub fn paraxial_halfwidth(&self) -> f64 {
        PARAXIAL_WINDOW_FRACTION * self.r_curv
    }

    fn theta(&self, x: f64) -> f64 {
        self.k_y * (self.r_curv - x * x / (2.0 * self.r_curv))
    }
}

/// Smallest truncation order that keeps every dropped Jacobi-Anger weight
/// `|J_n(eps/4)|` below `tol`.
pub fn slit_truncation(eps: f64, tol: f64) -> Result<i32> {
    if !(eps.abs() < 0.5) {
        return Err(Error::domain(format!(
            "modulation must satisfy |eps| < 0.5, got {eps}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(format!(
            "truncation tol must be positive, got {tol}"
        )));
    }
    let mut n_trunc = 0;
    for n in 1..=MAX_TRUNCATION {
        if bessel_j(n, 0.25 * eps)?.abs() >= tol {
            n_trunc = n;
        }
    }
    Ok(n_trunc)
}

/// Whether `x` lies inside the paraxial validity window.
pub fn in_paraxial_window(slit: &ParabolicSlit, x: f64) -> bool {
    x.abs() <= slit.paraxial_halfwidth()
}

/// Effective squared amplitude `A [1 + eps/2 - (eps/2) cos(2 theta)]`
/// (the cosine form; the sine form `A [1 + eps sin^2 theta]` is its
/// cross-check).
pub fn parabolic_amplitude_sq(slit: &ParabolicSlit, x: f64) -> f64 {
    let two_theta = 2.0 * slit.theta(x);
    slit.a * (1.0 + 0.5 * slit.eps - 0.5 * slit.eps * two_theta.cos())
}

/// Effective phase
/// `hbar [k_x x + k_y R - k_y x^2/(2R)] + (hbar eps / 4) sin(2 theta)`.
pub fn parabolic_phase(slit: &ParabolicSlit, x: f64) -> f64 {
    let theta = slit.theta(x);
    slit.hbar * (slit.k_x * x + theta) + 0.25 * slit.hbar * slit.eps * (2.0 * theta).sin()
}

/// Single sideband term of the reduced wavefunction: the common real
/// amplitude and carrier times `J_n(eps/4) e^{i n 2 theta}`. Zero outside
/// the stored truncation window. Its phase is quadratic in `x` with
/// curvature [`sideband_chirp`].
pub fn parabolic_sideband(slit: &ParabolicSlit, n: i32, x: f64) -> Complex64 {
    if n.abs() > slit.n_trunc {
        return Complex64::ZERO;
    }
    let theta = slit.theta(x);
    let weight = slit.weights[(n + slit.n_trunc) as usize];
    parabolic_amplitude_sq(slit, x).sqrt()
        * weight
        * Complex64::from_polar(1.0, slit.k_x * x + theta + n as f64 * 2.0 * theta)
}

/// Reduced slit wavefunction: square-root amplitude, carrier
/// `e^{i(k_x x + theta)}`, and the truncated Jacobi-Anger sum
/// `sum_n J_n(eps/4) e^{i n 2 theta}`.
pub fn parabolic_wavefunction(slit: &ParabolicSlit, x: f64) -> Complex64 {
    let theta = slit.theta(x);
    let two_theta = 2.0 * theta;
    let mut sum = Complex64::ZERO;
    for (i, w) in slit.weights.iter().enumerate() {
        let n = i as i32 - slit.n_trunc;
        sum += w * Complex64::from_polar(1.0, n as f64 * two_theta);
    }
    parabolic_amplitude_sq(slit, x).sqrt() * Complex64::from_polar(1.0, slit.k_x * x + theta) * sum
}

/// The `x^2` phase coefficient of sideband `n`: `-(n + 1/2) k_y / r_curv`.
/// Each sideband carries its own Fresnel curvature, scaled by the odd
/// half-integers.
pub fn sideband_chirp(slit: &ParabolicSlit, n: i32) -> f64 {
    -(n as f64 + 0.5) * slit.k_y / slit.r_curv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::reconstruct;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn decomp(a: f64, eps: f64, k: f64) -> SpectralDecomposition {
        let branch = WeakModBranch::with_derived_current(a, eps, k, 0.0, 1.0, false).unwrap();
        decompose(&branch, 1e-12).unwrap()
    }

    #[test]
    fn coincident_sources_reduce_exactly() {
        let pair = ShiftedPair {
            base: decomp(2.0, 0.1, 1.3),
            a: 0.0,
        };
        for i in 0..50 {
            let x = -3.0 + 0.13 * i as f64;
            let psi = reconstruct(&pair.base, x);
            let sum = shifted_sum(&pair, x);
            assert_eq!(sum.re, 2.0 * psi.re);
            assert_eq!(sum.im, 2.0 * psi.im);
            let diff = shifted_diff(&pair, x);
            assert!(diff.re == 0.0 && diff.im == 0.0);
        }
    }

    #[test]
    fn matches_direct_translation_oracle() {
        for &eps in &[0.0, 0.1] {
            let base = decomp(2.0, eps, 1.0);
            let pair = ShiftedPair { base, a: 0.7 };
            let mut worst = 0.0f64;
            for i in 0..500 {
                let x = i as f64 * 2.0 * PI / 499.0;
                let plus = reconstruct(&pair.base, x + 0.35);
                let minus = reconstruct(&pair.base, x - 0.35);
                worst = worst
                    .max((shifted_sum(&pair, x) - (plus + minus)).norm())
                    .max((shifted_diff(&pair, x) - (plus - minus)).norm());
            }
            assert!(worst <= 1e-10, "eps={eps}: translation gap {worst}");
        }
    }

    #[test]
    fn unmodulated_half_period_separation() {
        // eps = 0 keeps only the carrier; k a = 2 pi flips its sign through
        // cos(pi) and leaves modulus 2 sqrt(A).
        let pair = ShiftedPair {
            base: decomp(2.0, 0.0, 1.0),
            a: 2.0 * PI,
        };
        for x in [0.0, 0.4, 1.9] {
            let psi = shifted_sum(&pair, x);
            assert_relative_eq!(psi.norm(), 2.0 * 2.0f64.sqrt(), max_relative = 1e-12);
            let expected = -2.0 * 2.0f64.sqrt() * Complex64::from_polar(1.0, x);
            assert_relative_eq!(psi.re, expected.re, epsilon = 1e-12);
            assert_relative_eq!(psi.im, expected.im, epsilon = 1e-12);
        }
    }

    #[test]
    fn parallelogram_identity() {
        let pair = ShiftedPair {
            base: decomp(1.5, 0.1, 1.0),
            a: 0.9,
        };
        for i in 0..400 {
            let x = -PI + i as f64 * 2.0 * PI / 399.0;
            let sum2 = shifted_sum(&pair, x).norm_sqr() + shifted_diff(&pair, x).norm_sqr();
            let p1 = reconstruct(&pair.base, x + 0.45).norm_sqr();
            let p2 = reconstruct(&pair.base, x - 0.45).norm_sqr();
            assert_abs_diff_eq!(sum2, 2.0 * (p1 + p2), epsilon = 1e-10);
        }
    }

    #[test]
    fn quantization_examples() {
        let c = PhysicalConstants::natural();
        let (kx, ky, e) = quantized_wavenumbers(PI, 1, 1, &c).unwrap();
        assert_relative_eq!(kx, 1.0, max_relative = 1e-15);
        assert_relative_eq!(ky, 1.0, max_relative = 1e-15);
        assert_relative_eq!(e, 1.0, max_relative = 1e-14);

        let (_, _, e) = quantized_wavenumbers(PI, 3, 4, &c).unwrap();
        assert_relative_eq!(e, 12.5, max_relative = 1e-14);

        assert!(quantized_wavenumbers(PI, 0, 1, &c).is_err());
        assert!(quantized_wavenumbers(-1.0, 1, 1, &c).is_err());
    }

    #[test]
    fn rect_factorizes_into_axis_reconstructions() {
        let ap = RectAperture::new(PI, 3, 4, 0.1, 0.05, 1e-12, PhysicalConstants::natural())
            .unwrap();
        let mut worst = 0.0f64;
        for i in 0..64 {
            let x = i as f64 * PI / 63.0;
            let xi = reconstruct(&ap.axis_x, x);
            for j in 0..64 {
                let y = j as f64 * PI / 63.0;
                let gap = (rect_wavefunction(&ap, x, y) - xi * reconstruct(&ap.axis_y, y)).norm();
                worst = worst.max(gap);
            }
        }
        assert!(worst <= 1e-10, "separability gap {worst}");
    }

    #[test]
    fn rect_unmodulated_plane_wave() {
        let ap = RectAperture::new(2.0, 2, 5, 0.0, 0.0, 1e-12, PhysicalConstants::natural())
            .unwrap();
        let scale = (ap.axis_x.a * ap.axis_y.a).sqrt();
        for (x, y) in [(0.0, 0.0), (0.3, 1.1), (1.7, 0.2)] {
            let psi = rect_wavefunction(&ap, x, y);
            let plane = scale * Complex64::from_polar(1.0, ap.k_x * x + ap.k_y * y);
            assert_relative_eq!(psi.re, plane.re, epsilon = 1e-14 * scale);
            assert_relative_eq!(psi.im, plane.im, epsilon = 1e-14 * scale);
        }
    }

    #[test]
    fn rect_intensity_tracks_envelope_product() {
        // |psi|^2 vs A_x A_y (1 + eps_x sin^2)(1 + eps_y sin^2): the
        // sideband form carries the first-order phase, so the residue is
        // second order per axis.
        let (eps_x, eps_y) = (0.1, 0.15);
        let ap = RectAperture::new(PI, 2, 3, eps_x, eps_y, 1e-12, PhysicalConstants::natural())
            .unwrap();
        let scale = ap.axis_x.a * ap.axis_y.a;
        let mut worst = 0.0f64;
        for i in 0..80 {
            let x = i as f64 * PI / 79.0;
            let sx = (ap.k_x * x).sin();
            for j in 0..80 {
                let y = j as f64 * PI / 79.0;
                let sy = (ap.k_y * y).sin();
                let envelope =
                    scale * (1.0 + eps_x * sx * sx) * (1.0 + eps_y * sy * sy);
                let gap = (rect_wavefunction(&ap, x, y).norm_sqr() - envelope).abs();
                worst = worst.max(gap);
            }
        }
        let allowance = 0.3 * (eps_x * eps_x + eps_y * eps_y) * scale;
        assert!(
            worst <= allowance,
            "envelope gap {worst} vs allowance {allowance}"
        );
    }

    fn slit(eps: f64, n_trunc: i32) -> ParabolicSlit {
        ParabolicSlit::new(50.0, 0.3, 2.0, 1.0, eps, n_trunc, 1.0).unwrap()
    }

    #[test]
    fn slit_validation() {
        assert!(ParabolicSlit::new(0.0, 0.3, 2.0, 1.0, 0.1, 8, 1.0).is_err());
        assert!(ParabolicSlit::new(50.0, -0.1, 2.0, 1.0, 0.1, 8, 1.0).is_err());
        assert!(ParabolicSlit::new(50.0, 0.3, 2.0, 1.0, 0.6, 8, 1.0).is_err());
        assert!(ParabolicSlit::new(50.0, 0.3, 2.0, 1.0, 0.1, 65, 1.0).is_err());
        assert!(ParabolicSlit::new(50.0, 0.3, 2.0, 1.0, 0.1, -1, 1.0).is_err());
    }

    #[test]
    fn amplitude_examples() {
        let s0 = slit(0.0, 4);
        for x in [0.0, 3.0, -11.0] {
            assert_eq!(parabolic_amplitude_sq(&s0, x), 1.0);
        }

        let s = slit(0.2, 8);
        let apex = (s.k_y * s.r_curv).sin();
        assert_relative_eq!(
            parabolic_amplitude_sq(&s, 0.0),
            1.0 + 0.2 * apex * apex,
            max_relative = 1e-14
        );

        // Cosine and sine forms agree everywhere.
        for &x in &[0.137, -1.77245, 3.318, -7.0, 9.61, 12.9, -14.99] {
            let theta = s.k_y * (s.r_curv - x * x / (2.0 * s.r_curv));
            let sine_form = s.a * (1.0 + s.eps * theta.sin().powi(2));
            assert_relative_eq!(
                parabolic_amplitude_sq(&s, x),
                sine_form,
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn phase_examples() {
        let s = ParabolicSlit::new(50.0, 0.0, 2.0, 1.0, 0.0, 4, 1.0).unwrap();
        assert_relative_eq!(parabolic_phase(&s, 0.0), 100.0, max_relative = 1e-15);

        // Everything but the carrier term is even in x.
        let s = slit(0.2, 8);
        for w in [2.0, 5.5, 13.0] {
            let odd_part = parabolic_phase(&s, w) - parabolic_phase(&s, -w);
            assert_relative_eq!(odd_part, 2.0 * s.hbar * s.k_x * w, max_relative = 1e-10);
        }

        // Analytic curvature at the apex vs a central second difference.
        let analytic =
            -s.hbar * s.k_y / s.r_curv * (1.0 + 0.5 * s.eps * (2.0 * s.k_y * s.r_curv).cos());
        let h = 0.05;
        let fd = (parabolic_phase(&s, h) - 2.0 * parabolic_phase(&s, 0.0)
            + parabolic_phase(&s, -h))
            / (h * h);
        assert_relative_eq!(fd, analytic, max_relative = 1e-5);
    }

    #[test]
    fn modulus_identity_across_window() {
        let s = slit(0.4, 8);
        let half = s.paraxial_halfwidth();
        let mut worst = 0.0f64;
        for i in 0..600 {
            let x = -half + i as f64 * 2.0 * half / 599.0;
            let gap =
                (parabolic_wavefunction(&s, x).norm_sqr() - parabolic_amplitude_sq(&s, x)).abs();
            worst = worst.max(gap);
        }
        assert!(worst <= 1e-10, "modulus gap {worst}");
    }

    #[test]
    fn unmodulated_slit_is_pure_fresnel() {
        let s = ParabolicSlit::new(40.0, 0.2, 1.5, 2.0, 0.0, 0, 1.0).unwrap();
        for x in [0.0, 1.0, -6.3, 11.0] {
            let psi = parabolic_wavefunction(&s, x);
            let phase = s.k_x * x + s.k_y * (s.r_curv - x * x / (2.0 * s.r_curv));
            let expected = 2.0f64.sqrt() * Complex64::from_polar(1.0, phase);
            assert_relative_eq!(psi.re, expected.re, epsilon = 1e-12);
            assert_relative_eq!(psi.im, expected.im, epsilon = 1e-12);
        }
    }

    #[test]
    fn sidebands_sum_to_wavefunction() {
        let s = slit(0.3, 8);
        for x in [0.0, 2.7, -9.4, 14.0] {
            let total: Complex64 = (-s.n_trunc..=s.n_trunc)
                .map(|n| parabolic_sideband(&s, n, x))
                .sum();
            let psi = parabolic_wavefunction(&s, x);
            assert!((total - psi).norm() <= 1e-14 * psi.norm());
        }
        assert_eq!(parabolic_sideband(&s, 9, 1.0), Complex64::ZERO);
    }

    #[test]
    fn chirp_formula_and_fit() {
        let s = slit(0.3, 8);
        assert_eq!(sideband_chirp(&s, 0), -2.0 / 100.0);
        assert_eq!(sideband_chirp(&s, 1), -3.0 * 2.0 / 100.0);
        assert_eq!(sideband_chirp(&s, -1), 2.0 / 100.0);

        // Second difference of the sideband phase is exact for quadratics,
        // so the fitted curvature matches the formula to rounding.
        let h = 0.05 * s.r_curv;
        for n in [-1, 0, 1, 2] {
            let term = |x: f64| parabolic_sideband(&s, n, x);
            let plus = (term(h) * term(0.0).conj()).arg();
            let minus = (term(0.0) * term(-h).conj()).arg();
            let fitted = (plus - minus) / (2.0 * h * h);
            assert_relative_eq!(fitted, sideband_chirp(&s, n), max_relative = 1e-9);
        }
    }

    #[test]
    fn truncation_from_tolerance() {
        assert_eq!(slit_truncation(0.0, 1e-12).unwrap(), 0);
        let n = slit_truncation(0.4, 1e-12).unwrap();
        assert!((4..=8).contains(&n), "unexpected truncation {n}");
        assert!(bessel_j(n + 1, 0.1).unwrap().abs() < 1e-12);
        assert!(slit_truncation(0.6, 1e-12).is_err());
    }

    #[test]
    fn window_checks() {
        let s = slit(0.1, 4);
        assert!(in_paraxial_window(&s, 14.9));
        assert!(in_paraxial_window(&s, -15.0));
        assert!(!in_paraxial_window(&s, 15.1));
    }

    proptest! {
        #[test]
        fn parallelogram_holds_generally(
            eps in -0.3f64..0.3,
            a in 0.0f64..3.0,
            x in -5.0f64..5.0,
        ) {
            let pair = ShiftedPair { base: decomp(1.0, eps, 1.0), a };
            let lhs = shifted_sum(&pair, x).norm_sqr() + shifted_diff(&pair, x).norm_sqr();
            let p1 = reconstruct(&pair.base, x + 0.5 * a).norm_sqr();
            let p2 = reconstruct(&pair.base, x - 0.5 * a).norm_sqr();
            prop_assert!((lhs - 2.0 * (p1 + p2)).abs() <= 1e-10);
        }

        #[test]
        fn quantization_closure(
            l in 0.5f64..10.0,
            u in 1u32..20,
            v in 1u32..20,
            hbar in 0.5f64..2.0,
            mass in 0.5f64..2.0,
        ) {
            let c = PhysicalConstants::new(hbar, mass, 0.0).unwrap();
            let (kx, ky, e) = quantized_wavenumbers(l, u, v, &c).unwrap();
            let lhs = PI * PI / (l * l) * ((u * u + v * v) as f64);
            let rhs = 2.0 * mass * e / (hbar * hbar);
            prop_assert!((lhs - rhs).abs() <= 1e-14 * lhs.abs());
            prop_assert!((kx * kx + ky * ky - 2.0 * mass * e / (hbar * hbar)).abs() <= 1e-12 * lhs);
        }

        #[test]
        fn chirp_reflection(n in -20i32..20) {
            let s = slit(0.2, 8);
            prop_assert_eq!(sideband_chirp(&s, n), -sideband_chirp(&s, -n - 1));
        }
    }
}
