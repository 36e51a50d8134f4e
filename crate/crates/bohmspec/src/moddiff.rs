//! Near-degenerate branch pairs and their difference dynamics.
//!
//! Two stationary branches with nearly equal energies decompose into mean
//! and difference variables, `R_{1,2} = R_m ± rho`, `S_{1,2} = S_m ± dS/2`.
//! To first order in the modulation the difference amplitude obeys a forced
//! Mathieu–Hill equation
//!
//! ```text
//! rho'' + [4 k_m^2 + 3 eps k_m^2 cos(2 k_m x)] rho = F_C(x) - F_E(x),
//! ```
//!
//! where the forcings encode the current and energy mismatches:
//!
//! ```text
//! F_C = (C dC / hbar^2 A^{3/2}) [1 - 3eps/4 + (3eps/4) cos(2 k_m x)],
//! F_E = (m dE / hbar^2) sqrt(A)  [1 + eps/4  - (eps/4)  cos(2 k_m x)].
//! ```
//!
//! The phase difference follows from the continuity mismatch,
//!
//! ```text
//! dS' = (dC/A) [1 - eps/2 + (eps/2) cos(2 k_m x)]
//!     - (4C/A^{3/2}) [1 - 3eps/4 + (3eps/4) cos(2 k_m x)] rho.
//! ```
//!
//! The system `(rho, rho', dS)` is integrated with fixed-step RK4; the exact
//! two-branch construction (closed-form amplitudes plus per-branch phase
//! quadratures) serves as the ground-truth oracle for the linearization.

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::grid::Grid1D;
use crate::phase::adaptive_simpson;

/// Relative wave-number split beyond which the near-degeneracy diagnostic
/// trips: `|k1 - k2| / k_m <= 0.1`.
pub const NEAR_DEGENERACY_LIMIT: f64 = 0.1;

/// Spacing guard for the fixed-step integrator: `h * k_m <= 0.05`.
pub const MAX_STEP_PER_WAVENUMBER: f64 = 0.05;

/// Two stationary branches described by their energies, currents, and wave
/// numbers, sharing one set of physical constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPair {
    pub e1: f64,
    pub e2: f64,
    pub c1: f64,
    pub c2: f64,
    pub k1: f64,
    pub k2: f64,
    pub constants: PhysicalConstants,
}

impl BranchPair {
    pub fn new(
        e1: f64,
        e2: f64,
        c1: f64,
        c2: f64,
        k1: f64,
        k2: f64,
        constants: PhysicalConstants,
    ) -> Result<Self> {
        if !(k1 > 0.0) || !(k2 > 0.0) {
            return Err(Error::domain(format!(
                "wave numbers must be positive, got k1={k1}, k2={k2}"
            )));
        }
        for (name, e) in [("e1", e1), ("e2", e2)] {
            if e <= constants.potential {
                return Err(Error::domain(format!(
                    "{name}={e} must exceed the potential {}",
                    constants.potential
                )));
            }
        }
        if !c1.is_finite() || !c2.is_finite() {
            return Err(Error::domain("currents must be finite"));
        }
        Ok(Self {
            e1,
            e2,
            c1,
            c2,
            k1,
            k2,
            constants,
        })
    }

    /// Diagnostic: the wave-number split is small against the mean.
    pub fn near_degenerate(&self) -> bool {
        let k_m = 0.5 * (self.k1 + self.k2);
        (self.k1 - self.k2).abs() / k_m <= NEAR_DEGENERACY_LIMIT
    }
}

/// Mean/difference parameters of a pair together with the mean-branch
/// envelope `(a, eps)` the difference dynamics is linearized around.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanDiffParams {
    pub k_m: f64,
    pub dk: f64,
    pub e_m: f64,
    pub de: f64,
    /// Mean-branch current; defaults to `(C1 + C2)/2`, overridable via
    /// [`MeanDiffParams::with_mean_current`].
    pub c: f64,
    pub dc: f64,
    pub a: f64,
    pub eps: f64,
    pub constants: PhysicalConstants,
}

impl MeanDiffParams {
    /// Replace the mean-current convention with an explicit value.
    pub fn with_mean_current(mut self, c: f64) -> Self {
        self.c = c;
        self
    }
}

/// Arithmetic mean/difference split of a pair: `k_m = (k1+k2)/2`,
/// `dk = k1-k2`, likewise for energy and current, with the mean current
/// set to `(C1+C2)/2`.
pub fn decompose_pair(pair: &BranchPair, a: f64, eps: f64) -> Result<MeanDiffParams> {
    let e_m = 0.5 * (pair.e1 + pair.e2);
    if e_m <= pair.constants.potential {
        return Err(Error::domain(format!(
            "mean energy {e_m} must exceed the potential"
        )));
    }
    if !(a > 0.0) {
        return Err(Error::domain(format!("envelope must be positive, got {a}")));
    }
    if !(eps.abs() < 0.5) {
        return Err(Error::domain(format!(
            "mean modulation must satisfy |eps| < 0.5, got {eps}"
        )));
    }
    Ok(MeanDiffParams {
        k_m: 0.5 * (pair.k1 + pair.k2),
        dk: pair.k1 - pair.k2,
        e_m,
        de: pair.e1 - pair.e2,
        c: 0.5 * (pair.c1 + pair.c2),
        dc: pair.c1 - pair.c2,
        a,
        eps,
        constants: pair.constants,
    })
}

/// Current-mismatch forcing `F_C(x)`.
pub fn forcing_current(params: &MeanDiffParams, x: f64) -> f64 {
    let h2 = params.constants.hbar * params.constants.hbar;
    let base = params.c * params.dc / (h2 * params.a.powf(1.5));
    let e = params.eps;
    base * (1.0 - 0.75 * e + 0.75 * e * (2.0 * params.k_m * x).cos())
}

/// Energy-mismatch forcing `F_E(x)`. Identically zero in the
/// energy-coherent sector `dE = 0`.
pub fn forcing_energy(params: &MeanDiffParams, x: f64) -> f64 {
    let h2 = params.constants.hbar * params.constants.hbar;
    let base = params.constants.mass * params.de / h2 * params.a.sqrt();
    let e = params.eps;
    base * (1.0 + 0.25 * e - 0.25 * e * (2.0 * params.k_m * x).cos())
}

/// Periodic stiffness `4 k_m^2 + 3 eps k_m^2 cos(2 k_m x)` of the
/// difference oscillator.
pub fn hill_coefficient(params: &MeanDiffParams, x: f64) -> f64 {
    let k2 = params.k_m * params.k_m;
    4.0 * k2 + 3.0 * params.eps * k2 * (2.0 * params.k_m * x).cos()
}

/// First-order phase-difference rate `dS'(x)` given the local difference
/// amplitude `rho`: a pure current-mismatch term plus the rho-coupled term.
pub fn phase_difference_rate(params: &MeanDiffParams, x: f64, rho: f64) -> f64 {
    let e = params.eps;
    let c2 = (2.0 * params.k_m * x).cos();
    let current_term = params.dc / params.a * (1.0 - 0.5 * e + 0.5 * e * c2);
    let coupling = 4.0 * params.c / params.a.powf(1.5) * (1.0 - 0.75 * e + 0.75 * e * c2);
    current_term - coupling * rho
}

/// Difference fields sampled along a grid. `amplitude_bounded` records the
/// near-degeneracy validity check `max |rho| <= sqrt(A)/2`; it is
/// diagnostic, not an error.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceSolution {
    pub grid: Grid1D,
    pub rho: Vec<f64>,
    pub rho_prime: Vec<f64>,
    pub ds: Vec<f64>,
    pub amplitude_bounded: bool,
}

/// Integrate the forced Mathieu–Hill system `(rho, rho', dS)` with
/// fixed-step fourth-order Runge–Kutta over the grid, starting from
/// `(rho0, rho0_prime, 0)`. The grid must satisfy `h * k_m <= 0.05`.
pub fn integrate_difference(
    params: &MeanDiffParams,
    rho0: f64,
    rho0_prime: f64,
    grid: Grid1D,
) -> Result<DifferenceSolution> {
    if grid.spacing() * params.k_m > MAX_STEP_PER_WAVENUMBER {
        return Err(Error::grid(format!(
            "step {:.3e} too coarse for k_m = {}: require h*k_m <= {MAX_STEP_PER_WAVENUMBER}",
            grid.spacing(),
            params.k_m
        )));
    }

    let deriv = |x: f64, y: [f64; 3]| -> [f64; 3] {
        [
            y[1],
            forcing_current(params, x) - forcing_energy(params, x)
                - hill_coefficient(params, x) * y[0],
            phase_difference_rate(params, x, y[0]),
        ]
    };

    let n = grid.n();
    let mut rho = Vec::with_capacity(n);
    let mut rho_prime = Vec::with_capacity(n);
    let mut ds = Vec::with_capacity(n);
    let mut y = [rho0, rho0_prime, 0.0];
    rho.push(y[0]);
    rho_prime.push(y[1]);
    ds.push(y[2]);
    for i in 1..n {
        let x = grid.sample(i - 1);
        let h = grid.sample(i) - x;
        let k1 = deriv(x, y);
        let k2 = deriv(x + 0.5 * h, step(y, 0.5 * h, k1));
        let k3 = deriv(x + 0.5 * h, step(y, 0.5 * h, k2));
        let k4 = deriv(x + h, step(y, h, k3));
        for j in 0..3 {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        rho.push(y[0]);
        rho_prime.push(y[1]);
        ds.push(y[2]);
    }

    let bound = 0.5 * params.a.sqrt();
    let amplitude_bounded = rho.iter().all(|r| r.abs() <= bound);
    Ok(DifferenceSolution {
        grid,
        rho,
        rho_prime,
        ds,
        amplitude_bounded,
    })
}

fn step(y: [f64; 3], h: f64, dy: [f64; 3]) -> [f64; 3] {
    [y[0] + h * dy[0], y[1] + h * dy[1], y[2] + h * dy[2]]
}

/// Ground truth for the difference dynamics: build both branches from their
/// closed forms `R_j^2 = A (1 + eps_j sin^2(k_j x))` and return
/// `rho = (R1 - R2)/2`, its analytic derivative, and `dS` from the two exact
/// phase quadratures, all sampled on the grid. Both branches must satisfy
/// the Wronskian constraint relating `C_j` to `(A, eps_j, k_j)` (either sign
/// of the current is admissible).
pub fn exact_difference_oracle(
    pair: &BranchPair,
    a: f64,
    eps1: f64,
    eps2: f64,
    grid: Grid1D,
) -> Result<DifferenceSolution> {
    if !(a > 0.0) {
        return Err(Error::domain(format!("envelope must be positive, got {a}")));
    }
    let hbar = pair.constants.hbar;
    for (name, c, k, eps) in [("branch 1", pair.c1, pair.k1, eps1), ("branch 2", pair.c2, pair.k2, eps2)] {
        let c2_expected = (hbar * k * a) * (hbar * k * a) * (1.0 + eps);
        if (c * c - c2_expected).abs() > 1e-9 * c2_expected.abs().max(1.0) {
            return Err(Error::domain(format!(
                "{name} violates the Wronskian constraint: C^2 = {:.6e}, expected {:.6e}",
                c * c,
                c2_expected
            )));
        }
    }

    let amp = |eps: f64, k: f64, x: f64| -> f64 {
        let s = (k * x).sin();
        (a * (1.0 + eps * s * s)).sqrt()
    };
    let amp_prime = |eps: f64, k: f64, x: f64| -> f64 {
        let (s, c) = (k * x).sin_cos();
        a * eps * k * s * c / amp(eps, k, x)
    };
    let rate = |x: f64| -> f64 {
        let r1 = amp(eps1, pair.k1, x);
        let r2 = amp(eps2, pair.k2, x);
        pair.c1 / (r1 * r1) - pair.c2 / (r2 * r2)
    };

    let n = grid.n();
    let per_interval = (1e-12 / (n - 1) as f64).max(1e-15);
    let mut rho = Vec::with_capacity(n);
    let mut rho_prime = Vec::with_capacity(n);
    let mut ds = Vec::with_capacity(n);
    let mut acc = 0.0;
    for i in 0..n {
        let x = grid.sample(i);
        rho.push(0.5 * (amp(eps1, pair.k1, x) - amp(eps2, pair.k2, x)));
        rho_prime.push(0.5 * (amp_prime(eps1, pair.k1, x) - amp_prime(eps2, pair.k2, x)));
        if i > 0 {
            acc += adaptive_simpson(rate, grid.sample(i - 1), x, per_interval)?;
        }
        ds.push(acc);
    }

    let bound = 0.5 * a.sqrt();
    let amplitude_bounded = rho.iter().all(|r| r.abs() <= bound);
    Ok(DifferenceSolution {
        grid,
        rho,
        rho_prime,
        ds,
        amplitude_bounded,
    })
}

/// Residual of the difference energy equation
/// `S_m' dS'/m - (hbar^2/m) rho''/R_m + (hbar^2/m) rho R_m''/R_m^2 - dE`
/// at an interior grid index, with `rho''` and `dS'` from central finite
/// differences of the sampled solution and the mean-branch quantities in
/// closed form. Along integrated trajectories it is small, of order
/// `O(eps^2) + O(h^2)` relative to the equation's terms.
pub fn diff_hj_residual(
    params: &MeanDiffParams,
    sol: &DifferenceSolution,
    x_index: usize,
) -> Result<f64> {
    let n = sol.grid.n();
    if x_index == 0 || x_index + 1 >= n {
        return Err(Error::domain(format!(
            "diff_hj_residual needs an interior index, got {x_index} of {n}"
        )));
    }
    let h = sol.grid.spacing();
    let x = sol.grid.sample(x_index);
    let rho = sol.rho[x_index];
    let rho_2nd = (sol.rho[x_index + 1] - 2.0 * rho + sol.rho[x_index - 1]) / (h * h);
    let ds_rate = (sol.ds[x_index + 1] - sol.ds[x_index - 1]) / (2.0 * h);

    // Mean-branch envelope Q = A(1 + eps sin^2(k_m x)) and derivatives.
    let (s2, c2) = (2.0 * params.k_m * x).sin_cos();
    let s = (params.k_m * x).sin();
    let q = params.a * (1.0 + params.eps * s * s);
    let q1 = params.a * params.eps * params.k_m * s2;
    let q2 = 2.0 * params.a * params.eps * params.k_m * params.k_m * c2;
    let r_m = q.sqrt();
    let r_m_2nd = (2.0 * q * q2 - q1 * q1) / (4.0 * q * r_m);

    let m = params.constants.mass;
    let h2 = params.constants.hbar * params.constants.hbar;
    let s_m_rate = params.c / q;
    Ok(s_m_rate * ds_rate / m - h2 / m * rho_2nd / r_m + h2 / m * rho * r_m_2nd / (r_m * r_m)
        - params.de)
}
