//! The adaptive-quadrature phase against an independent closed form: the
//! arctan antiderivative with branch-cut continuation. The library never
//! uses this form, so agreement here certifies the numerical path.

mod common;

use bohmspec::ermakov::WeakModBranch;
use bohmspec::phase::{phase_exact, phase_profile_exact};
use bohmspec::build_grid;
use common::closed_form_phase;
use std::f64::consts::PI;

#[test]
fn quadrature_matches_antiderivative_across_cuts() {
    // The sample range covers several tan singularities of the closed form.
    for &(a, eps, k, s0) in &[
        (1.0, 0.1, 1.0, 0.0),
        (2.0, 0.05, 1.3, 0.7),
        (0.5, -0.3, 0.9, -2.0),
        (1.0, 0.45, 2.0, 0.0),
    ] {
        let branch = WeakModBranch::with_derived_current(a, eps, k, s0, 1.0, false).unwrap();
        let mut worst = 0.0f64;
        for i in 0..141 {
            let x = -7.0 + 0.1 * i as f64;
            let numeric = phase_exact(&branch, 0.0, x, 1e-13).unwrap();
            let exact = closed_form_phase(a, eps, k, branch.c, s0, 0.0, x);
            worst = worst.max((numeric - exact).abs());
        }
        assert!(
            worst <= 1e-11,
            "a={a}, eps={eps}, k={k}: worst gap {worst}"
        );
    }
}

#[test]
fn cumulative_profile_matches_antiderivative() {
    let branch = WeakModBranch::with_derived_current(1.0, 0.2, 1.0, 0.0, 1.0, false).unwrap();
    let grid = build_grid(-2.0 * PI, 2.0 * PI, 801).unwrap();
    let profile = phase_profile_exact(&branch, grid, 1e-12).unwrap();
    let mut worst = 0.0f64;
    for (i, x) in grid.samples().enumerate() {
        let exact = closed_form_phase(1.0, 0.2, 1.0, branch.c, 0.0, -2.0 * PI, x);
        worst = worst.max((profile.s_values[i] - exact).abs());
    }
    assert!(worst <= 1e-11, "worst profile gap {worst}");
}

#[test]
fn nonzero_anchor_shifts_consistently() {
    let branch = WeakModBranch::with_derived_current(1.5, 0.3, 1.1, 0.4, 1.0, false).unwrap();
    let (x0, x1) = (1.3, 9.8);
    let numeric = phase_exact(&branch, x0, x1, 1e-13).unwrap();
    let exact = closed_form_phase(1.5, 0.3, 1.1, branch.c, 0.4, x0, x1);
    assert!((numeric - exact).abs() <= 1e-11);
}
