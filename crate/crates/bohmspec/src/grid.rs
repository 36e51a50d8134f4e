//! Uniform 1D grids and sampled complex fields.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Uniform grid over `[x0, x1]` with `n >= 2` samples. The first sample is
/// exactly `x0` and the last exactly `x1`; interior samples are computed by
/// linear interpolation rather than repeated addition so the endpoints are
/// reproduced without accumulated roundoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    x0: f64,
    x1: f64,
    n: usize,
}

/// Uniform grid over `[x0, x1]`; rejects `n < 2` and `x1 <= x0`.
pub fn build_grid(x0: f64, x1: f64, n: usize) -> Result<Grid1D> {
    if !x0.is_finite() || !x1.is_finite() {
        return Err(Error::grid("grid endpoints must be finite"));
    }
    if x1 <= x0 {
        return Err(Error::grid(format!(
            "grid requires x1 > x0, got [{x0}, {x1}]"
        )));
    }
    if n < 2 {
        return Err(Error::grid(format!("grid requires n >= 2, got {n}")));
    }
    Ok(Grid1D { x0, x1, n })
}

impl Grid1D {
    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn x1(&self) -> f64 {
        self.x1
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spacing(&self) -> f64 {
        (self.x1 - self.x0) / (self.n - 1) as f64
    }

    /// i-th sample, `x0*(1-t) + x1*t` with `t = i/(n-1)`.
    pub fn sample(&self, i: usize) -> f64 {
        debug_assert!(i < self.n);
        let t = i as f64 / (self.n - 1) as f64;
        self.x0 * (1.0 - t) + self.x1 * t
    }

    pub fn samples(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|i| self.sample(i))
    }
}

/// Complex samples of a field on a [`Grid1D`], one value per grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField1D {
    pub grid: Grid1D,
    pub values: Vec<Complex64>,
}

impl ComplexField1D {
    pub fn new(grid: Grid1D, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::grid(format!(
                "field length {} does not match grid size {}",
                values.len(),
                grid.n()
            )));
        }
        Ok(Self { grid, values })
    }

    /// Sample a scalar function over the grid.
    pub fn from_fn(grid: Grid1D, mut f: impl FnMut(f64) -> Complex64) -> Self {
        let values = grid.samples().map(&mut f).collect();
        Self { grid, values }
    }
}

/// Sup-norm of the pointwise difference of two fields on identical grids.
pub fn max_abs_diff(f: &ComplexField1D, g: &ComplexField1D) -> Result<f64> {
    if f.grid != g.grid {
        return Err(Error::domain("max_abs_diff requires identical grids"));
    }
    Ok(f.values
        .iter()
        .zip(&g.values)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max))
}
