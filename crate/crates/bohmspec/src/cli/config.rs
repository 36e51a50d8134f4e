//! Scenario configuration: one strict JSON object per file, no comments,
//! unknown keys rejected with their key path. Defaults: `hbar = mass = 1`,
//! `potential = 0`, `s0 = 0`, tolerances `1e-12`.

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use serde_json::{Map, Value};
use std::collections::BTreeSet;

pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct BranchScenario {
    pub constants: PhysicalConstants,
    pub a: f64,
    pub eps: f64,
    pub k: f64,
    pub s0: f64,
    pub grid: (f64, f64, usize),
    /// Quadrature budget for the exact phase column.
    pub tol: f64,
    pub out: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumScenario {
    pub constants: PhysicalConstants,
    pub a: f64,
    pub eps: f64,
    pub k: f64,
    pub s0: f64,
    /// Truncation tolerance for the sideband window.
    pub tol: f64,
    pub out: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceScenario {
    pub constants: PhysicalConstants,
    pub e1: f64,
    pub e2: f64,
    pub c1: f64,
    pub c2: f64,
    pub k1: f64,
    pub k2: f64,
    pub a: f64,
    pub eps: f64,
    /// Optional override of the mean-current convention `(C1 + C2)/2`.
    pub c: Option<f64>,
    pub rho0: f64,
    pub rho0_prime: f64,
    pub grid: (f64, f64, usize),
    pub out: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedScenario {
    pub constants: PhysicalConstants,
    pub a: f64,
    pub eps: f64,
    pub k: f64,
    pub s0: f64,
    /// Source separation between the two displaced copies.
    pub separation: f64,
    pub tol: f64,
    pub grid: (f64, f64, usize),
    pub out: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApertureScenario {
    pub constants: PhysicalConstants,
    pub l: f64,
    pub u: u32,
    pub v: u32,
    pub eps_x: f64,
    pub eps_y: f64,
    pub tol: f64,
    /// Sample specification applied to both axes (long-form output).
    pub grid: (f64, f64, usize),
    pub out: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlitScenario {
    pub constants: PhysicalConstants,
    pub r_curv: f64,
    pub k_x: f64,
    pub k_y: f64,
    pub a: f64,
    pub eps: f64,
    /// Explicit truncation order; derived from `tol` when absent.
    pub n_trunc: Option<i32>,
    pub tol: f64,
    pub grid: (f64, f64, usize),
    pub out: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyScenario {
    pub out: Option<String>,
}

/// A parsed, validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioConfig {
    Branch(BranchScenario),
    Spectrum(SpectrumScenario),
    Difference(DifferenceScenario),
    Shifted(ShiftedScenario),
    Aperture(ApertureScenario),
    Slit(SlitScenario),
    Verify(VerifyScenario),
}

impl ScenarioConfig {
    pub fn kind(&self) -> &'static str {
        match self {
            ScenarioConfig::Branch(_) => "branch",
            ScenarioConfig::Spectrum(_) => "spectrum",
            ScenarioConfig::Difference(_) => "difference",
            ScenarioConfig::Shifted(_) => "shifted",
            ScenarioConfig::Aperture(_) => "aperture",
            ScenarioConfig::Slit(_) => "slit",
            ScenarioConfig::Verify(_) => "verify",
        }
    }

    pub fn out(&self) -> Option<&str> {
        match self {
            ScenarioConfig::Branch(s) => s.out.as_deref(),
            ScenarioConfig::Spectrum(s) => s.out.as_deref(),
            ScenarioConfig::Difference(s) => s.out.as_deref(),
            ScenarioConfig::Shifted(s) => s.out.as_deref(),
            ScenarioConfig::Aperture(s) => s.out.as_deref(),
            ScenarioConfig::Slit(s) => s.out.as_deref(),
            ScenarioConfig::Verify(s) => s.out.as_deref(),
        }
    }

    /// Apply a command-line tolerance override where the scenario has one.
    pub fn override_tol(&mut self, tol: f64) -> Result<()> {
        if !(tol > 0.0) {
            return Err(Error::config("--tol", format!("must be positive, got {tol}")));
        }
        match self {
            ScenarioConfig::Branch(s) => s.tol = tol,
            ScenarioConfig::Spectrum(s) => s.tol = tol,
            ScenarioConfig::Shifted(s) => s.tol = tol,
            ScenarioConfig::Aperture(s) => s.tol = tol,
            ScenarioConfig::Slit(s) => s.tol = tol,
            ScenarioConfig::Difference(_) | ScenarioConfig::Verify(_) => {}
        }
        Ok(())
    }
}

/// Tracks which keys of one object were consumed, so leftovers can be
/// reported by path.
struct Obj {
    map: Map<String, Value>,
    consumed: BTreeSet<String>,
    path: String,
}

impl Obj {
    fn from_value(value: Value, path: &str) -> Result<Self> {
        match value {
            Value::Object(map) => Ok(Self {
                map,
                consumed: BTreeSet::new(),
                path: path.to_string(),
            }),
            other => Err(Error::config(
                path_or_doc(path),
                format!("expected an object, got {}", type_name(&other)),
            )),
        }
    }

    fn key_path(&self, key: &str) -> String {
        if self.path.is_empty() {
            key.to_string()
        } else {
            format!("{}.{key}", self.path)
        }
    }

    fn take(&mut self, key: &str) -> Option<Value> {
        let value = self.map.get(key).cloned();
        if value.is_some() {
            self.consumed.insert(key.to_string());
        }
        value
    }

    fn req_f64(&mut self, key: &str) -> Result<f64> {
        match self.take(key) {
            None => Err(Error::config(self.key_path(key), "missing required key")),
            Some(v) => self.as_f64(key, &v),
        }
    }

    fn opt_f64(&mut self, key: &str, default: f64) -> Result<f64> {
        match self.take(key) {
            None => Ok(default),
            Some(v) => self.as_f64(key, &v),
        }
    }

    fn as_f64(&self, key: &str, v: &Value) -> Result<f64> {
        v.as_f64().ok_or_else(|| {
            Error::config(
                self.key_path(key),
                format!("expected a number, got {}", type_name(v)),
            )
        })
    }

    fn req_mode(&mut self, key: &str) -> Result<u32> {
        let v = self
            .take(key)
            .ok_or_else(|| Error::config(self.key_path(key), "missing required key"))?;
        let n = v.as_u64().ok_or_else(|| {
            Error::config(
                self.key_path(key),
                format!("expected a positive integer, got {}", type_name(&v)),
            )
        })?;
        if n < 1 || n > u32::MAX as u64 {
            return Err(Error::config(
                self.key_path(key),
                format!("mode index must be at least 1, got {n}"),
            ));
        }
        Ok(n as u32)
    }

    fn opt_string(&mut self, key: &str) -> Result<Option<String>> {
        match self.take(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s)),
            Some(v) => Err(Error::config(
                self.key_path(key),
                format!("expected a string, got {}", type_name(&v)),
            )),
        }
    }

    /// Grid specification `[x0, x1, n]` with integer `n`.
    fn req_grid(&mut self, key: &str) -> Result<(f64, f64, usize)> {
        let v = self
            .take(key)
            .ok_or_else(|| Error::config(self.key_path(key), "missing required key"))?;
        let arr = v.as_array().ok_or_else(|| {
            Error::config(
                self.key_path(key),
                format!("expected [x0, x1, n], got {}", type_name(&v)),
            )
        })?;
        if arr.len() != 3 {
            return Err(Error::config(
                self.key_path(key),
                format!("expected exactly 3 entries [x0, x1, n], got {}", arr.len()),
            ));
        }
        let x0 = arr[0].as_f64().ok_or_else(|| {
            Error::config(format!("{}[0]", self.key_path(key)), "expected a number")
        })?;
        let x1 = arr[1].as_f64().ok_or_else(|| {
            Error::config(format!("{}[1]", self.key_path(key)), "expected a number")
        })?;
        let n = arr[2].as_u64().ok_or_else(|| {
            Error::config(
                format!("{}[2]", self.key_path(key)),
                "expected an integer sample count",
            )
        })?;
        if n < 2 {
            return Err(Error::config(
                format!("{}[2]", self.key_path(key)),
                format!("need at least 2 samples, got {n}"),
            ));
        }
        if !(x1 > x0) {
            return Err(Error::config(
                self.key_path(key),
                format!("need x1 > x0, got [{x0}, {x1}]"),
            ));
        }
        Ok((x0, x1, n as usize))
    }

    fn positive(&self, key: &str, value: f64) -> Result<f64> {
        if value > 0.0 {
            Ok(value)
        } else {
            Err(Error::config(
                self.key_path(key),
                format!("must be positive, got {value}"),
            ))
        }
    }

    fn modulation(&self, key: &str, value: f64) -> Result<f64> {
        if value.abs() < 0.5 {
            Ok(value)
        } else {
            Err(Error::config(
                self.key_path(key),
                format!("modulation must satisfy |eps| < 0.5, got {value}"),
            ))
        }
    }

    /// Reject any keys that were never consumed.
    fn finish(self) -> Result<()> {
        for key in self.map.keys() {
            if !self.consumed.contains(key) {
                return Err(Error::config(self.key_path(key), "unknown key"));
            }
        }
        Ok(())
    }
}

fn type_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn path_or_doc(path: &str) -> &str {
    if path.is_empty() {
        "<document>"
    } else {
        path
    }
}

fn parse_constants(obj: &mut Obj) -> Result<PhysicalConstants> {
    match obj.take("constants") {
        None => Ok(PhysicalConstants::natural()),
        Some(v) => {
            let mut inner = Obj::from_value(v, &obj.key_path("constants"))?;
            let hbar = inner.opt_f64("hbar", 1.0)?;
            let mass = inner.opt_f64("mass", 1.0)?;
            let potential = inner.opt_f64("potential", 0.0)?;
            inner.finish()?;
            PhysicalConstants::new(hbar, mass, potential).map_err(|e| {
                Error::config(obj.key_path("constants"), e.to_string())
            })
        }
    }
}

/// Parse and validate one scenario document.
pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        Error::config("<document>", format!("not a valid object document: {e}"))
    })?;
    let mut obj = Obj::from_value(value, "")?;
    let kind = match obj.take("kind") {
        None => return Err(Error::config("kind", "missing required key")),
        Some(Value::String(s)) => s,
        Some(v) => {
            return Err(Error::config(
                "kind",
                format!("expected a string, got {}", type_name(&v)),
            ))
        }
    };

    match kind.as_str() {
        "branch" => {
            let constants = parse_constants(&mut obj)?;
            let a = obj.opt_f64("a", 1.0).and_then(|v| obj.positive("a", v))?;
            let eps = obj.req_f64("eps").and_then(|v| obj.modulation("eps", v))?;
            let k = obj.req_f64("k").and_then(|v| obj.positive("k", v))?;
            let s0 = obj.opt_f64("s0", 0.0)?;
            let grid = obj.req_grid("grid")?;
            let tol = obj
                .opt_f64("tol", DEFAULT_TOL)
                .and_then(|v| obj.positive("tol", v))?;
            let out = obj.opt_string("out")?;
            obj.finish()?;
            Ok(ScenarioConfig::Branch(BranchScenario {
                constants,
                a,
                eps,
                k,
                s0,
                grid,
                tol,
                out,
            }))
        }
        "spectrum" => {
            let constants = parse_constants(&mut obj)?;
            let a = obj.opt_f64("a", 1.0).and_then(|v| obj.positive("a", v))?;
            let eps = obj.req_f64("eps").and_then(|v| obj.modulation("eps", v))?;
            let k = obj.req_f64("k").and_then(|v| obj.positive("k", v))?;
            let s0 = obj.opt_f64("s0", 0.0)?;
            let tol = obj
                .opt_f64("tol", DEFAULT_TOL)
                .and_then(|v| obj.positive("tol", v))?;
            let out = obj.opt_string("out")?;
            obj.finish()?;
            Ok(ScenarioConfig::Spectrum(SpectrumScenario {
                constants,
                a,
                eps,
                k,
                s0,
                tol,
                out,
            }))
        }
        "difference" => {
            let constants = parse_constants(&mut obj)?;
            let e1 = obj.req_f64("e1")?;
            let e2 = obj.req_f64("e2")?;
            let c1 = obj.req_f64("c1")?;
            let c2 = obj.req_f64("c2")?;
            let k1 = obj.req_f64("k1").and_then(|v| obj.positive("k1", v))?;
            let k2 = obj.req_f64("k2").and_then(|v| obj.positive("k2", v))?;
            let a = obj.opt_f64("a", 1.0).and_then(|v| obj.positive("a", v))?;
            let eps = obj.req_f64("eps").and_then(|v| obj.modulation("eps", v))?;
            let c = match obj.take("c") {
                None => None,
                Some(v) => Some(obj.as_f64("c", &v)?),
            };
            let rho0 = obj.opt_f64("rho0", 0.0)?;
            let rho0_prime = obj.opt_f64("rho0_prime", 0.0)?;
            let grid = obj.req_grid("grid")?;
            let out = obj.opt_string("out")?;
            obj.finish()?;
            Ok(ScenarioConfig::Difference(DifferenceScenario {
                constants,
                e1,
                e2,
                c1,
                c2,
                k1,
                k2,
                a,
                eps,
                c,
                rho0,
                rho0_prime,
                grid,
                out,
            }))
        }
        "shifted" => {
            let constants = parse_constants(&mut obj)?;
            let a = obj.opt_f64("a", 1.0).and_then(|v| obj.positive("a", v))?;
            let eps = obj.req_f64("eps").and_then(|v| obj.modulation("eps", v))?;
            let k = obj.req_f64("k").and_then(|v| obj.positive("k", v))?;
            let s0 = obj.opt_f64("s0", 0.0)?;
            let separation = obj.req_f64("separation")?;
            let tol = obj
                .opt_f64("tol", DEFAULT_TOL)
                .and_then(|v| obj.positive("tol", v))?;
            let grid = obj.req_grid("grid")?;
            let out = obj.opt_string("out")?;
            obj.finish()?;
            Ok(ScenarioConfig::Shifted(ShiftedScenario {
                constants,
                a,
                eps,
                k,
                s0,
                separation,
                tol,
                grid,
                out,
            }))
        }
        "aperture" => {
            let constants = parse_constants(&mut obj)?;
            let l = obj.req_f64("l").and_then(|v| obj.positive("l", v))?;
            let u = obj.req_mode("u")?;
            let v = obj.req_mode("v")?;
            let eps_x = obj
                .req_f64("eps_x")
                .and_then(|val| obj.modulation("eps_x", val))?;
            let eps_y = obj
                .req_f64("eps_y")
                .and_then(|val| obj.modulation("eps_y", val))?;
            let tol = obj
                .opt_f64("tol", DEFAULT_TOL)
                .and_then(|val| obj.positive("tol", val))?;
            let grid = obj.req_grid("grid")?;
            let out = obj.opt_string("out")?;
            obj.finish()?;
            Ok(ScenarioConfig::Aperture(ApertureScenario {
                constants,
                l,
                u,
                v,
                eps_x,
                eps_y,
                tol,
                grid,
                out,
            }))
        }
        "slit" => {
            let constants = parse_constants(&mut obj)?;
            let r_curv = obj
                .req_f64("r_curv")
                .and_then(|v| obj.positive("r_curv", v))?;
            let k_x = obj.req_f64("k_x")?;
            if k_x < 0.0 {
                return Err(Error::config("k_x", format!("must be nonnegative, got {k_x}")));
            }
            let k_y = obj.req_f64("k_y").and_then(|v| obj.positive("k_y", v))?;
            let a = obj.opt_f64("a", 1.0).and_then(|v| obj.positive("a", v))?;
            let eps = obj.req_f64("eps").and_then(|v| obj.modulation("eps", v))?;
            let n_trunc = match obj.take("n_trunc") {
                None => None,
                Some(v) => {
                    let n = v.as_i64().ok_or_else(|| {
                        Error::config("n_trunc", format!("expected an integer, got {}", type_name(&v)))
                    })?;
                    if !(0..=64).contains(&n) {
                        return Err(Error::config(
                            "n_trunc",
                            format!("must lie in 0..=64, got {n}"),
                        ));
                    }
                    Some(n as i32)
                }
            };
            let tol = obj
                .opt_f64("tol", DEFAULT_TOL)
                .and_then(|v| obj.positive("tol", v))?;
            let grid = obj.req_grid("grid")?;
            let out = obj.opt_string("out")?;
            obj.finish()?;
            Ok(ScenarioConfig::Slit(SlitScenario {
                constants,
                r_curv,
                k_x,
                k_y,
                a,
                eps,
                n_trunc,
                tol,
                grid,
                out,
            }))
        }
        "verify" => {
            let out = obj.opt_string("out")?;
            obj.finish()?;
            Ok(ScenarioConfig::Verify(VerifyScenario { out }))
        }
        other => Err(Error::config(
            "kind",
            format!(
                "unknown scenario kind `{other}`; expected one of branch, spectrum, \
                 difference, shifted, aperture, slit, verify"
            ),
        )),
    }
}
