//! JSON run configuration.
//!
//! ```json
//! {
//!   "model": {"omega1": 1, "omega2": 2, "g1": 0.5, "g2": 0.5},
//!   "initial": {
//!     "mode1": {"n": 0.0, "alpha_re": 0.0, "alpha_im": 0.0},
//!     "mode2": {"T": 0.3}
//!   },
//!   "evolution": {"t_max": 50, "dt": 0.01},
//!   "critical": {"tol": 1e-3},
//!   "sweep": {"axes": [{"param": "n", "start": 0, "stop": 1, "step": 0.05}]},
//!   "optimize": {"g1": [0, 1], "g2": [0, 1], "grid": 21, "min_step": 1e-3}
//! }
//! ```
//!
//! Only `model` is required. A missing `initial` block means vacuum; each mode
//! block given must carry exactly one of `n` or `T`.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::control::{
    CouplingBox, OptimizeOptions, SweepAxis, SweepParam, DEFAULT_DT, DEFAULT_T_MAX,
};
use crate::error::{Error, Result};
use crate::gaussian::{thermal_occupation, InitialState};
use crate::model::ModelParams;
use crate::numerics::linalg::C64;

pub const DEFAULT_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionConfig {
    pub t_max: f64,
    pub dt: f64,
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        EvolutionConfig {
            t_max: DEFAULT_T_MAX,
            dt: DEFAULT_DT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalConfig {
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizeConfig {
    pub bounds: CouplingBox,
    pub options: OptimizeOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: ModelParams,
    pub initial: InitialState,
    pub evolution: EvolutionConfig,
    pub critical: Option<CriticalConfig>,
    pub sweep: Option<Vec<SweepAxis>>,
    pub optimize: Option<OptimizeConfig>,
}

impl RunConfig {
    pub fn new(model: ModelParams, initial: InitialState) -> Self {
        RunConfig {
            model,
            initial,
            evolution: EvolutionConfig::default(),
            critical: None,
            sweep: None,
            optimize: None,
        }
    }

    pub fn tol(&self) -> f64 {
        self.critical.map_or(DEFAULT_TOL, |c| c.tol)
    }

    /// Apply command-line overrides and re-check the affected invariants.
    pub fn with_overrides(
        mut self,
        t_max: Option<f64>,
        dt: Option<f64>,
        tol: Option<f64>,
    ) -> Result<Self> {
        if let Some(t) = t_max {
            self.evolution.t_max = t;
        }
        if let Some(d) = dt {
            self.evolution.dt = d;
        }
        check_evolution(&self.evolution)?;
        if let Some(tol) = tol {
            check_positive("critical.tol", tol)?;
            self.critical = Some(CriticalConfig { tol });
        }
        Ok(self)
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    model: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    initial: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    evolution: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    critical: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sweep: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    optimize: Option<Value>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelDoc {
    omega1: f64,
    omega2: f64,
    g1: f64,
    g2: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InitialDoc {
    #[serde(default)]
    mode1: Option<Value>,
    #[serde(default)]
    mode2: Option<Value>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModeDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<f64>,
    #[serde(default, rename = "T", skip_serializing_if = "Option::is_none")]
    temperature: Option<f64>,
    #[serde(default)]
    alpha_re: f64,
    #[serde(default)]
    alpha_im: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EvolutionDoc {
    #[serde(default = "default_t_max")]
    t_max: f64,
    #[serde(default = "default_dt")]
    dt: f64,
}

fn default_t_max() -> f64 {
    DEFAULT_T_MAX
}

fn default_dt() -> f64 {
    DEFAULT_DT
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

fn default_grid() -> usize {
    OptimizeOptions::default().grid_points
}

fn default_min_step() -> f64 {
    OptimizeOptions::default().min_step
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CriticalDoc {
    #[serde(default = "default_tol")]
    tol: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepDoc {
    axes: Vec<Value>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AxisDoc {
    param: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    start: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    stop: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    step: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OptimizeDoc {
    g1: [f64; 2],
    g2: [f64; 2],
    #[serde(default = "default_grid")]
    grid: usize,
    #[serde(default = "default_min_step")]
    min_step: f64,
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Validation {
        path: path.into(),
        message: message.into(),
    }
}

fn block<T: DeserializeOwned>(path: &str, value: Value) -> Result<T> {
    serde_json::from_value(value).map_err(|e| invalid(path, e.to_string()))
}

fn check_positive(path: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(path, format!("must be positive, got {v}")))
    }
}

fn check_evolution(e: &EvolutionConfig) -> Result<()> {
    check_positive("evolution.t_max", e.t_max)?;
    check_positive("evolution.dt", e.dt)?;
    if e.dt > e.t_max {
        return Err(invalid(
            "evolution.dt",
            format!("dt = {} exceeds t_max = {}", e.dt, e.t_max),
        ));
    }
    Ok(())
}

fn model_error(e: Error) -> Error {
    match e {
        Error::NonFiniteInput { name } => invalid(format!("model.{name}"), "must be finite"),
        Error::NonPositiveFrequency { name, value } => invalid(
            format!("model.{name}"),
            format!("frequency must be positive, got {value}"),
        ),
        Error::NegativeCoupling { name, value } => invalid(
            format!("model.{name}"),
            format!("coupling must be non-negative, got {value}"),
        ),
        other => other,
    }
}

/// Occupation and amplitude of one mode.
fn parse_mode(path: &str, value: Option<Value>, omega: f64) -> Result<(f64, C64)> {
    let Some(value) = value else {
        return Ok((0.0, C64::new(0.0, 0.0)));
    };
    let doc: ModeDoc = block(path, value)?;
    let n = match (doc.n, doc.temperature) {
        (Some(_), Some(_)) => {
            return Err(Error::Conflict {
                path: path.to_string(),
            })
        }
        (None, None) => return Err(invalid(path, "exactly one of `n` or `T` is required")),
        (Some(n), None) => {
            if !(n >= 0.0) || !n.is_finite() {
                return Err(invalid(
                    format!("{path}.n"),
                    format!("occupation must be non-negative, got {n}"),
                ));
            }
            n
        }
        (None, Some(t)) => {
            if !(t >= 0.0) || !t.is_finite() {
                return Err(invalid(
                    format!("{path}.T"),
                    format!("temperature must be non-negative, got {t}"),
                ));
            }
            thermal_occupation(omega, t)?
        }
    };
    Ok((n, C64::new(doc.alpha_re, doc.alpha_im)))
}

fn parse_axis(path: &str, value: Value) -> Result<SweepAxis> {
    let doc: AxisDoc = block(path, value)?;
    let param: SweepParam = doc.param.parse()?;
    match (doc.values, doc.start, doc.stop, doc.step) {
        (Some(values), None, None, None) => Ok(SweepAxis { param, values }),
        (None, Some(start), Some(stop), Some(step)) => SweepAxis::range(param, start, stop, step),
        _ => Err(invalid(
            path,
            "give either `values` or all of `start`, `stop`, `step`",
        )),
    }
}

fn check_bounds(path: &str, [lo, hi]: [f64; 2]) -> Result<(f64, f64)> {
    if !(lo >= 0.0 && lo <= hi) {
        return Err(invalid(
            path,
            format!("need 0 <= lo <= hi, got [{lo}, {hi}]"),
        ));
    }
    Ok((lo, hi))
}

pub fn parse_config(text: &str) -> Result<RunConfig> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if !root.is_object() {
        return Err(Error::Parse("top level must be a JSON object".into()));
    }
    let doc: Document = block("", root)?;

    let m: ModelDoc = block("model", doc.model)?;
    let model = ModelParams::new(m.omega1, m.omega2, m.g1, m.g2).map_err(model_error)?;

    let initial = match doc.initial {
        None => InitialState::vacuum(),
        Some(v) => {
            let init: InitialDoc = block("initial", v)?;
            let (n1, a1) = parse_mode("initial.mode1", init.mode1, model.omega1())?;
            let (n2, a2) = parse_mode("initial.mode2", init.mode2, model.omega2())?;
            InitialState::new(a1, a2, n1, n2).map_err(|e| invalid("initial", e.to_string()))?
        }
    };

    let evolution = match doc.evolution {
        None => EvolutionConfig::default(),
        Some(v) => {
            let e: EvolutionDoc = block("evolution", v)?;
            EvolutionConfig {
                t_max: e.t_max,
                dt: e.dt,
            }
        }
    };
    check_evolution(&evolution)?;

    let critical = match doc.critical {
        None => None,
        Some(v) => {
            let c: CriticalDoc = block("critical", v)?;
            check_positive("critical.tol", c.tol)?;
            Some(CriticalConfig { tol: c.tol })
        }
    };

    let sweep = match doc.sweep {
        None => None,
        Some(v) => {
            let s: SweepDoc = block("sweep", v)?;
            let axes = s
                .axes
                .into_iter()
                .enumerate()
                .map(|(i, a)| parse_axis(&format!("sweep.axes[{i}]"), a))
                .collect::<Result<Vec<_>>>()?;
            Some(axes)
        }
    };

    let optimize = match doc.optimize {
        None => None,
        Some(v) => {
            let o: OptimizeDoc = block("optimize", v)?;
            let bounds = CouplingBox {
                g1: check_bounds("optimize.g1", o.g1)?,
                g2: check_bounds("optimize.g2", o.g2)?,
            };
            if o.grid < 2 {
                return Err(invalid("optimize.grid", "need at least 2 points per axis"));
            }
            check_positive("optimize.min_step", o.min_step)?;
            Some(OptimizeConfig {
                bounds,
                options: OptimizeOptions {
                    grid_points: o.grid,
                    min_step: o.min_step,
                },
            })
        }
    };

    Ok(RunConfig {
        model,
        initial,
        evolution,
        critical,
        sweep,
        optimize,
    })
}

fn to_value<T: Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("config documents always serialize")
}

/// Canonical JSON form: occupations rather than temperatures, sweep axes as
/// explicit value lists.
pub fn serialize_config(config: &RunConfig) -> String {
    let p = &config.model;
    let mode = |k: usize| {
        to_value(ModeDoc {
            n: Some(config.initial.occupation()[k]),
            temperature: None,
            alpha_re: config.initial.alpha()[k].re,
            alpha_im: config.initial.alpha()[k].im,
        })
    };
    let mut initial = Map::new();
    initial.insert("mode1".into(), mode(0));
    initial.insert("mode2".into(), mode(1));
    let doc = Document {
        model: to_value(ModelDoc {
            omega1: p.omega1(),
            omega2: p.omega2(),
            g1: p.g1(),
            g2: p.g2(),
        }),
        initial: Some(Value::Object(initial)),
        evolution: Some(to_value(EvolutionDoc {
            t_max: config.evolution.t_max,
            dt: config.evolution.dt,
        })),
        critical: config
            .critical
            .map(|c| to_value(CriticalDoc { tol: c.tol })),
        sweep: config.sweep.as_ref().map(|axes| {
            to_value(SweepDoc {
                axes: axes
                    .iter()
                    .map(|a| {
                        to_value(AxisDoc {
                            param: a.param.name().to_string(),
                            values: Some(a.values.clone()),
                            start: None,
                            stop: None,
                            step: None,
                        })
                    })
                    .collect(),
            })
        }),
        optimize: config.optimize.map(|o| {
            to_value(OptimizeDoc {
                g1: [o.bounds.g1.0, o.bounds.g1.1],
                g2: [o.bounds.g2.0, o.bounds.g2.1],
                grid: o.options.grid_points,
                min_step: o.options.min_step,
            })
        }),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("config documents always serialize");
    s.push('\n');
    s
}
