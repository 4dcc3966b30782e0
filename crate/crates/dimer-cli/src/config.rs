//! JSON/flag configuration parsing and validation.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::Deserialize;

use dimer::{
    default_t_range, linspace, Category, Convention, DimerSpec, PairCouplings, DEFAULT_CLASS_TOL,
    DEFAULT_SOLVER_TOL,
};

use crate::error::{CliError, CliResult};

pub const DEFAULT_SEED: u64 = 42;

/// A scalar or a {min, max, n} range, as found under "B" and "T".
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum AxisSpec {
    Scalar(f64),
    Range {
        min: f64,
        max: f64,
        #[serde(default)]
        n: Option<usize>,
    },
}

impl AxisSpec {
    fn scalar(&self, what: &str) -> CliResult<f64> {
        match self {
            AxisSpec::Scalar(v) => Ok(*v),
            AxisSpec::Range { .. } => Err(CliError::usage(format!(
                "{what} must be a single number for this command"
            ))),
        }
    }

    fn axis(&self, what: &str, default_n: usize) -> CliResult<Vec<f64>> {
        match *self {
            AxisSpec::Scalar(v) => Ok(vec![v]),
            AxisSpec::Range { min, max, n } => {
                let n = n.unwrap_or(default_n);
                if n == 0 {
                    return Err(CliError::usage(format!("{what}.n must be at least 1")));
                }
                if !(min.is_finite() && max.is_finite()) || max < min {
                    return Err(CliError::usage(format!(
                        "{what} range [{min}, {max}] is invalid"
                    )));
                }
                Ok(linspace(min, max, n))
            }
        }
    }

    fn range(&self, what: &str) -> CliResult<(f64, f64)> {
        match *self {
            AxisSpec::Range { min, max, .. } => Ok((min, max)),
            AxisSpec::Scalar(_) => Err(CliError::usage(format!(
                "{what} must be a {{min, max}} range for this command"
            ))),
        }
    }
}

/// Parse a flag-style axis: "x" (scalar), "min:max" or "min:max:n".
pub fn parse_axis_flag(text: &str) -> CliResult<AxisSpec> {
    let parts: Vec<&str> = text.split(':').collect();
    let num = |s: &str| -> CliResult<f64> {
        s.parse::<f64>()
            .map_err(|_| CliError::usage(format!("invalid number {s:?} in {text:?}")))
    };
    match parts.as_slice() {
        [v] => Ok(AxisSpec::Scalar(num(v)?)),
        [lo, hi] => Ok(AxisSpec::Range {
            min: num(lo)?,
            max: num(hi)?,
            n: None,
        }),
        [lo, hi, n] => Ok(AxisSpec::Range {
            min: num(lo)?,
            max: num(hi)?,
            n: Some(
                n.parse::<usize>()
                    .map_err(|_| CliError::usage(format!("invalid count {n:?} in {text:?}")))?,
            ),
        }),
        _ => Err(CliError::usage(format!(
            "cannot parse axis {text:?} (use x, min:max or min:max:n)"
        ))),
    }
}

/// The "preset" JSON object: exactly one of the known model families.
#[derive(Debug, Clone, Deserialize)]
pub struct PresetSpec {
    #[serde(default)]
    pub heisenberg: Option<BTreeMap<String, f64>>,
    #[serde(default)]
    pub xy: Option<BTreeMap<String, f64>>,
    #[serde(default)]
    pub general: Option<BTreeMap<String, f64>>,
}

/// One model description inside a config (preset + category + field).
#[derive(Debug, Clone, Deserialize, Default)]
pub struct ModelSection {
    #[serde(default)]
    pub preset: Option<PresetSpec>,
    #[serde(default)]
    pub category: Option<String>,
    #[serde(default)]
    pub convention: Option<String>,
    #[serde(default, rename = "B")]
    pub b: Option<AxisSpec>,
}

/// Raw configuration file contents; every field optional so flags can fill
/// the gaps.
#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    #[serde(default)]
    pub command: Option<String>,
    #[serde(default)]
    pub preset: Option<PresetSpec>,
    #[serde(default)]
    pub category: Option<String>,
    #[serde(default)]
    pub convention: Option<String>,
    #[serde(default, rename = "B")]
    pub b: Option<AxisSpec>,
    #[serde(default, rename = "T")]
    pub t: Option<AxisSpec>,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub measure: Option<String>,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub specs: Option<Vec<ModelSection>>,
    #[serde(default)]
    pub format: Option<String>,
    #[serde(default)]
    pub out: Option<String>,
}

impl RawConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| {
            CliError::usage(format!(
                "config parse error at line {}, column {}: {e}",
                e.line(),
                e.column()
            ))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Concurrence,
    Negativity,
    Chsh,
}

impl Measure {
    pub fn as_str(self) -> &'static str {
        match self {
            Measure::Concurrence => "concurrence",
            Measure::Negativity => "negativity",
            Measure::Chsh => "chsh",
        }
    }
}

impl FromStr for Measure {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "concurrence" => Ok(Measure::Concurrence),
            "negativity" => Ok(Measure::Negativity),
            "chsh" => Ok(Measure::Chsh),
            other => Err(CliError::usage(format!(
                "unknown measure {other:?} (expected concurrence, negativity or chsh)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::usage(format!(
                "unknown format {other:?} (expected csv or json)"
            ))),
        }
    }
}

/// A fully validated unit of work.
#[derive(Debug, Clone)]
pub enum Job {
    Concurrence {
        spec: DimerSpec,
        b: f64,
        t: f64,
    },
    Diagram {
        spec: DimerSpec,
        b_axis: Vec<f64>,
        t_axis: Vec<f64>,
        measure: Measure,
    },
    Curve {
        spec: DimerSpec,
        b_axis: Vec<f64>,
        t_range: (f64, f64),
        tol: f64,
    },
    Classify {
        spec: DimerSpec,
        other: Option<DimerSpec>,
        tol: f64,
    },
    Dual {
        spec: DimerSpec,
    },
    Sample {
        spec: DimerSpec,
        n: usize,
        seed: u64,
    },
    Verify {
        seed: u64,
        samples: usize,
    },
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub job: Job,
    pub format: Format,
    pub out: String,
}

fn preset_param(map: &BTreeMap<String, f64>, key: &str, preset: &str) -> CliResult<f64> {
    map.get(key)
        .copied()
        .ok_or_else(|| CliError::usage(format!("preset {preset:?} requires parameter {key:?}")))
}

fn build_spec(
    preset: &PresetSpec,
    category: Option<&str>,
    convention: Option<&str>,
    field: f64,
) -> CliResult<DimerSpec> {
    let category = match category {
        Some(c) => Category::from_str(c).map_err(|e| CliError::usage(e.to_string()))?,
        None => Category::Symmetric,
    };
    let chosen = [
        preset.heisenberg.is_some(),
        preset.xy.is_some(),
        preset.general.is_some(),
    ]
    .iter()
    .filter(|p| **p)
    .count();
    if chosen != 1 {
        return Err(CliError::usage(
            "preset must name exactly one of heisenberg, xy or general".into(),
        ));
    }
    if let Some(p) = &preset.heisenberg {
        let j = preset_param(p, "J", "heisenberg")?;
        return DimerSpec::heisenberg(j, category, field).map_err(CliError::from_dimer);
    }
    if let Some(p) = &preset.xy {
        let gamma = preset_param(p, "gamma", "xy")?;
        return DimerSpec::xy(gamma, category, field).map_err(CliError::from_dimer);
    }
    let p = preset.general.as_ref().expect("general preset");
    let couplings = PairCouplings {
        j: p.get("J").copied().unwrap_or(0.0),
        d: p.get("D").copied().unwrap_or(0.0),
        r: p.get("r").copied().unwrap_or(0.0),
        k: p.get("K").copied().unwrap_or(0.0),
        j_zz: p.get("J_zz").copied().unwrap_or(0.0),
    };
    let convention = match convention {
        Some(c) => Convention::from_str(c).map_err(|e| CliError::usage(e.to_string()))?,
        None => Convention::Pauli,
    };
    DimerSpec::new(category, convention, couplings, field).map_err(CliError::from_dimer)
}

fn model_from_section(section: &ModelSection) -> CliResult<DimerSpec> {
    let preset = section
        .preset
        .as_ref()
        .ok_or_else(|| CliError::usage("a model spec is required (give a preset)".into()))?;
    let field = match &section.b {
        Some(axis) => axis.scalar("B")?,
        None => 0.0,
    };
    build_spec(
        preset,
        section.category.as_deref(),
        section.convention.as_deref(),
        field,
    )
}

fn positive_t_axis(axis: Vec<f64>) -> CliResult<Vec<f64>> {
    if axis.iter().any(|t| *t <= 0.0) {
        return Err(CliError::usage(
            "temperatures must be strictly positive".into(),
        ));
    }
    Ok(axis)
}

/// Validate a raw config (file values already merged with flag overrides)
/// into an executable job.
pub fn validate(raw: &RawConfig, env_seed: Option<u64>) -> CliResult<RunConfig> {
    let command = raw.command.as_deref().ok_or_else(|| {
        CliError::usage("no command given (use --command or \"command\" in the config)".into())
    })?;

    let spec = || -> CliResult<DimerSpec> {
        let preset = raw.preset.as_ref().ok_or_else(|| {
            CliError::usage(format!("command {command:?} requires a model preset"))
        })?;
        let field = match &raw.b {
            Some(AxisSpec::Scalar(v)) => *v,
            _ => 0.0,
        };
        build_spec(
            preset,
            raw.category.as_deref(),
            raw.convention.as_deref(),
            field,
        )
    };

    let seed = raw.seed.or(env_seed).unwrap_or(DEFAULT_SEED);
    let tol = raw.tol.unwrap_or(DEFAULT_SOLVER_TOL);
    if tol <= 0.0 || !tol.is_finite() {
        return Err(CliError::usage(format!("tol must be positive, got {tol}")));
    }

    let job = match command {
        "concurrence" => {
            let spec = spec()?;
            let b = match &raw.b {
                Some(axis) => axis.scalar("B")?,
                None => 0.0,
            };
            let t = raw
                .t
                .as_ref()
                .ok_or_else(|| CliError::usage("concurrence requires a temperature T".into()))?
                .scalar("T")?;
            if t <= 0.0 {
                return Err(CliError::usage(format!("T must be strictly positive, got {t}")));
            }
            Job::Concurrence { spec, b, t }
        }
        "diagram" => {
            let spec = spec()?;
            let b_axis = match &raw.b {
                Some(axis) => axis.axis("B", 101)?,
                None => linspace(0.0, 3.0, 101),
            };
            let t_axis = match &raw.t {
                Some(axis) => positive_t_axis(axis.axis("T", 101)?)?,
                None => {
                    let (lo, hi) = default_t_range(&spec);
                    linspace(lo, hi, 101)
                }
            };
            let measure = match raw.measure.as_deref() {
                Some(m) => Measure::from_str(m)?,
                None => Measure::Concurrence,
            };
            Job::Diagram { spec, b_axis, t_axis, measure }
        }
        "curve" => {
            let spec = spec()?;
            let b_axis = match &raw.b {
                Some(axis) => axis.axis("B", 51)?,
                None => linspace(0.0, 5.0, 51),
            };
            let t_range = match &raw.t {
                Some(axis) => axis.range("T")?,
                None => default_t_range(&spec),
            };
            if t_range.0 <= 0.0 || t_range.1 <= t_range.0 {
                return Err(CliError::usage(format!(
                    "T range must satisfy 0 < min < max, got ({}, {})",
                    t_range.0, t_range.1
                )));
            }
            Job::Curve { spec, b_axis, t_range, tol }
        }
        "classify" => {
            let (primary, other) = match &raw.specs {
                Some(list) if !list.is_empty() => {
                    let first = model_from_section(&list[0])?;
                    let second = match list.get(1) {
                        Some(s) => Some(model_from_section(s)?),
                        None => None,
                    };
                    if list.len() > 2 {
                        return Err(CliError::usage("classify compares at most two specs".into()));
                    }
                    (first, second)
                }
                _ => (spec()?, None),
            };
            Job::Classify { spec: primary, other, tol: raw.tol.unwrap_or(DEFAULT_CLASS_TOL) }
        }
        "dual" => Job::Dual { spec: spec()? },
        "sample" => Job::Sample { spec: spec()?, n: raw.n.unwrap_or(8), seed },
        "verify" => Job::Verify { seed, samples: raw.samples.unwrap_or(1000) },
        other => {
            return Err(CliError::usage(format!(
                "unknown command {other:?} (expected concurrence, diagram, curve, classify, dual, verify or sample)"
            )))
        }
    };

    if let Job::Sample { n, .. } = &job {
        if *n == 0 {
            return Err(CliError::usage("n must be at least 1".into()));
        }
    }

    let format = match raw.format.as_deref() {
        Some(f) => Format::from_str(f)?,
        None => match &job {
            Job::Diagram { .. } | Job::Curve { .. } | Job::Sample { .. } => Format::Csv,
            _ => Format::Json,
        },
    };
    if matches!(format, Format::Csv)
        && matches!(
            job,
            Job::Classify { .. } | Job::Dual { .. } | Job::Verify { .. }
        )
    {
        return Err(CliError::usage(format!(
            "command {command:?} emits JSON only"
        )));
    }

    Ok(RunConfig {
        job,
        format,
        out: raw.out.clone().unwrap_or_else(|| "-".into()),
    })
}
