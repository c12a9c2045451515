//! Line-oriented sweep configuration: `key = value` pairs under square
//! bracket section headers, with `#` comments. A `recipe` key expands a
//! preset which individual keys may then override.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use qbattery_core::fock::FockConfig;
use qbattery_core::{BatteryParams, DriveKind};
use serde::Serialize;

use crate::recipes;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid sweep: {0}")]
    Validation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Recipe {
    Fig1b,
    Fig1c,
    Fig1d,
    Fig1e,
    Fig2ab,
    Fig2cd,
    Fig3bc,
    Fig4a,
    Fig4b,
    Fig4c,
    Fig5a,
    Fig5b,
    Fig5c,
    Fig5d,
    Fig5e,
    Custom,
}

impl Recipe {
    pub const ALL: [Recipe; 16] = [
        Recipe::Fig1b,
        Recipe::Fig1c,
        Recipe::Fig1d,
        Recipe::Fig1e,
        Recipe::Fig2ab,
        Recipe::Fig2cd,
        Recipe::Fig3bc,
        Recipe::Fig4a,
        Recipe::Fig4b,
        Recipe::Fig4c,
        Recipe::Fig5a,
        Recipe::Fig5b,
        Recipe::Fig5c,
        Recipe::Fig5d,
        Recipe::Fig5e,
        Recipe::Custom,
    ];
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

impl FromStr for Recipe {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Recipe::ALL
            .iter()
            .find(|r| r.to_string().eq_ignore_ascii_case(s))
            .copied()
            .ok_or_else(|| format!("unknown recipe '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Tier {
    Analytic,
    Moments,
    Fock,
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tier::Analytic => "analytic",
            Tier::Moments => "moments",
            Tier::Fock => "fock",
        };
        f.write_str(s)
    }
}

impl FromStr for Tier {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "analytic" => Ok(Tier::Analytic),
            "moments" => Ok(Tier::Moments),
            "fock" => Ok(Tier::Fock),
            other => Err(format!("unknown tier '{other}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AxisParam {
    Delta,
    G,
    Gamma,
    GammaH,
    Omega,
    Theta,
    /// Evolution time; switches the sweep into trajectory mode.
    Time,
}

impl AxisParam {
    pub fn column_name(&self) -> &'static str {
        match self {
            AxisParam::Delta => "delta",
            AxisParam::G => "g",
            AxisParam::Gamma => "gamma",
            AxisParam::GammaH => "gamma_h",
            AxisParam::Omega => "omega",
            AxisParam::Theta => "theta",
            AxisParam::Time => "t",
        }
    }
}

impl FromStr for AxisParam {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "delta" => Ok(AxisParam::Delta),
            "g" => Ok(AxisParam::G),
            "gamma" => Ok(AxisParam::Gamma),
            "gamma_h" => Ok(AxisParam::GammaH),
            "omega" => Ok(AxisParam::Omega),
            "theta" => Ok(AxisParam::Theta),
            "t" | "time" => Ok(AxisParam::Time),
            other => Err(format!("unknown axis parameter '{other}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AxisScale {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Axis {
    pub param: AxisParam,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub scale: AxisScale,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                let f = i as f64 / (n - 1) as f64;
                match self.scale {
                    AxisScale::Linear => self.min + f * (self.max - self.min),
                    AxisScale::Log => self.min * (self.max / self.min).powf(f),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSpec {
    pub recipe: Recipe,
    #[serde(with = "params_serde")]
    pub params: BatteryParams,
    pub axes: Vec<Axis>,
    pub tiers: Vec<Tier>,
    #[serde(with = "fock_serde")]
    pub fock: Option<FockConfig>,
    /// Also compute the Liouvillian gap at each Fock point (dense, slow).
    pub fock_gap: bool,
    pub output_path: PathBuf,
}

mod params_serde {
    use super::*;
    use serde::ser::SerializeMap;

    pub fn serialize<S: serde::Serializer>(p: &BatteryParams, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(8))?;
        m.serialize_entry("omega_b", &p.omega_b)?;
        m.serialize_entry("delta", &p.delta)?;
        m.serialize_entry("g", &p.g)?;
        m.serialize_entry("gamma", &p.gamma)?;
        m.serialize_entry("gamma_h", &p.gamma_h)?;
        m.serialize_entry("omega", &p.omega_drive_amp)?;
        m.serialize_entry("theta", &p.theta)?;
        m.serialize_entry(
            "drive",
            match p.drive_kind {
                DriveKind::Linear => "linear",
                DriveKind::Quadratic => "quadratic",
            },
        )?;
        m.end()
    }
}

mod fock_serde {
    use super::*;
    use serde::ser::SerializeMap;

    pub fn serialize<S: serde::Serializer>(
        f: &Option<FockConfig>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        match f {
            None => s.serialize_none(),
            Some(f) => {
                let mut m = s.serialize_map(Some(3))?;
                m.serialize_entry("n_c", &f.n_c_levels)?;
                m.serialize_entry("n_h", &f.n_h_levels)?;
                m.serialize_entry("rwa", &f.rwa)?;
                m.end()
            }
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |msg: String| Err(ConfigError::Validation(msg));
        self.params
            .validate()
            .map_err(|e| ConfigError::Validation(e.to_string()))?;
        if self.axes.is_empty() || self.axes.len() > 2 {
            return bad(format!("axes count must be 1 or 2, got {}", self.axes.len()));
        }
        let time_axes = self
            .axes
            .iter()
            .filter(|a| a.param == AxisParam::Time)
            .count();
        if time_axes > 1 {
            return bad("at most one time axis".into());
        }
        for a in &self.axes {
            if !(2..=2000).contains(&a.count) {
                return bad(format!("axis count {} outside 2..=2000", a.count));
            }
            if !(a.min.is_finite() && a.max.is_finite() && a.min < a.max) {
                return bad(format!("axis range [{}, {}] invalid", a.min, a.max));
            }
            if a.scale == AxisScale::Log && a.min <= 0.0 {
                return bad("log axis requires min > 0".into());
            }
        }
        if self.tiers.is_empty() {
            return bad("at least one tier required".into());
        }
        let mut sorted = self.tiers.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != self.tiers.len() {
            return bad("duplicate tiers".into());
        }
        if let Some(f) = &self.fock {
            f.validate()
                .map_err(|e| ConfigError::Validation(e.to_string()))?;
        }
        if self.tiers.contains(&Tier::Fock) && self.fock.is_none() {
            return bad("fock tier requires a [fock] section".into());
        }
        Ok(())
    }
}

fn parse_num(line: usize, key: &str, v: &str) -> Result<f64, ConfigError> {
    v.parse::<f64>().map_err(|_| ConfigError::Parse {
        line,
        msg: format!("{key}: expected a number, got '{v}'"),
    })
}

fn parse_usize(line: usize, key: &str, v: &str) -> Result<usize, ConfigError> {
    v.parse::<usize>().map_err(|_| ConfigError::Parse {
        line,
        msg: format!("{key}: expected an integer, got '{v}'"),
    })
}

fn parse_bool(line: usize, key: &str, v: &str) -> Result<bool, ConfigError> {
    match v.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(ConfigError::Parse {
            line,
            msg: format!("{key}: expected true/false, got '{v}'"),
        }),
    }
}

/// Parse a sweep configuration document into a validated spec.
pub fn parse_config(text: &str) -> Result<SweepSpec, ConfigError> {
    #[derive(Clone)]
    struct Item {
        line: usize,
        section: String,
        key: String,
        value: String,
    }

    let mut items: Vec<Item> = Vec::new();
    let mut section = String::from("sweep");
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[') {
            let name = name.strip_suffix(']').ok_or(ConfigError::Parse {
                line,
                msg: "unterminated section header".into(),
            })?;
            section = name.trim().to_ascii_lowercase();
            match section.as_str() {
                "sweep" | "params" | "axis1" | "axis2" | "fock" => {}
                other => {
                    return Err(ConfigError::Parse {
                        line,
                        msg: format!("unknown section '[{other}]'"),
                    })
                }
            }
            continue;
        }
        let (key, value) = content.split_once('=').ok_or(ConfigError::Parse {
            line,
            msg: "expected 'key = value'".into(),
        })?;
        items.push(Item {
            line,
            section: section.clone(),
            key: key.trim().to_ascii_lowercase(),
            value: value.trim().to_string(),
        });
    }

    // recipe first: it provides the baseline everything else overrides
    let mut recipe = Recipe::Custom;
    for it in &items {
        if it.section == "sweep" && it.key == "recipe" {
            recipe = it.value.parse().map_err(|msg| ConfigError::Parse {
                line: it.line,
                msg,
            })?;
        }
    }
    let mut spec = recipes::preset(recipe);

    // custom specs start with no axes; explicit [axis1]/[axis2] replace
    // preset axes wholesale on first touch
    let mut axes_reset = false;
    let mut axis_touched = [false; 2];
    let mut fock_touched = false;

    for it in &items {
        let line = it.line;
        let key = it.key.as_str();
        let v = it.value.as_str();
        let unknown = || {
            Err(ConfigError::Parse {
                line,
                msg: format!("unknown key '{key}' in section [{}]", it.section),
            })
        };
        match it.section.as_str() {
            "sweep" => match key {
                "recipe" => {}
                "tiers" => {
                    let mut tiers = Vec::new();
                    for part in v.split(',') {
                        tiers.push(part.parse::<Tier>().map_err(|msg| ConfigError::Parse {
                            line,
                            msg,
                        })?);
                    }
                    spec.tiers = tiers;
                }
                "output" => spec.output_path = PathBuf::from(v),
                _ => return unknown(),
            },
            "params" => {
                let p = &mut spec.params;
                match key {
                    "omega_b" => p.omega_b = parse_num(line, key, v)?,
                    "delta" => p.delta = parse_num(line, key, v)?,
                    "g" => p.g = parse_num(line, key, v)?,
                    "gamma" => p.gamma = parse_num(line, key, v)?,
                    "gamma_h" => p.gamma_h = parse_num(line, key, v)?,
                    "omega" => p.omega_drive_amp = parse_num(line, key, v)?,
                    "theta" => p.theta = parse_num(line, key, v)?,
                    "drive" => {
                        p.drive_kind = match v.to_ascii_lowercase().as_str() {
                            "linear" => DriveKind::Linear,
                            "quadratic" => DriveKind::Quadratic,
                            other => {
                                return Err(ConfigError::Parse {
                                    line,
                                    msg: format!("drive must be linear or quadratic, got '{other}'"),
                                })
                            }
                        }
                    }
                    _ => return unknown(),
                }
            }
            "axis1" | "axis2" => {
                if !axes_reset {
                    spec.axes.clear();
                    axes_reset = true;
                }
                let slot = if it.section == "axis1" { 0 } else { 1 };
                if !axis_touched[slot] {
                    axis_touched[slot] = true;
                    while spec.axes.len() <= slot {
                        spec.axes.push(Axis {
                            param: AxisParam::Omega,
                            min: 0.0,
                            max: 1.0,
                            count: 2,
                            scale: AxisScale::Linear,
                        });
                    }
                }
                let a = &mut spec.axes[slot];
                match key {
                    "param" => {
                        a.param = v.parse().map_err(|msg| ConfigError::Parse { line, msg })?
                    }
                    "min" => a.min = parse_num(line, key, v)?,
                    "max" => a.max = parse_num(line, key, v)?,
                    "count" => a.count = parse_usize(line, key, v)?,
                    "scale" => {
                        a.scale = match v.to_ascii_lowercase().as_str() {
                            "linear" => AxisScale::Linear,
                            "log" => AxisScale::Log,
                            other => {
                                return Err(ConfigError::Parse {
                                    line,
                                    msg: format!("scale must be linear or log, got '{other}'"),
                                })
                            }
                        }
                    }
                    _ => return unknown(),
                }
            }
            "fock" => {
                if !fock_touched {
                    fock_touched = true;
                    if spec.fock.is_none() {
                        spec.fock = Some(FockConfig::new(10, 10));
                    }
                }
                let f = spec.fock.as_mut().unwrap();
                match key {
                    "n_c" => f.n_c_levels = parse_usize(line, key, v)?,
                    "n_h" => f.n_h_levels = parse_usize(line, key, v)?,
                    "n" => {
                        let n = parse_usize(line, key, v)?;
                        f.n_c_levels = n;
                        f.n_h_levels = n;
                    }
                    "rwa" => f.rwa = parse_bool(line, key, v)?,
                    "gap" => spec.fock_gap = parse_bool(line, key, v)?,
                    _ => return unknown(),
                }
            }
            _ => unreachable!("sections validated at header"),
        }
    }

    spec.validate()?;
    Ok(spec)
}
