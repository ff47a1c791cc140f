//! Run configuration: a strict JSON document, unknown keys rejected.

use std::fs;
use std::path::{Path, PathBuf};

use kessence_core::{
    BackgroundSpec, FieldState, GridSpec, KineticModel, PotentialSpec, StepControl, WallProfile,
};
use serde::{Deserialize, Serialize};

use crate::error::{config_err, CliError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    #[serde(rename = "F0")]
    pub f0: f64,
    #[serde(rename = "F2")]
    pub f2: f64,
    #[serde(rename = "X0")]
    pub x0: f64,
    pub eps0: f64,
}

impl Default for ModelConfig {
    fn default() -> Self {
        let m = KineticModel::paper_point();
        Self {
            f0: m.f0(),
            f2: m.f2(),
            x0: m.x0(),
            eps0: m.eps0(),
        }
    }
}

impl ModelConfig {
    pub fn build(&self) -> Result<KineticModel, CliError> {
        KineticModel::new(self.f0, self.f2, self.x0, self.eps0).map_err(config_err)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialConfig {
    Quadratic {
        m2: f64,
    },
    Constant {
        #[serde(rename = "V0")]
        v0: f64,
    },
}

impl Default for PotentialConfig {
    fn default() -> Self {
        PotentialConfig::Constant { v0: 1.0 }
    }
}

impl PotentialConfig {
    pub fn build(&self) -> Result<PotentialSpec, CliError> {
        let p = match *self {
            PotentialConfig::Quadratic { m2 } => PotentialSpec::Quadratic { m2 },
            PotentialConfig::Constant { v0 } => PotentialSpec::Constant { v0 },
        };
        p.validate().map_err(config_err)?;
        Ok(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BackgroundConfig {
    DeSitter {
        #[serde(rename = "H")]
        h: f64,
    },
    PowerLaw {
        p: f64,
        t0: f64,
    },
}

impl Default for BackgroundConfig {
    fn default() -> Self {
        BackgroundConfig::DeSitter { h: 1.0 }
    }
}

impl BackgroundConfig {
    pub fn build(&self) -> Result<BackgroundSpec, CliError> {
        let b = match *self {
            BackgroundConfig::DeSitter { h } => BackgroundSpec::DeSitter { h },
            BackgroundConfig::PowerLaw { p, t0 } => BackgroundSpec::PowerLaw { p, t0 },
        };
        b.validate().map_err(config_err)?;
        Ok(b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WallConfig {
    pub b: f64,
    #[serde(rename = "L")]
    pub l: f64,
}

impl WallConfig {
    pub fn build(&self) -> Result<WallProfile, CliError> {
        WallProfile::new(self.b, self.l).map_err(config_err)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl From<GridConfig> for GridSpec {
    fn from(g: GridConfig) -> Self {
        GridSpec {
            x_min: g.x_min,
            x_max: g.x_max,
            n_points: g.n_points,
        }
    }
}

/// Inclusive linear range with `count` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Range {
    pub fn single(v: f64) -> Self {
        Self {
            min: v,
            max: v,
            count: 1,
        }
    }

    pub fn validate(&self, name: &str) -> Result<(), CliError> {
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(CliError::Config(format!(
                "scan {name}: bounds must be finite"
            )));
        }
        if self.count == 0 {
            return Err(CliError::Config(format!("scan {name}: count must be >= 1")));
        }
        if self.min > self.max {
            return Err(CliError::Config(format!(
                "scan {name}: min {} > max {}",
                self.min, self.max
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let last = self.count - 1;
        let step = (self.max - self.min) / last as f64;
        (0..self.count)
            .map(|i| {
                if i == last {
                    self.max
                } else {
                    self.min + i as f64 * step
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scans {
    #[serde(rename = "X", default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Range>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Range>,
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub l: Option<Range>,
    #[serde(rename = "X0", default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<Range>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps0: Option<Range>,
    #[serde(rename = "F2", default, skip_serializing_if = "Option::is_none")]
    pub f2: Option<Range>,
}

impl Scans {
    fn validate(&self) -> Result<(), CliError> {
        let named = [
            ("X", &self.x),
            ("b", &self.b),
            ("L", &self.l),
            ("X0", &self.x0),
            ("eps0", &self.eps0),
            ("F2", &self.f2),
        ];
        for (name, r) in named {
            if let Some(r) = r {
                r.validate(name)?;
            }
        }
        Ok(())
    }
}

/// Initial state and integrator settings for `evolve`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolveConfig {
    pub t0: f64,
    pub a0: f64,
    pub phi: f64,
    /// Exactly one of `phidot` and `X` must be given; `X` uses `phidot = +sqrt(2 X)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phidot: Option<f64>,
    #[serde(rename = "X", default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    pub t_end: f64,
    pub output_interval: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    #[serde(default)]
    pub kinetic_only: bool,
    pub tail_fraction: f64,
}

impl Default for EvolveConfig {
    fn default() -> Self {
        let control = StepControl::default();
        Self {
            t0: 0.0,
            a0: 1.0,
            phi: 0.0,
            phidot: None,
            x: Some(1.05 * KineticModel::paper_point().x0()),
            t_end: 3.0,
            output_interval: control.output_interval,
            rel_tol: control.rel_tol,
            abs_tol: control.abs_tol,
            kinetic_only: false,
            tail_fraction: 0.5,
        }
    }
}

impl EvolveConfig {
    pub fn init(&self) -> Result<FieldState, CliError> {
        match (self.phidot, self.x) {
            (Some(v), None) => Ok(FieldState::new(self.t0, self.a0, self.phi, v)),
            (None, Some(x)) => {
                FieldState::from_kinetic(self.t0, self.a0, self.phi, x).map_err(config_err)
            }
            _ => Err(CliError::Config(
                "evolve: give exactly one of \"phidot\" and \"X\"".into(),
            )),
        }
    }

    pub fn control(&self) -> StepControl {
        StepControl {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            output_interval: self.output_interval,
            ..StepControl::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: PathBuf,
    pub stem: String,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("out"),
            stem: "kessence".into(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub model: ModelConfig,
    pub potential: PotentialConfig,
    pub background: BackgroundConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall: Option<WallConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridConfig>,
    pub scans: Scans,
    pub evolve: EvolveConfig,
    pub output: OutputConfig,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(CliError::io(path))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.model.build()?;
        self.potential.build()?;
        self.background.build()?;
        if let Some(w) = &self.wall {
            w.build()?;
        }
        if let Some(g) = self.grid {
            GridSpec::from(g).validate().map_err(config_err)?;
        }
        self.scans.validate()?;
        if self.output.stem.is_empty() || self.output.stem.contains(['/', '\\']) {
            return Err(CliError::Config(format!(
                "invalid output stem {:?}",
                self.output.stem
            )));
        }
        let e = &self.evolve;
        if !(e.tail_fraction > 0.0 && e.tail_fraction <= 1.0) {
            return Err(CliError::Config(format!(
                "evolve: tail_fraction must be in (0, 1], got {}",
                e.tail_fraction
            )));
        }
        Ok(())
    }
}
