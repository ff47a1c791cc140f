//! Built-in parameter sets.

use clap::ValueEnum;
use kessence_core::KineticModel;

use crate::config::{ModelConfig, Range, RunConfig, WallConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Profiles for b in {3, 10} at L in {3, 6, 9}.
    Figure1,
    /// b = 10 at L in {3, 6, 9}.
    Figure2,
    /// F2 = 1e3, eps0 = 1e-2, X0 = 1e3, F0 = -1.
    PaperPoint,
}

impl Preset {
    pub fn name(&self) -> &'static str {
        match self {
            Preset::Figure1 => "figure1",
            Preset::Figure2 => "figure2",
            Preset::PaperPoint => "paper-point",
        }
    }

    /// Overrides the scenario-defining sections of `cfg`; output settings and
    /// integrator controls are left alone.
    pub fn apply(&self, cfg: &mut RunConfig) {
        let separations = Range {
            min: 3.0,
            max: 9.0,
            count: 3,
        };
        match self {
            Preset::Figure1 => {
                cfg.scans.b = Some(Range {
                    min: 3.0,
                    max: 10.0,
                    count: 2,
                });
                cfg.scans.l = Some(separations);
                cfg.scans.x0 = None;
                cfg.wall = Some(WallConfig { b: 10.0, l: 9.0 });
                cfg.grid = None;
            }
            Preset::Figure2 => {
                cfg.scans.b = Some(Range::single(10.0));
                cfg.scans.l = Some(separations);
                cfg.scans.x0 = None;
                cfg.wall = Some(WallConfig { b: 10.0, l: 9.0 });
                cfg.grid = None;
            }
            Preset::PaperPoint => {
                let m = KineticModel::paper_point();
                cfg.model = ModelConfig::default();
                cfg.scans.b = None;
                cfg.scans.l = None;
                cfg.scans.x = None;
                cfg.scans.x0 = Some(Range::single(m.x0()));
                cfg.scans.eps0 = Some(Range::single(m.eps0()));
                cfg.scans.f2 = Some(Range::single(m.f2()));
                cfg.wall = None;
            }
        }
    }
}
