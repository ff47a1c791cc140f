//! Homogeneous field evolution on a prescribed FRW background.
//!
//! The field equation is
//!
//! ```text
//! (F_X + 2 X F_XX) phi'' + 3 H F_X phi' + (2 X F_X - F) V_phi / V = 0,   X = phi'^2 / 2
//! ```
//!
//! and its kinetic-only form drops the potential term. Multiplying the
//! kinetic-only equation by `phi'` gives `d(X F_X^2)/dt = -6 H X F_X^2`, so
//! `Q = X F_X^2 a^6` is a first integral. `Q` is the primary check on every
//! kinetic-only run.
//!
//! The velocity is integrated as an offset `u = phi' - c` from a constant
//! `c = sign(phi'_0) sqrt(2 X0)`, so that `X - X0 = u (u + 2c) / 2` keeps full
//! relative precision as the solution approaches the extremum.

mod dopri;

pub use dopri::Stats;

use crate::error::{Error, Result};
use crate::model::{KineticModel, PotentialSpec, TOL_DEN};
use dopri::{Stepper, System, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BackgroundSpec {
    /// Constant expansion rate, `a ∝ exp(H t)`.
    DeSitter { h: f64 },
    /// `a = (t / t0)^p`, `H = p / t`; requires `t > 0`.
    PowerLaw { p: f64, t0: f64 },
}

impl BackgroundSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            BackgroundSpec::DeSitter { h } if !(h > 0.0 && h.is_finite()) => Err(
                Error::InvalidParameter(format!("de Sitter H must be > 0, got {h}")),
            ),
            BackgroundSpec::PowerLaw { p, t0 }
                if !(p > 0.0 && t0 > 0.0 && p.is_finite() && t0.is_finite()) =>
            {
                Err(Error::InvalidParameter(format!(
                    "power law needs p > 0 and t0 > 0, got p = {p}, t0 = {t0}"
                )))
            }
            _ => Ok(()),
        }
    }

    pub fn hubble(&self, t: f64) -> f64 {
        match *self {
            BackgroundSpec::DeSitter { h } => h,
            BackgroundSpec::PowerLaw { p, .. } => p / t,
        }
    }

    /// Canonically normalised scale factor: `exp(H t)` or `(t / t0)^p`.
    pub fn scale_factor(&self, t: f64) -> f64 {
        match *self {
            BackgroundSpec::DeSitter { h } => (h * t).exp(),
            BackgroundSpec::PowerLaw { p, t0 } => (t / t0).powf(p),
        }
    }

    /// `a(t_to) / a(t_from)`.
    pub fn growth(&self, t_from: f64, t_to: f64) -> f64 {
        match *self {
            BackgroundSpec::DeSitter { h } => (h * (t_to - t_from)).exp(),
            BackgroundSpec::PowerLaw { p, .. } => (t_to / t_from).powf(p),
        }
    }

    fn check_window(&self, t_start: f64) -> Result<()> {
        match *self {
            BackgroundSpec::PowerLaw { .. } if !(t_start > 0.0) => Err(Error::InvalidParameter(
                format!("power-law background needs t > 0, got t = {t_start}"),
            )),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldState {
    pub t: f64,
    pub a: f64,
    pub phi: f64,
    pub phidot: f64,
}

impl FieldState {
    pub fn new(t: f64, a: f64, phi: f64, phidot: f64) -> Self {
        Self { t, a, phi, phidot }
    }

    /// State with kinetic value `x`, taking the positive root `phidot = sqrt(2 x)`.
    pub fn from_kinetic(t: f64, a: f64, phi: f64, x: f64) -> Result<Self> {
        if !(x >= 0.0 && x.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "kinetic value must be >= 0, got {x}"
            )));
        }
        Ok(Self {
            t,
            a,
            phi,
            phidot: (2.0 * x).sqrt(),
        })
    }

    pub fn kinetic(&self) -> f64 {
        0.5 * self.phidot * self.phidot
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Spacing of emitted rows in `t`.
    pub output_interval: f64,
    pub max_steps: usize,
}

impl Default for StepControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-10,
            output_interval: 0.01,
            max_steps: 1_000_000,
        }
    }
}

impl StepControl {
    fn validate(&self) -> Result<()> {
        let ok = self.rel_tol > 0.0
            && self.abs_tol > 0.0
            && self.output_interval > 0.0
            && self.output_interval.is_finite()
            && self.max_steps > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "invalid step control {self:?}"
            )))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRow {
    pub t: f64,
    pub a: f64,
    pub phi: f64,
    pub phidot: f64,
    pub x: f64,
    /// NaN where the equation-of-state denominator is degenerate.
    pub w: f64,
    pub cs2: f64,
    pub q: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub model: KineticModel,
    pub rows: Vec<TrajectoryRow>,
    pub stats: Stats,
    /// `X - X0` per row at full precision.
    offsets: Vec<f64>,
}

impl Trajectory {
    /// Wraps externally produced rows; offsets are recomputed as `X - X0`.
    pub fn from_rows(model: KineticModel, rows: Vec<TrajectoryRow>) -> Self {
        let offsets = rows.iter().map(|r| r.x - model.x0()).collect();
        Self {
            model,
            rows,
            stats: Stats::default(),
            offsets,
        }
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    /// `max |Q / Q(0) - 1|`, or `max |Q|` when `Q(0) = 0`.
    pub fn q_drift(&self) -> f64 {
        let q0 = match self.rows.first() {
            Some(r) => r.q,
            None => return 0.0,
        };
        self.rows
            .iter()
            .map(|r| {
                if q0 == 0.0 {
                    r.q.abs()
                } else {
                    (r.q / q0 - 1.0).abs()
                }
            })
            .fold(0.0, f64::max)
    }

    /// Least-squares slope of `ln(X - X0)` against `ln a` over rows with
    /// `a / a(0) >= min_growth`.
    pub fn loglog_slope(&self, min_growth: f64) -> Result<f64> {
        let a_start = self
            .rows
            .first()
            .map(|r| r.a)
            .ok_or_else(|| Error::FitDomain("empty trajectory".into()))?;
        let pts: Vec<(f64, f64)> = self
            .rows
            .iter()
            .zip(&self.offsets)
            .filter(|(r, _)| r.a / a_start >= min_growth)
            .map(|(r, &dx)| {
                if dx > 0.0 {
                    Ok((r.a.ln(), dx.ln()))
                } else {
                    Err(Error::FitDomain(format!("X <= X0 at t = {}", r.t)))
                }
            })
            .collect::<Result<_>>()?;
        if pts.len() < 2 {
            return Err(Error::FitDomain(format!(
                "need 2 rows with a/a0 >= {min_growth}, have {}",
                pts.len()
            )));
        }
        let n = pts.len() as f64;
        let (mx, my) = pts
            .iter()
            .fold((0.0, 0.0), |(sx, sy), (x, y)| (sx + x / n, sy + y / n));
        let (sxy, sxx) = pts.iter().fold((0.0, 0.0), |(sxy, sxx), (x, y)| {
            (sxy + (x - mx) * (y - my), sxx + (x - mx) * (x - mx))
        });
        Ok(sxy / sxx)
    }
}

struct FieldSystem<'a> {
    model: &'a KineticModel,
    potential: Option<&'a PotentialSpec>,
    background: &'a BackgroundSpec,
    c: f64,
}

impl FieldSystem<'_> {
    fn offset(&self, u: f64) -> f64 {
        if self.c == 0.0 {
            0.5 * u * u - self.model.x0()
        } else {
            0.5 * u * (u + 2.0 * self.c)
        }
    }

    fn acceleration(&self, t: f64, phi: f64, u: f64) -> Result<f64> {
        let m = self.model;
        let phidot = self.c + u;
        let dx = self.offset(u);
        let x = m.x0() + dx;
        let f_x = 2.0 * m.f2() * dx;
        let stiff = 2.0 * x * m.f_xx(x);
        let mass = f_x + stiff;
        if mass.abs() <= TOL_DEN * (f_x.abs() + stiff.abs()) {
            return Err(Error::SingularMassMatrix {
                t,
                coefficient: mass,
            });
        }
        let mut force = 3.0 * self.background.hubble(t) * f_x * phidot;
        if let Some(potential) = self.potential {
            let slope = potential.log_slope(phi)?;
            if slope != 0.0 {
                let f = m.f0() + m.f2() * dx * dx;
                force += (2.0 * x * f_x - f) * slope;
            }
        }
        Ok(-force / mass)
    }
}

impl System<2> for FieldSystem<'_> {
    fn rhs(&self, t: f64, y: &[f64; 2]) -> Result<[f64; 2]> {
        Ok([self.c + y[1], self.acceleration(t, y[0], y[1])?])
    }
}

/// Integrates the full field equation, emitting rows every
/// `control.output_interval` from `init.t` through `t_end`.
pub fn evolve_full(
    model: &KineticModel,
    potential: &PotentialSpec,
    background: &BackgroundSpec,
    init: FieldState,
    t_end: f64,
    control: &StepControl,
) -> Result<Trajectory> {
    potential.validate()?;
    evolve(model, Some(potential), background, init, t_end, control)
}

/// Integrates the field equation without the potential term.
pub fn evolve_kinetic_only(
    model: &KineticModel,
    background: &BackgroundSpec,
    init: FieldState,
    t_end: f64,
    control: &StepControl,
) -> Result<Trajectory> {
    evolve(model, None, background, init, t_end, control)
}

fn evolve(
    model: &KineticModel,
    potential: Option<&PotentialSpec>,
    background: &BackgroundSpec,
    init: FieldState,
    t_end: f64,
    control: &StepControl,
) -> Result<Trajectory> {
    background.validate()?;
    background.check_window(init.t)?;
    control.validate()?;
    if !(init.a > 0.0 && init.a.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "initial scale factor must be > 0, got {}",
            init.a
        )));
    }
    if !(init.phi.is_finite() && init.phidot.is_finite() && init.t.is_finite()) {
        return Err(Error::InvalidParameter(
            "initial state must be finite".into(),
        ));
    }
    if !(t_end > init.t) {
        return Err(Error::InvalidParameter(format!(
            "t_end = {t_end} must exceed t = {}",
            init.t
        )));
    }

    let c = if init.phidot == 0.0 {
        0.0
    } else {
        (2.0 * model.x0()).sqrt().copysign(init.phidot)
    };
    let system = FieldSystem {
        model,
        potential,
        background,
        c,
    };
    let y0 = [init.phi, init.phidot - c];

    let n_out = ((t_end - init.t) / control.output_interval * (1.0 - 1e-12)).ceil() as usize;
    let h0 = (control.output_interval * 0.1).min(0.1 * (t_end - init.t));
    let tol = Tolerance {
        rel: control.rel_tol,
        abs: control.abs_tol,
    };
    let mut stepper = Stepper::new(&system, init.t, y0, h0, tol, control.max_steps)?;

    let row = |t: f64, y: &[f64; 2]| -> (TrajectoryRow, f64) {
        let dx = system.offset(y[1]);
        let x = model.x0() + dx;
        let a = init.a * background.growth(init.t, t);
        let f_x = 2.0 * model.f2() * dx;
        let a3 = a * a * a;
        let r = TrajectoryRow {
            t,
            a,
            phi: y[0],
            phidot: c + y[1],
            x,
            w: model.eos_w(x).unwrap_or(f64::NAN),
            cs2: model.sound_speed(x).unwrap_or(f64::NAN),
            q: x * f_x * f_x * a3 * a3,
        };
        (r, dx)
    };

    let mut rows = Vec::with_capacity(n_out + 1);
    let mut offsets = Vec::with_capacity(n_out + 1);
    let (r, dx) = row(init.t, &y0);
    rows.push(r);
    offsets.push(dx);
    for k in 1..=n_out {
        let target = if k == n_out {
            t_end
        } else {
            init.t + k as f64 * control.output_interval
        };
        stepper.advance_to(target)?;
        let (r, dx) = row(stepper.t, &stepper.y);
        rows.push(r);
        offsets.push(dx);
    }

    Ok(Trajectory {
        model: *model,
        rows,
        stats: stepper.stats,
        offsets,
    })
}

/// `Q = X F_X^2 a^6` for a homogeneous state.
pub fn invariant_q(model: &KineticModel, state: &FieldState) -> f64 {
    let x = state.kinetic();
    let f_x = model.f_x(x);
    let a3 = state.a.powi(3);
    x * f_x * f_x * a3 * a3
}

/// Result of matching a trajectory tail to `X = X0 (1 + eps1 (a / a1)^-3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingFit {
    pub eps1: f64,
    /// Reference scale factor, pinned to the first row of the trajectory.
    pub a1: f64,
    /// `max |fit / (X - X0) - 1|` over the tail.
    pub max_residual: f64,
    pub tail_rows: usize,
}

/// Fixed-slope least-squares fit of `ln(X - X0)` against `ln a` over the last
/// `tail_fraction` of the rows.
///
/// Only the product `eps1 a1^3` is identifiable, so `a1` is pinned to the
/// first row's scale factor.
pub fn fit_scaling(trajectory: &Trajectory, tail_fraction: f64) -> Result<ScalingFit> {
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return Err(Error::FitDomain(format!(
            "tail fraction must be in (0, 1], got {tail_fraction}"
        )));
    }
    let n = trajectory.rows.len();
    let tail_rows = ((n as f64) * tail_fraction).round() as usize;
    if tail_rows < 10 {
        return Err(Error::FitDomain(format!(
            "tail has {tail_rows} rows, need at least 10"
        )));
    }
    let start = n - tail_rows;
    let rows = &trajectory.rows[start..];
    let offsets = &trajectory.offsets[start..];
    if let Some(r) = rows
        .iter()
        .zip(offsets)
        .find(|(_, &dx)| !(dx > 0.0))
        .map(|(r, _)| r)
    {
        return Err(Error::FitDomain(format!(
            "X <= X0 in the tail at t = {}",
            r.t
        )));
    }

    let a1 = trajectory.rows[0].a;
    let x0 = trajectory.model.x0();
    // ln(X - X0) = ln(X0 eps1) - 3 ln(a / a1)
    let intercept = rows
        .iter()
        .zip(offsets)
        .map(|(r, &dx)| dx.ln() + 3.0 * (r.a / a1).ln())
        .sum::<f64>()
        / tail_rows as f64;
    let eps1 = intercept.exp() / x0;
    let max_residual = rows
        .iter()
        .zip(offsets)
        .map(|(r, &dx)| (x0 * eps1 * (r.a / a1).powi(-3) / dx - 1.0).abs())
        .fold(0.0, f64::max);

    Ok(ScalingFit {
        eps1,
        a1,
        max_residual,
        tail_rows,
    })
}

/// `|V''(phi)| / H^2`; slow roll needs this to be small.
pub fn slow_roll_metric(potential: &PotentialSpec, hubble: f64, phi: f64) -> Result<f64> {
    if !(hubble > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "H must be > 0, got {hubble}"
        )));
    }
    Ok(potential.d2(phi).abs() / (hubble * hubble))
}
