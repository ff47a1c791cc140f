//! Thermodynamics of the pure-kinetic model `p = V(phi) F(X)`.
//!
//! `F(X) = F0 + F2 (X - X0)^2` is the expansion of the kinetic function about
//! its extremum `X0`. Pressure, density, equation of state and sound speed are
//! evaluated exactly; the thin-wall limiting forms are kept as separate
//! functions (`w_paper_thinwall`, `cs2_paper_thinwall`) because they do not
//! reduce to the exact expressions.

use crate::error::{Error, Result};

/// Relative guard used for every rational expression with a pole.
///
/// A denominator is treated as degenerate when its magnitude is at most
/// `TOL_DEN` times the sum of the magnitudes of its terms.
pub const TOL_DEN: f64 = 1e-12;

/// Default `F0`. Negative so that `rho(X0) = -V F0` is a positive vacuum energy.
pub const DEFAULT_F0: f64 = -1.0;

pub(crate) fn guard(quantity: &'static str, den: f64, scale: f64) -> Result<f64> {
    if den.is_nan() || den.abs() <= TOL_DEN * scale {
        Err(Error::DegenerateDenominator {
            quantity,
            value: den,
        })
    } else {
        Ok(den)
    }
}

/// Parameters of the quadratic kinetic function plus the perturbation `eps0`
/// of the kinetic state away from its extremum (`X = X0 + eps0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KineticModel {
    f0: f64,
    f2: f64,
    x0: f64,
    eps0: f64,
}

impl KineticModel {
    pub fn new(f0: f64, f2: f64, x0: f64, eps0: f64) -> Result<Self> {
        if !(f0.is_finite() && f0 != 0.0) {
            return Err(Error::InvalidParameter(format!(
                "F0 must be finite and nonzero, got {f0}"
            )));
        }
        if !(f2.is_finite() && f2 >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "F2 must be finite and >= 0, got {f2}"
            )));
        }
        if !(x0.is_finite() && x0 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "X0 must be finite and > 0, got {x0}"
            )));
        }
        if !(eps0.is_finite() && eps0 >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "eps0 must be finite and >= 0, got {eps0}"
            )));
        }
        Ok(Self { f0, f2, x0, eps0 })
    }

    /// `F2 = 10^3`, `eps0 = 10^-2`, `X0 = 10^3`, `F0 = -1`.
    pub fn paper_point() -> Self {
        Self {
            f0: DEFAULT_F0,
            f2: 1e3,
            x0: 1e3,
            eps0: 1e-2,
        }
    }

    pub fn f0(&self) -> f64 {
        self.f0
    }

    pub fn f2(&self) -> f64 {
        self.f2
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn eps0(&self) -> f64 {
        self.eps0
    }

    pub fn with_eps0(self, eps0: f64) -> Result<Self> {
        Self::new(self.f0, self.f2, self.x0, eps0)
    }

    pub fn with_x0(self, x0: f64) -> Result<Self> {
        Self::new(self.f0, self.f2, x0, self.eps0)
    }

    pub fn f(&self, x: f64) -> f64 {
        let d = x - self.x0;
        self.f0 + self.f2 * d * d
    }

    pub fn f_x(&self, x: f64) -> f64 {
        2.0 * self.f2 * (x - self.x0)
    }

    pub fn f_xx(&self, _x: f64) -> f64 {
        2.0 * self.f2
    }

    pub fn pressure(&self, potential: &PotentialSpec, phi: f64, x: f64) -> f64 {
        potential.value(phi) * self.f(x)
    }

    pub fn density(&self, potential: &PotentialSpec, phi: f64, x: f64) -> f64 {
        potential.value(phi) * (2.0 * x * self.f_x(x) - self.f(x))
    }

    /// Equation of state `w = F / (2 X F_X - F)`; independent of the potential.
    pub fn eos_w(&self, x: f64) -> Result<f64> {
        let f = self.f(x);
        let kinetic = 2.0 * x * self.f_x(x);
        let den = guard("eos_w", kinetic - f, kinetic.abs() + f.abs())?;
        Ok(f / den)
    }

    /// Sound speed `F_X / (F_X + 2 X F_XX)`, which for the quadratic `F` equals
    /// `(X - X0) / (3 X - X0)`. The pole sits at `X = X0 / 3`.
    pub fn sound_speed(&self, x: f64) -> Result<f64> {
        let fx = self.f_x(x);
        let stiff = 2.0 * x * self.f_xx(x);
        let den = guard("sound_speed", fx + stiff, fx.abs() + stiff.abs())?;
        Ok(fx / den)
    }

    /// Closed form `1 / (1 + 2 (1 + X0 / eps0))` of the sound speed at `X0 + eps0`.
    pub fn sound_speed_perturbed(&self) -> Result<f64> {
        self.sound_speed_perturbed_at(self.eps0)
    }

    /// [`Self::sound_speed_perturbed`] for an arbitrary (possibly negative) offset.
    pub fn sound_speed_perturbed_at(&self, eps: f64) -> Result<f64> {
        if eps == 0.0 {
            return Ok(0.0);
        }
        let ratio = self.x0 / eps;
        let den = guard(
            "sound_speed_perturbed",
            1.0 + 2.0 * (1.0 + ratio),
            3.0 + 2.0 * ratio.abs(),
        )?;
        Ok(1.0 / den)
    }

    /// `w = -1 / (1 - 4 (X0 + eps0) F2 eps0 / (F0 + F2 eps0^2))`, the exact
    /// equation of state at `X0 + eps0` written in perturbative variables.
    pub fn w_perturbed_exact(&self) -> Result<f64> {
        self.w_perturbed_at(self.eps0)
    }

    pub fn w_perturbed_at(&self, eps: f64) -> Result<f64> {
        let f = self.f0 + self.f2 * eps * eps;
        if f == 0.0 {
            // F crosses zero: pressure vanishes, dust-like point
            return Ok(0.0);
        }
        let ratio = 4.0 * (self.x0 + eps) * (self.f2 / f) * eps;
        let den = guard("w_perturbed_exact", 1.0 - ratio, 1.0 + ratio.abs())?;
        Ok(-1.0 / den)
    }
}

/// Thin-wall equation of state `-1 / (1 - 4 X0 eps0 / F2)`.
///
/// Drops `F0` relative to [`KineticModel::w_perturbed_exact`]; the two differ
/// by order one at `X0 = F2 = 10^3`, `eps0 = 10^-2`.
pub fn w_paper_thinwall(x0: f64, eps0: f64, f2: f64) -> Result<f64> {
    if !(f2 > 0.0 && f2.is_finite()) {
        return Err(Error::InvalidParameter(format!("F2 must be > 0, got {f2}")));
    }
    let ratio = 4.0 * x0 * eps0 / f2;
    let den = guard("w_paper_thinwall", 1.0 - ratio, 1.0 + ratio.abs())?;
    Ok(-1.0 / den)
}

/// Thin/thick-wall sound speed `1 / (1 + 4 X0 (1 + X0 / (2 eps0)))`.
///
/// Tends to 0 for large `X0` and to 1 as `X0 -> 0+`. Not equal to
/// [`KineticModel::sound_speed_perturbed`].
pub fn cs2_paper_thinwall(x0: f64, eps0: f64) -> Result<f64> {
    if x0 < 0.0 || eps0 < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "X0 and eps0 must be >= 0, got X0 = {x0}, eps0 = {eps0}"
        )));
    }
    let den = 1.0 + 4.0 * x0 * (1.0 + x0 / (2.0 * eps0));
    if !(den > 0.0) {
        return Err(Error::DegenerateDenominator {
            quantity: "cs2_paper_thinwall",
            value: den,
        });
    }
    Ok(1.0 / den)
}

/// Scalar potential. The quadratic variant is `V = m2 phi^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialSpec {
    Quadratic { m2: f64 },
    Constant { v0: f64 },
}

impl PotentialSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            PotentialSpec::Quadratic { m2 } if !(m2 > 0.0 && m2.is_finite()) => Err(
                Error::InvalidParameter(format!("quadratic potential needs m2 > 0, got {m2}")),
            ),
            PotentialSpec::Constant { v0 } if !(v0 > 0.0 && v0.is_finite()) => Err(
                Error::InvalidParameter(format!("constant potential needs V0 > 0, got {v0}")),
            ),
            _ => Ok(()),
        }
    }

    pub fn value(&self, phi: f64) -> f64 {
        match *self {
            PotentialSpec::Quadratic { m2 } => m2 * phi * phi,
            PotentialSpec::Constant { v0 } => v0,
        }
    }

    pub fn d1(&self, phi: f64) -> f64 {
        match *self {
            PotentialSpec::Quadratic { m2 } => 2.0 * m2 * phi,
            PotentialSpec::Constant { .. } => 0.0,
        }
    }

    pub fn d2(&self, _phi: f64) -> f64 {
        match *self {
            PotentialSpec::Quadratic { m2 } => 2.0 * m2,
            PotentialSpec::Constant { .. } => 0.0,
        }
    }

    /// `V_phi / V`, the only combination of the potential entering the field equation.
    pub fn log_slope(&self, phi: f64) -> Result<f64> {
        match *self {
            PotentialSpec::Constant { .. } => Ok(0.0),
            PotentialSpec::Quadratic { .. } if phi == 0.0 => Err(Error::VanishingPotential { phi }),
            PotentialSpec::Quadratic { .. } => Ok(2.0 / phi),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsMode {
    Exact,
    FirstOrder,
}

/// Late-time scaling solution `X(a) = X0 (1 + eps1 (a / a1)^-3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingSolution {
    pub x0: f64,
    pub eps1: f64,
    pub a1: f64,
}

impl ScalingSolution {
    pub fn new(x0: f64, eps1: f64, a1: f64) -> Result<Self> {
        if !(x0 > 0.0 && x0.is_finite()) {
            return Err(Error::InvalidParameter(format!("X0 must be > 0, got {x0}")));
        }
        if !(a1 > 0.0 && a1.is_finite()) {
            return Err(Error::InvalidParameter(format!("a1 must be > 0, got {a1}")));
        }
        if !eps1.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "eps1 must be finite, got {eps1}"
            )));
        }
        Ok(Self { x0, eps1, a1 })
    }

    fn decay(&self, a: f64) -> Result<f64> {
        if !(a > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "scale factor must be > 0, got {a}"
            )));
        }
        Ok((a / self.a1).powi(-3))
    }

    /// `X - X0`, computed without forming `X` first.
    pub fn offset_of_a(&self, a: f64) -> Result<f64> {
        Ok(self.x0 * self.eps1 * self.decay(a)?)
    }

    pub fn x_of_a(&self, a: f64) -> Result<f64> {
        Ok(self.x0 * (1.0 + self.eps1 * self.decay(a)?))
    }

    /// `(X - X0) / (3 X - X0)` in exact mode, `eps1 (a / a1)^-3 / 2` to first order.
    pub fn cs2_of_a(&self, a: f64, mode: CsMode) -> Result<f64> {
        match mode {
            CsMode::FirstOrder => Ok(0.5 * self.eps1 * self.decay(a)?),
            CsMode::Exact => {
                let dx = self.offset_of_a(a)?;
                // 3X - X0 = 2 X0 + 3 (X - X0)
                let den = guard(
                    "scaling_cs2",
                    2.0 * self.x0 + 3.0 * dx,
                    2.0 * self.x0 + 3.0 * dx.abs(),
                )?;
                Ok(dx / den)
            }
        }
    }
}
