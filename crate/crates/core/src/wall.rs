//! Soliton/antisoliton wall pair `phi(x) = pi [tanh b(x + L/2) - tanh b(x - L/2)]`.
//!
//! The static kinetic magnitude `|X| = (dphi/dx)^2 / 2` concentrates at the two
//! walls `x = +-L/2` and sharpens into a delta sequence as `b` grows. With the
//! (+,-,-,-) signature the signed kinetic variable of a static profile is
//! `-|X|`; this module only ever returns the magnitude.

use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};

fn ln_cosh(y: f64) -> f64 {
    let y = y.abs();
    y + (-2.0 * y).exp().ln_1p() - LN_2
}

fn ln_sinh(y: f64) -> f64 {
    debug_assert!(y > 0.0);
    y + (-(-2.0 * y).exp_m1()).ln() - LN_2
}

fn sech2(y: f64) -> f64 {
    let c = y.cosh();
    1.0 / (c * c)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WallProfile {
    b: f64,
    l: f64,
}

/// Uniform grid over `[x_min, x_max]`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.x_min.is_finite() && self.x_max.is_finite() && self.x_min < self.x_max) {
            return Err(Error::InvalidGrid(format!(
                "need finite x_min < x_max, got [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        if self.n_points < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {}",
                self.n_points
            )));
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.spacing();
        let last = self.n_points - 1;
        (0..self.n_points).map(move |i| {
            if i == last {
                self.x_max
            } else {
                self.x_min + i as f64 * h
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileSample {
    pub x: Vec<f64>,
    pub phi: Vec<f64>,
    pub dphi_dx: Vec<f64>,
    pub x_mag: Vec<f64>,
}

impl ProfileSample {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharpnessReport {
    /// Largest sampled kinetic magnitude.
    pub peak_value: f64,
    /// Left and right peak locations, refined by a three-point parabola.
    pub peak_positions: (f64, f64),
    /// Full width at half maximum of the right peak.
    pub half_width: f64,
    /// Trapezoidal integral of the kinetic magnitude over the grid.
    pub integral: f64,
}

impl WallProfile {
    pub fn new(b: f64, l: f64) -> Result<Self> {
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "wall steepness b must be > 0, got {b}"
            )));
        }
        if !(l > 0.0 && l.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "wall separation L must be > 0, got {l}"
            )));
        }
        Ok(Self { b, l })
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn separation(&self) -> f64 {
        self.l
    }

    pub fn phi(&self, x: f64) -> f64 {
        let upper = self.b * (x + 0.5 * self.l);
        let lower = self.b * (x - 0.5 * self.l);
        if upper > 1.0 && lower > 1.0 || upper < -1.0 && lower < -1.0 {
            // outside both walls the tanh difference cancels; use
            // sinh(bL) / (cosh(upper) cosh(lower)) in log form instead
            let ln = ln_sinh(self.b * self.l) - (ln_cosh(upper) + ln_cosh(lower));
            PI * ln.exp()
        } else {
            PI * (upper.tanh() - lower.tanh())
        }
    }

    pub fn dphi_dx(&self, x: f64) -> f64 {
        let upper = self.b * (x + 0.5 * self.l);
        let lower = self.b * (x - 0.5 * self.l);
        PI * self.b * (sech2(upper) - sech2(lower))
    }

    /// `(dphi/dx)^2 / 2`.
    pub fn kinetic_magnitude(&self, x: f64) -> f64 {
        let g = self.dphi_dx(x);
        0.5 * g * g
    }

    /// `phi(0) = 2 pi tanh(bL/2)`, the height of the box.
    pub fn center_height(&self) -> f64 {
        2.0 * PI * (0.5 * self.b * self.l).tanh()
    }

    /// Limiting peak magnitude `(pi b)^2 / 2` of a well separated pair.
    pub fn thin_wall_peak(&self) -> f64 {
        0.5 * (PI * self.b).powi(2)
    }

    /// Grid on `[-2L, 2L]` with spacing at most `min(1/(10 b), L/200)`.
    pub fn default_grid(&self) -> GridSpec {
        let target = (0.1 / self.b).min(self.l / 200.0);
        let span = 4.0 * self.l;
        let intervals = (span / target * (1.0 - 1e-12)).ceil().max(1.0) as usize;
        GridSpec {
            x_min: -2.0 * self.l,
            x_max: 2.0 * self.l,
            n_points: intervals + 1,
        }
    }

    pub fn sample(&self, x_min: f64, x_max: f64, n_points: usize) -> Result<ProfileSample> {
        self.sample_grid(&GridSpec {
            x_min,
            x_max,
            n_points,
        })
    }

    pub fn sample_grid(&self, grid: &GridSpec) -> Result<ProfileSample> {
        grid.validate()?;
        let x: Vec<f64> = grid.points().collect();
        let phi = x.iter().map(|&x| self.phi(x)).collect();
        let dphi_dx: Vec<f64> = x.iter().map(|&x| self.dphi_dx(x)).collect();
        let x_mag = dphi_dx.iter().map(|&g| 0.5 * g * g).collect();
        Ok(ProfileSample {
            x,
            phi,
            dphi_dx,
            x_mag,
        })
    }

    pub fn sharpness(&self, grid: &GridSpec) -> Result<SharpnessReport> {
        grid.validate()?;
        let limit = 0.1 / self.b;
        let spacing = grid.spacing();
        if spacing > limit * (1.0 + 1e-9) {
            return Err(Error::GridTooCoarse {
                spacing,
                b: self.b,
                limit,
            });
        }
        let s = self.sample_grid(grid)?;
        let split = s.x.partition_point(|&x| x < 0.0);
        if split == 0 || split == s.len() {
            return Err(Error::InvalidGrid(
                "grid must contain points on both sides of x = 0".into(),
            ));
        }

        let argmax = |range: std::ops::Range<usize>| {
            range.fold(None, |best: Option<usize>, i| match best {
                Some(j) if s.x_mag[j] >= s.x_mag[i] => Some(j),
                _ => Some(i),
            })
        };
        let left = argmax(0..split).expect("non-empty");
        let right = argmax(split..s.len()).expect("non-empty");
        let peak_value = s.x_mag[left].max(s.x_mag[right]);

        let half = 0.5 * s.x_mag[right];
        let mut lo = right;
        while lo > split && s.x_mag[lo - 1] >= half {
            lo -= 1;
        }
        let mut hi = right;
        while hi + 1 < s.len() && s.x_mag[hi + 1] >= half {
            hi += 1;
        }
        let cross = |inside: usize, outside: usize| {
            let (yi, yo) = (s.x_mag[inside], s.x_mag[outside]);
            if yi == yo {
                s.x[inside]
            } else {
                s.x[inside] + (half - yi) / (yo - yi) * (s.x[outside] - s.x[inside])
            }
        };
        let x_lo = if lo > split && s.x_mag[lo - 1] < half {
            cross(lo, lo - 1)
        } else {
            s.x[lo]
        };
        let x_hi = if hi + 1 < s.len() {
            cross(hi, hi + 1)
        } else {
            s.x[hi]
        };
        let half_width = (x_hi - x_lo).max(spacing);

        let integral =
            s.x.windows(2)
                .zip(s.x_mag.windows(2))
                .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
                .sum();

        Ok(SharpnessReport {
            peak_value,
            peak_positions: (refine_peak(&s, left), refine_peak(&s, right)),
            half_width,
            integral,
        })
    }

    /// Compares the analytic gradient with a centered difference of `phi`.
    /// Returns `(analytic, numeric, abs_error)`.
    pub fn check_derivative(&self, x: f64, h: f64) -> Result<(f64, f64, f64)> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "step must be > 0, got {h}"
            )));
        }
        let analytic = self.dphi_dx(x);
        let numeric = (self.phi(x + h) - self.phi(x - h)) / (2.0 * h);
        Ok((analytic, numeric, (analytic - numeric).abs()))
    }
}

fn refine_peak(s: &ProfileSample, i: usize) -> f64 {
    if i == 0 || i + 1 >= s.len() {
        return s.x[i];
    }
    let (ym, y0, yp) = (s.x_mag[i - 1], s.x_mag[i], s.x_mag[i + 1]);
    let curvature = ym - 2.0 * y0 + yp;
    if curvature >= 0.0 {
        return s.x[i];
    }
    let h = s.x[i + 1] - s.x[i];
    let shift = 0.5 * (ym - yp) / curvature;
    s.x[i] + shift.clamp(-0.5, 0.5) * h
}
