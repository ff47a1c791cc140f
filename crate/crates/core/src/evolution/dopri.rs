//! Dormand-Prince 5(4) embedded pair with local extrapolation and FSAL.

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];

// fifth-order weights minus embedded fourth-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;

pub(crate) trait System<const N: usize> {
    fn rhs(&self, t: f64, y: &[f64; N]) -> Result<[f64; N]>;
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Stats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

pub(crate) struct Stepper<'a, S, const N: usize> {
    system: &'a S,
    tol: Tolerance,
    pub t: f64,
    pub y: [f64; N],
    k_first: [f64; N],
    h: f64,
    max_steps: usize,
    pub stats: Stats,
}

impl<'a, S: System<N>, const N: usize> Stepper<'a, S, N> {
    pub fn new(
        system: &'a S,
        t: f64,
        y: [f64; N],
        h: f64,
        tol: Tolerance,
        max_steps: usize,
    ) -> Result<Self> {
        let k_first = system.rhs(t, &y)?;
        Ok(Self {
            system,
            tol,
            t,
            y,
            k_first,
            h,
            max_steps,
            stats: Stats {
                evaluations: 1,
                ..Stats::default()
            },
        })
    }

    fn failure(&self, reason: impl Into<String>) -> Error {
        Error::StepFailure {
            t: self.t,
            reason: reason.into(),
        }
    }

    /// Advances until `self.t == target`, never stepping past it.
    pub fn advance_to(&mut self, target: f64) -> Result<()> {
        while self.t < target {
            if self.stats.accepted + self.stats.rejected >= self.max_steps {
                return Err(self.failure(format!("exceeded {} steps", self.max_steps)));
            }
            let remaining = target - self.t;
            // stretch slightly rather than leave a sliver before the target
            let landing = 1.01 * self.h >= remaining;
            let h = if landing { remaining } else { self.h };
            if h <= 1e-14 * self.t.abs().max(1.0) {
                return Err(self.failure(format!("step size underflow (h = {h:e})")));
            }

            let (y_new, k_last, err) = self.attempt(h)?;
            let factor = if err == 0.0 {
                MAX_FACTOR
            } else {
                (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
            };

            if err <= 1.0 {
                self.stats.accepted += 1;
                self.t = if landing { target } else { self.t + h };
                self.y = y_new;
                self.k_first = k_last;
                // a clipped landing step says nothing about the natural step size
                if !landing || factor < 1.0 {
                    self.h = h * factor;
                }
            } else {
                self.stats.rejected += 1;
                self.h = h * factor.min(1.0);
            }
        }
        Ok(())
    }

    fn attempt(&mut self, h: f64) -> Result<([f64; N], [f64; N], f64)> {
        let mut k = [[0.0; N]; 6];
        k[0] = self.k_first;
        for s in 1..6 {
            let mut ys = self.y;
            for (i, yi) in ys.iter_mut().enumerate() {
                *yi += h * (0..s).map(|j| A[s][j] * k[j][i]).sum::<f64>();
            }
            k[s] = self.system.rhs(self.t + C[s] * h, &ys)?;
            self.stats.evaluations += 1;
        }
        let mut y_new = self.y;
        for (i, yi) in y_new.iter_mut().enumerate() {
            *yi += h * (0..6).map(|j| A[6][j] * k[j][i]).sum::<f64>();
        }
        if y_new.iter().any(|v| !v.is_finite()) {
            return Err(self.failure("non-finite state"));
        }
        // the seventh stage sits on the new solution and is reused next step
        let k_last = self.system.rhs(self.t + h, &y_new)?;
        self.stats.evaluations += 1;

        let mut err: f64 = 0.0;
        for i in 0..N {
            let e = h * (0..6).map(|j| E[j] * k[j][i]).sum::<f64>() + h * E[6] * k_last[i];
            let scale = self.tol.abs + self.tol.rel * self.y[i].abs().max(y_new[i].abs());
            err = err.max((e / scale).abs());
        }
        Ok((y_new, k_last, err))
    }
}
