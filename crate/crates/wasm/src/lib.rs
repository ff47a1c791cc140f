//! Browser bindings: wall profiles, equation-of-state curves and kinetic-only
//! evolutions, each returned as a set of equally long columns.

use kessence_core::{
    evolve_kinetic_only, fit_scaling, BackgroundSpec, FieldState, KineticModel, StepControl,
    WallProfile,
};
use wasm_bindgen::prelude::*;

/// Upper bound on sample counts accepted from the page.
pub const MAX_POINTS: usize = 20_000;

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Series {
    columns: Vec<Vec<f64>>,
    info: String,
}

#[wasm_bindgen]
impl Series {
    pub fn len(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Column `i` as a `Float64Array`; out-of-range indices give an empty array.
    pub fn column(&self, i: usize) -> Vec<f64> {
        self.columns.get(i).cloned().unwrap_or_default()
    }

    pub fn info(&self) -> String {
        self.info.clone()
    }
}

impl Series {
    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }
}

fn check_points(n: usize) -> Result<(), String> {
    if (2..=MAX_POINTS).contains(&n) {
        Ok(())
    } else {
        Err(format!("point count must be in 2..={MAX_POINTS}, got {n}"))
    }
}

/// Columns: x, phi, X_mag over the default window [-2L, 2L].
pub fn wall_series(b: f64, l: f64, n: usize) -> Result<Series, String> {
    check_points(n)?;
    let w = WallProfile::new(b, l).map_err(|e| e.to_string())?;
    let s = w.sample(-2.0 * l, 2.0 * l, n).map_err(|e| e.to_string())?;
    let report = w.sharpness(&w.default_grid()).map_err(|e| e.to_string())?;
    let info = format!(
        "phi(0) = {:.6}, peak X = {:.4} (thin-wall {:.4}), FWHM = {:.4}",
        w.phi(0.0),
        report.peak_value,
        w.thin_wall_peak(),
        report.half_width
    );
    Ok(Series {
        columns: vec![s.x, s.phi, s.x_mag],
        info,
    })
}

/// Columns: X, w, cs2. Guarded points are NaN.
pub fn eos_series(
    f0: f64,
    f2: f64,
    x0: f64,
    x_min: f64,
    x_max: f64,
    n: usize,
) -> Result<Series, String> {
    check_points(n)?;
    if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
        return Err(format!("invalid X range [{x_min}, {x_max}]"));
    }
    let m = KineticModel::new(f0, f2, x0, 0.0).map_err(|e| e.to_string())?;
    let step = (x_max - x_min) / (n - 1) as f64;
    let xs: Vec<f64> = (0..n)
        .map(|i| {
            if i == n - 1 {
                x_max
            } else {
                x_min + i as f64 * step
            }
        })
        .collect();
    let w = xs.iter().map(|&x| m.eos_w(x).unwrap_or(f64::NAN)).collect();
    let cs2 = xs
        .iter()
        .map(|&x| m.sound_speed(x).unwrap_or(f64::NAN))
        .collect();
    let info = format!("w(X0) = -1, cs2 pole at X0/3 = {:.4}", x0 / 3.0);
    Ok(Series {
        columns: vec![xs, w, cs2],
        info,
    })
}

/// Columns: a, X - X0, w, cs2 for a kinetic-only run in de Sitter space.
pub fn evolve_series(
    f0: f64,
    f2: f64,
    x0: f64,
    x_ratio: f64,
    hubble: f64,
    t_end: f64,
) -> Result<Series, String> {
    let m = KineticModel::new(f0, f2, x0, 0.0).map_err(|e| e.to_string())?;
    let init = FieldState::from_kinetic(0.0, 1.0, 0.0, x_ratio * x0).map_err(|e| e.to_string())?;
    let bg = BackgroundSpec::DeSitter { h: hubble };
    let control = StepControl {
        output_interval: t_end / 400.0,
        ..StepControl::default()
    };
    let traj = evolve_kinetic_only(&m, &bg, init, t_end, &control).map_err(|e| e.to_string())?;
    let col =
        |f: fn(&kessence_core::TrajectoryRow) -> f64| traj.rows.iter().map(f).collect::<Vec<_>>();
    let mut info = format!("Q drift {:.1e}", traj.q_drift());
    if let Ok(slope) = traj.loglog_slope(2.0) {
        info.push_str(&format!(", slope of ln(X - X0) vs ln a: {slope:.4}"));
    }
    if let Ok(fit) = fit_scaling(&traj, 0.5) {
        info.push_str(&format!(", eps1 = {:.4e}", fit.eps1));
    }
    Ok(Series {
        columns: vec![
            col(|r| r.a),
            traj.offsets().to_vec(),
            col(|r| r.w),
            col(|r| r.cs2),
        ],
        info,
    })
}

#[wasm_bindgen]
pub fn wall_profile(b: f64, l: f64, n: usize) -> Result<Series, JsError> {
    wall_series(b, l, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn eos_curve(
    f0: f64,
    f2: f64,
    x0: f64,
    x_min: f64,
    x_max: f64,
    n: usize,
) -> Result<Series, JsError> {
    eos_series(f0, f2, x0, x_min, x_max, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn evolve_kinetic(
    f0: f64,
    f2: f64,
    x0: f64,
    x_ratio: f64,
    hubble: f64,
    t_end: f64,
) -> Result<Series, JsError> {
    evolve_series(f0, f2, x0, x_ratio, hubble, t_end).map_err(|e| JsError::new(&e))
}
