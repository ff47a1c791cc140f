//! The four subcommands. Each writes its CSV output plus a plain-text summary
//! into the output directory and returns the summary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use kessence_core::model::{cs2_paper_thinwall, w_paper_thinwall};
use kessence_core::{
    classify_regime, evolve_full, evolve_kinetic_only, fit_scaling, CsMode, GridSpec, KineticModel,
    PotentialSpec, RegimeLabel, ScalingSolution, SharpnessReport, WallProfile,
};
use rayon::prelude::*;

use crate::config::{BackgroundConfig, Range, RunConfig};
use crate::error::{config_err, CliError};
use crate::table::{fmt_f64, Table};

pub const EOS_HEADER: [&str; 9] = [
    "X",
    "F",
    "F_X",
    "w_exact",
    "cs2_exact",
    "w_perturbed_eq14",
    "cs2_perturbed_eq11",
    "regime",
    "note",
];
pub const PROFILE_HEADER: [&str; 4] = ["x", "phi", "dphi_dx", "X_mag"];
pub const SHARPNESS_HEADER: [&str; 6] = [
    "b",
    "L",
    "peak_value",
    "peak_position",
    "half_width",
    "integral",
];
pub const TRAJECTORY_HEADER: [&str; 8] = ["t", "a", "phi", "phidot", "X", "w", "cs2", "Q"];
pub const REGIME_HEADER: [&str; 11] = [
    "b",
    "L",
    "X_estimate",
    "eps0",
    "F2",
    "w_exact",
    "w_paper",
    "cs2_exact",
    "cs2_paper",
    "regime_label",
    "regime_label_paper",
];

/// Rows whose exact and thin-wall equations of state differ by more than this
/// are flagged in the discrepancy report.
pub const W_DISCREPANCY_FLAG: f64 = 0.9;

/// Log-log slope window for the scaling check.
pub const SLOPE_TARGET: f64 = -3.0;
pub const SLOPE_TOL: f64 = 0.01;
pub const SLOPE_MIN_GROWTH: f64 = 2.0;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub summary: String,
}

fn finish(
    out: &Path,
    stem: &str,
    command: &str,
    mut files: Vec<PathBuf>,
    summary: String,
) -> Result<Outcome, CliError> {
    let path = out.join(format!("{stem}_{command}_summary.txt"));
    std::fs::write(&path, &summary).map_err(CliError::io(&path))?;
    files.push(path);
    Ok(Outcome { files, summary })
}

fn opt(v: Option<f64>) -> String {
    fmt_f64(v.unwrap_or(f64::NAN))
}

fn label(w: Option<f64>, cs2: Option<f64>) -> RegimeLabel {
    match (w, cs2) {
        (Some(w), Some(cs2)) => classify_regime(w, cs2).label,
        _ => RegimeLabel::Unclassified,
    }
}

// ---------------------------------------------------------------- eos-scan

#[derive(Debug, Clone, PartialEq)]
pub struct EosRow {
    pub x: f64,
    pub f: f64,
    pub f_x: f64,
    pub w_exact: Option<f64>,
    pub cs2_exact: Option<f64>,
    pub w_eq14: Option<f64>,
    pub cs2_eq11: Option<f64>,
    pub regime: RegimeLabel,
    pub note: String,
}

pub fn eos_rows(cfg: &RunConfig) -> Result<Vec<EosRow>, CliError> {
    let model = cfg.model.build()?;
    let range = cfg.scans.x.unwrap_or(Range {
        min: model.x0(),
        max: 2.0 * model.x0(),
        count: 101,
    });
    Ok(range
        .values()
        .par_iter()
        .map(|&x| eos_row(&model, x))
        .collect())
}

fn eos_row(model: &KineticModel, x: f64) -> EosRow {
    let mut tripped = Vec::new();
    let mut check = |name: &'static str, r: kessence_core::Result<f64>| match r {
        Ok(v) => Some(v),
        Err(_) => {
            tripped.push(name);
            None
        }
    };
    let eps = x - model.x0();
    let w_exact = check("w_exact", model.eos_w(x));
    let cs2_exact = check("cs2_exact", model.sound_speed(x));
    let w_eq14 = check("w_perturbed_eq14", model.w_perturbed_at(eps));
    let cs2_eq11 = check("cs2_perturbed_eq11", model.sound_speed_perturbed_at(eps));
    let note = tripped
        .iter()
        .map(|n| format!("guard:{n}"))
        .collect::<Vec<_>>()
        .join(";");
    EosRow {
        x,
        f: model.f(x),
        f_x: model.f_x(x),
        w_exact,
        cs2_exact,
        w_eq14,
        cs2_eq11,
        regime: label(w_exact, cs2_exact),
        note,
    }
}

pub fn cmd_eos_scan(cfg: &RunConfig, out: &Path) -> Result<Outcome, CliError> {
    let rows = eos_rows(cfg)?;
    let mut table = Table::new(&EOS_HEADER);
    for r in &rows {
        table.row(&[
            fmt_f64(r.x),
            fmt_f64(r.f),
            fmt_f64(r.f_x),
            opt(r.w_exact),
            opt(r.cs2_exact),
            opt(r.w_eq14),
            opt(r.cs2_eq11),
            r.regime.to_string(),
            r.note.clone(),
        ]);
    }
    let stem = &cfg.output.stem;
    let path = out.join(format!("{stem}_eos.csv"));
    table.write(&path)?;

    let m = &cfg.model;
    let guarded = rows.iter().filter(|r| !r.note.is_empty()).count();
    let mut s = String::new();
    let _ = writeln!(s, "command: eos-scan");
    let _ = writeln!(
        s,
        "model: F0={} F2={} X0={}",
        fmt_f64(m.f0),
        fmt_f64(m.f2),
        fmt_f64(m.x0)
    );
    let _ = writeln!(s, "rows: {}", rows.len());
    let _ = writeln!(s, "rows with degenerate denominators: {guarded}");
    for label in [
        RegimeLabel::CosmologicalConstant,
        RegimeLabel::DarkMatterLike,
        RegimeLabel::DarkEnergyMix,
        RegimeLabel::RadiationLike,
        RegimeLabel::Unclassified,
    ] {
        let n = rows.iter().filter(|r| r.regime == label).count();
        let _ = writeln!(s, "regime {label}: {n}");
    }
    finish(out, stem, "eos-scan", vec![path], s)
}

// -------------------------------------------------------------------- wall

fn walls(cfg: &RunConfig) -> Result<Vec<WallProfile>, CliError> {
    let base = cfg.wall;
    let bs = match (cfg.scans.b, base) {
        (Some(r), _) => r.values(),
        (None, Some(w)) => vec![w.b],
        (None, None) => {
            return Err(CliError::Config(
                "no wall configured (set \"wall\" or scans.b/scans.L)".into(),
            ))
        }
    };
    let ls = match (cfg.scans.l, base) {
        (Some(r), _) => r.values(),
        (None, Some(w)) => vec![w.l],
        (None, None) => {
            return Err(CliError::Config(
                "no wall separation configured (set \"wall\" or scans.L)".into(),
            ))
        }
    };
    bs.iter()
        .flat_map(|&b| ls.iter().map(move |&l| (b, l)))
        .map(|(b, l)| WallProfile::new(b, l).map_err(config_err))
        .collect()
}

fn wall_grid(cfg: &RunConfig, wall: &WallProfile) -> GridSpec {
    cfg.grid
        .map(GridSpec::from)
        .unwrap_or_else(|| wall.default_grid())
}

pub fn sharpness_rows(cfg: &RunConfig) -> Result<Vec<(WallProfile, SharpnessReport)>, CliError> {
    walls(cfg)?
        .into_par_iter()
        .map(|w| Ok((w, w.sharpness(&wall_grid(cfg, &w))?)))
        .collect()
}

pub fn cmd_wall(cfg: &RunConfig, out: &Path) -> Result<Outcome, CliError> {
    let stem = &cfg.output.stem;
    let reports = sharpness_rows(cfg)?;

    let profiles: Vec<(PathBuf, Table)> = reports
        .par_iter()
        .map(|(w, _)| {
            let sample = w.sample_grid(&wall_grid(cfg, w))?;
            let mut t = Table::new(&PROFILE_HEADER);
            for i in 0..sample.len() {
                t.row(&[
                    fmt_f64(sample.x[i]),
                    fmt_f64(sample.phi[i]),
                    fmt_f64(sample.dphi_dx[i]),
                    fmt_f64(sample.x_mag[i]),
                ]);
            }
            let name = format!("{stem}_profile_b{}_L{}.csv", w.b(), w.separation());
            Ok((out.join(name), t))
        })
        .collect::<Result<_, CliError>>()?;

    let mut files = Vec::new();
    for (path, t) in &profiles {
        t.write(path)?;
        files.push(path.clone());
    }

    let mut table = Table::new(&SHARPNESS_HEADER);
    let mut s = String::new();
    let _ = writeln!(s, "command: wall");
    for (w, r) in &reports {
        table.row(&[
            fmt_f64(w.b()),
            fmt_f64(w.separation()),
            fmt_f64(r.peak_value),
            fmt_f64(r.peak_positions.1),
            fmt_f64(r.half_width),
            fmt_f64(r.integral),
        ]);
        let _ = writeln!(
            s,
            "b={} L={}: phi(0)={} peak={} ({:.4} of (pi b)^2/2) peaks at {} and {} fwhm={} integral={}",
            w.b(),
            w.separation(),
            fmt_f64(w.phi(0.0)),
            fmt_f64(r.peak_value),
            r.peak_value / w.thin_wall_peak(),
            fmt_f64(r.peak_positions.0),
            fmt_f64(r.peak_positions.1),
            fmt_f64(r.half_width),
            fmt_f64(r.integral),
        );
    }
    let path = out.join(format!("{stem}_sharpness.csv"));
    table.write(&path)?;
    files.push(path);
    finish(out, stem, "wall", files, s)
}

// ------------------------------------------------------------------ evolve

pub fn cmd_evolve(cfg: &RunConfig, out: &Path) -> Result<Outcome, CliError> {
    let model = cfg.model.build()?;
    let potential = cfg.potential.build()?;
    let background = cfg.background.build()?;
    let e = &cfg.evolve;
    let init = e.init()?;
    let control = e.control();

    let traj = if e.kinetic_only {
        evolve_kinetic_only(&model, &background, init, e.t_end, &control)?
    } else {
        evolve_full(&model, &potential, &background, init, e.t_end, &control)?
    };

    let mut table = Table::new(&TRAJECTORY_HEADER);
    for r in &traj.rows {
        table.row(&[r.t, r.a, r.phi, r.phidot, r.x, r.w, r.cs2, r.q].map(fmt_f64));
    }
    let stem = &cfg.output.stem;
    let path = out.join(format!("{stem}_trajectory.csv"));
    table.write(&path)?;

    let conserving = e.kinetic_only || matches!(potential, PotentialSpec::Constant { .. });
    let drift = traj.q_drift();
    let drift_limit = 100.0 * control.rel_tol;
    // a NaN drift counts as a failure
    let within = drift <= drift_limit;
    let failed = conserving && !within;

    let mut s = String::new();
    let _ = writeln!(s, "command: evolve");
    let dynamics = match (e.kinetic_only, potential) {
        (true, _) => "kinetic-only",
        (false, PotentialSpec::Constant { .. }) => "full (constant potential)",
        (false, PotentialSpec::Quadratic { .. }) => "full (quadratic potential)",
    };
    let _ = writeln!(s, "dynamics: {dynamics}");
    let bg = match cfg.background {
        BackgroundConfig::DeSitter { h } => format!("de_sitter H={}", fmt_f64(h)),
        BackgroundConfig::PowerLaw { p, t0 } => {
            format!("power_law p={} t0={}", fmt_f64(p), fmt_f64(t0))
        }
    };
    let _ = writeln!(s, "background: {bg}");
    let _ = writeln!(s, "rows: {}", traj.rows.len());
    let _ = writeln!(
        s,
        "steps: accepted={} rejected={} evaluations={}",
        traj.stats.accepted, traj.stats.rejected, traj.stats.evaluations
    );
    if let (Some(first), Some(last)) = (traj.rows.first(), traj.rows.last()) {
        for (name, r) in [("initial", first), ("final", last)] {
            let _ = writeln!(
                s,
                "{name}: t={} a={} X={} w={} cs2={}",
                fmt_f64(r.t),
                fmt_f64(r.a),
                fmt_f64(r.x),
                fmt_f64(r.w),
                fmt_f64(r.cs2)
            );
        }
    }
    let verdict = if !conserving {
        "n/a (potential term breaks conservation)"
    } else if failed {
        "FAILED"
    } else {
        "OK"
    };
    let _ = writeln!(
        s,
        "invariant Q drift: {} (limit {}): {verdict}",
        fmt_f64(drift),
        fmt_f64(drift_limit)
    );

    match fit_scaling(&traj, e.tail_fraction) {
        Ok(fit) => {
            let _ = writeln!(
                s,
                "scaling fit: eps1={} a1={} max_residual={} tail_rows={}",
                fmt_f64(fit.eps1),
                fmt_f64(fit.a1),
                fmt_f64(fit.max_residual),
                fit.tail_rows
            );
            if let Ok(sol) = ScalingSolution::new(model.x0(), fit.eps1, fit.a1) {
                let worst = traj.rows[traj.rows.len() - fit.tail_rows..]
                    .iter()
                    .filter_map(|r| {
                        sol.cs2_of_a(r.a, CsMode::Exact)
                            .ok()
                            .map(|c| (r.cs2 / c - 1.0).abs())
                    })
                    .fold(0.0, f64::max);
                let _ = writeln!(
                    s,
                    "cs2 vs scaling form (exact mode) max relative difference: {}",
                    fmt_f64(worst)
                );
            }
        }
        Err(err) => {
            let _ = writeln!(s, "scaling fit: n/a ({err})");
        }
    }
    match traj.loglog_slope(SLOPE_MIN_GROWTH) {
        Ok(slope) => {
            let within = (slope - SLOPE_TARGET).abs() <= SLOPE_TOL;
            let _ = writeln!(
                s,
                "slope: {:.4} (log-log X-X0 vs a, a/a0 >= {SLOPE_MIN_GROWTH}; target {SLOPE_TARGET:.2} +- {SLOPE_TOL}): {}",
                slope,
                if within { "within" } else { "outside" }
            );
        }
        Err(err) => {
            let _ = writeln!(s, "slope: n/a ({err})");
        }
    }
    let _ = writeln!(s, "status: {}", if failed { "FAILED" } else { "OK" });

    let outcome = finish(out, stem, "evolve", vec![path], s)?;
    if failed {
        return Err(CliError::CheckFailed(format!(
            "invariant Q drift {} exceeds {}",
            fmt_f64(drift),
            fmt_f64(drift_limit)
        )));
    }
    Ok(outcome)
}

// ----------------------------------------------------------------- regimes

#[derive(Debug, Clone, PartialEq)]
pub struct RegimeTableRow {
    pub b: Option<f64>,
    pub l: Option<f64>,
    pub x_estimate: f64,
    pub eps0: f64,
    pub f2: f64,
    pub w_exact: Option<f64>,
    pub w_paper: Option<f64>,
    pub cs2_exact: Option<f64>,
    pub cs2_paper: Option<f64>,
    /// Label of the exact columns.
    pub regime_label: RegimeLabel,
    /// Label of the thin-wall approximation columns.
    pub regime_label_paper: RegimeLabel,
}

pub fn regime_rows(cfg: &RunConfig) -> Result<Vec<RegimeTableRow>, CliError> {
    let f0 = cfg.model.build()?.f0();
    let wall_indexed = cfg.scans.b.is_some()
        || cfg.scans.l.is_some()
        || (cfg.scans.x0.is_none() && cfg.wall.is_some());
    let sources: Vec<(Option<f64>, Option<f64>, f64)> = if wall_indexed {
        walls(cfg)?
            .iter()
            .map(|w| {
                (
                    Some(w.b()),
                    Some(w.separation()),
                    w.kinetic_magnitude(0.5 * w.separation()),
                )
            })
            .collect()
    } else {
        cfg.scans
            .x0
            .unwrap_or(Range::single(cfg.model.x0))
            .values()
            .into_iter()
            .map(|x| (None, None, x))
            .collect()
    };
    let eps = cfg
        .scans
        .eps0
        .unwrap_or(Range::single(cfg.model.eps0))
        .values();
    let f2s = cfg.scans.f2.unwrap_or(Range::single(cfg.model.f2)).values();

    let mut points = Vec::with_capacity(sources.len() * eps.len() * f2s.len());
    for &(b, l, x) in &sources {
        for &e in &eps {
            for &f2 in &f2s {
                points.push((b, l, x, e, f2));
            }
        }
    }
    points
        .par_iter()
        .map(|&(b, l, x_estimate, eps0, f2)| {
            let model = KineticModel::new(f0, f2, x_estimate, eps0).map_err(config_err)?;
            let w_exact = model.w_perturbed_exact().ok();
            let cs2_exact = model.sound_speed_perturbed().ok();
            let w_paper = w_paper_thinwall(x_estimate, eps0, f2).ok();
            let cs2_paper = cs2_paper_thinwall(x_estimate, eps0).ok();
            Ok(RegimeTableRow {
                b,
                l,
                x_estimate,
                eps0,
                f2,
                w_exact,
                w_paper,
                cs2_exact,
                cs2_paper,
                regime_label: label(w_exact, cs2_exact),
                regime_label_paper: label(w_paper, cs2_paper),
            })
        })
        .collect()
}

fn describe(r: &RegimeTableRow) -> String {
    let mut s = String::new();
    if let (Some(b), Some(l)) = (r.b, r.l) {
        let _ = write!(s, "b={} L={} ", fmt_f64(b), fmt_f64(l));
    }
    let _ = write!(
        s,
        "X_estimate={} eps0={} F2={}",
        fmt_f64(r.x_estimate),
        fmt_f64(r.eps0),
        fmt_f64(r.f2)
    );
    s
}

fn max_gap(
    rows: &[RegimeTableRow],
    pick: impl Fn(&RegimeTableRow) -> (Option<f64>, Option<f64>),
) -> Option<(f64, &RegimeTableRow)> {
    rows.iter()
        .filter_map(|r| match pick(r) {
            (Some(a), Some(b)) => Some(((a - b).abs(), r)),
            _ => None,
        })
        .fold(None, |best, cur| match best {
            Some((g, _)) if g >= cur.0 => best,
            _ => Some(cur),
        })
}

pub fn discrepancy_report(rows: &[RegimeTableRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "exact vs thin-wall approximation discrepancy");
    let _ = writeln!(s, "rows: {}", rows.len());
    match max_gap(rows, |r| (r.w_exact, r.w_paper)) {
        Some((g, r)) => {
            let _ = writeln!(
                s,
                "max |w_exact - w_paper| = {} at {}",
                fmt_f64(g),
                describe(r)
            );
        }
        None => {
            let _ = writeln!(s, "max |w_exact - w_paper| = n/a");
        }
    }
    match max_gap(rows, |r| (r.cs2_exact, r.cs2_paper)) {
        Some((g, r)) => {
            let _ = writeln!(
                s,
                "max |cs2_exact - cs2_paper| = {} at {}",
                fmt_f64(g),
                describe(r)
            );
        }
        None => {
            let _ = writeln!(s, "max |cs2_exact - cs2_paper| = n/a");
        }
    }
    let flagged: Vec<&RegimeTableRow> = rows
        .iter()
        .filter(|r| matches!((r.w_exact, r.w_paper), (Some(a), Some(b)) if (a - b).abs() > W_DISCREPANCY_FLAG))
        .collect();
    let _ = writeln!(
        s,
        "rows with |w_exact - w_paper| > {W_DISCREPANCY_FLAG}: {}",
        flagged.len()
    );
    for r in flagged {
        let _ = writeln!(
            s,
            "FLAG {}: w_exact={} ({}) w_paper={} ({})",
            describe(r),
            opt(r.w_exact),
            r.regime_label,
            opt(r.w_paper),
            r.regime_label_paper
        );
    }
    let disagree = rows
        .iter()
        .filter(|r| r.regime_label != r.regime_label_paper)
        .count();
    let _ = writeln!(
        s,
        "rows where exact and thin-wall regimes disagree: {disagree}"
    );
    s
}

pub fn cmd_regimes(cfg: &RunConfig, out: &Path) -> Result<Outcome, CliError> {
    let rows = regime_rows(cfg)?;
    let mut table = Table::new(&REGIME_HEADER);
    for r in &rows {
        table.row(&[
            r.b.map(fmt_f64).unwrap_or_default(),
            r.l.map(fmt_f64).unwrap_or_default(),
            fmt_f64(r.x_estimate),
            fmt_f64(r.eps0),
            fmt_f64(r.f2),
            opt(r.w_exact),
            opt(r.w_paper),
            opt(r.cs2_exact),
            opt(r.cs2_paper),
            r.regime_label.to_string(),
            r.regime_label_paper.to_string(),
        ]);
    }
    let stem = &cfg.output.stem;
    let csv = out.join(format!("{stem}_regimes.csv"));
    table.write(&csv)?;
    let report = discrepancy_report(&rows);
    let report_path = out.join(format!("{stem}_discrepancy.txt"));
    std::fs::write(&report_path, &report).map_err(CliError::io(&report_path))?;

    let mut s = String::from("command: regimes\n");
    s.push_str(&report);
    finish(out, stem, "regimes", vec![csv, report_path], s)
}
