//! Numerical proximity, counting and characteristic functions of catalog
//! solutions, and the experiments built on them.

mod catalog;
mod quad;
mod winding;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::classifier::is_shift_exceptional;
use crate::exact::Rational;
use crate::walgebra::{gcd_w, WPoly};

pub use catalog::{
    eval_ratfunc, log_eval_map, log_eval_poly, poly_roots, wrap_angle, Kind, LogVal, SolutionHandle, Target,
};
pub use quad::{circle_mean, neumaier_sum, CircleMean, Neumaier};
pub use winding::zeros_by_winding;

/// Distance from the circle below which a zero forces a radius change.
pub const NEAR_ZERO: f64 = 1e-6;
/// Radius increment applied in that case.
pub const RADIUS_NUDGE: f64 = 1e-4;
/// Box size at which the winding fallback stops subdividing.
pub const WINDING_RESOLUTION: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NevError {
    #[error("quadrature did not converge at r = {r} (last change {change:e})")]
    NonConvergent { r: f64, change: f64 },
    #[error("no zero oracle for this function and target")]
    OracleUnavailable,
    #[error("winding count unstable near |z| = {at}")]
    WindingUnstable { at: f64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("target {0} is shift-exceptional; allow it explicitly to run a contrast experiment")]
    ExceptionalTarget(String),
    #[error("radius must be positive, got {0}")]
    InvalidRadius(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureConfig {
    /// Initial number of circle nodes.
    pub nodes: usize,
    /// Maximum number of node doublings.
    pub refine_depth: u32,
    /// Absolute change between doublings accepted as converged.
    pub tolerance: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            nodes: 1024,
            refine_depth: 12,
            tolerance: 1e-8,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<(), NevError> {
        if self.nodes < 64 {
            return Err(NevError::Precondition(format!("nodes = {} < 64", self.nodes)));
        }
        if !(self.tolerance > 0.0) {
            return Err(NevError::Precondition("tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// One radius of a proximity/counting table for a single target.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NevanlinnaRow {
    pub r: f64,
    pub m: f64,
    #[serde(rename = "N")]
    pub n: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub ratio: f64,
    pub flags: Vec<String>,
}

impl NevanlinnaRow {
    fn failed(r: f64, err: &NevError) -> Self {
        NevanlinnaRow {
            r,
            m: f64::NAN,
            n: f64::NAN,
            t: f64::NAN,
            ratio: f64::NAN,
            flags: vec![format!("error: {err}")],
        }
    }
}

fn log_plus(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

/// `log |f - a|` (or `-log |f|` for `a = inf`) at `z`.
fn log_distance(f: &SolutionHandle, z: Complex64, a: Target) -> f64 {
    match a {
        Target::Infinity => -f.eval(z).logmag,
        Target::Finite(a) => f.eval(z).sub(a).logmag,
    }
}

fn proximity_mean(f: &SolutionHandle, r: f64, a: Target, cfg: &QuadratureConfig) -> CircleMean {
    circle_mean(
        |t| log_plus(-log_distance(f, Complex64::from_polar(r, t), a)),
        cfg.nodes,
        cfg.refine_depth,
        cfg.tolerance,
    )
}

fn check_radius(r: f64) -> Result<(), NevError> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(NevError::InvalidRadius(r))
    }
}

/// `m(r, a) = (1/2pi) int log+ 1/|f - a|`, or `int log+ |f|` at infinity.
pub fn proximity(f: &SolutionHandle, r: f64, a: Target, cfg: &QuadratureConfig) -> Result<f64, NevError> {
    check_radius(r)?;
    cfg.validate()?;
    let m = proximity_mean(f, r, a, cfg);
    if m.converged {
        Ok(m.value)
    } else {
        Err(NevError::NonConvergent { r, change: m.change })
    }
}

/// Zeros of `f - a` in `|z| <= r` from the oracle, else from winding numbers.
pub fn zeros_in_disc(f: &SolutionHandle, r: f64, a: Target) -> Result<Vec<(Complex64, u32)>, NevError> {
    if let Some(z) = f.zeros(a, r) {
        return Ok(z);
    }
    match a {
        Target::Infinity if f.is_entire() => Ok(Vec::new()),
        Target::Infinity => Err(NevError::OracleUnavailable),
        Target::Finite(a) => zeros_by_winding(f, a, r, WINDING_RESOLUTION),
    }
}

/// `sum_{0<|z|<=r} log(r/|z|) + n(0) log r` over a zero list.
pub fn counting_from_zeros(zeros: &[(Complex64, u32)], r: f64) -> f64 {
    neumaier_sum(zeros.iter().filter(|(z, _)| z.norm() <= r).map(|(z, m)| {
        let d = z.norm();
        let w = if d < 1e-14 { r.ln() } else { (r / d).ln() };
        *m as f64 * w
    }))
}

/// `N(r, a)`.
pub fn counting(f: &SolutionHandle, r: f64, a: Target) -> Result<f64, NevError> {
    check_radius(r)?;
    Ok(counting_from_zeros(&zeros_in_disc(f, r, a)?, r))
}

/// Moves `r` outward until no zero of any `f - a` lies within `NEAR_ZERO` of the circle.
fn nudge_radius(f: &SolutionHandle, r: f64, targets: &[Target]) -> Result<(f64, bool), NevError> {
    let mut r = r;
    let mut moved = false;
    for _ in 0..16 {
        let mut near = false;
        for &a in targets {
            let zs = zeros_in_disc(f, r + 2.0 * NEAR_ZERO, a)?;
            if zs.iter().any(|(z, _)| (z.norm() - r).abs() < NEAR_ZERO) {
                near = true;
                break;
            }
        }
        if !near {
            return Ok((r, moved));
        }
        r += RADIUS_NUDGE;
        moved = true;
    }
    Ok((r, moved))
}

/// `m`, `N` and `T = m + N` for the target `a` at radius `r`.
pub fn target_row(f: &SolutionHandle, r: f64, a: Target, cfg: &QuadratureConfig) -> Result<NevanlinnaRow, NevError> {
    check_radius(r)?;
    cfg.validate()?;
    let mut flags = Vec::new();
    let (r, moved) = nudge_radius(f, r, &[a])?;
    if moved {
        flags.push(format!("perturbed:r={r}"));
    }
    let mean = proximity_mean(f, r, a, cfg);
    if !mean.converged {
        flags.push(format!("nonconvergent:{:e}", mean.change));
    }
    let n = counting(f, r, a)?;
    let t = mean.value + n;
    let ratio = if t > 0.0 {
        mean.value / t
    } else {
        flags.push("T=0".into());
        1.0
    };
    Ok(NevanlinnaRow {
        r,
        m: mean.value,
        n,
        t,
        ratio,
        flags,
    })
}

/// `T(r) = m(r, inf) + N(r, inf)`.
pub fn characteristic(f: &SolutionHandle, r: f64, cfg: &QuadratureConfig) -> Result<NevanlinnaRow, NevError> {
    target_row(f, r, Target::Infinity, cfg)
}

/// Thread cap from `DIFFNEV_THREADS`.
pub fn thread_cap() -> Option<usize> {
    std::env::var("DIFFNEV_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// Maps `g` over the grid in parallel; output order follows the grid.
pub fn par_rows<T: Send>(grid: &[f64], g: impl Fn(f64) -> T + Sync + Send) -> Vec<T> {
    let work = || grid.par_iter().map(|&r| g(r)).collect::<Vec<T>>();
    match thread_cap() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(work),
        None => work(),
    }
}

/// `start, start + step, ..., <= stop`.
pub fn r_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>, NevError> {
    if !(step > 0.0) || !(start > 0.0) || stop < start {
        return Err(NevError::Precondition(format!("bad radius grid {start}:{stop}:{step}")));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| start + i as f64 * step).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

/// Distance from 1 allowed for every ratio of a run at an exceptional target.
pub const CONTRAST_BAND: f64 = 0.02;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DefectOptions {
    /// Run even when the target is shift-exceptional.
    pub allow_exceptional: bool,
    /// Largest acceptable ratio at the last radius.
    pub ceiling: f64,
}

impl Default for DefectOptions {
    fn default() -> Self {
        DefectOptions {
            allow_exceptional: false,
            ceiling: 0.5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DefectReport {
    pub function: String,
    pub target: String,
    pub exceptional: Option<bool>,
    pub rows: Vec<NevanlinnaRow>,
    pub verdict: Verdict,
}

/// `Some(verdict)` when the target is rational and the equation is known.
fn target_is_exceptional(f: &SolutionHandle, a: Target) -> Option<bool> {
    let (Target::Finite(a), Some(r)) = (a, f.equation.as_ref()) else {
        return None;
    };
    if a.im != 0.0 || r.degree() < 2 {
        return None;
    }
    let q = Rational::from_float(a.re)?;
    is_shift_exceptional(r, &q).ok().map(|v| v.is_exceptional)
}

/// Rows of `m(r, a)/T(r, a)` along the grid.
pub fn defect_experiment(
    f: &SolutionHandle,
    a: Target,
    grid: &[f64],
    cfg: &QuadratureConfig,
    opts: &DefectOptions,
) -> Result<DefectReport, NevError> {
    cfg.validate()?;
    if grid.is_empty() {
        return Err(NevError::Precondition("empty radius grid".into()));
    }
    let exceptional = target_is_exceptional(f, a);
    if exceptional == Some(true) && !opts.allow_exceptional {
        return Err(NevError::ExceptionalTarget(a.to_string()));
    }
    let rows: Vec<NevanlinnaRow> = par_rows(grid, |r| {
        target_row(f, r, a, cfg).unwrap_or_else(|e| NevanlinnaRow::failed(r, &e))
    });
    let first = rows.first().expect("nonempty").ratio;
    let last = rows.last().expect("nonempty").ratio;
    let verdict = if exceptional == Some(true) {
        Verdict::from_bool(rows.iter().all(|r| (r.ratio - 1.0).abs() <= CONTRAST_BAND))
    } else {
        Verdict::from_bool(last < opts.ceiling && last < first)
    };
    Ok(DefectReport {
        function: f.name.clone(),
        target: a.to_string(),
        exceptional,
        rows,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValironRow {
    pub r: f64,
    /// `T(r)` of `z -> f(z + 1)`.
    pub t_shift: f64,
    /// `d T_f(r)`.
    pub d_t: f64,
    pub ratio: f64,
    pub flags: Vec<String>,
}

/// `T_{f(.+1)}(r) / (d T_f(r))` along the grid.
pub fn valiron_check(f: &SolutionHandle, grid: &[f64], cfg: &QuadratureConfig) -> Result<Vec<ValironRow>, NevError> {
    cfg.validate()?;
    let d = match f.degree() {
        Some(d) if d >= 2 => d,
        _ => {
            return Err(NevError::Precondition(format!(
                "{} does not solve an equation of degree at least 2",
                f.name
            )))
        }
    };
    let g = f.shifted(1);
    Ok(par_rows(grid, |r| {
        let tf = characteristic(f, r, cfg);
        let tg = characteristic(&g, r, cfg);
        match (tf, tg) {
            (Ok(tf), Ok(tg)) => {
                let d_t = d as f64 * tf.t;
                let mut flags = tf.flags;
                flags.extend(tg.flags.into_iter().map(|s| format!("shifted:{s}")));
                ValironRow {
                    r,
                    t_shift: tg.t,
                    d_t,
                    ratio: tg.t / d_t,
                    flags,
                }
            }
            (Err(e), _) | (_, Err(e)) => ValironRow {
                r,
                t_shift: f64::NAN,
                d_t: f64::NAN,
                ratio: f64::NAN,
                flags: vec![format!("error: {e}")],
            },
        }
    }))
}

/// Band around 1 within which a Valiron ratio counts as settled.
pub const VALIRON_BAND: f64 = 0.02;

/// PASS when every ratio is finite and the deviation from 1 at the last
/// radius is within [`VALIRON_BAND`] or below the deviation at the first.
pub fn valiron_trend(rows: &[ValironRow]) -> Verdict {
    let (Some(first), Some(last)) = (rows.first(), rows.last()) else {
        return Verdict::Fail;
    };
    let finite = rows.iter().all(|r| r.ratio.is_finite());
    let (d0, d1) = ((first.ratio - 1.0).abs(), (last.ratio - 1.0).abs());
    Verdict::from_bool(finite && (d1 <= VALIRON_BAND || d1 < d0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SteinmetzRow {
    pub r: f64,
    /// `m_f(r) + m_{1/H(f)}(r)`.
    pub lhs: f64,
    /// `3 T_f(r)`.
    pub rhs: f64,
    pub holds: bool,
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SteinmetzReport {
    pub function: String,
    pub h: String,
    pub rows: Vec<SteinmetzRow>,
    pub fraction: f64,
    pub verdict: Verdict,
}

/// Fraction of the grid on which the inequality must hold.
pub const STEINMETZ_FRACTION: f64 = 0.9;

fn constant_coefficients(h: &WPoly) -> Result<Vec<Complex64>, NevError> {
    h.coeffs()
        .iter()
        .map(|c| {
            c.as_constant()
                .map(|q| Complex64::new(crate::exact::rational::to_f64(&q), 0.0))
                .ok_or_else(|| NevError::Precondition(format!("H has a nonconstant coefficient {c}")))
        })
        .collect()
}

/// `m_f(r) + m_{1/H(f)}(r) <= 3 T_f(r)` along the grid.
pub fn steinmetz_check(
    f: &SolutionHandle,
    h: &WPoly,
    grid: &[f64],
    cfg: &QuadratureConfig,
) -> Result<SteinmetzReport, NevError> {
    cfg.validate()?;
    if h.degree().unwrap_or(0) < 1 {
        return Err(NevError::Precondition("H must have degree at least 1".into()));
    }
    if !gcd_w(h, &h.derivative()).is_one() {
        return Err(NevError::Precondition("H must be squarefree".into()));
    }
    let coeffs = constant_coefficients(h)?;
    let roots: Vec<Target> = poly_roots(&coeffs).into_iter().map(Target::Finite).collect();
    let rows = par_rows(grid, |r0| {
        let run = || -> Result<SteinmetzRow, NevError> {
            let mut targets = roots.clone();
            targets.push(Target::Infinity);
            let (r, moved) = nudge_radius(f, r0, &targets)?;
            let mut flags = Vec::new();
            if moved {
                flags.push(format!("perturbed:r={r}"));
            }
            let tf = characteristic(f, r, cfg)?;
            flags.extend(tf.flags.iter().cloned());
            let mh = circle_mean(
                |t| log_plus(-log_eval_poly(&coeffs, f.eval(Complex64::from_polar(r, t))).logmag),
                cfg.nodes,
                cfg.refine_depth,
                cfg.tolerance,
            );
            if !mh.converged {
                flags.push(format!("nonconvergent-H:{:e}", mh.change));
            }
            let lhs = tf.m + mh.value;
            let rhs = 3.0 * tf.t;
            Ok(SteinmetzRow {
                r,
                lhs,
                rhs,
                holds: lhs <= rhs,
                flags,
            })
        };
        run().unwrap_or_else(|e| SteinmetzRow {
            r: r0,
            lhs: f64::NAN,
            rhs: f64::NAN,
            holds: false,
            flags: vec![format!("error: {e}")],
        })
    });
    let fraction = rows.iter().filter(|r| r.holds).count() as f64 / rows.len().max(1) as f64;
    Ok(SteinmetzReport {
        function: f.name.clone(),
        h: h.to_string(),
        rows,
        fraction,
        verdict: Verdict::from_bool(fraction >= STEINMETZ_FRACTION),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FirstMainRow {
    pub r: f64,
    /// `T(r; a) = m(r, a) + N(r, a)`.
    pub t_a: f64,
    /// `T(r)`.
    pub t: f64,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FirstMainReport {
    pub rows: Vec<FirstMainRow>,
    pub max_deviation: f64,
    pub verdict: Verdict,
}

/// `max |T(r; a) - T(r)|` with a bounded-growth verdict.
pub fn first_main_check(
    f: &SolutionHandle,
    a: Target,
    grid: &[f64],
    cfg: &QuadratureConfig,
) -> Result<FirstMainReport, NevError> {
    cfg.validate()?;
    if matches!(a, Target::Infinity) {
        return Err(NevError::Precondition("target must be finite".into()));
    }
    if grid.is_empty() {
        return Err(NevError::Precondition("empty radius grid".into()));
    }
    let rows = par_rows(grid, |r| -> Result<FirstMainRow, NevError> {
        let ta = target_row(f, r, a, cfg)?;
        let t = characteristic(f, ta.r, cfg)?;
        Ok(FirstMainRow {
            r: ta.r,
            t_a: ta.t,
            t: t.t,
            deviation: (ta.t - t.t).abs(),
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let k = (rows.len() / 3).max(1);
    let head = rows[..k].iter().map(|r| r.deviation).fold(0.0, f64::max);
    let tail = rows[rows.len() - k..].iter().map(|r| r.deviation).fold(0.0, f64::max);
    let t_max = rows.last().expect("nonempty").t;
    let max_deviation = rows.iter().map(|r| r.deviation).fold(0.0, f64::max);
    Ok(FirstMainReport {
        verdict: Verdict::from_bool(tail <= head + cfg.tolerance * t_max),
        rows,
        max_deviation,
    })
}
