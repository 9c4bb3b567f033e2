use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::functionals::kappa;
use crate::{Complex, Error, Executor, QuadConfig, QuadResult, Result, Symbol};

/// Sample angles per circle used when none are requested.
pub const DEFAULT_ANGLES: usize = 64;
/// Golden-section steps spent around the best grid angle of each circle.
pub const GOLDEN_STEPS: usize = 12;
/// Relative gap between the last two tail sups below which the proxy counts
/// as converged (relative to `max(1, proxy)`).
pub const PROXY_REL_TOL: f64 = 1e-2;
/// Largest supported schedule depth `K`.
pub const MAX_SCHEDULE_DEPTH: u32 = 13;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub alpha: Complex,
    pub value: f64,
    pub error: f64,
    pub converged: bool,
    /// Set when the quadrature for this point failed; `value` is then NaN.
    pub failure: Option<Error>,
}

impl SweepPoint {
    fn from_result(alpha: Complex, r: Result<QuadResult>) -> Self {
        match r {
            Ok(q) => Self { alpha, value: q.value, error: q.error_estimate, converged: q.converged, failure: None },
            Err(e) => Self { alpha, value: f64::NAN, error: f64::INFINITY, converged: false, failure: Some(e) },
        }
    }
}

/// `kappa` on a polar grid of `α`, ordered by radius and then by angle
/// in `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaSweep {
    pub points: Vec<SweepPoint>,
}

impl AlphaSweep {
    /// Point with the largest finite value; ties keep the earliest point.
    pub fn sup(&self) -> Option<&SweepPoint> {
        let mut best: Option<&SweepPoint> = None;
        for p in self.points.iter().filter(|p| p.failure.is_none()) {
            if best.map_or(true, |b| p.value > b.value) {
                best = Some(p);
            }
        }
        best
    }

    /// `(radius, sup over that radius)` in increasing radius order.
    pub fn radius_sups(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = Vec::new();
        for p in &self.points {
            let r = p.alpha.norm();
            let v = if p.failure.is_none() { p.value } else { f64::NEG_INFINITY };
            match out.last_mut() {
                Some((lr, lv)) if (*lr - r).abs() <= 1e-14 => *lv = lv.max(v),
                _ => out.push((r, v)),
            }
        }
        out
    }

    pub fn failures(&self) -> usize {
        self.points.iter().filter(|p| p.failure.is_some()).count()
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !r.is_finite() {
        return Err(Error::NonFinite);
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidArgument("radii must lie in (0, 1)"));
    }
    Ok(())
}

fn circle_angle(j: usize, angles: usize) -> f64 {
    2.0 * PI * j as f64 / angles as f64
}

pub fn boundedness_profile<E: Executor>(
    psi: &Symbol,
    radii: &[f64],
    angles_per_radius: usize,
    cfg: &QuadConfig,
    exec: &E,
) -> Result<AlphaSweep> {
    cfg.validate()?;
    if angles_per_radius == 0 {
        return Err(Error::InvalidArgument("at least one angle per radius is required"));
    }
    for &r in radii {
        check_radius(r)?;
    }
    let mut radii = radii.to_vec();
    radii.sort_by(f64::total_cmp);
    radii.dedup();
    let n = radii.len() * angles_per_radius;
    let points = exec.map(n, |i| {
        let r = radii[i / angles_per_radius];
        let alpha = Complex::from_polar(r, circle_angle(i % angles_per_radius, angles_per_radius));
        SweepPoint::from_result(alpha, kappa(psi, alpha, cfg))
    });
    Ok(AlphaSweep { points })
}

/// `s_k = 1 − 2^{−k}` for `k = 3..=depth`.
pub fn default_schedule(depth: u32) -> Result<Vec<f64>> {
    if !(3..=MAX_SCHEDULE_DEPTH).contains(&depth) {
        return Err(Error::InvalidArgument("schedule depth must lie in 3..=13"));
    }
    Ok((3..=depth).map(|k| 1.0 - libm::ldexp(1.0, -(k as i32))).collect())
}

/// Circle sup of `kappa` at one radius of the schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailLevel {
    pub s: f64,
    pub sup: f64,
    /// Quadrature error estimate at the maximizing point.
    pub error: f64,
    pub argmax: Complex,
    /// Every evaluation on this circle converged.
    pub converged: bool,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EssNormEstimate {
    pub schedule: Vec<f64>,
    pub tail_sups: Vec<f64>,
    pub levels: Vec<TailLevel>,
    /// Tail sup at the largest schedule radius.
    pub proxy: f64,
    /// Quadrature error at the final level plus the gap to the previous level.
    pub proxy_error: f64,
    pub converged: bool,
    pub diagnostics: String,
}

/// Golden-section maximization of `g` on `[a, b]`, recording every evaluation.
fn golden_max<G>(mut a: f64, mut b: f64, steps: usize, g: &G, record: &mut impl FnMut(f64, Result<QuadResult>) -> f64)
where
    G: Fn(f64) -> Result<QuadResult>,
{
    let inv_phi = 0.5 * (libm::sqrt(5.0) - 1.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = record(c, g(c));
    let mut fd = record(d, g(d));
    for _ in 0..steps {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = record(c, g(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = record(d, g(d));
        }
    }
}

struct Tracker {
    level: TailLevel,
    best_theta: f64,
}

impl Tracker {
    fn record(&mut self, theta: f64, r: Result<QuadResult>) -> f64 {
        let level = &mut self.level;
        match r {
            Ok(q) => {
                level.converged &= q.converged;
                if q.value > level.sup {
                    level.sup = q.value;
                    level.error = q.error_estimate;
                    level.argmax = Complex::from_polar(level.s, theta);
                    self.best_theta = theta;
                }
                q.value
            }
            Err(_) => {
                level.failures += 1;
                level.converged = false;
                f64::NEG_INFINITY
            }
        }
    }
}

fn tail_level<E: Executor>(psi: &Symbol, s: f64, angles: usize, cfg: &QuadConfig, exec: &E) -> TailLevel {
    let eval = |theta: f64| kappa(psi, Complex::from_polar(s, theta), cfg);
    let grid = exec.map(angles, |j| eval(circle_angle(j, angles)));
    let mut t = Tracker {
        level: TailLevel {
            s,
            sup: f64::NEG_INFINITY,
            error: 0.0,
            argmax: Complex::new(s, 0.0),
            converged: true,
            failures: 0,
        },
        best_theta: 0.0,
    };
    for (j, r) in grid.into_iter().enumerate() {
        t.record(circle_angle(j, angles), r);
    }
    if t.level.failures < angles {
        let half = 2.0 * PI / angles as f64;
        let center = t.best_theta;
        golden_max(center - half, center + half, GOLDEN_STEPS, &eval, &mut |theta, r| t.record(theta, r));
    }
    t.level
}

/// Tail-sup proxy for `limsup_{|α|→1} kappa(ψ, α)`.
///
/// Each level takes the maximum of `kappa` over `angles` equispaced points of
/// the circle `|α| = s_k`, refined by golden-section search around the best
/// grid angle. A circle sup is a lower proxy for the sup over the annulus
/// `|α| > s_k`; the diagnostics report the gaps between consecutive levels.
pub fn essential_norm_proxy<E: Executor>(
    psi: &Symbol,
    schedule: &[f64],
    angles: usize,
    cfg: &QuadConfig,
    exec: &E,
) -> Result<EssNormEstimate> {
    cfg.validate()?;
    if schedule.is_empty() {
        return Err(Error::InvalidArgument("schedule must not be empty"));
    }
    if angles == 0 {
        return Err(Error::InvalidArgument("at least one angle is required"));
    }
    for &s in schedule {
        check_radius(s)?;
    }
    if schedule.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("schedule must be strictly increasing"));
    }
    let levels: Vec<TailLevel> = schedule.iter().map(|&s| tail_level(psi, s, angles, cfg, exec)).collect();
    let tail_sups: Vec<f64> = levels.iter().map(|l| l.sup).collect();
    let last = levels[levels.len() - 1];
    let gap = if levels.len() >= 2 { (last.sup - levels[levels.len() - 2].sup).abs() } else { f64::INFINITY };
    let quad_ok = levels.iter().all(|l| l.converged && l.failures == 0);
    let converged = quad_ok && gap < PROXY_REL_TOL * last.sup.abs().max(1.0);

    let mut diagnostics = String::from("circle sups are lower proxies for the sup over |alpha| > s");
    let gaps: Vec<String> = levels.windows(2).map(|w| format!("{:.3e}", w[1].sup - w[0].sup)).collect();
    diagnostics += &format!("; level gaps [{}]", gaps.join(", "));
    let failures: usize = levels.iter().map(|l| l.failures).sum();
    if failures > 0 {
        diagnostics += &format!("; {failures} quadrature failures");
    }
    if !quad_ok {
        let bad: Vec<String> = levels.iter().filter(|l| !l.converged).map(|l| format!("{:.6}", l.s)).collect();
        diagnostics += &format!("; unconverged quadrature at s = [{}]", bad.join(", "));
    }
    if levels.len() < 2 {
        diagnostics += "; a single level cannot establish convergence";
    }

    Ok(EssNormEstimate {
        schedule: schedule.to_vec(),
        tail_sups,
        proxy: last.sup,
        proxy_error: last.error + if gap.is_finite() { gap } else { 0.0 },
        levels,
        converged,
        diagnostics,
    })
}
