//! Integration over the unit disk with respect to normalized area measure
//! `dA = dx dy / π`.
//!
//! The adaptive engine works on tensor panels in a parameter rectangle
//! `(u, v)` that is mapped into the plane (polar coordinates for the disk and
//! for Carleson boxes, star-shaped coordinates for cone regions). Each panel
//! carries an 8-point Gauss–Legendre rule in `u` and a 16-point rule in `v`.
//! The error of a panel is estimated by comparing its rule with the sum of
//! the same rule on its two halves, in both directions; the panel with the
//! largest estimate is bisected along the direction of larger discrepancy.
//!
//! Integrands may also report a local feature length. Any panel whose
//! diameter exceeds `singular_refine_threshold` times the smallest feature
//! length seen at its nodes is split before error control begins, which keeps
//! the sharp peaks of `|1 − ᾱψ|^{-p}` from slipping between nodes.
//!
//! Panels are processed in a deterministic order and the final reduction sums
//! leaves by creation index, so results are bit-identical for a fixed config.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;

use crate::{Complex, Error, Result};

mod gauss;
mod monte_carlo;
mod region;
mod series;

pub use gauss::gauss_legendre;
pub use monte_carlo::{monte_carlo_disk, McEstimate, MC_CHUNK};
pub use region::Region;
pub use series::series_kernel_integral;

/// Radial (or `t`) nodes per panel.
pub const RADIAL_ORDER: usize = 8;
/// Angular nodes per panel.
pub const ANGULAR_ORDER: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Upper bound on the number of leaf panels.
    pub max_panels: usize,
    /// Number of initial radial panels; breakpoints are dyadic toward `|z| = 1`.
    pub base_radial_panels: usize,
    pub base_angular_panels: usize,
    /// Ratio between panel diameter and local feature length above which a
    /// panel is split unconditionally.
    pub singular_refine_threshold: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-12,
            max_panels: 50_000,
            base_radial_panels: 4,
            base_angular_panels: 8,
            singular_refine_threshold: 1.0,
        }
    }
}

impl QuadConfig {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_max_panels(mut self, max_panels: usize) -> Self {
        self.max_panels = max_panels;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(Error::InvalidArgument("tolerances must be positive"));
        }
        if self.base_radial_panels == 0 || self.base_angular_panels == 0 {
            return Err(Error::InvalidArgument("base panel counts must be positive"));
        }
        if self.max_panels < self.base_radial_panels * self.base_angular_panels {
            return Err(Error::InvalidArgument("max_panels is smaller than the base grid"));
        }
        if !(self.singular_refine_threshold > 0.0) {
            return Err(Error::InvalidArgument("singular_refine_threshold must be positive"));
        }
        Ok(())
    }

    fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub panels_used: usize,
    pub converged: bool,
}

impl QuadResult {
    /// Multiplies value and error by a non-negative factor.
    pub fn scaled(self, factor: f64) -> Self {
        Self { value: self.value * factor, error_estimate: self.error_estimate * factor.abs(), ..self }
    }
}

/// Error inflation applied when the panel budget runs out.
const BUDGET_INFLATION: f64 = 10.0;

/// `∫_𝔻 f dA` for a real integrand.
pub fn integrate_disk<F>(f: F, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(Complex) -> f64,
{
    integrate_disk_with(|z| Ok((f(z), f64::INFINITY)), cfg)
}

/// Disk integral of an integrand that returns `(value, feature_length)` and
/// may fail.
pub fn integrate_disk_with<F>(f: F, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(Complex) -> Result<(f64, f64)>,
{
    integrate_polar_box_with(f, 0.0, 1.0, 0.0, 2.0 * PI, cfg)
}

/// Integral over the polar box `{r e^{iθ} : r0 ≤ r ≤ r1, t0 ≤ θ ≤ t1}`
/// (normalized measure).
pub fn integrate_polar_box_with<F>(f: F, r0: f64, r1: f64, t0: f64, t1: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(Complex) -> Result<(f64, f64)>,
{
    if !(0.0 <= r0 && r0 < r1 && r1 <= 1.0) || !(t0 < t1) {
        return Err(Error::InvalidArgument("degenerate polar box"));
    }
    let u_breaks = dyadic_breaks(r0, r1, cfg.base_radial_panels);
    let v_breaks = uniform_breaks(t0, t1, cfg.base_angular_panels);
    Engine::new(PolarMap, f, cfg)?.run(&u_breaks, &v_breaks)
}

/// `∫_Ω f dA` over a cone region, in star-shaped coordinates about the
/// region's disk center so the region boundary is resolved exactly.
pub fn integrate_region<F>(f: F, region: &Region, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(Complex) -> f64,
{
    integrate_region_with(|z| Ok((f(z), f64::INFINITY)), region, cfg)
}

pub fn integrate_region_with<F>(f: F, region: &Region, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(Complex) -> Result<(f64, f64)>,
{
    let u_breaks = dyadic_breaks(0.0, 1.0, cfg.base_radial_panels);
    let v_breaks = region.angular_breaks(cfg.base_angular_panels);
    Engine::new(region.star_map(), f, cfg)?.run(&u_breaks, &v_breaks)
}

fn dyadic_breaks(a: f64, b: f64, n: usize) -> Vec<f64> {
    let mut out: Vec<f64> = (0..n).map(|k| a + (b - a) * (1.0 - libm::ldexp(1.0, -(k as i32)))).collect();
    out.push(b);
    out
}

fn uniform_breaks(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|k| a + (b - a) * k as f64 / n as f64).collect()
}

/// Maps parameter coordinates to a point and its Jacobian (already divided
/// by `π` for the normalized measure).
pub(crate) trait PanelMap {
    fn point(&self, u: f64, v: f64) -> (Complex, f64);
}

struct PolarMap;

impl PanelMap for PolarMap {
    fn point(&self, u: f64, v: f64) -> (Complex, f64) {
        (Complex::from_polar(u, v), u / PI)
    }
}

#[derive(Clone, Copy)]
struct Rect {
    u0: f64,
    u1: f64,
    v0: f64,
    v1: f64,
}

impl Rect {
    fn split_u(self) -> (Rect, Rect) {
        let m = 0.5 * (self.u0 + self.u1);
        (Rect { u1: m, ..self }, Rect { u0: m, ..self })
    }

    fn split_v(self) -> (Rect, Rect) {
        let m = 0.5 * (self.v0 + self.v1);
        (Rect { v1: m, ..self }, Rect { v0: m, ..self })
    }

    fn splittable(&self) -> bool {
        let tiny = |a: f64, b: f64| (b - a) <= 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1e-300);
        !(tiny(self.u0, self.u1) && tiny(self.v0, self.v1))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    U,
    V,
}

struct Panel {
    id: u64,
    rect: Rect,
    halves_u: (RuleEval, RuleEval),
    halves_v: (RuleEval, RuleEval),
    value: f64,
    err: f64,
    forced: bool,
    split_dir: Direction,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.forced.cmp(&other.forced).then(self.err.total_cmp(&other.err)).then(other.id.cmp(&self.id))
    }
}

#[derive(Clone, Copy)]
struct RuleEval {
    value: f64,
    min_scale: f64,
}

struct Engine<'a, M, F> {
    map: M,
    f: F,
    cfg: &'a QuadConfig,
    un: Vec<f64>,
    uw: Vec<f64>,
    vn: Vec<f64>,
    vw: Vec<f64>,
    next_id: u64,
}

impl<'a, M, F> Engine<'a, M, F>
where
    M: PanelMap,
    F: Fn(Complex) -> Result<(f64, f64)>,
{
    fn new(map: M, f: F, cfg: &'a QuadConfig) -> Result<Self> {
        cfg.validate()?;
        let (un, uw) = gauss_legendre(RADIAL_ORDER);
        let (vn, vw) = gauss_legendre(ANGULAR_ORDER);
        Ok(Self { map, f, cfg, un, uw, vn, vw, next_id: 0 })
    }

    fn rule(&self, r: Rect) -> Result<RuleEval> {
        let hu = 0.5 * (r.u1 - r.u0);
        let cu = 0.5 * (r.u1 + r.u0);
        let hv = 0.5 * (r.v1 - r.v0);
        let cv = 0.5 * (r.v1 + r.v0);
        let mut total = 0.0;
        let mut min_scale = f64::INFINITY;
        for (x, wx) in self.un.iter().zip(&self.uw) {
            let u = cu + hu * x;
            let mut row = 0.0;
            for (y, wy) in self.vn.iter().zip(&self.vw) {
                let (z, jac) = self.map.point(u, cv + hv * y);
                let (val, scale) = (self.f)(z)?;
                if !val.is_finite() {
                    return Err(Error::NonFiniteIntegrand(z));
                }
                if scale < min_scale {
                    min_scale = scale;
                }
                row += wy * val * jac;
            }
            total += wx * row;
        }
        Ok(RuleEval { value: total * hu * hv, min_scale })
    }

    fn diameter(&self, r: Rect) -> f64 {
        let um = 0.5 * (r.u0 + r.u1);
        let vm = 0.5 * (r.v0 + r.v1);
        let pts =
            [(r.u0, r.v0), (r.u0, vm), (r.u0, r.v1), (um, r.v0), (um, r.v1), (r.u1, r.v0), (r.u1, vm), (r.u1, r.v1)]
                .map(|(u, v)| self.map.point(u, v).0);
        let mut d: f64 = 0.0;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                d = d.max((pts[i] - pts[j]).norm());
            }
        }
        d
    }

    /// Physical extents along `u` and `v` through the panel center.
    fn extents(&self, r: Rect) -> (f64, f64) {
        let um = 0.5 * (r.u0 + r.u1);
        let vm = 0.5 * (r.v0 + r.v1);
        let p = |u, v| self.map.point(u, v).0;
        let eu = (p(r.u1, vm) - p(r.u0, vm)).norm();
        let ev = (p(um, r.v1) - p(um, vm)).norm() + (p(um, vm) - p(um, r.v0)).norm();
        (eu, ev)
    }

    fn build(&mut self, rect: Rect, own: Option<RuleEval>) -> Result<Panel> {
        let own = match own {
            Some(e) => e,
            None => self.rule(rect)?,
        };
        let (ua, ub) = rect.split_u();
        let (va, vb) = rect.split_v();
        let eua = self.rule(ua)?;
        let eub = self.rule(ub)?;
        let eva = self.rule(va)?;
        let evb = self.rule(vb)?;
        let su = eua.value + eub.value;
        let sv = eva.value + evb.value;
        let du = (own.value - su).abs();
        let dv = (own.value - sv).abs();
        let min_scale = [own.min_scale, eua.min_scale, eub.min_scale, eva.min_scale, evb.min_scale]
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        let diam = self.diameter(rect);
        let forced = diam > 1e-12 && diam > self.cfg.singular_refine_threshold * min_scale;
        let split_dir = if forced {
            let (eu, ev) = self.extents(rect);
            if eu >= ev {
                Direction::U
            } else {
                Direction::V
            }
        } else if du >= dv {
            Direction::U
        } else {
            Direction::V
        };
        let value = if du >= dv { su } else { sv };
        let id = self.next_id;
        self.next_id += 1;
        Ok(Panel { id, rect, halves_u: (eua, eub), halves_v: (eva, evb), value, err: du.max(dv), forced, split_dir })
    }

    fn run(mut self, u_breaks: &[f64], v_breaks: &[f64]) -> Result<QuadResult> {
        let mut heap = BinaryHeap::new();
        let mut frozen: Vec<Panel> = Vec::new();
        let mut total_val = 0.0;
        let mut total_err = 0.0;
        let mut forced = 0usize;
        for uw in u_breaks.windows(2) {
            for vw in v_breaks.windows(2) {
                let p = self.build(Rect { u0: uw[0], u1: uw[1], v0: vw[0], v1: vw[1] }, None)?;
                total_val += p.value;
                total_err += p.err;
                forced += p.forced as usize;
                heap.push(p);
            }
        }
        let mut leaves = heap.len();
        loop {
            if forced == 0 && total_err <= self.cfg.tolerance(total_val) {
                break;
            }
            if leaves + 1 > self.cfg.max_panels {
                break;
            }
            let Some(p) = heap.pop() else { break };
            total_val -= p.value;
            total_err -= p.err;
            forced -= p.forced as usize;
            if !p.rect.splittable() {
                let p = Panel { forced: false, ..p };
                total_val += p.value;
                total_err += p.err;
                frozen.push(p);
                continue;
            }
            let ((a, b), (va, vb)) = match p.split_dir {
                Direction::U => (p.rect.split_u(), p.halves_u),
                Direction::V => (p.rect.split_v(), p.halves_v),
            };
            for (rect, own) in [(a, va), (b, vb)] {
                let child = self.build(rect, Some(own))?;
                total_val += child.value;
                total_err += child.err;
                forced += child.forced as usize;
                heap.push(child);
            }
            leaves += 1;
        }
        let mut all: Vec<Panel> = heap.into_vec();
        all.extend(frozen);
        all.sort_by_key(|p| p.id);
        let (value, err) = neumaier_sum2(all.iter().map(|p| (p.value, p.err)));
        let converged = all.iter().all(|p| !p.forced) && err <= self.cfg.tolerance(value);
        Ok(QuadResult {
            value,
            error_estimate: if converged { err } else { err * BUDGET_INFLATION },
            panels_used: all.len(),
            converged,
        })
    }
}

fn neumaier_sum2(it: impl Iterator<Item = (f64, f64)>) -> (f64, f64) {
    let mut s = 0.0;
    let mut comp = 0.0;
    let mut e = 0.0;
    for (x, ex) in it {
        let t = s + x;
        if s.abs() >= x.abs() {
            comp += (s - t) + x;
        } else {
            comp += (x - t) + s;
        }
        s = t;
        e += ex;
    }
    (s + comp, e)
}
