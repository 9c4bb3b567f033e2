use alloc::vec::Vec;
use core::f64::consts::PI;

use super::PanelMap;
use crate::{Complex, Error, Result};

const GEOM_TOL: f64 = 1e-12;

/// Convex hull of the closed disk `D(center, radius)` and the point `apex`,
/// i.e. the union of all segments `[x, apex]` with `x` in the disk.
///
/// `Region::omega(r)` is the region `{|z| ≤ r} ∪ ⋃_{|z|≤r} [z, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    center: Complex,
    radius: f64,
    apex: Complex,
}

impl Region {
    pub fn new(center: Complex, radius: f64, apex: Complex) -> Result<Self> {
        if !center.is_finite() || !apex.is_finite() || !radius.is_finite() {
            return Err(Error::NonFinite);
        }
        if !(radius > 0.0) {
            return Err(Error::InvalidRegion("radius must be positive"));
        }
        if center.norm() + radius > 1.0 + GEOM_TOL {
            return Err(Error::InvalidRegion("disk is not contained in the closed unit disk"));
        }
        if apex.norm() > 1.0 + GEOM_TOL {
            return Err(Error::InvalidRegion("apex lies outside the closed unit disk"));
        }
        if radius > 0.5 * (apex - center).norm() + GEOM_TOL {
            return Err(Error::InvalidRegion("radius exceeds half the apex distance"));
        }
        Ok(Self { center, radius, apex })
    }

    /// `Ω_r` with center 0, radius `r` and apex 1.
    pub fn omega(r: f64) -> Result<Self> {
        Self::new(Complex::new(0.0, 0.0), r, Complex::new(1.0, 0.0))
    }

    pub fn center(&self) -> Complex {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn apex(&self) -> Complex {
        self.apex
    }

    fn apex_distance(&self) -> f64 {
        (self.apex - self.center).norm()
    }

    fn apex_angle(&self) -> f64 {
        (self.apex - self.center).arg()
    }

    /// Half-opening angle, seen from the center, between the apex direction
    /// and a tangent point.
    fn tangent_angle(&self) -> f64 {
        let d = self.apex_distance();
        if d <= self.radius {
            0.0
        } else {
            libm::acos(self.radius / d)
        }
    }

    /// Distance from the center to the region boundary in direction `theta`.
    pub fn boundary_distance(&self, theta: f64) -> f64 {
        let gamma = self.tangent_angle();
        if gamma == 0.0 {
            return self.radius;
        }
        let delta = wrap_angle(theta - self.apex_angle()).abs();
        if delta <= gamma {
            self.radius / libm::cos(gamma - delta)
        } else {
            self.radius
        }
    }

    pub fn contains(&self, z: Complex) -> bool {
        let w = z - self.center;
        let rho = w.norm();
        if rho <= self.radius * (1.0 + GEOM_TOL) {
            return true;
        }
        rho <= self.boundary_distance(w.arg()) * (1.0 + GEOM_TOL)
    }

    /// Lebesgue area (not normalized): tangent kite plus the far disk sector.
    pub fn area(&self) -> f64 {
        let s = self.radius;
        let d = self.apex_distance();
        if d <= s {
            return PI * s * s;
        }
        let tangent_len = libm::sqrt(d * d - s * s);
        let half_open = libm::asin(s / d);
        s * tangent_len + (PI + 2.0 * half_open) * s * s / 2.0
    }

    /// Angular breakpoints (about the center) at the tangent directions and
    /// the apex direction, refined to roughly `base` panels per turn.
    pub(crate) fn angular_breaks(&self, base: usize) -> Vec<f64> {
        let a = self.apex_angle();
        let gamma = self.tangent_angle();
        let kinks: Vec<f64> = if gamma == 0.0 {
            alloc::vec![a - PI, a + PI]
        } else {
            alloc::vec![a - PI, a - gamma, a, a + gamma, a + PI]
        };
        let mut out = alloc::vec![kinks[0]];
        for w in kinks.windows(2) {
            let pieces = libm::ceil((w[1] - w[0]) / (2.0 * PI) * base as f64).max(1.0) as usize;
            for k in 1..=pieces {
                out.push(w[0] + (w[1] - w[0]) * k as f64 / pieces as f64);
            }
        }
        out
    }

    pub(crate) fn star_map(&self) -> StarMap {
        StarMap { region: *self }
    }
}

fn wrap_angle(x: f64) -> f64 {
    let y = libm::remainder(x, 2.0 * PI);
    if y <= -PI {
        y + 2.0 * PI
    } else {
        y
    }
}

/// `(t, θ) ↦ center + t·R(θ)·e^{iθ}` with Jacobian `t R(θ)² / π`.
pub(crate) struct StarMap {
    region: Region,
}

impl PanelMap for StarMap {
    fn point(&self, u: f64, v: f64) -> (Complex, f64) {
        let rb = self.region.boundary_distance(v);
        (self.region.center + Complex::from_polar(u * rb, v), u * rb * rb / PI)
    }
}
