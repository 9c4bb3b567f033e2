//! Integral functionals of a symbol `ψ` and a parameter point `α`.
//!
//! All integrals use normalized area measure. Integrands that contain the
//! kernel `|1 − ᾱψ|^{-p}` report the local feature length
//! `|1 − ᾱψ(z)| / |ψ′(z)|` to the quadrature, so the peaks that form as `α`
//! approaches the circle are resolved before error control starts.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::One;

use crate::quadrature::{
    integrate_disk_with, integrate_polar_box_with, integrate_region_with, QuadConfig, QuadResult, Region,
};
use crate::symbol::{check_open_disk, comp_second_derivative_from_jet, Jet2, RationalMap, Symbol};
use crate::{Complex, Error, Executor, Result};

/// Local feature length of `|1 − ᾱψ|^{-p}`-type integrands.
pub(crate) fn kernel_scale(alpha: Complex, jet: &Jet2) -> f64 {
    let slope = jet.d1.norm();
    if alpha.norm() == 0.0 || slope == 0.0 {
        return f64::INFINITY;
    }
    (Complex::one() - alpha.conj() * jet.f).norm() / slope
}

/// `‖(φ_α∘ψ)″‖₁ = ∫_𝔻 |(φ_α∘ψ)″| dA`.
pub fn kappa(psi: &Symbol, alpha: Complex, cfg: &QuadConfig) -> Result<QuadResult> {
    check_open_disk(alpha)?;
    integrate_disk_with(
        |z| {
            let jet = psi.eval_jet(z)?;
            Ok((comp_second_derivative_from_jet(alpha, &jet).norm(), kernel_scale(alpha, &jet)))
        },
        cfg,
    )
}

/// The three weighted integrals that split the boundedness condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitIntegrals {
    /// `(1−|α|²) ∫ |ψ″| / |1−ᾱψ|² dA`
    pub i2: f64,
    /// `(1−|α|²) ∫ |ψ′|² / |1−ᾱψ|³ dA`
    pub i3: f64,
    /// `(1−|α|²)² ∫ |ψ′|² / |1−ᾱψ|⁴ dA`
    pub i4: f64,
    /// Sum of the three quadrature error estimates.
    pub error: f64,
    pub converged: bool,
}

pub fn split_integrals(psi: &Symbol, alpha: Complex, cfg: &QuadConfig) -> Result<SplitIntegrals> {
    check_open_disk(alpha)?;
    let w = 1.0 - alpha.norm_sqr();
    let weighted = |power: i32, second: bool| {
        integrate_disk_with(
            |z| {
                let jet = psi.eval_jet(z)?;
                let den = libm::pow((Complex::one() - alpha.conj() * jet.f).norm(), power as f64);
                let num = if second { jet.d2.norm() } else { jet.d1.norm_sqr() };
                Ok((num / den, kernel_scale(alpha, &jet)))
            },
            cfg,
        )
    };
    let i2 = weighted(2, true)?.scaled(w);
    let i3 = weighted(3, false)?.scaled(w);
    let i4 = weighted(4, false)?.scaled(w * w);
    Ok(SplitIntegrals {
        i2: i2.value,
        i3: i3.value,
        i4: i4.value,
        error: i2.error_estimate + i3.error_estimate + i4.error_estimate,
        converged: i2.converged && i3.converged && i4.converged,
    })
}

/// `‖u_α∘ψ‖₁` with `u_α(z) = (1−|α|²)/(1−ᾱz)³` (Bergman-space functional).
pub fn bergman_kappa(psi: &Symbol, alpha: Complex, cfg: &QuadConfig) -> Result<QuadResult> {
    check_open_disk(alpha)?;
    let w = 1.0 - alpha.norm_sqr();
    integrate_disk_with(
        |z| {
            let jet = psi.eval_jet(z)?;
            let den = (Complex::one() - alpha.conj() * jet.f).norm();
            Ok((w / (den * den * den), kernel_scale(alpha, &jet)))
        },
        cfg,
    )
}

/// `((1−|α|²)/(1−|ψ(α)|²))²`.
pub fn angular_ratio(psi: &Symbol, alpha: Complex) -> Result<f64> {
    check_open_disk(alpha)?;
    let w = psi.eval(alpha)?;
    let m = w.norm_sqr();
    if m >= 1.0 {
        return Err(Error::BoundaryValue(w.norm()));
    }
    let q = (1.0 - alpha.norm_sqr()) / (1.0 - m);
    Ok(q * q)
}

/// Arc `I` of the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcSpec {
    pub center_angle: f64,
    /// Arc length `|I|`, in `(0, 2π]`.
    pub length: f64,
}

impl ArcSpec {
    pub fn new(center_angle: f64, length: f64) -> Result<Self> {
        if !center_angle.is_finite() || !(length > 0.0 && length <= 2.0 * PI * (1.0 + 1e-15)) {
            return Err(Error::InvalidArgument("arc length must lie in (0, 2π]"));
        }
        Ok(Self { center_angle, length: length.min(2.0 * PI) })
    }

    /// Radial depth of the Carleson box, `|I| / 2π`.
    pub fn depth(&self) -> f64 {
        self.length / (2.0 * PI)
    }
}

/// `(1/|I|²) ∫_{S(I)} n_ψ dA` with the box
/// `S(I) = {r e^{iθ} : e^{iθ} ∈ I, 1 − |I|/2π ≤ r < 1}`.
///
/// `n_ψ` is root-solved at every quadrature node. Carleson boxes start from a
/// single panel since the integrand is piecewise constant.
pub fn carleson_ratio(psi: &Symbol, arc: ArcSpec, cfg: &QuadConfig) -> Result<QuadResult> {
    carleson_ratio_with(&RationalMap::new(psi), arc, cfg)
}

fn carleson_ratio_with(map: &RationalMap, arc: ArcSpec, cfg: &QuadConfig) -> Result<QuadResult> {
    let box_cfg = QuadConfig { base_radial_panels: 1, base_angular_panels: 1, ..*cfg };
    let r0 = (1.0 - arc.depth()).max(0.0);
    let half = 0.5 * arc.length;
    let q = integrate_polar_box_with(
        |z| Ok((map.count(z)? as f64, f64::INFINITY)),
        r0,
        1.0,
        arc.center_angle - half,
        arc.center_angle + half,
        &box_cfg,
    )?;
    Ok(q.scaled(1.0 / (arc.length * arc.length)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CarlesonSup {
    pub value: f64,
    pub arc: ArcSpec,
    /// Every arc of the dyadic family with its ratio, in enumeration order.
    pub arcs: Vec<(ArcSpec, QuadResult)>,
}

/// Dyadic arcs: level `ℓ = 0..=depth` has `2^ℓ` arcs of length `2π/2^ℓ`.
pub fn dyadic_arcs(depth: u32) -> Vec<ArcSpec> {
    let mut out = Vec::new();
    for level in 0..=depth {
        let count = 1usize << level;
        let len = 2.0 * PI / count as f64;
        for j in 0..count {
            out.push(ArcSpec { center_angle: (j as f64 + 0.5) * len, length: len });
        }
    }
    out
}

/// Maximum of [`carleson_ratio`] over the dyadic arc family. Ties keep the
/// first arc in enumeration order.
pub fn carleson_sup<E: Executor>(psi: &Symbol, cfg: &QuadConfig, dyadic_depth: u32, exec: &E) -> Result<CarlesonSup> {
    let map = RationalMap::new(psi);
    let arcs = dyadic_arcs(dyadic_depth);
    let results = exec.map(arcs.len(), |i| carleson_ratio_with(&map, arcs[i], cfg));
    let mut all = Vec::with_capacity(arcs.len());
    let mut best: Option<(f64, ArcSpec)> = None;
    for (arc, r) in arcs.into_iter().zip(results) {
        let r = r?;
        if best.map_or(true, |(v, _)| r.value > v) {
            best = Some((r.value, arc));
        }
        all.push((arc, r));
    }
    let (value, arc) = best.expect("dyadic family is never empty");
    Ok(CarlesonSup { value, arc, arcs: all })
}

/// `∫_Ω |f″| dA`.
pub fn omega_mass(f: &Symbol, region: &Region, cfg: &QuadConfig) -> Result<QuadResult> {
    integrate_region_with(|z| Ok((f.eval_jet(z)?.d2.norm(), f64::INFINITY)), region, cfg)
}

/// Algebraic lower bound attached to the cone `Ω(β; w; (1−|β|)/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StolzBound {
    /// `|(α−ψ(w))/((w−β)(1−ᾱψ(w))) − ψ′(β)/(|α|²−1)|` with `α = ψ(β)`.
    pub bracket: f64,
    /// `(1−|β|)/2 · bracket`; the cone mass is at least an absolute constant
    /// times this value.
    pub bound: f64,
    pub alpha: Complex,
    pub region: Region,
}

pub fn stolz_bound(psi: &Symbol, beta: Complex, w: Complex) -> Result<StolzBound> {
    check_open_disk(beta)?;
    if !w.is_finite() {
        return Err(Error::NonFinite);
    }
    if w.norm() > 1.0 + 1e-12 {
        return Err(Error::InvalidArgument("w must lie in the closed disk"));
    }
    let gap = 1.0 - beta.norm();
    if (w - beta).norm() < gap * (1.0 - 1e-12) {
        return Err(Error::InvalidArgument("requires |w − β| ≥ 1 − |β|"));
    }
    let jet = psi.eval_jet(beta)?;
    let alpha = jet.f;
    if alpha.norm() >= 1.0 {
        return Err(Error::BoundaryValue(alpha.norm()));
    }
    let psi_w = psi.eval(w)?;
    let tail = Complex::one() - alpha.conj() * psi_w;
    if tail.norm() < 1e-14 {
        return Err(Error::InvalidArgument("conj(alpha)·psi(w) = 1"));
    }
    let bracket = ((alpha - psi_w) / ((w - beta) * tail) - jet.d1 / (alpha.norm_sqr() - 1.0)).norm();
    let region = Region::new(beta, 0.5 * gap, w)?;
    Ok(StolzBound { bracket, bound: 0.5 * gap * bracket, alpha, region })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::series_kernel_integral;
    use crate::Sequential;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    #[test]
    fn kappa_of_constant_is_zero() {
        let k = kappa(&Symbol::constant(c(0.3, 0.1)).unwrap(), c(0.6, 0.2), &cfg()).unwrap();
        assert_eq!(k.value, 0.0);
    }

    #[test]
    fn kappa_of_identity_matches_series() {
        assert_eq!(kappa(&Symbol::identity(), c(0.0, 0.0), &cfg()).unwrap().value, 0.0);
        for alpha in [c(0.5, 0.0), c(0.0, -0.8), c(0.63, 0.63)] {
            let r = alpha.norm();
            let want = 2.0 * r * (1.0 - r * r) * series_kernel_integral(alpha, 3.0).unwrap();
            let got = kappa(&Symbol::identity(), alpha, &cfg()).unwrap();
            assert!(got.converged);
            assert!((got.value / want - 1.0).abs() < 1e-7, "{} vs {want}", got.value);
        }
    }

    #[test]
    fn split_integrals_of_identity() {
        let alpha = c(0.3, -0.6);
        let w = 1.0 - alpha.norm_sqr();
        let s = split_integrals(&Symbol::identity(), alpha, &cfg()).unwrap();
        assert_eq!(s.i2, 0.0);
        assert!((s.i3 / (w * series_kernel_integral(alpha, 3.0).unwrap()) - 1.0).abs() < 1e-7);
        assert!((s.i4 / (w * w * series_kernel_integral(alpha, 4.0).unwrap()) - 1.0).abs() < 1e-7);
    }

    #[test]
    fn kappa_bounded_by_split_terms() {
        let psi = Symbol::blaschke(vec![c(0.2, 0.3), c(-0.5, 0.1)], c(0.0, 1.0)).unwrap();
        for alpha in [c(0.4, 0.1), c(-0.7, 0.5), c(0.1, 0.9)] {
            let k = kappa(&psi, alpha, &cfg()).unwrap();
            let s = split_integrals(&psi, alpha, &cfg()).unwrap();
            assert!(k.value <= s.i2 + 2.0 * alpha.norm() * s.i3 + 1e-6);
        }
    }

    #[test]
    fn bergman_kappa_cases() {
        let psi = Symbol::blaschke(vec![c(0.2, 0.3)], c(1.0, 0.0)).unwrap();
        let b0 = bergman_kappa(&psi, c(0.0, 0.0), &cfg()).unwrap();
        assert!((b0.value - 1.0).abs() < 1e-12);
        let k = c(0.4, -0.2);
        let alpha = c(0.5, 0.5);
        let want = (1.0 - alpha.norm_sqr()) / (Complex::one() - alpha.conj() * k).norm().powi(3);
        let got = bergman_kappa(&Symbol::constant(k).unwrap(), alpha, &cfg()).unwrap();
        assert!((got.value - want).abs() < 1e-12);
        let alpha = c(0.0, 0.7);
        let want = (1.0 - 0.49) * series_kernel_integral(alpha, 3.0).unwrap();
        let got = bergman_kappa(&Symbol::identity(), alpha, &cfg()).unwrap();
        assert!((got.value / want - 1.0).abs() < 1e-7);
    }

    #[test]
    fn angular_ratio_cases() {
        assert!((angular_ratio(&Symbol::identity(), c(0.4, 0.3)).unwrap() - 1.0).abs() < 1e-15);
        let sq = Symbol::polynomial(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        for r in [0.1, 0.5, 0.9] {
            let want = 1.0 / (1.0 + r * r) / (1.0 + r * r);
            assert!((angular_ratio(&sq, c(r, 0.0)).unwrap() - want).abs() < 1e-14);
        }
        let k = Symbol::constant(c(0.5, 0.0)).unwrap();
        assert!(angular_ratio(&k, c(0.999999, 0.0)).unwrap() < 1e-10);
        let unimodular = Symbol::constant(c(1.0, 0.0)).unwrap();
        assert!(matches!(angular_ratio(&unimodular, c(0.2, 0.0)), Err(Error::BoundaryValue(_))));
    }

    fn identity_carleson(len: f64) -> f64 {
        let h = len / (2.0 * PI);
        (h - h * h / 2.0) / (PI * len)
    }

    #[test]
    fn carleson_ratio_identity_and_blaschke() {
        let b = Symbol::blaschke(vec![c(0.1, 0.2), c(-0.4, 0.0), c(0.3, -0.5)], c(1.0, 0.0)).unwrap();
        for (center, len) in [(0.3, 0.5), (2.0, PI), (0.0, 2.0 * PI)] {
            let arc = ArcSpec::new(center, len).unwrap();
            let id = carleson_ratio(&Symbol::identity(), arc, &cfg()).unwrap().value;
            assert!((id / identity_carleson(len) - 1.0).abs() < 1e-12);
            let bv = carleson_ratio(&b, arc, &cfg()).unwrap().value;
            assert!((bv / (3.0 * id) - 1.0).abs() < 1e-12);
        }
        let full = ArcSpec::new(0.0, 2.0 * PI).unwrap();
        let v = carleson_ratio(&b, full, &cfg()).unwrap().value;
        assert!((v - 3.0 / (4.0 * PI * PI)).abs() < 1e-12);
    }

    #[test]
    fn carleson_sup_identity_is_attained_on_smallest_arcs() {
        // (h − h²/2)/(π|I|) = 1/(2π²) − |I|/(8π³) decreases in |I|
        let s = carleson_sup(&Symbol::identity(), &cfg(), 4, &Sequential).unwrap();
        assert!((s.arc.length - 2.0 * PI / 16.0).abs() < 1e-15);
        assert!((s.value / identity_carleson(2.0 * PI / 16.0) - 1.0).abs() < 1e-12);
        let again = carleson_sup(&Symbol::identity(), &cfg(), 4, &Sequential).unwrap();
        assert_eq!(s.arc, again.arc);
        assert_eq!(s.arcs.len(), 31);
    }

    #[test]
    fn omega_mass_cases() {
        let sq = Symbol::polynomial(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let reg = Region::omega(0.5).unwrap();
        let m = omega_mass(&sq, &reg, &cfg()).unwrap();
        assert!((m.value - 2.0 * reg.area() / PI).abs() < 1e-10);
        let affine = Symbol::polynomial(vec![c(0.3, 0.0), c(0.2, 0.1)]).unwrap();
        assert_eq!(omega_mass(&affine, &reg, &cfg()).unwrap().value, 0.0);
    }

    #[test]
    fn stolz_bound_examples() {
        let s = stolz_bound(&Symbol::identity(), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(s.bracket.abs() < 1e-15);
        let sq = Symbol::polynomial(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let s = stolz_bound(&sq, c(0.5, 0.0), c(1.0, 0.0)).unwrap();
        let want = (-2.0f64 + 1.0 / 0.9375).abs();
        assert!((s.bracket - want).abs() < 1e-14);
        assert!((s.bound - 0.25 * want).abs() < 1e-14);
        assert_eq!(s.region.radius(), 0.25);
        assert!(stolz_bound(&sq, c(0.5, 0.0), c(0.6, 0.0)).is_err());
    }
}
