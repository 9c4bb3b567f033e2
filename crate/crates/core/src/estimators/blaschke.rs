use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::functionals::kernel_scale;
use crate::quadrature::{integrate_disk_with, series_kernel_integral};
use crate::symbol::check_open_disk;
use crate::{Complex, Error, QuadConfig, QuadResult, Result, Symbol};

/// `|B(0)|` above which a Blaschke product counts as not centered.
pub const CENTER_TOL: f64 = 1e-12;

fn degree_of(b: &Symbol) -> Result<usize> {
    match b.blaschke_degree() {
        Some(n) if n > 0 => Ok(n),
        _ => Err(Error::NotBlaschke),
    }
}

/// Change-of-variables check for an `n`-valent Blaschke product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovCheck {
    /// `(1−|α|²) ∫ |B′|² / |1−ᾱB|³ dA`
    pub lhs: f64,
    /// `(1−|α|²) ∫ dA / |1−ᾱz|³`, from the series
    pub rhs: f64,
    pub degree: usize,
    /// `|lhs − n·rhs| / (n·rhs)`
    pub discrepancy: f64,
    pub lhs_error: f64,
    pub converged: bool,
}

/// Compares `∫ |B′|²/|1−ᾱB|³` with `n` times the same kernel integral for the
/// identity. Requires `B(0) = 0`; precompose with an automorphism otherwise.
pub fn blaschke_cov_check(b: &Symbol, alpha: Complex, cfg: &QuadConfig) -> Result<CovCheck> {
    let n = degree_of(b)?;
    check_open_disk(alpha)?;
    let b0 = b.eval(Complex::zero())?.norm();
    if b0 > CENTER_TOL {
        return Err(Error::BlaschkeNotCentered(b0));
    }
    let w = 1.0 - alpha.norm_sqr();
    let q = integrate_disk_with(
        |z| {
            let jet = b.eval_jet(z)?;
            let den = (Complex::one() - alpha.conj() * jet.f).norm();
            Ok((jet.d1.norm_sqr() / (den * den * den), kernel_scale(alpha, &jet)))
        },
        cfg,
    )?
    .scaled(w);
    let rhs = w * series_kernel_integral(alpha, 3.0)?;
    let target = n as f64 * rhs;
    Ok(CovCheck {
        lhs: q.value,
        rhs,
        degree: n,
        discrepancy: (q.value - target).abs() / target,
        lhs_error: q.error_estimate,
        converged: q.converged,
    })
}

/// `|f(0)| + |f′(0)| + ‖f″‖₁`.
///
/// This is the computable norm equivalent (up to absolute constants, not
/// equal) to the norm of the minimal Möbius-invariant space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MNorm {
    pub value: f64,
    pub at_zero: f64,
    pub slope_at_zero: f64,
    pub second: QuadResult,
}

pub fn m_norm(f: &Symbol, cfg: &QuadConfig) -> Result<MNorm> {
    let jet = f.eval_jet(Complex::zero())?;
    let second = integrate_disk_with(|z| Ok((f.eval_jet(z)?.d2.norm(), f64::INFINITY)), cfg)?;
    let at_zero = jet.f.norm();
    let slope_at_zero = jet.d1.norm();
    Ok(MNorm { value: at_zero + slope_at_zero + second.value, at_zero, slope_at_zero, second })
}

/// The pointwise bound
/// `|B″| ≤ |B′|²/|B| + Σ_j |φ_j″| + Σ_j |φ_j′|²/|φ_j|`
/// integrated over the disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormBound {
    pub degree: usize,
    pub m_norm: MNorm,
    /// `∫ |B′|²/|B| dA`
    pub log_term: QuadResult,
    /// `Σ_j ∫ |φ_j″| dA`
    pub factor_second: QuadResult,
    /// `Σ_j ∫ |φ_j′|²/|φ_j| dA`
    pub factor_ratio: QuadResult,
    /// All four integrals converged, so `holds` is meaningful.
    pub checked: bool,
    /// `∫|B″| ≤ sum of the three terms`, up to the combined error estimate.
    pub holds: bool,
    /// `m_norm / degree`
    pub ratio_to_degree: f64,
}

fn sum_results(rs: &[QuadResult]) -> QuadResult {
    QuadResult {
        value: rs.iter().map(|r| r.value).sum(),
        error_estimate: rs.iter().map(|r| r.error_estimate).sum(),
        panels_used: rs.iter().map(|r| r.panels_used).sum(),
        converged: rs.iter().all(|r| r.converged),
    }
}

/// Integrands vanish where the denominator is exactly zero; the singularities
/// are integrable and quadrature nodes never sit on them in practice.
fn masked(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

pub fn blaschke_norm_bound(b: &Symbol, cfg: &QuadConfig) -> Result<NormBound> {
    let degree = degree_of(b)?;
    let (zeros, _) = b.blaschke_factors().ok_or(Error::NotBlaschke)?;
    let m = m_norm(b, cfg)?;
    let log_term = integrate_disk_with(
        |z| {
            let jet = b.eval_jet(z)?;
            Ok((masked(jet.d1.norm_sqr(), jet.f.norm()), f64::INFINITY))
        },
        cfg,
    )?;
    let mut second = Vec::with_capacity(zeros.len());
    let mut ratio = Vec::with_capacity(zeros.len());
    for &a in &zeros {
        let w = 1.0 - a.norm_sqr();
        second.push(integrate_disk_with(
            |z| {
                let d = (Complex::one() - a.conj() * z).norm();
                Ok((2.0 * a.norm() * w / (d * d * d), f64::INFINITY))
            },
            cfg,
        )?);
        ratio.push(integrate_disk_with(
            |z| {
                let d = (Complex::one() - a.conj() * z).norm();
                Ok((masked(w * w, d * d * d * (a - z).norm()), f64::INFINITY))
            },
            cfg,
        )?);
    }
    let factor_second = sum_results(&second);
    let factor_ratio = sum_results(&ratio);
    let checked = m.second.converged && log_term.converged && factor_second.converged && factor_ratio.converged;
    let slack =
        m.second.error_estimate + log_term.error_estimate + factor_second.error_estimate + factor_ratio.error_estimate;
    let holds = m.second.value <= log_term.value + factor_second.value + factor_ratio.value + slack;
    Ok(NormBound {
        degree,
        m_norm: m,
        log_term,
        factor_second,
        factor_ratio,
        checked,
        holds,
        ratio_to_degree: m.value / degree as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn monomial(n: usize) -> Symbol {
        let mut coeffs = vec![c(0.0, 0.0); n + 1];
        coeffs[n] = c(1.0, 0.0);
        Symbol::polynomial(coeffs).unwrap()
    }

    #[test]
    fn cov_identity_is_exact() {
        let r = blaschke_cov_check(&Symbol::identity(), c(0.3, 0.4), &QuadConfig::default()).unwrap();
        assert_eq!(r.degree, 1);
        assert!(r.discrepancy <= 1e-6, "{}", r.discrepancy);
    }

    #[test]
    fn cov_degree_two() {
        let cfg = QuadConfig::default();
        let r = blaschke_cov_check(&monomial(2), c(0.5, 0.0), &cfg).unwrap();
        assert!(r.discrepancy <= 1e-3, "{}", r.discrepancy);
        let b = Symbol::blaschke(vec![c(0.0, 0.0), c(0.4, 0.0)], c(0.0, 1.0)).unwrap();
        for k in 0..6 {
            let alpha = Complex::from_polar(0.9, k as f64);
            let r = blaschke_cov_check(&b, alpha, &cfg).unwrap();
            assert_eq!(r.degree, 2);
            assert!(r.discrepancy <= 1e-3, "{}", r.discrepancy);
        }
    }

    #[test]
    fn cov_rejects_uncentered_and_non_blaschke() {
        let cfg = QuadConfig::default();
        let phi = Symbol::mobius(c(0.3, 0.0)).unwrap();
        assert!(matches!(blaschke_cov_check(&phi, c(0.1, 0.0), &cfg), Err(Error::BlaschkeNotCentered(_))));
        let half = Symbol::scaled_identity(c(0.5, 0.0)).unwrap();
        assert!(matches!(blaschke_cov_check(&half, c(0.1, 0.0), &cfg), Err(Error::NotBlaschke)));
    }

    #[test]
    fn m_norm_examples() {
        let cfg = QuadConfig::default();
        assert!((m_norm(&monomial(2), &cfg).unwrap().value - 2.0).abs() < 1e-12);
        let k = c(0.3, -0.4);
        assert!((m_norm(&Symbol::constant(k).unwrap(), &cfg).unwrap().value - 0.5).abs() < 1e-15);
        let a = c(0.6, 0.2);
        let r = a.norm();
        let want = r + (1.0 - r * r) + 2.0 * r * (1.0 - r * r) * series_kernel_integral(a, 3.0).unwrap();
        let got = m_norm(&Symbol::mobius(a).unwrap(), &cfg).unwrap().value;
        assert!((got / want - 1.0).abs() < 1e-8);
    }

    #[test]
    fn norm_bound_for_monomials() {
        let cfg = QuadConfig::default().with_rel_tol(1e-6);
        for n in 1..=4 {
            let nb = blaschke_norm_bound(&monomial(n), &cfg).unwrap();
            assert!((nb.m_norm.second.value - 2.0 * (n as f64 - 1.0)).abs() < 1e-8);
            assert!(nb.checked && nb.holds);
        }
    }

    #[test]
    fn norm_bound_with_off_center_zeros() {
        let cfg = QuadConfig::default().with_rel_tol(1e-6);
        let b = Symbol::blaschke(vec![c(0.5, 0.2), c(-0.3, -0.6), c(0.0, 0.0)], c(1.0, 0.0)).unwrap();
        let nb = blaschke_norm_bound(&b, &cfg).unwrap();
        assert!(nb.checked, "{nb:?}");
        assert!(nb.holds);
        assert_eq!(nb.degree, 3);
    }
}
