use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::functionals::{kappa, omega_mass};
use crate::{Complex, Error, Executor, QuadConfig, Region, Result, Symbol};

/// Tolerance for the normalization `f(0) = f′(0) = 0`, `f(1) = 1`.
pub const NORMALIZATION_TOL: f64 = 1e-8;
/// Radial offset at which the boundary value `f(1)` is sampled.
pub const RADIAL_OFFSET: f64 = 1e-6;

/// `r = 0.05, 0.10, …, 0.50`.
pub fn default_r_grid() -> Vec<f64> {
    (1..=10).map(|k| 0.05 * k as f64).collect()
}

/// Radial limit at 1 from a first-order extrapolation of the jet at `1 − h`.
fn boundary_value(f: &Symbol) -> Result<Complex> {
    let h = RADIAL_OFFSET;
    let jet = f.eval_jet(Complex::new(1.0 - h, 0.0))?;
    Ok(jet.f + jet.d1 * h)
}

fn check_normalized(f: &Symbol, flat_at_zero: bool) -> Result<()> {
    let jet = f.eval_jet(Complex::zero())?;
    if jet.f.norm() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized("f(0) must vanish"));
    }
    if flat_at_zero && jet.d1.norm() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized("f'(0) must vanish"));
    }
    if (boundary_value(f)? - Complex::one()).norm() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized("f(1) must equal 1"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeMassRow {
    pub r: f64,
    /// `∫_{Ω_r} |f″| dA`
    pub mass: f64,
    /// `mass / r`
    pub ratio: f64,
    pub error: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConeMassScan {
    pub rows: Vec<ConeMassRow>,
    /// Smallest `mass / r` over the grid.
    pub min_ratio: f64,
}

/// Mass of `|f″|` on the cones `Ω_r` (hull of `{|z| ≤ r}` and 1) for every
/// `r` in the grid, for `f` normalized by `f(0) = f′(0) = 0`, `f(1) = 1`.
pub fn lemma1_scan(f: &Symbol, r_grid: &[f64], cfg: &QuadConfig) -> Result<ConeMassScan> {
    cfg.validate()?;
    if r_grid.is_empty() {
        return Err(Error::InvalidArgument("radius grid must not be empty"));
    }
    if r_grid.iter().any(|&r| !(r > 0.0 && r <= 0.5)) {
        return Err(Error::InvalidArgument("cone radii must lie in (0, 1/2]"));
    }
    check_normalized(f, true)?;
    let mut rows = Vec::with_capacity(r_grid.len());
    for &r in r_grid {
        let q = omega_mass(f, &Region::omega(r)?, cfg)?;
        rows.push(ConeMassRow {
            r,
            mass: q.value,
            ratio: q.value / r,
            error: q.error_estimate,
            converged: q.converged,
        });
    }
    let min_ratio = rows.iter().map(|row| row.ratio).fold(f64::INFINITY, f64::min);
    Ok(ConeMassScan { rows, min_ratio })
}

/// The fixed family over which the cone-mass constant `c₀` is measured:
/// `z²`, `z³`, `z⁴`, two Blaschke products `λ z² φ_a` rotated so that they
/// fix 1, and `g²` with `g = −z φ_{1/2}` (which also fixes 1).
pub fn lemma1_family() -> Vec<(&'static str, Symbol)> {
    let c = Complex::new;
    let monomial = |n: usize| {
        let mut coeffs = vec![c(0.0, 0.0); n + 1];
        coeffs[n] = c(1.0, 0.0);
        Symbol::polynomial(coeffs).expect("monomials are valid")
    };
    let fixing_one = |zeros: Vec<Complex>| {
        let raw = Symbol::blaschke(zeros.clone(), c(1.0, 0.0)).expect("zeros inside the disk");
        let at_one = raw.eval(c(1.0, 0.0)).expect("Blaschke products are finite on the circle");
        Symbol::blaschke(zeros, at_one.conj() / at_one.norm()).expect("unimodular rotation")
    };
    vec![
        ("z^2", monomial(2)),
        ("z^3", monomial(3)),
        ("z^4", monomial(4)),
        ("z^2*phi(0.3)", fixing_one(vec![c(0.0, 0.0), c(0.0, 0.0), c(0.3, 0.0)])),
        ("z^2*phi(-0.5i)", fixing_one(vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, -0.5)])),
        ("(z*phi(0.5))^2", Symbol::compose(monomial(2), fixing_one(vec![c(0.0, 0.0), c(0.5, 0.0)]))),
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalC0 {
    /// Smallest `mass / r` over the family and the grid.
    pub value: f64,
    /// Family member attaining `value`.
    pub minimizer: &'static str,
    pub scans: Vec<(&'static str, ConeMassScan)>,
}

/// Measures `c₀` as the minimum cone-mass ratio over [`lemma1_family`].
pub fn empirical_c0<E: Executor>(r_grid: &[f64], cfg: &QuadConfig, exec: &E) -> Result<EmpiricalC0> {
    let family = lemma1_family();
    let results = exec.map(family.len(), |i| lemma1_scan(&family[i].1, r_grid, cfg));
    let mut scans = Vec::with_capacity(family.len());
    for ((name, _), r) in family.into_iter().zip(results) {
        scans.push((name, r?));
    }
    let (minimizer, value) = scans
        .iter()
        .map(|(name, s)| (*name, s.min_ratio))
        .fold(("", f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
    Ok(EmpiricalC0 { value, minimizer, scans })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoncompactRow {
    pub beta: f64,
    pub alpha: Complex,
    /// `kappa(ψ, ψ(β))`, NaN when skipped.
    pub kappa: f64,
    pub error: f64,
    /// `1 − (1−β)/(1−β²)`
    pub bound: f64,
    pub converged: bool,
    /// `|ψ(β)| ≥ 1` or the quadrature failed.
    pub skipped: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoncompactScan {
    pub rows: Vec<NoncompactRow>,
    /// Smallest `kappa / bound` over the rows that were not skipped.
    pub empirical_constant: f64,
}

/// `kappa(ψ, ψ(β))` along real `β → 1` for a symbol normalized by
/// `ψ(0) = 0`, `ψ(1) = 1`, next to the lower bound `1 − (1−β)/(1−β²)`.
pub fn noncompact_lower_bound<E: Executor>(
    psi: &Symbol,
    beta_schedule: &[f64],
    cfg: &QuadConfig,
    exec: &E,
) -> Result<NoncompactScan> {
    cfg.validate()?;
    if beta_schedule.iter().any(|&b| !(b > 0.0 && b < 1.0)) {
        return Err(Error::InvalidArgument("beta values must lie in (0, 1)"));
    }
    check_normalized(psi, false)?;
    let rows = exec.map(beta_schedule.len(), |i| {
        let beta = beta_schedule[i];
        let bound = 1.0 - (1.0 - beta) / (1.0 - beta * beta);
        let skipped = |alpha| NoncompactRow {
            beta,
            alpha,
            kappa: f64::NAN,
            error: f64::INFINITY,
            bound,
            converged: false,
            skipped: true,
        };
        let alpha = match psi.eval(Complex::new(beta, 0.0)) {
            Ok(a) if a.norm() < 1.0 => a,
            Ok(a) => return skipped(a),
            Err(_) => return skipped(Complex::new(f64::NAN, f64::NAN)),
        };
        match kappa(psi, alpha, cfg) {
            Ok(q) => NoncompactRow {
                beta,
                alpha,
                kappa: q.value,
                error: q.error_estimate,
                bound,
                converged: q.converged,
                skipped: false,
            },
            Err(_) => skipped(alpha),
        }
    });
    let empirical_constant =
        rows.iter().filter(|r| !r.skipped).map(|r| r.kappa / r.bound).fold(f64::INFINITY, f64::min);
    Ok(NoncompactScan { rows, empirical_constant })
}
