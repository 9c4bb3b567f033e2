//! Analytic self-maps of the unit disk as expression trees.
//!
//! Every node evaluates to a second-order jet `(ψ, ψ′, ψ″)` by structural
//! differentiation (product and chain rules); no numerical differencing is
//! involved. All node types are rational functions, which makes valency
//! counting possible through [`Symbol::rational`].

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::poly::{Poly, Rational};
use crate::{Complex, Error, Result};

/// Tolerance for unimodularity of rotations and for `|α| ≤ 1`.
pub const UNIMODULAR_TOL: f64 = 1e-12;
/// Smallest denominator modulus accepted during evaluation.
pub const MIN_DENOMINATOR: f64 = 1e-14;

mod valency;
pub use valency::{valency, RationalMap, ValencyReport, DEFAULT_BOUNDARY_MARGIN, DEFAULT_CLUSTER_TOL};

/// Value, first and second derivative of an analytic map at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub f: Complex,
    pub d1: Complex,
    pub d2: Complex,
}

impl Jet2 {
    pub fn constant(c: Complex) -> Self {
        Self { f: c, d1: Complex::zero(), d2: Complex::zero() }
    }

    pub fn identity(z: Complex) -> Self {
        Self { f: z, d1: Complex::one(), d2: Complex::zero() }
    }

    /// Product rule.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Jet2) -> Jet2 {
        Jet2 {
            f: self.f * other.f,
            d1: self.d1 * other.f + self.f * other.d1,
            d2: self.d2 * other.f + self.d1 * other.d1 * 2.0 + self.f * other.d2,
        }
    }

    /// Chain rule: `self` is the jet of the outer map at `inner.f`.
    pub fn chain(self, inner: Jet2) -> Jet2 {
        Jet2 { f: self.f, d1: self.d1 * inner.d1, d2: self.d2 * inner.d1 * inner.d1 + self.d1 * inner.d2 }
    }

    pub fn scale(self, c: Complex) -> Jet2 {
        Jet2 { f: self.f * c, d1: self.d1 * c, d2: self.d2 * c }
    }

    fn is_finite(&self) -> bool {
        self.f.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }
}

/// Node of a symbol expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    /// `φ_α(z) = (α − z)/(1 − ᾱz)`.
    Mobius {
        alpha: Complex,
    },
    /// `rotation · ∏ φ_{a_j}(z)`.
    Blaschke {
        zeros: Vec<Complex>,
        rotation: Complex,
    },
    /// `Σ c_k z^k`, coefficients in ascending order.
    Polynomial {
        coeffs: Vec<Complex>,
    },
    Compose {
        outer: Box<Symbol>,
        inner: Box<Symbol>,
    },
    Product {
        left: Box<Symbol>,
        right: Box<Symbol>,
    },
    Constant(Complex),
    Identity,
}

/// An analytic map of the disk, validated at construction for parameter
/// ranges. Whether it maps the disk into itself is checked separately by
/// [`validate_self_map`].
#[derive(Debug, Clone, PartialEq)]
pub struct Symbol {
    node: Node,
}

fn finite(c: Complex) -> Result<Complex> {
    if c.is_finite() {
        Ok(c)
    } else {
        Err(Error::NonFinite)
    }
}

fn mobius_jet(alpha: Complex, z: Complex) -> Result<Jet2> {
    let den = Complex::one() - alpha.conj() * z;
    let m = den.norm();
    if !(m > MIN_DENOMINATOR) {
        return Err(Error::EvaluationFailure { z, denominator: m });
    }
    let q = alpha.norm_sqr() - 1.0;
    let inv = den.inv();
    let d1 = inv * inv * q;
    Ok(Jet2 { f: (alpha - z) * inv, d1, d2: d1 * inv * alpha.conj() * 2.0 })
}

impl Symbol {
    /// The disk automorphism (or, for `|α| = 1`, the unimodular constant map)
    /// `φ_α(z) = (α − z)/(1 − ᾱz)`.
    pub fn mobius(alpha: Complex) -> Result<Self> {
        let alpha = finite(alpha)?;
        if alpha.norm() > 1.0 + UNIMODULAR_TOL {
            return Err(Error::MobiusOutsideDisk(alpha.norm()));
        }
        Ok(Self { node: Node::Mobius { alpha } })
    }

    /// Finite Blaschke product `rotation · ∏ φ_{a_j}`.
    pub fn blaschke(zeros: Vec<Complex>, rotation: Complex) -> Result<Self> {
        for (index, &a) in zeros.iter().enumerate() {
            finite(a)?;
            if a.norm() >= 1.0 {
                return Err(Error::ZeroOutsideDisk { index, modulus: a.norm() });
            }
        }
        let rotation = finite(rotation)?;
        if (rotation.norm() - 1.0).abs() > UNIMODULAR_TOL {
            return Err(Error::NonUnimodularRotation(rotation.norm()));
        }
        Ok(Self { node: Node::Blaschke { zeros, rotation } })
    }

    pub fn polynomial(coeffs: Vec<Complex>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        for &c in &coeffs {
            finite(c)?;
        }
        Ok(Self { node: Node::Polynomial { coeffs } })
    }

    pub fn compose(outer: Symbol, inner: Symbol) -> Self {
        Self { node: Node::Compose { outer: Box::new(outer), inner: Box::new(inner) } }
    }

    pub fn product(left: Symbol, right: Symbol) -> Self {
        Self { node: Node::Product { left: Box::new(left), right: Box::new(right) } }
    }

    pub fn constant(c: Complex) -> Result<Self> {
        Ok(Self { node: Node::Constant(finite(c)?) })
    }

    pub fn identity() -> Self {
        Self { node: Node::Identity }
    }

    /// `c · z`.
    pub fn scaled_identity(c: Complex) -> Result<Self> {
        Self::polynomial(vec![Complex::zero(), c])
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    /// Exact jet `(ψ(z), ψ′(z), ψ″(z))`.
    ///
    /// Fails when a Möbius denominator `1 − ᾱw` drops below `1e-14` in modulus
    /// or when any intermediate value is not finite.
    pub fn eval_jet(&self, z: Complex) -> Result<Jet2> {
        finite(z)?;
        let jet = match &self.node {
            Node::Mobius { alpha } => mobius_jet(*alpha, z)?,
            Node::Blaschke { zeros, rotation } => {
                let mut acc = Jet2::constant(*rotation);
                for &a in zeros {
                    acc = acc.mul(mobius_jet(a, z)?);
                }
                acc
            }
            Node::Polynomial { coeffs } => {
                let mut f = Complex::zero();
                let mut d1 = Complex::zero();
                let mut d2 = Complex::zero();
                for &c in coeffs.iter().rev() {
                    d2 = d2 * z + d1 * 2.0;
                    d1 = d1 * z + f;
                    f = f * z + c;
                }
                Jet2 { f, d1, d2 }
            }
            Node::Compose { outer, inner } => {
                let g = inner.eval_jet(z)?;
                outer.eval_jet(g.f)?.chain(g)
            }
            Node::Product { left, right } => left.eval_jet(z)?.mul(right.eval_jet(z)?),
            Node::Constant(c) => Jet2::constant(*c),
            Node::Identity => Jet2::identity(z),
        };
        if jet.is_finite() {
            Ok(jet)
        } else {
            Err(Error::EvaluationFailure { z, denominator: 0.0 })
        }
    }

    pub fn eval(&self, z: Complex) -> Result<Complex> {
        self.eval_jet(z).map(|j| j.f)
    }

    /// Degree of the symbol as a finite Blaschke product, if its structure
    /// shows it is one (unimodular constants have degree 0).
    pub fn blaschke_degree(&self) -> Option<usize> {
        let unimodular = |c: Complex| (c.norm() - 1.0).abs() <= UNIMODULAR_TOL;
        match &self.node {
            Node::Identity => Some(1),
            Node::Mobius { alpha } => (alpha.norm() < 1.0).then_some(1),
            Node::Blaschke { zeros, .. } => Some(zeros.len()),
            Node::Constant(c) => unimodular(*c).then_some(0),
            Node::Polynomial { coeffs } => monomial(coeffs).filter(|&(_, c)| unimodular(c)).map(|(k, _)| k),
            Node::Product { left, right } => Some(left.blaschke_degree()? + right.blaschke_degree()?),
            Node::Compose { outer, inner } => Some(outer.blaschke_degree()? * inner.blaschke_degree()?),
        }
    }

    /// Flattens a product of Möbius factors into `(zeros, rotation)` so that
    /// the symbol equals `rotation · ∏ φ_{a_j}`. Compositions are not flattened.
    pub fn blaschke_factors(&self) -> Option<(Vec<Complex>, Complex)> {
        let unimodular = |c: Complex| (c.norm() - 1.0).abs() <= UNIMODULAR_TOL;
        match &self.node {
            Node::Identity => Some((vec![Complex::zero()], -Complex::one())),
            Node::Mobius { alpha } => (alpha.norm() < 1.0).then(|| (vec![*alpha], Complex::one())),
            Node::Blaschke { zeros, rotation } => Some((zeros.clone(), *rotation)),
            Node::Constant(c) => unimodular(*c).then(|| (Vec::new(), *c)),
            Node::Polynomial { coeffs } => {
                let (k, c) = monomial(coeffs).filter(|&(_, c)| unimodular(c))?;
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                Some((vec![Complex::zero(); k], c * sign))
            }
            Node::Product { left, right } => {
                let (mut zl, rl) = left.blaschke_factors()?;
                let (zr, rr) = right.blaschke_factors()?;
                zl.extend(zr);
                Some((zl, rl * rr))
            }
            Node::Compose { .. } => None,
        }
    }

    /// The symbol as a rational function `num / den`.
    pub fn rational(&self) -> Rational {
        let one = Poly::constant(Complex::one());
        match &self.node {
            Node::Identity => Rational { num: Poly::identity(), den: one },
            Node::Constant(c) => Rational { num: Poly::constant(*c), den: one },
            Node::Polynomial { coeffs } => Rational { num: Poly::new(coeffs.clone()), den: one },
            Node::Mobius { alpha } => mobius_rational(*alpha),
            Node::Blaschke { zeros, rotation } => zeros
                .iter()
                .fold(Rational { num: Poly::constant(*rotation), den: one }, |acc, &a| acc.mul(&mobius_rational(a))),
            Node::Product { left, right } => left.rational().mul(&right.rational()),
            Node::Compose { outer, inner } => outer.rational().compose(&inner.rational()),
        }
    }
}

fn mobius_rational(alpha: Complex) -> Rational {
    Rational { num: Poly::new(vec![alpha, -Complex::one()]), den: Poly::new(vec![Complex::one(), -alpha.conj()]) }
}

/// `(k, c)` if the coefficient list represents `c z^k`.
fn monomial(coeffs: &[Complex]) -> Option<(usize, Complex)> {
    let mut found = None;
    for (k, &c) in coeffs.iter().enumerate() {
        if c != Complex::zero() {
            if found.is_some() {
                return None;
            }
            found = Some((k, c));
        }
    }
    found
}

/// `(φ_α∘ψ)″(z) = (|α|²−1)[ψ″/(1−ᾱψ)² + 2ᾱ(ψ′)²/(1−ᾱψ)³]`.
pub fn comp_second_derivative(alpha: Complex, psi: &Symbol, z: Complex) -> Result<Complex> {
    check_open_disk(alpha)?;
    let jet = psi.eval_jet(z)?;
    Ok(comp_second_derivative_from_jet(alpha, &jet))
}

/// Same as [`comp_second_derivative`] for an already evaluated jet of `ψ`.
pub fn comp_second_derivative_from_jet(alpha: Complex, jet: &Jet2) -> Complex {
    let ac = alpha.conj();
    let inv = (Complex::one() - ac * jet.f).inv();
    let inv2 = inv * inv;
    (jet.d2 * inv2 + ac * jet.d1 * jet.d1 * inv2 * inv * 2.0) * (alpha.norm_sqr() - 1.0)
}

pub(crate) fn check_open_disk(z: Complex) -> Result<()> {
    finite(z)?;
    if z.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::OutsideOpenDisk(z.norm()))
    }
}

/// Radius of the sampling circle used by [`validate_self_map`].
pub const VALIDATION_RADIUS: f64 = 1.0 - 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelfMapStatus {
    /// `max |ψ| < 1 − tol`: the symbol stays away from the circle (compact `C_ψ`).
    Interior,
    /// `max |ψ| ∈ [1 − tol, 1 + tol]`.
    BoundaryTouching,
    /// `max |ψ| > 1 + tol`, or evaluation failed on the sampling circle.
    Rejected,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfMapReport {
    pub max_modulus: f64,
    pub argmax: Complex,
    pub samples: usize,
    pub tol: f64,
    pub status: SelfMapStatus,
}

impl SelfMapReport {
    pub fn accepted(&self) -> bool {
        self.status != SelfMapStatus::Rejected
    }
}

/// Samples `|ψ|` on the circle of radius `1 − 1e-6`. By the maximum principle
/// this approximates `sup_𝔻 |ψ|`. At least 64 samples are always taken.
pub fn validate_self_map(sym: &Symbol, samples: usize, tol: f64) -> SelfMapReport {
    let samples = samples.max(64);
    let mut max_modulus = 0.0_f64;
    let mut argmax = Complex::zero();
    for k in 0..samples {
        let theta = 2.0 * core::f64::consts::PI * k as f64 / samples as f64;
        let z = Complex::from_polar(VALIDATION_RADIUS, theta);
        let m = match sym.eval(z) {
            Ok(w) => w.norm(),
            Err(_) => f64::INFINITY,
        };
        if !(m <= max_modulus) {
            max_modulus = m;
            argmax = z;
        }
    }
    let status = if !(max_modulus <= 1.0 + tol) {
        SelfMapStatus::Rejected
    } else if max_modulus >= 1.0 - tol {
        SelfMapStatus::BoundaryTouching
    } else {
        SelfMapStatus::Interior
    };
    SelfMapReport { max_modulus, argmax, samples, tol, status }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn mobius_basic_values() {
        let phi0 = Symbol::mobius(c(0.0, 0.0)).unwrap();
        assert!((phi0.eval(c(0.3, 0.0)).unwrap() - c(-0.3, 0.0)).norm() < 1e-15);
        let phi = Symbol::mobius(c(0.5, 0.0)).unwrap();
        assert_eq!(phi.eval(c(0.5, 0.0)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn mobius_rejects_outside_parameter() {
        assert!(matches!(Symbol::mobius(c(1.1, 0.0)), Err(Error::MobiusOutsideDisk(_))));
        assert!(Symbol::mobius(c(1.0 + 1e-13, 0.0)).is_ok());
        assert!(Symbol::mobius(c(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn mobius_jet_at_origin() {
        let alpha = c(0.3, -0.4);
        let j = Symbol::mobius(alpha).unwrap().eval_jet(c(0.0, 0.0)).unwrap();
        let q = alpha.norm_sqr() - 1.0;
        assert!((j.f - alpha).norm() < 1e-15);
        assert!((j.d1 - c(q, 0.0)).norm() < 1e-15);
        assert!((j.d2 - alpha.conj() * 2.0 * q).norm() < 1e-15);
    }

    #[test]
    fn unimodular_mobius_fails_at_its_pole() {
        let phi = Symbol::mobius(c(1.0, 0.0)).unwrap();
        assert!(matches!(phi.eval_jet(c(1.0, 0.0)), Err(Error::EvaluationFailure { .. })));
        assert!(phi.eval_jet(c(0.5, 0.0)).is_ok());
    }

    #[test]
    fn blaschke_double_zero_at_origin_is_z_squared() {
        let b = Symbol::blaschke(vec![c(0.0, 0.0); 2], c(1.0, 0.0)).unwrap();
        for &z in &[c(0.3, 0.1), c(-0.6, 0.5), c(0.0, -0.9)] {
            assert!((b.eval(z).unwrap() - z * z).norm() < 1e-15);
        }
        let b = Symbol::blaschke(vec![c(0.0, 0.0), c(0.5, 0.0)], c(1.0, 0.0)).unwrap();
        assert_eq!(b.eval(c(0.5, 0.0)).unwrap().norm(), 0.0);
        assert_eq!(b.eval(c(0.0, 0.0)).unwrap().norm(), 0.0);
    }

    #[test]
    fn blaschke_is_unimodular_on_circle() {
        let b = Symbol::blaschke(vec![c(0.3, 0.2), c(-0.5, 0.0)], c(1.0, 0.0)).unwrap();
        let worst = (0..720)
            .map(|k| {
                let z = Complex::from_polar(1.0, 2.0 * PI * k as f64 / 720.0);
                (b.eval(z).unwrap().norm() - 1.0).abs()
            })
            .fold(0.0, f64::max);
        assert!(worst <= 1e-10, "{worst}");
    }

    #[test]
    fn blaschke_validation_errors() {
        assert!(matches!(
            Symbol::blaschke(vec![c(0.2, 0.0), c(1.0, 0.0)], c(1.0, 0.0)),
            Err(Error::ZeroOutsideDisk { index: 1, .. })
        ));
        assert!(matches!(Symbol::blaschke(vec![c(0.2, 0.0)], c(1.1, 0.0)), Err(Error::NonUnimodularRotation(_))));
    }

    #[test]
    fn compose_monomials() {
        let sq = Symbol::polynomial(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let s = Symbol::compose(sq.clone(), sq);
        let z = c(0.3, -0.2);
        let j = s.eval_jet(z).unwrap();
        assert!((j.f - z.powu(4)).norm() < 1e-15);
        assert!((j.d1 - z.powu(3) * 4.0).norm() < 1e-15);
        assert!((j.d2 - z.powu(2) * 12.0).norm() < 1e-14);
    }

    #[test]
    fn compose_jet_is_the_chain_rule_of_component_jets() {
        let outer = Symbol::blaschke(vec![c(0.2, 0.1), c(-0.4, 0.3)], c(0.0, 1.0)).unwrap();
        let inner = Symbol::mobius(c(0.1, -0.6)).unwrap();
        let comp = Symbol::compose(outer.clone(), inner.clone());
        let z = c(0.25, 0.4);
        let g = inner.eval_jet(z).unwrap();
        let expected = outer.eval_jet(g.f).unwrap().chain(g);
        assert_eq!(comp.eval_jet(z).unwrap(), expected);
    }

    #[test]
    fn comp_second_derivative_identity_cases() {
        let id = Symbol::identity();
        for &z in &[c(0.1, 0.2), c(-0.7, 0.0)] {
            assert_eq!(comp_second_derivative(c(0.0, 0.0), &id, z).unwrap().norm(), 0.0);
        }
        let v = comp_second_derivative(c(0.5, 0.0), &id, c(0.0, 0.0)).unwrap();
        assert!((v.norm() - 0.75).abs() < 1e-15);
        assert!(comp_second_derivative(c(1.0, 0.0), &id, c(0.0, 0.0)).is_err());
    }

    #[test]
    fn self_map_validation() {
        let two_z = Symbol::scaled_identity(c(2.0, 0.0)).unwrap();
        assert_eq!(validate_self_map(&two_z, 256, 1e-4).status, SelfMapStatus::Rejected);
        let half = Symbol::polynomial(vec![c(0.5, 0.0), c(0.5, 0.0)]).unwrap();
        let rep = validate_self_map(&half, 256, 1e-4);
        assert_eq!(rep.status, SelfMapStatus::BoundaryTouching);
        let b = Symbol::blaschke(vec![c(0.3, 0.2), c(-0.5, 0.0)], c(1.0, 0.0)).unwrap();
        assert_eq!(validate_self_map(&b, 256, 1e-4).status, SelfMapStatus::BoundaryTouching);
        let strict = Symbol::scaled_identity(c(0.5, 0.0)).unwrap();
        assert_eq!(validate_self_map(&strict, 16, 1e-4).status, SelfMapStatus::Interior);
        assert_eq!(validate_self_map(&strict, 16, 1e-4).samples, 64);
    }

    #[test]
    fn blaschke_degree_and_factors() {
        let b = Symbol::blaschke(vec![c(0.1, 0.0), c(0.2, 0.3)], c(1.0, 0.0)).unwrap();
        let phi = Symbol::mobius(c(0.4, 0.0)).unwrap();
        assert_eq!(Symbol::compose(phi.clone(), b.clone()).blaschke_degree(), Some(2));
        assert_eq!(Symbol::product(phi.clone(), b.clone()).blaschke_degree(), Some(3));
        assert_eq!(Symbol::identity().blaschke_degree(), Some(1));
        let z3 = Symbol::polynomial(vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)]).unwrap();
        assert_eq!(z3.blaschke_degree(), Some(3));
        let half = Symbol::polynomial(vec![c(0.5, 0.0), c(0.5, 0.0)]).unwrap();
        assert_eq!(half.blaschke_degree(), None);

        let prod = Symbol::product(Symbol::identity(), Symbol::product(phi, z3.clone()));
        let (zeros, rot) = prod.blaschke_factors().unwrap();
        assert_eq!(zeros.len(), 5);
        let flat = Symbol::blaschke(zeros, rot).unwrap();
        let z = c(0.3, -0.45);
        assert!((flat.eval(z).unwrap() - prod.eval(z).unwrap()).norm() < 1e-14);
    }

    #[test]
    fn rational_form_matches_evaluation() {
        let s = Symbol::compose(
            Symbol::blaschke(vec![c(0.2, 0.1), c(-0.4, 0.3)], c(0.6, 0.8)).unwrap(),
            Symbol::product(
                Symbol::mobius(c(0.1, -0.6)).unwrap(),
                Symbol::polynomial(vec![c(0.1, 0.0), c(0.5, 0.0)]).unwrap(),
            ),
        );
        let r = s.rational();
        for &z in &[c(0.1, 0.2), c(-0.5, 0.4), c(0.7, -0.3)] {
            assert!((r.eval(z) - s.eval(z).unwrap()).norm() < 1e-13);
        }
    }

    fn jet_fd(s: &Symbol, z: Complex, h: f64) -> (Complex, Complex) {
        let f = |w: Complex| s.eval(w).unwrap();
        let hp = c(h, 0.0);
        let d1 = (f(z + hp) - f(z - hp)) / (2.0 * h);
        let d2 = (f(z + hp) - f(z) * 2.0 + f(z - hp)) / (h * h);
        (d1, d2)
    }

    fn disk_point() -> impl Strategy<Value = Complex> {
        (0.0..0.9f64, 0.0..(2.0 * PI)).prop_map(|(r, t)| Complex::from_polar(r, t))
    }

    proptest! {
        #[test]
        fn mobius_is_an_involution(alpha in disk_point(), z in disk_point()) {
            let phi = Symbol::mobius(alpha).unwrap();
            let back = phi.eval(phi.eval(z).unwrap()).unwrap();
            prop_assert!((back - z).norm() < 1e-12);
        }

        #[test]
        fn blaschke_jet_matches_finite_differences(
            a in disk_point(), b in disk_point(), d in disk_point(), z in disk_point()
        ) {
            let s = Symbol::blaschke(vec![a * 0.9, b * 0.9, d * 0.9], c(0.0, 1.0)).unwrap();
            let j = s.eval_jet(z).unwrap();
            let (d1, _) = jet_fd(&s, z, 1e-5);
            let (_, d2) = jet_fd(&s, z, 1e-4);
            let scale1 = j.d1.norm().max(1.0);
            let scale2 = j.d2.norm().max(1.0);
            prop_assert!((d1 - j.d1).norm() / scale1 < 1e-6);
            prop_assert!((d2 - j.d2).norm() / scale2 < 1e-5);
        }

        #[test]
        fn schwarz_pick_holds_for_blaschke(a in disk_point(), b in disk_point(), beta in disk_point()) {
            let s = Symbol::blaschke(vec![a, b], c(1.0, 0.0)).unwrap();
            let j = s.eval_jet(beta).unwrap();
            let lhs = j.d1.norm() / (1.0 - j.f.norm_sqr());
            prop_assert!(lhs <= 1.0 / (1.0 - beta.norm_sqr()) + 1e-9);
        }

        #[test]
        fn comp_second_derivative_matches_composed_jet(
            a in disk_point(), b in disk_point(), alpha in disk_point(), z in disk_point()
        ) {
            let psi = Symbol::blaschke(vec![a, b], c(0.6, -0.8)).unwrap();
            let direct = comp_second_derivative(alpha, &psi, z).unwrap();
            let comp = Symbol::compose(Symbol::mobius(alpha).unwrap(), psi.clone());
            let via = comp.eval_jet(z).unwrap().d2;
            prop_assert!((direct - via).norm() <= 1e-10 * via.norm().max(1e-12));
        }
    }
}
