use alloc::vec::Vec;

use super::{check_open_disk, Symbol};
use crate::poly::Rational;
use crate::{Complex, Result};

/// Relative clustering tolerance (scaled by the largest root modulus, at least 1).
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;
/// Roots with `1 − margin ≤ |w| < 1 + margin` are flagged instead of counted.
pub const DEFAULT_BOUNDARY_MARGIN: f64 = 1e-10;

/// Preimages of a point under a rational symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct ValencyReport {
    /// Number of distinct preimages with `|w| < 1 − boundary_margin`.
    pub count: usize,
    /// One representative per root cluster (inside and outside the disk).
    pub roots: Vec<Complex>,
    /// Multiplicity of each cluster, aligned with `roots`.
    pub clustered_multiplicity: Vec<usize>,
    pub boundary_margin: f64,
    /// Cluster representatives within the boundary margin of the circle.
    pub flagged: Vec<Complex>,
}

impl ValencyReport {
    /// Distinct preimages strictly inside the disk.
    pub fn interior_roots(&self) -> impl Iterator<Item = Complex> + '_ {
        let limit = 1.0 - self.boundary_margin;
        self.roots.iter().copied().filter(move |w| w.norm() < limit)
    }

    /// Preimage count including multiplicity.
    pub fn count_with_multiplicity(&self) -> usize {
        let limit = 1.0 - self.boundary_margin;
        self.roots.iter().zip(&self.clustered_multiplicity).filter(|(w, _)| w.norm() < limit).map(|(_, &m)| m).sum()
    }
}

/// A symbol converted once to rational form, for repeated preimage queries.
#[derive(Debug, Clone)]
pub struct RationalMap {
    rational: Rational,
    cluster_tol: f64,
    boundary_margin: f64,
}

impl RationalMap {
    pub fn new(sym: &Symbol) -> Self {
        Self { rational: sym.rational(), cluster_tol: DEFAULT_CLUSTER_TOL, boundary_margin: DEFAULT_BOUNDARY_MARGIN }
    }

    pub fn with_cluster_tol(mut self, tol: f64) -> Self {
        self.cluster_tol = tol;
        self
    }

    pub fn with_boundary_margin(mut self, margin: f64) -> Self {
        self.boundary_margin = margin;
        self
    }

    pub fn rational(&self) -> &Rational {
        &self.rational
    }

    /// All roots of `num(w) − z·den(w)`, without any disk restriction.
    pub fn solve(&self, z: Complex) -> Result<Vec<Complex>> {
        self.rational.preimages(z)
    }

    pub fn report(&self, z: Complex) -> Result<ValencyReport> {
        check_open_disk(z)?;
        let raw = self.solve(z)?;
        let scale = raw.iter().map(|w| w.norm()).fold(1.0, f64::max);
        let tol = self.cluster_tol * scale;
        let mut roots: Vec<Complex> = Vec::new();
        let mut mult: Vec<usize> = Vec::new();
        for w in raw {
            match roots.iter().position(|r| (r - w).norm() <= tol) {
                Some(i) => mult[i] += 1,
                None => {
                    roots.push(w);
                    mult.push(1);
                }
            }
        }
        let m = self.boundary_margin;
        let count = roots.iter().filter(|w| w.norm() < 1.0 - m).count();
        let flagged = roots.iter().copied().filter(|w| w.norm() >= 1.0 - m && w.norm() < 1.0 + m).collect();
        Ok(ValencyReport { count, roots, clustered_multiplicity: mult, boundary_margin: m, flagged })
    }

    pub fn count(&self, z: Complex) -> Result<usize> {
        self.report(z).map(|r| r.count)
    }
}

/// `n_ψ(z)`: number of distinct preimages of `z` in the disk.
pub fn valency(sym: &Symbol, z: Complex, cluster_tol: f64) -> Result<ValencyReport> {
    RationalMap::new(sym).with_cluster_tol(cluster_tol).report(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn square_has_two_preimages() {
        let sq = Symbol::polynomial(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let r = valency(&sq, c(0.25, 0.0), DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(r.count, 2);
        let mut re: Vec<f64> = r.roots.iter().map(|w| w.re).collect();
        re.sort_by(f64::total_cmp);
        assert!((re[0] + 0.5).abs() < 1e-14 && (re[1] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn automorphism_is_univalent() {
        let phi = Symbol::mobius(c(0.3, 0.0)).unwrap();
        for &z in &[c(0.0, 0.0), c(0.9, 0.0), c(-0.5, 0.6)] {
            assert_eq!(valency(&phi, z, DEFAULT_CLUSTER_TOL).unwrap().count, 1);
        }
    }

    #[test]
    fn strict_self_map_misses_outer_points() {
        // ψ = z/2 never reaches 0.8
        let half = Symbol::scaled_identity(c(0.5, 0.0)).unwrap();
        assert_eq!(valency(&half, c(0.8, 0.0), DEFAULT_CLUSTER_TOL).unwrap().count, 0);
        assert_eq!(valency(&half, c(0.3, 0.0), DEFAULT_CLUSTER_TOL).unwrap().count, 1);
    }

    #[test]
    fn critical_value_counts_distinct_points() {
        let sq = Symbol::polynomial(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let r = valency(&sq, c(0.0, 0.0), DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(r.count, 1);
        assert_eq!(r.count_with_multiplicity(), 2);
    }

    #[test]
    fn rejects_points_outside_the_disk() {
        assert!(valency(&Symbol::identity(), c(1.0, 0.0), DEFAULT_CLUSTER_TOL).is_err());
    }
}
