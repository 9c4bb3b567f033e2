use alloc::vec::Vec;

use crate::symbol::{RationalMap, UNIMODULAR_TOL};
use crate::{Complex, Error, Result, Symbol};

/// Roots of `num − ξ·den` within this distance of the circle count as
/// boundary preimages of `ξ`.
pub const BOUNDARY_ROOT_TOL: f64 = 1e-6;

/// `m = 10, 20, 50, …, 10⁴`.
pub fn default_m_schedule() -> Vec<u64> {
    let mut out = Vec::new();
    let mut decade = 10;
    while decade <= 10_000 {
        out.push(decade);
        if decade < 10_000 {
            out.push(2 * decade);
            out.push(5 * decade);
        }
        decade *= 10;
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct NtStep {
    pub m: u64,
    pub alpha: Complex,
    /// Preimages of `alpha`, ordered by trajectory.
    pub preimages: Vec<Complex>,
    /// `(1−|β_j|)/|ζ_j − β_j|`, aligned with `preimages`.
    pub ratios: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NtFailure {
    pub m: u64,
    pub reason: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NtProfile {
    pub xi: Complex,
    /// Steps up to the first matching failure.
    pub steps: Vec<NtStep>,
    /// Boundary point each trajectory tends to.
    pub limits: Vec<Complex>,
    /// Trajectories whose limit had to be taken as the radial projection of
    /// the last preimage because no boundary preimage of `ξ` was near.
    pub projected_limits: Vec<usize>,
    /// Number of trajectories.
    pub n: usize,
    /// Smallest ratio over the later half of the schedule (a finite stand-in
    /// for the liminf).
    pub t: f64,
    pub failures: Vec<NtFailure>,
}

fn min_pair_distance(pts: &[Complex]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            best = best.min((pts[i] - pts[j]).norm());
        }
    }
    best
}

/// Preimages of `α_m = (1 − 1/m)ξ` followed along the schedule.
///
/// Trajectories are continued by nearest neighbours; a step is rejected when a
/// trajectory would jump by more than half the smallest distance between the
/// new preimages, when two trajectories claim the same preimage, or when the
/// number of preimages changes. Tracking stops at the first rejection, which
/// is reported in `failures`.
pub fn nt_profile(b: &Symbol, xi: Complex, m_schedule: &[u64]) -> Result<NtProfile> {
    if !xi.is_finite() {
        return Err(Error::NonFinite);
    }
    if (xi.norm() - 1.0).abs() > UNIMODULAR_TOL {
        return Err(Error::InvalidArgument("xi must lie on the unit circle"));
    }
    if m_schedule.is_empty() || m_schedule.iter().any(|&m| m < 2) {
        return Err(Error::InvalidArgument("m schedule must be non-empty with m >= 2"));
    }
    let mut ms = m_schedule.to_vec();
    ms.sort_unstable();
    ms.dedup();

    let map = RationalMap::new(b);
    let boundary: Vec<Complex> =
        map.rational().preimages(xi)?.into_iter().filter(|w| (w.norm() - 1.0).abs() < BOUNDARY_ROOT_TOL).collect();

    let mut paths: Vec<Vec<Complex>> = Vec::new();
    let mut alphas = Vec::new();
    let mut failures = Vec::new();
    for &m in &ms {
        let alpha = xi * (1.0 - 1.0 / m as f64);
        let mut roots: Vec<Complex> = map.report(alpha)?.interior_roots().collect();
        if paths.is_empty() {
            roots.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
            paths = roots.into_iter().map(|w| alloc::vec![w]).collect();
            alphas.push((m, alpha));
            continue;
        }
        if roots.len() != paths.len() {
            failures.push(NtFailure { m, reason: "preimage count changed" });
            break;
        }
        let limit = 0.5 * min_pair_distance(&roots);
        let mut taken = alloc::vec![false; roots.len()];
        let mut next = Vec::with_capacity(paths.len());
        let mut failed = None;
        for path in &paths {
            let last = path[path.len() - 1];
            let (k, d) = roots
                .iter()
                .enumerate()
                .map(|(k, w)| (k, (w - last).norm()))
                .fold((usize::MAX, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
            if d > limit {
                failed = Some("trajectory jump exceeds half the preimage separation");
                break;
            }
            if taken[k] {
                failed = Some("two trajectories claim the same preimage");
                break;
            }
            taken[k] = true;
            next.push(roots[k]);
        }
        if let Some(reason) = failed {
            failures.push(NtFailure { m, reason });
            break;
        }
        for (path, w) in paths.iter_mut().zip(next) {
            path.push(w);
        }
        alphas.push((m, alpha));
    }

    let mut limits = Vec::with_capacity(paths.len());
    let mut projected_limits = Vec::new();
    for (j, path) in paths.iter().enumerate() {
        let end = path[path.len() - 1];
        let nearest = boundary.iter().copied().min_by(|a, b| (a - end).norm().total_cmp(&(b - end).norm()));
        match nearest {
            Some(z) => limits.push(z),
            None => {
                projected_limits.push(j);
                limits.push(if end.norm() > 0.0 { end / end.norm() } else { xi });
            }
        }
    }

    let steps: Vec<NtStep> = alphas
        .iter()
        .enumerate()
        .map(|(i, &(m, alpha))| {
            let preimages: Vec<Complex> = paths.iter().map(|p| p[i]).collect();
            let ratios =
                preimages.iter().zip(&limits).map(|(beta, zeta)| (1.0 - beta.norm()) / (zeta - beta).norm()).collect();
            NtStep { m, alpha, preimages, ratios }
        })
        .collect();

    let tail = &steps[steps.len() / 2..];
    let t = tail.iter().flat_map(|s| s.ratios.iter().copied()).fold(f64::INFINITY, f64::min);
    Ok(NtProfile {
        xi,
        n: paths.len(),
        t: if paths.is_empty() { 0.0 } else { t },
        steps,
        limits,
        projected_limits,
        failures,
    })
}
