//! Sweeps over the parameter disk and the derived estimates.

mod blaschke;
mod cone;
mod nt;
mod sweep;

pub use blaschke::{blaschke_cov_check, blaschke_norm_bound, m_norm, CovCheck, MNorm, NormBound, CENTER_TOL};
pub use cone::{
    default_r_grid, empirical_c0, lemma1_family, lemma1_scan, noncompact_lower_bound, ConeMassRow, ConeMassScan,
    EmpiricalC0, NoncompactRow, NoncompactScan, NORMALIZATION_TOL, RADIAL_OFFSET,
};
pub use nt::{default_m_schedule, nt_profile, NtFailure, NtProfile, NtStep, BOUNDARY_ROOT_TOL};
pub use sweep::{
    boundedness_profile, default_schedule, essential_norm_proxy, AlphaSweep, EssNormEstimate, SweepPoint, TailLevel,
    DEFAULT_ANGLES, GOLDEN_STEPS, MAX_SCHEDULE_DEPTH, PROXY_REL_TOL,
};
