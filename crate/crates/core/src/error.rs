use crate::Complex;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("non-finite input value")]
    NonFinite,
    #[error("Möbius parameter lies outside the closed disk (|alpha| = {0})")]
    MobiusOutsideDisk(f64),
    #[error("Blaschke zero #{index} has modulus {modulus} >= 1")]
    ZeroOutsideDisk { index: usize, modulus: f64 },
    #[error("rotation is not unimodular (|rotation| = {0})")]
    NonUnimodularRotation(f64),
    #[error("polynomial has no coefficients")]
    EmptyPolynomial,
    #[error("evaluation failed at z = {z}: denominator modulus {denominator:e} is below 1e-14")]
    EvaluationFailure { z: Complex, denominator: f64 },
    #[error("point must lie in the open unit disk, got |z| = {0}")]
    OutsideOpenDisk(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("invalid region: {0}")]
    InvalidRegion(&'static str),
    #[error("integrand is not finite at z = {0}")]
    NonFiniteIntegrand(Complex),
    #[error("eigenvalue iteration did not converge for a degree-{0} polynomial")]
    RootSolverFailed(usize),
    #[error("symbol is not a finite Blaschke product")]
    NotBlaschke,
    #[error("Blaschke product must vanish at the origin (|B(0)| = {0})")]
    BlaschkeNotCentered(f64),
    #[error("function is not normalized: {0}")]
    NotNormalized(&'static str),
    #[error("value |psi(z)| = {0} is not inside the open disk")]
    BoundaryValue(f64),
}
