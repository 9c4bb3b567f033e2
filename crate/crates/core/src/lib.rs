//! Numerical functionals for composition operators on the minimal
//! Möbius-invariant space of analytic functions on the unit disk.
//!
//! The crate is `no_std` and only needs `alloc`. It provides
//!
//! - [`symbol`]: analytic self-maps of the disk as expression trees with exact
//!   second-order jets, self-map validation and valency counting,
//! - [`quadrature`]: adaptive polar quadrature over the disk and over cone
//!   regions (normalized area measure), a seeded Monte Carlo oracle and the
//!   exact series for the Möbius kernels,
//! - [`functionals`]: the integral functionals of `C_ψ` (boundedness integral,
//!   split integrals, Bergman kernel functional, Carleson ratios, cone masses),
//! - [`estimators`]: sweeps over the parameter disk and the tail-sup proxy for
//!   the essential norm, plus the Blaschke, cone-mass and `(n;t)` checks.
//!
//! Parallel work is expressed through the [`Executor`] trait; the crate ships
//! only the [`Sequential`] executor so results never depend on scheduling.

#![no_std]
// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod estimators;
pub mod exec;
pub mod functionals;
pub mod poly;
pub mod quadrature;
pub mod symbol;

pub use error::{Error, Result};
pub use exec::{Executor, Sequential};
pub use num_complex::Complex64 as Complex;
pub use quadrature::{QuadConfig, QuadResult, Region};
pub use symbol::{Jet2, Symbol};
