//! Numerical kernels for the elliptic algebra at critical level and the
//! deformed Virasoro / W_N structures that live on its centre.
//!
//! The crate is organised bottom-up:
//!
//! * [`special_fn`] – theta functions with characteristics, q-Pochhammer
//!   products, the one-nome theta Θ, τ_N and q-numbers.
//! * [`rmatrix`] – the Z_N-vertex R-matrix, its gauge transform and the
//!   normalised R̂, plus the five-property verification suite.
//! * [`structure_fn`] – the scalar structure functions T, M, f, F, Y, f_h and
//!   the exchange surface Σ_{N,M}.
//! * [`mode_algebra`] – pole ladders, sectors, mode coefficient tables,
//!   formal brackets and the contour-quadrature oracle.
//! * [`suites`] / [`report`] – named identity suites and their reports.

pub mod error;
pub mod mode_algebra;
pub mod report;
pub mod rmatrix;
pub mod sampling;
pub mod special_fn;
pub mod structure_fn;
pub mod suites;

pub use error::{Error, Result};
pub use num_complex::Complex64;
