//! Quantum Fisher information and local-drive correlation analysis for
//! finite-dimensional mixed states.
//!
//! The crate is organized in layers. [`linalg`] provides dense complex
//! matrices with Jacobi eigensolvers and SVD; [`qstate`] builds and validates
//! density matrices on tensor-product spaces; [`qfi`] computes Fisher
//! information, symmetric logarithmic derivatives, and fidelity-based speed
//! checks; [`correlations`] extracts drive-optimized correlation measures and
//! operator Schmidt structure; [`metrology`] turns those quantities into
//! phase-estimation precision bounds and simulated estimation runs; [`scan`]
//! drives the parameter sweeps the command-line tool prints.
//!
//! All numerical tolerances live in [`tol`] so that every module agrees on
//! what counts as Hermitian, positive, or converged.

pub mod correlations;
pub mod error;
pub mod linalg;
pub mod metrology;
pub mod qfi;
pub mod qstate;
pub mod scan;
pub mod tol;

pub use error::{Error, Result};
