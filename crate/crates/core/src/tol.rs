//! Shared numeric tolerances.
//!
//! Every threshold that decides "equal enough", "converged" or "degenerate"
//! lives here so the trade-offs stay visible in one place. Values are chosen
//! for double precision at the dimensions this crate targets (products of
//! small local dimensions, at most a few dozen).

/// Relative Hermiticity/symmetry requirement on solver inputs,
/// measured as ||M - M^H||_F / ||M||_F.
pub const HERMITICITY_REL: f64 = 1e-10;

/// Eigen/SVD sweep convergence target relative to ||M||_F, and the residual
/// bound the reconstruction postconditions are derived from.
pub const CONVERGENCE_REL: f64 = 1e-12;

/// Hard cap on Jacobi sweep counts. Cyclic sweeps on the matrix sizes used
/// here converge in well under twenty; hitting the cap means the input is
/// pathological and the caller gets an error instead of a silent spin.
pub const MAX_SWEEPS: usize = 100;

/// Absolute floor on eigenvalue-pair sums: spectral kernels skip a pair when
/// lambda_m + lambda_n falls at or below this, which is where the divided
/// expressions stop carrying information about the state.
pub const EIGEN_SUM_FLOOR: f64 = 1e-12;

/// How negative an eigenvalue may be before a matrix stops counting as
/// positive semidefinite. Slight negativity at this scale is roundoff from
/// products and partial traces, not real indefiniteness.
pub const PSD_FLOOR: f64 = 1e-10;

/// Absolute Hermiticity and unit-trace tolerance on density matrices.
pub const STATE_TOL: f64 = 1e-10;

/// File loading accepts states violating Hermiticity or trace by up to this
/// much, repairing them (symmetrize, renormalize) and flagging the repair.
/// Beyond it the file is rejected outright.
pub const LOAD_REJECT: f64 = 1e-6;

/// Below this, a Fisher information is treated as exactly zero: the drive
/// commutes with the state and no phase can be estimated.
pub const ZERO_INFORMATION: f64 = 1e-12;

/// Operator Schmidt coefficients at or below this are treated as rank noise.
pub const SCHMIDT_RANK_FLOOR: f64 = 1e-10;

/// Default classicality threshold: commutator norms of the A-side Schmidt
/// factors are compared against this times ||rho||_F. Calibrated so that
/// exactly classical constructions pass while a Werner state keeps failing
/// all the way down to p = 0.01.
pub const CLASSICALITY_REL: f64 = 1e-8;

/// Two Fisher-information values (on the F, not F^2, scale) closer than this
/// are treated as equal when forming bound denominators, so symmetric states
/// produce an unbounded interval instead of a huge junk number.
pub const SYMMETRY_GAP_FLOOR: f64 = 1e-9;
