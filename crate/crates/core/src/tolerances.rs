//! Centralized numerical tolerances.
//!
//! Every magic epsilon in the crate lives here with a rationale, so that
//! tightening or loosening a tolerance is a one-line change and the test
//! suite documents the consequences.

/// Hermiticity check: max absolute entry of `A - A†` relative to scale.
///
/// Inputs are built from products of unit-scale objects, so absolute and
/// relative deviations coincide to within a small factor.
pub const HERMITICITY: f64 = 1e-9;

/// Eigenvalue floor below which a "positive semidefinite" matrix is
/// rejected.  Rounding in `d <= 6` Jacobi sweeps perturbs eigenvalues by
/// `O(1e-14)`; anything below `-1e-10` indicates a genuinely indefinite
/// input rather than noise.
pub const PSD_FLOOR: f64 = -1e-10;

/// Off-diagonal Frobenius norm (relative to input scale) at which the
/// cyclic Jacobi eigensolver declares convergence.
pub const JACOBI_OFFDIAG: f64 = 1e-12;

/// Sweep budget for the Jacobi eigensolver.  Cyclic Jacobi on `d <= 6`
/// Hermitian matrices converges quadratically and needs < 15 sweeps in
/// practice; 100 leaves two orders of magnitude of headroom.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Validation tolerance for density matrices: Hermiticity deviation and
/// trace-one deviation must both stay below this.
pub const DENSITY_VALID: f64 = 1e-10;

/// POVM validation: effects must sum to the identity within this
/// per-entry tolerance.
pub const POVM_COMPLETENESS: f64 = 1e-10;

/// Instrument validation: `sum_b K†K` must equal the identity within this
/// per-entry tolerance.  Looser than [`POVM_COMPLETENESS`] because the
/// Kraus operators are themselves products of matrix square roots.
pub const KRAUS_COMPLETENESS: f64 = 1e-9;

/// Trace-one check for density matrices.
pub const TRACE_ONE: f64 = 1e-9;

/// Domain slack for boundary evaluation: arguments this far outside the
/// closed domain are clamped rather than rejected, absorbing rounding in
/// upstream probability computations.
pub const DOMAIN_SLACK: f64 = 1e-9;

/// Convergence threshold on successive objective changes in the see-saw
/// outer loop (default; callers may override).
pub const SEESAW_TOL: f64 = 1e-7;

/// Outer-iteration budget for the see-saw (default; callers may override).
pub const SEESAW_MAX_ITERS: usize = 500;

/// Inner-iteration budget for the fixed-point POVM subproblem solver.
pub const POVM_OPT_MAX_ITERS: usize = 5_000;

/// Stationarity residual (relative to operator scale) at which the POVM
/// subproblem solver accepts its iterate.
pub const POVM_OPT_RESIDUAL: f64 = 1e-9;

/// Tolerance used by audits and invariant tests when asserting that a
/// sampled quantum strategy does not beat a proven boundary.
pub const AUDIT_VIOLATION: f64 = 1e-9;

/// Tolerance for reproducing frozen report fixtures.
pub const FIXTURE_ABS: f64 = 5e-4;
