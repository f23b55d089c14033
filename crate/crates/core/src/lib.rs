//! Numerical toolkit for a sequential prepare-measure-relay game.
//!
//! One sender encodes a pair of digits into a quantum state of dimension
//! `d`; a first receiver measures with an instrument and forwards the
//! post-measurement average; a second receiver, told only which digit the
//! first one targeted, guesses the other digit.  The crate provides:
//!
//! * dense complex linear algebra sized for `d <= 6` ([`qmath`]),
//! * the game's probability functionals and classical baselines ([`game`]),
//! * closed-form qubit strategies and the optimal trade-off boundary
//!   ([`qubit`]),
//! * device-independent sharpness certification from observed success
//!   rates ([`certify`]),
//! * a see-saw heuristic that optimizes all three parties in higher
//!   dimensions ([`seesaw`]),
//! * deterministic CSV/JSON report formatting ([`report`]).
//!
//! All randomized routines take explicit seeds and produce identical
//! results at any thread count.

pub mod certify;
pub mod game;
pub mod qmath;
pub mod qubit;
pub mod report;
pub mod seesaw;
pub mod tolerances;

pub use certify::{bounds, eta_lower, eta_upper, noisy_closed_form, noisy_pipeline, table1_report, target_sweep, CertifyRow, NoiseParams, ObservedPair, SharpnessBounds};
pub use game::{classical_bruteforce, classical_bruteforce_relay_inspection, classical_optimal_success, p_ab, p_ac, p_joint, post_avg_state, BruteforceOutcome, DensityMatrix, GameDimension, KrausInstrument, Povm, Preparation, StrategyBundle};
pub use qmath::{herm_eig, positive_part, psd_sqrt, random_density, random_povm, random_unitary, ComplexMatrix};
pub use qubit::{beta_max, bloch_vector, boundary_audit, boundary_pac, canonical_preparations, density_from_bloch, lemma1_check, lemma1_value, self_test_targets, sharpness_from_beta, tradeoff_analytic, tradeoff_curve, unsharp_strategy, SelfTestTarget, TradeoffPoint};
pub use seesaw::{dimension_sweep, eta_critical, lueders_kraus, pab_unsharp_reference, povm_linear_opt, seesaw_run, state_opt, DimSweepMode, DimSweepRow, IterationTrace, SeesawConfig, SeesawResult, SolverOptions};

/// Crate-wide error type.
///
/// Numerical validation failures carry enough context to identify the
/// offending object; callers converting to process exit codes should map
/// [`Error::OutOfRange`] and friends to a "bad input" status and
/// [`Error::NoConvergence`] to a "no convergence" status.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A matrix expected to be Hermitian deviated beyond tolerance.
    #[error("matrix `{context}` is not Hermitian (max asymmetry {deviation:.3e})")]
    NotHermitian { context: &'static str, deviation: f64 },

    /// A matrix expected to be positive semidefinite has a significantly
    /// negative eigenvalue.
    #[error("matrix `{context}` is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { context: &'static str, min_eigenvalue: f64 },

    /// An iterative routine exhausted its iteration budget.
    #[error("{what} did not converge within {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { what: &'static str, iterations: usize, residual: f64 },

    /// A dimension outside the supported range was requested.
    #[error("dimension {dim} unsupported: {reason}")]
    BadDimension { dim: usize, reason: &'static str },

    /// Two objects that must share a dimension do not.
    #[error("dimension mismatch in {context}: {left} vs {right}")]
    DimensionMismatch { context: &'static str, left: usize, right: usize },

    /// A sharpness parameter left the closed interval `[0, 1]`.
    #[error("sharpness {eta} outside [0, 1]")]
    BadSharpness { eta: f64 },

    /// A visibility parameter left the closed interval `[0, 1]`.
    #[error("visibility {value} outside [0, 1] for {which}")]
    BadVisibility { which: &'static str, value: f64 },

    /// A scalar argument left its documented domain.
    #[error("{what} = {value} outside domain {domain}")]
    OutOfRange { what: &'static str, value: f64, domain: &'static str },

    /// A recomputed quantity disagreed with its frozen reference value.
    #[error("regression mismatch in {context}: got {got}, expected {expected} (tolerance {tolerance:.1e})")]
    RegressionMismatch { context: String, got: f64, expected: f64, tolerance: f64 },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
