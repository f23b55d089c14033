//! Game domain model: types, probability functionals, classical baselines.

mod classical;
mod functional;
mod types;

pub use classical::{classical_bruteforce, classical_bruteforce_relay_inspection, classical_optimal_success, BruteforceOutcome};
pub use functional::{p_ab, p_ac, p_joint, post_avg_state};
pub(crate) use functional::{post_avg_matrix, relay_average};
pub use types::{DensityMatrix, GameDimension, KrausInstrument, Povm, Preparation, StrategyBundle};
