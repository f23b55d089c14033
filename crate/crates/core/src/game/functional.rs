//! The game's probability functionals.
//!
//! Conventions: the sender's input is the pair `x = (x0, x1)` uniform on
//! `{0,…,d−1}²`; the first receiver's setting `y ∈ {0, 1}` (uniform)
//! selects which digit he guesses (`x_y`); the second receiver is asked
//! for the other digit, so her setting is `z = 1 − y`.

use crate::qmath::ComplexMatrix;
use crate::{DensityMatrix, Error, Result, StrategyBundle};

/// Digit `x_y` of the pair `(x0, x1)`.
#[inline]
fn digit(x0: usize, x1: usize, y: usize) -> usize {
    if y == 0 {
        x0
    } else {
        x1
    }
}

/// First receiver's average success probability:
/// `(1/(2d²)) Σ_{x,y} Tr(ρ_x M_{x_y|y})` with `M_{b|y} = K†_{b|y} K_{b|y}`.
pub fn p_ab(s: &StrategyBundle) -> f64 {
    let d = s.dim().get();
    let mut total = 0.0;
    for y in 0..2 {
        // The effect depends only on (y, b); hoist the d effects out of
        // the d² input loop.
        let effects: Vec<ComplexMatrix> = (0..d).map(|b| s.instrument().effect(y, b)).collect();
        for x0 in 0..d {
            for x1 in 0..d {
                let rho = s.preparation().state(x0, x1).matrix();
                total += rho.trace_product(&effects[digit(x0, x1, y)]).re;
            }
        }
    }
    total / (2.0 * (d * d) as f64)
}

/// Outcome average `Σ_b K_b ρ K†_b` over one setting's Kraus operators
/// (internal hot path shared with the optimizer).
pub(crate) fn relay_average(rho: &ComplexMatrix, kraus: &[ComplexMatrix]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(rho.dim());
    for k in kraus {
        out.add_scaled(&k.conjugate_with(rho), 1.0);
    }
    // Conjugation preserves Hermiticity analytically; strip rounding
    // asymmetry so downstream validation sees a clean state.
    out.hermitian_part()
}

/// Outcome-averaged post-measurement state
/// `ρ̃_x^y = Σ_b K_{b|y} ρ_x K†_{b|y}` as a raw matrix (internal hot
/// path; the public wrapper validates).
pub(crate) fn post_avg_matrix(s: &StrategyBundle, x0: usize, x1: usize, y: usize) -> ComplexMatrix {
    relay_average(s.preparation().state(x0, x1).matrix(), s.instrument().operators(y))
}

/// Outcome-averaged post-measurement state forwarded to the second
/// receiver, validated as a density matrix.
///
/// # Errors
///
/// [`Error::OutOfRange`] if the input indices exceed `d − 1`, plus
/// validation errors if the instrument is so ill-conditioned that the
/// output fails the state checks (impossible for bundles built by this
/// crate's constructors).
pub fn post_avg_state(s: &StrategyBundle, x0: usize, x1: usize, y: usize) -> Result<DensityMatrix> {
    let d = s.dim().get();
    for (what, v, cap) in [("x0", x0, d), ("x1", x1, d), ("y", y, 2)] {
        if v >= cap {
            return Err(Error::OutOfRange {
                what,
                value: v as f64,
                domain: "index below the game alphabet size",
            });
        }
    }
    DensityMatrix::new(post_avg_matrix(s, x0, x1, y))
}

/// Second receiver's average success probability:
/// `(1/(2d²)) Σ_{x,y} Tr(ρ̃_x^y N_{x_z|z})` with `z = 1 − y`.
pub fn p_ac(s: &StrategyBundle) -> f64 {
    let d = s.dim().get();
    let mut total = 0.0;
    for y in 0..2 {
        let z = 1 - y;
        let povm = s.chhanda(z);
        for x0 in 0..d {
            for x1 in 0..d {
                let relayed = post_avg_matrix(s, x0, x1, y);
                total += relayed.trace_product(povm.effect(digit(x0, x1, z))).re;
            }
        }
    }
    total / (2.0 * (d * d) as f64)
}

/// Joint figure of merit `p_ab · p_ac` (the product form, not a
/// correlated success probability: the two receivers are scored on
/// independent uniform settings).
pub fn p_joint(s: &StrategyBundle) -> f64 {
    p_ab(s) * p_ac(s)
}
