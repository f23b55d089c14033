//! Variational optimization of the sequential game in arbitrary
//! dimension: exact linear-subproblem solvers, the alternating
//! (see-saw) driver, and the dimension-sweep table built on top.
//!
//! The relay's instrument is always the square-root (Lüders) form of an
//! unsharp projective measurement, `K_{b|y} = √(η P_{b|y} + (1-η) I/d)`,
//! which for a projector argument reduces to the closed form
//! `α P + β I` below — no matrix square roots are needed inside the
//! optimization loop.

mod run;
mod subproblems;

pub use run::{
    dimension_sweep, seesaw_run, DimSweepMode, DimSweepRow, IterationTrace, SeesawConfig,
    SeesawResult, SolverOptions, DIMSWEEP_CSV_HEADER,
};
pub use subproblems::{povm_linear_opt, state_opt};

use crate::qmath::{herm_eig_named, ComplexMatrix};
use crate::tolerances;
use crate::{Error, GameDimension, Result};

/// Square-root Kraus operator of the unsharp effect `η M + (1-η) I/d`
/// for a projector `M`, in closed form:
///
/// `K = α M + β I` with `β = √((1-η)/d)` and
/// `α = √((1+(d-1)η)/d) − β`.
///
/// Squaring (using `M² = M`) gives `α² M + 2αβ M + β² I
/// = (η) M + (1-η)/d · I`, i.e. exactly the unsharp effect.  Summing
/// the induced effects over the `d` outcomes of a projective
/// measurement gives `(α² + 2αβ + dβ²) I = I`: completeness depends
/// only on the outcome count, not on the individual projector ranks
/// (rank zero included).
fn lueders_kraus_unchecked(projector: &ComplexMatrix, eta: f64) -> ComplexMatrix {
    let d = projector.dim() as f64;
    let beta = ((1.0 - eta) / d).sqrt();
    let alpha = ((1.0 + (d - 1.0) * eta) / d).sqrt() - beta;
    let mut k = projector * alpha;
    k.add_scaled(&ComplexMatrix::identity(projector.dim()), beta);
    k
}

/// Square-root (Lüders) Kraus operator for an unsharp projective effect.
///
/// Validates that `projector` really is an orthogonal projector (its
/// eigenvalues are 0/1) and that `eta ∈ [0, 1]`, then applies the
/// closed form — see the module docs.  At `η = 1` this returns the
/// projector itself; at `η = 0` the measurement reads out nothing and
/// `K = I/√d`.
///
/// # Errors
///
/// [`Error::BadSharpness`] for `eta` outside `[0, 1]`;
/// [`Error::NotHermitian`] / [`Error::NotPsd`] for a non-projector
/// argument (idempotence failure reports as [`Error::OutOfRange`]).
pub fn lueders_kraus(projector: &ComplexMatrix, eta: f64) -> Result<ComplexMatrix> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::BadSharpness { eta });
    }
    let (vals, _) = herm_eig_named(projector, "Lüders Kraus argument")?;
    for &lam in &vals {
        if lam < tolerances::PSD_FLOOR {
            return Err(Error::NotPsd { context: "Lüders Kraus argument", min_eigenvalue: lam });
        }
        let idempotence_gap = (lam * (lam - 1.0)).abs();
        if idempotence_gap > 1e-9 {
            return Err(Error::OutOfRange {
                what: "Lüders Kraus argument eigenvalue",
                value: lam,
                domain: "{0, 1}",
            });
        }
    }
    Ok(lueders_kraus_unchecked(projector, eta))
}

/// Critical sharpness `η_c(d) = (d-1)/(d+√d-2)`: the smallest
/// instrument sharpness at which the first receiver's unsharp strategy
/// still matches the best classical first-receiver marginal `½(1+1/d)`.
pub fn eta_critical(dim: GameDimension) -> f64 {
    let d = dim.get() as f64;
    (d - 1.0) / (d + d.sqrt() - 2.0)
}

/// First-receiver marginal of the unsharp optimal strategy,
/// `η · ½(1+1/√d) + (1-η)/d`: the sharp QRAC value shrunk by the
/// sharpness, plus the uniform-noise floor.  At `η = η_c(d)` this
/// equals the classical marginal `½(1+1/d)`.
pub fn pab_unsharp_reference(dim: GameDimension, eta: f64) -> f64 {
    let d = dim.get() as f64;
    eta * 0.5 * (1.0 + 1.0 / d.sqrt()) + (1.0 - eta) / d
}
