//! Domain types: dimensions, states, measurements, instruments, and the
//! full three-party strategy bundle.
//!
//! Every constructor validates its numerical invariants once, so the
//! probability functionals can assume well-formed inputs and stay pure
//! arithmetic.

use num_complex::Complex64;

use crate::qmath::{herm_eig_named, ComplexMatrix};
use crate::tolerances;
use crate::{Error, Result};

/// Alphabet size of the game: each of the two digits, the quantum system,
/// and every party's outcome set range over `{0, …, d−1}` with
/// `2 ≤ d ≤ 6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GameDimension(usize);

impl GameDimension {
    /// Validates `2 ≤ d ≤ 6`.
    pub fn new(d: usize) -> Result<Self> {
        if (2..=6).contains(&d) {
            Ok(Self(d))
        } else {
            Err(Error::BadDimension { dim: d, reason: "supported game dimensions are 2..=6" })
        }
    }

    /// The raw dimension.
    pub fn get(self) -> usize {
        self.0
    }

    /// Number of sender inputs, `d²`.
    pub fn num_inputs(self) -> usize {
        self.0 * self.0
    }
}

/// Validated quantum state: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace, and positivity (eigenvalues
    /// above the [`tolerances::PSD_FLOOR`] rounding floor).
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let dev = matrix.hermiticity_deviation();
        if dev > tolerances::DENSITY_VALID {
            return Err(Error::NotHermitian { context: "density matrix", deviation: dev });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tolerances::DENSITY_VALID || tr.im.abs() > tolerances::DENSITY_VALID {
            return Err(Error::OutOfRange {
                what: "density matrix trace",
                value: tr.re,
                domain: "1 ± 1e-10",
            });
        }
        let (vals, _) = herm_eig_named(&matrix, "density matrix")?;
        let min = vals.first().copied().unwrap_or(0.0);
        if min < tolerances::PSD_FLOOR {
            return Err(Error::NotPsd { context: "density matrix", min_eigenvalue: min });
        }
        Ok(Self { matrix })
    }

    /// Maximally mixed state `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self { matrix: &ComplexMatrix::identity(dim) * (1.0 / dim as f64) }
    }

    /// Pure state `|v⟩⟨v|` from a unit vector.
    pub fn pure(v: &[Complex64]) -> Result<Self> {
        Self::new(ComplexMatrix::outer(v))
    }

    /// The underlying matrix.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// The sender's codebook: one state per input pair `x = (x0, x1)`,
/// stored at index `x0 * d + x1`.
#[derive(Debug, Clone)]
pub struct Preparation {
    dim: GameDimension,
    states: Vec<DensityMatrix>,
}

impl Preparation {
    /// Validates the count (`d²`) and that every state matches the game
    /// dimension.
    pub fn new(dim: GameDimension, states: Vec<DensityMatrix>) -> Result<Self> {
        if states.len() != dim.num_inputs() {
            return Err(Error::DimensionMismatch {
                context: "preparation state count",
                left: states.len(),
                right: dim.num_inputs(),
            });
        }
        for s in &states {
            if s.dim() != dim.get() {
                return Err(Error::DimensionMismatch {
                    context: "preparation state dimension",
                    left: s.dim(),
                    right: dim.get(),
                });
            }
        }
        Ok(Self { dim, states })
    }

    /// Game dimension.
    pub fn dim(&self) -> GameDimension {
        self.dim
    }

    /// Flat index of input pair `(x0, x1)`.
    pub fn index(&self, x0: usize, x1: usize) -> usize {
        x0 * self.dim.get() + x1
    }

    /// State prepared for input pair `(x0, x1)`.
    pub fn state(&self, x0: usize, x1: usize) -> &DensityMatrix {
        &self.states[self.index(x0, x1)]
    }

    /// All states in input order.
    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }
}

/// Labeled positive operator-valued measure: one PSD effect per outcome,
/// summing to the identity.
#[derive(Debug, Clone)]
pub struct Povm {
    label: String,
    effects: Vec<ComplexMatrix>,
}

impl Povm {
    /// Validates each effect (Hermitian, PSD above the rounding floor)
    /// and completeness within [`tolerances::POVM_COMPLETENESS`].
    pub fn new(label: impl Into<String>, effects: Vec<ComplexMatrix>) -> Result<Self> {
        let label = label.into();
        if effects.is_empty() {
            return Err(Error::DimensionMismatch { context: "POVM outcome count", left: 0, right: 1 });
        }
        let dim = effects[0].dim();
        let mut sum = ComplexMatrix::zeros(dim);
        for e in &effects {
            if e.dim() != dim {
                return Err(Error::DimensionMismatch {
                    context: "POVM effect dimension",
                    left: e.dim(),
                    right: dim,
                });
            }
            let dev = e.hermiticity_deviation();
            if dev > tolerances::DENSITY_VALID {
                return Err(Error::NotHermitian { context: "POVM effect", deviation: dev });
            }
            let (vals, _) = herm_eig_named(e, "POVM effect")?;
            if vals.first().copied().unwrap_or(0.0) < tolerances::PSD_FLOOR {
                return Err(Error::NotPsd {
                    context: "POVM effect",
                    min_eigenvalue: vals[0],
                });
            }
            sum.add_scaled(e, 1.0);
        }
        let dev = (&sum - &ComplexMatrix::identity(dim)).max_abs();
        if dev > tolerances::POVM_COMPLETENESS {
            return Err(Error::OutOfRange {
                what: "POVM completeness deviation",
                value: dev,
                domain: "≤ 1e-10",
            });
        }
        Ok(Self { label, effects })
    }

    /// Setting label (used in reports and error messages).
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Effect for outcome `b`.
    pub fn effect(&self, b: usize) -> &ComplexMatrix {
        &self.effects[b]
    }

    /// All effects in outcome order.
    pub fn effects(&self) -> &[ComplexMatrix] {
        &self.effects
    }

    /// Number of outcomes.
    pub fn outcomes(&self) -> usize {
        self.effects.len()
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.effects[0].dim()
    }
}

/// The first receiver's instrument: Kraus operators `K_{b|y}` indexed by
/// setting `y ∈ {0, 1}` and outcome `b ∈ {0, …, d−1}`.  The induced POVM
/// is `M_{b|y} = K†_{b|y} K_{b|y}`; there is deliberately no separate
/// POVM field, so measurement statistics and state disturbance can never
/// disagree.
#[derive(Debug, Clone)]
pub struct KrausInstrument {
    kraus: Vec<Vec<ComplexMatrix>>,
}

impl KrausInstrument {
    /// Validates two settings, `d` outcomes per setting, and the
    /// completeness relation `Σ_b K†K = I` within
    /// [`tolerances::KRAUS_COMPLETENESS`] for each setting.
    pub fn new(kraus: Vec<Vec<ComplexMatrix>>) -> Result<Self> {
        if kraus.len() != 2 {
            return Err(Error::DimensionMismatch {
                context: "instrument setting count",
                left: kraus.len(),
                right: 2,
            });
        }
        let dim = kraus[0].first().map(|k| k.dim()).unwrap_or(0);
        for ops in &kraus {
            if ops.len() != dim {
                return Err(Error::DimensionMismatch {
                    context: "instrument outcome count",
                    left: ops.len(),
                    right: dim,
                });
            }
            let mut sum = ComplexMatrix::zeros(dim);
            for k in ops {
                if k.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        context: "Kraus operator dimension",
                        left: k.dim(),
                        right: dim,
                    });
                }
                sum.add_scaled(&k.adjoint().matmul(k), 1.0);
            }
            let dev = (&sum - &ComplexMatrix::identity(dim)).max_abs();
            if dev > tolerances::KRAUS_COMPLETENESS {
                return Err(Error::OutOfRange {
                    what: "Kraus completeness deviation",
                    value: dev,
                    domain: "≤ 1e-9",
                });
            }
        }
        Ok(Self { kraus })
    }

    /// Hilbert-space dimension (equals the outcome count per setting).
    pub fn dim(&self) -> usize {
        self.kraus[0].len()
    }

    /// Kraus operator for setting `y`, outcome `b`.
    pub fn operator(&self, y: usize, b: usize) -> &ComplexMatrix {
        &self.kraus[y][b]
    }

    /// All Kraus operators of one setting, in outcome order.
    pub fn operators(&self, y: usize) -> &[ComplexMatrix] {
        &self.kraus[y]
    }

    /// Induced POVM effect `K†_{b|y} K_{b|y}`.
    pub fn effect(&self, y: usize, b: usize) -> ComplexMatrix {
        let k = self.operator(y, b);
        k.adjoint().matmul(k)
    }
}

/// A complete three-party strategy: the sender's codebook, the first
/// receiver's instrument, and the second receiver's POVM per setting
/// `z ∈ {0, 1}` (she is asked for digit `z = 1 − y`).
#[derive(Debug, Clone)]
pub struct StrategyBundle {
    dim: GameDimension,
    preparation: Preparation,
    instrument: KrausInstrument,
    chhanda: [Povm; 2],
}

impl StrategyBundle {
    /// Validates dimensional consistency across all components and that
    /// both relay POVMs have exactly `d` outcomes.
    pub fn new(
        preparation: Preparation,
        instrument: KrausInstrument,
        chhanda: [Povm; 2],
    ) -> Result<Self> {
        let dim = preparation.dim();
        if instrument.dim() != dim.get() {
            return Err(Error::DimensionMismatch {
                context: "instrument vs preparation",
                left: instrument.dim(),
                right: dim.get(),
            });
        }
        for povm in &chhanda {
            if povm.dim() != dim.get() {
                return Err(Error::DimensionMismatch {
                    context: "relay POVM dimension",
                    left: povm.dim(),
                    right: dim.get(),
                });
            }
            if povm.outcomes() != dim.get() {
                return Err(Error::DimensionMismatch {
                    context: "relay POVM outcome count",
                    left: povm.outcomes(),
                    right: dim.get(),
                });
            }
        }
        Ok(Self { dim, preparation, instrument, chhanda })
    }

    /// Game dimension.
    pub fn dim(&self) -> GameDimension {
        self.dim
    }

    /// The sender's codebook.
    pub fn preparation(&self) -> &Preparation {
        &self.preparation
    }

    /// The first receiver's instrument.
    pub fn instrument(&self) -> &KrausInstrument {
        &self.instrument
    }

    /// The second receiver's POVM for setting `z`.
    pub fn chhanda(&self, z: usize) -> &Povm {
        &self.chhanda[z]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::{random_density, random_povm};

    #[test]
    fn dimension_bounds_are_enforced() {
        assert!(GameDimension::new(1).is_err());
        assert!(GameDimension::new(7).is_err());
        for d in 2..=6 {
            assert_eq!(GameDimension::new(d).unwrap().get(), d);
        }
        assert_eq!(GameDimension::new(3).unwrap().num_inputs(), 9);
    }

    #[test]
    fn density_matrix_rejects_bad_inputs() {
        // Wrong trace.
        let mixed = &ComplexMatrix::identity(2) * 0.5;
        assert!(DensityMatrix::new(mixed).is_ok());
        let off = &ComplexMatrix::identity(2) * 0.45;
        assert!(matches!(DensityMatrix::new(off), Err(Error::OutOfRange { .. })));
        // Indefinite.
        let mut m = ComplexMatrix::zeros(2);
        m.set(0, 0, Complex64::new(1.5, 0.0));
        m.set(1, 1, Complex64::new(-0.5, 0.0));
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotPsd { .. })));
        // Non-Hermitian.
        let mut m = ComplexMatrix::identity(2);
        m.set(0, 1, Complex64::new(0.3, 0.0));
        m.set(0, 0, Complex64::new(0.5, 0.0));
        m.set(1, 1, Complex64::new(0.5, 0.0));
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn povm_requires_completeness() {
        let half = &ComplexMatrix::identity(2) * 0.5;
        assert!(Povm::new("ok", vec![half.clone(), half.clone()]).is_ok());
        assert!(matches!(
            Povm::new("short", vec![half.clone()]),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn random_povm_passes_validation() {
        for d in 2..=6 {
            let effects = random_povm(d, d, 17);
            assert!(Povm::new("sampled", effects).is_ok(), "d={d}");
        }
    }

    #[test]
    fn instrument_requires_completeness_per_setting() {
        let dim = 2;
        let id = ComplexMatrix::identity(dim);
        let zero = ComplexMatrix::zeros(dim);
        // "Always outcome 0" instrument: K_{0|y} = I, K_{1|y} = 0.
        let inst = KrausInstrument::new(vec![
            vec![id.clone(), zero.clone()],
            vec![id.clone(), zero.clone()],
        ])
        .unwrap();
        assert_eq!(inst.dim(), 2);
        // Broken: one setting sums to 2I.
        let bad = KrausInstrument::new(vec![vec![id.clone(), id.clone()], vec![id.clone(), zero]]);
        assert!(matches!(bad, Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn bundle_rejects_mixed_dimensions() {
        let d2 = GameDimension::new(2).unwrap();
        let states: Vec<DensityMatrix> = (0..4).map(|i| DensityMatrix::new(random_density(2, i as u64)).unwrap()).collect();
        let prep = Preparation::new(d2, states).unwrap();
        let id = ComplexMatrix::identity(2);
        let zero = ComplexMatrix::zeros(2);
        let inst = KrausInstrument::new(vec![
            vec![id.clone(), zero.clone()],
            vec![id.clone(), zero.clone()],
        ])
        .unwrap();
        // POVM in dimension 3 cannot be bundled with qubit preparation.
        let bad_povm = Povm::new("d3", random_povm(3, 3, 5)).unwrap();
        let ok_povm = Povm::new("d2", random_povm(2, 2, 6)).unwrap();
        let err = StrategyBundle::new(prep, inst, [ok_povm, bad_povm]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }
}
