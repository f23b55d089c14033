//! Closed-form qubit layer: canonical square preparations, the
//! unsharp-instrument strategy family, the optimal trade-off boundary,
//! and self-testing reference objects.
//!
//! Geometry conventions: the sender's four states have Bloch vectors
//! `((−1)^{x0} x̂ + (−1)^{x1} ẑ)/√2` — digit `x0` lives on the x axis,
//! digit `x1` on the z axis.  The first receiver measures along `x̂` for
//! setting `y = 0` and `ẑ` for `y = 1`; the second receiver projects
//! along the axis of the digit she is asked for.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::game::post_avg_matrix;
use crate::qmath::{bloch_in_ball_with, psd_sqrt, random_povm_with, random_unitary_with, ComplexMatrix};
use crate::tolerances;
use crate::{
    p_ab, p_ac, DensityMatrix, Error, GameDimension, KrausInstrument, Povm, Preparation, Result,
    StrategyBundle,
};

/// Largest first-receiver success on the boundary, `½(1 + 1/√2)`.
pub fn beta_max() -> f64 {
    0.5 * (1.0 + 1.0 / 2f64.sqrt())
}

/// Linear combination `a·I + v·σ` of the identity and the three Pauli
/// matrices; real coefficients make the result Hermitian by construction.
pub fn pauli_combo(a: f64, v: [f64; 3]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2);
    m.set(0, 0, Complex64::new(a + v[2], 0.0));
    m.set(0, 1, Complex64::new(v[0], -v[1]));
    m.set(1, 0, Complex64::new(v[0], v[1]));
    m.set(1, 1, Complex64::new(a - v[2], 0.0));
    m
}

/// Qubit state `(I + r·σ)/2` from a Bloch vector with `|r| ≤ 1`.
pub fn density_from_bloch(r: [f64; 3]) -> Result<DensityMatrix> {
    DensityMatrix::new(pauli_combo(0.5, [r[0] / 2.0, r[1] / 2.0, r[2] / 2.0]))
}

/// Bloch vector `(Tr(m σ_x), Tr(m σ_y), Tr(m σ_z))` of a qubit operator.
pub fn bloch_vector(m: &ComplexMatrix) -> [f64; 3] {
    let x = (m.at(0, 1) + m.at(1, 0)).re;
    let y = ((m.at(1, 0) - m.at(0, 1)) * Complex64::new(0.0, 1.0)).re;
    // Tr(m σ_y) = -i m_01 + i m_10 = i (m_10 - m_01).
    let z = (m.at(0, 0) - m.at(1, 1)).re;
    [x, y, z]
}

/// Unbiased binary effect `M_b = (I + (−1)^b η n·σ)/2` along axis `n`.
fn unsharp_effect(eta: f64, n: [f64; 3], b: usize) -> ComplexMatrix {
    let s = if b == 0 { 1.0 } else { -1.0 };
    let g = 0.5 * s * eta;
    pauli_combo(0.5, [g * n[0], g * n[1], g * n[2]])
}

/// Square-root Kraus operator `K_b = √(M_b)` of an unbiased unsharp
/// effect, computed in closed form: `K = a I + (−1)^b c n·σ` with
/// `a = (√((1+η)/2) + √((1−η)/2))/2` and
/// `c = (√((1+η)/2) − √((1−η)/2))/2`.
fn unsharp_kraus(eta: f64, n: [f64; 3], b: usize) -> ComplexMatrix {
    let p_plus = ((1.0 + eta) / 2.0).sqrt();
    let p_minus = ((1.0 - eta) / 2.0).sqrt();
    let a = (p_plus + p_minus) / 2.0;
    let c = (p_plus - p_minus) / 2.0 * if b == 0 { 1.0 } else { -1.0 };
    pauli_combo(a, [c * n[0], c * n[1], c * n[2]])
}

/// Projective qubit measurement along axis `n`: outcome `c` gets the
/// projector `(I + (−1)^c n·σ)/2`.
fn projective_povm(label: &str, n: [f64; 3]) -> Result<Povm> {
    Povm::new(label, vec![unsharp_effect(1.0, n, 0), unsharp_effect(1.0, n, 1)])
}

/// The sender's canonical square codebook: four pure states with Bloch
/// vectors `((−1)^{x0} x̂ + (−1)^{x1} ẑ)/√2`.
pub fn canonical_preparations() -> Preparation {
    let inv = 1.0 / 2f64.sqrt();
    let dim = GameDimension::new(2).expect("2 is a valid game dimension");
    let states = (0..4)
        .map(|i| {
            let (x0, x1) = (i / 2, i % 2);
            let sx = if x0 == 0 { inv } else { -inv };
            let sz = if x1 == 0 { inv } else { -inv };
            density_from_bloch([sx, 0.0, sz]).expect("unit Bloch vector")
        })
        .collect();
    Preparation::new(dim, states).expect("canonical codebook is well-formed")
}

/// The canonical one-parameter strategy family: square preparations,
/// unbiased unsharp instrument of sharpness `η` (square-root Kraus, no
/// extra unitary), and projective relay measurements along `x̂`/`ẑ`.
///
/// # Errors
///
/// [`Error::BadSharpness`] if `η ∉ [0, 1]`.
pub fn unsharp_strategy(eta: f64) -> Result<StrategyBundle> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::BadSharpness { eta });
    }
    let x_axis = [1.0, 0.0, 0.0];
    let z_axis = [0.0, 0.0, 1.0];
    let kraus = vec![
        vec![unsharp_kraus(eta, x_axis, 0), unsharp_kraus(eta, x_axis, 1)],
        vec![unsharp_kraus(eta, z_axis, 0), unsharp_kraus(eta, z_axis, 1)],
    ];
    let instrument = KrausInstrument::new(kraus)?;
    let chhanda = [projective_povm("relay x", x_axis)?, projective_povm("relay z", z_axis)?];
    StrategyBundle::new(canonical_preparations(), instrument, chhanda)
}

/// One point of the sharpness trade-off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TradeoffPoint {
    /// Instrument sharpness.
    pub eta: f64,
    /// First receiver's success `½(1 + η/√2)`.
    pub p_ab: f64,
    /// Second receiver's success `¼(2 + √(2 − 2η²))`.
    pub p_ac: f64,
}

/// Closed-form trade-off values `(p_ab, p_ac)` at sharpness `η`.
///
/// # Errors
///
/// [`Error::BadSharpness`] if `η ∉ [0, 1]`.
pub fn tradeoff_analytic(eta: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::BadSharpness { eta });
    }
    let ab = 0.5 * (1.0 + eta / 2f64.sqrt());
    let ac = 0.25 * (2.0 + (2.0 - 2.0 * eta * eta).max(0.0).sqrt());
    Ok((ab, ac))
}

/// Uniform grid of [`TradeoffPoint`]s on `η ∈ [0, 1]`, evaluated through
/// the game functionals and cross-checked against the closed form.
///
/// # Errors
///
/// [`Error::OutOfRange`] for `n_points < 2`;
/// [`Error::RegressionMismatch`] if the replayed and analytic values
/// disagree beyond `1e-10` (would indicate a defect in either layer).
pub fn tradeoff_curve(n_points: usize) -> Result<Vec<TradeoffPoint>> {
    if n_points < 2 {
        return Err(Error::OutOfRange {
            what: "n_points",
            value: n_points as f64,
            domain: "≥ 2",
        });
    }
    let mut out = Vec::with_capacity(n_points);
    for i in 0..n_points {
        let eta = i as f64 / (n_points - 1) as f64;
        let bundle = unsharp_strategy(eta)?;
        let (ab, ac) = (p_ab(&bundle), p_ac(&bundle));
        let (ab_ref, ac_ref) = tradeoff_analytic(eta)?;
        for (got, expected, which) in [(ab, ab_ref, "p_ab"), (ac, ac_ref, "p_ac")] {
            if (got - expected).abs() > 1e-10 {
                return Err(Error::RegressionMismatch {
                    context: format!("tradeoff_curve {which} at eta={eta}"),
                    got,
                    expected,
                    tolerance: 1e-10,
                });
            }
        }
        out.push(TradeoffPoint { eta, p_ab: ab, p_ac: ac });
    }
    Ok(out)
}

/// Clamps `beta` into the boundary domain `[1/2, ½(1+1/√2)]`, allowing
/// [`tolerances::DOMAIN_SLACK`] of numerical overshoot.
fn clamp_beta(beta: f64, what: &'static str) -> Result<f64> {
    let hi = beta_max();
    if beta < 0.5 - tolerances::DOMAIN_SLACK || beta > hi + tolerances::DOMAIN_SLACK {
        return Err(Error::OutOfRange {
            what,
            value: beta,
            domain: "[1/2, (2+√2)/4]",
        });
    }
    Ok(beta.clamp(0.5, hi))
}

/// Optimal second-receiver success over all strategies that give the
/// first receiver success `β` while hiding his outcome:
/// `¼(2 + √(16β − 16β² − 2))`.
///
/// # Errors
///
/// [`Error::OutOfRange`] if `β ∉ [1/2, ½(1+1/√2)]` (beyond slack).
pub fn boundary_pac(beta: f64) -> Result<f64> {
    let beta = clamp_beta(beta, "beta")?;
    let radicand = (16.0 * beta - 16.0 * beta * beta - 2.0).max(0.0);
    Ok(0.25 * (2.0 + radicand.sqrt()))
}

/// Sharpness certified by a boundary point: `η = √2(2β − 1)`.
///
/// # Errors
///
/// [`Error::OutOfRange`] if `β ∉ [1/2, ½(1+1/√2)]` (beyond slack).
pub fn sharpness_from_beta(beta: f64) -> Result<f64> {
    let beta = clamp_beta(beta, "beta")?;
    Ok((2f64.sqrt() * (2.0 * beta - 1.0)).clamp(0.0, 1.0))
}

/// Left-hand side of the boundary lemma:
/// `cosθ (cos²ζ0 − cos²ζ1) + sinθ cos(ζ0 − ζ1)`.
pub fn lemma1_value(theta: f64, zeta0: f64, zeta1: f64) -> f64 {
    theta.cos() * (zeta0.cos().powi(2) - zeta1.cos().powi(2)) + theta.sin() * (zeta0 - zeta1).cos()
}

/// Checks the boundary lemma `lemma1_value ≤ 1` (within `1e-12`) for a
/// parameter triple in `[0, π/2]³`.
///
/// # Errors
///
/// [`Error::OutOfRange`] if any angle leaves `[0, π/2]`.
pub fn lemma1_check(theta: f64, zeta0: f64, zeta1: f64) -> Result<bool> {
    let half_pi = std::f64::consts::FRAC_PI_2;
    for (what, v) in [("theta", theta), ("zeta0", zeta0), ("zeta1", zeta1)] {
        if !(0.0..=half_pi).contains(&v) {
            return Err(Error::OutOfRange { what, value: v, domain: "[0, π/2]" });
        }
    }
    Ok(lemma1_value(theta, zeta0, zeta1) <= 1.0 + 1e-12)
}

/// Ideal reference objects certified by a boundary point `(β, P^β)`:
/// the square codebook, the first receiver's sharpness-η observables
/// along `x̂`/`ẑ`, and the second receiver's projective `σ_x`/`σ_z`
/// measurements — all up to a common unitary, fixed here to the identity.
#[derive(Debug, Clone)]
pub struct SelfTestTarget {
    /// First receiver's success rate on the boundary.
    pub beta: f64,
    /// Certified sharpness `√2(2β − 1)`.
    pub eta: f64,
    /// The sender's square codebook.
    pub preparations: Preparation,
    /// First receiver's observable Bloch vectors `η x̂`, `η ẑ` (setting
    /// order `y = 0, 1`).
    pub barun_bloch: [[f64; 3]; 2],
    /// Second receiver's projective measurements (setting order
    /// `z = 0, 1`).
    pub chhanda_observables: [Povm; 2],
}

impl SelfTestTarget {
    /// Reassembles the target into a strategy bundle whose replay through
    /// the game functionals reproduces `(β, boundary_pac(β))`.
    pub fn to_strategy(&self) -> Result<StrategyBundle> {
        unsharp_strategy(self.eta)
    }
}

/// Builds the [`SelfTestTarget`] certified at boundary point `β`.
///
/// # Errors
///
/// [`Error::OutOfRange`] if `β ∉ [1/2, ½(1+1/√2)]` (beyond slack).
pub fn self_test_targets(beta: f64) -> Result<SelfTestTarget> {
    let beta = clamp_beta(beta, "beta")?;
    let eta = sharpness_from_beta(beta)?;
    let x_axis = [1.0, 0.0, 0.0];
    let z_axis = [0.0, 0.0, 1.0];
    Ok(SelfTestTarget {
        beta,
        eta,
        preparations: canonical_preparations(),
        barun_bloch: [[eta, 0.0, 0.0], [0.0, 0.0, eta]],
        chhanda_observables: [projective_povm("relay x", x_axis)?, projective_povm("relay z", z_axis)?],
    })
}

/// Draws one random qubit strategy bundle satisfying the output-hiding
/// constraint by construction: sender Bloch vectors that sum to zero
/// (so the per-setting average forwarded state is exactly `I/2`), random
/// biased binary instruments of the form `K_{b|y} = U_y √(M_{b|y})` with
/// a per-setting random unitary, and random relay POVMs.
fn constrained_sample(rng: &mut ChaCha8Rng) -> StrategyBundle {
    // Three Bloch vectors uniform in the ball; the fourth balances the
    // sum.  If it lands outside the ball, shrink all four together —
    // the sum stays zero and every vector stays physical.
    let mut blochs = [bloch_in_ball_with(rng), bloch_in_ball_with(rng), bloch_in_ball_with(rng), [0.0; 3]];
    let (free, balance) = blochs.split_at_mut(3);
    for (k, v) in balance[0].iter_mut().enumerate() {
        *v = -(free[0][k] + free[1][k] + free[2][k]);
    }
    let norm = blochs[3].iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 1.0 {
        for b in blochs.iter_mut() {
            for v in b.iter_mut() {
                *v /= norm;
            }
        }
    }
    let states: Vec<DensityMatrix> = blochs
        .iter()
        .map(|&r| density_from_bloch(r).expect("in-ball Bloch vector"))
        .collect();
    let dim = GameDimension::new(2).expect("qubit dimension");
    let prep = Preparation::new(dim, states).expect("four qubit states");

    let kraus: Vec<Vec<ComplexMatrix>> = (0..2)
        .map(|_| {
            let effects = random_povm_with(2, 2, rng);
            let u = random_unitary_with(2, rng);
            effects
                .iter()
                .map(|m| u.matmul(&psd_sqrt(m).expect("POVM effect is PSD")))
                .collect()
        })
        .collect();
    let instrument = KrausInstrument::new(kraus).expect("square-root Kraus are complete");

    let chhanda = [
        Povm::new("relay 0", random_povm_with(2, 2, rng)).expect("sampled POVM"),
        Povm::new("relay 1", random_povm_with(2, 2, rng)).expect("sampled POVM"),
    ];
    StrategyBundle::new(prep, instrument, chhanda).expect("dimensions agree")
}

/// Falsification search against the boundary: samples `n_random`
/// constraint-satisfying strategies and returns the largest observed
/// `p_ac − boundary_pac(β_eff)`, where `β_eff = max(p_ab, 1 − p_ab)`
/// (outcome relabeling maps `p_ab → 1 − p_ab` without touching `p_ac`,
/// so the reflected point is the one the boundary constrains).
///
/// A correct implementation never returns more than rounding error above
/// zero; a positive return beyond `1e-9` falsifies either the boundary
/// evaluation or a functional.
///
/// Deterministic for a fixed seed at any thread count: sample `i` uses
/// ChaCha stream `i`, and the maximum is order-independent.
pub fn boundary_audit(n_random: usize, seed: u64) -> f64 {
    (0..n_random)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let bundle = constrained_sample(&mut rng);

            // The sampler owes us the output-hiding constraint; verify
            // the averaged relayed state per setting before trusting the
            // boundary comparison.
            let d = bundle.dim().get();
            for y in 0..2 {
                let mut avg = ComplexMatrix::zeros(d);
                for x0 in 0..d {
                    for x1 in 0..d {
                        avg.add_scaled(&post_avg_matrix(&bundle, x0, x1, y), 1.0 / (d * d) as f64);
                    }
                }
                let dev = (&avg - &(&ComplexMatrix::identity(d) * (1.0 / d as f64))).max_abs();
                assert!(dev < 1e-6, "constrained sampler violated output hiding: {dev:.3e}");
            }

            let ab = p_ab(&bundle);
            let ac = p_ac(&bundle);
            let beta_eff = ab.max(1.0 - ab).clamp(0.5, beta_max());
            ac - boundary_pac(beta_eff).expect("beta_eff clamped into domain")
        })
        .reduce(|| f64::NEG_INFINITY, f64::max)
}
