//! Exact solvers for the see-saw's linear subproblems.
//!
//! Both subproblems maximize a linear functional over a semidefinite
//! feasible set and admit dependency-free solutions:
//!
//! * POVM subproblem `max Σ_b Tr(A_b M_b)` over POVMs: closed form for
//!   two outcomes (positive-eigenspace projector of `A_0 − A_1`), and a
//!   fixed-point iteration of the extremal-POVM optimality conditions
//!   for more, certified by a KKT residual and backstopped by a
//!   random-feasible-point dominance check.
//! * State subproblem `max Tr(ρ B)` over density matrices: the top
//!   eigenprojector, exactly.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::qmath::{herm_eig_named, inv_sqrt_psd, random_povm_with, ComplexMatrix};
use crate::tolerances;
use crate::{DensityMatrix, Error, GameDimension, Povm, Preparation, Result};

/// Fixed seed for the dominance backstop's random feasible POVMs; a
/// constant keeps [`povm_linear_opt`] fully deterministic.
const DOMINANCE_SEED: u64 = 0x0bad_cafe;

/// Number of random feasible POVMs the dominance backstop compares
/// against when the KKT residual fails to certify optimality.
const DOMINANCE_TRIALS: usize = 10_000;

/// `Σ_b Tr(A_b M_b)` for paired operator/effect lists.
pub(crate) fn linear_objective(ops: &[ComplexMatrix], effects: &[ComplexMatrix]) -> f64 {
    ops.iter().zip(effects).map(|(a, m)| a.trace_product(m).re).sum()
}

/// Gershgorin lower bound on the smallest eigenvalue — cheap and safe
/// for shifting indefinite objectives into the PSD cone.
fn gershgorin_min(m: &ComplexMatrix) -> f64 {
    let d = m.dim();
    (0..d)
        .map(|i| {
            let radius: f64 = (0..d).filter(|&j| j != i).map(|j| m.at(i, j).norm()).sum();
            m.at(i, i).re - radius
        })
        .fold(f64::INFINITY, f64::min)
}

fn validate_operators(ops: &[ComplexMatrix]) -> Result<usize> {
    let first = ops.first().ok_or(Error::DimensionMismatch {
        context: "POVM subproblem operator count",
        left: 0,
        right: 1,
    })?;
    let d = first.dim();
    for a in ops {
        if a.dim() != d {
            return Err(Error::DimensionMismatch {
                context: "POVM subproblem operator dimension",
                left: a.dim(),
                right: d,
            });
        }
        let dev = a.hermiticity_deviation();
        if dev > tolerances::HERMITICITY * a.max_abs().max(1.0) {
            return Err(Error::NotHermitian { context: "POVM subproblem operator", deviation: dev });
        }
    }
    Ok(d)
}

/// Two-outcome closed form: `M_0` projects on the strictly positive
/// eigenspace of `A_0 − A_1`, `M_1 = I − M_0`.
fn binary_closed_form(ops: &[ComplexMatrix]) -> Result<(Vec<ComplexMatrix>, f64)> {
    let d = ops[0].dim();
    let diff = (&ops[0] - &ops[1]).hermitian_part();
    let (vals, vecs) = herm_eig_named(&diff, "binary POVM subproblem")?;
    let mut m0 = ComplexMatrix::zeros(d);
    for (k, &lam) in vals.iter().enumerate() {
        if lam > 0.0 {
            let col = vecs.column(k);
            m0.add_scaled(&ComplexMatrix::outer(&col), 1.0);
        }
    }
    let m1 = (&ComplexMatrix::identity(d) - &m0).hermitian_part();
    let effects = vec![m0.hermitian_part(), m1];
    let objective = linear_objective(ops, &effects);
    Ok((effects, objective))
}

/// Symmetrized dual certificate `Y = ½ Σ_b (M_b A_b + A_b M_b)`.
fn dual_certificate(ops: &[ComplexMatrix], effects: &[ComplexMatrix]) -> ComplexMatrix {
    let d = ops[0].dim();
    let mut y = ComplexMatrix::zeros(d);
    for (a, m) in ops.iter().zip(effects) {
        y.add_scaled(&m.matmul(a), 0.5);
        y.add_scaled(&a.matmul(m), 0.5);
    }
    y.hermitian_part()
}

/// Complementary-slackness residual `max_b ‖(Y − A_b) M_b‖_F`.
fn kkt_complementarity(ops: &[ComplexMatrix], effects: &[ComplexMatrix]) -> f64 {
    let y = dual_certificate(ops, effects);
    ops.iter()
        .zip(effects)
        .map(|(a, m)| (&y - a).matmul(m).fro_norm())
        .fold(0.0, f64::max)
}

/// Dual-feasibility gap `max_b max(0, −λ_min(Y − A_b))`.
fn dual_feasibility_gap(ops: &[ComplexMatrix], effects: &[ComplexMatrix]) -> Result<f64> {
    let y = dual_certificate(ops, effects);
    let mut gap = 0.0f64;
    for a in ops {
        let (vals, _) = herm_eig_named(&(&y - a), "dual certificate gap")?;
        gap = gap.max(-vals.first().copied().unwrap_or(0.0));
    }
    Ok(gap.max(0.0))
}

/// Projective candidate from the joint-argmax partition: diagonalize a
/// generically weighted combination of the operators and give each
/// eigenvector to the operator with the largest quadratic form (ties to
/// the lowest outcome index).
///
/// For a commuting operator family this PVM is the exact optimum, and at
/// the sharp limit of the game the relay's operators are exactly such a
/// family (all diagonal in the instrument's eigenbasis) — instances on
/// which the damped fixed point crawls.  The caller accepts the candidate
/// only when the full KKT certificate passes, so the construction needs
/// no commutation test of its own.
fn argmax_partition_candidate(ops: &[ComplexMatrix]) -> Result<(Vec<ComplexMatrix>, f64)> {
    let d = ops[0].dim();
    let mut combo = ComplexMatrix::zeros(d);
    for (b, a) in ops.iter().enumerate() {
        combo.add_scaled(a, 1.0 + b as f64 * std::f64::consts::SQRT_2);
    }
    let (_, vecs) = herm_eig_named(&combo, "POVM subproblem combination")?;
    let mut effects = vec![ComplexMatrix::zeros(d); ops.len()];
    for k in 0..d {
        let projector = ComplexMatrix::outer(&vecs.column(k));
        let mut winner = 0usize;
        let mut best = f64::NEG_INFINITY;
        for (b, a) in ops.iter().enumerate() {
            let value = a.trace_product(&projector).re;
            if value > best {
                best = value;
                winner = b;
            }
        }
        effects[winner].add_scaled(&projector, 1.0);
    }
    let objective = linear_objective(ops, &effects);
    Ok((effects, objective))
}

/// Lifts negative rounding dust off a complete effect list by mixing
/// every effect toward the uniform POVM `I/n`.  The mix preserves
/// `Σ_b M_b = I` exactly, raises each smallest eigenvalue to
/// `(1−t)λ_min + t/n`, and moves the objective by `O(t)` — with
/// `t = O(|λ_min|)` that is far below the solver tolerance.
fn psd_repair(effects: &mut [ComplexMatrix]) -> Result<()> {
    let n = effects.len();
    let d = effects[0].dim();
    let mut worst = 0.0f64;
    for m in effects.iter() {
        let (vals, _) = herm_eig_named(m, "POVM subproblem iterate")?;
        worst = worst.min(vals.first().copied().unwrap_or(0.0));
    }
    if worst >= 0.0 {
        return Ok(());
    }
    // (1−t)·λ_min + t/n ≥ 0 at t = |λ_min|/(1/n + |λ_min|); doubled for
    // rounding headroom.
    let t = (2.0 * worst.abs() / (1.0 / n as f64 + worst.abs())).min(1.0);
    let uniform = &ComplexMatrix::identity(d) * (1.0 / n as f64);
    for m in effects.iter_mut() {
        let mut mixed = &*m * (1.0 - t);
        mixed.add_scaled(&uniform, t);
        *m = mixed;
    }
    Ok(())
}

/// Fixed-point iteration for `max Σ_b Tr(A_b M_b)` over POVMs:
/// `M_b ← Λ^{-1/2} A_b M_b A_b Λ^{-1/2}` with `Λ = Σ_b A_b M_b A_b`
/// (operators shifted PSD first; the shift moves the objective by a
/// constant and leaves the argmax unchanged).  Any completeness defect
/// left on the kernel of `Λ` is distributed uniformly to keep
/// `Σ_b M_b = I` exact; returned effects are repaired back into the PSD
/// cone when that redistribution leaves sub-tolerance negative dust.
///
/// Tries the argmax-partition candidate first (exact for commuting
/// families, KKT-gated for everything else), then iterates.  Accepts
/// when the KKT residual (complementarity and dual feasibility) falls
/// below `tol · scale`; if the budget runs out, falls back to a
/// dominance check against [`DOMINANCE_TRIALS`] random feasible POVMs.
pub(crate) fn povm_fixed_point(
    ops: &[ComplexMatrix],
    tol: f64,
    warm: Option<&[ComplexMatrix]>,
    max_iters: usize,
) -> Result<(Vec<ComplexMatrix>, f64, usize)> {
    let d = validate_operators(ops)?;
    let n = ops.len();
    if n == 1 {
        return Ok((vec![ComplexMatrix::identity(d)], ops[0].trace_re(), 0));
    }
    if n == 2 {
        let (effects, objective) = binary_closed_form(ops)?;
        return Ok((effects, objective, 0));
    }

    let scale = ops.iter().map(ComplexMatrix::fro_norm).fold(1.0f64, f64::max);

    // Certify-first shortcut for (near-)commuting families, which stall
    // the damped iteration; the KKT gate makes acceptance sound for any
    // input.
    let (candidate, candidate_objective) = argmax_partition_candidate(ops)?;
    if kkt_complementarity(ops, &candidate) <= tol * scale
        && dual_feasibility_gap(ops, &candidate)? <= tol * scale
    {
        return Ok((candidate, candidate_objective, 0));
    }

    let shift = ops.iter().map(gershgorin_min).fold(0.0f64, f64::min);
    let shifted: Vec<ComplexMatrix> = ops
        .iter()
        .map(|a| {
            let mut s = a.clone();
            if shift < 0.0 {
                s.add_scaled(&ComplexMatrix::identity(d), -shift);
            }
            s
        })
        .collect();

    let uniform = &ComplexMatrix::identity(d) * (1.0 / n as f64);
    let mut effects: Vec<ComplexMatrix> = match warm {
        Some(w) if w.len() == n && w[0].dim() == d => w.to_vec(),
        _ => vec![uniform; n],
    };

    let mut last_residual = f64::INFINITY;
    let mut last_objective = f64::NEG_INFINITY;
    let mut stalled = 0usize;
    for iter in 1..=max_iters {
        let conjugated: Vec<ComplexMatrix> = (0..n)
            .map(|b| shifted[b].matmul(&effects[b]).matmul(&shifted[b]).hermitian_part())
            .collect();
        let mut normalizer = ComplexMatrix::zeros(d);
        for g in &conjugated {
            normalizer.add_scaled(g, 1.0);
        }
        let s = inv_sqrt_psd(&normalizer, 1e-14)?;
        for b in 0..n {
            effects[b] = s.conjugate_with(&conjugated[b]).hermitian_part();
        }
        // Restore exact completeness: anything Λ cannot see (its kernel)
        // is objective-neutral, so spread it uniformly.
        let mut defect = ComplexMatrix::identity(d);
        for m in &effects {
            defect.add_scaled(m, -1.0);
        }
        for m in effects.iter_mut() {
            m.add_scaled(&defect, 1.0 / n as f64);
        }

        last_residual = kkt_complementarity(ops, &effects);
        if last_residual <= tol * scale && dual_feasibility_gap(ops, &effects)? <= tol * scale {
            psd_repair(&mut effects)?;
            return Ok((effects.clone(), linear_objective(ops, &effects), iter));
        }

        let objective = linear_objective(ops, &effects);
        if objective - last_objective <= 1e-15 * scale {
            stalled += 1;
            if stalled >= 200 {
                break;
            }
        } else {
            stalled = 0;
        }
        last_objective = objective;
    }

    // KKT certification failed; accept only if the iterate dominates a
    // large sample of random feasible POVMs.
    psd_repair(&mut effects)?;
    let objective = linear_objective(ops, &effects);
    let mut rng = ChaCha8Rng::seed_from_u64(DOMINANCE_SEED);
    let dominated = (0..DOMINANCE_TRIALS).all(|_| {
        let candidate = random_povm_with(d, n, &mut rng);
        linear_objective(ops, &candidate) <= objective + 1e-9 * scale
    });
    if dominated {
        Ok((effects, objective, max_iters))
    } else {
        Err(Error::NoConvergence {
            what: "POVM subproblem",
            iterations: max_iters,
            residual: last_residual,
        })
    }
}

/// Maximizes `Σ_b Tr(A_b M_b)` over POVMs `{M_b ⪰ 0, Σ_b M_b = I}`.
///
/// Two-outcome instances use the exact closed form; larger ones run the
/// certified fixed-point iteration.  Returns the optimizing POVM and the
/// objective value.
///
/// # Errors
///
/// [`Error::NotHermitian`] / [`Error::DimensionMismatch`] on malformed
/// input; [`Error::NoConvergence`] if neither the KKT certificate nor
/// the dominance backstop can vouch for the iterate.
pub fn povm_linear_opt(ops: &[ComplexMatrix], tol: f64) -> Result<(Povm, f64)> {
    let (effects, objective, _) = povm_fixed_point(ops, tol, None, tolerances::POVM_OPT_MAX_ITERS)?;
    Ok((Povm::new("subproblem optimum", effects)?, objective))
}

/// Fixes the global phase of an eigenvector so its first
/// largest-magnitude component is real positive (lowest index wins) —
/// the deterministic representative of the phase orbit.
fn phase_fix(v: &mut [Complex64]) {
    let mut pivot = 0usize;
    for (i, z) in v.iter().enumerate() {
        if z.norm() > v[pivot].norm() {
            pivot = i;
        }
    }
    let norm = v[pivot].norm();
    if norm > 0.0 {
        let rotation = v[pivot].conj() / norm;
        for z in v.iter_mut() {
            *z *= rotation;
        }
    }
}

/// Top eigenvector (phase-fixed) and top eigenvalue of a Hermitian
/// operator.
fn top_eigenpair(op: &ComplexMatrix, context: &'static str) -> Result<(Vec<Complex64>, f64)> {
    let (vals, vecs) = herm_eig_named(op, context)?;
    let k = vals.len() - 1;
    let mut v = vecs.column(k);
    phase_fix(&mut v);
    Ok((v, vals[k]))
}

/// Per-input exact state subproblem: each returned state is the rank-1
/// projector onto the top eigenvector of its objective operator, and the
/// second element is `Σ_x λ_max(B_x)`.
pub(crate) fn optimize_states(ops: &[ComplexMatrix]) -> Result<(Vec<DensityMatrix>, f64)> {
    let mut states = Vec::with_capacity(ops.len());
    let mut gain = 0.0;
    for op in ops {
        let (v, lam) = top_eigenpair(op, "state subproblem operator")?;
        states.push(DensityMatrix::new(ComplexMatrix::outer(&v))?);
        gain += lam;
    }
    Ok((states, gain))
}

/// Maximizes `Tr(ρ_x B_x)` over density matrices, one per input: the
/// exact optimizer is the top eigenprojector of each `B_x`.  Expects
/// `d²` operators of dimension `d`; degenerate top eigenvalues are
/// resolved deterministically (fixed eigensolver sweep order plus the
/// phase convention of the largest component).
///
/// # Errors
///
/// [`Error::NotHermitian`] for malformed operators,
/// [`Error::DimensionMismatch`] if the operator count is not `d²`.
pub fn state_opt(ops: &[ComplexMatrix]) -> Result<Preparation> {
    let d = ops.first().map(|o| o.dim()).unwrap_or(0);
    let dim = GameDimension::new(d)?;
    if ops.len() != dim.num_inputs() {
        return Err(Error::DimensionMismatch {
            context: "state subproblem operator count",
            left: ops.len(),
            right: dim.num_inputs(),
        });
    }
    let (states, _) = optimize_states(ops)?;
    Preparation::new(dim, states)
}

/// Projects near-projective effects onto an exact von Neumann
/// measurement: top eigenvectors, Gram-Schmidt in outcome order, and a
/// deterministic canonical-basis completion for degenerate directions.
/// Effects that already form a projective measurement pass through
/// unchanged.
pub(crate) fn pvm_polish(effects: &[ComplexMatrix]) -> Result<Vec<ComplexMatrix>> {
    let d = effects[0].dim();
    let projective = effects.iter().all(|m| (&m.matmul(m) - m).max_abs() < 1e-10);
    if projective {
        return Ok(effects.to_vec());
    }

    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(effects.len());
    for m in effects {
        let (mut v, _) = top_eigenpair(m, "projective polish")?;
        orthogonalize(&mut v, &basis);
        let mut norm = vec_norm(&v);
        if norm < 1e-6 {
            // Degenerate direction (two effects share a leading
            // eigenvector); complete with the first canonical basis
            // vector that survives orthogonalization.
            for k in 0..d {
                let mut e: Vec<Complex64> = (0..d)
                    .map(|i| Complex64::new(if i == k { 1.0 } else { 0.0 }, 0.0))
                    .collect();
                orthogonalize(&mut e, &basis);
                norm = vec_norm(&e);
                if norm >= 0.5 {
                    v = e;
                    break;
                }
            }
        }
        for z in v.iter_mut() {
            *z /= norm;
        }
        phase_fix(&mut v);
        basis.push(v);
    }
    Ok(basis.iter().map(|v| ComplexMatrix::outer(v)).collect())
}

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn orthogonalize(v: &mut [Complex64], basis: &[Vec<Complex64>]) {
    for q in basis {
        let overlap: Complex64 = q.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
        for (z, &qk) in v.iter_mut().zip(q.iter()) {
            *z -= overlap * qk;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::{herm_eig, random_density_with, random_unitary_with};

    fn diag(entries: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_fn(entries.len(), |i, j| {
            Complex64::new(if i == j { entries[i] } else { 0.0 }, 0.0)
        })
    }

    #[test]
    fn psd_repair_lifts_negative_dust_and_keeps_completeness() {
        // Exact completeness but one effect dips 2e-10 below zero — the
        // kind of dust the defect redistribution can leave behind.
        let dust = 2e-10;
        let reference = diag(&[1.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0]);
        let mut effects = vec![
            diag(&[1.0 / 3.0, 1.0 / 3.0, -dust]),
            diag(&[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0 + dust]),
            reference.clone(),
        ];

        psd_repair(&mut effects).unwrap();

        let mut sum = ComplexMatrix::zeros(3);
        for m in &effects {
            let (vals, _) = herm_eig(m).unwrap();
            assert!(vals[0] >= 0.0, "min eigenvalue {} still negative", vals[0]);
            sum.add_scaled(m, 1.0);
        }
        sum.add_scaled(&ComplexMatrix::identity(3), -1.0);
        assert!(sum.max_abs() < 1e-15, "completeness drift {:.3e}", sum.max_abs());
        // The mix is a vanishing perturbation of the clean effect.
        assert!((&effects[2] - &reference).max_abs() < 1e-8);
    }

    #[test]
    fn binary_commuting_case_has_known_answer() {
        let a0 = diag(&[1.0, -1.0]);
        let a1 = &a0 * -1.0;
        let (povm, objective) = povm_linear_opt(&[a0, a1], 1e-9).unwrap();
        assert!((objective - 2.0).abs() < 1e-12);
        assert!((povm.effect(0) - &diag(&[1.0, 0.0])).max_abs() < 1e-12);
        assert!((povm.effect(1) - &diag(&[0.0, 1.0])).max_abs() < 1e-12);
    }

    #[test]
    fn binary_square_codebook_recovers_the_tradeoff_optimum() {
        // Group the four square-codebook states by the digit the first
        // receiver must guess: the optimal measurement value gives
        // p_ab = ½(1 + 1/√2) after normalization by 2d².
        let prep = crate::canonical_preparations();
        let mut total = 0.0;
        for y in 0..2 {
            let ops: Vec<ComplexMatrix> = (0..2)
                .map(|b| {
                    let mut acc = ComplexMatrix::zeros(2);
                    for x0 in 0..2 {
                        for x1 in 0..2 {
                            if (if y == 0 { x0 } else { x1 }) == b {
                                acc.add_scaled(prep.state(x0, x1).matrix(), 1.0);
                            }
                        }
                    }
                    acc
                })
                .collect();
            let (_, objective) = povm_linear_opt(&ops, 1e-9).unwrap();
            total += objective;
        }
        let p_ab = total / 8.0;
        assert!((p_ab - 0.5 * (1.0 + 1.0 / 2f64.sqrt())).abs() < 1e-10);
    }

    #[test]
    fn fixed_point_path_matches_binary_closed_form() {
        // Force the general iteration onto two-outcome instances and
        // compare objectives with the closed form.
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for trial in 0..10 {
            let d = 2 + trial % 3;
            let a0 = {
                let r = random_density_with(d, &mut rng);
                &r * 1.7
            };
            let a1 = random_density_with(d, &mut rng);
            let ops = vec![a0, a1];
            let (_, exact) = binary_closed_form(&ops).unwrap();
            // Pad with a zero operator to dodge the n == 2 dispatch: a
            // zero-objective outcome never hurts the optimum.
            let padded = vec![ops[0].clone(), ops[1].clone(), ComplexMatrix::zeros(d)];
            let (_, iterated, _) = povm_fixed_point(&padded, 1e-10, None, 5_000).unwrap();
            assert!(
                (iterated - exact).abs() < 1e-8,
                "trial {trial}: iterated {iterated} vs closed form {exact}"
            );
        }
    }

    #[test]
    fn multi_outcome_solution_dominates_random_povms() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let d = 3;
        let ops: Vec<ComplexMatrix> = (0..3).map(|_| &random_density_with(d, &mut rng) * 2.0).collect();
        let (povm, objective) = povm_linear_opt(&ops, 1e-9).unwrap();
        assert_eq!(povm.outcomes(), 3);
        let mut probe = ChaCha8Rng::seed_from_u64(123);
        for _ in 0..10_000 {
            let candidate = random_povm_with(d, 3, &mut probe);
            let value = linear_objective(&ops, &candidate);
            assert!(value <= objective + 1e-9, "random POVM beat the optimizer: {value} > {objective}");
        }
    }

    #[test]
    fn indefinite_operators_are_handled_via_shift() {
        // Hermitian but indefinite objectives must still optimize.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let d = 3;
        let ops: Vec<ComplexMatrix> = (0..3)
            .map(|_| {
                let u = random_unitary_with(d, &mut rng);
                let base = diag(&[1.0, -0.5, 0.25]);
                u.conjugate_with(&base)
            })
            .collect();
        let (povm, objective) = povm_linear_opt(&ops, 1e-9).unwrap();
        // Sanity: objective at least as good as the uniform POVM.
        let uniform: Vec<ComplexMatrix> =
            (0..3).map(|_| &ComplexMatrix::identity(d) * (1.0 / 3.0)).collect();
        assert!(objective >= linear_objective(&ops, &uniform) - 1e-12);
        assert_eq!(povm.outcomes(), 3);
    }

    #[test]
    fn state_subproblem_known_answers() {
        let b = diag(&[2.0, 1.0]);
        let (states, gain) = optimize_states(&[b]).unwrap();
        assert!((states[0].matrix() - &diag(&[1.0, 0.0])).max_abs() < 1e-12);
        assert!((gain - 2.0).abs() < 1e-12);

        let pauli_x = ComplexMatrix::from_fn(2, |i, j| {
            Complex64::new(if i != j { 1.0 } else { 0.0 }, 0.0)
        });
        let (states, gain) = optimize_states(&[pauli_x]).unwrap();
        let expected = ComplexMatrix::from_fn(2, |_, _| Complex64::new(0.5, 0.0));
        assert!((states[0].matrix() - &expected).max_abs() < 1e-12);
        assert!((gain - 1.0).abs() < 1e-12);
    }

    #[test]
    fn state_subproblem_attains_the_top_eigenvalue() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for d in 2..=6 {
            let op = {
                let r = random_density_with(d, &mut rng);
                &r * 3.0
            };
            let (states, _) = optimize_states(std::slice::from_ref(&op)).unwrap();
            let achieved = states[0].matrix().trace_product(&op).re;
            let (vals, _) = herm_eig(&op).unwrap();
            assert!((achieved - vals[d - 1]).abs() < 1e-10, "d={d}");
        }
    }

    #[test]
    fn state_opt_builds_a_full_preparation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let ops: Vec<ComplexMatrix> = (0..9).map(|_| &random_density_with(3, &mut rng) * 2.0).collect();
        let prep = state_opt(&ops).unwrap();
        assert_eq!(prep.dim().get(), 3);
        assert_eq!(prep.states().len(), 9);
        assert!(state_opt(&ops[..4]).is_err(), "wrong count must be rejected");
    }

    #[test]
    fn polish_produces_an_exact_projective_measurement() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for d in 2..=5 {
            // Smear a random PVM toward the uniform POVM, then polish.
            let u = random_unitary_with(d, &mut rng);
            let smeared: Vec<ComplexMatrix> = (0..d)
                .map(|b| {
                    let proj = ComplexMatrix::outer(&u.column(b));
                    let mut m = &proj * 0.9;
                    m.add_scaled(&ComplexMatrix::identity(d), 0.1 / d as f64);
                    m
                })
                .collect();
            let polished = pvm_polish(&smeared).unwrap();
            let mut sum = ComplexMatrix::zeros(d);
            for p in &polished {
                assert!((&p.matmul(p) - p).max_abs() < 1e-12, "projective");
                sum.add_scaled(p, 1.0);
            }
            assert!((&sum - &ComplexMatrix::identity(d)).max_abs() < 1e-12, "complete");
            // Polish must recover the original PVM's directions.
            for (b, p) in polished.iter().enumerate() {
                let overlap = p.trace_product(&ComplexMatrix::outer(&u.column(b))).re;
                assert!(overlap > 1.0 - 1e-9, "d={d} outcome {b} overlap {overlap}");
            }
        }
    }

    #[test]
    fn polish_handles_colliding_leading_eigenvectors() {
        // Two effects share their top eigenvector; the completion rule
        // must still hand back a valid PVM.
        let m0 = diag(&[0.6, 0.2, 0.2]);
        let m1 = diag(&[0.4, 0.3, 0.3]);
        let m2 = diag(&[0.0, 0.5, 0.5]);
        let polished = pvm_polish(&[m0, m1, m2]).unwrap();
        let mut sum = ComplexMatrix::zeros(3);
        for p in &polished {
            assert!((&p.matmul(p) - p).max_abs() < 1e-12);
            sum.add_scaled(p, 1.0);
        }
        assert!((&sum - &ComplexMatrix::identity(3)).max_abs() < 1e-12);
    }
}
