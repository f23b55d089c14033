//! Hermitian eigendecomposition via cyclic complex Jacobi rotations.
//!
//! For the `d <= 6` matrices this crate handles, cyclic Jacobi is simple,
//! allocation-light, and converges quadratically; there is no motive for
//! a Householder/QL pipeline.  The solver validates Hermiticity, works on
//! the symmetrized input, and returns eigenvalues in ascending order with
//! matching eigenvector columns.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::tolerances;
use crate::{Error, Result};

/// Frobenius norm of the strict off-diagonal part.
fn offdiag_norm(a: &ComplexMatrix) -> f64 {
    let d = a.dim();
    let mut acc = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                acc += a.at(i, j).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns `(eigenvalues, vectors)` with eigenvalues ascending and
/// `vectors.column(k)` the unit eigenvector for `eigenvalues[k]`, so that
/// `m ≈ V diag(λ) V†`.
///
/// # Errors
///
/// * [`Error::NotHermitian`] if `m` deviates from its adjoint beyond
///   [`tolerances::HERMITICITY`] relative to the matrix scale (non-finite
///   entries also land here: they can never pass the symmetry check).
/// * [`Error::NoConvergence`] if the off-diagonal mass fails to fall
///   below [`tolerances::JACOBI_OFFDIAG`] within
///   [`tolerances::JACOBI_MAX_SWEEPS`] sweeps.
pub fn herm_eig(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    herm_eig_named(m, "herm_eig input")
}

/// [`herm_eig`] with a caller-supplied context label for error messages.
pub fn herm_eig_named(m: &ComplexMatrix, context: &'static str) -> Result<(Vec<f64>, ComplexMatrix)> {
    let d = m.dim();
    let scale = m.max_abs().max(1.0);
    let dev = m.hermiticity_deviation();
    // NaN deviations must fail too, hence the explicit check.
    if dev.is_nan() || dev > tolerances::HERMITICITY * scale {
        return Err(Error::NotHermitian { context, deviation: dev });
    }

    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(d);
    if d == 1 {
        return Ok((vec![a.at(0, 0).re], v));
    }

    let fro_scale = a.fro_norm().max(1.0);
    let target = tolerances::JACOBI_OFFDIAG * fro_scale;
    let mut off = offdiag_norm(&a);
    let mut sweeps = 0;
    while off > target {
        if sweeps >= tolerances::JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                what: "Jacobi eigensolver",
                iterations: sweeps,
                residual: off,
            });
        }
        for p in 0..d - 1 {
            for q in p + 1..d {
                rotate(&mut a, &mut v, p, q);
            }
        }
        off = offdiag_norm(&a);
        sweeps += 1;
    }

    // Sort ascending; reorder eigenvector columns to match.
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| a.at(i, i).re.partial_cmp(&a.at(j, j).re).expect("finite eigenvalues"));
    let values: Vec<f64> = order.iter().map(|&k| a.at(k, k).re).collect();
    let vectors = ComplexMatrix::from_fn(d, |i, j| v.at(i, order[j]));
    Ok((values, vectors))
}

/// One Jacobi rotation annihilating the `(p, q)` entry: `A ← R† A R`,
/// `V ← V R`, where `R` differs from the identity only in rows/columns
/// `p, q`:
///
/// ```text
/// R[p][p] = c    R[p][q] =  s e^{iφ}
/// R[q][p] = -s e^{-iφ}    R[q][q] = c
/// ```
///
/// with `a_pq = β e^{iφ}` and the rotation angle chosen via the stable
/// small tangent root `t = sgn(τ) / (|τ| + sqrt(1 + τ²))`,
/// `τ = (a_qq - a_pp) / (2β)`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.at(p, q);
    let beta = apq.norm();
    if beta == 0.0 {
        return;
    }
    let phase = apq / beta;
    let tau = (a.at(q, q).re - a.at(p, p).re) / (2.0 * beta);
    let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
    let t = sign / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let d = a.dim();
    // Column pass: A ← A R touches columns p and q.
    for k in 0..d {
        let akp = a.at(k, p);
        let akq = a.at(k, q);
        a.set(k, p, akp * c - akq * phase.conj() * s);
        a.set(k, q, akp * phase * s + akq * c);
    }
    // Row pass: A ← R† A touches rows p and q.
    for k in 0..d {
        let apk = a.at(p, k);
        let aqk = a.at(q, k);
        a.set(p, k, apk * c - aqk * phase * s);
        a.set(q, k, apk * phase.conj() * s + aqk * c);
    }
    // The rotation zeroes (p, q) analytically; pin it (and Hermitian
    // symmetry of the pair) against rounding drift.
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));
    a.set(p, p, Complex64::new(a.at(p, p).re, 0.0));
    a.set(q, q, Complex64::new(a.at(q, q).re, 0.0));

    // Accumulate V ← V R.
    for k in 0..d {
        let vkp = v.at(k, p);
        let vkq = v.at(k, q);
        v.set(k, p, vkp * c - vkq * phase.conj() * s);
        v.set(k, q, vkp * phase * s + vkq * c);
    }
}

/// Rebuilds `V f(diag) V†` from an eigendecomposition.
fn rebuild(values: &[f64], vectors: &ComplexMatrix, f: impl Fn(f64) -> f64) -> ComplexMatrix {
    let d = vectors.dim();
    let mut out = ComplexMatrix::zeros(d);
    for (k, &lam) in values.iter().enumerate() {
        let w = f(lam);
        if w == 0.0 {
            continue;
        }
        let col = vectors.column(k);
        for i in 0..d {
            for j in 0..d {
                let v = out.at(i, j) + col[i] * col[j].conj() * w;
                out.set(i, j, v);
            }
        }
    }
    out
}

/// Principal square root of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues in `[PSD_FLOOR * scale, 0)` are treated as rounding noise
/// and clamped to zero.
///
/// # Errors
///
/// [`Error::NotPsd`] if an eigenvalue falls below
/// [`tolerances::PSD_FLOOR`] relative to the spectral scale, plus the
/// pass-through errors of [`herm_eig`].
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    psd_sqrt_named(m, "psd_sqrt input")
}

/// [`psd_sqrt`] with a caller-supplied context label for error messages.
pub fn psd_sqrt_named(m: &ComplexMatrix, context: &'static str) -> Result<ComplexMatrix> {
    let (values, vectors) = herm_eig_named(m, context)?;
    let scale = values.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    let min = values.first().copied().unwrap_or(0.0);
    if min < tolerances::PSD_FLOOR * scale {
        return Err(Error::NotPsd { context, min_eigenvalue: min });
    }
    Ok(rebuild(&values, &vectors, |lam| lam.max(0.0).sqrt()))
}

/// Projection onto the positive semidefinite cone: negative eigenvalues
/// are dropped, not an error.  Used where an optimizer's iterate may
/// drift slightly indefinite by construction.
pub fn positive_part(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (values, vectors) = herm_eig_named(m, "positive_part input")?;
    Ok(rebuild(&values, &vectors, |lam| lam.max(0.0)))
}

/// Pseudo-inverse square root `m^{-1/2}` of a positive semidefinite
/// matrix; eigenvalues at or below `cutoff * scale` map to zero instead
/// of blowing up.  Internal to the POVM samplers and the fixed-point POVM
/// solver, which both sandwich with `S^{-1/2} (·) S^{-1/2}`.
pub(crate) fn inv_sqrt_psd(m: &ComplexMatrix, cutoff: f64) -> Result<ComplexMatrix> {
    let (values, vectors) = herm_eig_named(m, "inv_sqrt input")?;
    let scale = values.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    let min = values.first().copied().unwrap_or(0.0);
    if min < tolerances::PSD_FLOOR * scale {
        return Err(Error::NotPsd { context: "inv_sqrt input", min_eigenvalue: min });
    }
    let floor = cutoff * scale;
    Ok(rebuild(&values, &vectors, |lam| if lam > floor { 1.0 / lam.sqrt() } else { 0.0 }))
}
