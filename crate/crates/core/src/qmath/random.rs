//! Seeded random quantum objects.
//!
//! Every sampler has a `_with` variant taking a caller-owned RNG (the
//! form used inside multi-start loops, where each restart gets its own
//! ChaCha stream) and a convenience wrapper taking a bare seed.  ChaCha8
//! is used throughout: counter-based streams make parallel determinism
//! trivial and the statistical quality is far beyond what the tests need.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::eig::inv_sqrt_psd;
use super::matrix::ComplexMatrix;

/// Matrix with independent standard complex Gaussian entries.
pub(crate) fn ginibre_with(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    })
}

/// Random density matrix `G G† / Tr(G G†)` with `G` Ginibre — full rank
/// with probability one, Hilbert-Schmidt distributed.
pub fn random_density_with(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = ginibre_with(dim, rng);
    let gg = g.matmul(&g.adjoint());
    let t = gg.trace_re();
    &gg * (1.0 / t)
}

/// Seed-taking wrapper around [`random_density_with`].
pub fn random_density(dim: usize, seed: u64) -> ComplexMatrix {
    random_density_with(dim, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Haar-random unitary via modified Gram-Schmidt on a Ginibre matrix,
/// with the phase convention that the implicit `R` factor has a positive
/// real diagonal (this makes the distribution exactly Haar rather than
/// Haar-up-to-phases).
pub fn random_unitary_with(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = ginibre_with(dim, rng);
    let mut cols: Vec<Vec<Complex64>> = (0..dim).map(|j| g.column(j)).collect();
    for j in 0..dim {
        let (settled, rest) = cols.split_at_mut(j);
        let col = &mut rest[0];
        for prev in settled.iter() {
            let proj: Complex64 = prev.iter().zip(col.iter()).map(|(p, c)| p.conj() * c).sum();
            for (c, p) in col.iter_mut().zip(prev) {
                *c -= proj * p;
            }
        }
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in col.iter_mut() {
            *z /= norm;
        }
    }
    ComplexMatrix::from_fn(dim, |i, j| cols[j][i])
}

/// Seed-taking wrapper around [`random_unitary_with`].
pub fn random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    random_unitary_with(dim, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Random `outcomes`-effect POVM: draw Wishart blocks `G_b = A_b A_b†`,
/// then normalize with `S^{-1/2} G_b S^{-1/2}` where `S = Σ_b G_b`.  The
/// effects are PSD and sum to the identity by construction.
pub fn random_povm_with(dim: usize, outcomes: usize, rng: &mut ChaCha8Rng) -> Vec<ComplexMatrix> {
    let blocks: Vec<ComplexMatrix> = (0..outcomes)
        .map(|_| {
            let a = ginibre_with(dim, rng);
            a.matmul(&a.adjoint())
        })
        .collect();
    let mut s = ComplexMatrix::zeros(dim);
    for b in &blocks {
        s.add_scaled(b, 1.0);
    }
    let w = inv_sqrt_psd(&s, 1e-14).expect("Wishart sum is positive definite");
    blocks.into_iter().map(|g| w.conjugate_with(&g).hermitian_part()).collect()
}

/// Seed-taking wrapper around [`random_povm_with`].
pub fn random_povm(dim: usize, outcomes: usize, seed: u64) -> Vec<ComplexMatrix> {
    random_povm_with(dim, outcomes, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Uniform point in the closed unit ball of R^3, by rejection.
pub(crate) fn bloch_in_ball_with(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v = [
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
        ];
        if v[0] * v[0] + v[1] * v[1] + v[2] * v[2] <= 1.0 {
            return v;
        }
    }
}
