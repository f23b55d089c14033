//! Shared fixtures for the benchmark targets.

use seqrac_core::{random_density, ComplexMatrix};

/// Deterministic indefinite Hermitian matrix (a stretched difference of
/// two random densities), the generic input for the eigensolver and the
/// measurement subproblem.
pub fn hermitian_fixture(dim: usize, seed: u64) -> ComplexMatrix {
    let mut m = &random_density(dim, seed) * 3.0;
    m.add_scaled(&random_density(dim, seed.wrapping_add(1)), -2.0);
    m
}

/// Deterministic PSD matrix with unit trace.
pub fn psd_fixture(dim: usize, seed: u64) -> ComplexMatrix {
    random_density(dim, seed)
}
