//! Complex linear algebra sized for small Hilbert spaces.

mod eig;
mod matrix;
mod random;

pub use eig::{herm_eig, herm_eig_named, positive_part, psd_sqrt, psd_sqrt_named};
pub(crate) use eig::inv_sqrt_psd;
pub use matrix::ComplexMatrix;
pub use random::{random_density, random_density_with, random_povm, random_povm_with, random_unitary, random_unitary_with};
pub(crate) use random::{bloch_in_ball_with, ginibre_with};
