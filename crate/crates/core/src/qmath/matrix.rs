//! Dense square complex matrices in row-major order.
//!
//! The game never needs dimensions above six, so every operation is a
//! straightforward O(d^2) or O(d^3) loop over a flat `Vec<Complex64>`;
//! there is no blocking, no BLAS, and no attempt to avoid allocation in
//! operator chains.

use num_complex::Complex64;

/// Square complex matrix, row-major: entry `(i, j)` lives at `i * dim + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix of side `dim`.
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    /// Identity matrix of side `dim`.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Builds a matrix by evaluating `f(i, j)` at every entry.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Rank-one projector `v v†` (the vector need not be normalized;
    /// callers wanting a projector should pass a unit vector).
    pub fn outer(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    /// Side length.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry `(i, j)`.
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    /// Overwrites entry `(i, j)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    /// Column `j` as an owned vector.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.at(i, j)).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.at(j, i).conj())
    }

    /// Trace.
    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.at(i, i)).sum()
    }

    /// Real part of the trace (the imaginary part of `Tr(ρ M)` for
    /// Hermitian arguments is rounding noise; callers that need it can
    /// use [`ComplexMatrix::trace`]).
    pub fn trace_re(&self) -> f64 {
        self.trace().re
    }

    /// Frobenius norm.
    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry magnitude of `A - A†`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self.at(i, j) - self.at(j, i).conj()).norm());
            }
        }
        dev
    }

    /// Hermitian part `(A + A†) / 2`.  Used before eigensolves to strip
    /// rounding-level asymmetry accumulated by operator products.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self.at(i, j) + self.at(j, i).conj()) * 0.5)
    }

    /// Matrix product `self * rhs`.  Panics if dimensions differ; all
    /// call sites mix objects created for a single game dimension.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matmul dimension mismatch");
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.at(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    let v = out.at(i, j) + a * rhs.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// `A B A†` — the conjugation pattern used by Kraus updates and basis
    /// changes.
    pub fn conjugate_with(&self, inner: &Self) -> Self {
        self.matmul(inner).matmul(&self.adjoint())
    }

    /// Entrywise `self + scale * rhs` without intermediate allocations.
    pub fn add_scaled(&mut self, rhs: &Self, scale: f64) {
        assert_eq!(self.dim, rhs.dim, "add_scaled dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(rhs.data.iter()) {
            *a += b * scale;
        }
    }

    /// `Tr(self * rhs)` without forming the product.
    pub fn trace_product(&self, rhs: &Self) -> Complex64 {
        assert_eq!(self.dim, rhs.dim, "trace_product dimension mismatch");
        let d = self.dim;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..d {
            for k in 0..d {
                acc += self.at(i, k) * rhs.at(k, i);
            }
        }
        acc
    }
}

impl std::ops::Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "add dimension mismatch");
        ComplexMatrix::from_fn(self.dim, |i, j| self.at(i, j) + rhs.at(i, j))
    }
}

impl std::ops::Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "sub dimension mismatch");
        ComplexMatrix::from_fn(self.dim, |i, j| self.at(i, j) - rhs.at(i, j))
    }
}

impl std::ops::Mul<f64> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, s: f64) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim, |i, j| self.at(i, j) * s)
    }
}

impl std::ops::Mul<Complex64> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, s: Complex64) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim, |i, j| self.at(i, j) * s)
    }
}

impl std::ops::Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}
