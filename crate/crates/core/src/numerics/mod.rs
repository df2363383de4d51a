//! Dense complex linear algebra for small Hermitian problems.
//!
//! Matrices are stored row-major. Everything here is a pure function of its
//! inputs.

mod eig;
pub(crate) mod search;

pub use eig::{evolve, hermitian_eig, EigenSystem};
pub use search::time_grid;
pub use num_complex::Complex64 as C64;

use std::ops::{Add, Index, IndexMut, Mul};

use crate::config::Tolerances;
use crate::error::{Error, Result};

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries without any structural check.
    pub fn from_row_major(dim: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimMismatch {
                expected: dim * dim,
                got: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix and verifies conjugate symmetry.
    pub fn hermitian(dim: usize, data: Vec<C64>) -> Result<Self> {
        let m = Self::from_row_major(dim, data)?;
        m.check_hermitian(Tolerances::DEFAULT.hermitian)?;
        Ok(m)
    }

    /// Real symmetric tridiagonal matrix with the given diagonal and
    /// off-diagonal.
    pub fn tridiagonal(diag: &[f64], off: &[f64]) -> Self {
        let n = diag.len();
        assert_eq!(off.len() + 1, n.max(1), "off-diagonal length");
        let mut m = Self::diagonal(diag);
        for (k, &b) in off.iter().enumerate() {
            m[(k, k + 1)] = C64::new(b, 0.0);
            m[(k + 1, k)] = C64::new(b, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius norm; an upper bound on the spectral norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest `|H_ij - conj(H_ji)|`.
    pub fn hermitian_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn check_hermitian(&self, rel_tol: f64) -> Result<()> {
        let asymmetry = self.hermitian_asymmetry();
        if asymmetry > rel_tol * self.max_abs().max(f64::MIN_POSITIVE) {
            return Err(Error::NotHermitian { asymmetry });
        }
        Ok(())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: rhs.dim,
            });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        let ab = self.matmul(rhs)?;
        let ba = rhs.matmul(self)?;
        Ok(&ab + &ba.scale_real(-1.0))
    }

    pub fn apply(&self, v: &ComplexVector) -> Result<ComplexVector> {
        if v.dim() != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: v.dim(),
            });
        }
        let n = self.dim;
        let amps = (0..n)
            .map(|i| {
                self.data[i * n..(i + 1) * n]
                    .iter()
                    .zip(v.amplitudes())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        Ok(ComplexVector::new(amps))
    }

    /// `<a|M|b>`.
    pub fn matrix_element(&self, a: &ComplexVector, b: &ComplexVector) -> Result<C64> {
        overlap(a, &self.apply(b)?)
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (n, m) = (self.dim, rhs.dim);
        let mut out = Self::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out[(i * m + k, j * m + l)] = a * rhs[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Largest entrywise distance to `other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions differ");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Mul<&ComplexMatrix> for f64 {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        rhs.scale_real(self)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexVector {
    amps: Vec<C64>,
}

impl ComplexVector {
    pub fn new(amps: Vec<C64>) -> Self {
        Self { amps }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![ZERO; dim])
    }

    /// Computational basis vector `|index>`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.amps[index] = ONE;
        v
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self::new(values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self::new(self.amps.iter().map(|z| z / n).collect())
    }

    /// Errors unless the norm is within the state tolerance of one.
    pub fn check_state(&self) -> Result<()> {
        let norm = self.norm();
        if (norm - 1.0).abs() > Tolerances::DEFAULT.state_norm {
            return Err(Error::NotNormalized { norm });
        }
        Ok(())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.amps.iter().map(|z| z * s).collect())
    }

    pub fn add_scaled(&mut self, s: C64, other: &Self) {
        for (a, b) in self.amps.iter_mut().zip(&other.amps) {
            *a += s * b;
        }
    }

    /// Kronecker product `self ⊗ rhs` (`self` indexes the high bits).
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = Vec::with_capacity(self.dim() * rhs.dim());
        for a in &self.amps {
            for b in &rhs.amps {
                out.push(a * b);
            }
        }
        Self::new(out)
    }

    /// Largest componentwise distance to `other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Distance to `other` after removing the best global phase.
    pub fn max_diff_up_to_phase(&self, other: &Self) -> f64 {
        let ov: C64 = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum();
        let phase = if ov.norm() > 0.0 { ov / ov.norm() } else { ONE };
        self.scale(phase).max_diff(other)
    }
}

impl Index<usize> for ComplexVector {
    type Output = C64;

    fn index(&self, i: usize) -> &C64 {
        &self.amps[i]
    }
}

impl IndexMut<usize> for ComplexVector {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.amps[i]
    }
}

/// `<a|b>`, conjugate-linear in `a`.
pub fn overlap(a: &ComplexVector, b: &ComplexVector) -> Result<C64> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    Ok(a.amps.iter().zip(&b.amps).map(|(x, y)| x.conj() * y).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overlap_examples() {
        let down = ComplexVector::basis(2, 0);
        let up = ComplexVector::basis(2, 1);
        assert_eq!(overlap(&down, &up).unwrap(), ZERO);
        let v = ComplexVector::new(vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8)]);
        assert!((overlap(&v, &v).unwrap() - ONE).norm() < 1e-15);
        assert!(matches!(
            overlap(&v, &ComplexVector::zeros(3)),
            Err(Error::DimMismatch { .. })
        ));
    }

    #[test]
    fn overlap_is_conjugate_linear_in_first_argument() {
        let a = ComplexVector::new(vec![I, ZERO]);
        let b = ComplexVector::new(vec![ONE, ZERO]);
        assert_eq!(overlap(&a, &b).unwrap(), -I);
    }

    #[test]
    fn hermitian_constructor_rejects_asymmetry() {
        let data = vec![ZERO, ONE, ZERO, ZERO];
        assert!(matches!(
            ComplexMatrix::hermitian(2, data),
            Err(Error::NotHermitian { .. })
        ));
        let data = vec![ZERO, I, -I, ZERO];
        assert!(ComplexMatrix::hermitian(2, data).is_ok());
    }

    #[test]
    fn kron_ordering() {
        let up = ComplexVector::basis(2, 1);
        let down = ComplexVector::basis(2, 0);
        // high bit first
        assert_eq!(up.kron(&down), ComplexVector::basis(4, 2));
    }
}
