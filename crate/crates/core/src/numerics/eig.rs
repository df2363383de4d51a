use nalgebra::DMatrix;

use super::{ComplexMatrix, ComplexVector, C64, ZERO};
use crate::config::Tolerances;
use crate::error::{Error, Result};

/// Eigenvalues in ascending order with orthonormal, gauge-fixed eigenvectors.
///
/// Gauge: the first component whose magnitude exceeds `1e-12` times the
/// vector's largest component is real and positive.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: Vec<ComplexVector>,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// `E_max - E_min`.
    pub fn spread(&self) -> f64 {
        self.max() - self.min()
    }

    /// `<E_k|psi>` for every `k`.
    pub fn project(&self, psi: &ComplexVector) -> Result<Vec<C64>> {
        self.vectors.iter().map(|v| super::overlap(v, psi)).collect()
    }

    /// `e^{-iHt}|psi>` from coefficients already projected onto the eigenbasis.
    pub fn evolve_projected(&self, coeffs: &[C64], t: f64) -> ComplexVector {
        let mut out = ComplexVector::zeros(self.dim());
        for ((e, v), c) in self.values.iter().zip(&self.vectors).zip(coeffs) {
            out.add_scaled(c * C64::from_polar(1.0, -e * t), v);
        }
        out
    }

    pub fn evolve(&self, psi: &ComplexVector, t: f64) -> Result<ComplexVector> {
        let coeffs = self.project(psi)?;
        Ok(self.evolve_projected(&coeffs, t))
    }

    /// `sum_k E_k |E_k><E_k|`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut m = ComplexMatrix::zeros(n);
        for (e, v) in self.values.iter().zip(&self.vectors) {
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] += v[i] * v[j].conj() * e;
                }
            }
        }
        m
    }
}

fn fix_gauge(v: &mut ComplexVector) {
    let scale = v.amplitudes().iter().map(|z| z.norm()).fold(0.0, f64::max);
    let pivot = v
        .amplitudes()
        .iter()
        .find(|z| z.norm() > 1e-12 * scale)
        .copied()
        .unwrap_or(ZERO);
    if pivot.norm() > 0.0 {
        let phase = pivot.conj() / pivot.norm();
        for z in v.amplitudes_mut() {
            *z *= phase;
        }
        // exact zero imaginary part on the pivot
        if let Some(z) = v.amplitudes_mut().iter_mut().find(|z| z.norm() > 1e-12 * scale) {
            z.im = 0.0;
        }
    }
}

/// Hermitian eigendecomposition (ascending, gauge-fixed).
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<EigenSystem> {
    h.check_hermitian(Tolerances::DEFAULT.hermitian)?;
    let n = h.dim();
    // symmetrise so round-off asymmetry does not leak into the solver
    let m = DMatrix::from_fn(n, n, |i, j| 0.5 * (h[(i, j)] + h[(j, i)].conj()));
    let eig = m.symmetric_eigen();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = order
        .iter()
        .map(|&k| {
            let col = eig.eigenvectors.column(k);
            let mut v = ComplexVector::new(col.iter().copied().collect());
            let norm = v.norm();
            for z in v.amplitudes_mut() {
                *z /= norm;
            }
            fix_gauge(&mut v);
            v
        })
        .collect();
    Ok(EigenSystem { values, vectors })
}

/// `e^{-iHt}|psi>` via the eigendecomposition of `H`.
pub fn evolve(h: &ComplexMatrix, psi: &ComplexVector, t: f64) -> Result<ComplexVector> {
    if psi.dim() != h.dim() {
        return Err(Error::DimMismatch {
            expected: h.dim(),
            got: psi.dim(),
        });
    }
    if t == 0.0 {
        return Ok(psi.clone());
    }
    hermitian_eig(h)?.evolve(psi, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{overlap, I, ONE};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::tridiagonal(&[0.0, 0.0], &[1.0])
    }

    #[test]
    fn pauli_x_spectrum() {
        let es = hermitian_eig(&pauli_x()).unwrap();
        assert!((es.values[0] + 1.0).abs() < 1e-14);
        assert!((es.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn mirror_tridiagonal_spectrum() {
        let s3 = 3f64.sqrt();
        let h = ComplexMatrix::tridiagonal(&[0.0; 4], &[s3, 2.0, s3]);
        let es = hermitian_eig(&h).unwrap();
        for (e, want) in es.values.iter().zip([-3.0, -1.0, 1.0, 3.0]) {
            assert!((e - want).abs() < 1e-12, "{e} vs {want}");
        }
    }

    #[test]
    fn zero_matrix() {
        let es = hermitian_eig(&ComplexMatrix::zeros(4)).unwrap();
        assert!(es.values.iter().all(|e| e.abs() < 1e-15));
        for (a, va) in es.vectors.iter().enumerate() {
            for (b, vb) in es.vectors.iter().enumerate() {
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((overlap(va, vb).unwrap() - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 1)] = ONE;
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn gauge_first_component_positive() {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 1)] = I;
        m[(1, 0)] = -I;
        let es = hermitian_eig(&m).unwrap();
        for v in &es.vectors {
            assert!(v[0].im == 0.0 && v[0].re > 0.0);
        }
    }

    #[test]
    fn evolve_identity_at_zero() {
        let psi = ComplexVector::new(vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8)]);
        assert_eq!(evolve(&pauli_x(), &psi, 0.0).unwrap(), psi);
    }

    #[test]
    fn half_rabi_period() {
        // e^{-i (X/2) pi} |down> = -i |up>
        let jx = pauli_x().scale_real(0.5);
        let out = evolve(&jx, &ComplexVector::basis(2, 0), PI).unwrap();
        assert!(out[0].norm() < 1e-14);
        assert!((out[1] - C64::new(0.0, -1.0)).norm() < 1e-14);
    }

    #[test]
    fn dim_mismatch() {
        assert!(matches!(
            evolve(&pauli_x(), &ComplexVector::basis(3, 0), 1.0),
            Err(Error::DimMismatch { .. })
        ));
    }

    fn random_hermitian(n: usize, entries: &[(f64, f64)]) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n);
        let mut it = entries.iter().cycle();
        for i in 0..n {
            for j in i..n {
                let &(re, im) = it.next().unwrap();
                if i == j {
                    m[(i, i)] = C64::new(re, 0.0);
                } else {
                    m[(i, j)] = C64::new(re, im);
                    m[(j, i)] = C64::new(re, -im);
                }
            }
        }
        m
    }

    fn random_state(entries: &[(f64, f64)], n: usize) -> ComplexVector {
        let v = ComplexVector::new(
            entries.iter().cycle().take(n).map(|&(a, b)| C64::new(a, b)).collect(),
        );
        let v = if v.norm() < 1e-6 { ComplexVector::basis(n, 0) } else { v };
        v.normalized()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn unitarity_composition_reconstruction(
            n in 2usize..7,
            entries in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 28),
            state in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 7),
            t1 in 0.0f64..5.0,
            t2 in 0.0f64..5.0,
        ) {
            let h = random_hermitian(n, &entries);
            let psi = random_state(&state, n);
            let es = hermitian_eig(&h).unwrap();
            let hnorm = h.frobenius_norm().max(1e-300);

            // residuals and orthonormality
            for (e, v) in es.values.iter().zip(&es.vectors) {
                let hv = h.apply(v).unwrap();
                let res = hv.max_diff(&v.scale(C64::new(*e, 0.0)));
                prop_assert!(res <= 1e-10 * hnorm);
            }
            for (a, va) in es.vectors.iter().enumerate() {
                for (b, vb) in es.vectors.iter().enumerate() {
                    let want = if a == b { 1.0 } else { 0.0 };
                    prop_assert!((overlap(va, vb).unwrap() - want).norm() < 1e-10);
                }
            }
            prop_assert!(es.values.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(es.reconstruct().max_diff(&h) <= 1e-10 * hnorm);

            // unitarity on a grid over [0, 10 pi / ||H||]
            for k in 0..=20 {
                let t = 10.0 * PI / hnorm * k as f64 / 20.0;
                let out = es.evolve(&psi, t).unwrap();
                prop_assert!((out.norm() - 1.0).abs() < 1e-10);
            }

            let a = es.evolve(&es.evolve(&psi, t1).unwrap(), t2).unwrap();
            let b = es.evolve(&psi, t1 + t2).unwrap();
            prop_assert!(a.max_diff(&b) < 1e-9);
        }
    }
}
