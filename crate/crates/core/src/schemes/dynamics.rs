use crate::error::Result;
use crate::numerics::{hermitian_eig, ComplexMatrix, ComplexVector, EigenSystem, C64, I};

/// `(p_0, p_d)` together with their time derivatives.
#[derive(Clone, Copy, Debug)]
pub struct PairDerivative {
    pub p0: C64,
    pub pd: C64,
    pub dp0: C64,
    pub dpd: C64,
}

impl PairDerivative {
    /// `d/dt |p_d|^2`.
    pub fn target_slope(&self) -> f64 {
        2.0 * (self.pd.conj() * self.dpd).re
    }

    /// `d/dt |p_0 p_d|^2`.
    pub fn product_slope(&self) -> f64 {
        let prod = self.p0 * self.pd;
        let dprod = self.dp0 * self.pd + self.p0 * self.dpd;
        2.0 * (prod.conj() * dprod).re
    }
}

/// Evolution of `u_0` through a diagonalised Hamiltonian.
#[derive(Clone, Debug)]
pub struct SpectralEvolution {
    pub eigen: EigenSystem,
    /// `<E_k|u_0>`.
    weights: Vec<C64>,
    target: usize,
}

impl SpectralEvolution {
    pub fn new(h: &ComplexMatrix, target: usize) -> Result<Self> {
        let eigen = hermitian_eig(h)?;
        let weights = eigen.vectors.iter().map(|v| v[0].conj()).collect();
        Ok(Self {
            eigen,
            weights,
            target,
        })
    }

    pub fn state(&self, t: f64) -> ComplexVector {
        self.eigen.evolve_projected(&self.weights, t)
    }

    fn pair_terms(&self, t: f64) -> PairDerivative {
        let (mut p0, mut pd, mut dp0, mut dpd) = (C64::default(), C64::default(), C64::default(), C64::default());
        for ((e, v), w) in self.eigen.values.iter().zip(&self.eigen.vectors).zip(&self.weights) {
            let phase = C64::from_polar(1.0, -e * t) * w;
            let a0 = v[0] * phase;
            let ad = v[self.target] * phase;
            p0 += a0;
            pd += ad;
            dp0 += -I * e * a0;
            dpd += -I * e * ad;
        }
        PairDerivative { p0, pd, dp0, dpd }
    }
}

/// Independent two-level drives starting from all-down.
#[derive(Clone, Debug)]
pub struct ProductEvolution {
    pub alphas: Vec<f64>,
    pub theta: f64,
}

impl ProductEvolution {
    pub fn new(alphas: Vec<f64>, theta: f64) -> Self {
        Self { alphas, theta }
    }

    /// `(cos(alpha_j t/2), -i e^{-i theta} sin(alpha_j t/2))` per qubit.
    pub fn qubit_amplitudes(&self, t: f64) -> Vec<(C64, C64)> {
        let up_phase = -I * C64::from_polar(1.0, -self.theta);
        self.alphas
            .iter()
            .map(|a| {
                let x = a * t / 2.0;
                (C64::new(x.cos(), 0.0), up_phase * x.sin())
            })
            .collect()
    }

    fn pair_terms(&self, t: f64) -> PairDerivative {
        let n = self.alphas.len();
        let up_phase = -I * C64::from_polar(1.0, -self.theta);
        let cos: Vec<f64> = self.alphas.iter().map(|a| (a * t / 2.0).cos()).collect();
        let sin: Vec<f64> = self.alphas.iter().map(|a| (a * t / 2.0).sin()).collect();
        let global = up_phase.powu(n as u32);

        // leave-one-out products for the product rule
        let loo = |f: &[f64]| -> Vec<f64> {
            let mut prefix = vec![1.0; n + 1];
            for j in 0..n {
                prefix[j + 1] = prefix[j] * f[j];
            }
            let mut suffix = 1.0;
            let mut out = vec![0.0; n];
            for j in (0..n).rev() {
                out[j] = prefix[j] * suffix;
                suffix *= f[j];
            }
            out
        };
        let cos_loo = loo(&cos);
        let sin_loo = loo(&sin);
        let p0: f64 = cos.iter().product();
        let pd: f64 = sin.iter().product();
        let dp0: f64 = (0..n)
            .map(|j| -0.5 * self.alphas[j] * sin[j] * cos_loo[j])
            .sum();
        let dpd: f64 = (0..n)
            .map(|j| 0.5 * self.alphas[j] * cos[j] * sin_loo[j])
            .sum();
        PairDerivative {
            p0: C64::new(p0, 0.0),
            pd: global * pd,
            dp0: C64::new(dp0, 0.0),
            dpd: global * dpd,
        }
    }
}

/// Time evolution of the initial all-down state under a scheme.
#[derive(Clone, Debug)]
pub enum Evolution {
    Spectral(SpectralEvolution),
    Product(ProductEvolution),
}

impl Evolution {
    /// `(p_0(t), p_d(t)) = (<u_0|psi(t)>, <u_d|psi(t)>)`.
    pub fn pair(&self, t: f64) -> (C64, C64) {
        let terms = self.pair_with_derivative(t);
        (terms.p0, terms.pd)
    }

    pub fn pair_with_derivative(&self, t: f64) -> PairDerivative {
        match self {
            Evolution::Spectral(ev) => ev.pair_terms(t),
            Evolution::Product(ev) => ev.pair_terms(t),
        }
    }

    /// `E_max - E_min` of the generator.
    pub fn spread(&self) -> f64 {
        match self {
            Evolution::Spectral(ev) => ev.eigen.spread(),
            Evolution::Product(ev) => ev.alphas.iter().sum(),
        }
    }

    /// Ladder (or register) coefficients for spectral evolutions; per-qubit
    /// `(a, b)` pairs flattened as `[a_0, b_0, a_1, b_1, ..]` for products.
    pub fn coefficients(&self, t: f64) -> ComplexVector {
        match self {
            Evolution::Spectral(ev) => ev.state(t),
            Evolution::Product(ev) => ComplexVector::new(
                ev.qubit_amplitudes(t)
                    .into_iter()
                    .flat_map(|(a, b)| [a, b])
                    .collect(),
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn finite_difference(ev: &Evolution, t: f64) -> (C64, C64) {
        let h = 1e-6;
        let (a0, ad) = ev.pair(t + h);
        let (b0, bd) = ev.pair(t - h);
        ((a0 - b0) / (2.0 * h), (ad - bd) / (2.0 * h))
    }

    #[test]
    fn product_derivatives_match_finite_differences() {
        let ev = Evolution::Product(ProductEvolution::new(vec![1.0, 5.0, 9.0], 0.4));
        for &t in &[0.1, 0.7, 1.3, 2.9] {
            let d = ev.pair_with_derivative(t);
            let (f0, fd) = finite_difference(&ev, t);
            assert!((d.dp0 - f0).norm() < 1e-6);
            assert!((d.dpd - fd).norm() < 1e-6);
        }
    }

    #[test]
    fn spectral_derivatives_match_finite_differences() {
        let h = ComplexMatrix::tridiagonal(&[0.0; 4], &[1.2, 0.7, 1.2]);
        let ev = Evolution::Spectral(SpectralEvolution::new(&h, 3).unwrap());
        for &t in &[0.1, 0.7, 1.3, 2.9] {
            let d = ev.pair_with_derivative(t);
            let (f0, fd) = finite_difference(&ev, t);
            assert!((d.dp0 - f0).norm() < 1e-6);
            assert!((d.dpd - fd).norm() < 1e-6);
        }
    }
}
