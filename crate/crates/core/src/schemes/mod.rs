//! Charging-scheme construction.
//!
//! Every scheme drives the all-down register `u_0` to the all-up register
//! `u_d` (up to a phase). Subspace schemes carry their Hamiltonian on the
//! `(d+1)`-dimensional ladder `u_0 .. u_d` and, for small registers, an
//! embedding of that ladder into the full `2^N` space. Parallel schemes keep
//! per-qubit factors and never materialise a register matrix.

mod dynamics;
pub mod hybrid;
pub mod parallel;
pub mod su2;
pub mod tridiag;

use serde::{Deserialize, Serialize};

pub use dynamics::{Evolution, PairDerivative, ProductEvolution, SpectralEvolution};
pub use hybrid::{
    block_layout, build_hybrid, build_hybrid_register, hybrid_basis, hybrid_evolved,
    hybrid_hamiltonian, BlockLayout, HYBRID_EFFECTIVE_FIELD,
};
pub use parallel::{build_parallel, parallel_alphas, parallel_amplitudes};
pub use su2::{build_su2, ladder_factors, su2_coefficients, su2_generators, SpinGenerators};
pub use tridiag::{
    build_tridiag, build_tridiag3, is_mirror_symmetric, spectrum_condition_check,
    tridiag3_admissible_ratios, tridiag3_analytic_state, tridiag3_couplings, AdmissibleRatio,
    RatioCase, SpectrumCondition,
};

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, ComplexVector, C64};

/// Parameters of a scheme family member.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SchemeSpec {
    /// `alpha1 Jx + alpha2 Jy + alpha3 Jz + d|alpha|/2`, rotated about z by `theta`.
    Su2 {
        d: usize,
        alpha1: f64,
        alpha2: f64,
        alpha3: f64,
        theta: f64,
    },
    /// Independent drives `alpha_j (cos(theta) X + sin(theta) Y)/2 + alpha_j/2`.
    Parallel {
        n: usize,
        k: Vec<u32>,
        alpha_base: f64,
        theta: f64,
    },
    /// Zero-diagonal tridiagonal ladder with couplings `b`.
    Tridiag { b: Vec<f64> },
    /// Mirror-symmetric four-level ladder with spectrum `{±lambda1, ±lambda2}`.
    Tridiag3 { lambda1: f64, lambda2: f64 },
    /// Block-flip construction with `d` contiguous blocks.
    Hybrid { n: usize, d: usize, theta: f64 },
}

impl SchemeSpec {
    /// Short human-readable descriptor used in reports.
    pub fn descriptor(&self) -> String {
        match self {
            SchemeSpec::Su2 {
                d,
                alpha1,
                alpha2,
                alpha3,
                theta,
            } => format!("su2(d={d},alpha=({alpha1},{alpha2},{alpha3}),theta={theta})"),
            SchemeSpec::Parallel {
                n,
                k,
                alpha_base,
                theta,
            } => {
                let ks: Vec<String> = k.iter().map(|x| x.to_string()).collect();
                format!(
                    "parallel(n={n},k=[{}],alpha_base={alpha_base},theta={theta})",
                    ks.join(",")
                )
            }
            SchemeSpec::Tridiag { b } => {
                let bs: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                format!("tridiag(b=[{}])", bs.join(","))
            }
            SchemeSpec::Tridiag3 { lambda1, lambda2 } => {
                format!("tridiag3(lambda1={lambda1},lambda2={lambda2})")
            }
            SchemeSpec::Hybrid { n, d, theta } => format!("hybrid(n={n},d={d},theta={theta})"),
        }
    }
}

/// Where the scheme's Hamiltonian lives.
#[derive(Clone, Debug)]
pub enum SchemeBody {
    /// `(d+1) x (d+1)` matrix in the ladder basis `u_0 .. u_d`.
    Subspace(ComplexMatrix),
    /// `2^N x 2^N` matrix; qubit `q` is bit `q` of the basis index, 1 = up.
    Register(ComplexMatrix),
    /// Per-qubit Rabi frequencies and the common drive phase.
    Product { alphas: Vec<f64>, theta: f64 },
}

#[derive(Clone, Debug)]
pub struct RealizedScheme {
    pub spec: SchemeSpec,
    pub n_qubits: usize,
    pub d: usize,
    pub body: SchemeBody,
    /// Full-register images of `u_0 .. u_d` (subspace schemes only).
    pub embedding: Option<Vec<ComplexVector>>,
    pub fully_charging_capable: bool,
    /// Set for tridiagonal schemes.
    pub mirror_symmetric: Option<bool>,
    /// Minimal charging time when the family has a closed form for it.
    pub closed_form_time: Option<f64>,
}

impl RealizedScheme {
    pub fn build(spec: &SchemeSpec) -> Result<Self> {
        match spec {
            SchemeSpec::Su2 {
                d,
                alpha1,
                alpha2,
                alpha3,
                theta,
            } => build_su2(*d, [*alpha1, *alpha2, *alpha3], *theta),
            SchemeSpec::Parallel {
                n,
                k,
                alpha_base,
                theta,
            } => {
                if k.len() != *n {
                    return Err(Error::InvalidArgument(format!(
                        "parallel scheme has n = {n} but {} k values",
                        k.len()
                    )));
                }
                build_parallel(k, *alpha_base, *theta)
            }
            SchemeSpec::Tridiag { b } => build_tridiag(b),
            SchemeSpec::Tridiag3 { lambda1, lambda2 } => build_tridiag3(*lambda1, *lambda2),
            SchemeSpec::Hybrid { n, d, theta } => build_hybrid(*n, *d, *theta),
        }
    }

    /// Sets the register size of a subspace scheme and, when the register is
    /// small enough, embeds the ladder with the block basis of
    /// [`hybrid_basis`].
    pub fn with_qubits(mut self, n: usize) -> Result<Self> {
        match self.body {
            SchemeBody::Subspace(_) => {}
            _ if n == self.n_qubits => return Ok(self),
            _ => {
                return Err(Error::InvalidArgument(
                    "register size is fixed for this scheme".into(),
                ))
            }
        }
        if n < self.d {
            return Err(Error::InvalidArgument(format!(
                "register of {n} qubits cannot host a ladder of length d = {}",
                self.d
            )));
        }
        if let SchemeSpec::Hybrid { n: ref mut hn, .. } = self.spec {
            *hn = n;
        }
        self.n_qubits = n;
        self.embedding = if n <= Limits::DEFAULT.oracle_max_qubits {
            Some(
                (0..=self.d)
                    .map(|j| hybrid_basis(n, self.d, j))
                    .collect::<Result<_>>()?,
            )
        } else {
            None
        };
        Ok(self)
    }

    pub fn hamiltonian(&self) -> Option<&ComplexMatrix> {
        match &self.body {
            SchemeBody::Subspace(h) | SchemeBody::Register(h) => Some(h),
            SchemeBody::Product { .. } => None,
        }
    }

    /// Index of `u_d` in the basis the Hamiltonian acts on.
    pub(crate) fn target_index(&self) -> usize {
        match &self.body {
            SchemeBody::Subspace(_) => self.d,
            SchemeBody::Register(_) => (1usize << self.n_qubits) - 1,
            SchemeBody::Product { .. } => 1,
        }
    }

    /// `u_0` in the basis the Hamiltonian acts on.
    pub fn initial_state(&self) -> Option<ComplexVector> {
        self.hamiltonian().map(|h| ComplexVector::basis(h.dim(), 0))
    }

    /// `u_d` in the basis the Hamiltonian acts on.
    pub fn target_state(&self) -> Option<ComplexVector> {
        self.hamiltonian()
            .map(|h| ComplexVector::basis(h.dim(), self.target_index()))
    }

    /// Prepares the time evolution of `u_0` under this scheme.
    pub fn evolution(&self) -> Result<Evolution> {
        match &self.body {
            SchemeBody::Subspace(h) | SchemeBody::Register(h) => Ok(Evolution::Spectral(
                SpectralEvolution::new(h, self.target_index())?,
            )),
            SchemeBody::Product { alphas, theta } => {
                Ok(Evolution::Product(ProductEvolution::new(alphas.clone(), *theta)))
            }
        }
    }

    /// Whether full-register states can be produced for this scheme.
    pub fn has_register_states(&self) -> bool {
        match &self.body {
            SchemeBody::Subspace(_) => self.embedding.is_some(),
            SchemeBody::Register(_) => true,
            SchemeBody::Product { .. } => self.n_qubits <= Limits::DEFAULT.oracle_max_qubits,
        }
    }

    /// Full-register state at time `t`.
    pub fn register_state(&self, evolution: &Evolution, t: f64) -> Result<ComplexVector> {
        match (&self.body, evolution) {
            (SchemeBody::Subspace(_), Evolution::Spectral(ev)) => {
                let basis = self.embedding.as_ref().ok_or(Error::NoEmbedding)?;
                let coeffs = ev.state(t);
                let mut out = ComplexVector::zeros(basis[0].dim());
                for (c, u) in coeffs.amplitudes().iter().zip(basis) {
                    out.add_scaled(*c, u);
                }
                Ok(out)
            }
            (SchemeBody::Register(_), Evolution::Spectral(ev)) => Ok(ev.state(t)),
            (SchemeBody::Product { .. }, Evolution::Product(ev)) => {
                let cap = Limits::DEFAULT.oracle_max_qubits;
                if self.n_qubits > cap {
                    return Err(Error::TooLarge {
                        qubits: self.n_qubits,
                        cap,
                    });
                }
                Ok(product_state(&ev.qubit_amplitudes(t)))
            }
            _ => Err(Error::InvalidArgument(
                "evolution does not belong to this scheme".into(),
            )),
        }
    }
}

/// `⊗_q (a_q |down> + b_q |up>)` with qubit `q` on bit `q`.
pub fn product_state(qubits: &[(C64, C64)]) -> ComplexVector {
    let n = qubits.len();
    let mut amps = vec![crate::numerics::ONE; 1usize << n];
    for (idx, amp) in amps.iter_mut().enumerate() {
        for (q, (a, b)) in qubits.iter().enumerate() {
            *amp *= if idx >> q & 1 == 1 { *b } else { *a };
        }
    }
    ComplexVector::new(amps)
}

/// Returns true iff `1 - |<u_d| e^{-iHT} u_0>| <= tol`.
pub fn check_full_charging(scheme: &RealizedScheme, time: f64, tol: f64) -> Result<bool> {
    let evolution = scheme.evolution()?;
    Ok(1.0 - evolution.pair(time).1.norm() <= tol)
}

/// Ladder coefficients `p_0 .. p_d` sampled on a time grid.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTrace {
    pub times: Vec<f64>,
    pub coeffs: Vec<Vec<C64>>,
}

impl CoefficientTrace {
    /// `|p_j(t)|^2` for one ladder index across the grid.
    pub fn populations(&self, j: usize) -> Vec<f64> {
        self.coeffs.iter().map(|c| c[j].norm_sqr()).collect()
    }
}

/// Samples the ladder state of a subspace or register scheme.
pub fn coefficient_trace(scheme: &RealizedScheme, times: &[f64]) -> Result<CoefficientTrace> {
    let Evolution::Spectral(ev) = scheme.evolution()? else {
        return Err(Error::InvalidArgument(
            "parallel schemes have no ladder coefficients".into(),
        ));
    };
    Ok(CoefficientTrace {
        times: times.to_vec(),
        coeffs: times.iter().map(|&t| ev.state(t).into_amplitudes()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn full_charging_examples() {
        let su2 = build_su2(3, [1.0, 0.0, 0.0], 0.0).unwrap();
        assert!(check_full_charging(&su2, PI, 1e-9).unwrap());
        let t3 = build_tridiag3(3.0, 1.0).unwrap();
        assert!(check_full_charging(&t3, PI / 2.0, 1e-9).unwrap());
        assert!(!check_full_charging(&t3, PI / 4.0, 1e-9).unwrap());
    }

    #[test]
    fn product_state_bit_order() {
        use crate::numerics::{ONE, ZERO};
        // qubit 0 up, qubit 1 down -> index 1
        let s = product_state(&[(ZERO, ONE), (ONE, ZERO)]);
        assert_eq!(s, ComplexVector::basis(4, 1));
    }

    #[test]
    fn spec_dispatch_and_descriptor() {
        let spec = SchemeSpec::Parallel {
            n: 2,
            k: vec![0, 1],
            alpha_base: 1.0,
            theta: 0.0,
        };
        let s = RealizedScheme::build(&spec).unwrap();
        assert_eq!(s.n_qubits, 2);
        assert!(spec.descriptor().starts_with("parallel(n=2,k=[0,1]"));
        let bad = SchemeSpec::Parallel {
            n: 3,
            k: vec![0, 1],
            alpha_base: 1.0,
            theta: 0.0,
        };
        assert!(RealizedScheme::build(&bad).is_err());
    }

    #[test]
    fn with_qubits_embeds_ladder() {
        let s = build_tridiag3(3.0, 1.0).unwrap().with_qubits(6).unwrap();
        let basis = s.embedding.as_ref().unwrap();
        assert_eq!(basis.len(), 4);
        assert_eq!(basis[0], ComplexVector::basis(64, 0));
        assert_eq!(basis[3], ComplexVector::basis(64, 63));
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((crate::numerics::overlap(a, b).unwrap().re - want).abs() < 1e-12);
            }
        }
        assert!(build_tridiag3(3.0, 1.0).unwrap().with_qubits(2).is_err());
        let big = build_tridiag3(3.0, 1.0).unwrap().with_qubits(100).unwrap();
        assert!(big.embedding.is_none());
    }

    #[test]
    fn traces_stay_normalised() {
        let times: Vec<f64> = (0..50).map(|i| 0.13 * i as f64).collect();
        for s in [
            build_su2(5, [0.4, 1.1, 0.0], 0.2).unwrap(),
            build_tridiag3(7.0, 1.0).unwrap(),
            build_tridiag(&[0.3, 1.9, 0.7, 1.1]).unwrap(),
        ] {
            let trace = coefficient_trace(&s, &times).unwrap();
            for c in &trace.coeffs {
                let norm: f64 = c.iter().map(|z| z.norm_sqr()).sum();
                assert!((norm - 1.0).abs() < 1e-9);
            }
        }
        let t = coefficient_trace(&build_tridiag3(3.0, 1.0).unwrap(), &[PI / 2.0]).unwrap();
        assert!((t.populations(3)[0] - 1.0).abs() < 1e-12);
        assert!(coefficient_trace(&build_parallel(&[0, 0], 1.0, 0.0).unwrap(), &times).is_err());
    }
}
