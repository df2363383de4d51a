//! Fully parallel (non-entangling) charging.

use num_integer::Integer;

use super::{RealizedScheme, SchemeBody, SchemeSpec};
use crate::error::{Error, Result};
use crate::numerics::C64;

/// `alpha_j = alpha_base (1 + 4 k_j) / (1 + 4 k_1)`.
pub fn parallel_alphas(k: &[u32], alpha_base: f64) -> Vec<f64> {
    let first = 1.0 + 4.0 * k[0] as f64;
    k.iter()
        .map(|&kj| alpha_base * (1.0 + 4.0 * kj as f64) / first)
        .collect()
}

/// `gcd_j (1 + 4 k_j)`; equals one for the lists derived from a minimal charging time.
pub fn odd_gcd(k: &[u32]) -> u64 {
    k.iter()
        .map(|&kj| 1 + 4 * kj as u64)
        .fold(0u64, |g, x| g.gcd(&x))
}

/// Earliest time at which every qubit is flipped (up to a global phase).
pub fn parallel_min_time(k: &[u32], alpha_base: f64) -> f64 {
    let unit = alpha_base / (1.0 + 4.0 * k[0] as f64);
    std::f64::consts::PI / (unit * odd_gcd(k) as f64)
}

pub fn build_parallel(k: &[u32], alpha_base: f64, theta: f64) -> Result<RealizedScheme> {
    if k.is_empty() {
        return Err(Error::InvalidArgument("parallel scheme needs at least one qubit".into()));
    }
    if !(alpha_base > 0.0) || !alpha_base.is_finite() {
        return Err(Error::InvalidArgument(format!("alpha_base must be positive, got {alpha_base}")));
    }
    let n = k.len();
    Ok(RealizedScheme {
        spec: SchemeSpec::Parallel {
            n,
            k: k.to_vec(),
            alpha_base,
            theta,
        },
        n_qubits: n,
        d: n,
        body: SchemeBody::Product {
            alphas: parallel_alphas(k, alpha_base),
            theta,
        },
        embedding: None,
        fully_charging_capable: true,
        mirror_symmetric: None,
        closed_form_time: Some(parallel_min_time(k, alpha_base)),
    })
}

/// Per-qubit `(a_j, b_j) = (cos(alpha_j t/2), -i e^{-i theta} sin(alpha_j t/2))`.
pub fn parallel_amplitudes(alphas: &[f64], theta: f64, t: f64) -> Vec<(C64, C64)> {
    super::ProductEvolution::new(alphas.to_vec(), theta).qubit_amplitudes(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::I;
    use std::f64::consts::PI;

    #[test]
    fn alpha_examples() {
        assert_eq!(parallel_alphas(&[0, 0, 0, 0], 1.3), vec![1.3; 4]);
        assert_eq!(parallel_alphas(&[0, 1], 1.0), vec![1.0, 5.0]);
        let s = build_parallel(&[0], 2.0, 0.0).unwrap();
        assert_eq!(s.n_qubits, 1);
        assert!((s.closed_form_time.unwrap() - PI / 2.0).abs() < 1e-15);
        assert!(build_parallel(&[], 1.0, 0.0).is_err());
        assert!(build_parallel(&[0], 0.0, 0.0).is_err());
    }

    #[test]
    fn amplitude_examples() {
        let a = parallel_amplitudes(&[1.0, 1.0, 1.0], 0.3, 0.0);
        assert!(a.iter().all(|(x, y)| *x == C64::new(1.0, 0.0) && y.norm() == 0.0));

        let theta = 0.7;
        let a = parallel_amplitudes(&[1.0; 3], theta, PI);
        let want = -I * C64::from_polar(1.0, -theta);
        for (x, y) in a {
            assert!(x.norm() < 1e-15);
            assert!((y - want).norm() < 1e-15);
        }

        for n in 1..=8 {
            let a = parallel_amplitudes(&vec![1.0; n], 0.0, PI / 2.0);
            let p0: C64 = a.iter().map(|p| p.0).product();
            let pd: C64 = a.iter().map(|p| p.1).product();
            assert!(((p0 * pd).norm() - 2f64.powi(-(n as i32))).abs() < 1e-15);
        }
    }

    #[test]
    fn minimal_time_uses_common_odd_factor() {
        assert!((parallel_min_time(&[0, 1], 1.0) - PI).abs() < 1e-15);
        // 5 and 5: both qubits flip at pi / alpha_base already
        assert!((parallel_min_time(&[1, 1], 1.0) - PI).abs() < 1e-15);
        assert_eq!(odd_gcd(&[2, 5]), 3);
    }
}
