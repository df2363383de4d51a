//! Spin-`d/2` charging ladders.

use super::{RealizedScheme, SchemeBody, SchemeSpec};
use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, C64, I};

/// Spin-`d/2` generators in the ladder basis `u_0 .. u_d` (ascending `J^z`).
#[derive(Clone, Debug)]
pub struct SpinGenerators {
    pub d: usize,
    pub jx: ComplexMatrix,
    pub jy: ComplexMatrix,
    pub jz: ComplexMatrix,
}

/// `f_k = sqrt(k (d - k + 1))` for `k = 1..=d`.
pub fn ladder_factors(d: usize) -> Vec<f64> {
    (1..=d).map(|k| ((k * (d - k + 1)) as f64).sqrt()).collect()
}

pub fn su2_generators(d: usize) -> Result<SpinGenerators> {
    if d == 0 {
        return Err(Error::InvalidArgument("spin ladder needs d >= 1".into()));
    }
    let f = ladder_factors(d);
    let dim = d + 1;
    let mut jx = ComplexMatrix::zeros(dim);
    let mut jy = ComplexMatrix::zeros(dim);
    for (k, fk) in f.iter().enumerate() {
        jx[(k, k + 1)] = C64::new(fk / 2.0, 0.0);
        jx[(k + 1, k)] = C64::new(fk / 2.0, 0.0);
        // (1/2i) * (-f) above, (1/2i) * f below
        jy[(k, k + 1)] = I * (fk / 2.0);
        jy[(k + 1, k)] = -I * (fk / 2.0);
    }
    let half = d as f64 / 2.0;
    let jz = ComplexMatrix::diagonal(&(0..dim).map(|k| k as f64 - half).collect::<Vec<_>>());
    Ok(SpinGenerators { d, jx, jy, jz })
}

/// `(alpha1, alpha2)` after the azimuthal rotation `e^{-i theta Jz} (.) e^{i theta Jz}`.
fn rotate_xy(alpha: [f64; 3], theta: f64) -> (f64, f64) {
    let (s, c) = theta.sin_cos();
    (alpha[0] * c - alpha[1] * s, alpha[0] * s + alpha[1] * c)
}

/// Builds `alpha1 Jx + alpha2 Jy + alpha3 Jz + (d/2)|alpha|` on the ladder,
/// with `(alpha1, alpha2)` rotated about z by `theta`.
pub fn build_su2(d: usize, alpha: [f64; 3], theta: f64) -> Result<RealizedScheme> {
    let gens = su2_generators(d)?;
    let norm = alpha.iter().map(|a| a * a).sum::<f64>().sqrt();
    if !(norm > 0.0) {
        return Err(Error::ZeroField);
    }
    let (a1, a2) = rotate_xy(alpha, theta);
    let h = &(&(&gens.jx.scale_real(a1) + &gens.jy.scale_real(a2)) + &gens.jz.scale_real(alpha[2]))
        + &ComplexMatrix::identity(d + 1).scale_real(d as f64 * norm / 2.0);
    let capable = alpha[2].abs() <= 1e-12 * norm;
    Ok(RealizedScheme {
        spec: SchemeSpec::Su2 {
            d,
            alpha1: alpha[0],
            alpha2: alpha[1],
            alpha3: alpha[2],
            theta,
        },
        n_qubits: d,
        d,
        body: SchemeBody::Subspace(h),
        embedding: None,
        fully_charging_capable: capable,
        mirror_symmetric: None,
        closed_form_time: capable.then(|| std::f64::consts::PI / norm),
    })
}

/// Azimuthal phase entering the closed-form coefficients of [`build_su2`].
pub fn su2_phase(alpha: [f64; 3], theta: f64) -> f64 {
    let (a1, a2) = rotate_xy(alpha, theta);
    a2.atan2(a1)
}

/// `p_j(t) = sqrt(C(d,j)) e^{-i theta j} (-i sin(|alpha| t/2))^j cos(|alpha| t/2)^(d-j)`.
pub fn su2_coefficients(d: usize, alpha_norm: f64, theta: f64, t: f64) -> Vec<C64> {
    let x = alpha_norm * t / 2.0;
    let (s, c) = x.sin_cos();
    let mut binom = 1.0f64;
    (0..=d)
        .map(|j| {
            if j > 0 {
                binom *= (d - j + 1) as f64 / j as f64;
            }
            let mag = binom.sqrt() * s.powi(j as i32) * c.powi((d - j) as i32);
            C64::from_polar(1.0, -theta * j as f64) * (-I).powu(j as u32) * mag
        })
        .collect()
}
