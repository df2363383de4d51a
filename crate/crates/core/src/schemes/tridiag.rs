//! Zero-diagonal tridiagonal ladders and the four-level family.

use std::collections::HashSet;
use std::f64::consts::PI;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{RealizedScheme, SchemeBody, SchemeSpec};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, C64};

pub fn is_mirror_symmetric(b: &[f64], tol: f64) -> bool {
    let d = b.len();
    (0..d).all(|k| (b[k] - b[d - 1 - k]).abs() <= tol * b[k].abs().max(1.0))
}

pub fn build_tridiag(b: &[f64]) -> Result<RealizedScheme> {
    if b.is_empty() {
        return Err(Error::InvalidArgument("tridiagonal ladder needs at least one coupling".into()));
    }
    if let Some((index, &value)) = b.iter().enumerate().find(|(_, &x)| !(x > 0.0)) {
        return Err(Error::NonPositiveCoupling {
            index: index + 1,
            value,
        });
    }
    let d = b.len();
    let h = ComplexMatrix::tridiagonal(&vec![0.0; d + 1], b);
    let mirror = is_mirror_symmetric(b, Tolerances::DEFAULT.mirror);
    Ok(RealizedScheme {
        spec: SchemeSpec::Tridiag { b: b.to_vec() },
        n_qubits: d,
        d,
        body: SchemeBody::Subspace(h),
        embedding: None,
        fully_charging_capable: mirror,
        mirror_symmetric: Some(mirror),
        closed_form_time: None,
    })
}

/// `(sqrt(l1 l2), l1 - l2, sqrt(l1 l2))`.
pub fn tridiag3_couplings(lambda1: f64, lambda2: f64) -> Result<[f64; 3]> {
    if !(lambda2 > 0.0 && lambda1 > lambda2) {
        return Err(Error::BadOrdering { lambda1, lambda2 });
    }
    let outer = (lambda1 * lambda2).sqrt();
    Ok([outer, lambda1 - lambda2, outer])
}

pub fn build_tridiag3(lambda1: f64, lambda2: f64) -> Result<RealizedScheme> {
    let b = tridiag3_couplings(lambda1, lambda2)?;
    let mut scheme = build_tridiag(&b)?;
    scheme.spec = SchemeSpec::Tridiag3 { lambda1, lambda2 };
    Ok(scheme)
}

/// Closed-form `e^{-i H t} u_0` for the four-level family.
pub fn tridiag3_analytic_state(lambda1: f64, lambda2: f64, t: f64) -> [C64; 4] {
    let (l1, l2) = (lambda1, lambda2);
    let s = l1 + l2;
    let g = (l1 * l2).sqrt();
    let (s1, c1) = (l1 * t).sin_cos();
    let (s2, c2) = (l2 * t).sin_cos();
    [
        C64::new((l2 * c1 + l1 * c2) / s, 0.0),
        C64::new(0.0, -g * (s1 + s2) / s),
        C64::new(g * (c1 - c2) / s, 0.0),
        C64::new(0.0, (l1 * s2 - l2 * s1) / s),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RatioCase {
    /// `sin(l2 T) = -sin(l1 T) = 1`.
    #[serde(rename = "i")]
    First,
    /// `sin(l1 T) = -sin(l2 T) = 1`.
    #[serde(rename = "ii")]
    Second,
}

impl RatioCase {
    pub fn tag(self) -> &'static str {
        match self {
            RatioCase::First => "i",
            RatioCase::Second => "ii",
        }
    }
}

/// One admissible `lambda1 / lambda2` ratio with `lambda2 = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibleRatio {
    pub case: RatioCase,
    pub m: u32,
    pub n: u32,
    /// Reduced ratio `lambda1 / lambda2`.
    pub k: Ratio<i64>,
    pub lambda1: f64,
    pub lambda2: f64,
    /// `T / pi` from the closed form.
    pub time_over_pi: Ratio<i64>,
    pub time: f64,
}

/// Enumerates both ratio families for `0 <= m <= m_max`, `0 <= n <= n_max`,
/// keeping `k > 1` and dropping repeated `(k, T)` pairs.
pub fn tridiag3_admissible_ratios(m_max: u32, n_max: u32) -> Vec<AdmissibleRatio> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for case in [RatioCase::First, RatioCase::Second] {
        for m in 0..=m_max {
            for n in 0..=n_max {
                let up = 4 * m as i64 + 1;
                let down = 4 * n as i64 - 1;
                let (num, den, t2) = match case {
                    RatioCase::First => (down, up, up),
                    RatioCase::Second => (up, down, down),
                };
                if den <= 0 || num <= den {
                    continue;
                }
                let k = Ratio::new(num, den);
                let time_over_pi = Ratio::new(t2, 2);
                if !seen.insert((k, time_over_pi)) {
                    continue;
                }
                out.push(AdmissibleRatio {
                    case,
                    m,
                    n,
                    k,
                    lambda1: *k.numer() as f64 / *k.denom() as f64,
                    lambda2: 1.0,
                    time_over_pi,
                    time: PI * t2 as f64 / 2.0,
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumCondition {
    pub holds: bool,
    /// Nearest integers `m_k`.
    pub m: Vec<i64>,
    pub phi0: f64,
}

/// Checks `E_k T = (2 m_k - k) pi + phi0` with `phi0 = E_0 T`.
pub fn spectrum_condition_check(eigs: &[f64], time: f64, tol: f64) -> SpectrumCondition {
    let phi0 = eigs.first().map_or(0.0, |e| e * time);
    let mut holds = true;
    let m = eigs
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let r = (e * time - phi0 + k as f64 * PI) / (2.0 * PI);
            let nearest = r.round();
            if (r - nearest).abs() > tol {
                holds = false;
            }
            nearest as i64
        })
        .collect();
    SpectrumCondition { holds, m, phi0 }
}
