use std::f64::consts::PI;

use serde::Serialize;

use super::Status;
use crate::entdepth::{
    exact_depth, max_pair_product_of, pair_product, scheme_charging_time, thm1_bound,
};
use crate::error::{Error, Result};
use crate::io::ser_f64;
use crate::metrics::{conjecture_rhs, scheme_qsl, RateResult};
use crate::numerics::search::time_grid;
use crate::schemes::hybrid::{build_hybrid, hybrid_evolved, HYBRID_EFFECTIVE_FIELD};
use crate::schemes::tridiag::{build_tridiag3, tridiag3_admissible_ratios, AdmissibleRatio, RatioCase};

/// One admissible four-level ratio evaluated on an `N`-qubit battery.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub case: RatioCase,
    pub m: u32,
    pub n: u32,
    pub k_num: i64,
    pub k_den: i64,
    #[serde(serialize_with = "ser_f64")]
    pub lambda1: f64,
    #[serde(serialize_with = "ser_f64")]
    pub lambda2: f64,
    /// Numerically minimal charging time.
    #[serde(rename = "T", serialize_with = "ser_f64")]
    pub time: f64,
    #[serde(rename = "tau_qsl", serialize_with = "ser_f64")]
    pub tau: f64,
    #[serde(serialize_with = "ser_f64")]
    pub eta: f64,
    #[serde(serialize_with = "ser_f64")]
    pub gamma: f64,
    pub conj_rhs: usize,
    pub lb_max: usize,
    #[serde(serialize_with = "ser_f64")]
    pub t_star: f64,
    pub status: Status,
    #[serde(rename = "N")]
    pub n_qubits: usize,
    /// Charging time predicted by the ratio family.
    #[serde(rename = "T_closed_form", serialize_with = "ser_f64")]
    pub closed_form_time: f64,
    /// Whether the numeric minimum agrees with the closed form to `1e-8 T`.
    #[serde(rename = "t_closed_form_ok")]
    pub closed_form_ok: bool,
}

fn sweep_row(ratio: &AdmissibleRatio, n_qubits: usize, grid: usize) -> Result<SweepRow> {
    let mut scheme = build_tridiag3(ratio.lambda1, ratio.lambda2)?;
    scheme.n_qubits = n_qubits;
    scheme.closed_form_time = Some(ratio.time);
    let evolution = scheme.evolution()?;
    let time = scheme_charging_time(&scheme, &evolution)?;
    let tau = scheme_qsl(&scheme)?.tau;
    let rate = RateResult::new(n_qubits, time, tau)?;
    let conj_rhs = conjecture_rhs(n_qubits, rate.eta);
    let cert = max_pair_product_of(&evolution, time, grid, n_qubits);
    Ok(SweepRow {
        case: ratio.case,
        m: ratio.m,
        n: ratio.n,
        k_num: *ratio.k.numer(),
        k_den: *ratio.k.denom(),
        lambda1: ratio.lambda1,
        lambda2: ratio.lambda2,
        time,
        tau,
        eta: rate.eta,
        gamma: rate.gamma,
        conj_rhs,
        lb_max: cert.bound,
        t_star: cert.t_star,
        status: Status::classify(conj_rhs, cert.bound, None),
        n_qubits,
        closed_form_time: ratio.time,
        closed_form_ok: (time - ratio.time).abs() <= 1e-8 * ratio.time,
    })
}

/// Evaluates every admissible ratio with `m <= m_max`, `n <= n_max` on an
/// `N`-qubit battery; rows keep the enumeration order.
pub fn figure_sweep(n_qubits: usize, m_max: u32, n_max: u32, grid: usize) -> Result<Vec<SweepRow>> {
    if n_qubits < 2 {
        return Err(Error::InvalidArgument(format!(
            "the sweep needs at least 2 qubits, got {n_qubits}"
        )));
    }
    let ratios = tridiag3_admissible_ratios(m_max, n_max);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        ratios.par_iter().map(|r| sweep_row(r, n_qubits, grid)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        ratios.iter().map(|r| sweep_row(r, n_qubits, grid)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Thm2Result {
    #[serde(rename = "N")]
    pub n: usize,
    pub d: usize,
    /// `ceil(N/d)`.
    pub expected: usize,
    pub lb_max: usize,
    pub exact_max: usize,
    pub pass: bool,
}

/// Runs the block-flip scheme over `[0, T]` and compares both the exact depth
/// and the lower bound with `ceil(N/d)`.
pub fn thm2_check(n: usize, d: usize, grid: usize, tol: f64) -> Result<Thm2Result> {
    let scheme = build_hybrid(n, d, 0.0)?;
    let evolution = scheme.evolution()?;
    let time = PI / HYBRID_EFFECTIVE_FIELD;
    let cert = max_pair_product_of(&evolution, time, grid.max(2), n);

    let mut times = time_grid(time, grid);
    times.push(cert.t_star);
    let (mut exact_max, mut product) = (0, cert.product);
    for &t in &times {
        let psi = hybrid_evolved(n, d, 0.0, HYBRID_EFFECTIVE_FIELD, t)?;
        exact_max = exact_max.max(exact_depth(&psi, tol)?.depth);
        product = product.max(pair_product(&psi, None)?.product);
    }
    let expected = n.div_ceil(d);
    let lb_max = thm1_bound(n, product);
    Ok(Thm2Result {
        n,
        d,
        expected,
        lb_max,
        exact_max,
        pass: exact_max == expected && lb_max == expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_examples() {
        let rows = figure_sweep(100, 0, 2, 4096).unwrap();
        let k3 = rows.iter().find(|r| (r.k_num, r.k_den) == (3, 1)).unwrap();
        assert_eq!((k3.lb_max, k3.conj_rhs), (34, 34));
        assert!(k3.closed_form_ok);
        let k7 = rows.iter().find(|r| (r.k_num, r.k_den) == (7, 1)).unwrap();
        assert_eq!((k7.lb_max, k7.conj_rhs), (100, 15));
        assert!(rows.iter().all(|r| r.lb_max >= r.conj_rhs));
        assert!(figure_sweep(100, 0, 0, 64).unwrap().is_empty());
        assert!(figure_sweep(1, 1, 1, 64).is_err());
    }

    #[test]
    fn non_minimal_closed_form_is_flagged() {
        // case (ii) with m = 2, n = 1 is the k = 3 ladder again, predicted at 3 pi / 2
        let rows = figure_sweep(20, 2, 1, 1024).unwrap();
        let row = rows
            .iter()
            .find(|r| r.case == RatioCase::Second && (r.m, r.n) == (2, 1))
            .unwrap();
        assert_eq!((row.k_num, row.k_den), (3, 1));
        assert!(!row.closed_form_ok);
        assert!((row.time - PI / 2.0).abs() < 1e-10);
        assert!(rows.iter().filter(|r| r.case == RatioCase::First).all(|r| r.closed_form_ok));
    }

    #[test]
    fn thm2_examples() {
        for (n, d, want) in [(6, 2, 3), (5, 2, 3), (4, 4, 1), (1, 1, 1), (7, 3, 3)] {
            let r = thm2_check(n, d, 64, crate::Tolerances::DEFAULT.purity).unwrap();
            assert_eq!(r.expected, want);
            assert!(r.pass, "{r:?}");
        }
    }
}
