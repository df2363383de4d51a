//! Browser bindings for the `www/` page.
//!
//! Each export returns a JSON string; the plain functions behind them are
//! ordinary Rust and are tested natively.

use std::f64::consts::PI;

use serde::Serialize;
use wasm_bindgen::prelude::*;

use qbcharge::entdepth::{exact_depth, max_pair_product_of, pair_product, thm1_bound};
use qbcharge::metrics::{charging_time, conjecture_rhs, scheme_qsl, search_horizon, RateResult};
use qbcharge::numerics::time_grid;
use qbcharge::schemes::{build_tridiag3, coefficient_trace, hybrid_evolved, HYBRID_EFFECTIVE_FIELD};
use qbcharge::{Error, Result, Tolerances};

/// Largest register the page asks the oracle about.
pub const DEMO_ORACLE_QUBITS: usize = 10;

#[derive(Serialize)]
pub struct FourLevelTrace {
    pub charging_time: f64,
    pub tau: f64,
    pub eta: f64,
    pub conj_rhs: usize,
    pub lb_max: usize,
    pub t_star: f64,
    pub times: Vec<f64>,
    /// `|p_j(t)|^2`, one series per ladder level.
    pub populations: [Vec<f64>; 4],
    /// `|p_0(t) p_3(t)|`.
    pub pair_product: Vec<f64>,
}

/// Populations of the four-level ladder over `[0, T]`, plus its rate and
/// depth certificate on an `n_qubits` battery.
pub fn four_level(lambda1: f64, lambda2: f64, n_qubits: usize, points: usize) -> Result<FourLevelTrace> {
    let mut scheme = build_tridiag3(lambda1, lambda2)?;
    scheme.n_qubits = n_qubits.max(1);
    let evolution = scheme.evolution()?;
    let time = charging_time(&scheme, Some(search_horizon(&evolution, None)), Tolerances::DEFAULT.full_charging)?;
    let tau = scheme_qsl(&scheme)?.tau;
    let rate = RateResult::new(scheme.n_qubits, time, tau)?;
    let cert = max_pair_product_of(&evolution, time, 4096, scheme.n_qubits);

    let times = time_grid(time, points.clamp(2, 4096));
    let trace = coefficient_trace(&scheme, &times)?;
    let populations = [0, 1, 2, 3].map(|j| trace.populations(j));
    let pair_product = trace.coeffs.iter().map(|c| (c[0] * c[3]).norm()).collect();
    Ok(FourLevelTrace {
        charging_time: time,
        tau,
        eta: rate.eta,
        conj_rhs: conjecture_rhs(scheme.n_qubits, rate.eta),
        lb_max: cert.bound,
        t_star: cert.t_star,
        times,
        populations,
        pair_product,
    })
}

#[derive(Serialize)]
pub struct BoundCurve {
    pub products: Vec<f64>,
    pub bounds: Vec<usize>,
}

/// Pair bound as a function of `|p_0 p_0bar|` on a log-spaced grid down to `2^-N`.
pub fn bound_curve(n_qubits: usize, points: usize) -> BoundCurve {
    let n = n_qubits.max(1);
    let points = points.clamp(2, 4096);
    let lo = -(n as f64 + 1.0);
    let products: Vec<f64> = (0..points)
        .map(|i| 2f64.powf(lo + (-1.0 - lo) * i as f64 / (points - 1) as f64))
        .collect();
    let bounds = products.iter().map(|&p| thm1_bound(n, p)).collect();
    BoundCurve { products, bounds }
}

#[derive(Serialize)]
pub struct HybridDepth {
    pub expected: usize,
    pub times: Vec<f64>,
    pub depth: Vec<usize>,
    pub lower_bound: Vec<usize>,
}

/// Exact depth and pair bound along the block-flip trajectory.
pub fn hybrid_depth(n: usize, d: usize, points: usize) -> Result<HybridDepth> {
    if n > DEMO_ORACLE_QUBITS {
        return Err(Error::TooLarge {
            qubits: n,
            cap: DEMO_ORACLE_QUBITS,
        });
    }
    let times = time_grid(PI / HYBRID_EFFECTIVE_FIELD, points.clamp(2, 256));
    let mut depth = Vec::with_capacity(times.len());
    let mut lower_bound = Vec::with_capacity(times.len());
    for &t in &times {
        let psi = hybrid_evolved(n, d, 0.0, HYBRID_EFFECTIVE_FIELD, t)?;
        depth.push(exact_depth(&psi, Tolerances::DEFAULT.purity)?.depth);
        lower_bound.push(thm1_bound(n, pair_product(&psi, None)?.product));
    }
    Ok(HybridDepth {
        expected: n.div_ceil(d),
        times,
        depth,
        lower_bound,
    })
}

fn to_js<T: Serialize>(value: Result<T>) -> std::result::Result<String, JsError> {
    let value = value.map_err(|e| JsError::new(&e.to_string()))?;
    qbcharge::io::to_json(&value).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = fourLevelTrace)]
pub fn four_level_trace(lambda1: f64, lambda2: f64, n_qubits: usize, points: usize) -> std::result::Result<String, JsError> {
    to_js(four_level(lambda1, lambda2, n_qubits, points))
}

#[wasm_bindgen(js_name = boundCurve)]
pub fn bound_curve_json(n_qubits: usize, points: usize) -> std::result::Result<String, JsError> {
    to_js(Ok(bound_curve(n_qubits, points)))
}

#[wasm_bindgen(js_name = hybridDepth)]
pub fn hybrid_depth_json(n: usize, d: usize, points: usize) -> std::result::Result<String, JsError> {
    to_js(hybrid_depth(n, d, points))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_level_trace_charges() {
        let t = four_level(3.0, 1.0, 100, 201).unwrap();
        assert!((t.charging_time - PI / 2.0).abs() < 1e-10);
        assert_eq!((t.conj_rhs, t.lb_max), (34, 34));
        assert!((t.populations[3][200] - 1.0).abs() < 1e-9);
        assert!((t.populations[0][0] - 1.0).abs() < 1e-15);
        for i in 0..201 {
            let total: f64 = t.populations.iter().map(|p| p[i]).sum();
            assert!((total - 1.0).abs() < 1e-9);
        }
        assert!(four_level(1.0, 3.0, 10, 10).is_err());
    }

    #[test]
    fn bound_curve_is_monotone() {
        let c = bound_curve(12, 300);
        assert_eq!(c.bounds.first(), Some(&1));
        assert_eq!(c.bounds.last(), Some(&12));
        assert!(c.bounds.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn hybrid_depth_reaches_block_size() {
        let h = hybrid_depth(6, 2, 33).unwrap();
        assert_eq!(h.expected, 3);
        assert_eq!(h.depth[0], 1);
        assert_eq!(h.depth.iter().max(), Some(&3));
        assert_eq!(h.lower_bound.iter().max(), Some(&3));
        assert!(h.lower_bound.iter().zip(&h.depth).all(|(b, d)| b <= d));
        assert!(hybrid_depth(11, 2, 8).is_err());
    }
}
