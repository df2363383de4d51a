//! Entanglement-depth certification.
//!
//! A locally orthonormal pair `(v_0, v_0bar)` bounds the depth of any state
//! from below through `|<v_0|psi><v_0bar|psi>|`; [`exact_depth`] computes the
//! depth itself for small registers.

mod oracle;

use serde::Serialize;

pub use oracle::{exact_depth, pure_subsets, reduced_purity, OracleResult};

use crate::config::{snap_to_integer, Tolerances};
use crate::error::{Error, Result};
use crate::metrics::{charging_time, search_horizon};
use crate::numerics::search::{local_maxima, refine_maximum, time_grid};
use crate::numerics::{ComplexVector, C64, ONE, ZERO};
use crate::schemes::{Evolution, RealizedScheme};

/// `ceil(N / floor(log2(1/product)))`, with the product clamped to `1/2`.
pub fn thm1_bound(n_qubits: usize, product: f64) -> usize {
    if !(product > 0.0) || n_qubits == 0 {
        return 1;
    }
    let p = product.min(0.5);
    let levels = snap_to_integer((1.0 / p).log2(), Tolerances::DEFAULT.integer_snap).floor();
    if levels >= n_qubits as f64 {
        return 1;
    }
    n_qubits.div_ceil(levels.max(1.0) as usize)
}

/// Per-qubit orthonormal pair `(nu_0, nu_0bar)` in the `(down, up)` basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalPair {
    pub zero: [C64; 2],
    pub bar: [C64; 2],
}

impl LocalPair {
    /// `(|down>, |up>)`.
    pub const Z: LocalPair = LocalPair {
        zero: [ONE, ZERO],
        bar: [ZERO, ONE],
    };

    fn is_orthonormal(&self, tol: f64) -> bool {
        let dot = |a: &[C64; 2], b: &[C64; 2]| a[0].conj() * b[0] + a[1].conj() * b[1];
        (dot(&self.zero, &self.zero).re - 1.0).abs() <= tol
            && (dot(&self.bar, &self.bar).re - 1.0).abs() <= tol
            && dot(&self.zero, &self.bar).norm() <= tol
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PairCoefficients {
    pub p0: C64,
    pub pbar: C64,
    /// `|p0 pbar|`.
    pub product: f64,
}

impl PairCoefficients {
    pub fn new(p0: C64, pbar: C64) -> Self {
        Self {
            p0,
            pbar,
            product: (p0 * pbar).norm(),
        }
    }
}

/// Number of qubits of a full-register vector.
pub(crate) fn register_qubits(psi: &ComplexVector) -> Result<usize> {
    let dim = psi.dim();
    if !dim.is_power_of_two() || dim < 2 {
        return Err(Error::InvalidArgument(format!(
            "register states need a power-of-two dimension >= 2, got {dim}"
        )));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Overlaps of a register state with the pair `(⊗nu_0, ⊗nu_0bar)`; `None`
/// selects the z-basis pair.
pub fn pair_product(psi: &ComplexVector, pair: Option<&[LocalPair]>) -> Result<PairCoefficients> {
    psi.check_state()?;
    let n = register_qubits(psi)?;
    let amps = psi.amplitudes();
    let Some(pair) = pair else {
        return Ok(PairCoefficients::new(amps[0], amps[amps.len() - 1]));
    };
    if pair.len() != n {
        return Err(Error::DimMismatch {
            expected: n,
            got: pair.len(),
        });
    }
    let tol = Tolerances::DEFAULT.pair_orthonormal;
    if let Some(qubit) = pair.iter().position(|p| !p.is_orthonormal(tol)) {
        return Err(Error::PairNotOrthonormal { qubit });
    }
    let (mut p0, mut pbar) = (ZERO, ZERO);
    for (idx, a) in amps.iter().enumerate() {
        let (mut w0, mut wbar) = (ONE, ONE);
        for (q, lp) in pair.iter().enumerate() {
            let bit = idx >> q & 1;
            w0 *= lp.zero[bit].conj();
            wbar *= lp.bar[bit].conj();
        }
        p0 += w0 * a;
        pbar += wbar * a;
    }
    Ok(PairCoefficients::new(p0, pbar))
}

/// Best lower bound along a charging trajectory.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DepthCertificate {
    pub bound: usize,
    pub product: f64,
    pub t_star: f64,
    pub n_qubits: usize,
    /// Charging time the scan ran up to.
    #[serde(rename = "T")]
    pub time: f64,
}

/// Maximises `|p_0(t) p_d(t)|` on `[0, time]`: grid scan, then bisection on
/// the derivative around every sampled local maximum.
pub fn max_pair_product_of(
    evolution: &Evolution,
    time: f64,
    grid: usize,
    n_qubits: usize,
) -> DepthCertificate {
    let product = |t: f64| {
        let (p0, pd) = evolution.pair(t);
        (p0 * pd).norm()
    };
    let slope = |t: f64| evolution.pair_with_derivative(t).product_slope();
    let times = time_grid(time, grid);
    let samples: Vec<f64> = times.iter().map(|&t| product(t)).collect();
    let (mut t_star, mut best) = (0.0, samples[0]);
    for i in local_maxima(&samples) {
        let lo = times[i.saturating_sub(1)];
        let hi = times[(i + 1).min(times.len() - 1)];
        let t = refine_maximum(|t| product(t).powi(2), slope, lo, hi);
        let (t, p) = [(times[i], samples[i]), (t, product(t))]
            .into_iter()
            .fold((times[i], f64::NEG_INFINITY), |acc, c| if c.1 > acc.1 { c } else { acc });
        if p > best {
            best = p;
            t_star = t;
        }
    }
    DepthCertificate {
        bound: thm1_bound(n_qubits, best),
        product: best,
        t_star,
        n_qubits,
        time,
    }
}

/// Charging time of a scheme with the report search horizon.
pub(crate) fn scheme_charging_time(scheme: &RealizedScheme, evolution: &Evolution) -> Result<f64> {
    let horizon = search_horizon(evolution, scheme.closed_form_time);
    charging_time(scheme, Some(horizon), Tolerances::DEFAULT.full_charging)
}

/// Theorem-1 certificate of a fully charging scheme over `[0, T]`.
pub fn max_pair_product(scheme: &RealizedScheme, grid: usize) -> Result<DepthCertificate> {
    let evolution = scheme.evolution()?;
    let time = scheme_charging_time(scheme, &evolution)?;
    Ok(max_pair_product_of(&evolution, time, grid, scheme.n_qubits))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DepthMode {
    /// Theorem-1 lower bound.
    Lb,
    /// Exact oracle on embedded register states.
    Exact,
}

/// Largest depth reached on `[0, T]`, either bounded from below or exact.
pub fn resource_depth(scheme: &RealizedScheme, grid: usize, tol: f64, mode: DepthMode) -> Result<usize> {
    match mode {
        DepthMode::Lb => Ok(max_pair_product(scheme, grid)?.bound),
        DepthMode::Exact => {
            if !scheme.has_register_states() {
                return Err(Error::NoEmbedding);
            }
            let evolution = scheme.evolution()?;
            let time = scheme_charging_time(scheme, &evolution)?;
            exact_depth_along(scheme, &evolution, &time_grid(time, grid), tol)
        }
    }
}

/// Maximum oracle depth over the given times.
pub(crate) fn exact_depth_along(
    scheme: &RealizedScheme,
    evolution: &Evolution,
    times: &[f64],
    tol: f64,
) -> Result<usize> {
    let mut depth = 0;
    for &t in times {
        let psi = scheme.register_state(evolution, t)?;
        depth = depth.max(exact_depth(&psi, tol)?.depth);
        if depth == scheme.n_qubits {
            break;
        }
    }
    Ok(depth)
}
