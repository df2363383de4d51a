//! Per-scheme reports, the conjecture audit, the four-level ratio sweep and
//! the block-flip tightness check.

mod sweep;

use std::collections::BTreeMap;

use serde::Serialize;

pub use sweep::{figure_sweep, thm2_check, SweepRow, Thm2Result};

use crate::config::{Limits, Tolerances};
use crate::entdepth::{exact_depth_along, max_pair_product_of, scheme_charging_time};
use crate::error::Result;
use crate::io::ser_f64;
use crate::metrics::{conjecture_rhs, scheme_qsl, RateResult};
use crate::numerics::search::time_grid;
use crate::schemes::RealizedScheme;

/// Outcome of checking `Ent >= ceil(N eta^2)` for one scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    VerifiedByLb,
    VerifiedByOracle,
    Undetermined,
    Falsified,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::VerifiedByLb => "verified_by_lb",
            Status::VerifiedByOracle => "verified_by_oracle",
            Status::Undetermined => "undetermined",
            Status::Falsified => "falsified",
        }
    }

    /// A lower bound below the target never falsifies; only the exact depth can.
    pub fn classify(conj_rhs: usize, lb_max: usize, exact: Option<usize>) -> Status {
        match exact {
            Some(e) if e < conj_rhs => Status::Falsified,
            _ if lb_max >= conj_rhs => Status::VerifiedByLb,
            Some(_) => Status::VerifiedByOracle,
            None => Status::Undetermined,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReportOptions {
    /// Points of the pair-product scan on `[0, T]`.
    pub grid: usize,
    /// Points of the oracle scan on `[0, T]`.
    pub oracle_grid: usize,
    /// Purity tolerance of the oracle.
    pub purity_tol: f64,
    /// Run the exact oracle when the register is small enough.
    pub oracle: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            grid: 4096,
            oracle_grid: 64,
            purity_tol: Tolerances::DEFAULT.purity,
            oracle: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChargeReport {
    pub scheme: String,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "T", serialize_with = "ser_f64")]
    pub time: f64,
    #[serde(serialize_with = "ser_f64")]
    pub tau: f64,
    #[serde(serialize_with = "ser_f64")]
    pub eta: f64,
    #[serde(serialize_with = "ser_f64")]
    pub gamma: f64,
    pub conj_rhs: usize,
    pub lb_max: usize,
    #[serde(serialize_with = "ser_f64")]
    pub t_star: f64,
    pub exact_depth: Option<usize>,
    pub status: Status,
    pub ml_convention: &'static str,
}

pub const ML_CONVENTION: &str = "ground-shifted";

/// Charging time, rate, depth certificate and audit status of a scheme.
pub fn report(scheme: &RealizedScheme, opts: &ReportOptions) -> Result<ChargeReport> {
    let evolution = scheme.evolution()?;
    let time = scheme_charging_time(scheme, &evolution)?;
    let tau = scheme_qsl(scheme)?.tau;
    let rate = RateResult::new(scheme.n_qubits, time, tau)?;
    let conj_rhs = conjecture_rhs(scheme.n_qubits, rate.eta);
    let cert = max_pair_product_of(&evolution, time, opts.grid, scheme.n_qubits);

    let exact_depth = if opts.oracle
        && scheme.n_qubits <= Limits::DEFAULT.report_oracle_qubits
        && scheme.has_register_states()
    {
        let mut times = time_grid(time, opts.oracle_grid);
        times.push(cert.t_star);
        Some(exact_depth_along(scheme, &evolution, &times, opts.purity_tol)?)
    } else {
        None
    };

    Ok(ChargeReport {
        scheme: scheme.spec.descriptor(),
        n: scheme.n_qubits,
        time,
        tau,
        eta: rate.eta,
        gamma: rate.gamma,
        conj_rhs,
        lb_max: cert.bound,
        t_star: cert.t_star,
        exact_depth,
        status: Status::classify(conj_rhs, cert.bound, exact_depth),
        ml_convention: ML_CONVENTION,
    })
}

/// Count of each status.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AuditSummary {
    pub total: usize,
    pub counts: BTreeMap<&'static str, usize>,
}

impl AuditSummary {
    pub fn count(&self, status: Status) -> usize {
        self.counts.get(status.as_str()).copied().unwrap_or(0)
    }

    pub fn falsified(&self) -> usize {
        self.count(Status::Falsified)
    }
}

pub fn conjecture_audit<I: IntoIterator<Item = Status>>(statuses: I) -> AuditSummary {
    let mut summary = AuditSummary::default();
    for s in statuses {
        summary.total += 1;
        *summary.counts.entry(s.as_str()).or_default() += 1;
    }
    summary
}
