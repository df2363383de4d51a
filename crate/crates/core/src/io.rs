//! State files, CSV rows and JSON output.
//!
//! Floats are written with 17 significant digits so that every value
//! round-trips exactly and identical runs produce identical bytes.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::harness::SweepRow;
use crate::numerics::{ComplexVector, C64};

/// `x` with 17 significant digits in scientific notation.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Serialises an `f64` as a 17-digit JSON number (`null` when not finite).
pub fn ser_f64<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if !x.is_finite() {
        return s.serialize_none();
    }
    let raw = RawValue::from_string(fmt_f64(*x)).map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

pub fn ser_opt_f64<S: Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => ser_f64(v, s),
        None => s.serialize_none(),
    }
}

#[derive(Serialize)]
struct Pair(#[serde(serialize_with = "ser_f64")] f64, #[serde(serialize_with = "ser_f64")] f64);

#[derive(Serialize)]
struct StateOut {
    n_qubits: usize,
    amplitudes: Vec<Pair>,
}

#[derive(Deserialize)]
struct StateIn {
    n_qubits: usize,
    amplitudes: Vec<[f64; 2]>,
}

/// `{"n_qubits": N, "amplitudes": [[re, im], ..]}`, little-endian qubit order.
pub fn state_to_json(psi: &ComplexVector) -> Result<String> {
    let n = crate::entdepth::register_qubits(psi)?;
    let out = StateOut {
        n_qubits: n,
        amplitudes: psi.amplitudes().iter().map(|z| Pair(z.re, z.im)).collect(),
    };
    Ok(serde_json::to_string(&out)?)
}

/// Parses a state file and checks its length and normalisation.
pub fn state_from_json(text: &str) -> Result<ComplexVector> {
    let raw: StateIn = serde_json::from_str(text)?;
    if raw.n_qubits == 0 || raw.n_qubits >= usize::BITS as usize {
        return Err(Error::InvalidArgument(format!("invalid n_qubits {}", raw.n_qubits)));
    }
    let expected = 1usize << raw.n_qubits;
    if raw.amplitudes.len() != expected {
        return Err(Error::DimMismatch {
            expected,
            got: raw.amplitudes.len(),
        });
    }
    let psi = ComplexVector::new(raw.amplitudes.iter().map(|[re, im]| C64::new(*re, *im)).collect());
    psi.check_state()?;
    Ok(psi)
}

pub fn read_state(path: &Path) -> Result<ComplexVector> {
    state_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_state(path: &Path, psi: &ComplexVector) -> Result<()> {
    let mut text = state_to_json(psi)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub const SWEEP_CSV_HEADER: &str =
    "case,m,n,k_num,k_den,lambda1,lambda2,T,tau_qsl,eta,gamma,conj_rhs,lb_max,t_star,status";

/// Writes the sweep table; an empty sweep yields the header alone.
pub fn write_sweep_csv<W: Write>(mut w: W, rows: &[SweepRow]) -> Result<()> {
    writeln!(w, "{SWEEP_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.case.tag(),
            r.m,
            r.n,
            r.k_num,
            r.k_den,
            fmt_f64(r.lambda1),
            fmt_f64(r.lambda2),
            fmt_f64(r.time),
            fmt_f64(r.tau),
            fmt_f64(r.eta),
            fmt_f64(r.gamma),
            r.conj_rhs,
            r.lb_max,
            fmt_f64(r.t_star),
            r.status.as_str(),
        )?;
    }
    Ok(())
}

/// Pretty JSON followed by a newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.0, -0.0, 1.0, 1.0 / 3.0, std::f64::consts::PI, 1e-300, -2.5e17, f64::MIN_POSITIVE] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
            let v: f64 = serde_json::from_str(&s).unwrap();
            assert_eq!(v.to_bits(), x.to_bits());
        }
    }

    #[test]
    fn state_round_trip() {
        let psi = ComplexVector::new(vec![
            C64::new(0.6, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.8 / 3f64.sqrt()),
            C64::new(-0.8 / 3f64.sqrt(), 0.8 / 3f64.sqrt()),
        ]);
        let text = state_to_json(&psi).unwrap();
        assert!(text.starts_with("{\"n_qubits\":2,\"amplitudes\":[["));
        assert_eq!(state_from_json(&text).unwrap(), psi);
    }

    #[test]
    fn state_validation() {
        assert!(matches!(
            state_from_json(r#"{"n_qubits":2,"amplitudes":[[1,0],[0,0]]}"#),
            Err(Error::DimMismatch { .. })
        ));
        assert!(matches!(
            state_from_json(r#"{"n_qubits":1,"amplitudes":[[1,0],[1,0]]}"#),
            Err(Error::NotNormalized { .. })
        ));
        assert!(state_from_json("{}").is_err());
    }

    #[test]
    fn empty_sweep_is_header_only() {
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &[]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{SWEEP_CSV_HEADER}\n"));
    }
}
