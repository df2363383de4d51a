//! Simulation and certification of fully charging quantum-battery protocols.
//!
//! The crate builds the charging Hamiltonians of several scheme families
//! (SU(2) ladders, fully parallel, mirror-symmetric tridiagonal and the
//! block-flip hybrid construction), evolves the battery exactly, normalises
//! the charging time by the quantum speed limit and certifies the
//! entanglement depth generated along the way, both through the
//! locally-orthonormal-pair lower bound and an exact small-register oracle.
//!
//! Module map:
//!
//! * [`numerics`] dense Hermitian linear algebra and unitary evolution.
//! * [`schemes`] scheme construction and closed-form evolutions.
//! * [`metrics`] speed limit, charging time, charging rate, stored work.
//! * [`entdepth`] depth lower bound and exact producibility oracle.
//! * [`harness`] per-scheme reports, conjecture audit, ratio sweep.
//! * [`io`] state files, CSV and JSON output.

pub mod config;
pub mod entdepth;
pub mod error;
pub mod harness;
pub mod io;
pub mod metrics;
pub mod numerics;
pub mod schemes;

pub use config::{Limits, Tolerances};
pub use error::{Error, Result};
pub use numerics::{ComplexMatrix, ComplexVector, EigenSystem, C64};
