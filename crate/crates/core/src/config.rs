//! Centralised numerical tolerances and size limits.

/// Tolerances shared by every module.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Conjugate-symmetry check, relative to the largest entry magnitude.
    pub hermitian: f64,
    /// Allowed deviation of a quantum state's norm from one.
    pub state_norm: f64,
    /// Eigen-residual bound, relative to the matrix norm.
    pub eig_residual: f64,
    /// `1 - |<u_d|psi(T)>|` accepted as full charging.
    pub full_charging: f64,
    /// A subset is pure when its reduced purity is at least `1 - purity`.
    pub purity: f64,
    /// Orthogonality of the per-qubit vectors of a locally orthonormal pair.
    pub pair_orthonormal: f64,
    /// Slack on `eta <= 1` before reporting a speed-limit violation.
    pub qsl_violation: f64,
    /// Energy variance / mean-energy threshold below which nothing evolves.
    pub degenerate: f64,
    /// Relative distance to an integer that is snapped before floor/ceil.
    pub integer_snap: f64,
    /// Mirror-symmetry comparison of tridiagonal couplings.
    pub mirror: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        hermitian: 1e-12,
        state_norm: 1e-10,
        eig_residual: 1e-10,
        full_charging: 1e-9,
        purity: 1e-9,
        pair_orthonormal: 1e-12,
        qsl_violation: 1e-9,
        degenerate: 1e-12,
        integer_snap: 1e-9,
        mirror: 1e-12,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Size limits for full-register work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest register handled by the exact oracle and full-register embeddings.
    pub oracle_max_qubits: usize,
    /// Largest register for which `report` runs the exact oracle by default.
    pub report_oracle_qubits: usize,
    /// Largest register for which a dense `2^N x 2^N` Hamiltonian is built.
    pub register_matrix_qubits: usize,
}

impl Limits {
    pub const DEFAULT: Limits = Limits {
        oracle_max_qubits: 14,
        report_oracle_qubits: 10,
        register_matrix_qubits: 10,
    };
}

impl Default for Limits {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Snaps `x` to the nearest integer when it lies within `rel_tol` of it.
pub(crate) fn snap_to_integer(x: f64, rel_tol: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= rel_tol * x.abs().max(1.0) {
        r
    } else {
        x
    }
}
