//! Numerical tolerances shared across the crate.

/// Maximum entrywise `|M - M^dagger|` accepted for a density matrix.
pub const HERMITIAN: f64 = 1e-10;

/// Maximum `|Tr M - 1|` accepted for a density matrix.
pub const TRACE: f64 = 1e-10;

/// Most negative eigenvalue accepted as positive semidefinite.
pub const PSD: f64 = -1e-10;

/// Imaginary part tolerated in `Tr(rho P)` before it is discarded.
pub const IMAG_RESIDUE: f64 = 1e-10;

/// Commutator norm below which a state counts as parity invariant.
pub const COMMUTATOR: f64 = 1e-10;

/// Off-diagonal K entries below this are treated as zero.
pub const BLOCK: f64 = 1e-10;

/// Gap below which `k1` and `k3` are considered tied; ties pick the axial branch.
pub const TIE: f64 = 1e-10;

/// Off-diagonal Frobenius norm at which Jacobi sweeps stop (relative to the matrix norm when larger than one).
pub const JACOBI_OFF: f64 = 1e-13;

/// Maximum number of cyclic Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;
