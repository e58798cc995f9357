use crate::xstate::XClass;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("pauli index {0} out of range 0..=3")]
    PauliIndex(usize),
    #[error("tensor product dimension {0} exceeds 64")]
    DimensionTooLarge(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("qubit index {qubit} invalid for a {n_qubits}-qubit state")]
    QubitIndex { qubit: usize, n_qubits: usize },
    #[error("not hermitian: hermiticity residual {}", crate::io::format_sig(*.0, 6))]
    NotHermitian(f64),
    #[error("not unit trace: trace residual {}", crate::io::format_sig(*.0, 6))]
    Trace(f64),
    #[error("not positive semidefinite: minimum eigenvalue {}", crate::io::format_sig(*.0, 6))]
    NotPositive(f64),
    #[error("imaginary residue {} in correlation coefficient", crate::io::format_sig(*.0, 6))]
    ImaginaryResidue(f64),
    #[error("class mismatch: expected {expected}, state is {found}")]
    ClassMismatch { expected: XClass, found: XClass },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of the density-matrix invariants.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::NotHermitian(_) | Error::Trace(_) | Error::NotPositive(_) | Error::UnsupportedDimension(_)
        )
    }
}
