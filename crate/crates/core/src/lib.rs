//! Hilbert-Schmidt geometric discord for two- and three-qubit X states.
//!
//! The crate is organised bottom-up:
//!
//! * [`matrix`] dense complex matrices, Pauli operators, partial traces and a
//!   cyclic Jacobi eigensolver,
//! * [`bloch`] Fano-Bloch correlation tensors and the qubit-3 block
//!   decomposition,
//! * [`xstate`] X-class detection, parity twirling and the mixed GHZ, W and
//!   Bell-type families,
//! * [`discord`] the K-matrix engine, discord values and closest classical
//!   states,
//! * [`oracle`] brute-force minimisation over the measurement sphere,
//! * [`monogamy`] pairwise discords and the monogamy residual,
//! * [`io`] state files, parameter sweeps and CSV output.
//!
//! Three-qubit states are stored in the basis `|q1 q2 q3>` with qubit 1 the
//! slowest index. The closed-form entry formulas are written against the
//! block layout `|q3 q1 q2>` (qubit 3 slowest); [`matrix::block_index`]
//! converts between the two.

pub mod bloch;
pub mod discord;
mod error;
pub mod io;
pub mod matrix;
pub mod monogamy;
pub mod oracle;
mod par;
pub mod tol;
pub mod xstate;

pub use bloch::{bloch2, bloch3, blocks, inverse_bloch3, CorrelationMatrix2, CorrelationTensor3};
pub use discord::{
    closest_classical2, closest_classical3, discord2, discord3, k_eigen, kmatrix_class1,
    kmatrix_class2, kmatrix_tensor, Branch, ClassicalState, DiscordResult, KMatrix, KRoute, Method,
};
pub use error::{Error, Result};
pub use matrix::{hermitian_eigenvalues, hs_norm_sq, kron, partial_trace, pauli, ComplexMatrix, DensityMatrix, C64};
pub use monogamy::{monogamy_report, pairwise_discord_12, pairwise_discord_13, MonogamyReport};
pub use oracle::{hs_distance_to_classical, oracle_discord_measurement, oracle_discord_sphere, SphereGrid};
pub use xstate::{bell_type, classify, ghz_mixed, twirl, w_mixed, Family, XClass};
