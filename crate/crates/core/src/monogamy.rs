//! Pairwise discords of three-qubit states and the monogamy residual
//! `D(1|23) - D(12) - D(13)`.

use serde::{Deserialize, Serialize};

use crate::discord::{discord2, discord3};
use crate::error::{Error, Result};
use crate::matrix::{partial_trace, DensityMatrix};
use crate::xstate::{be, classify, XClass};

/// Residuals below this count as monogamous.
pub const MONOGAMY_TOL: f64 = 1e-10;

fn require_three_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 8 {
        return Err(Error::DimensionMismatch { expected: 8, found: rho.dim() });
    }
    Ok(())
}

/// Discord of `rho_12 = Tr_3 rho`, measurement on qubit 1.
pub fn pairwise_discord_12(rho: &DensityMatrix) -> Result<f64> {
    require_three_qubits(rho)?;
    Ok(discord2(&partial_trace(rho, 3)?)?.value)
}

/// Discord of `rho_13 = Tr_2 rho`, measurement on qubit 1.
pub fn pairwise_discord_13(rho: &DensityMatrix) -> Result<f64> {
    require_three_qubits(rho)?;
    Ok(discord2(&partial_trace(rho, 2)?)?.value)
}

/// `(lambda_1, lambda_2, lambda_3)` of a two-qubit X state with the given
/// corner coherence `a`, inner coherence `b` and diagonal `d`.
fn x_lambdas(a: f64, b: f64, d: [f64; 4]) -> [f64; 3] {
    [
        4.0 * (a + b).powi(2),
        4.0 * (a - b).powi(2),
        2.0 * ((d[0] - d[2]).powi(2) + (d[1] - d[3]).powi(2)),
    ]
}

fn x_value(l: [f64; 3]) -> f64 {
    0.25 * (l[1] + l[0].min(l[2]))
}

fn diag(rho: &DensityMatrix, i: usize) -> f64 {
    be(rho, i, i).re
}

/// The eigenvalues `q_1..3` (class 1) or `l_1..3` (class 2) of the 1-2
/// reduction, from the three-qubit entries in block layout.
pub fn lambdas_12(rho: &DensityMatrix) -> Result<[f64; 3]> {
    require_three_qubits(rho)?;
    let e = |r, c| be(rho, r, c);
    let d = [
        diag(rho, 1) + diag(rho, 5),
        diag(rho, 2) + diag(rho, 6),
        diag(rho, 3) + diag(rho, 7),
        diag(rho, 4) + diag(rho, 8),
    ];
    Ok(x_lambdas((e(1, 4) + e(5, 8)).norm(), (e(2, 3) + e(6, 7)).norm(), d))
}

/// The eigenvalues `m_1..3` of the 1-3 reduction of a class-2 state.
pub fn lambdas_13(rho: &DensityMatrix) -> Result<[f64; 3]> {
    require_three_qubits(rho)?;
    let e = |r, c| be(rho, r, c);
    let d = [
        diag(rho, 1) + diag(rho, 2),
        diag(rho, 5) + diag(rho, 6),
        diag(rho, 3) + diag(rho, 4),
        diag(rho, 7) + diag(rho, 8),
    ];
    Ok(x_lambdas((e(1, 7) + e(2, 8)).norm(), (e(5, 3) + e(6, 4)).norm(), d))
}

/// `D(12)` from [`lambdas_12`]; valid for class-1 and class-2 states.
pub fn closed_form_d12(rho: &DensityMatrix) -> Result<f64> {
    Ok(x_value(lambdas_12(rho)?))
}

/// `D(13)` from [`lambdas_13`]; valid for class-2 states.
pub fn closed_form_d13(rho: &DensityMatrix) -> Result<f64> {
    Ok(x_value(lambdas_13(rho)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonogamyReport {
    pub d_1_23: f64,
    pub d_12: f64,
    pub d_13: f64,
    pub residual: f64,
    pub monogamous: bool,
    pub class: XClass,
}

pub fn monogamy_report(rho: &DensityMatrix) -> Result<MonogamyReport> {
    require_three_qubits(rho)?;
    let d_1_23 = discord3(rho)?.value;
    let d_12 = pairwise_discord_12(rho)?;
    let d_13 = pairwise_discord_13(rho)?;
    let residual = d_1_23 - d_12 - d_13;
    Ok(MonogamyReport {
        d_1_23,
        d_12,
        d_13,
        residual,
        monogamous: residual >= -MONOGAMY_TOL,
        class: classify(rho)?,
    })
}
