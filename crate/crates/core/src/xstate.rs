//! X-class detection, parity twirling, random X states and the named
//! mixed families.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::bloch::{inverse_bloch3, CorrelationTensor3};
use crate::error::{Error, Result};
use crate::matrix::{block_index, kron, pauli, ComplexMatrix, DensityMatrix, C64};
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum XClass {
    /// Two-qubit state commuting with `s3 (x) s3`.
    TwoQubitX,
    /// Commutes with `s3 (x) s3 (x) s0`.
    Class1,
    /// Commutes with `s3 (x) s3 (x) s3`.
    Class2,
    /// Commutes with both parity operators.
    Both,
    NonX,
}

impl XClass {
    pub fn name(self) -> &'static str {
        match self {
            XClass::TwoQubitX => "two-qubit-x",
            XClass::Class1 => "class1",
            XClass::Class2 => "class2",
            XClass::Both => "both",
            XClass::NonX => "non-x",
        }
    }

    /// True when a state of class `self` may be fed to closed forms written
    /// for `target`.
    pub fn admits(self, target: XClass) -> bool {
        self == target || (self == XClass::Both && matches!(target, XClass::Class1 | XClass::Class2))
    }
}

impl fmt::Display for XClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for XClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two-qubit-x" | "twoqubit" | "2x" => Ok(XClass::TwoQubitX),
            "class1" | "1" => Ok(XClass::Class1),
            "class2" | "2" => Ok(XClass::Class2),
            "both" => Ok(XClass::Both),
            "non-x" | "nonx" | "general" => Ok(XClass::NonX),
            other => Err(Error::Parameter(format!("unknown class `{other}`"))),
        }
    }
}

/// Parity operator defining `class`: `s3 s3` for two qubits,
/// `s3 s3 s0` for class 1, `s3 s3 s3` for class 2.
pub fn parity_operator(class: XClass) -> Result<ComplexMatrix> {
    let z = pauli(3)?;
    match class {
        XClass::TwoQubitX => kron(&z, &z),
        XClass::Class1 => kron(&z, &kron(&z, &pauli(0)?)?),
        XClass::Class2 => kron(&z, &kron(&z, &z)?),
        other => Err(Error::Parameter(format!("no parity operator for class {other}"))),
    }
}

/// Commutator norms against the class-1 and class-2 parity operators
/// (dimension 8) or the two-qubit parity (dimension 4, second entry unused).
pub fn class_residuals(rho: &DensityMatrix) -> Result<(f64, f64)> {
    let m = rho.matrix();
    match rho.dim() {
        4 => Ok((m.commutator(&parity_operator(XClass::TwoQubitX)?).max_abs(), 0.0)),
        8 => Ok((
            m.commutator(&parity_operator(XClass::Class1)?).max_abs(),
            m.commutator(&parity_operator(XClass::Class2)?).max_abs(),
        )),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

pub fn classify(rho: &DensityMatrix) -> Result<XClass> {
    let (r1, r2) = class_residuals(rho)?;
    if rho.dim() == 4 {
        return Ok(if r1 <= tol::COMMUTATOR { XClass::TwoQubitX } else { XClass::NonX });
    }
    Ok(match (r1 <= tol::COMMUTATOR, r2 <= tol::COMMUTATOR) {
        (true, true) => XClass::Both,
        (true, false) => XClass::Class1,
        (false, true) => XClass::Class2,
        (false, false) => XClass::NonX,
    })
}

/// `(rho + P rho P) / 2` with `P` the parity operator of `target`.
pub fn twirl(rho: &DensityMatrix, target: XClass) -> Result<DensityMatrix> {
    let p = parity_operator(target)?;
    if p.dim() != rho.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: rho.dim() });
    }
    let m = rho.matrix();
    // P is diagonal with entries +-1
    let out = ComplexMatrix::from_fn(m.dim(), |r, c| {
        let s = (p[(r, r)] * p[(c, c)]).re;
        if s > 0.0 {
            m[(r, c)]
        } else {
            C64::new(0.0, 0.0)
        }
    });
    DensityMatrix::new(out)
}

// Nonzero layouts in the block ordering (qubit 3 slowest), row by row.
const CLASS1_MASK: [&str; 8] = [
    "x..xx..x", ".xx..xx.", ".xx..xx.", "x..xx..x", "x..xx..x", ".xx..xx.", ".xx..xx.", "x..xx..x",
];
const CLASS2_MASK: [&str; 8] = [
    "x..x.xx.", ".xx.x..x", ".xx.x..x", "x..x.xx.", ".xx.x..x", "x..x.xx.", "x..x.xx.", ".xx.x..x",
];
const TWO_QUBIT_MASK: [&str; 4] = ["x..x", ".xx.", ".xx.", "x..x"];

/// Largest entry modulus outside the X layout of `class` (block ordering
/// for three qubits, computational ordering for two).
pub fn pattern_violation(rho: &DensityMatrix, class: XClass) -> Result<f64> {
    let mask: &[&str] = match (class, rho.dim()) {
        (XClass::Class1, 8) => &CLASS1_MASK,
        (XClass::Class2, 8) => &CLASS2_MASK,
        (XClass::TwoQubitX, 4) => &TWO_QUBIT_MASK,
        (c, d) => return Err(Error::Parameter(format!("no X layout for class {c} at dimension {d}"))),
    };
    let mut worst = 0.0f64;
    for (r, row) in mask.iter().enumerate() {
        for (c, flag) in row.bytes().enumerate() {
            if flag == b'.' {
                let z = if rho.dim() == 8 { rho.block_entry(r + 1, c + 1) } else { rho.matrix()[(r, c)] };
                worst = worst.max(z.norm());
            }
        }
    }
    Ok(worst)
}

/// Entry of `rho` at block-layout position, used by the closed forms.
pub(crate) fn be(rho: &DensityMatrix, r: usize, c: usize) -> C64 {
    rho.matrix()[(block_index(r), block_index(c))]
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

fn ginibre(dim: usize, real: bool, rng: &mut impl Rng) -> Result<DensityMatrix> {
    let g = ComplexMatrix::from_fn(dim, |_, _| {
        let re = gaussian(rng);
        let im = if real { 0.0 } else { gaussian(rng) };
        C64::new(re, im)
    });
    let w = g.matmul(&g.adjoint());
    let tr = w.trace().re;
    let mut m = w.scale_real(1.0 / tr);
    // remove rounding asymmetry so hermiticity holds exactly
    for r in 0..dim {
        m[(r, r)] = C64::new(m[(r, r)].re, 0.0);
        for c in r + 1..dim {
            let z = 0.5 * (m[(r, c)] + m[(c, r)].conj());
            m[(r, c)] = z;
            m[(c, r)] = z.conj();
        }
    }
    DensityMatrix::new(m)
}

/// Random full-rank state `G G^dagger / Tr(G G^dagger)` with complex Gaussian `G`.
pub fn random_state(dim: usize, rng: &mut impl Rng) -> Result<DensityMatrix> {
    ginibre(dim, false, rng)
}

/// As [`random_state`] with a real Gaussian `G`, so every entry is real.
pub fn random_real_state(dim: usize, rng: &mut impl Rng) -> Result<DensityMatrix> {
    ginibre(dim, true, rng)
}

/// Random state of `class` (Class1, Class2 or TwoQubitX) by parity twirl.
pub fn random_x_state(class: XClass, rng: &mut impl Rng) -> Result<DensityMatrix> {
    let dim = if class == XClass::TwoQubitX { 4 } else { 8 };
    twirl(&random_state(dim, rng)?, class)
}

pub fn random_real_x_state(class: XClass, rng: &mut impl Rng) -> Result<DensityMatrix> {
    let dim = if class == XClass::TwoQubitX { 4 } else { 8 };
    twirl(&random_real_state(dim, rng)?, class)
}

/// Haar-random pure state of dimension `dim`.
pub fn random_pure(dim: usize, rng: &mut impl Rng) -> Result<DensityMatrix> {
    let psi: Vec<C64> = (0..dim).map(|_| C64::new(gaussian(rng), gaussian(rng))).collect();
    DensityMatrix::pure(&psi)
}

fn check_weight(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!("mixing weight p = {p} outside [0, 1]")));
    }
    Ok(())
}

fn mixed_with_pure(p: f64, psi: &[C64]) -> Result<DensityMatrix> {
    check_weight(p)?;
    let pure = ComplexMatrix::projector(psi);
    let noise = ComplexMatrix::identity(8).scale_real(p / 8.0);
    DensityMatrix::new(&noise + &pure.scale_real(1.0 - p))
}

/// `(p/8) I + (1-p) |GHZ><GHZ|` with `|GHZ> = (|000> + |111>)/sqrt 2`.
pub fn ghz_mixed(p: f64) -> Result<DensityMatrix> {
    let a = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut psi = vec![C64::new(0.0, 0.0); 8];
    psi[0] = a;
    psi[7] = a;
    mixed_with_pure(p, &psi)
}

/// `(p/8) I + (1-p) |W><W|` with `|W> = (|100> + |010> + |001>)/sqrt 3`.
pub fn w_mixed(p: f64) -> Result<DensityMatrix> {
    let a = C64::new(1.0 / 3f64.sqrt(), 0.0);
    let mut psi = vec![C64::new(0.0, 0.0); 8];
    psi[0b100] = a;
    psi[0b010] = a;
    psi[0b001] = a;
    mixed_with_pure(p, &psi)
}

/// `(1/8)(I + c1 s1s1s1 + c2 s2s2s2 + c3 s3s3s3)`; fails with
/// [`Error::NotPositive`] when the parameters leave the state space.
pub fn bell_type(c1: f64, c2: f64, c3: f64) -> Result<DensityMatrix> {
    let mut t = CorrelationTensor3::zeros();
    t.set(0, 0, 0, 1.0);
    t.set(1, 1, 1, c1);
    t.set(2, 2, 2, c2);
    t.set(3, 3, 3, c3);
    DensityMatrix::new(inverse_bloch3(&t))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Ghz,
    W,
    Bell,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ghz" => Ok(Family::Ghz),
            "w" => Ok(Family::W),
            "bell" => Ok(Family::Bell),
            other => Err(Error::Parameter(format!("unknown family `{other}`"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Ghz => "ghz",
            Family::W => "w",
            Family::Bell => "bell",
        })
    }
}

/// A member of one of the named families.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum FamilyParam {
    Ghz { p: f64 },
    W { p: f64 },
    Bell { c1: f64, c2: f64, c3: f64 },
}

impl FamilyParam {
    pub fn family(&self) -> Family {
        match self {
            FamilyParam::Ghz { .. } => Family::Ghz,
            FamilyParam::W { .. } => Family::W,
            FamilyParam::Bell { .. } => Family::Bell,
        }
    }

    pub fn state(&self) -> Result<DensityMatrix> {
        match *self {
            FamilyParam::Ghz { p } => ghz_mixed(p),
            FamilyParam::W { p } => w_mixed(p),
            FamilyParam::Bell { c1, c2, c3 } => bell_type(c1, c2, c3),
        }
    }
}
