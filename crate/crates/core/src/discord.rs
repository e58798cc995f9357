//! Geometric discord of the `1|23` split of three-qubit states and of
//! two-qubit states, with measurement on qubit 1.
//!
//! Writing the Fano-Bloch tensor as `T`, the squared Hilbert-Schmidt distance
//! to the best classical-quantum state measured along the unit vector `e` is
//! `(1/N) (Tr K - e^T K e)` with `K_ij = sum_ab T_iab T_jab` (`N = 8` for three
//! qubits, `4` for two). The discord is therefore `(Tr K - k_max) / N`.
//!
//! `K` can be assembled three ways for three qubits: straight from the tensor
//! ([`kmatrix_tensor`], valid for any state) or from the closed forms in the
//! density-matrix entries of class-1 and class-2 X states
//! ([`kmatrix_class1`], [`kmatrix_class2`]).

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bloch::{bloch2, bloch3, inverse_bloch2, inverse_bloch3, CorrelationMatrix2, CorrelationTensor3};
use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigenvalues, symmetric_eigen, ComplexMatrix, DensityMatrix, C64};
use crate::tol;
use crate::xstate::{be, classify, XClass};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KMatrix {
    k: [[f64; 3]; 3],
}

impl KMatrix {
    pub fn new(k: [[f64; 3]; 3]) -> Self {
        Self { k }
    }

    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.k
    }

    /// `K_13 = K_23 = 0` within tolerance.
    pub fn block_structured(&self) -> bool {
        [self.k[0][2], self.k[2][0], self.k[1][2], self.k[2][1]].iter().all(|x| x.abs() <= tol::BLOCK)
    }

    pub fn trace(&self) -> f64 {
        self.k[0][0] + self.k[1][1] + self.k[2][2]
    }

    pub fn max_abs_diff(&self, other: &KMatrix) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.k[i][j] - other.k[i][j]).abs());
            }
        }
        worst
    }

    /// `e^T K e`.
    pub fn quadratic_form(&self, e: &[f64; 3]) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += e[i] * self.k[i][j] * e[j];
            }
        }
        s
    }
}

impl Index<(usize, usize)> for KMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.k[i][j]
    }
}

/// Which eigenvalue of `K` is maximal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// `k_max = k1`, in the (1, 2) plane: `e = (cos t, -sin t, 0)`.
    InPlane,
    /// `k_max = k3 = K_33`: `e = (0, 0, 1)`.
    Axial,
    /// `K` is not block structured; `e` comes from the full eigensolver.
    General,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::InPlane => "B1",
            Branch::Axial => "B3",
            Branch::General => "general",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Class1,
    Class2,
    Tensor,
    TwoQubit,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Class1 => "class1",
            Method::Class2 => "class2",
            Method::Tensor => "tensor",
            Method::TwoQubit => "twoqubit",
        })
    }
}

/// How [`discord3_with`] assembles `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum KRoute {
    /// Closed form when the X class allows it, tensor otherwise.
    #[default]
    Auto,
    Tensor,
    Class1,
    Class2,
}

impl FromStr for KRoute {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(KRoute::Auto),
            "tensor" => Ok(KRoute::Tensor),
            "class1" => Ok(KRoute::Class1),
            "class2" => Ok(KRoute::Class2),
            other => Err(Error::Parameter(format!("unknown K route `{other}`"))),
        }
    }
}

/// Eigen-decomposition of `K` as used by the discord.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KEigen {
    /// Larger in-plane eigenvalue (largest overall for [`Branch::General`]).
    pub k1: f64,
    pub k2: f64,
    /// `K_33` (smallest overall for [`Branch::General`]).
    pub k3: f64,
    pub e_max: [f64; 3],
    pub branch: Branch,
}

impl KEigen {
    pub fn k_max(&self) -> f64 {
        self.k1.max(self.k3)
    }

    /// `k1 + k2 + k3 - k_max`.
    pub fn residual_mass(&self) -> f64 {
        match self.branch {
            Branch::General => self.k2 + self.k3,
            _ => self.k2 + self.k1.min(self.k3),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscordResult {
    pub value: f64,
    /// For two-qubit states these are the eigenvalues `lambda_1..3`.
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub e_max: [f64; 3],
    pub branch: Branch,
    pub method: Method,
    pub k: KMatrix,
}

/// Closest classical-quantum state found by the engine.
#[derive(Clone, Debug)]
pub struct ClassicalState {
    pub chi: ComplexMatrix,
    pub psd_ok: bool,
    pub distance_sq: f64,
    pub branch: Branch,
}

fn require_dim(rho: &DensityMatrix, dim: usize) -> Result<()> {
    if rho.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: rho.dim() });
    }
    Ok(())
}

fn gram_rows<const N: usize>(rows: [[f64; N]; 3]) -> KMatrix {
    let mut k = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            k[i][j] = rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum();
        }
    }
    KMatrix { k }
}

fn tensor_rows(t: &CorrelationTensor3) -> [[f64; 16]; 3] {
    let mut rows = [[0.0; 16]; 3];
    for (i, row) in rows.iter_mut().enumerate() {
        for a in 0..4 {
            for b in 0..4 {
                row[4 * a + b] = t[(i + 1, a, b)];
            }
        }
    }
    rows
}

/// `K = x x^T + T T^T` straight from the Fano-Bloch tensor, with
/// `x_i = T_i00` and `T` the 3x15 block `T_iab`, `(a, b) != (0, 0)`.
/// Valid for any three-qubit state.
pub fn kmatrix_tensor(rho: &DensityMatrix) -> Result<KMatrix> {
    require_dim(rho, 8)?;
    Ok(gram_rows(tensor_rows(&bloch3(rho)?)))
}

/// Two-qubit analogue: `K_ij = sum_b R_ib R_jb`.
pub fn kmatrix_two_qubit(rho: &DensityMatrix) -> Result<KMatrix> {
    require_dim(rho, 4)?;
    let r = bloch2(rho)?;
    Ok(gram_rows(two_qubit_rows(&r)))
}

fn two_qubit_rows(r: &CorrelationMatrix2) -> [[f64; 4]; 3] {
    let mut rows = [[0.0; 4]; 3];
    for (i, row) in rows.iter_mut().enumerate() {
        for b in 0..4 {
            row[b] = r[(i + 1, b)];
        }
    }
    rows
}

fn require_class(rho: &DensityMatrix, target: XClass) -> Result<()> {
    let found = classify(rho)?;
    if !found.admits(target) {
        return Err(Error::ClassMismatch { expected: target, found });
    }
    Ok(())
}

/// `K` of a class-1 state from its density-matrix entries (block layout).
///
/// `K_12` is taken from the restricted tensor sum
/// `sum_{b=1,2} sum_c T_1bc T_2bc`; see [`k12_phase_form`] for the
/// entry-wise version.
pub fn kmatrix_class1(rho: &DensityMatrix) -> Result<KMatrix> {
    require_dim(rho, 8)?;
    require_class(rho, XClass::Class1)?;
    let e = |r, c| be(rho, r, c);
    let sq = |z: C64| z.norm_sqr();

    let k11 = 8.0
        * (sq(e(2, 3) + e(4, 1)) + sq(e(6, 7) + e(8, 5)) + sq(e(3, 6) + e(1, 8)) + sq(e(5, 4) + e(7, 2)));
    let k22 = 8.0
        * (sq(e(2, 3) - e(4, 1)) + sq(e(6, 7) - e(8, 5)) + sq(e(3, 6) - e(1, 8)) + sq(e(5, 4) - e(7, 2)));
    let d = |a: usize, b: usize| (e(a, a) - e(b, b)).re;
    let u = e(1, 5) - e(3, 7);
    let v = e(2, 6) - e(4, 8);
    let k33 = 4.0 * (d(1, 3).powi(2) + d(2, 4).powi(2) + d(5, 7).powi(2) + d(6, 8).powi(2) + sq(u + v) + sq(u - v));

    let t = bloch3(rho)?;
    let mut k12 = 0.0;
    for b in 1..=2 {
        for c in 0..4 {
            k12 += t[(1, b, c)] * t[(2, b, c)];
        }
    }
    Ok(KMatrix { k: [[k11, k12, 0.0], [k12, k22, 0.0], [0.0, 0.0, k33]] })
}

/// `K` of a class-2 state from its density-matrix entries (block layout).
///
/// `K_12` is the restricted tensor sum
/// `sum_{b=1,2} sum_{c=0,3} (T_1bc T_2bc + T_1cb T_2cb)`.
pub fn kmatrix_class2(rho: &DensityMatrix) -> Result<KMatrix> {
    require_dim(rho, 8)?;
    require_class(rho, XClass::Class2)?;
    let e = |r, c| be(rho, r, c);
    let sq = |z: C64| z.norm_sqr();

    let k11 = 8.0 * (sq(e(4, 1) + e(2, 3)) + sq(e(8, 5) + e(6, 7)))
        + 4.0 * (sq(e(1, 7) + e(3, 5) + e(2, 8) + e(4, 6)) + sq(e(1, 7) + e(3, 5) - e(2, 8) - e(4, 6)));
    let k22 = 8.0 * (sq(e(4, 1) - e(2, 3)) + sq(e(8, 5) - e(6, 7)))
        + 4.0 * (sq(e(1, 7) - e(3, 5) + e(2, 8) - e(4, 6)) + sq(e(1, 7) - e(3, 5) - e(2, 8) + e(4, 6)));
    let d = |a: usize, b: usize| (e(a, a) - e(b, b)).re;
    let k33 = 4.0
        * (d(1, 3).powi(2)
            + d(2, 4).powi(2)
            + d(5, 7).powi(2)
            + d(6, 8).powi(2)
            + sq(e(1, 6) - e(3, 8) - e(4, 7) + e(2, 5))
            + sq(e(1, 6) - e(3, 8) + e(4, 7) - e(2, 5)));

    let t = bloch3(rho)?;
    let mut k12 = 0.0;
    for b in 1..=2 {
        for c in [0, 3] {
            k12 += t[(1, b, c)] * t[(2, b, c)] + t[(1, c, b)] * t[(2, c, b)];
        }
    }
    Ok(KMatrix { k: [[k11, k12, 0.0], [k12, k22, 0.0], [0.0, 0.0, k33]] })
}

/// `K_12` written through moduli and phases of the density-matrix entries,
/// `-16 sum |a||b| sin(arg a +- arg b)`. A vanishing entry contributes zero.
pub fn k12_phase_form(rho: &DensityMatrix, class: XClass) -> Result<f64> {
    require_dim(rho, 8)?;
    let e = |r, c| be(rho, r, c);
    let term = |a: C64, b: C64, plus: bool| {
        if a.norm() == 0.0 || b.norm() == 0.0 {
            return 0.0;
        }
        let angle = if plus { a.arg() + b.arg() } else { a.arg() - b.arg() };
        a.norm() * b.norm() * angle.sin()
    };
    let sum = match class {
        XClass::Class1 | XClass::Both => {
            term(e(2, 3), e(1, 4), true)
                + term(e(5, 8), e(6, 7), true)
                + term(e(1, 8), e(3, 6), false)
                + term(e(2, 7), e(4, 5), false)
        }
        XClass::Class2 => {
            term(e(2, 3), e(1, 4), true)
                + term(e(5, 8), e(6, 7), true)
                + term(e(1, 7), e(3, 5), false)
                + term(e(2, 8), e(4, 6), false)
        }
        other => return Err(Error::Parameter(format!("no phase form for class {other}"))),
    };
    Ok(-16.0 * sum)
}

/// Eigenvalues of `K` and the unit eigenvector of the largest one.
///
/// Block-structured `K` uses the closed 2x2 formulas with `k1 >= k2` and
/// `k3 = K_33`; a tie `|k1 - k3| <= 1e-10` resolves to the axial branch.
/// Anything else goes through the Jacobi solver.
pub fn k_eigen(k: &KMatrix) -> KEigen {
    if k.block_structured() {
        let (a, b, c) = (k.k[0][0], k.k[1][1], 0.5 * (k.k[0][1] + k.k[1][0]));
        let mean = 0.5 * (a + b);
        let half = (0.5 * (a - b)).hypot(c);
        let k1 = mean + half;
        let k2 = mean - half;
        let k3 = k.k[2][2];
        if k1 > k3 + tol::TIE {
            let theta = in_plane_angle(a, b, c);
            KEigen { k1, k2, k3, e_max: [theta.cos(), -theta.sin(), 0.0], branch: Branch::InPlane }
        } else {
            KEigen { k1, k2, k3, e_max: [0.0, 0.0, 1.0], branch: Branch::Axial }
        }
    } else {
        let flat: Vec<f64> = k.k.iter().flatten().copied().collect();
        let eig = symmetric_eigen(&flat, 3);
        let v = &eig.vectors[2];
        KEigen {
            k1: eig.values[2],
            k2: eig.values[1],
            k3: eig.values[0],
            e_max: [v[0], v[1], v[2]],
            branch: Branch::General,
        }
    }
}

/// Angle `t` of the top eigenvector `(cos t, -sin t)` of `[[a, c], [c, b]]`,
/// i.e. `tan t = (a - k1) / c`.
fn in_plane_angle(a: f64, b: f64, c: f64) -> f64 {
    if c == 0.0 {
        return if a >= b { 0.0 } else { FRAC_PI_2 };
    }
    -0.5 * (2.0 * c).atan2(a - b)
}

/// Geometric discord of the `1|23` split with the route chosen from the X class.
pub fn discord3(rho: &DensityMatrix) -> Result<DiscordResult> {
    discord3_with(rho, KRoute::Auto)
}

pub fn discord3_with(rho: &DensityMatrix, route: KRoute) -> Result<DiscordResult> {
    require_dim(rho, 8)?;
    let route = match route {
        KRoute::Auto => match classify(rho)? {
            XClass::Class1 | XClass::Both => KRoute::Class1,
            XClass::Class2 => KRoute::Class2,
            _ => KRoute::Tensor,
        },
        r => r,
    };
    let (k, method) = match route {
        KRoute::Class1 => (kmatrix_class1(rho)?, Method::Class1),
        KRoute::Class2 => (kmatrix_class2(rho)?, Method::Class2),
        _ => (kmatrix_tensor(rho)?, Method::Tensor),
    };
    let eig = k_eigen(&k);
    Ok(DiscordResult {
        value: (eig.residual_mass() / 8.0).max(0.0),
        k1: eig.k1,
        k2: eig.k2,
        k3: eig.k3,
        e_max: eig.e_max,
        branch: eig.branch,
        method,
        k,
    })
}

/// Geometric discord of a two-qubit state, measurement on qubit 1.
///
/// X states use `lambda_1 = 4(|r14| + |r23|)^2`, `lambda_2 = 4(|r14| - |r23|)^2`,
/// `lambda_3 = 2[(r11 - r33)^2 + (r22 - r44)^2]` and
/// `D = min(lambda_1 + lambda_2, lambda_2 + lambda_3) / 4`; other states go
/// through the tensor `K`.
pub fn discord2(rho: &DensityMatrix) -> Result<DiscordResult> {
    require_dim(rho, 4)?;
    let k = kmatrix_two_qubit(rho)?;
    if classify(rho)? != XClass::TwoQubitX {
        let eig = k_eigen(&k);
        return Ok(DiscordResult {
            value: (eig.residual_mass() / 4.0).max(0.0),
            k1: eig.k1,
            k2: eig.k2,
            k3: eig.k3,
            e_max: eig.e_max,
            branch: eig.branch,
            method: Method::Tensor,
            k,
        });
    }

    let m = rho.matrix();
    let (r14, r23) = (m[(0, 3)], m[(1, 2)]);
    let l1 = 4.0 * (r14.norm() + r23.norm()).powi(2);
    let l2 = 4.0 * (r14.norm() - r23.norm()).powi(2);
    let l3 = 2.0 * ((m[(0, 0)] - m[(2, 2)]).re.powi(2) + (m[(1, 1)] - m[(3, 3)]).re.powi(2));
    let value = (0.25 * (l1 + l2).min(l2 + l3)).max(0.0);

    let (branch, e_max) = if l1 > l3 + tol::TIE {
        let e = if r14.norm() > 0.0 && r23.norm() > 0.0 {
            let half_phi = 0.5 * (r14 * r23).arg();
            [half_phi.cos(), -half_phi.sin(), 0.0]
        } else {
            k_eigen(&k).e_max
        };
        (Branch::InPlane, e)
    } else {
        (Branch::Axial, [0.0, 0.0, 1.0])
    };
    Ok(DiscordResult { value, k1: l1, k2: l2, k3: l3, e_max, branch, method: Method::TwoQubit, k })
}

/// Projects the qubit-1 part of the correlation rows onto `e`:
/// row `i` becomes `e_i sum_j e_j row_j`; row 0 (qubit-1 identity) is kept.
///
/// With `e = (0, 0, 1)` this keeps only `T_3..` (the axial closest state);
/// with `e = (cos t, -sin t, 0)` it gives `cos^2 t T_1.. - cos t sin t T_2..`
/// and `sin^2 t T_2.. - cos t sin t T_1..` (the in-plane closest state).
fn project_rows<const N: usize>(rows: [[f64; N]; 3], e: &[f64; 3]) -> [[f64; N]; 3] {
    let mut along = [0.0; N];
    for (j, row) in rows.iter().enumerate() {
        for (slot, v) in along.iter_mut().zip(row) {
            *slot += e[j] * v;
        }
    }
    let mut out = [[0.0; N]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (slot, a) in row.iter_mut().zip(&along) {
            *slot = e[i] * a;
        }
    }
    out
}

fn classical_state(rho: &DensityMatrix, chi: ComplexMatrix, branch: Branch) -> Result<ClassicalState> {
    let psd_ok = hermitian_eigenvalues(&chi)?[0] >= tol::PSD;
    let distance_sq = (rho.matrix() - &chi).hs_norm_sq();
    Ok(ClassicalState { chi, psd_ok, distance_sq, branch })
}

/// Closest classical-quantum state for the `1|23` split.
pub fn closest_classical3(rho: &DensityMatrix) -> Result<ClassicalState> {
    let d = discord3(rho)?;
    let t = bloch3(rho)?;
    let projected = project_rows(tensor_rows(&t), &d.e_max);
    let mut c = t.clone();
    for (i, row) in projected.iter().enumerate() {
        for a in 0..4 {
            for b in 0..4 {
                c.set(i + 1, a, b, row[4 * a + b]);
            }
        }
    }
    classical_state(rho, inverse_bloch3(&c), d.branch)
}

/// Closest classical-quantum state of a two-qubit state.
pub fn closest_classical2(rho: &DensityMatrix) -> Result<ClassicalState> {
    let d = discord2(rho)?;
    let r = bloch2(rho)?;
    let projected = project_rows(two_qubit_rows(&r), &d.e_max);
    let mut c = *r.entries();
    for (i, row) in projected.iter().enumerate() {
        c[i + 1] = *row;
    }
    classical_state(rho, inverse_bloch2(&CorrelationMatrix2::new(c)), d.branch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xstate::{bell_type, ghz_mixed, w_mixed};

    fn k(entries: [[f64; 3]; 3]) -> KMatrix {
        KMatrix::new(entries)
    }

    #[test]
    fn eigen_tie_prefers_axial() {
        let eig = k_eigen(&k([[2.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 2.0]]));
        assert_eq!((eig.k1, eig.k2, eig.k3), (2.0, 2.0, 2.0));
        assert_eq!(eig.e_max, [0.0, 0.0, 1.0]);
        assert_eq!(eig.branch, Branch::Axial);
    }

    #[test]
    fn eigen_diagonal_in_plane() {
        let eig = k_eigen(&k([[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.5]]));
        assert_eq!((eig.k1, eig.k2, eig.k3), (1.0, 0.0, 0.5));
        assert_eq!(eig.e_max, [1.0, -0.0, 0.0]);
        assert_eq!(eig.branch, Branch::InPlane);

        let eig = k_eigen(&k([[0.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.5]]));
        assert!((eig.e_max[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn in_plane_angle_satisfies_tangent_relation() {
        let (a, b, c) = (0.7, 0.2, -0.3);
        let kk = k([[a, c, 0.0], [c, b, 0.0], [0.0, 0.0, 0.1]]);
        let eig = k_eigen(&kk);
        let theta = -eig.e_max[1].atan2(eig.e_max[0]);
        assert!((theta.tan() - (a - eig.k1) / c).abs() < 1e-12);
        assert!((kk.quadratic_form(&eig.e_max) - eig.k1).abs() < 1e-14);
    }

    #[test]
    fn family_values() {
        let ghz = discord3(&ghz_mixed(0.0).unwrap()).unwrap();
        assert!((ghz.value - 0.5).abs() < 1e-15);
        let w = discord3(&w_mixed(0.0).unwrap()).unwrap();
        assert!((w.value - 4.0 / 9.0).abs() < 1e-14);
        assert!((w.k3 - 20.0 / 9.0).abs() < 1e-14);
        let bell = discord3(&bell_type(0.3, 0.2, 0.1).unwrap()).unwrap();
        assert!((bell.value - 0.00625).abs() < 1e-15);
    }

    #[test]
    fn ghz_k_is_isotropic() {
        let p = 0.2;
        let rho = ghz_mixed(p).unwrap();
        let expected = 2.0 * (1.0 - p) * (1.0f64 - p);
        for kk in [kmatrix_tensor(&rho).unwrap(), kmatrix_class1(&rho).unwrap()] {
            for i in 0..3 {
                assert!((kk[(i, i)] - expected).abs() < 1e-14);
            }
        }
        assert!((expected - 1.28).abs() < 1e-14);
    }

    #[test]
    fn class_mismatch_is_reported() {
        let w = w_mixed(0.1).unwrap();
        match kmatrix_class1(&w) {
            Err(Error::ClassMismatch { expected: XClass::Class1, found: XClass::Class2 }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(discord3_with(&w, KRoute::Class1).is_err());
    }

    #[test]
    fn bell_pair() {
        let mut psi = vec![C64::new(0.0, 0.0); 4];
        psi[0] = C64::new(1.0, 0.0);
        psi[3] = C64::new(1.0, 0.0);
        let rho = DensityMatrix::pure(&psi).unwrap();
        let d = discord2(&rho).unwrap();
        assert!((d.value - 0.5).abs() < 1e-15);
        assert!((d.k1 - 1.0).abs() < 1e-15 && (d.k2 - 1.0).abs() < 1e-15 && (d.k3 - 1.0).abs() < 1e-15);
        let chi = closest_classical2(&rho).unwrap();
        assert!((chi.distance_sq - 0.5).abs() < 1e-15);
        assert!(chi.psd_ok);
    }

    #[test]
    fn classical_diagonal_is_its_own_closest_state() {
        let rho = DensityMatrix::new(ComplexMatrix::from_real_diagonal(&[0.1, 0.2, 0.3, 0.4])).unwrap();
        assert_eq!(discord2(&rho).unwrap().value, 0.0);
        let chi = closest_classical2(&rho).unwrap();
        assert!((&chi.chi - rho.matrix()).max_abs() < 1e-16);
        assert!(chi.distance_sq < 1e-30);
    }

    #[test]
    fn maximally_mixed_is_classical() {
        let rho = DensityMatrix::maximally_mixed(8).unwrap();
        let chi = closest_classical3(&rho).unwrap();
        assert!((&chi.chi - rho.matrix()).max_abs() < 1e-16);
        assert_eq!(chi.distance_sq, 0.0);
        assert_eq!(discord2(&DensityMatrix::maximally_mixed(4).unwrap()).unwrap().value, 0.0);
    }

    #[test]
    fn ghz_closest_state_distance() {
        let rho = ghz_mixed(0.4).unwrap();
        let chi = closest_classical3(&rho).unwrap();
        assert!((chi.distance_sq - 0.18).abs() < 1e-14);
        assert!((discord3(&rho).unwrap().value - 0.18).abs() < 1e-14);
    }

    #[test]
    fn wrong_dimension() {
        let rho = DensityMatrix::maximally_mixed(4).unwrap();
        assert!(matches!(discord3(&rho), Err(Error::DimensionMismatch { expected: 8, found: 4 })));
        let rho = DensityMatrix::maximally_mixed(8).unwrap();
        assert!(matches!(discord2(&rho), Err(Error::DimensionMismatch { expected: 4, found: 8 })));
    }
}
