//! Brute-force discord by searching the measurement direction `e` over the
//! unit sphere.
//!
//! Two objectives are available. The sphere oracle evaluates the distance to
//! the best classical-quantum state along `e` straight from the Fano-Bloch
//! coefficients, using only the inner optimum over the remaining coefficients.
//! The measurement oracle dephases qubit 1 along `e` and measures the
//! Hilbert-Schmidt distance to the result. Neither forms the `K` matrix.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::bloch::{bloch2, bloch3, inverse_bloch2, inverse_bloch3, CorrelationMatrix2, CorrelationTensor3};
use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigenvalues, ComplexMatrix, DensityMatrix, C64};
use crate::par::map_range;
use crate::tol;

/// Search grid `theta_i = pi i / n_theta` (`i = 0..=n_theta`),
/// `phi_j = 2 pi j / n_phi` (`j < n_phi`) followed by local refinement.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphereGrid {
    pub n_theta: usize,
    pub n_phi: usize,
    pub refine_tol: f64,
    pub max_refine_iters: usize,
}

impl SphereGrid {
    pub fn new(n_theta: usize, n_phi: usize, refine_tol: f64, max_refine_iters: usize) -> Result<Self> {
        if n_theta < 8 || n_phi < 16 {
            return Err(Error::Parameter(format!(
                "grid {n_theta}x{n_phi} too coarse: need n_theta >= 8 and n_phi >= 16"
            )));
        }
        if refine_tol.is_nan() || refine_tol <= 0.0 {
            return Err(Error::Parameter(format!("refine tolerance {refine_tol} must be positive")));
        }
        Ok(Self { n_theta, n_phi, refine_tol, max_refine_iters })
    }

    fn d_theta(&self) -> f64 {
        PI / self.n_theta as f64
    }

    fn d_phi(&self) -> f64 {
        2.0 * PI / self.n_phi as f64
    }

    fn point(&self, idx: usize) -> (f64, f64) {
        let i = idx / self.n_phi;
        let j = idx % self.n_phi;
        (i as f64 * self.d_theta(), j as f64 * self.d_phi())
    }

    fn len(&self) -> usize {
        (self.n_theta + 1) * self.n_phi
    }
}

impl Default for SphereGrid {
    fn default() -> Self {
        Self { n_theta: 64, n_phi: 128, refine_tol: 1e-10, max_refine_iters: 200 }
    }
}

pub fn direction(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleOutcome {
    /// Minimum after refinement.
    pub value: f64,
    /// Minimum over the grid alone.
    pub grid_value: f64,
    pub theta: f64,
    pub phi: f64,
    pub e: [f64; 3],
    /// Whether the classical state implied by the optimum is positive.
    pub chi_psd_ok: bool,
    pub refine_iters: usize,
}

/// Qubit-1 rows `T_i..` (`i = 0..=3`) flattened over the other indices.
struct Rows {
    rows: [Vec<f64>; 4],
    norm: f64,
}

impl Rows {
    fn of(rho: &DensityMatrix) -> Result<Self> {
        match rho.dim() {
            8 => {
                let t = bloch3(rho)?;
                let row = |i| (0..16).map(|ab| t[(i, ab / 4, ab % 4)]).collect::<Vec<_>>();
                Ok(Rows { rows: [row(0), row(1), row(2), row(3)], norm: 8.0 })
            }
            4 => {
                let r = bloch2(rho)?;
                let row = |i| (0..4).map(|b| r[(i, b)]).collect::<Vec<_>>();
                Ok(Rows { rows: [row(0), row(1), row(2), row(3)], norm: 4.0 })
            }
            d => Err(Error::UnsupportedDimension(d)),
        }
    }

    /// `s_ab = sum_i e_i T_iab`, the optimal qubit-1-along-e coefficients.
    fn along(&self, e: &[f64; 3]) -> Vec<f64> {
        (0..self.rows[1].len())
            .map(|ab| e[0] * self.rows[1][ab] + e[1] * self.rows[2][ab] + e[2] * self.rows[3][ab])
            .collect()
    }

    /// `(1/N) sum_i sum_ab (T_iab - e_i s_ab)^2`.
    fn objective(&self, e: &[f64; 3]) -> f64 {
        let s = self.along(e);
        let mut acc = 0.0;
        for (ei, row) in e.iter().zip(&self.rows[1..]) {
            for (t, s) in row.iter().zip(&s) {
                let d = t - ei * s;
                acc += d * d;
            }
        }
        acc / self.norm
    }

    fn implied_chi(&self, e: &[f64; 3]) -> ComplexMatrix {
        let s = self.along(e);
        let coeff = |i: usize, ab: usize| if i == 0 { self.rows[0][ab] } else { e[i - 1] * s[ab] };
        if self.norm == 8.0 {
            let mut c = CorrelationTensor3::zeros();
            for i in 0..4 {
                for ab in 0..16 {
                    c.set(i, ab / 4, ab % 4, coeff(i, ab));
                }
            }
            inverse_bloch3(&c)
        } else {
            let mut c = [[0.0; 4]; 4];
            for (i, row) in c.iter_mut().enumerate() {
                for (b, slot) in row.iter_mut().enumerate() {
                    *slot = coeff(i, b);
                }
            }
            inverse_bloch2(&CorrelationMatrix2::new(c))
        }
    }
}

/// `rho` split as `[[A, B], [B^dagger, C]]` on qubit 1.
struct Qubit1Blocks {
    half: usize,
    blocks: [[Vec<C64>; 2]; 2],
    total_sq: f64,
}

impl Qubit1Blocks {
    fn of(rho: &DensityMatrix) -> Self {
        let m = rho.matrix();
        let half = m.dim() / 2;
        let block = |a: usize, b: usize| {
            let mut v = Vec::with_capacity(half * half);
            for r in 0..half {
                for c in 0..half {
                    v.push(m[(a * half + r, b * half + c)]);
                }
            }
            v
        };
        Self { half, blocks: [[block(0, 0), block(0, 1)], [block(1, 0), block(1, 1)]], total_sq: m.hs_norm_sq() }
    }

    /// `||rho - sum_k (P_k (x) I) rho (P_k (x) I)||^2` for `P_+- = (I +- e.s)/2`.
    ///
    /// The dephased state is the projection of `rho` onto the span of the
    /// `P_k (x) X`, so the distance is `||rho||^2 - ||chi||^2`, and
    /// `chi = sum_k P_k (x) Tr_1[(P_k (x) I) rho]`.
    fn objective(&self, e: &[f64; 3]) -> f64 {
        let n = self.half * self.half;
        let mut chi_sq = 0.0;
        for sign in [1.0, -1.0] {
            let p = projector(e, sign);
            // Tr_1[(P (x) I) rho] = sum_ab P_ba rho_ab
            let mut m = vec![C64::new(0.0, 0.0); n];
            for (a, row) in self.blocks.iter().enumerate() {
                for (b, block) in row.iter().enumerate() {
                    let w = p[b][a];
                    if w == C64::new(0.0, 0.0) {
                        continue;
                    }
                    for (slot, x) in m.iter_mut().zip(block) {
                        *slot += w * x;
                    }
                }
            }
            // ||P (x) M||^2 = ||P||^2 ||M||^2 with ||P||^2 = 1
            chi_sq += m.iter().map(|z| z.norm_sqr()).sum::<f64>();
        }
        (self.total_sq - chi_sq).max(0.0)
    }
}

fn projector(e: &[f64; 3], sign: f64) -> [[C64; 2]; 2] {
    let h = 0.5 * sign;
    [
        [C64::new(0.5 + h * e[2], 0.0), C64::new(h * e[0], -h * e[1])],
        [C64::new(h * e[0], h * e[1]), C64::new(0.5 - h * e[2], 0.0)],
    ]
}

/// Golden-section search for the minimum of `f` on `[lo, hi]`.
fn golden_section(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > 1e-12 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

struct Minimum {
    value: f64,
    grid_value: f64,
    theta: f64,
    phi: f64,
    iters: usize,
}

fn minimize(grid: &SphereGrid, f: impl Fn(&[f64; 3]) -> f64 + Sync + Send) -> Minimum {
    let values = map_range(grid.len(), |idx| {
        let (theta, phi) = grid.point(idx);
        f(&direction(theta, phi))
    });
    let (best_idx, grid_value) = values
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |(bi, bv), (i, &v)| if v < bv { (i, v) } else { (bi, bv) });
    let (mut theta, mut phi) = grid.point(best_idx);
    let mut value = grid_value;

    let mut iters = 0;
    while iters < grid.max_refine_iters {
        iters += 1;
        let start = value;
        let ft = |t: f64| f(&direction(t, phi));
        let (t, v) = golden_section(&ft, theta - grid.d_theta(), theta + grid.d_theta());
        if v < value {
            theta = t;
            value = v;
        }
        let fp = |p: f64| f(&direction(theta, p));
        let (p, v) = golden_section(&fp, phi - grid.d_phi(), phi + grid.d_phi());
        if v < value {
            phi = p;
            value = v;
        }
        if start - value < grid.refine_tol {
            break;
        }
    }
    Minimum { value, grid_value, theta, phi, iters }
}

fn require_dim(rho: &DensityMatrix, dims: &[usize]) -> Result<()> {
    if !dims.contains(&rho.dim()) {
        return Err(Error::DimensionMismatch { expected: dims[0], found: rho.dim() });
    }
    Ok(())
}

fn chi_is_psd(chi: &ComplexMatrix) -> Result<bool> {
    Ok(hermitian_eigenvalues(chi)?[0] >= tol::PSD)
}

/// Discord from the Fano-Bloch objective minimised over the sphere.
/// Accepts three-qubit states, and two-qubit states with the `1/4` prefactor.
pub fn oracle_discord_sphere(rho: &DensityMatrix, grid: &SphereGrid) -> Result<OracleOutcome> {
    require_dim(rho, &[8, 4])?;
    let rows = Rows::of(rho)?;
    let m = minimize(grid, |e| rows.objective(e));
    let e = direction(m.theta, m.phi);
    Ok(OracleOutcome {
        value: m.value,
        grid_value: m.grid_value,
        theta: m.theta,
        phi: m.phi,
        e,
        chi_psd_ok: chi_is_psd(&rows.implied_chi(&e))?,
        refine_iters: m.iters,
    })
}

/// Discord as the smallest distance from `rho` to its qubit-1 dephasing
/// along some direction.
pub fn oracle_discord_measurement(rho: &DensityMatrix, grid: &SphereGrid) -> Result<OracleOutcome> {
    require_dim(rho, &[8, 4])?;
    let blocks = Qubit1Blocks::of(rho);
    let m = minimize(grid, |e| blocks.objective(e));
    let e = direction(m.theta, m.phi);
    Ok(OracleOutcome {
        value: m.value,
        grid_value: m.grid_value,
        theta: m.theta,
        phi: m.phi,
        e,
        chi_psd_ok: chi_is_psd(&dephase_qubit1(rho, &e))?,
        refine_iters: m.iters,
    })
}

/// `sum_k (P_k (x) I) rho (P_k (x) I)` with `P_+- = (I +- e.s)/2`.
pub fn dephase_qubit1(rho: &DensityMatrix, e: &[f64; 3]) -> ComplexMatrix {
    let m = rho.matrix();
    let half = m.dim() / 2;
    let mut out = ComplexMatrix::zeros(m.dim());
    for sign in [1.0, -1.0] {
        let p = projector(e, sign);
        for r in 0..m.dim() {
            for c in 0..m.dim() {
                let (a, i) = (r / half, r % half);
                let (b, j) = (c / half, c % half);
                let mut acc = C64::new(0.0, 0.0);
                for x in 0..2 {
                    for y in 0..2 {
                        acc += p[a][x] * m[(x * half + i, y * half + j)] * p[y][b];
                    }
                }
                out[(r, c)] += acc;
            }
        }
    }
    out
}

/// `||rho - chi||_HS^2`.
pub fn hs_distance_to_classical(rho: &ComplexMatrix, chi: &ComplexMatrix) -> Result<f64> {
    if rho.dim() != chi.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), found: chi.dim() });
    }
    Ok((rho - chi).hs_norm_sq())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xstate::ghz_mixed;

    fn coarse() -> SphereGrid {
        SphereGrid::new(16, 32, 1e-12, 200).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(SphereGrid::new(7, 32, 1e-10, 10).is_err());
        assert!(SphereGrid::new(8, 15, 1e-10, 10).is_err());
        assert!(SphereGrid::new(8, 16, 0.0, 10).is_err());
        assert!(SphereGrid::new(8, 16, f64::NAN, 10).is_err());
        assert_eq!(SphereGrid::default(), SphereGrid::new(64, 128, 1e-10, 200).unwrap());
    }

    #[test]
    fn ghz_half_mixed() {
        let rho = ghz_mixed(0.5).unwrap();
        let s = oracle_discord_sphere(&rho, &coarse()).unwrap();
        let m = oracle_discord_measurement(&rho, &coarse()).unwrap();
        assert!((s.value - 0.125).abs() < 1e-9);
        assert!((m.value - 0.125).abs() < 1e-9);
        assert!(s.chi_psd_ok && m.chi_psd_ok);
    }

    #[test]
    fn maximally_mixed_is_zero() {
        let rho = DensityMatrix::maximally_mixed(8).unwrap();
        assert!(oracle_discord_sphere(&rho, &coarse()).unwrap().value.abs() < 1e-12);
        assert!(oracle_discord_measurement(&rho, &coarse()).unwrap().value.abs() < 1e-12);
    }

    #[test]
    fn dephasing_matches_block_objective() {
        let rho = ghz_mixed(0.2).unwrap();
        let blocks = Qubit1Blocks::of(&rho);
        let e = direction(0.7, 1.9);
        let chi = dephase_qubit1(&rho, &e);
        let direct = hs_distance_to_classical(rho.matrix(), &chi).unwrap();
        assert!((blocks.objective(&e) - direct).abs() < 1e-14);
        assert!((chi.trace().re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn purity_identity() {
        let rho = ghz_mixed(0.3).unwrap();
        let chi = ComplexMatrix::identity(8).scale_real(0.125);
        let purity = rho.matrix().matmul(rho.matrix()).trace().re;
        let d = hs_distance_to_classical(rho.matrix(), &chi).unwrap();
        assert!((d - (purity - 0.125)).abs() < 1e-14);
        assert!(hs_distance_to_classical(rho.matrix(), &ComplexMatrix::identity(4)).is_err());
    }

    #[test]
    fn golden_section_finds_parabola_minimum() {
        let (x, v) = golden_section(&|x: f64| (x - 0.3).powi(2) + 1.0, -1.0, 1.0);
        assert!((x - 0.3).abs() < 1e-6);
        assert!((v - 1.0).abs() < 1e-12);
    }
}
