//! Dense complex matrices of small dimension.
//!
//! Everything here is sized for at most three qubits (dimension 8) and
//! favours clarity over blocking or SIMD. Qubit 1 is always the slowest
//! index of the tensor-product layout.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

pub type C64 = Complex64;

const MAX_KRON_DIM: usize = 64;

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![C64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from row-major entries; `data.len()` must be a square.
    pub fn from_row_major(data: Vec<C64>) -> Result<Self> {
        let dim = (data.len() as f64).sqrt().round() as usize;
        if dim * dim != data.len() || dim == 0 {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: data.len() });
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        m
    }

    /// Outer product `|psi><psi|`.
    pub fn projector(psi: &[C64]) -> Self {
        Self::from_fn(psi.len(), |r, c| psi[r] * psi[c].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * other.data[k * n + c];
                }
            }
        }
        out
    }

    /// Tensor product with `self` as the slow index.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let dim = self.dim * other.dim;
        if dim > MAX_KRON_DIM {
            return Err(Error::DimensionTooLarge(dim));
        }
        let m = other.dim;
        Ok(Self::from_fn(dim, |r, c| self[(r / m, c / m)] * other[(r % m, c % m)]))
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |M - M^dagger|` entrywise.
    pub fn hermiticity_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// `Tr(self^dagger other)`.
    pub fn hs_inner(&self, other: &Self) -> C64 {
        assert_eq!(self.dim, other.dim, "hs_inner dimension mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn hs_norm_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    fn n_qubits(&self) -> Result<usize> {
        match self.dim {
            2 => Ok(1),
            4 => Ok(2),
            8 => Ok(3),
            d => Err(Error::UnsupportedDimension(d)),
        }
    }

    /// Traces out qubit `qubit` (1-based, qubit 1 slowest). Remaining qubits
    /// keep their relative order.
    pub fn partial_trace(&self, qubit: usize) -> Result<Self> {
        let n = self.n_qubits()?;
        if n < 2 {
            return Err(Error::UnsupportedDimension(self.dim));
        }
        if qubit == 0 || qubit > n {
            return Err(Error::QubitIndex { qubit, n_qubits: n });
        }
        let shift = n - qubit;
        let low_mask = (1usize << shift) - 1;
        let expand = |i: usize, b: usize| ((i & !low_mask) << 1) | (b << shift) | (i & low_mask);
        let out_dim = self.dim / 2;
        Ok(Self::from_fn(out_dim, |r, c| {
            (0..2).map(|b| self[(expand(r, b), expand(c, b))]).sum()
        }))
    }

    /// Relabels qubits: qubit `k` of the result is qubit `perm[k]` (1-based)
    /// of `self`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n_qubits()?;
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::Parameter(format!("permutation must list {n} qubits")));
        }
        for &p in perm {
            if p == 0 || p > n || seen[p - 1] {
                return Err(Error::Parameter(format!("{perm:?} is not a permutation of 1..={n}")));
            }
            seen[p - 1] = true;
        }
        // bit of new qubit k sits at position n-1-k; it carries old qubit perm[k]
        let map = |i: usize| {
            let mut j = 0;
            for (k, &p) in perm.iter().enumerate() {
                let bit = (i >> (n - 1 - k)) & 1;
                j |= bit << (n - p);
            }
            j
        };
        Ok(Self::from_fn(self.dim, |r, c| self[(map(r), map(c))]))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        assert!(r < self.dim && c < self.dim, "index ({r}, {c}) out of bounds");
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        assert!(r < self.dim && c < self.dim, "index ({r}, {c}) out of bounds");
        &mut self.data[r * self.dim + c]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "add dimension mismatch");
        ComplexMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "sub dimension mismatch");
        ComplexMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|c| {
                    let z = self[(r, c)];
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// The single-qubit Pauli basis: identity, x, y, z.
pub fn pauli(alpha: usize) -> Result<ComplexMatrix> {
    let o = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let data = match alpha {
        0 => vec![one, o, o, one],
        1 => vec![o, one, one, o],
        2 => vec![o, -i, i, o],
        3 => vec![one, o, o, -one],
        _ => return Err(Error::PauliIndex(alpha)),
    };
    Ok(ComplexMatrix { dim: 2, data })
}

/// Tensor product `a (x) b`, rejecting results larger than 64x64.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.kron(b)
}

/// `Tr(a^dagger a)`.
pub fn hs_norm_sq(a: &ComplexMatrix) -> f64 {
    a.hs_norm_sq()
}

/// Converts a 1-based index of the block layout `|q3 q1 q2>` (qubit 3
/// slowest, as in the block decomposition `rho = sum rho^ij (x) |i><j|`
/// written with offsets `a + 4i`) into the 0-based storage index of
/// `|q1 q2 q3>`.
pub fn block_index(n: usize) -> usize {
    assert!((1..=8).contains(&n), "block index {n} out of range 1..=8");
    let m = n - 1;
    let q3 = m >> 2;
    let q1 = (m >> 1) & 1;
    let q2 = m & 1;
    (q1 << 2) | (q2 << 1) | q3
}

/// Eigen-decomposition of a real symmetric matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector of `values[k]`.
    pub vectors: Vec<Vec<f64>>,
}

/// Cyclic Jacobi on a row-major real symmetric `n x n` matrix.
pub fn symmetric_eigen(a: &[f64], n: usize) -> SymmetricEigen {
    assert_eq!(a.len(), n * n, "symmetric_eigen expects n*n entries");
    let mut m = a.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let norm = m.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = tol::JACOBI_OFF * norm.max(1.0);

    for _ in 0..tol::JACOBI_MAX_SWEEPS {
        let off = off_diagonal_norm(&m, n);
        if off <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
                let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let kp = m[k * n + p];
                    let kq = m[k * n + q];
                    m[k * n + p] = c * kp - s * kq;
                    m[k * n + q] = s * kp + c * kq;
                }
                for k in 0..n {
                    let pk = m[p * n + k];
                    let qk = m[q * n + k];
                    m[p * n + k] = c * pk - s * qk;
                    m[q * n + k] = s * pk + c * qk;
                }
                for k in 0..n {
                    let kp = v[k * n + p];
                    let kq = v[k * n + q];
                    v[k * n + p] = c * kp - s * kq;
                    v[k * n + q] = s * kp + c * kq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].total_cmp(&m[j * n + j]));
    SymmetricEigen {
        values: order.iter().map(|&i| m[i * n + i]).collect(),
        vectors: order.iter().map(|&i| (0..n).map(|k| v[k * n + i]).collect()).collect(),
    }
}

fn off_diagonal_norm(m: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += m[r * n + c] * m[r * n + c];
            }
        }
    }
    s.sqrt()
}

/// Real eigenvalues of a Hermitian matrix, ascending.
///
/// Runs [`symmetric_eigen`] on the real embedding `[[A, -B], [B, A]]` of
/// `A + iB`, whose spectrum is that of `m` with every eigenvalue doubled.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let residual = m.hermiticity_residual();
    if residual > tol::HERMITIAN {
        return Err(Error::NotHermitian(residual));
    }
    let n = m.dim();
    let big = 2 * n;
    let mut e = vec![0.0; big * big];
    for r in 0..n {
        for c in 0..n {
            // symmetrise so the embedding is exactly symmetric
            let z = 0.5 * (m[(r, c)] + m[(c, r)].conj());
            e[r * big + c] = z.re;
            e[(r + n) * big + (c + n)] = z.re;
            e[r * big + (c + n)] = -z.im;
            e[(r + n) * big + c] = z.im;
        }
    }
    let eig = symmetric_eigen(&e, big);
    Ok(eig.values.chunks(2).map(|pair| 0.5 * (pair[0] + pair[1])).collect())
}

/// A validated density matrix of one, two or three qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    /// Checks hermiticity, unit trace and positivity, in that order.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !matches!(m.dim(), 2 | 4 | 8) {
            return Err(Error::UnsupportedDimension(m.dim()));
        }
        let herm = m.hermiticity_residual();
        if herm > tol::HERMITIAN {
            return Err(Error::NotHermitian(herm));
        }
        let trace = (m.trace() - C64::new(1.0, 0.0)).norm();
        if trace > tol::TRACE {
            return Err(Error::Trace(trace));
        }
        let min = hermitian_eigenvalues(&m)?[0];
        if min < tol::PSD {
            return Err(Error::NotPositive(min));
        }
        Ok(Self(m))
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Self::new(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64))
    }

    /// `|psi><psi|` after normalising `psi`.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::Parameter("zero state vector".into()));
        }
        let unit: Vec<C64> = psi.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::projector(&unit))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn n_qubits(&self) -> usize {
        self.0.dim().trailing_zeros() as usize
    }

    /// Entry of a three-qubit state addressed in the 1-based block layout
    /// (see [`block_index`]).
    pub fn block_entry(&self, row: usize, col: usize) -> C64 {
        assert_eq!(self.dim(), 8, "block layout is defined for three qubits");
        self.0[(block_index(row), block_index(col))]
    }

    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self> {
        Ok(Self(self.0.permute_qubits(perm)?))
    }
}

impl AsRef<ComplexMatrix> for DensityMatrix {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.0
    }
}

/// `Tr_k(rho)` for qubit `traced_qubit` (1-based).
pub fn partial_trace(rho: &DensityMatrix, traced_qubit: usize) -> Result<DensityMatrix> {
    DensityMatrix::new(rho.matrix().partial_trace(traced_qubit)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn pauli_basics() {
        assert_eq!(pauli(0).unwrap(), ComplexMatrix::identity(2));
        assert_eq!(pauli(3).unwrap(), ComplexMatrix::from_real_diagonal(&[1.0, -1.0]));
        assert!(matches!(pauli(4), Err(Error::PauliIndex(4))));
        for i in 0..4 {
            for j in 0..4 {
                let tr = pauli(i).unwrap().matmul(&pauli(j).unwrap()).trace();
                let expected = if i == j { 2.0 } else { 0.0 };
                assert!((tr - c(expected)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn kron_layout() {
        let z = pauli(3).unwrap();
        let parity = kron(&z, &kron(&z, &pauli(0).unwrap()).unwrap()).unwrap();
        let expected = ComplexMatrix::from_real_diagonal(&[1.0, 1.0, -1.0, -1.0, -1.0, -1.0, 1.0, 1.0]);
        assert_eq!(parity, expected);
        let id = kron(&pauli(0).unwrap(), &pauli(0).unwrap()).unwrap();
        assert_eq!(id, ComplexMatrix::identity(4));
        let big = ComplexMatrix::identity(16);
        assert!(matches!(kron(&big, &big), Err(Error::DimensionTooLarge(256))));
    }

    #[test]
    fn eigenvalues_of_simple_matrices() {
        let d = ComplexMatrix::from_real_diagonal(&[3.0, 1.0, 2.0]);
        let ev = hermitian_eigenvalues(&d).unwrap();
        assert!(ev.iter().zip([1.0, 2.0, 3.0]).all(|(a, b)| (a - b).abs() < 1e-14));

        let mixed = ComplexMatrix::identity(8).scale_real(0.125);
        for v in hermitian_eigenvalues(&mixed).unwrap() {
            assert!((v - 0.125).abs() < 1e-15);
        }

        let mut sy = ComplexMatrix::zeros(2);
        sy[(0, 1)] = C64::new(0.0, -1.0);
        sy[(1, 0)] = C64::new(0.0, 1.0);
        let ev = hermitian_eigenvalues(&sy).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigenvalues_reject_non_hermitian() {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 1)] = c(1.0);
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn density_validation_reports_residuals() {
        let m = ComplexMatrix::identity(8).scale_real(0.9 / 8.0);
        match DensityMatrix::new(m) {
            Err(Error::Trace(r)) => assert!((r - 0.1).abs() < 1e-12),
            other => panic!("expected trace failure, got {other:?}"),
        }
        let m = ComplexMatrix::from_real_diagonal(&[1.5, -0.5]);
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotPositive(_))));
        assert!(matches!(
            DensityMatrix::new(ComplexMatrix::identity(3)),
            Err(Error::UnsupportedDimension(3))
        ));
    }

    #[test]
    fn partial_trace_of_ghz() {
        let mut psi = vec![c(0.0); 8];
        psi[0] = c(1.0);
        psi[7] = c(1.0);
        let ghz = DensityMatrix::pure(&psi).unwrap();
        let r = partial_trace(&ghz, 3).unwrap();
        let expected = ComplexMatrix::from_real_diagonal(&[0.5, 0.0, 0.0, 0.5]);
        assert!((r.matrix() - &expected).max_abs() < 1e-15);
        assert!(matches!(partial_trace(&ghz, 4), Err(Error::QubitIndex { .. })));
        assert!(matches!(partial_trace(&ghz, 0), Err(Error::QubitIndex { .. })));
    }

    #[test]
    fn hs_norm_of_projector_is_one() {
        let psi = [c(0.6), C64::new(0.0, 0.8)];
        assert!((hs_norm_sq(&ComplexMatrix::projector(&psi)) - 1.0).abs() < 1e-15);
        assert_eq!(hs_norm_sq(&ComplexMatrix::zeros(4)), 0.0);
    }

    #[test]
    fn block_index_matches_offset_formula() {
        // offsets a + 4i address qubit-3 value i and (q1 q2) pair a - 1
        for i in 0..2 {
            for a in 1..=4 {
                let pair = a - 1;
                assert_eq!(block_index(a + 4 * i), 2 * pair + i);
            }
        }
    }

    #[test]
    fn permutation_swaps_tensor_factors() {
        let a = pauli(1).unwrap();
        let b = pauli(3).unwrap();
        let ab = kron(&a, &b).unwrap();
        let ba = kron(&b, &a).unwrap();
        assert_eq!(ab.permute_qubits(&[2, 1]).unwrap(), ba);
        assert!(ab.permute_qubits(&[1, 1]).is_err());
    }
}
