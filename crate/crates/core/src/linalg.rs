//! Dense complex linear algebra for one, two and three qubits.
//!
//! Matrices are stored row-major. The basis index of a multi-qubit operator
//! follows `|abc> <-> 4a + 2b + c`, so qubit A is the most significant bit.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::party::PartySet;

/// Maximum |M - M^dagger| accepted for a matrix to count as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Maximum |tr(rho) - 1| accepted for a density matrix.
pub const TRACE_TOL: f64 = 1e-12;
/// Eigenvalues in `[-NEGATIVE_EIG_TOL, 0)` are treated as rounding noise.
pub const NEGATIVE_EIG_TOL: f64 = 1e-10;
/// Off-diagonal Frobenius norm at which Jacobi sweeps stop.
pub const JACOBI_TOL: f64 = 1e-13;
/// Eigenvalues below this are rejected by [`psd_sqrt`].
pub const PSD_SQRT_TOL: f64 = 1e-8;

const MAX_JACOBI_SWEEPS: usize = 64;

/// Square complex matrix of dimension 2, 4 or 8.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        2 | 4 | 8 => Ok(()),
        _ => Err(Error::UnsupportedDimension(dim)),
    }
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self::zeros_unchecked(dim))
    }

    pub(crate) fn zeros_unchecked(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        Ok(m)
    }

    /// Builds a matrix from `dim * dim` row-major entries.
    pub fn from_row_major(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                actual: data.len(),
            });
        }
        Ok(ComplexMatrix { dim, data })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(diag.len())?;
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        Ok(m)
    }

    /// Outer product `|u><v|`.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch {
                expected: u.len(),
                actual: v.len(),
            });
        }
        let mut m = Self::zeros(u.len())?;
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                m[(i, j)] = ui * vj.conj();
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros_unchecked(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Entry-wise complex conjugate in the computational basis.
    pub fn conj(&self) -> Self {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |M - M^dagger|` over all entries.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_error() <= HERMITIAN_TOL
    }

    /// Returns `(M + M^dagger) / 2`.
    pub(crate) fn hermitian_part(&self) -> Self {
        let mut out = Self::zeros_unchecked(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub(crate) fn matmul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros_unchecked(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

pub fn pauli_x() -> ComplexMatrix {
    let (o, l) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    ComplexMatrix { dim: 2, data: vec![o, l, l, o] }
}

pub fn pauli_y() -> ComplexMatrix {
    let (o, i) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0));
    ComplexMatrix { dim: 2, data: vec![o, -i, i, o] }
}

pub fn pauli_z() -> ComplexMatrix {
    let (o, l) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    ComplexMatrix { dim: 2, data: vec![l, o, o, -l] }
}

/// Kronecker product `left ⊗ right`; `left` acts on the more significant qubits.
pub fn tensor_product(left: &ComplexMatrix, right: &ComplexMatrix) -> Result<ComplexMatrix> {
    let dim = left.dim * right.dim;
    if dim > 8 {
        return Err(Error::DimensionOverflow {
            left: left.dim,
            right: right.dim,
        });
    }
    let mut out = ComplexMatrix::zeros_unchecked(dim);
    for i in 0..left.dim {
        for j in 0..left.dim {
            let a = left[(i, j)];
            for k in 0..right.dim {
                for l in 0..right.dim {
                    out[(i * right.dim + k, j * right.dim + l)] = a * right[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let herm = matrix.hermiticity_error();
        if herm > HERMITIAN_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::NotUnitTrace(tr.re));
        }
        let smallest = hermitian_eigs(&matrix)?
            .last()
            .copied()
            .unwrap_or_default();
        if smallest < -NEGATIVE_EIG_TOL {
            return Err(Error::NotPositive(smallest));
        }
        Ok(DensityMatrix { matrix })
    }

    /// Wraps a matrix already known to be a density matrix (a reduction or a
    /// projector built inside the crate).
    pub(crate) fn from_trusted(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.hermiticity_error() < 1e-9);
        DensityMatrix { matrix }
    }

    /// Projector onto a normalized pure state.
    pub fn pure(amplitudes: &[Complex64]) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(norm.sqrt()));
        }
        Ok(DensityMatrix::from_trusted(ComplexMatrix::outer(amplitudes, amplitudes)?))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim
    }

    pub fn n_qubits(&self) -> usize {
        self.matrix.dim.trailing_zeros() as usize
    }

    /// `tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        // tr(rho rho) = sum |rho_ij|^2 for Hermitian rho
        self.matrix.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Eigenvalues in descending order, negatives in the noise band set to 0.
    pub fn spectrum(&self) -> Vec<f64> {
        let mut values = hermitian_eigs(&self.matrix).expect("density matrix is Hermitian");
        for v in &mut values {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        values
    }
}

/// Traces out every qubit not in `keep`. A 4x4 input is read as parties A, B.
pub fn partial_trace(rho: &DensityMatrix, keep: PartySet) -> Result<DensityMatrix> {
    let n = rho.n_qubits();
    let kept = keep.positions(n)?;
    Ok(DensityMatrix::from_trusted(trace_out(&rho.matrix, n, &kept)))
}

/// Keeps the qubits at `kept` (sorted positions) of an `n`-qubit operator.
pub(crate) fn trace_out(m: &ComplexMatrix, n: usize, kept: &[usize]) -> ComplexMatrix {
    let traced: Vec<usize> = (0..n).filter(|q| !kept.contains(q)).collect();
    let out_dim = 1 << kept.len();
    let mut out = ComplexMatrix::zeros_unchecked(out_dim);
    let bit = |q: usize| 1usize << (n - 1 - q);
    let embed = |sub: usize, qubits: &[usize]| -> usize {
        qubits
            .iter()
            .enumerate()
            .filter(|&(k, _)| sub & (1 << (qubits.len() - 1 - k)) != 0)
            .map(|(_, &q)| bit(q))
            .sum()
    };
    for r in 0..out_dim {
        let row = embed(r, kept);
        for c in 0..out_dim {
            let col = embed(c, kept);
            let mut acc = Complex64::new(0.0, 0.0);
            for t in 0..(1 << traced.len()) {
                let shared = embed(t, &traced);
                acc += m[(row | shared, col | shared)];
            }
            out[(r, c)] = acc;
        }
    }
    out
}

/// Eigendecomposition of a Hermitian matrix: `M = V diag(values) V^dagger`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Real eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V f(Λ) V^dagger`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.vectors.dim;
        let mut out = ComplexMatrix::zeros_unchecked(n);
        for (k, &lambda) in self.values.iter().enumerate() {
            let w = f(lambda);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = self.vectors[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vik * self.vectors[(j, k)].conj();
                }
            }
        }
        out
    }
}

/// Cyclic complex Jacobi eigensolver.
pub fn hermitian_eigh(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let scale = m.frobenius_norm().max(1.0);
    let herm = m.hermiticity_error();
    if herm > 1e-10 * scale {
        return Err(Error::NotHermitian(herm));
    }
    let n = m.dim;
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n)?;

    for _ in 0..MAX_JACOBI_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= JACOBI_TOL * scale {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros_unchecked(n);
    for (new, &old) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, new)] = v[(i, old)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Annihilates `a[(p, q)]` with a unitary rotation in the (p, q) plane.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let z = a[(p, q)];
    let r = z.norm();
    if r < 1e-300 {
        return;
    }
    let n = a.dim;
    // phase that makes the pivot real and positive
    let phase = z / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // U restricted to (p, q) columns: [[c, s], [-s e^{-ig}, c e^{-ig}]]
    let up_q = -phase.conj() * s;
    let uq_q = phase.conj() * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * up_q;
        a[(k, q)] = akp * s + akq * uq_q;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * up_q.conj();
        a[(q, k)] = apk * s + aqk * uq_q.conj();
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * up_q;
        v[(k, q)] = vkp * s + vkq * uq_q;
    }
}

/// Real eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigs(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if m.dim == 2 {
        return hermitian_eigs_2x2(m);
    }
    Ok(hermitian_eigh(m)?.values)
}

fn hermitian_eigs_2x2(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let herm = m.hermiticity_error();
    if herm > 1e-10 * m.frobenius_norm().max(1.0) {
        return Err(Error::NotHermitian(herm));
    }
    let (hi, lo) = eig2(m[(0, 0)].re, m[(1, 1)].re, (m[(0, 1)] + m[(1, 0)].conj()) * 0.5);
    Ok(vec![hi, lo])
}

/// Eigenvalues `(larger, smaller)` of `[[a, b], [b*, d]]`.
#[inline]
pub(crate) fn eig2(a: f64, d: f64, b: Complex64) -> (f64, f64) {
    let mean = 0.5 * (a + d);
    let half_gap = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    (mean + half_gap, mean - half_gap)
}

/// Principal square root of a positive semidefinite matrix.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigh(m)?;
    if let Some(&smallest) = eig.values.last() {
        if smallest < -PSD_SQRT_TOL {
            return Err(Error::NotPositive(smallest));
        }
    }
    Ok(eig.reconstruct_with(|x| x.max(0.0).sqrt()))
}

/// `-sum x log2 x` over a spectrum, with `0 log 0 = 0` and noise negatives dropped.
pub fn spectrum_entropy(values: &[f64]) -> f64 {
    values
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    spectrum_entropy(&rho.spectrum())
}

/// Binary Shannon entropy in bits.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&x) || x.is_nan() {
        return Err(Error::Domain {
            name: "probability",
            value: x,
            range: "[0, 1]",
        });
    }
    Ok(h2(x.clamp(0.0, 1.0)))
}

#[inline]
pub(crate) fn h2(x: f64) -> f64 {
    let mut s = 0.0;
    if x > 0.0 {
        s -= x * x.log2();
    }
    if x < 1.0 {
        s -= (1.0 - x) * (1.0 - x).log2();
    }
    s
}
