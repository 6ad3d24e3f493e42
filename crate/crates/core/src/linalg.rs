//! Dense complex matrix kernel.
//!
//! Everything operator-level in this crate reduces to a handful of dense
//! complex primitives: Hermitian eigendecomposition, positivity
//! certification with a scale-free tolerance, and positive square roots.
//! Matrices are stored row-major; inner products are linear in the second
//! variable. Residual norms are Frobenius norms unless a doc comment says
//! otherwise.

use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

/// Relative Hermitian-residual threshold below which a matrix is silently
/// symmetrized before eigendecomposition. Larger residuals are an error:
/// rounding noise must not masquerade as non-Hermitian structure.
pub const HERMITIAN_RESIDUAL_TOL: f64 = 1e-12;

/// Default tolerance for positivity certification.
pub const PSD_TOL: f64 = 1e-10;

/// A dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

/// Result of a positivity certificate: `is_psd` holds exactly when the
/// minimum eigenvalue of the Hermitian part clears `-tol * (1 + op_norm)`.
#[derive(Debug, Clone, Copy)]
pub struct PsdReport {
    pub is_psd: bool,
    pub min_eig: f64,
    pub op_norm: f64,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(CMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = CMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn diag(entries: &[f64]) -> Self {
        let mut m = CMatrix::zeros(entries.len(), entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = Complex64::new(x, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "add: shape mismatch"
        );
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "sub: shape mismatch"
        );
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: Complex64) -> CMatrix {
        let data = self.data.iter().map(|a| a * c).collect();
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale_re(&self, c: f64) -> CMatrix {
        self.scale(Complex64::new(c, 0.0))
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "matmul: inner dimensions differ");
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn conj(&self) -> CMatrix {
        let data = self.data.iter().map(|a| a.conj()).collect();
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// Entrywise maximum of |M - M*|.
    pub fn hermitian_residual(&self) -> f64 {
        assert!(self.is_square());
        let mut r = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                r = r.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        r
    }

    /// Hermitian part (M + M*)/2.
    pub fn hermitian_part(&self) -> CMatrix {
        assert!(self.is_square());
        let mut out = CMatrix::zeros(self.rows, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
            }
        }
        out
    }

    /// Spectral norm, computed as sqrt of the top eigenvalue of M*M.
    /// Valid for arbitrary (non-Hermitian, rectangular) matrices.
    pub fn operator_norm(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            return 0.0;
        }
        let gram = self.adjoint().matmul(self);
        let (eigs, _) = hermitian_eig_unchecked(&gram.hermitian_part());
        eigs.last().copied().unwrap_or(0.0).max(0.0).sqrt()
    }

    /// Extract the k-by-k block at block position (i, j) of a block matrix.
    pub fn block(&self, k: usize, i: usize, j: usize) -> CMatrix {
        let mut out = CMatrix::zeros(k, k);
        for r in 0..k {
            for c in 0..k {
                out[(r, c)] = self[(i * k + r, j * k + c)];
            }
        }
        out
    }

    /// Write the k-by-k block `b` at block position (i, j).
    pub fn set_block(&mut self, k: usize, i: usize, j: usize, b: &CMatrix) {
        for r in 0..k {
            for c in 0..k {
                self[(i * k + r, j * k + c)] = b[(r, c)];
            }
        }
    }

    /// Add the k-by-k block `b` into block position (i, j).
    pub fn add_block(&mut self, k: usize, i: usize, j: usize, b: &CMatrix) {
        for r in 0..k {
            for c in 0..k {
                self[(i * k + r, j * k + c)] += b[(r, c)];
            }
        }
    }

    /// Eigendecomposition of a Hermitian matrix: M = U diag(eigs) U* with
    /// eigenvalues ascending and U unitary. The input is symmetrized first;
    /// a Hermitian residual above `1e-12 * (1 + max|M|)` is an error rather
    /// than something to paper over.
    pub fn hermitian_eig(&self) -> Result<(Vec<f64>, CMatrix)> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "hermitian_eig requires a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let tol = HERMITIAN_RESIDUAL_TOL * (1.0 + self.max_abs());
        let residual = self.hermitian_residual();
        if residual > tol {
            return Err(Error::NotHermitian { residual, tol });
        }
        Ok(hermitian_eig_unchecked(&self.hermitian_part()))
    }

    /// Positivity certificate for the Hermitian part of a square matrix.
    /// `is_psd` holds iff min_eig >= -tol * (1 + op_norm), where op_norm is
    /// the largest absolute eigenvalue of the Hermitian part.
    pub fn psd_check(&self, tol: f64) -> Result<PsdReport> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "psd_check requires a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        if self.rows == 0 {
            return Ok(PsdReport {
                is_psd: true,
                min_eig: 0.0,
                op_norm: 0.0,
            });
        }
        let (eigs, _) = hermitian_eig_unchecked(&self.hermitian_part());
        let min_eig = eigs[0];
        let op_norm = eigs[0].abs().max(eigs[eigs.len() - 1].abs());
        Ok(PsdReport {
            is_psd: min_eig >= -tol * (1.0 + op_norm),
            min_eig,
            op_norm,
        })
    }

    /// Positive square root of a PSD matrix. Eigenvalues in
    /// [-1e-9 * (1 + op_norm), 0) are clamped to zero; anything below that
    /// is a hard error.
    pub fn psd_sqrt(&self) -> Result<CMatrix> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "psd_sqrt requires a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        if self.rows == 0 {
            return Ok(self.clone());
        }
        let (eigs, u) = hermitian_eig_unchecked(&self.hermitian_part());
        let op_norm = eigs[0].abs().max(eigs[eigs.len() - 1].abs());
        let floor = -1e-9 * (1.0 + op_norm);
        if eigs[0] < floor {
            return Err(Error::NotPositive { min_eig: eigs[0] });
        }
        let sqrt_eigs: Vec<f64> = eigs.iter().map(|&l| l.max(0.0).sqrt()).collect();
        let mut scaled = u.clone();
        for j in 0..scaled.cols {
            for i in 0..scaled.rows {
                scaled[(i, j)] *= sqrt_eigs[j];
            }
        }
        Ok(scaled.matmul(&u.adjoint()))
    }

    /// Uniform random entries with real and imaginary parts in [-1, 1].
    pub fn random(rows: usize, cols: usize, rng: &mut impl Rng) -> CMatrix {
        CMatrix::from_fn(rows, cols, |_, _| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
    }

    /// Random Hermitian matrix: the Hermitian part of a uniform random matrix.
    pub fn random_hermitian(n: usize, rng: &mut impl Rng) -> CMatrix {
        CMatrix::random(n, n, rng).hermitian_part()
    }

    /// Random PSD matrix W*W from a uniform random W.
    pub fn random_psd(n: usize, rng: &mut impl Rng) -> CMatrix {
        let w = CMatrix::random(n, n, rng);
        w.adjoint().matmul(&w)
    }

    /// Haar-ish random unitary: the eigenvector matrix of a random Hermitian
    /// matrix. Orthonormal to machine precision by construction.
    pub fn random_unitary(n: usize, rng: &mut impl Rng) -> CMatrix {
        let h = CMatrix::random_hermitian(n, rng);
        let (_, u) = hermitian_eig_unchecked(&h);
        u
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Backend eigensolver on an already-Hermitian matrix. Eigenvalues ascending,
/// eigenvectors as the columns of a unitary matrix.
fn hermitian_eig_unchecked(h: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = h.rows;
    if n == 0 {
        return (Vec::new(), h.clone());
    }
    let m = DMatrix::from_fn(n, n, |i, j| h[(i, j)]);
    let se = m.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].partial_cmp(&se.eigenvalues[b]).unwrap());
    let eigs: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut u = CMatrix::zeros(n, n);
    for (jnew, &jold) in order.iter().enumerate() {
        for i in 0..n {
            u[(i, jnew)] = se.eigenvectors[(i, jold)];
        }
    }
    (eigs, u)
}
