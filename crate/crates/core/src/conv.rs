//! The convolution *-algebra of matrix-valued functions on a finite group,
//! together with its operator realizations.
//!
//! An [`OpValFn`] stores one k-by-k coefficient matrix per group element and
//! models an element `a = sum_t a(t) (x) lambda_t` of the k-by-k matrix
//! amplification of the group algebra. A [`BlockOperator`] is the concrete
//! `(k|G|) x (k|G|)` matrix acting on `C^k (x) l2(G)`, stored as |G| x |G|
//! blocks of size k in canonical element order.
//!
//! Haar measure on a finite group is counting measure, so convolution is the
//! plain sum `(f*g)(t) = sum_s f(s) g(s^-1 t)` and no normalization constants
//! appear anywhere. The modular function enters `involute` and the modular
//! conjugation through the group's stored values; on finite groups those are
//! constantly one, but the formulas are written once for the general case.

use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::CMatrix;

/// A function G -> M_k(C), one coefficient matrix per group element.
#[derive(Debug, Clone)]
pub struct OpValFn {
    group: Arc<FiniteGroup>,
    k: usize,
    coeffs: Vec<CMatrix>,
}

impl OpValFn {
    pub fn zero(group: Arc<FiniteGroup>, k: usize) -> Self {
        let coeffs = (0..group.order()).map(|_| CMatrix::zeros(k, k)).collect();
        OpValFn { group, k, coeffs }
    }

    /// The point mass `delta_t (x) I_k`: identity block at `t`, zero elsewhere.
    pub fn delta(group: Arc<FiniteGroup>, t: usize, k: usize) -> Self {
        let mut f = Self::zero(group, k);
        f.coeffs[t] = CMatrix::identity(k);
        f
    }

    pub fn from_coeffs(group: Arc<FiniteGroup>, k: usize, coeffs: Vec<CMatrix>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::Shape(format!(
                "expected {} coefficients, got {}",
                group.order(),
                coeffs.len()
            )));
        }
        if let Some(bad) = coeffs.iter().find(|c| c.rows() != k || c.cols() != k) {
            return Err(Error::Shape(format!(
                "coefficient block is {}x{}, expected {k}x{k}",
                bad.rows(),
                bad.cols()
            )));
        }
        Ok(OpValFn { group, k, coeffs })
    }

    /// Scalar function from complex values (k = 1).
    pub fn scalar(group: Arc<FiniteGroup>, values: &[Complex64]) -> Result<Self> {
        let coeffs = values
            .iter()
            .map(|&v| CMatrix::from_fn(1, 1, |_, _| v))
            .collect();
        Self::from_coeffs(group, 1, coeffs)
    }

    /// Uniform random coefficients with entries in the complex unit box.
    pub fn random(group: Arc<FiniteGroup>, k: usize, rng: &mut impl Rng) -> Self {
        let coeffs = (0..group.order())
            .map(|_| CMatrix::random(k, k, rng))
            .collect();
        OpValFn { group, k, coeffs }
    }

    /// Random f symmetrized to satisfy f(t^-1) = f(t)*, i.e. (f + f*)/2, so
    /// that its left regular representation is Hermitian.
    pub fn random_hermitian_symmetrized(
        group: Arc<FiniteGroup>,
        k: usize,
        rng: &mut impl Rng,
    ) -> Self {
        let f = Self::random(group, k, rng);
        f.add(&f.involute()).scale_re(0.5)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coeff(&self, t: usize) -> &CMatrix {
        &self.coeffs[t]
    }

    pub fn set_coeff(&mut self, t: usize, c: CMatrix) {
        assert_eq!((c.rows(), c.cols()), (self.k, self.k));
        self.coeffs[t] = c;
    }

    pub fn scalar_value(&self, t: usize) -> Complex64 {
        assert_eq!(self.k, 1, "scalar_value requires k = 1");
        self.coeffs[t][(0, 0)]
    }

    /// Embed a scalar function as `f(t) I_k`, the coefficient picture of
    /// `1_{M_k} (x) lambda(f)`.
    pub fn embed_scalar(&self, k: usize) -> Result<Self> {
        if self.k != 1 {
            return Err(Error::Unsupported(
                "embed_scalar requires a scalar function".into(),
            ));
        }
        let coeffs = (0..self.group.order())
            .map(|t| CMatrix::identity(k).scale(self.scalar_value(t)))
            .collect();
        Ok(OpValFn {
            group: self.group.clone(),
            k,
            coeffs,
        })
    }

    fn check_compatible(&self, other: &OpValFn) -> Result<()> {
        if !self.group.same_group(&other.group) {
            return Err(Error::Shape("functions live on different groups".into()));
        }
        if self.k != other.k {
            return Err(Error::Shape(format!(
                "coefficient dimensions differ: {} vs {}",
                self.k, other.k
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &OpValFn) -> Self {
        self.check_compatible(other)
            .expect("add: incompatible operands");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        OpValFn {
            group: self.group.clone(),
            k: self.k,
            coeffs,
        }
    }

    pub fn sub(&self, other: &OpValFn) -> Self {
        self.check_compatible(other)
            .expect("sub: incompatible operands");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.sub(b))
            .collect();
        OpValFn {
            group: self.group.clone(),
            k: self.k,
            coeffs,
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.scale(c)).collect();
        OpValFn {
            group: self.group.clone(),
            k: self.k,
            coeffs,
        }
    }

    pub fn scale_re(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    /// Convolution `(f*g)(t) = sum_s f(s) g(s^-1 t)` with matrix products per
    /// term; the product of the algebra.
    pub fn convolve(&self, other: &OpValFn) -> Result<OpValFn> {
        self.check_compatible(other)?;
        let g = &self.group;
        let n = g.order();
        let mut out = OpValFn::zero(self.group.clone(), self.k);
        for s in 0..n {
            let fs = &self.coeffs[s];
            if fs.frobenius_norm() == 0.0 {
                continue;
            }
            let sinv = g.inv(s);
            for t in 0..n {
                let term = fs.matmul(&other.coeffs[g.mul(sinv, t)]);
                out.coeffs[t] = out.coeffs[t].add(&term);
            }
        }
        Ok(out)
    }

    /// The involution `f*(t) = Delta(t^-1) f(t^-1)^*` (conjugate transpose of
    /// the block, weighted by the stored modular function).
    pub fn involute(&self) -> OpValFn {
        let g = &self.group;
        let coeffs = (0..g.order())
            .map(|t| {
                let tinv = g.inv(t);
                self.coeffs[tinv].adjoint().scale_re(g.modular(tinv))
            })
            .collect();
        OpValFn {
            group: self.group.clone(),
            k: self.k,
            coeffs,
        }
    }

    /// Frobenius norm of the coefficient stack.
    pub fn frobenius_norm(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| {
                let f = c.frobenius_norm();
                f * f
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_residual(&self, other: &OpValFn) -> f64 {
        self.sub(other)
            .coeffs
            .iter()
            .map(|c| c.frobenius_norm())
            .fold(0.0, f64::max)
    }

    /// l2 inner product of scalar functions, linear in the second variable.
    pub fn inner_product(&self, other: &OpValFn) -> Result<Complex64> {
        self.check_compatible(other)?;
        if self.k != 1 {
            return Err(Error::Unsupported(
                "inner_product requires scalar functions".into(),
            ));
        }
        Ok((0..self.group.order())
            .map(|t| self.scalar_value(t).conj() * other.scalar_value(t))
            .sum())
    }
}

/// A `(k|G|) x (k|G|)` operator on `C^k (x) l2(G)` stored blockwise.
#[derive(Debug, Clone)]
pub struct BlockOperator {
    group: Arc<FiniteGroup>,
    k: usize,
    matrix: CMatrix,
}

impl BlockOperator {
    pub fn zeros(group: Arc<FiniteGroup>, k: usize) -> Self {
        let n = group.order() * k;
        BlockOperator {
            group,
            k,
            matrix: CMatrix::zeros(n, n),
        }
    }

    pub fn identity(group: Arc<FiniteGroup>, k: usize) -> Self {
        let n = group.order() * k;
        BlockOperator {
            group,
            k,
            matrix: CMatrix::identity(n),
        }
    }

    pub fn from_matrix(group: Arc<FiniteGroup>, k: usize, matrix: CMatrix) -> Result<Self> {
        let n = group.order() * k;
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::Shape(format!(
                "operator must be {n}x{n}, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(BlockOperator { group, k, matrix })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn block(&self, t: usize, s: usize) -> CMatrix {
        self.matrix.block(self.k, t, s)
    }

    pub fn set_block(&mut self, t: usize, s: usize, b: &CMatrix) {
        self.matrix.set_block(self.k, t, s, b);
    }

    pub fn add_block(&mut self, t: usize, s: usize, b: &CMatrix) {
        self.matrix.add_block(self.k, t, s, b);
    }

    pub fn matmul(&self, other: &BlockOperator) -> BlockOperator {
        assert!(self.group.same_group(&other.group) && self.k == other.k);
        BlockOperator {
            group: self.group.clone(),
            k: self.k,
            matrix: self.matrix.matmul(&other.matrix),
        }
    }

    pub fn add(&self, other: &BlockOperator) -> BlockOperator {
        BlockOperator {
            group: self.group.clone(),
            k: self.k,
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn sub(&self, other: &BlockOperator) -> BlockOperator {
        BlockOperator {
            group: self.group.clone(),
            k: self.k,
            matrix: self.matrix.sub(&other.matrix),
        }
    }

    pub fn adjoint(&self) -> BlockOperator {
        BlockOperator {
            group: self.group.clone(),
            k: self.k,
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.frobenius_norm()
    }

    /// Apply to a `(k|G|) x m` matrix of column vectors.
    pub fn apply(&self, v: &CMatrix) -> CMatrix {
        self.matrix.matmul(v)
    }

    pub fn commutator(&self, other: &BlockOperator) -> BlockOperator {
        self.matmul(other).sub(&other.matmul(self))
    }
}

/// Left regular representation of a coefficient function: block `(t, s)` is
/// `f(t s^-1)`, so applying the operator to a vector computes `f * xi`.
pub fn left_regular(f: &OpValFn) -> BlockOperator {
    let g = f.group().clone();
    let n = g.order();
    let mut out = BlockOperator::zeros(g.clone(), f.k());
    for t in 0..n {
        for s in 0..n {
            out.set_block(t, s, f.coeff(g.mul(t, g.inv(s))));
        }
    }
    out
}

/// Right convolution operator `rho(f) xi = xi * f` for scalar f: block
/// `(t, s)` is `f(s^-1 t)`. Only the scalar case is needed.
pub fn right_regular(f: &OpValFn) -> Result<BlockOperator> {
    if f.k() != 1 {
        return Err(Error::Unsupported(
            "right_regular is implemented for k = 1 only".into(),
        ));
    }
    let g = f.group().clone();
    let n = g.order();
    let mut out = BlockOperator::zeros(g.clone(), 1);
    for t in 0..n {
        for s in 0..n {
            out.set_block(t, s, f.coeff(g.mul(g.inv(s), t)));
        }
    }
    Ok(out)
}

/// The modular conjugation applied to a scalar function:
/// `(J xi)(t) = Delta(t)^{-1/2} conj(xi(t^-1))`. J is an anti-unitary
/// involution satisfying `<J xi, J eta> = <eta, xi>`.
pub fn modular_conjugation(xi: &OpValFn) -> Result<OpValFn> {
    if xi.k() != 1 {
        return Err(Error::Unsupported(
            "modular_conjugation is implemented for k = 1 only".into(),
        ));
    }
    let g = xi.group().clone();
    let values: Vec<Complex64> = (0..g.order())
        .map(|t| xi.scalar_value(g.inv(t)).conj() * g.modular(t).powf(-0.5))
        .collect();
    OpValFn::scalar(g, &values)
}

/// The linear factor of J: the matrix `P` with `P[t, t^-1] = Delta(t)^{-1/2}`,
/// so that `J = P . conj` and conjugating a linear operator by the
/// anti-unitary J is `A -> P conj(A) P`.
pub fn j_kernel_matrix(group: &Arc<FiniteGroup>) -> CMatrix {
    let n = group.order();
    let mut p = CMatrix::zeros(n, n);
    for t in 0..n {
        p[(t, group.inv(t))] = Complex64::new(group.modular(t).powf(-0.5), 0.0);
    }
    p
}

/// Conjugation `X -> J X J` of a scalar block operator by the anti-unitary
/// modular conjugation.
pub fn conjugate_by_j(x: &BlockOperator) -> Result<BlockOperator> {
    if x.k() != 1 {
        return Err(Error::Unsupported(
            "conjugate_by_j is implemented for k = 1 only".into(),
        ));
    }
    let p = j_kernel_matrix(x.group());
    let m = p.matmul(&x.matrix().conj()).matmul(&p);
    BlockOperator::from_matrix(x.group().clone(), 1, m)
}

/// Right translation `(V_t xi)(s) = xi(s t)` on `C^k (x) l2(G)`: identity
/// blocks at `(s, s t)`. Each `V_t` is unitary and the family satisfies the
/// composition law `V_s V_t = V_{st}`.
pub fn translate_v(group: &Arc<FiniteGroup>, t: usize, k: usize) -> BlockOperator {
    let n = group.order();
    let eye = CMatrix::identity(k);
    let mut out = BlockOperator::zeros(group.clone(), k);
    for s in 0..n {
        out.set_block(s, group.mul(s, t), &eye);
    }
    out
}

/// Left translation `lambda_t` amplified by `I_k`: identity blocks at
/// `(t u, u)`.
pub fn lambda_point(group: &Arc<FiniteGroup>, t: usize, k: usize) -> BlockOperator {
    let n = group.order();
    let eye = CMatrix::identity(k);
    let mut out = BlockOperator::zeros(group.clone(), k);
    for u in 0..n {
        out.set_block(group.mul(t, u), u, &eye);
    }
    out
}

/// Right translation `rho_t` amplified by `I_k`: identity blocks at
/// `(u t, u)`. On a finite group this is `rho(delta_t)`.
pub fn rho_point(group: &Arc<FiniteGroup>, t: usize, k: usize) -> BlockOperator {
    let n = group.order();
    let eye = CMatrix::identity(k);
    let mut out = BlockOperator::zeros(group.clone(), k);
    for u in 0..n {
        out.set_block(group.mul(u, t), u, &eye);
    }
    out
}
