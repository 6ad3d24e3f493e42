//! The Plancherel weight, its GNS construction, the operator-valued Fourier
//! transform, and the inversion identity.
//!
//! With counting Haar measure the Plancherel weight of an algebra element is
//! evaluation of its coefficient function at the identity, and the Fourier
//! coefficient of `a` at `t` is obtained by left-translating the coefficients
//! with `1 (x) lambda_{t^-1}` and evaluating at the identity:
//! `a^(t) = ((1 (x) lambda_{t^-1}) a)(e)`.
//!
//! For a coefficient-represented element this works out to the coefficient
//! itself. That equality is the content being verified, so
//! [`fourier_transform`] really computes the translate-then-evaluate route
//! through the algebra product while [`fourier_coefficients_direct`] is the
//! trivial fast path; tests cross-check one against the other. On a finite
//! group every element is integrable and the inversion integral
//! `sum_t a^(t) (x) lambda_t` is a plain finite sum, reassembled here as an
//! explicit block operator and compared against the left regular
//! representation.
//!
//! Finite dimension flattens the usual analytic apparatus: the weight is a
//! bounded functional, so no approximating nets of subordinate functionals
//! are needed, and continuity of coefficient functions is vacuous. The only
//! place where integrability and the modular flow carry content is the
//! quadrature model in [`crate::axb`].

use num_complex::Complex64;
use rand::Rng;

use crate::conv::{BlockOperator, OpValFn};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, PSD_TOL};

/// A positive linear functional on M_k given by `theta(b) = tr(density b)`
/// with a PSD density matrix.
#[derive(Debug, Clone)]
pub struct PositiveFunctional {
    k: usize,
    density: CMatrix,
}

impl PositiveFunctional {
    pub fn new(density: CMatrix) -> Result<Self> {
        if !density.is_square() {
            return Err(Error::Shape("density must be square".into()));
        }
        let report = density.psd_check(PSD_TOL)?;
        if !report.is_psd {
            return Err(Error::NotPositive {
                min_eig: report.min_eig,
            });
        }
        Ok(PositiveFunctional {
            k: density.rows(),
            density,
        })
    }

    /// The normalized trace `b -> tr(b)/k`.
    pub fn normalized_trace(k: usize) -> Self {
        PositiveFunctional {
            k,
            density: CMatrix::identity(k).scale_re(1.0 / k as f64),
        }
    }

    /// Rank-one functional `b -> <v, b v>` from a unit-normalized vector.
    pub fn rank_one(v: &[Complex64]) -> Self {
        let k = v.len();
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let density = CMatrix::from_fn(k, k, |i, j| v[i] * v[j].conj() / (norm * norm));
        PositiveFunctional { k, density }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn density(&self) -> &CMatrix {
        &self.density
    }

    pub fn apply(&self, b: &CMatrix) -> Complex64 {
        self.density.matmul(b).trace()
    }

    /// A separating family of k^2 rank-one positive functionals: the basis
    /// states e_i plus the symmetrized pairs (e_i + e_j)/sqrt2 and
    /// (e_i + i e_j)/sqrt2. Positive functionals from this family separate
    /// the points of M_k.
    pub fn spanning_set(k: usize) -> Vec<PositiveFunctional> {
        let mut out = Vec::with_capacity(k * k);
        let e = |i: usize| {
            let mut v = vec![Complex64::new(0.0, 0.0); k];
            v[i] = Complex64::new(1.0, 0.0);
            v
        };
        for i in 0..k {
            out.push(Self::rank_one(&e(i)));
        }
        for i in 0..k {
            for j in (i + 1)..k {
                let mut v = e(i);
                v[j] = Complex64::new(1.0, 0.0);
                out.push(Self::rank_one(&v));
                let mut w = e(i);
                w[j] = Complex64::new(0.0, 1.0);
                out.push(Self::rank_one(&w));
            }
        }
        out
    }

    pub fn random(k: usize, rng: &mut impl Rng) -> Self {
        PositiveFunctional {
            k,
            density: CMatrix::random_psd(k, rng),
        }
    }
}

/// The image of an algebra element under `id (x) Lambda`: a `(k|G|) x k`
/// matrix whose block row at `t` is the coefficient `a(t)`. For k = 1 this is
/// the plain l2(G) vector `Lambda(lambda(f)) = f`. The layout is pinned by
/// requiring `(id (x) Lambda)(a)* (id (x) Lambda)(b) = (id (x) phi)(a* b)`.
#[derive(Debug, Clone)]
pub struct GnsVector {
    group: std::sync::Arc<crate::group::FiniteGroup>,
    k: usize,
    mat: CMatrix,
}

impl GnsVector {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    /// `<self, other> = self* other`, a k-by-k matrix.
    pub fn pairing(&self, other: &GnsVector) -> CMatrix {
        self.mat.adjoint().matmul(&other.mat)
    }

    /// Apply the right translation `V_t`: block row `s` becomes the old block
    /// row `s t`.
    pub fn translate(&self, t: usize) -> GnsVector {
        let g = &self.group;
        let k = self.k;
        let mut mat = CMatrix::zeros(self.mat.rows(), self.mat.cols());
        for s in 0..g.order() {
            let src = g.mul(s, t);
            for r in 0..k {
                for c in 0..k {
                    mat[(s * k + r, c)] = self.mat[(src * k + r, c)];
                }
            }
        }
        GnsVector {
            group: self.group.clone(),
            k,
            mat,
        }
    }
}

/// The Plancherel weight of a coefficient-represented element: evaluation of
/// the coefficient function at the identity, `(id (x) phi)(a) = a(e)`.
pub fn plancherel_value(a: &OpValFn) -> CMatrix {
    a.coeff(a.group().identity()).clone()
}

/// Fourier transform computed through the defining route: for each `t`,
/// multiply by `1 (x) lambda_{t^-1}` (a point-mass convolution, which
/// left-translates the coefficients) and apply the Plancherel weight.
pub fn fourier_transform(a: &OpValFn) -> OpValFn {
    let g = a.group().clone();
    let mut out = OpValFn::zero(g.clone(), a.k());
    for t in 0..g.order() {
        let shift = OpValFn::delta(g.clone(), g.inv(t), a.k());
        let translated = shift.convolve(a).expect("same group and k by construction");
        out.set_coeff(t, plancherel_value(&translated));
    }
    out
}

/// The fast path: for a coefficient-represented element the Fourier
/// transform is the coefficient function itself. Cross-checked against
/// [`fourier_transform`] in the test suite.
pub fn fourier_coefficients_direct(a: &OpValFn) -> OpValFn {
    a.clone()
}

/// Commutation test against the amplified right translations: the violation
/// is `max_t ||[X, 1 (x) rho_t]||_F` and membership requires it below
/// `1e-10 (1 + ||X||_F)`. Operators commuting with every right translation
/// are exactly the matrix amplification of the left group von Neumann
/// algebra, i.e. the image of `left_regular`.
pub fn membership_check(x: &BlockOperator) -> (bool, f64) {
    let g = x.group().clone();
    let n = g.order();
    let mut violation = 0.0f64;
    for t in 1..n {
        // [X, R_t] blockwise: (X R_t)(u,v) = X(u, v t), (R_t X)(u,v) = X(u t^-1, v)
        let tinv = g.inv(t);
        let mut norm_sq = 0.0;
        for u in 0..n {
            for v in 0..n {
                let a = x.block(u, g.mul(v, t));
                let b = x.block(g.mul(u, tinv), v);
                let d = a.sub(&b).frobenius_norm();
                norm_sq += d * d;
            }
        }
        violation = violation.max(norm_sq.sqrt());
    }
    let ok = violation <= 1e-10 * (1.0 + x.frobenius_norm());
    (ok, violation)
}

/// Read the Fourier coefficients off a block operator in the image of the
/// left regular representation: `a^(t)` is the block at row `t`, column `e`.
/// Operators outside the algebra are rejected with their violation norm.
pub fn fourier_from_operator(x: &BlockOperator) -> Result<OpValFn> {
    let (ok, violation) = membership_check(x);
    if !ok {
        return Err(Error::NotInGroupAlgebra { violation });
    }
    let g = x.group().clone();
    let e = g.identity();
    let mut out = OpValFn::zero(g.clone(), x.k());
    for t in 0..g.order() {
        out.set_coeff(t, x.block(t, e));
    }
    Ok(out)
}

/// Slice the coefficient leg with a positive functional:
/// `(theta (x) id)(a)(t) = theta(a(t))`, a scalar function on G.
pub fn slice_functional(a: &OpValFn, theta: &PositiveFunctional) -> Result<OpValFn> {
    if theta.k() != a.k() {
        return Err(Error::Shape(format!(
            "functional dimension {} does not match coefficient dimension {}",
            theta.k(),
            a.k()
        )));
    }
    let g = a.group().clone();
    let values: Vec<Complex64> = (0..g.order()).map(|t| theta.apply(a.coeff(t))).collect();
    OpValFn::scalar(g, &values)
}

/// Reassemble an element from its Fourier transform: the inversion sum
/// `X = sum_t a^(t) (x) lambda_t` as an explicit block operator, plus the
/// coefficient form. The round trip `fourier_transform(a) = a^` is exact.
pub fn invert(ahat: &OpValFn) -> (OpValFn, BlockOperator) {
    let g = ahat.group().clone();
    let n = g.order();
    let mut x = BlockOperator::zeros(g.clone(), ahat.k());
    for t in 0..n {
        let block = ahat.coeff(t);
        if block.frobenius_norm() == 0.0 {
            continue;
        }
        for u in 0..n {
            x.add_block(g.mul(t, u), u, block);
        }
    }
    (ahat.clone(), x)
}

/// The GNS map `id (x) Lambda`: stack the coefficient blocks into a
/// `(k|G|) x k` matrix, block row `t` equal to `a(t)`.
pub fn gns_map(a: &OpValFn) -> GnsVector {
    let g = a.group().clone();
    let k = a.k();
    let n = g.order();
    let mut mat = CMatrix::zeros(n * k, k);
    for t in 0..n {
        for r in 0..k {
            for c in 0..k {
                mat[(t * k + r, c)] = a.coeff(t)[(r, c)];
            }
        }
    }
    GnsVector { group: g, k, mat }
}

/// Fourier transform of `sum_i b_i* c_i` through the GNS factorization:
/// `a^(t) = sum_i (id (x) Lambda)(b_i)* V_t (id (x) Lambda)(c_i)`.
pub fn fourier_factorization(pairs: &[(OpValFn, OpValFn)]) -> Result<OpValFn> {
    let (first_b, _) = pairs
        .first()
        .ok_or_else(|| Error::Param("no pairs given".into()))?;
    let g = first_b.group().clone();
    let k = first_b.k();
    for (b, c) in pairs {
        if !b.group().same_group(&g) || !c.group().same_group(&g) || b.k() != k || c.k() != k {
            return Err(Error::Shape(
                "factorization pairs must share group and k".into(),
            ));
        }
    }
    let gns: Vec<(GnsVector, GnsVector)> = pairs
        .iter()
        .map(|(b, c)| (gns_map(b), gns_map(c)))
        .collect();
    let mut out = OpValFn::zero(g.clone(), k);
    for t in 0..g.order() {
        let mut acc = CMatrix::zeros(k, k);
        for (lb, lc) in &gns {
            acc = acc.add(&lb.pairing(&lc.translate(t)));
        }
        out.set_coeff(t, acc);
    }
    Ok(out)
}
