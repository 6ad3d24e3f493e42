//! Positive definite functions, their structure facts, the equivalence with
//! operator positivity, and explicit Naimark dilations.
//!
//! A function f: G -> M_k is positive definite when the full block Gram
//! matrix `P(s, t) = f(s^-1 t)` over all group elements is PSD. On a finite
//! unimodular group this is equivalent to positivity of the left regular
//! operator `lambda_A(f)`; for scalar f it is further equivalent to
//! positivity of `lambda(Jf)` and of `rho(f)` through the identity
//! `rho(f) = J lambda(Jf) J`. Both certificates are computed independently
//! and compared, which is the executable content of the equivalence.
//!
//! On a finite group the topological side of the theory (uniform continuity
//! of positive definite functions, continuity of the dilation
//! representation) is vacuous and goes untested; what remains executable is
//! exactly the algebraic content below.
//!
//! The dilation is built from a Kolmogorov decomposition of the Gram matrix:
//! eigendecompose `P`, keep eigenpairs above `rank_tol * ||P||`, and let the
//! retained eigencolumns span the dilation space. Left translation permutes
//! the block columns of `P` while preserving it, so compressing those block
//! permutations to the retained subspace induces a unitary representation
//! `u_t`, and `S` (the factor restricted to the identity block column)
//! satisfies `f(t) = S* u_t S`. Truncation can leak a small unitarity defect;
//! defects between 1e-10 and 1e-8 are repaired by polar correction and
//! anything larger is an error suggesting a tighter rank tolerance.

use std::sync::Arc;

use num_complex::Complex64;

use crate::conv::{conjugate_by_j, left_regular, modular_conjugation, right_regular, OpValFn};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{CMatrix, PSD_TOL};

/// Unitarity defect above which polar correction is attempted.
const POLAR_CORRECTION_THRESHOLD: f64 = 1e-10;
/// Unitarity defect above which the dilation is rejected outright.
const UNITARITY_FAILURE_THRESHOLD: f64 = 1e-8;

/// A Naimark dilation `f(t) = S* u_t S`: a unitary representation `u` on a
/// dilation space of dimension `dim` and a rectangular `S`.
#[derive(Debug, Clone)]
pub struct Dilation {
    group: Arc<FiniteGroup>,
    k: usize,
    dim: usize,
    u: Vec<CMatrix>,
    s: CMatrix,
    rank_tol: f64,
    reconstruction_residual: f64,
    max_unitarity_defect: f64,
}

impl Dilation {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn u(&self, t: usize) -> &CMatrix {
        &self.u[t]
    }

    pub fn s(&self) -> &CMatrix {
        &self.s
    }

    pub fn rank_tol(&self) -> f64 {
        self.rank_tol
    }

    /// max_t ||S* u_t S - f(t)|| recorded at construction.
    pub fn reconstruction_residual(&self) -> f64 {
        self.reconstruction_residual
    }

    pub fn max_unitarity_defect(&self) -> f64 {
        self.max_unitarity_defect
    }

    /// `S* u_t S`, the reconstructed value at `t`.
    pub fn reconstruct(&self, t: usize) -> CMatrix {
        self.s.adjoint().matmul(&self.u[t]).matmul(&self.s)
    }

    /// The integrated form `F(x) = S* (sum_t x(t) u_t) S` of a scalar
    /// function; a completely positive map on the group algebra with
    /// `F(delta_t) = f(t)`.
    pub fn integrated_form(&self, x: &OpValFn) -> Result<CMatrix> {
        if x.k() != 1 {
            return Err(Error::Shape(
                "integrated_form expects a scalar function".into(),
            ));
        }
        if !x.group().same_group(&self.group) {
            return Err(Error::Shape("integrated_form: group mismatch".into()));
        }
        let mut acc = CMatrix::zeros(self.dim, self.dim);
        for t in 0..self.group.order() {
            acc = acc.add(&self.u[t].scale(x.scalar_value(t)));
        }
        Ok(self.s.adjoint().matmul(&acc).matmul(&self.s))
    }
}

/// The block Gram matrix `P(s, t) = f(s^-1 t)` over all group elements.
pub fn gram_matrix(f: &OpValFn) -> CMatrix {
    let g = f.group();
    let n = g.order();
    let k = f.k();
    let mut p = CMatrix::zeros(n * k, n * k);
    for s in 0..n {
        let sinv = g.inv(s);
        for t in 0..n {
            p.set_block(k, s, t, f.coeff(g.mul(sinv, t)));
        }
    }
    p
}

/// Positive definiteness via the full block Gram matrix; returns the
/// certificate together with the minimum eigenvalue of its Hermitian part.
pub fn is_positive_definite(f: &OpValFn) -> (bool, f64) {
    let report = gram_matrix(f)
        .psd_check(PSD_TOL)
        .expect("gram matrix is square");
    (report.is_psd, report.min_eig)
}

/// Structure facts every positive definite function satisfies: `f(e)` is
/// PSD, `f(t^-1) = f(t)*`, and `||f(t)|| <= ||f(e)||` in operator norm.
#[derive(Debug, Clone)]
pub struct StructureReport {
    pub f_e_psd: bool,
    pub f_e_min_eig: f64,
    /// max_t ||f(t^-1) - f(t)*||
    pub hermitian_symmetry_residual: f64,
    pub hermitian_symmetry_ok: bool,
    /// labels of elements violating the norm bound, with excess
    pub norm_bound_violations: Vec<(String, f64)>,
    pub hermitian_violations: Vec<String>,
}

impl StructureReport {
    pub fn all_passed(&self) -> bool {
        self.f_e_psd && self.hermitian_symmetry_ok && self.norm_bound_violations.is_empty()
    }
}

pub fn pd_structure_report(f: &OpValFn) -> Result<StructureReport> {
    let (pd, min_eig) = is_positive_definite(f);
    if !pd {
        return Err(Error::NotPositiveDefinite { min_eig });
    }
    let g = f.group();
    let e = g.identity();
    let fe = f.coeff(e);
    let fe_report = fe.psd_check(PSD_TOL)?;
    let fe_norm = fe.operator_norm();
    let herm_tol = 1e-12 * (1.0 + fe_norm);

    let mut herm_resid = 0.0f64;
    let mut herm_violations = Vec::new();
    let mut norm_violations = Vec::new();
    for t in 0..g.order() {
        let d = f
            .coeff(g.inv(t))
            .sub(&f.coeff(t).adjoint())
            .frobenius_norm();
        herm_resid = herm_resid.max(d);
        if d > herm_tol {
            herm_violations.push(g.label(t).to_string());
        }
        let excess = f.coeff(t).operator_norm() - fe_norm;
        if excess > 1e-10 {
            norm_violations.push((g.label(t).to_string(), excess));
        }
    }
    Ok(StructureReport {
        f_e_psd: fe_report.is_psd,
        f_e_min_eig: fe_report.min_eig,
        hermitian_symmetry_residual: herm_resid,
        hermitian_symmetry_ok: herm_violations.is_empty(),
        norm_bound_violations: norm_violations,
        hermitian_violations: herm_violations,
    })
}

/// Naimark dilation through the Kolmogorov decomposition of the Gram matrix.
pub fn naimark_dilate(f: &OpValFn, rank_tol: f64) -> Result<Dilation> {
    let g = f.group().clone();
    let n = g.order();
    let k = f.k();
    let p = gram_matrix(f);
    let report = p.psd_check(PSD_TOL)?;
    if !report.is_psd {
        return Err(Error::NotPositiveDefinite {
            min_eig: report.min_eig,
        });
    }
    let (eigs, vecs) = p.hermitian_eig()?;
    let lambda_max = eigs.last().copied().unwrap_or(0.0).max(0.0);
    let threshold = rank_tol * lambda_max;
    let kept: Vec<usize> = (0..eigs.len())
        .filter(|&i| eigs[i] > threshold && eigs[i] > 0.0)
        .collect();
    let r = kept.len();

    // V: (kn) x r retained eigencolumns, L = D^{1/2} V* the Kolmogorov factor
    let v = CMatrix::from_fn(n * k, r, |row, j| vecs[(row, kept[j])]);
    let sqrt_d: Vec<f64> = kept.iter().map(|&i| eigs[i].sqrt()).collect();

    // S = L restricted to the identity block column:
    // L[i, e*k + c] = sqrt_d[i] * conj(V[e*k + c, i])
    let e = g.identity();
    let s = CMatrix::from_fn(r, k, |i, c| {
        Complex64::new(sqrt_d[i], 0.0) * v[(e * k + c, i)].conj()
    });

    // u_t = V* Pi_t V with Pi_t the left-translation block permutation:
    // (Pi_t V) has block row w equal to block row t^-1 w of V.
    let mut u = Vec::with_capacity(n);
    let mut max_defect = 0.0f64;
    for t in 0..n {
        let tinv = g.inv(t);
        let permuted = CMatrix::from_fn(n * k, r, |row, j| {
            let (w, comp) = (row / k, row % k);
            v[(g.mul(tinv, w) * k + comp, j)]
        });
        let mut ut = v.adjoint().matmul(&permuted);
        let defect = unitarity_defect(&ut);
        if defect > UNITARITY_FAILURE_THRESHOLD {
            return Err(Error::DilationFailure { defect });
        }
        if defect > POLAR_CORRECTION_THRESHOLD {
            ut = polar_unitary(&ut)?;
        }
        max_defect = max_defect.max(unitarity_defect(&ut));
        u.push(ut);
    }

    let mut residual = 0.0f64;
    {
        let sa = s.adjoint();
        for t in 0..n {
            let rec = sa.matmul(&u[t]).matmul(&s);
            residual = residual.max(rec.sub(f.coeff(t)).frobenius_norm());
        }
    }
    let fe_scale = 1.0 + f.coeff(g.identity()).frobenius_norm();
    if residual > 1e-8 * fe_scale {
        return Err(Error::DilationFailure { defect: residual });
    }

    Ok(Dilation {
        group: g,
        k,
        dim: r,
        u,
        s,
        rank_tol,
        reconstruction_residual: residual,
        max_unitarity_defect: max_defect,
    })
}

fn unitarity_defect(u: &CMatrix) -> f64 {
    let r = u.cols();
    u.adjoint()
        .matmul(u)
        .sub(&CMatrix::identity(r))
        .frobenius_norm()
}

/// Nearest unitary in the polar sense: `u (u* u)^{-1/2}`.
fn polar_unitary(u: &CMatrix) -> Result<CMatrix> {
    let h = u.adjoint().matmul(u);
    let (eigs, w) = h.hermitian_eig()?;
    let mut scaled = w.clone();
    for j in 0..w.cols() {
        let inv_sqrt = 1.0 / eigs[j].max(1e-300).sqrt();
        for i in 0..w.rows() {
            scaled[(i, j)] *= inv_sqrt;
        }
    }
    Ok(u.matmul(&scaled.matmul(&w.adjoint())))
}

/// Both positivity certificates side by side, plus the scalar bridge
/// `pd(f) <=> psd(lambda(Jf)) <=> psd(rho(f))` when k = 1.
#[derive(Debug, Clone)]
pub struct PositivityEquivalence {
    pub pd: bool,
    pub pd_min_eig: f64,
    pub op_pos: bool,
    pub op_min_eig: f64,
    pub agree: bool,
    pub scalar: Option<ScalarBridge>,
}

#[derive(Debug, Clone)]
pub struct ScalarBridge {
    pub lambda_jf_psd: bool,
    pub rho_psd: bool,
    /// All four certificates coincide.
    pub agree: bool,
}

pub fn positivity_equivalence(f: &OpValFn) -> PositivityEquivalence {
    let (pd, pd_min_eig) = is_positive_definite(f);
    let op_report = left_regular(f).matrix().psd_check(PSD_TOL).expect("square");
    let op_pos = op_report.is_psd;
    let mut eq = PositivityEquivalence {
        pd,
        pd_min_eig,
        op_pos,
        op_min_eig: op_report.min_eig,
        agree: pd == op_pos,
        scalar: None,
    };
    if f.k() == 1 {
        let jf = modular_conjugation(f).expect("k = 1");
        let lambda_jf = left_regular(&jf)
            .matrix()
            .psd_check(PSD_TOL)
            .expect("square");
        let rho = right_regular(f)
            .expect("k = 1")
            .matrix()
            .psd_check(PSD_TOL)
            .expect("square");
        let bridge = ScalarBridge {
            lambda_jf_psd: lambda_jf.is_psd,
            rho_psd: rho.is_psd,
            agree: pd == lambda_jf.is_psd && pd == rho.is_psd && eq.agree,
        };
        eq.scalar = Some(bridge);
    }
    eq
}

/// For scalar positive definite f, the Kolmogorov factor gives a left
/// bounded xi with `f = xi* * xi`: xi is the identity row of the positive
/// square root of the Gram matrix.
pub fn kolmogorov_scalar_factor(f: &OpValFn) -> Result<OpValFn> {
    if f.k() != 1 {
        return Err(Error::Unsupported(
            "kolmogorov_scalar_factor requires k = 1".into(),
        ));
    }
    let (pd, min_eig) = is_positive_definite(f);
    if !pd {
        return Err(Error::NotPositiveDefinite { min_eig });
    }
    let root = gram_matrix(f).psd_sqrt()?;
    let g = f.group().clone();
    let e = g.identity();
    let values: Vec<Complex64> = (0..g.order()).map(|t| root[(e, t)]).collect();
    OpValFn::scalar(g, &values)
}

/// Scalar route check used in tests: pd(f) iff `lambda(Jf)` is positive iff
/// `rho(f) = J lambda(Jf) J` is positive.
pub fn scalar_positivity_routes(f: &OpValFn) -> Result<(bool, bool, bool)> {
    let (pd, _) = is_positive_definite(f);
    let jf = modular_conjugation(f)?;
    let lambda_jf = left_regular(&jf).matrix().psd_check(PSD_TOL)?;
    let rho = conjugate_by_j(&left_regular(&jf))?
        .matrix()
        .psd_check(PSD_TOL)?;
    Ok((pd, lambda_jf.is_psd, rho.is_psd))
}

/// Positive definite test input `f(t) = S0* u0_t S0` built from the regular
/// representation (optionally padded by a trivial summand) conjugated by a
/// random unitary, with a random rectangular S0.
pub fn random_dilated_pd(
    g: &Arc<FiniteGroup>,
    k: usize,
    pad: usize,
    rng: &mut impl rand::Rng,
) -> OpValFn {
    let n = g.order();
    let dim = n + pad;
    let q = CMatrix::random_unitary(dim, rng);
    let s0 = CMatrix::random(dim, k, rng);
    let mut f = OpValFn::zero(g.clone(), k);
    for t in 0..n {
        let mut perm = CMatrix::zeros(dim, dim);
        for u in 0..n {
            perm[(g.mul(t, u), u)] = Complex64::new(1.0, 0.0);
        }
        for p in 0..pad {
            perm[(n + p, n + p)] = Complex64::new(1.0, 0.0);
        }
        let u0 = q.matmul(&perm).matmul(&q.adjoint());
        f.set_coeff(t, s0.adjoint().matmul(&u0).matmul(&s0));
    }
    f
}

/// Positive definite test input `g* * g` from a random coefficient function.
pub fn random_gram_pd(g: &Arc<FiniteGroup>, k: usize, rng: &mut impl rand::Rng) -> OpValFn {
    let w = OpValFn::random(g.clone(), k, rng);
    w.involute().convolve(&w).expect("same group and k")
}
