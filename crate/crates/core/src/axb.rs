//! Quadrature model of the ax+b group on a truncated grid.
//!
//! This is the experimental, non-unimodular companion to the exact finite
//! machinery: the group `(a, b) . (a', b') = (a a', a b' + b)` with left Haar
//! density `da db / a^2` and modular function `Delta(a, b) = 1/a`, sampled on
//! a window that is log-uniform in `a` and uniform in `b`. Off-grid products
//! resolve by nearest-grid-point lookup and vanish outside the window, so
//! every operator-level statement here is approximate by design; the module
//! reports residuals and refinement ratios instead of asserting sharp
//! tolerances. The scalar modular identities (homomorphism, analytic-flow
//! exponent laws) involve no quadrature and hold to machine precision.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Grid window parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxbParams {
    pub a_min: f64,
    pub a_max: f64,
    pub b_max: f64,
    pub m_a: usize,
    pub m_b: usize,
}

impl Default for AxbParams {
    fn default() -> Self {
        AxbParams {
            a_min: 0.25,
            a_max: 4.0,
            b_max: 4.0,
            m_a: 33,
            m_b: 33,
        }
    }
}

impl AxbParams {
    /// Halve both grid spacings while keeping the window and the existing
    /// nodes: m points become 2m - 1.
    pub fn refined(&self) -> AxbParams {
        AxbParams {
            m_a: 2 * self.m_a - 1,
            m_b: 2 * self.m_b - 1,
            ..*self
        }
    }
}

/// The sampled group: grid points, left-Haar quadrature weights, and
/// modular-function samples.
#[derive(Debug, Clone)]
pub struct DiscretizedGroup {
    params: AxbParams,
    points: Vec<(f64, f64)>,
    weights: Vec<f64>,
    modular: Vec<f64>,
    log_a_min: f64,
    h_log: f64,
    h_b: f64,
}

/// Build the grid: `a` log-uniform in `[a_min, a_max]`, `b` uniform in
/// `[-b_max, b_max]`, weights `h_a h_b / a^2` where `h_a = a h_log` is the
/// local cell width of the log-uniform axis and boundary cells are half
/// width (trapezoid weighting), so the total weight reproduces the Haar
/// mass of the window to second order.
pub fn build_grid(params: AxbParams) -> Result<Arc<DiscretizedGroup>> {
    if !(params.a_min > 0.0) {
        return Err(Error::Param(
            "a_min must be positive (Delta is singular at 0)".into(),
        ));
    }
    if params.a_max <= params.a_min {
        return Err(Error::Param("a_max must exceed a_min".into()));
    }
    if !(params.b_max > 0.0) {
        return Err(Error::Param("b_max must be positive".into()));
    }
    if params.m_a < 4 || params.m_b < 4 {
        return Err(Error::Param("need at least 4 points per axis".into()));
    }
    let log_a_min = params.a_min.ln();
    let h_log = (params.a_max.ln() - log_a_min) / (params.m_a - 1) as f64;
    let h_b = 2.0 * params.b_max / (params.m_b - 1) as f64;
    let n = params.m_a * params.m_b;
    let mut points = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let mut modular = Vec::with_capacity(n);
    let edge = |i: usize, m: usize| if i == 0 || i == m - 1 { 0.5 } else { 1.0 };
    for ia in 0..params.m_a {
        let a = (log_a_min + ia as f64 * h_log).exp();
        for ib in 0..params.m_b {
            let b = -params.b_max + ib as f64 * h_b;
            points.push((a, b));
            weights.push(edge(ia, params.m_a) * edge(ib, params.m_b) * h_log * h_b / a);
            modular.push(1.0 / a);
        }
    }
    Ok(Arc::new(DiscretizedGroup {
        params,
        points,
        weights,
        modular,
        log_a_min,
        h_log,
        h_b,
    }))
}

impl DiscretizedGroup {
    pub fn params(&self) -> &AxbParams {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> (f64, f64) {
        self.points[i]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn modular(&self, i: usize) -> f64 {
        self.modular[i]
    }

    /// Exact group law.
    pub fn mul(&self, p: (f64, f64), q: (f64, f64)) -> (f64, f64) {
        (p.0 * q.0, p.0 * q.1 + p.1)
    }

    /// Exact inverse.
    pub fn inv(&self, p: (f64, f64)) -> (f64, f64) {
        (1.0 / p.0, -p.1 / p.0)
    }

    /// Exact modular function of an arbitrary point.
    pub fn modular_of(&self, p: (f64, f64)) -> f64 {
        1.0 / p.0
    }

    /// Nearest grid index, or None outside the window.
    pub fn nearest(&self, p: (f64, f64)) -> Option<usize> {
        if !(p.0 > 0.0) || !p.0.is_finite() || !p.1.is_finite() {
            return None;
        }
        let ia = ((p.0.ln() - self.log_a_min) / self.h_log).round();
        let ib = ((p.1 + self.params.b_max) / self.h_b).round();
        if ia < 0.0 || ib < 0.0 {
            return None;
        }
        let (ia, ib) = (ia as usize, ib as usize);
        if ia >= self.params.m_a || ib >= self.params.m_b {
            return None;
        }
        Some(ia * self.params.m_b + ib)
    }

    /// Total quadrature mass of the window.
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// A scalar function sampled on the grid.
#[derive(Debug, Clone)]
pub struct GridFn {
    grid: Arc<DiscretizedGroup>,
    values: Vec<Complex64>,
}

impl GridFn {
    pub fn zero(grid: Arc<DiscretizedGroup>) -> Self {
        let n = grid.len();
        GridFn {
            grid,
            values: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn from_fn(grid: Arc<DiscretizedGroup>, mut f: impl FnMut(f64, f64) -> Complex64) -> Self {
        let values = (0..grid.len())
            .map(|i| {
                let (a, b) = grid.point(i);
                f(a, b)
            })
            .collect();
        GridFn { grid, values }
    }

    /// Gaussian bump in the coordinates `(log a, b)`, centered at
    /// `(u0, b0)` with width `sigma` in both coordinates.
    pub fn gaussian(grid: Arc<DiscretizedGroup>, u0: f64, b0: f64, sigma: f64) -> Self {
        Self::gaussian2(grid, u0, b0, sigma, sigma)
    }

    /// Anisotropic Gaussian in `(log a, b)`.
    pub fn gaussian2(
        grid: Arc<DiscretizedGroup>,
        u0: f64,
        b0: f64,
        sigma_u: f64,
        sigma_b: f64,
    ) -> Self {
        Self::from_fn(grid, |a, b| {
            let u = a.ln();
            let d2 = ((u - u0) / sigma_u).powi(2) + ((b - b0) / sigma_b).powi(2);
            Complex64::new((-d2 / 2.0).exp(), 0.0)
        })
    }

    pub fn grid(&self) -> &Arc<DiscretizedGroup> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, i: usize) -> Complex64 {
        self.values[i]
    }

    pub fn set_value(&mut self, i: usize, v: Complex64) {
        self.values[i] = v;
    }

    pub fn scale(&self, c: f64) -> GridFn {
        GridFn {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &GridFn) -> GridFn {
        GridFn {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Weighted l2 norm.
    pub fn norm(&self) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| self.grid.weight(i) * v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Quadrature integral against left Haar measure.
    pub fn integral(&self) -> Complex64 {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| v * self.grid.weight(i))
            .sum()
    }

    /// The involution `f*(t) = Delta(t^-1) conj(f(t^-1))` with lookups.
    pub fn involute(&self) -> GridFn {
        let grid = self.grid.clone();
        let values = (0..grid.len())
            .map(|i| {
                let tinv = grid.inv(grid.point(i));
                match grid.nearest(tinv) {
                    Some(j) => self.values[j].conj() * grid.modular_of(tinv),
                    None => Complex64::new(0.0, 0.0),
                }
            })
            .collect();
        GridFn { grid, values }
    }

    /// Quadrature convolution `(f*g)(t) = sum_s f(s) g(s^-1 t) w_s`.
    pub fn convolve(&self, other: &GridFn) -> GridFn {
        let grid = self.grid.clone();
        let n = grid.len();
        let mut values = vec![Complex64::new(0.0, 0.0); n];
        for s in 0..n {
            let fs = self.values[s];
            if fs == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ws = grid.weight(s);
            let sinv = grid.inv(grid.point(s));
            for (t, out) in values.iter_mut().enumerate() {
                let p = grid.mul(sinv, grid.point(t));
                if let Some(j) = grid.nearest(p) {
                    *out += fs * other.values[j] * ws;
                }
            }
        }
        GridFn { grid, values }
    }

    /// Fraction of the |f|-mass lying in the middle half of the window in
    /// both coordinates; the admissibility heuristic for convolution
    /// operators.
    pub fn interior_mass_fraction(&self) -> f64 {
        let p = self.grid.params();
        let u_lo = p.a_min.ln();
        let u_hi = p.a_max.ln();
        let u_mid = 0.5 * (u_lo + u_hi);
        let u_quarter = 0.25 * (u_hi - u_lo);
        let b_half = 0.5 * p.b_max;
        let mut total = 0.0;
        let mut inside = 0.0;
        for i in 0..self.grid.len() {
            let (a, b) = self.grid.point(i);
            let mass = self.values[i].norm() * self.grid.weight(i);
            total += mass;
            if (a.ln() - u_mid).abs() <= u_quarter && b.abs() <= b_half {
                inside += mass;
            }
        }
        if total == 0.0 {
            1.0
        } else {
            inside / total
        }
    }
}

/// Support diagnostics attached to quadrature operators.
#[derive(Debug, Clone, Copy)]
pub struct SupportReport {
    pub interior_mass_fraction: f64,
    pub truncation_warning: bool,
}

/// The quadrature convolution operator: entry `(t, s) = f(t s^-1)` times the
/// column quadrature weight (nearest lookup, zero outside the window), plus
/// a support report; a thin interior mass fraction is a warning, not an
/// error.
///
/// Applying the operator to a sampled vector approximates
/// `(f * xi)(t) = int f(s) xi(s^-1 t) ds`; substituting `u = s^-1 t` turns
/// the left-Haar element `ds` into `Delta(u)^-1 du`, so the weight carried
/// by column `s` is `Delta(s)^-1 w_s`. Conjugating by `W^{1/2}` (W the
/// left-Haar weights) then yields the `Delta^{1/2} f` kernel whose
/// positivity is the positive-definiteness certificate.
pub fn q_left_regular(f: &GridFn) -> (CMatrix, SupportReport) {
    let grid = f.grid();
    let n = grid.len();
    let mut m = CMatrix::zeros(n, n);
    for t in 0..n {
        let pt = grid.point(t);
        for s in 0..n {
            let q = grid.mul(pt, grid.inv(grid.point(s)));
            if let Some(j) = grid.nearest(q) {
                m[(t, s)] = f.value(j) * (grid.weight(s) / grid.modular(s));
            }
        }
    }
    let fraction = f.interior_mass_fraction();
    (
        m,
        SupportReport {
            interior_mass_fraction: fraction,
            truncation_warning: fraction < 0.99,
        },
    )
}

/// Report from the modular flow check at one grid element.
#[derive(Debug, Clone)]
pub struct ModularFlowReport {
    /// Delta(t)^{iz}
    pub sigma_factor: Complex64,
    /// |Delta^{i(i/2)} - Delta^{-1/2}| at this element
    pub sigma_half_residual: f64,
    /// max residual of Delta^{iz} Delta^{iw} = Delta^{i(z+w)} over probe w's
    pub exponent_law_residual: f64,
    /// per-test-vector relative deviation of J sigma_{i/2}(lambda_t) J from V_t;
    /// only computed at z = i/2
    pub operator_deviations: Option<Vec<f64>>,
}

impl ModularFlowReport {
    pub fn max_operator_deviation(&self) -> Option<f64> {
        self.operator_deviations
            .as_ref()
            .map(|ds| ds.iter().copied().fold(0.0, f64::max))
    }
}

fn pow_iz(delta: f64, z: Complex64) -> Complex64 {
    // Delta^{iz} = exp(i z ln Delta)
    (Complex64::new(0.0, 1.0) * z * delta.ln()).exp()
}

/// The documented smooth test vectors: Gaussians narrow in `log a` (so the
/// inversion `b -> -b/a` keeps their mass inside the window) and broad in
/// `b` (so nearest-point lookup error stays small relative to the scale of
/// variation).
pub fn smooth_test_vectors(grid: &Arc<DiscretizedGroup>) -> Vec<GridFn> {
    vec![
        GridFn::gaussian2(grid.clone(), 0.3, 0.0, 0.30, 1.0),
        GridFn::gaussian2(grid.clone(), 0.5, 0.4, 0.30, 1.1),
        GridFn::gaussian2(grid.clone(), 0.4, -0.5, 0.25, 1.0),
        GridFn::gaussian2(grid.clone(), 0.4, 0.2, 0.28, 1.1),
        GridFn::gaussian2(grid.clone(), 0.5, -0.2, 0.30, 0.9),
    ]
}

/// Apply the modular conjugation `(J xi)(s) = Delta(s)^{-1/2} conj(xi(s^-1))`
/// by nearest lookup.
fn apply_j(grid: &DiscretizedGroup, xi: &[Complex64]) -> Vec<Complex64> {
    (0..grid.len())
        .map(|s| match grid.nearest(grid.inv(grid.point(s))) {
            Some(j) => xi[j].conj() * grid.modular(s).powf(-0.5),
            None => Complex64::new(0.0, 0.0),
        })
        .collect()
}

/// Apply the left translation `(lambda_t xi)(s) = xi(t^-1 s)`.
fn apply_lambda(grid: &DiscretizedGroup, t: (f64, f64), xi: &[Complex64]) -> Vec<Complex64> {
    let tinv = grid.inv(t);
    (0..grid.len())
        .map(|s| match grid.nearest(grid.mul(tinv, grid.point(s))) {
            Some(j) => xi[j],
            None => Complex64::new(0.0, 0.0),
        })
        .collect()
}

/// Apply the right translation `(V_t xi)(s) = xi(s t)`.
fn apply_v(grid: &DiscretizedGroup, t: (f64, f64), xi: &[Complex64]) -> Vec<Complex64> {
    (0..grid.len())
        .map(|s| match grid.nearest(grid.mul(grid.point(s), t)) {
            Some(j) => xi[j],
            None => Complex64::new(0.0, 0.0),
        })
        .collect()
}

fn weighted_norm(grid: &DiscretizedGroup, xi: &[Complex64]) -> f64 {
    xi.iter()
        .enumerate()
        .map(|(i, v)| grid.weight(i) * v.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Check the analytic extension of the modular flow at a grid element:
/// the scalar laws `sigma_{i/2}: Delta^{i(i/2)} = Delta^{-1/2}` and
/// `Delta^{iz} Delta^{iw} = Delta^{i(z+w)}` (machine precision, no
/// quadrature), and at `z = i/2` the operator identity
/// `J sigma_{i/2}(lambda_t) J = V_t` on the smooth test vectors.
pub fn modular_flow_check(
    grid: &Arc<DiscretizedGroup>,
    t_index: usize,
    z: Complex64,
) -> ModularFlowReport {
    let t = grid.point(t_index);
    let delta = grid.modular(t_index);

    let sigma_factor = pow_iz(delta, z);
    let half = Complex64::new(0.0, 0.5);
    let sigma_half_residual = (pow_iz(delta, half) - delta.powf(-0.5)).norm();

    let probes = [
        z,
        z.conj(),
        half,
        Complex64::new(1.0, 0.0),
        Complex64::new(-0.7, 0.3),
    ];
    let mut law = 0.0f64;
    for w in probes {
        let lhs = pow_iz(delta, z) * pow_iz(delta, w);
        let rhs = pow_iz(delta, z + w);
        law = law.max((lhs - rhs).norm() / (1.0 + rhs.norm()));
    }

    let operator_deviations = if (z - half).norm() == 0.0 {
        let scale = delta.powf(-0.5);
        let devs = smooth_test_vectors(grid)
            .iter()
            .map(|xi| {
                let jxi = apply_j(grid, xi.values());
                let axi: Vec<Complex64> = apply_lambda(grid, t, &jxi)
                    .iter()
                    .map(|v| v * scale)
                    .collect();
                let lhs = apply_j(grid, &axi);
                let rhs = apply_v(grid, t, xi.values());
                let diff: Vec<Complex64> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
                let denom = weighted_norm(grid, &rhs);
                if denom == 0.0 {
                    0.0
                } else {
                    weighted_norm(grid, &diff) / denom
                }
            })
            .collect();
        Some(devs)
    } else {
        None
    };

    ModularFlowReport {
        sigma_factor,
        sigma_half_residual,
        exponent_law_residual: law,
        operator_deviations,
    }
}

/// Exact scalar law: the modular function is a homomorphism under the exact
/// group law. Returns the max relative residual over all grid pairs sampled
/// coarsely (every `stride`-th point).
pub fn modular_homomorphism_residual(grid: &DiscretizedGroup, stride: usize) -> f64 {
    let mut worst = 0.0f64;
    let n = grid.len();
    let stride = stride.max(1);
    for i in (0..n).step_by(stride) {
        let p = grid.point(i);
        for j in (0..n).step_by(stride) {
            let q = grid.point(j);
            let lhs = grid.modular_of(grid.mul(p, q));
            let rhs = grid.modular_of(p) * grid.modular_of(q);
            worst = worst.max((lhs - rhs).abs() / rhs.abs());
        }
    }
    worst
}

/// A rectangular integration window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub a_lo: f64,
    pub a_hi: f64,
    pub b_lo: f64,
    pub b_hi: f64,
}

impl Window {
    pub fn contains_point(&self, p: (f64, f64)) -> bool {
        p.0 >= self.a_lo && p.0 <= self.a_hi && p.1 >= self.b_lo && p.1 <= self.b_hi
    }

    pub fn contains_window(&self, other: &Window) -> bool {
        self.a_lo <= other.a_lo
            && self.a_hi >= other.a_hi
            && self.b_lo <= other.b_lo
            && self.b_hi >= other.b_hi
    }
}

/// Partial integrals of a nonnegative integrand over an increasing window
/// net: the finite-resolution shadow of strict-unconditional integrability.
#[derive(Debug, Clone)]
pub struct NetReport {
    pub partials: Vec<f64>,
    pub increments: Vec<f64>,
    pub monotone: bool,
    pub final_increment: f64,
    /// final increment < eps
    pub integrable: bool,
}

pub fn windowed_integral_net(f: &GridFn, windows: &[Window], eps: f64) -> Result<NetReport> {
    if windows.is_empty() {
        return Err(Error::Param("need at least one window".into()));
    }
    for w in windows.windows(2) {
        if !w[1].contains_window(&w[0]) {
            return Err(Error::Param("windows must be nested increasing".into()));
        }
    }
    let grid = f.grid();
    for (i, v) in f.values().iter().enumerate() {
        if v.im != 0.0 || v.re < 0.0 {
            return Err(Error::Param(format!(
                "integrand must be pointwise nonnegative; value {v} at index {i}"
            )));
        }
    }
    let mut partials = Vec::with_capacity(windows.len());
    for w in windows {
        let mut acc = 0.0;
        for i in 0..grid.len() {
            if w.contains_point(grid.point(i)) {
                acc += grid.weight(i) * f.value(i).re;
            }
        }
        partials.push(acc);
    }
    let monotone = partials.windows(2).all(|p| p[1] >= p[0]);
    let mut increments = Vec::with_capacity(partials.len());
    let mut prev = 0.0;
    for &p in &partials {
        increments.push(p - prev);
        prev = p;
    }
    let final_increment = *increments.last().unwrap();
    Ok(NetReport {
        partials,
        increments,
        monotone,
        final_increment,
        integrable: final_increment < eps,
    })
}

/// The two approximate positivity certificates side by side.
#[derive(Debug, Clone)]
pub struct PdPositivityReport {
    pub operator_min_eig: f64,
    pub operator_scale: f64,
    pub operator_positive: bool,
    pub gram_min_eig: f64,
    pub gram_scale: f64,
    pub gram_positive: bool,
    pub agree: bool,
    pub sample_size: usize,
    pub support: SupportReport,
}

/// Compare operator positivity of the weight-symmetrized convolution
/// operator against positive definiteness of the Delta^{1/2}-weighted sampled
/// Gram matrix. Positivity on each side means the minimum eigenvalue of the
/// Hermitian part clears `-0.05 * scale`; this is a directional check, not a
/// sharp certificate.
pub fn pd_positivity_check(f: &GridFn, max_sample: usize) -> PdPositivityReport {
    let grid = f.grid();
    let n = grid.len();

    // (i) symmetrized quadrature operator W^{1/2} L W^{-1/2}
    let (l, support) = q_left_regular(f);
    let mut m = CMatrix::zeros(n, n);
    for t in 0..n {
        for s in 0..n {
            let scale = (grid.weight(t) / grid.weight(s)).sqrt();
            m[(t, s)] = l[(t, s)] * scale;
        }
    }
    let op_report = m.psd_check(0.05).expect("square");

    // (ii) sampled Gram over interior points
    let p = grid.params();
    let u_lo = p.a_min.ln();
    let u_hi = p.a_max.ln();
    let u_mid = 0.5 * (u_lo + u_hi);
    let u_quarter = 0.25 * (u_hi - u_lo);
    let interior: Vec<usize> = (0..n)
        .filter(|&i| {
            let (a, b) = grid.point(i);
            (a.ln() - u_mid).abs() <= u_quarter && b.abs() <= 0.5 * p.b_max
        })
        .collect();
    let stride = interior.len().div_ceil(max_sample).max(1);
    let sample: Vec<usize> = interior.into_iter().step_by(stride).collect();
    let s = sample.len();
    let mut gram = CMatrix::zeros(s, s);
    for (i, &si) in sample.iter().enumerate() {
        let inv_si = grid.inv(grid.point(si));
        for (j, &sj) in sample.iter().enumerate() {
            let d = grid.mul(inv_si, grid.point(sj));
            if let Some(idx) = grid.nearest(d) {
                gram[(i, j)] = f.value(idx) * grid.modular_of(d).powf(0.5);
            }
        }
    }
    let gram_report = gram.psd_check(0.05).expect("square");

    let op_positive = op_report.min_eig >= -0.05 * (1e-300 + op_report.op_norm);
    let gram_positive = gram_report.min_eig >= -0.05 * (1e-300 + gram_report.op_norm);
    PdPositivityReport {
        operator_min_eig: op_report.min_eig,
        operator_scale: op_report.op_norm,
        operator_positive: op_positive,
        gram_min_eig: gram_report.min_eig,
        gram_scale: gram_report.op_norm,
        gram_positive,
        agree: op_positive == gram_positive,
        sample_size: s,
        support,
    }
}

/// Relative associativity defect of the quadrature convolution on a triple,
/// measured in the weighted l2 norm.
pub fn associativity_defect(f: &GridFn, g: &GridFn, h: &GridFn) -> f64 {
    let lhs = f.convolve(g).convolve(h);
    let rhs = f.convolve(&g.convolve(h));
    let denom = lhs.norm().max(rhs.norm()).max(1e-300);
    let diff: Vec<Complex64> = lhs
        .values()
        .iter()
        .zip(rhs.values())
        .map(|(a, b)| a - b)
        .collect();
    weighted_norm(f.grid(), &diff) / denom
}

#[cfg(test)]
mod tests {
    use super::*;

    fn default_grid() -> Arc<DiscretizedGroup> {
        build_grid(AxbParams::default()).unwrap()
    }

    fn small_grid() -> Arc<DiscretizedGroup> {
        build_grid(AxbParams {
            m_a: 17,
            m_b: 17,
            ..AxbParams::default()
        })
        .unwrap()
    }

    #[test]
    fn grid_construction_and_parameter_errors() {
        let g = default_grid();
        assert_eq!(g.len(), 1089);
        assert!(g.weights.iter().all(|&w| w > 0.0));
        assert!(g.modular.iter().all(|&m| m > 0.0));

        assert!(build_grid(AxbParams {
            m_a: 4,
            m_b: 4,
            ..AxbParams::default()
        })
        .is_ok());
        assert!(matches!(
            build_grid(AxbParams {
                a_min: 0.0,
                ..AxbParams::default()
            }),
            Err(Error::Param(_))
        ));
        assert!(matches!(
            build_grid(AxbParams {
                m_a: 3,
                ..AxbParams::default()
            }),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn group_law_and_haar_invariance() {
        let g = default_grid();
        let p = (2.0, 1.5);
        let q = (0.5, -3.0);
        let pq = g.mul(p, q);
        assert_eq!(pq, (1.0, 2.0 * -3.0 + 1.5));
        let e = (1.0, 0.0);
        assert_eq!(g.mul(p, g.inv(p)), e);
        // identity lands exactly on the grid
        let ei = g.nearest(e).unwrap();
        assert_eq!(g.point(ei), e);
    }

    #[test]
    fn modular_function_is_exact_homomorphism() {
        let g = default_grid();
        assert!(modular_homomorphism_residual(&g, 7) <= 1e-14);
    }

    #[test]
    fn sigma_scalar_laws_are_exact() {
        let g = default_grid();
        let t = g.nearest((2.0, 0.0)).unwrap();
        let z = Complex64::new(0.3, -0.8);
        let report = modular_flow_check(&g, t, z);
        assert!(report.sigma_half_residual <= 1e-14);
        assert!(report.exponent_law_residual <= 1e-14);

        // z = 0: sigma_0 is the identity
        let report0 = modular_flow_check(&g, t, Complex64::new(0.0, 0.0));
        assert!((report0.sigma_factor - Complex64::new(1.0, 0.0)).norm() == 0.0);
        assert!(report0.operator_deviations.is_none());
    }

    #[test]
    fn j_conjugation_identity_holds_and_refines() {
        let g = default_grid();
        let t = g.nearest((2.0, 0.0)).unwrap();
        let report = modular_flow_check(&g, t, Complex64::new(0.0, 0.5));
        let dev = report.max_operator_deviation().unwrap();
        assert!(dev <= 0.15, "deviation {dev:.3} exceeds 0.15");

        let fine = build_grid(g.params().refined()).unwrap();
        let tf = fine.nearest((2.0, 0.0)).unwrap();
        let fine_report = modular_flow_check(&fine, tf, Complex64::new(0.0, 0.5));
        let fine_dev = fine_report.max_operator_deviation().unwrap();
        assert!(
            dev / fine_dev >= 1.5,
            "refinement ratio {:.2} below 1.5 (coarse {dev:.4}, fine {fine_dev:.4})",
            dev / fine_dev
        );
    }

    #[test]
    fn q_left_regular_of_normalized_bump_approximates_identity() {
        let g = default_grid();
        let bump = GridFn::gaussian(g.clone(), 0.0, 0.0, 0.1);
        let mass = bump.integral().re;
        let bump = bump.scale(1.0 / mass);
        let (op, support) = q_left_regular(&bump);
        assert!(!support.truncation_warning, "{support:?}");
        for xi in smooth_test_vectors(&g) {
            let v = CMatrix::from_fn(g.len(), 1, |i, _| xi.value(i));
            let applied = op.matmul(&v);
            let diff: Vec<Complex64> = (0..g.len())
                .map(|i| applied[(i, 0)] - xi.value(i))
                .collect();
            let rel = weighted_norm(&g, &diff) / xi.norm();
            assert!(rel <= 0.1, "relative error {rel:.3}");
        }
    }

    #[test]
    fn q_left_regular_application_matches_quadrature_convolution() {
        let g = small_grid();
        let f = GridFn::gaussian2(g.clone(), 0.0, 0.1, 0.3, 0.5);
        let xi = GridFn::gaussian2(g.clone(), 0.2, -0.2, 0.3, 0.8);
        let (op, _) = q_left_regular(&f);
        let v = CMatrix::from_fn(g.len(), 1, |i, _| xi.value(i));
        let applied = op.matmul(&v);
        let conv = f.convolve(&xi);
        let diff: Vec<Complex64> = (0..g.len())
            .map(|i| applied[(i, 0)] - conv.value(i))
            .collect();
        let rel = weighted_norm(&g, &diff) / conv.norm();
        // two discretizations of the same integral; they agree to the
        // scheme's own accuracy
        assert!(rel <= 0.1, "relative gap {rel:.3}");
    }

    #[test]
    fn q_left_regular_zero_and_truncation_warning() {
        let g = small_grid();
        let (op, _) = q_left_regular(&GridFn::zero(g.clone()));
        assert!(op.frobenius_norm() == 0.0);

        // a function parked at the window edge trips the support heuristic
        let edge = GridFn::gaussian(g.clone(), 1.2, 3.5, 0.4);
        let (_, support) = q_left_regular(&edge);
        assert!(support.truncation_warning);
    }

    #[test]
    fn associativity_defect_shrinks_under_refinement() {
        let coarse = small_grid();
        let fine = build_grid(coarse.params().refined()).unwrap();
        let mk = |grid: &Arc<DiscretizedGroup>| {
            (
                GridFn::gaussian(grid.clone(), 0.0, 0.2, 0.5),
                GridFn::gaussian(grid.clone(), 0.15, -0.3, 0.55),
                GridFn::gaussian(grid.clone(), -0.2, 0.1, 0.5),
            )
        };
        let (f1, g1, h1) = mk(&coarse);
        let (f2, g2, h2) = mk(&fine);
        let d_coarse = associativity_defect(&f1, &g1, &h1);
        let d_fine = associativity_defect(&f2, &g2, &h2);
        assert!(
            d_coarse / d_fine >= 1.5,
            "ratio {:.2} (coarse {d_coarse:.4}, fine {d_fine:.4})",
            d_coarse / d_fine
        );
    }

    #[test]
    fn windowed_net_monotone_and_compact_support() {
        // full a-range throughout; the windows grow in the b direction
        let g = default_grid();
        let windows: Vec<Window> = (1..=4)
            .map(|i| {
                let b = i as f64;
                Window {
                    a_lo: 0.25,
                    a_hi: 4.0,
                    b_lo: -b,
                    b_hi: b,
                }
            })
            .collect();

        // compact bump strictly inside window 1: all later increments vanish
        let bump = GridFn::from_fn(g.clone(), |a, b| {
            let u = a.ln();
            if u.abs() < 0.2 && b.abs() < 0.5 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let report = windowed_integral_net(&bump, &windows, 1e-3).unwrap();
        assert!(report.monotone);
        assert!(report.integrable);
        for inc in &report.increments[1..] {
            assert_eq!(*inc, 0.0);
        }

        // f = 1 keeps growing linearly in the b-window: not integrable
        let one = GridFn::from_fn(g.clone(), |_, _| Complex64::new(1.0, 0.0));
        let report = windowed_integral_net(&one, &windows, 1e-3).unwrap();
        assert!(report.monotone);
        assert!(!report.integrable);

        // decaying gaussian integrates; value stable under refinement
        let decay = GridFn::from_fn(g.clone(), |a, b| {
            Complex64::new((-(a.ln().powi(2)) - b * b).exp(), 0.0)
        });
        let report = windowed_integral_net(&decay, &windows, 1e-3).unwrap();
        assert!(report.monotone && report.integrable);
        let fine = build_grid(g.params().refined()).unwrap();
        let decay_fine = GridFn::from_fn(fine.clone(), |a, b| {
            Complex64::new((-(a.ln().powi(2)) - b * b).exp(), 0.0)
        });
        let windows_fine = windows.clone();
        let report_fine = windowed_integral_net(&decay_fine, &windows_fine, 1e-3).unwrap();
        let v1 = *report.partials.last().unwrap();
        let v2 = *report_fine.partials.last().unwrap();
        assert!(
            ((v1 - v2) / v2).abs() < 5e-4,
            "coarse {v1:.6} vs fine {v2:.6}"
        );
    }

    #[test]
    fn windowed_net_rejects_bad_input() {
        let g = small_grid();
        let one = GridFn::from_fn(g.clone(), |_, _| Complex64::new(1.0, 0.0));
        let w1 = Window {
            a_lo: 0.5,
            a_hi: 2.0,
            b_lo: -1.0,
            b_hi: 1.0,
        };
        let w2 = Window {
            a_lo: 0.6,
            a_hi: 3.0,
            b_lo: -2.0,
            b_hi: 2.0,
        }; // not nested
        assert!(matches!(
            windowed_integral_net(&one, &[w1, w2], 1e-3),
            Err(Error::Param(_))
        ));
        let neg = GridFn::from_fn(g, |_, _| Complex64::new(-1.0, 0.0));
        assert!(matches!(
            windowed_integral_net(&neg, &[w1], 1e-3),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn pd_certificate_error_shrinks_under_refinement() {
        // the operator certificate of a genuinely positive element has a
        // small negative tail that is pure quadrature error; it must shrink
        // when the grid refines
        let coarse = small_grid();
        let fine = build_grid(coarse.params().refined()).unwrap();
        let measure = |grid: &Arc<DiscretizedGroup>| {
            let xi = GridFn::gaussian(grid.clone(), 0.0, 0.0, 0.35);
            let f = xi.involute().convolve(&xi);
            let report = pd_positivity_check(&f, 200);
            (-report.operator_min_eig).max(0.0) / report.operator_scale
        };
        let e_coarse = measure(&coarse);
        let e_fine = measure(&fine);
        assert!(
            e_coarse / e_fine >= 1.5,
            "ratio {:.2} (coarse {e_coarse:.4}, fine {e_fine:.4})",
            e_coarse / e_fine
        );
    }

    #[test]
    fn pd_certificates_agree_on_constructed_examples() {
        let g = small_grid();
        // positive example: quadrature xi* * xi of a smooth bump
        let xi = GridFn::gaussian(g.clone(), 0.0, 0.0, 0.35);
        let f = xi.involute().convolve(&xi);
        let report = pd_positivity_check(&f, 200);
        assert!(report.sample_size > 0 && report.sample_size <= 200);
        assert!(report.operator_positive, "{report:?}");
        assert!(report.gram_positive, "{report:?}");
        assert!(report.agree);

        // large indefinite perturbation flips both certificates
        let mut bad = f.clone();
        let spike = g.nearest((1.3, 0.8)).unwrap();
        let scale = f.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
        bad.set_value(spike, bad.value(spike) + Complex64::new(30.0 * scale, 0.0));
        let report = pd_positivity_check(&bad, 200);
        assert!(!report.operator_positive, "{report:?}");
        assert!(!report.gram_positive, "{report:?}");
        assert!(report.agree);

        // zero function: both exactly zero-positive
        let report = pd_positivity_check(&GridFn::zero(g), 200);
        assert!(report.operator_positive && report.gram_positive && report.agree);
        assert_eq!(report.operator_min_eig, 0.0);
        assert_eq!(report.gram_min_eig, 0.0);
    }
}
