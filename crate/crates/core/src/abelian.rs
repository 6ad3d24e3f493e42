//! Dual groups of finite Abelian groups and the classical transform they
//! carry, used to cross-check the general machinery against textbook
//! formulas.
//!
//! The dual is built constructively: a cyclic basis of the group is found by
//! a greedy search (largest element order first, requiring the candidate's
//! cyclic subgroup to meet the current span trivially), elements get
//! exponent coordinates over that basis, and characters are products of
//! roots of unity indexed by the same coordinates. Character indices run
//! lexicographically over the exponent tuples, so `cyclic(n)` gets the
//! familiar `chi_m(t) = exp(2 pi i m t / n)`.
//!
//! Conventions, pinned by tests rather than prose: the Gelfand transform
//! sends `lambda_t` to `chi -> conj(chi(t))`, hence
//! `A(chi) = sum_t a(t) conj(chi(t))`; with counting measure on G the dual
//! carries normalized counting measure `1/|G| sum_chi`.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;

use crate::conv::OpValFn;
use crate::error::{Error, Result};
use crate::fourier::fourier_transform;
use crate::group::FiniteGroup;
use crate::linalg::CMatrix;

/// The Pontryagin dual of a finite Abelian group as an explicit character
/// table: `chars[m][t] = chi_m(t)`.
#[derive(Debug, Clone)]
pub struct DualGroup {
    base: Arc<FiniteGroup>,
    /// Cyclic factor orders of the basis decomposition, largest first.
    factor_orders: Vec<usize>,
    chars: Vec<Vec<Complex64>>,
}

impl DualGroup {
    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.chars.len()
    }

    pub fn factor_orders(&self) -> &[usize] {
        &self.factor_orders
    }

    pub fn character(&self, m: usize, t: usize) -> Complex64 {
        self.chars[m][t]
    }

    pub fn characters(&self) -> &[Vec<Complex64>] {
        &self.chars
    }
}

/// Construct the dual group. Errors with a witness pair on non-Abelian input.
pub fn dual_group(g: &Arc<FiniteGroup>) -> Result<DualGroup> {
    ensure_abelian(g)?;
    let n = g.order();
    let (basis, coords) = cyclic_basis(g)?;
    let factor_orders: Vec<usize> = basis.iter().map(|&(_, d)| d).collect();

    // per-factor roots of unity
    let roots: Vec<Vec<Complex64>> = factor_orders
        .iter()
        .map(|&d| {
            (0..d)
                .map(|j| {
                    let ang = TAU * j as f64 / d as f64;
                    Complex64::new(ang.cos(), ang.sin())
                })
                .collect()
        })
        .collect();

    // characters indexed lexicographically by exponent tuples
    let mut chars = Vec::with_capacity(n);
    let mut m = vec![0usize; factor_orders.len()];
    loop {
        let mut row = Vec::with_capacity(n);
        for t in 0..n {
            let mut val = Complex64::new(1.0, 0.0);
            for (i, &mi) in m.iter().enumerate() {
                let d = factor_orders[i];
                val *= roots[i][(mi * coords[t][i]) % d];
            }
            row.push(val);
        }
        chars.push(row);
        if !increment_mixed_radix(&mut m, &factor_orders) {
            break;
        }
    }
    debug_assert_eq!(chars.len(), n);
    Ok(DualGroup {
        base: g.clone(),
        factor_orders,
        chars,
    })
}

fn ensure_abelian(g: &FiniteGroup) -> Result<()> {
    if let Some((s, t)) = g.noncommuting_pair() {
        return Err(Error::NotAbelian {
            s: g.label(s).to_string(),
            t: g.label(t).to_string(),
        });
    }
    Ok(())
}

/// Greedy cyclic basis: returns generators with their orders and, for every
/// element, its exponent coordinates over the basis. The greedy step picks
/// the largest-order element whose cyclic subgroup meets the current span
/// only in the identity; the span then extends as a direct product, which
/// keeps coordinates well-defined.
fn cyclic_basis(g: &FiniteGroup) -> Result<(Vec<(usize, usize)>, Vec<Vec<usize>>)> {
    let n = g.order();
    let mut in_span = vec![false; n];
    in_span[g.identity()] = true;
    let mut span: Vec<usize> = vec![g.identity()];
    let mut coords: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut basis: Vec<(usize, usize)> = Vec::new();

    let mut orders: Vec<(usize, usize)> = (0..n).map(|t| (g.element_order(t), t)).collect();
    orders.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

    while span.len() < n {
        let mut picked = None;
        'candidates: for &(ord, h) in &orders {
            if in_span[h] {
                continue;
            }
            // cyclic subgroup of h must meet the span trivially
            let mut x = h;
            while x != g.identity() {
                if in_span[x] {
                    continue 'candidates;
                }
                x = g.mul(x, h);
            }
            picked = Some((h, ord));
            break;
        }
        let (h, ord) = picked.ok_or_else(|| {
            Error::Param("internal: cyclic basis search stalled on an Abelian group".into())
        })?;

        let old_span = span.clone();
        let mut power = g.identity();
        for j in 1..ord {
            power = g.mul(power, h);
            for &s in &old_span {
                let prod = g.mul(s, power);
                debug_assert!(!in_span[prod], "span extension must be direct");
                in_span[prod] = true;
                span.push(prod);
                let mut c = coords[s].clone();
                c.push(j);
                coords[prod] = c;
            }
        }
        // elements already in the old span get exponent 0 for the new factor
        for &s in &old_span {
            coords[s].push(0);
        }
        basis.push((h, ord));
    }
    // the identity-only group has an empty basis; give it one trivial factor
    if basis.is_empty() {
        basis.push((g.identity(), 1));
        for c in coords.iter_mut() {
            c.push(0);
        }
    }
    Ok((basis, coords))
}

fn increment_mixed_radix(m: &mut [usize], radices: &[usize]) -> bool {
    for i in (0..m.len()).rev() {
        m[i] += 1;
        if m[i] < radices[i] {
            return true;
        }
        m[i] = 0;
    }
    false
}

/// Gelfand transform of a coefficient function on an Abelian group:
/// `A(chi) = sum_t a(t) conj(chi(t))`, one k-by-k value per character.
pub fn gelfand_transform(a: &OpValFn, dual: &DualGroup) -> Result<Vec<CMatrix>> {
    if !a.group().same_group(dual.base()) {
        return Err(Error::Shape(
            "function and dual group live on different groups".into(),
        ));
    }
    let n = a.group().order();
    let k = a.k();
    let mut out = Vec::with_capacity(n);
    for m in 0..dual.order() {
        let mut acc = CMatrix::zeros(k, k);
        for t in 0..n {
            acc = acc.add(&a.coeff(t).scale(dual.character(m, t).conj()));
        }
        out.push(acc);
    }
    Ok(out)
}

/// Residuals of the two classical inversion identities.
#[derive(Debug, Clone)]
pub struct CrosscheckReport {
    /// max_t || a^(t) - 1/|G| sum_chi chi(t) A(chi) ||
    pub pointwise_residual: f64,
    /// max_chi || sum_t conj(chi(t)) a^(t) - A(chi) ||
    pub dual_residual: f64,
}

impl CrosscheckReport {
    pub fn max_residual(&self) -> f64 {
        self.pointwise_residual.max(self.dual_residual)
    }
}

/// Cross-check the group-side Fourier transform against the character-side
/// Gelfand transform on an Abelian group.
pub fn crosscheck_inversion(a: &OpValFn) -> Result<CrosscheckReport> {
    let g = a.group();
    ensure_abelian(g)?;
    let dual = dual_group(g)?;
    let ahat = fourier_transform(a);
    let gelfand = gelfand_transform(a, &dual)?;
    let n = g.order();
    let k = a.k();

    let mut pointwise = 0.0f64;
    for t in 0..n {
        let mut acc = CMatrix::zeros(k, k);
        for m in 0..n {
            acc = acc.add(&gelfand[m].scale(dual.character(m, t)));
        }
        acc = acc.scale_re(1.0 / n as f64);
        pointwise = pointwise.max(acc.sub(ahat.coeff(t)).frobenius_norm());
    }

    let mut dual_resid = 0.0f64;
    for m in 0..n {
        let mut acc = CMatrix::zeros(k, k);
        for t in 0..n {
            acc = acc.add(&ahat.coeff(t).scale(dual.character(m, t).conj()));
        }
        dual_resid = dual_resid.max(acc.sub(&gelfand[m]).frobenius_norm());
    }

    Ok(CrosscheckReport {
        pointwise_residual: pointwise,
        dual_residual: dual_resid,
    })
}
