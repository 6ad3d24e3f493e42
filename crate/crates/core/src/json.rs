//! JSON wire formats.
//!
//! Complex matrices serialize as nested `[re, im]` pairs. Coefficient
//! functions key their blocks by element label; missing labels default to
//! zero blocks. Every operator-level payload carries the group descriptor
//! and the coefficient dimension so files are self-describing.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::conv::{BlockOperator, OpValFn};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::linalg::CMatrix;
use crate::posdef::Dilation;

pub type MatrixJson = Vec<Vec<[f64; 2]>>;

pub fn matrix_to_json(m: &CMatrix) -> MatrixJson {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| [m[(i, j)].re, m[(i, j)].im])
                .collect()
        })
        .collect()
}

pub fn matrix_from_json(rows: &MatrixJson) -> Result<CMatrix> {
    let data: Vec<Vec<Complex64>> = rows
        .iter()
        .map(|r| r.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())
        .collect();
    CMatrix::from_rows(data)
}

/// Wire form of an operator-valued function.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OpValFnJson {
    pub group: GroupSpec,
    pub k: usize,
    pub coeffs: BTreeMap<String, MatrixJson>,
}

impl OpValFnJson {
    pub fn from_fn(f: &OpValFn) -> Self {
        let g = f.group();
        let coeffs = (0..g.order())
            .filter(|&t| f.coeff(t).frobenius_norm() != 0.0)
            .map(|t| (g.label(t).to_string(), matrix_to_json(f.coeff(t))))
            .collect();
        OpValFnJson {
            group: g.spec().clone(),
            k: f.k(),
            coeffs,
        }
    }

    pub fn build(&self) -> Result<OpValFn> {
        self.build_with_limit(crate::group::DEFAULT_MAX_ORDER)
    }

    pub fn build_with_limit(&self, max_order: usize) -> Result<OpValFn> {
        let group = self.group.build_with_limit(max_order)?;
        let mut f = OpValFn::zero(group.clone(), self.k);
        for (label, rows) in &self.coeffs {
            let t = group
                .element_by_label(label)
                .ok_or_else(|| Error::UnknownLabel {
                    label: label.clone(),
                    context: "coeffs".into(),
                })?;
            let m = matrix_from_json(rows)?;
            if m.rows() != self.k || m.cols() != self.k {
                return Err(Error::Shape(format!(
                    "coefficient {label:?} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    self.k,
                    self.k
                )));
            }
            f.set_coeff(t, m);
        }
        Ok(f)
    }
}

/// Wire form of a block operator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockOperatorJson {
    pub group: GroupSpec,
    pub k: usize,
    pub matrix: MatrixJson,
}

impl BlockOperatorJson {
    pub fn from_operator(x: &BlockOperator) -> Self {
        BlockOperatorJson {
            group: x.group().spec().clone(),
            k: x.k(),
            matrix: matrix_to_json(x.matrix()),
        }
    }

    pub fn build(&self) -> Result<BlockOperator> {
        self.build_with_limit(crate::group::DEFAULT_MAX_ORDER)
    }

    pub fn build_with_limit(&self, max_order: usize) -> Result<BlockOperator> {
        let group = self.group.build_with_limit(max_order)?;
        BlockOperator::from_matrix(group, self.k, matrix_from_json(&self.matrix)?)
    }
}

/// Wire form of a dual group: the base descriptor, the cyclic factor orders
/// of the basis decomposition, and the full character table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DualGroupJson {
    pub group: GroupSpec,
    pub factor_orders: Vec<usize>,
    pub chars: MatrixJson,
}

impl DualGroupJson {
    pub fn from_dual(d: &crate::abelian::DualGroup) -> Self {
        let n = d.order();
        let chars = (0..n)
            .map(|m| {
                (0..n)
                    .map(|t| [d.character(m, t).re, d.character(m, t).im])
                    .collect()
            })
            .collect();
        DualGroupJson {
            group: d.base().spec().clone(),
            factor_orders: d.factor_orders().to_vec(),
            chars,
        }
    }
}

/// Wire form of a Naimark dilation, including residual metrics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DilationJson {
    pub group: GroupSpec,
    pub k: usize,
    pub dim: usize,
    pub u: BTreeMap<String, MatrixJson>,
    pub s: MatrixJson,
    pub rank_tol: f64,
    pub reconstruction_residual: f64,
    pub max_unitarity_defect: f64,
}

impl DilationJson {
    pub fn from_dilation(d: &Dilation) -> Self {
        let g = d.group();
        let u = (0..g.order())
            .map(|t| (g.label(t).to_string(), matrix_to_json(d.u(t))))
            .collect();
        DilationJson {
            group: g.spec().clone(),
            k: d.k(),
            dim: d.dim(),
            u,
            s: matrix_to_json(d.s()),
            rank_tol: d.rank_tol(),
            reconstruction_residual: d.reconstruction_residual(),
            max_unitarity_defect: d.max_unitarity_defect(),
        }
    }
}
