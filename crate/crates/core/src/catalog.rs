//! Standard group catalogs used by the verification suites and tests.

use std::sync::Arc;

use crate::group::FiniteGroup;

/// The five desk-scale groups every operator-level property suite runs over:
/// cyclic(6), S_3, D_4 (order 8), Q_8, and the Heisenberg group over Z_3.
pub fn verification_groups() -> Vec<Arc<FiniteGroup>> {
    vec![
        FiniteGroup::cyclic(6).expect("cyclic(6)"),
        FiniteGroup::symmetric(3).expect("symmetric(3)"),
        FiniteGroup::dihedral(4).expect("dihedral(4)"),
        FiniteGroup::quaternion8(),
        FiniteGroup::heisenberg(3).expect("heisenberg(3)"),
    ]
}

/// Short display name for a catalog group.
pub fn group_name(g: &FiniteGroup) -> String {
    spec_name(g.spec(), g.order())
}

fn spec_name(spec: &crate::group::GroupSpec, order: usize) -> String {
    match spec {
        crate::group::GroupSpec::Cyclic { n } => format!("C{n}"),
        crate::group::GroupSpec::Dihedral { n } => format!("D{n}"),
        crate::group::GroupSpec::Symmetric { n } => format!("S{n}"),
        crate::group::GroupSpec::Quaternion8 => "Q8".into(),
        crate::group::GroupSpec::Heisenberg { p } => format!("H{p}"),
        crate::group::GroupSpec::Product { factors } => factors
            .iter()
            .map(|f| spec_name(f, 0))
            .collect::<Vec<_>>()
            .join("x"),
        crate::group::GroupSpec::Table { .. } => format!("table{order}"),
    }
}

/// Abelian groups of order at most `max_order`: all cyclic groups plus a
/// spread of non-cyclic products covering the invariant-factor shapes.
pub fn abelian_catalog(max_order: usize) -> Vec<Arc<FiniteGroup>> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.push(FiniteGroup::cyclic(n).expect("cyclic"));
    }
    let products: &[&[usize]] = &[
        &[2, 2],
        &[2, 4],
        &[2, 6],
        &[3, 3],
        &[2, 2, 2],
        &[4, 4],
        &[2, 8],
        &[2, 2, 4],
        &[3, 9],
        &[2, 16],
        &[4, 8],
        &[2, 2, 2, 2],
        &[5, 5],
        &[6, 6],
        &[2, 32],
        &[4, 16],
        &[8, 8],
        &[2, 2, 16],
        &[2, 4, 8],
    ];
    for dims in products {
        let order: usize = dims.iter().product();
        if order > max_order {
            continue;
        }
        let mut g = FiniteGroup::cyclic(dims[0]).expect("cyclic");
        for &d in &dims[1..] {
            let h = FiniteGroup::cyclic(d).expect("cyclic");
            g = FiniteGroup::direct_product(&g, &h).expect("product");
        }
        out.push(g);
    }
    out
}
