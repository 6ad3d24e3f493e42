//! Finite groups as validated Cayley tables.
//!
//! A [`FiniteGroup`] stores the full multiplication table with a canonical,
//! constructor-specific element ordering, the identity at index 0, the
//! inverse permutation, human-readable labels, and the modular function.
//! Finite groups are unimodular so the stored modular function is constantly
//! one, but every formula that involves it reads the stored value; the same
//! formula code then serves the non-unimodular quadrature model.
//!
//! Element orderings (deterministic per constructor):
//! - `cyclic(n)`: residues `0..n` ascending.
//! - `dihedral(n)`: rotations `r0..r{n-1}`, then reflections `r0s..r{n-1}s`,
//!   with the relation `(r^i s)(r^j s) = r^{i-j}`.
//! - `symmetric(n)`: permutations in lexicographic one-line notation;
//!   composition applies the right factor first.
//! - `quaternion8`: `1, -1, i, -i, j, -j, k, -k`.
//! - `heisenberg(p)`: upper unitriangular triples `(a, b, c)` over Z_p in
//!   lexicographic order, `(a,b,c)·(a',b',c') = (a+a', b+b', c+c'+ab')`.
//! - products: `(g, h)` at index `g * |H| + h`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on group order; block operators scale as `(k|G|)^2`.
pub const DEFAULT_MAX_ORDER: usize = 5000;

/// JSON-facing descriptor of a group constructor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic { n: usize },
    Dihedral { n: usize },
    Symmetric { n: usize },
    Quaternion8,
    Heisenberg { p: usize },
    Product { factors: Vec<GroupSpec> },
    Table { table: Vec<Vec<usize>> },
}

impl GroupSpec {
    /// Build the described group under the default order cap.
    pub fn build(&self) -> Result<Arc<FiniteGroup>> {
        self.build_with_limit(DEFAULT_MAX_ORDER)
    }

    pub fn build_with_limit(&self, max_order: usize) -> Result<Arc<FiniteGroup>> {
        let g = match self {
            GroupSpec::Cyclic { n } => FiniteGroup::cyclic(*n)?,
            GroupSpec::Dihedral { n } => FiniteGroup::dihedral(*n)?,
            GroupSpec::Symmetric { n } => FiniteGroup::symmetric(*n)?,
            GroupSpec::Quaternion8 => FiniteGroup::quaternion8(),
            GroupSpec::Heisenberg { p } => FiniteGroup::heisenberg(*p)?,
            GroupSpec::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::Param("product needs at least one factor".into()));
                }
                let mut acc = factors[0].build_with_limit(max_order)?;
                for f in &factors[1..] {
                    let h = f.build_with_limit(max_order)?;
                    acc = FiniteGroup::direct_product_with_limit(&acc, &h, max_order)?;
                }
                // keep the full product descriptor rather than nested pairs
                let mut g = (*acc).clone();
                g.spec = self.clone();
                Arc::new(g)
            }
            GroupSpec::Table { table } => FiniteGroup::from_table(table.clone())?,
        };
        if g.order() > max_order {
            return Err(Error::SizeLimit {
                order: g.order(),
                max: max_order,
            });
        }
        Ok(g)
    }
}

/// A finite group presented by its Cayley table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteGroup {
    spec: GroupSpec,
    order: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
    modular: Vec<f64>,
}

/// Outcome of checking one group axiom.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub passed: bool,
    /// First counterexample, when the axiom fails.
    pub witness: Option<String>,
}

/// Per-axiom validation report for an explicit multiplication table.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl FiniteGroup {
    fn assemble(spec: GroupSpec, table: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Arc<Self>> {
        let order = table.len();
        let mut inverse = vec![usize::MAX; order];
        for s in 0..order {
            for t in 0..order {
                if table[s][t] == 0 {
                    inverse[s] = t;
                }
            }
        }
        if inverse.iter().any(|&i| i == usize::MAX) {
            return Err(Error::GroupValidation {
                axiom: "inverses",
                witness: "some element has no inverse".into(),
            });
        }
        Ok(Arc::new(FiniteGroup {
            spec,
            order,
            table,
            identity: 0,
            inverse,
            labels,
            modular: vec![1.0; order],
        }))
    }

    /// Z_n with residues in ascending order.
    pub fn cyclic(n: usize) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(Error::Param("cyclic(n) requires n >= 1".into()));
        }
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        let labels = (0..n).map(|a| a.to_string()).collect();
        Self::assemble(GroupSpec::Cyclic { n }, table, labels)
    }

    /// Dihedral group of order 2n: rotations first, then reflections.
    pub fn dihedral(n: usize) -> Result<Arc<Self>> {
        if n < 2 {
            return Err(Error::Param("dihedral(n) requires n >= 2".into()));
        }
        let idx = |rot: usize, refl: bool| if refl { n + rot } else { rot };
        let mut table = vec![vec![0usize; 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                // r^i r^j = r^{i+j};  r^i (r^j s) = r^{i+j} s
                table[idx(i, false)][idx(j, false)] = idx((i + j) % n, false);
                table[idx(i, false)][idx(j, true)] = idx((i + j) % n, true);
                // (r^i s) r^j = r^{i-j} s;  (r^i s)(r^j s) = r^{i-j}
                table[idx(i, true)][idx(j, false)] = idx((n + i - j) % n, true);
                table[idx(i, true)][idx(j, true)] = idx((n + i - j) % n, false);
            }
        }
        let mut labels: Vec<String> = (0..n).map(|i| format!("r{i}")).collect();
        labels.extend((0..n).map(|i| format!("r{i}s")));
        Self::assemble(GroupSpec::Dihedral { n }, table, labels)
    }

    /// S_n on `{1..n}` in lexicographic one-line order; `(s·t)(x) = s(t(x))`.
    pub fn symmetric(n: usize) -> Result<Arc<Self>> {
        if n == 0 || n > 6 {
            return Err(Error::Param("symmetric(n) requires 1 <= n <= 6".into()));
        }
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            perms.push(cur.clone());
            if !next_permutation(&mut cur) {
                break;
            }
        }
        let index: HashMap<Vec<usize>, usize> = perms
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let order = perms.len();
        let mut table = vec![vec![0usize; order]; order];
        for (i, s) in perms.iter().enumerate() {
            for (j, t) in perms.iter().enumerate() {
                let comp: Vec<usize> = (0..n).map(|x| s[t[x]]).collect();
                table[i][j] = index[&comp];
            }
        }
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|&x| (x + 1).to_string()).collect::<String>())
            .collect();
        Self::assemble(GroupSpec::Symmetric { n }, table, labels)
    }

    /// The quaternion group {1, -1, i, -i, j, -j, k, -k}.
    pub fn quaternion8() -> Arc<Self> {
        // element = (sign, axis) with axis 0 = 1, 1 = i, 2 = j, 3 = k
        let idx = |sign: bool, axis: usize| 2 * axis + usize::from(sign);
        let mul = |(s1, a1): (bool, usize), (s2, a2): (bool, usize)| -> (bool, usize) {
            let sign = s1 ^ s2;
            match (a1, a2) {
                (0, a) => (sign, a),
                (a, 0) => (sign, a),
                (a, b) if a == b => (!sign, 0), // i^2 = j^2 = k^2 = -1
                (1, 2) => (sign, 3),            // ij = k
                (2, 3) => (sign, 1),            // jk = i
                (3, 1) => (sign, 2),            // ki = j
                (2, 1) => (!sign, 3),           // ji = -k
                (3, 2) => (!sign, 1),           // kj = -i
                (1, 3) => (!sign, 2),           // ik = -j
                _ => unreachable!(),
            }
        };
        let elems: Vec<(bool, usize)> = (0..4).flat_map(|a| [(false, a), (true, a)]).collect();
        let order = 8;
        let mut table = vec![vec![0usize; order]; order];
        for (i, &x) in elems.iter().enumerate() {
            for (j, &y) in elems.iter().enumerate() {
                let (s, a) = mul(x, y);
                table[i][j] = idx(s, a);
            }
        }
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Self::assemble(GroupSpec::Quaternion8, table, labels).expect("quaternion table is a group")
    }

    /// Heisenberg group over Z_p: triples `(a, b, c)` in lexicographic order.
    pub fn heisenberg(p: usize) -> Result<Arc<Self>> {
        if !matches!(p, 2 | 3 | 5 | 7) {
            return Err(Error::Param("heisenberg(p) requires prime p <= 7".into()));
        }
        let order = p * p * p;
        let idx = |a: usize, b: usize, c: usize| (a * p + b) * p + c;
        let mut table = vec![vec![0usize; order]; order];
        let mut labels = vec![String::new(); order];
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    labels[idx(a, b, c)] = format!("({a},{b},{c})");
                    for a2 in 0..p {
                        for b2 in 0..p {
                            for c2 in 0..p {
                                let prod = idx((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
                                table[idx(a, b, c)][idx(a2, b2, c2)] = prod;
                            }
                        }
                    }
                }
            }
        }
        Self::assemble(GroupSpec::Heisenberg { p }, table, labels)
    }

    /// Build from an explicit table, validating every axiom. The error names
    /// the first violated axiom with a counterexample.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Arc<Self>> {
        let report = validate_table(&table);
        if let Some(fail) = report.first_failure() {
            return Err(Error::GroupValidation {
                axiom: fail.axiom,
                witness: fail.witness.clone().unwrap_or_default(),
            });
        }
        let labels = (0..table.len()).map(|i| format!("g{i}")).collect();
        Self::assemble(
            GroupSpec::Table {
                table: table.clone(),
            },
            table,
            labels,
        )
    }

    /// Direct product with componentwise multiplication; `(g, h)` sits at
    /// index `g * |H| + h`.
    pub fn direct_product(g: &Arc<Self>, h: &Arc<Self>) -> Result<Arc<Self>> {
        Self::direct_product_with_limit(g, h, DEFAULT_MAX_ORDER)
    }

    pub fn direct_product_with_limit(
        g: &Arc<Self>,
        h: &Arc<Self>,
        max_order: usize,
    ) -> Result<Arc<Self>> {
        let order = g.order * h.order;
        if order > max_order {
            return Err(Error::SizeLimit {
                order,
                max: max_order,
            });
        }
        let idx = |a: usize, b: usize| a * h.order + b;
        let mut table = vec![vec![0usize; order]; order];
        let mut labels = vec![String::new(); order];
        for a in 0..g.order {
            for b in 0..h.order {
                labels[idx(a, b)] = format!("({},{})", g.labels[a], h.labels[b]);
                for a2 in 0..g.order {
                    for b2 in 0..h.order {
                        table[idx(a, b)][idx(a2, b2)] = idx(g.table[a][a2], h.table[b][b2]);
                    }
                }
            }
        }
        let spec = GroupSpec::Product {
            factors: vec![g.spec.clone(), h.spec.clone()],
        };
        Self::assemble(spec, table, labels)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.table[s][t]
    }

    #[inline]
    pub fn inv(&self, t: usize) -> usize {
        self.inverse[t]
    }

    pub fn label(&self, t: usize) -> &str {
        &self.labels[t]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Index of the element carrying the given label.
    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Modular function value at `t` (constantly 1 on a finite group).
    #[inline]
    pub fn modular(&self, t: usize) -> f64 {
        self.modular[t]
    }

    pub fn is_abelian(&self) -> bool {
        self.noncommuting_pair().is_none()
    }

    /// Some pair (s, t) with st != ts, if one exists.
    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        for s in 0..self.order {
            for t in 0..s {
                if self.table[s][t] != self.table[t][s] {
                    return Some((s, t));
                }
            }
        }
        None
    }

    /// Order of an element.
    pub fn element_order(&self, t: usize) -> usize {
        let mut x = t;
        let mut ord = 1;
        while x != self.identity {
            x = self.mul(x, t);
            ord += 1;
        }
        ord
    }

    /// Structural equality of the multiplication tables.
    pub fn same_group(&self, other: &FiniteGroup) -> bool {
        self.order == other.order && self.table == other.table
    }

    /// Re-run the axiom checks on this group's own table.
    pub fn validate(&self) -> ValidationReport {
        validate_table(&self.table)
    }
}

/// Check the group axioms on an explicit table: closure (Latin square),
/// identity at index 0, associativity, and inverses. Each check records the
/// first counterexample it finds.
pub fn validate_table(table: &[Vec<usize>]) -> ValidationReport {
    let n = table.len();
    let mut checks = Vec::new();

    // closure / Latin square
    let mut latin = AxiomCheck {
        axiom: "closure (Latin square)",
        passed: true,
        witness: None,
    };
    'latin: for s in 0..n {
        if table[s].len() != n {
            latin.passed = false;
            latin.witness = Some(format!("row {s} has length {} != {n}", table[s].len()));
            break;
        }
        let mut seen_row = vec![false; n];
        for t in 0..n {
            let v = table[s][t];
            if v >= n {
                latin.passed = false;
                latin.witness = Some(format!("table[{s}][{t}] = {v} out of range"));
                break 'latin;
            }
            if seen_row[v] {
                latin.passed = false;
                latin.witness = Some(format!("row {s} repeats value {v}"));
                break 'latin;
            }
            seen_row[v] = true;
        }
    }
    if latin.passed {
        'cols: for t in 0..n {
            let mut seen_col = vec![false; n];
            for s in 0..n {
                let v = table[s][t];
                if seen_col[v] {
                    latin.passed = false;
                    latin.witness = Some(format!("column {t} repeats value {v}"));
                    break 'cols;
                }
                seen_col[v] = true;
            }
        }
    }
    let latin_ok = latin.passed;
    checks.push(latin);

    // identity at index 0
    let mut ident = AxiomCheck {
        axiom: "identity",
        passed: true,
        witness: None,
    };
    if latin_ok {
        for t in 0..n {
            if table[0][t] != t || table[t][0] != t {
                ident.passed = false;
                ident.witness = Some(format!(
                    "element 0 is not a two-sided identity at t = {t}: 0·t = {}, t·0 = {}",
                    table[0][t], table[t][0]
                ));
                break;
            }
        }
    } else {
        ident.passed = false;
        ident.witness = Some("skipped: table is not closed".into());
    }
    checks.push(ident);

    // associativity
    let mut assoc = AxiomCheck {
        axiom: "associativity",
        passed: true,
        witness: None,
    };
    if latin_ok {
        'assoc: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        assoc.passed = false;
                        assoc.witness = Some(format!(
                            "(a,b,c) = ({a},{b},{c}): (ab)c = {} but a(bc) = {}",
                            table[table[a][b]][c], table[a][table[b][c]]
                        ));
                        break 'assoc;
                    }
                }
            }
        }
    } else {
        assoc.passed = false;
        assoc.witness = Some("skipped: table is not closed".into());
    }
    checks.push(assoc);

    // inverses: table[t][inverse[t]] = 0 for some inverse[t], both sides
    let mut invs = AxiomCheck {
        axiom: "inverses",
        passed: true,
        witness: None,
    };
    if latin_ok {
        for t in 0..n {
            let right = (0..n).find(|&u| table[t][u] == 0);
            let ok = match right {
                Some(u) => table[u][t] == 0,
                None => false,
            };
            if !ok {
                invs.passed = false;
                invs.witness = Some(format!("element {t} has no two-sided inverse"));
                break;
            }
        }
    } else {
        invs.passed = false;
        invs.witness = Some("skipped: table is not closed".into());
    }
    checks.push(invs);

    ValidationReport { checks }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_group_invariants(g: &FiniteGroup) {
        assert!(g.validate().all_passed());
        assert_eq!(g.identity(), 0);
        for t in 0..g.order() {
            assert_eq!(g.mul(t, g.inv(t)), 0);
            assert_eq!(g.inv(g.inv(t)), t, "inverse is an involution");
            assert_eq!(g.modular(t), 1.0);
        }
        // (st)^-1 = t^-1 s^-1
        for s in 0..g.order() {
            for t in 0..g.order() {
                assert_eq!(g.inv(g.mul(s, t)), g.mul(g.inv(t), g.inv(s)));
            }
        }
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.mul(0, 0), 0);
        assert_group_invariants(&g);
        let report = FiniteGroup::from_table(vec![vec![0]]).unwrap().validate();
        assert!(report.all_passed());
    }

    #[test]
    fn constructors_satisfy_axioms() {
        for g in [
            FiniteGroup::cyclic(6).unwrap(),
            FiniteGroup::dihedral(2).unwrap(),
            FiniteGroup::dihedral(4).unwrap(),
            FiniteGroup::symmetric(3).unwrap(),
            FiniteGroup::symmetric(4).unwrap(),
            FiniteGroup::quaternion8(),
            FiniteGroup::heisenberg(2).unwrap(),
            FiniteGroup::heisenberg(3).unwrap(),
            FiniteGroup::heisenberg(5).unwrap(),
        ] {
            assert_group_invariants(&g);
        }
    }

    #[test]
    fn constructor_parameter_bounds() {
        assert!(matches!(FiniteGroup::cyclic(0), Err(Error::Param(_))));
        assert!(matches!(FiniteGroup::dihedral(1), Err(Error::Param(_))));
        assert!(matches!(FiniteGroup::symmetric(7), Err(Error::Param(_))));
        assert!(matches!(FiniteGroup::heisenberg(4), Err(Error::Param(_))));
        assert!(matches!(FiniteGroup::heisenberg(11), Err(Error::Param(_))));
    }

    #[test]
    fn symmetric_3_matches_independent_composition() {
        // Oracle: enumerate the 6 permutations of 3 letters independently and
        // compose as functions, then compare against the built table.
        let g = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        let perms = [
            [0usize, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let find = |q: [usize; 3]| perms.iter().position(|p| *p == q).unwrap();
        let mut noncommuting = false;
        for (i, s) in perms.iter().enumerate() {
            for (j, t) in perms.iter().enumerate() {
                let comp = [s[t[0]], s[t[1]], s[t[2]]];
                assert_eq!(g.mul(i, j), find(comp));
                if g.mul(i, j) != g.mul(j, i) {
                    noncommuting = true;
                }
            }
        }
        assert!(noncommuting, "S_3 is non-Abelian");
        assert_eq!(g.labels(), ["123", "132", "213", "231", "312", "321"]);
    }

    #[test]
    fn heisenberg_3_center_has_order_3() {
        // Oracle: brute-force center computation over all 27 elements.
        let g = FiniteGroup::heisenberg(3).unwrap();
        assert_eq!(g.order(), 27);
        let center: Vec<usize> = (0..27)
            .filter(|&z| (0..27).all(|t| g.mul(z, t) == g.mul(t, z)))
            .collect();
        assert_eq!(center.len(), 3);
        assert!(center.contains(&g.identity()));
    }

    #[test]
    fn quaternion_relations() {
        let g = FiniteGroup::quaternion8();
        let at = |l: &str| g.element_by_label(l).unwrap();
        assert_eq!(g.mul(at("i"), at("j")), at("k"));
        assert_eq!(g.mul(at("j"), at("i")), at("-k"));
        assert_eq!(g.mul(at("i"), at("i")), at("-1"));
        assert_eq!(g.element_order(at("-1")), 2);
        for l in ["i", "-i", "j", "-j", "k", "-k"] {
            assert_eq!(g.element_order(at(l)), 4);
        }
    }

    #[test]
    fn product_c2_c3_is_cyclic_6() {
        // Oracle: search all 6 elements for a generator of order 6.
        let g2 = FiniteGroup::cyclic(2).unwrap();
        let g3 = FiniteGroup::cyclic(3).unwrap();
        let p = FiniteGroup::direct_product(&g2, &g3).unwrap();
        assert_eq!(p.order(), 6);
        assert!((0..6).any(|t| p.element_order(t) == 6));
        assert_group_invariants(&p);
    }

    #[test]
    fn product_with_trivial_is_relabeling() {
        let e = FiniteGroup::cyclic(1).unwrap();
        let g = FiniteGroup::symmetric(3).unwrap();
        let p = FiniteGroup::direct_product(&e, &g).unwrap();
        for s in 0..6 {
            for t in 0..6 {
                assert_eq!(p.mul(s, t), g.mul(s, t));
            }
        }
    }

    #[test]
    fn product_c2_s3_non_abelian_order_12() {
        let g2 = FiniteGroup::cyclic(2).unwrap();
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let p = FiniteGroup::direct_product(&g2, &s3).unwrap();
        assert_eq!(p.order(), 12);
        let (s, t) = p.noncommuting_pair().expect("C2 x S3 is non-Abelian");
        assert_ne!(p.mul(s, t), p.mul(t, s));
    }

    #[test]
    fn product_respects_order_cap() {
        let g = FiniteGroup::cyclic(80).unwrap();
        let err = FiniteGroup::direct_product(&g, &g).unwrap_err();
        assert!(matches!(
            err,
            Error::SizeLimit {
                order: 6400,
                max: 5000
            }
        ));
        FiniteGroup::direct_product_with_limit(&g, &g, 10_000).unwrap();
    }

    #[test]
    fn from_table_rejects_non_latin() {
        // one edited entry duplicates a value in its row
        let mut t = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        t[1][2] = 2;
        let err = FiniteGroup::from_table(t).unwrap_err();
        match err {
            Error::GroupValidation { axiom, .. } => assert_eq!(axiom, "closure (Latin square)"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn latin_square_with_broken_associativity_is_caught_with_witness() {
        // Start from Z_6 and swap the intercalate {(1,1),(1,4),(4,1),(4,4)}.
        // The result is still a Latin square with identity row/column intact,
        // but no group of order 6 has this table, so associativity must fail.
        let n = 6;
        let mut t: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        assert_eq!((t[1][1], t[4][4], t[1][4], t[4][1]), (2, 2, 5, 5));
        t[1][1] = 5;
        t[4][4] = 5;
        t[1][4] = 2;
        t[4][1] = 2;

        // independent brute-force witness search
        let mut brute_witness = None;
        'outer: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if t[t[a][b]][c] != t[a][t[b][c]] {
                        brute_witness = Some((a, b, c));
                        break 'outer;
                    }
                }
            }
        }
        assert!(
            brute_witness.is_some(),
            "mutated table must be non-associative"
        );

        let report = validate_table(&t);
        assert!(!report.all_passed());
        let assoc = report
            .checks
            .iter()
            .find(|c| c.axiom == "associativity")
            .unwrap();
        assert!(!assoc.passed);
        assert!(assoc.witness.is_some());
        // closure and identity still hold for this construction
        assert!(
            report
                .checks
                .iter()
                .find(|c| c.axiom == "closure (Latin square)")
                .unwrap()
                .passed
        );
        assert!(
            report
                .checks
                .iter()
                .find(|c| c.axiom == "identity")
                .unwrap()
                .passed
        );
    }

    #[test]
    fn valid_s3_table_round_trips_through_from_table() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let rebuilt = FiniteGroup::from_table(g.table.clone()).unwrap();
        assert!(rebuilt.same_group(&g));
        assert!(rebuilt.validate().all_passed());
    }

    #[test]
    fn spec_build_round_trip() {
        let spec: GroupSpec = serde_json::from_str(
            r#"{"kind":"product","factors":[{"kind":"cyclic","n":2},{"kind":"symmetric","n":3}]}"#,
        )
        .unwrap();
        let g = spec.build().unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.spec(), &spec);
        let json = serde_json::to_string(&spec).unwrap();
        let spec2: GroupSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(spec, spec2);
    }

    #[test]
    fn dihedral_ordering_and_labels() {
        let g = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(
            g.labels(),
            ["r0", "r1", "r2", "r3", "r0s", "r1s", "r2s", "r3s"]
        );
        // s r s = r^{-1}
        let r = 1;
        let s = 4;
        assert_eq!(g.mul(g.mul(s, r), s), g.inv(r));
    }
}
