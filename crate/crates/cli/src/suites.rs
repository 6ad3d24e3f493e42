//! The verification suites behind `ncf verify`.
//!
//! Each suite runs a named family of identities over the standard group
//! catalog with a seeded generator and returns one check entry per trial.
//! Tolerances are fixed here, in code: the suites are the executable form of
//! the project's acceptance criteria. The `axb` suite mixes hard checks (the
//! exact scalar modular laws, net monotonicity) with soft, report-only
//! quadrature evidence.

use ncf_core::abelian::{crosscheck_inversion, dual_group, gelfand_transform};
use ncf_core::axb::{
    associativity_defect, build_grid, modular_flow_check, modular_homomorphism_residual,
    pd_positivity_check, q_left_regular, smooth_test_vectors, windowed_integral_net, AxbParams,
    GridFn, Window,
};
use ncf_core::catalog::{abelian_catalog, group_name, verification_groups};
use ncf_core::conv::{
    conjugate_by_j, left_regular, modular_conjugation, right_regular, translate_v,
};
use ncf_core::fourier::{
    fourier_coefficients_direct, fourier_from_operator, fourier_transform, gns_map, invert,
    plancherel_value, slice_functional, PositiveFunctional,
};
use ncf_core::posdef::{
    is_positive_definite, naimark_dilate, pd_structure_report, positivity_equivalence,
    random_dilated_pd, random_gram_pd, scalar_positivity_routes,
};
use ncf_core::{CMatrix, OpValFn};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::report::{derive_seed, CheckResult};

pub const SUITES: &[&str] = &["core", "inversion", "posdef", "abelian", "axb", "all"];

pub fn run_suite(name: &str, seed: u64) -> Option<Vec<CheckResult>> {
    match name {
        "core" => Some(suite_core(seed)),
        "inversion" => Some(suite_inversion(seed)),
        "posdef" => Some(suite_posdef(seed)),
        "abelian" => Some(suite_abelian(seed)),
        "axb" => Some(suite_axb(seed)),
        "all" => {
            let mut checks = suite_core(seed);
            checks.extend(suite_inversion(seed));
            checks.extend(suite_posdef(seed));
            checks.extend(suite_abelian(seed));
            checks.extend(suite_axb(seed));
            Some(checks)
        }
        _ => None,
    }
}

/// Algebra, operator, and GNS plumbing: group axioms, *-algebra laws, the
/// regular representations, the modular conjugation, the Plancherel weight,
/// and the GNS pairing.
pub fn suite_core(seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(seed, "core"));
    let mut out = Vec::new();

    for g in verification_groups() {
        let name = group_name(&g);
        out.push(CheckResult::hard(
            format!("core/axioms/{name}"),
            g.validate().all_passed(),
            0.0,
        ));

        for k in [1usize, 2, 3] {
            let f = OpValFn::random(g.clone(), k, &mut rng);
            let h = OpValFn::random(g.clone(), k, &mut rng);
            let w = OpValFn::random(g.clone(), k, &mut rng);
            let scale = 1.0 + f.frobenius_norm() * h.frobenius_norm() * w.frobenius_norm();

            let assoc = f
                .convolve(&h)
                .unwrap()
                .convolve(&w)
                .unwrap()
                .max_residual(&f.convolve(&h.convolve(&w).unwrap()).unwrap())
                / scale;
            out.push(CheckResult::hard(
                format!("core/convolution-associativity/{name}/k{k}"),
                assoc <= 1e-12,
                assoc,
            ));

            let star = f
                .convolve(&h)
                .unwrap()
                .involute()
                .max_residual(&h.involute().convolve(&f.involute()).unwrap())
                / scale;
            out.push(CheckResult::hard(
                format!("core/involution-antihomomorphism/{name}/k{k}"),
                star <= 1e-12,
                star,
            ));

            let mult = left_regular(&f.convolve(&h).unwrap())
                .sub(&left_regular(&f).matmul(&left_regular(&h)))
                .frobenius_norm()
                / scale;
            out.push(CheckResult::hard(
                format!("core/left-regular-multiplicative/{name}/k{k}"),
                mult <= 1e-12,
                mult,
            ));
        }

        // scalar-only identities
        let f = OpValFn::random(g.clone(), 1, &mut rng);
        let rho = right_regular(&f).unwrap();
        let jlj = conjugate_by_j(&left_regular(&modular_conjugation(&f).unwrap())).unwrap();
        let rho_resid = rho.sub(&jlj).frobenius_norm() / (1.0 + f.frobenius_norm());
        out.push(CheckResult::hard(
            format!("core/rho-equals-JlambdaJfJ/{name}"),
            rho_resid <= 1e-12,
            rho_resid,
        ));

        let s = rng.random_range(0..g.order());
        let t = rng.random_range(0..g.order());
        let vlaw = translate_v(&g, s, 1)
            .matmul(&translate_v(&g, t, 1))
            .sub(&translate_v(&g, g.mul(s, t), 1))
            .frobenius_norm();
        out.push(CheckResult::hard(
            format!("core/translation-law/{name}"),
            vlaw == 0.0,
            vlaw,
        ));

        // Plancherel weight and GNS pairing (operator route), 100 instances
        for i in 0..100 {
            let xi = OpValFn::random(g.clone(), 1, &mut rng);
            let eta = OpValFn::random(g.clone(), 1, &mut rng);
            let pair_scale = 1.0 + xi.frobenius_norm() * eta.frobenius_norm();
            let op = left_regular(&xi).adjoint().matmul(&left_regular(&eta));
            let phi = plancherel_value(&fourier_from_operator(&op).unwrap())[(0, 0)];
            let ip = xi.inner_product(&eta).unwrap();
            let resid = (phi - ip).norm() / pair_scale;
            out.push(CheckResult::hard(
                format!("core/plancherel-inner-product/{name}/{i:03}"),
                resid <= 1e-12,
                resid,
            ));

            let a = OpValFn::random(g.clone(), 2, &mut rng);
            let b = OpValFn::random(g.clone(), 2, &mut rng);
            let gns_scale = 1.0 + a.frobenius_norm() * b.frobenius_norm();
            let lhs = gns_map(&a).pairing(&gns_map(&b));
            let rhs = plancherel_value(&a.involute().convolve(&b).unwrap());
            let resid = lhs.sub(&rhs).frobenius_norm() / gns_scale;
            out.push(CheckResult::hard(
                format!("core/gns-pairing/{name}/{i:03}"),
                resid <= 1e-12,
                resid,
            ));
        }

        // slice compatibility over the separating family
        let a = OpValFn::random(g.clone(), 2, &mut rng);
        let ahat = fourier_transform(&a);
        let mut worst = 0.0f64;
        for theta in PositiveFunctional::spanning_set(2) {
            let sliced_hat = fourier_transform(&slice_functional(&a, &theta).unwrap());
            for t in 0..g.order() {
                let d = (theta.apply(ahat.coeff(t)) - sliced_hat.scalar_value(t)).norm();
                worst = worst.max(d / (1.0 + a.frobenius_norm()));
            }
        }
        out.push(CheckResult::hard(
            format!("core/slice-compatibility/{name}"),
            worst <= 1e-12,
            worst,
        ));
    }

    // linear algebra substrate
    for n in [8usize, 32] {
        let m = CMatrix::random_hermitian(n, &mut rng);
        let (eigs, u) = m.hermitian_eig().unwrap();
        let mut d = CMatrix::zeros(n, n);
        for (i, &l) in eigs.iter().enumerate() {
            d[(i, i)] = Complex64::new(l, 0.0);
        }
        let scale = 1.0 + m.frobenius_norm();
        let rec = u.matmul(&d).matmul(&u.adjoint()).sub(&m).frobenius_norm() / scale;
        out.push(CheckResult::hard(
            format!("core/eig-reconstruction/n{n}"),
            rec <= 1e-10,
            rec,
        ));
        let unit = u
            .adjoint()
            .matmul(&u)
            .sub(&CMatrix::identity(n))
            .frobenius_norm()
            / scale;
        out.push(CheckResult::hard(
            format!("core/eig-unitarity/n{n}"),
            unit <= 1e-10,
            unit,
        ));

        let p = CMatrix::random_psd(n, &mut rng);
        let r = p.psd_sqrt().unwrap();
        let sq = r.matmul(&r).sub(&p).frobenius_norm() / (1.0 + p.frobenius_norm());
        out.push(CheckResult::hard(
            format!("core/psd-sqrt/n{n}"),
            sq <= 1e-9,
            sq,
        ));
    }

    out
}

/// The inversion theorem and the transform isomorphism laws.
pub fn suite_inversion(seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(seed, "inversion"));
    let mut out = Vec::new();

    for g in verification_groups() {
        let name = group_name(&g);
        for k in [1usize, 2, 3] {
            for i in 0..200 {
                let a = OpValFn::random(g.clone(), k, &mut rng);
                let ahat = fourier_transform(&a);
                let (_, x) = invert(&ahat);
                let lam = left_regular(&a);
                let resid = x.sub(&lam).frobenius_norm() / (1.0 + lam.frobenius_norm());
                out.push(CheckResult::hard(
                    format!("inversion/round-trip/{name}/k{k}/{i:03}"),
                    resid <= 1e-10,
                    resid,
                ));
            }
        }

        // transform equals the coefficient fast path, exactly
        let f = OpValFn::random(g.clone(), 3, &mut rng);
        let direct = fourier_coefficients_direct(&f);
        let resid = fourier_transform(&f).max_residual(&direct);
        out.push(CheckResult::hard(
            format!("inversion/transform-identity/{name}"),
            resid <= 1e-14,
            resid,
        ));

        // isomorphism laws on scalar pairs
        for i in 0..100 {
            let x = OpValFn::random(g.clone(), 1, &mut rng);
            let y = OpValFn::random(g.clone(), 1, &mut rng);
            let scale = 1.0 + x.frobenius_norm() * y.frobenius_norm();
            let product_hat =
                fourier_from_operator(&left_regular(&x).matmul(&left_regular(&y))).unwrap();
            let conv_hat = fourier_transform(&x)
                .convolve(&fourier_transform(&y))
                .unwrap();
            let prod = product_hat.max_residual(&conv_hat) / scale;
            out.push(CheckResult::hard(
                format!("inversion/product-rule/{name}/{i:03}"),
                prod <= 1e-12,
                prod,
            ));

            let star_hat = fourier_from_operator(&left_regular(&x).adjoint()).unwrap();
            let star = star_hat.max_residual(&fourier_transform(&x).involute()) / scale;
            out.push(CheckResult::hard(
                format!("inversion/star-rule/{name}/{i:03}"),
                star <= 1e-12,
                star,
            ));
        }
    }
    out
}

/// Positive definiteness: the operator-positivity equivalence, the scalar
/// J/rho bridge, and Naimark dilation round trips.
pub fn suite_posdef(seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(seed, "posdef"));
    let mut out = Vec::new();

    for g in verification_groups() {
        let name = group_name(&g);
        for k in [1usize, 2] {
            for i in 0..500 {
                // 400 generic Hermitian-symmetrized draws, 100 PSD builds
                let f = if i < 400 {
                    OpValFn::random_hermitian_symmetrized(g.clone(), k, &mut rng)
                } else {
                    random_gram_pd(&g, k, &mut rng)
                };
                let eq = positivity_equivalence(&f);
                let gap = (eq.pd_min_eig - eq.op_min_eig).abs();
                out.push(CheckResult::hard(
                    format!("posdef/equivalence/{name}/k{k}/{i:03}"),
                    eq.agree,
                    gap,
                ));
                if k == 1 {
                    let (pd, j_psd, rho_psd) = scalar_positivity_routes(&f).unwrap();
                    out.push(CheckResult::hard(
                        format!("posdef/scalar-bridge/{name}/{i:03}"),
                        pd == j_psd && pd == rho_psd,
                        0.0,
                    ));
                }
            }
        }

        // dilations: 50 from random representations, 50 from Gram builds
        for i in 0..100 {
            let k = if i % 2 == 0 { 1 } else { 2 };
            let f = if i < 50 {
                random_dilated_pd(&g, k, i % 3, &mut rng)
            } else {
                random_gram_pd(&g, k, &mut rng)
            };
            let (pd, min_eig) = is_positive_definite(&f);
            if !pd {
                out.push(CheckResult::hard(
                    format!("posdef/dilation/{name}/{i:03}"),
                    false,
                    min_eig.abs(),
                ));
                continue;
            }
            let d = match naimark_dilate(&f, 1e-10) {
                Ok(d) => d,
                Err(e) => {
                    out.push(CheckResult::hard(
                        format!("posdef/dilation/{name}/{i:03} ({e})"),
                        false,
                        1.0,
                    ));
                    continue;
                }
            };
            let scale = 1.0 + f.coeff(0).frobenius_norm();
            let rec_ok = d.reconstruction_residual() <= 1e-8 * scale;
            let unit_ok = d.max_unitarity_defect() <= 1e-10 * (1.0 + d.dim() as f64);
            let mut law = 0.0f64;
            for _ in 0..8 {
                let s = rng.random_range(0..g.order());
                let t = rng.random_range(0..g.order());
                law = law.max(d.u(s).matmul(d.u(t)).sub(d.u(g.mul(s, t))).frobenius_norm());
                law = law.max(d.u(s).adjoint().sub(d.u(g.inv(s))).frobenius_norm());
            }
            let law_ok = law <= 1e-9 * (1.0 + d.dim() as f64);
            let structure_ok = pd_structure_report(&f)
                .map(|r| r.all_passed())
                .unwrap_or(false);
            out.push(CheckResult::hard(
                format!("posdef/dilation/{name}/{i:03}"),
                rec_ok && unit_ok && law_ok && structure_ok,
                d.reconstruction_residual() / scale,
            ));
        }
    }
    out
}

/// The Abelian cross-check: dual group invariants, classical DFT oracle on
/// cyclic groups, and the two inversion identities on the whole catalog.
pub fn suite_abelian(seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(seed, "abelian"));
    let mut out = Vec::new();

    for g in abelian_catalog(64) {
        let name = group_name(&g);
        let dual = dual_group(&g).unwrap();
        let n = g.order();

        // homomorphism and orthogonality residuals
        let mut hom = 0.0f64;
        for m in 0..n {
            for s in 0..n {
                for t in 0..n {
                    let d = (dual.character(m, g.mul(s, t))
                        - dual.character(m, s) * dual.character(m, t))
                    .norm();
                    hom = hom.max(d);
                }
            }
        }
        out.push(CheckResult::hard(
            format!("abelian/dual-homomorphism/{name}"),
            hom <= 1e-12,
            hom,
        ));

        let mut orth = 0.0f64;
        for m1 in 0..n {
            for m2 in 0..n {
                let sum: Complex64 = (0..n)
                    .map(|t| dual.character(m1, t) * dual.character(m2, t).conj())
                    .sum();
                let expect = if m1 == m2 { n as f64 } else { 0.0 };
                orth = orth.max((sum - Complex64::new(expect, 0.0)).norm() / n as f64);
            }
        }
        out.push(CheckResult::hard(
            format!("abelian/dual-orthogonality/{name}"),
            orth <= 1e-12,
            orth,
        ));

        let k = if g.order() <= 16 { 2 } else { 1 };
        let a = OpValFn::random(g.clone(), k, &mut rng);
        let report = crosscheck_inversion(&a).unwrap();
        out.push(CheckResult::hard(
            format!("abelian/crosscheck/{name}"),
            report.max_residual() <= 1e-10,
            report.max_residual(),
        ));

        // dual-measure normalization: 1/|G| sum_chi A(chi) = a(e)
        let vals = gelfand_transform(&a, &dual).unwrap();
        let mut acc = CMatrix::zeros(k, k);
        for v in &vals {
            acc = acc.add(v);
        }
        let norm_resid = acc
            .scale_re(1.0 / n as f64)
            .sub(a.coeff(0))
            .frobenius_norm()
            / (1.0 + a.frobenius_norm());
        out.push(CheckResult::hard(
            format!("abelian/dual-normalization/{name}"),
            norm_resid <= 1e-12,
            norm_resid,
        ));
    }

    // independent classical DFT oracle on cyclic groups
    for n in [2usize, 3, 4, 6, 8, 12] {
        let g = ncf_core::FiniteGroup::cyclic(n).unwrap();
        let dual = dual_group(&g).unwrap();
        let x = OpValFn::random(g.clone(), 1, &mut rng);
        let vals = gelfand_transform(&x, &dual).unwrap();
        let mut worst = 0.0f64;
        for m in 0..n {
            let mut oracle = Complex64::new(0.0, 0.0);
            for t in 0..n {
                let ang = -std::f64::consts::TAU * (m * t) as f64 / n as f64;
                oracle += x.scalar_value(t) * Complex64::new(ang.cos(), ang.sin());
            }
            worst = worst.max((vals[m][(0, 0)] - oracle).norm());
        }
        out.push(CheckResult::hard(
            format!("abelian/dft-oracle/C{n}"),
            worst <= 1e-12,
            worst,
        ));
    }
    out
}

/// The quadrature suite. Hard: exact scalar modular laws and net
/// monotonicity. Soft: J-conjugation deviation and refinement, convolution
/// self-consistency, and the two approximate positivity certificates.
pub fn suite_axb(_seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let default_grid = build_grid(AxbParams::default()).unwrap();
    let suite_grid = build_grid(AxbParams {
        m_a: 17,
        m_b: 17,
        ..AxbParams::default()
    })
    .unwrap();

    // hard exact laws
    let hom = modular_homomorphism_residual(&default_grid, 7);
    out.push(CheckResult::hard(
        "axb/modular-homomorphism",
        hom <= 1e-14,
        hom,
    ));

    let t = default_grid.nearest((2.0, 0.0)).unwrap();
    let flow = modular_flow_check(&default_grid, t, Complex64::new(0.3, -0.8));
    out.push(CheckResult::hard(
        "axb/sigma-half-scalar",
        flow.sigma_half_residual <= 1e-14,
        flow.sigma_half_residual,
    ));
    out.push(CheckResult::hard(
        "axb/sigma-exponent-law",
        flow.exponent_law_residual <= 1e-14,
        flow.exponent_law_residual,
    ));

    // hard: monotone windowed nets for nonnegative integrands
    let windows: Vec<Window> = (1..=4)
        .map(|i| Window {
            a_lo: 0.25,
            a_hi: 4.0,
            b_lo: -(i as f64),
            b_hi: i as f64,
        })
        .collect();
    let decay = GridFn::from_fn(default_grid.clone(), |a, b| {
        Complex64::new((-(a.ln().powi(2)) - b * b).exp(), 0.0)
    });
    let net = windowed_integral_net(&decay, &windows, 1e-3).unwrap();
    out.push(CheckResult::hard("axb/net-monotone", net.monotone, 0.0));
    out.push(CheckResult::soft(
        "axb/net-integrable-gaussian",
        net.integrable,
        net.final_increment,
    ));
    let flat = GridFn::from_fn(default_grid.clone(), |_, _| Complex64::new(1.0, 0.0));
    let net_flat = windowed_integral_net(&flat, &windows, 1e-3).unwrap();
    out.push(CheckResult::hard(
        "axb/net-monotone-flat",
        net_flat.monotone,
        0.0,
    ));
    out.push(CheckResult::soft(
        "axb/net-flat-not-integrable",
        !net_flat.integrable,
        net_flat.final_increment,
    ));

    // soft: J-conjugation identity at the default grid, improving under
    // refinement
    let dev = modular_flow_check(&default_grid, t, Complex64::new(0.0, 0.5))
        .max_operator_deviation()
        .unwrap();
    out.push(CheckResult::soft(
        "axb/j-conjugation-deviation",
        dev <= 0.15,
        dev,
    ));

    let fine_grid = build_grid(default_grid.params().refined()).unwrap();
    let tf = fine_grid.nearest((2.0, 0.0)).unwrap();
    let fine_dev = modular_flow_check(&fine_grid, tf, Complex64::new(0.0, 0.5))
        .max_operator_deviation()
        .unwrap();
    let ratio = dev / fine_dev;
    out.push(CheckResult::soft(
        "axb/j-conjugation-refinement-ratio",
        ratio >= 1.5,
        ratio,
    ));

    // soft: associativity defect shrinks under refinement
    let mk = |grid: &std::sync::Arc<ncf_core::axb::DiscretizedGroup>| {
        (
            GridFn::gaussian(grid.clone(), 0.0, 0.2, 0.5),
            GridFn::gaussian(grid.clone(), 0.15, -0.3, 0.55),
            GridFn::gaussian(grid.clone(), -0.2, 0.1, 0.5),
        )
    };
    let fine_suite = build_grid(suite_grid.params().refined()).unwrap();
    let (f1, g1, h1) = mk(&suite_grid);
    let (f2, g2, h2) = mk(&fine_suite);
    let d_coarse = associativity_defect(&f1, &g1, &h1);
    let d_fine = associativity_defect(&f2, &g2, &h2);
    let assoc_ratio = d_coarse / d_fine;
    out.push(CheckResult::soft(
        "axb/associativity-refinement-ratio",
        assoc_ratio >= 1.5,
        assoc_ratio,
    ));

    // soft: a mass-one bump acts like the identity on smooth vectors
    let bump = GridFn::gaussian(default_grid.clone(), 0.0, 0.0, 0.1);
    let bump = bump.scale(1.0 / bump.integral().re);
    let (op, support) = q_left_regular(&bump);
    out.push(CheckResult::soft(
        "axb/bump-support-admissible",
        !support.truncation_warning,
        support.interior_mass_fraction,
    ));
    let mut worst = 0.0f64;
    for xi in smooth_test_vectors(&default_grid) {
        let v = CMatrix::from_fn(default_grid.len(), 1, |i, _| xi.value(i));
        let applied = op.matmul(&v);
        let mut num = 0.0;
        for i in 0..default_grid.len() {
            num += default_grid.weight(i) * (applied[(i, 0)] - xi.value(i)).norm_sqr();
        }
        worst = worst.max(num.sqrt() / xi.norm());
    }
    out.push(CheckResult::soft(
        "axb/bump-identity-deviation",
        worst <= 0.1,
        worst,
    ));

    // soft: the two positivity certificates agree on the documented examples
    let xi = GridFn::gaussian(suite_grid.clone(), 0.0, 0.0, 0.35);
    let pos = xi.involute().convolve(&xi);
    let report = pd_positivity_check(&pos, 200);
    out.push(CheckResult::soft(
        "axb/pd-certificates-agree-positive",
        report.agree && report.operator_positive,
        report.operator_min_eig,
    ));
    let mut bad = pos.clone();
    let spike = suite_grid.nearest((1.3, 0.8)).unwrap();
    let peak = pos.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
    bad.set_value(spike, bad.value(spike) + Complex64::new(30.0 * peak, 0.0));
    let report = pd_positivity_check(&bad, 200);
    out.push(CheckResult::soft(
        "axb/pd-certificates-agree-perturbed",
        report.agree && !report.operator_positive,
        report.operator_min_eig,
    ));
    let report = pd_positivity_check(&GridFn::zero(suite_grid.clone()), 200);
    out.push(CheckResult::soft(
        "axb/pd-certificates-agree-zero",
        report.agree && report.operator_positive,
        report.operator_min_eig,
    ));

    // soft: the spurious negative tail of the positive example's operator
    // certificate is quadrature error and shrinks under refinement
    let spurious = |grid: &std::sync::Arc<ncf_core::axb::DiscretizedGroup>| {
        let xi = GridFn::gaussian(grid.clone(), 0.0, 0.0, 0.35);
        let f = xi.involute().convolve(&xi);
        let report = pd_positivity_check(&f, 200);
        (-report.operator_min_eig).max(0.0) / report.operator_scale
    };
    let pd_ratio = spurious(&suite_grid) / spurious(&fine_suite);
    out.push(CheckResult::soft(
        "axb/pd-certificate-refinement-ratio",
        pd_ratio >= 1.5,
        pd_ratio,
    ));

    out
}
