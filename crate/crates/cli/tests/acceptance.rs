//! Acceptance suite: every release criterion as one test that prints a
//! single pass/fail line. Run with `cargo test -p ncf-cli --test acceptance
//! -- --nocapture` to see the lines.

use std::time::Instant;

use ncf_cli::report::derive_seed;
use ncf_cli::suites;
use ncf_core::abelian::{crosscheck_inversion, dual_group, gelfand_transform};
use ncf_core::catalog::{abelian_catalog, group_name, verification_groups};
use ncf_core::conv::left_regular;
use ncf_core::fourier::{
    fourier_coefficients_direct, fourier_from_operator, fourier_transform, gns_map, invert,
    plancherel_value,
};
use ncf_core::posdef::{
    is_positive_definite, naimark_dilate, pd_structure_report, positivity_equivalence,
    random_dilated_pd, random_gram_pd, scalar_positivity_routes,
};
use ncf_core::{FiniteGroup, OpValFn};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

fn conclude(criterion: &str, passed: bool, detail: &str) {
    println!(
        "acceptance {criterion}: {} ({detail})",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "{criterion}: {detail}");
}

#[test]
fn criterion_1_inversion_theorem() {
    let start = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(1, "acceptance-inversion"));
    let mut worst = 0.0f64;
    for g in verification_groups() {
        for k in [1usize, 2, 3] {
            for _ in 0..200 {
                let a = OpValFn::random(g.clone(), k, &mut rng);
                let ahat = fourier_transform(&a);
                let (_, x) = invert(&ahat);
                let lam = left_regular(&a);
                let rel = x.sub(&lam).frobenius_norm() / (1.0 + lam.frobenius_norm());
                worst = worst.max(rel);
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    conclude(
        "criterion 1 (inversion theorem, 5 groups x k in 1..3 x 200 elements)",
        worst <= 1e-10 && elapsed <= 30.0,
        &format!("max relative residual {worst:.3e}, elapsed {elapsed:.1}s (budget 30s)"),
    );
}

#[test]
fn criterion_2_transform_star_isomorphism() {
    let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(1, "acceptance-isomorphism"));
    let mut worst_identity = 0.0f64;
    let mut worst_rules = 0.0f64;
    for g in verification_groups() {
        for k in [1usize, 2, 3] {
            let f = OpValFn::random(g.clone(), k, &mut rng);
            worst_identity = worst_identity
                .max(fourier_transform(&f).max_residual(&fourier_coefficients_direct(&f)));
        }
        for _ in 0..100 {
            let x = OpValFn::random(g.clone(), 1, &mut rng);
            let y = OpValFn::random(g.clone(), 1, &mut rng);
            let scale = 1.0 + x.frobenius_norm() * y.frobenius_norm();
            let product_hat =
                fourier_from_operator(&left_regular(&x).matmul(&left_regular(&y))).unwrap();
            let conv_hat = fourier_transform(&x)
                .convolve(&fourier_transform(&y))
                .unwrap();
            worst_rules = worst_rules.max(product_hat.max_residual(&conv_hat) / scale);
            let star_hat = fourier_from_operator(&left_regular(&x).adjoint()).unwrap();
            worst_rules =
                worst_rules.max(star_hat.max_residual(&fourier_transform(&x).involute()) / scale);
        }
    }
    conclude(
        "criterion 2 (transform *-isomorphism)",
        worst_identity <= 1e-14 && worst_rules <= 1e-12,
        &format!("identity residual {worst_identity:.3e}, product/star residual {worst_rules:.3e}"),
    );
}

#[test]
fn criterion_3_plancherel_gns_identities() {
    let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(1, "acceptance-gns"));
    let mut worst = 0.0f64;
    for g in verification_groups() {
        for _ in 0..100 {
            // phi(lambda(xi)* lambda(eta)) = <xi, eta>
            let xi = OpValFn::random(g.clone(), 1, &mut rng);
            let eta = OpValFn::random(g.clone(), 1, &mut rng);
            let op = left_regular(&xi).adjoint().matmul(&left_regular(&eta));
            let phi = plancherel_value(&fourier_from_operator(&op).unwrap())[(0, 0)];
            let ip = xi.inner_product(&eta).unwrap();
            worst =
                worst.max((phi - ip).norm() / (1.0 + xi.frobenius_norm() * eta.frobenius_norm()));

            // (id x Lambda)(a)* (id x Lambda)(b) = (id x phi)(a* b)
            let a = OpValFn::random(g.clone(), 2, &mut rng);
            let b = OpValFn::random(g.clone(), 2, &mut rng);
            let lhs = gns_map(&a).pairing(&gns_map(&b));
            let rhs = plancherel_value(&a.involute().convolve(&b).unwrap());
            worst = worst.max(
                lhs.sub(&rhs).frobenius_norm() / (1.0 + a.frobenius_norm() * b.frobenius_norm()),
            );
        }
    }
    conclude(
        "criterion 3 (Plancherel weight and GNS pairing)",
        worst <= 1e-12,
        &format!("max relative residual {worst:.3e}"),
    );
}

#[test]
fn criterion_4_positivity_equivalence() {
    let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(1, "acceptance-positivity"));
    let mut disagreements = 0usize;
    let mut trials = 0usize;
    for g in verification_groups() {
        for k in [1usize, 2] {
            for i in 0..500 {
                let f = if i < 400 {
                    OpValFn::random_hermitian_symmetrized(g.clone(), k, &mut rng)
                } else {
                    random_gram_pd(&g, k, &mut rng)
                };
                trials += 1;
                let eq = positivity_equivalence(&f);
                if !eq.agree {
                    disagreements += 1;
                }
                if k == 1 {
                    let (pd, j_psd, rho_psd) = scalar_positivity_routes(&f).unwrap();
                    if pd != j_psd || pd != rho_psd {
                        disagreements += 1;
                    }
                }
            }
        }
    }
    conclude(
        "criterion 4 (positive definite <=> positive operator, plus scalar J/rho bridge)",
        disagreements == 0,
        &format!("{trials} trials, {disagreements} disagreements"),
    );
}

#[test]
fn criterion_5_naimark_dilation() {
    let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(1, "acceptance-dilation"));
    let mut worst_rec = 0.0f64;
    let mut worst_unit = 0.0f64;
    let mut worst_law = 0.0f64;
    let mut structure_failures = 0usize;
    for g in verification_groups() {
        for i in 0..100 {
            let k = if i % 2 == 0 { 1 } else { 2 };
            let f = if i < 50 {
                random_dilated_pd(&g, k, i % 3, &mut rng)
            } else {
                random_gram_pd(&g, k, &mut rng)
            };
            let (pd, min_eig) = is_positive_definite(&f);
            assert!(
                pd,
                "{}: constructed pd function rejected ({min_eig:.3e})",
                group_name(&g)
            );
            let d = naimark_dilate(&f, 1e-10).unwrap();
            let scale = 1.0 + f.coeff(0).frobenius_norm();
            worst_rec = worst_rec.max(d.reconstruction_residual() / scale);
            worst_unit = worst_unit.max(d.max_unitarity_defect() / (1.0 + d.dim() as f64));
            for _ in 0..8 {
                let s = rng.random_range(0..g.order());
                let t = rng.random_range(0..g.order());
                let law = d
                    .u(s)
                    .matmul(d.u(t))
                    .sub(d.u(g.mul(s, t)))
                    .frobenius_norm()
                    .max(d.u(s).adjoint().sub(d.u(g.inv(s))).frobenius_norm());
                worst_law = worst_law.max(law / (1.0 + d.dim() as f64));
            }
            if !pd_structure_report(&f)
                .map(|r| r.all_passed())
                .unwrap_or(false)
            {
                structure_failures += 1;
            }
        }
    }
    conclude(
        "criterion 5 (Naimark dilation round trips)",
        worst_rec <= 1e-8 && worst_unit <= 1e-10 && worst_law <= 1e-10 && structure_failures == 0,
        &format!(
            "reconstruction {worst_rec:.3e} (tol 1e-8), unitarity {worst_unit:.3e}, \
             representation law {worst_law:.3e} (tol 1e-10), structure failures {structure_failures}"
        ),
    );
}

#[test]
fn criterion_6_abelian_bridge() {
    let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(1, "acceptance-abelian"));
    let mut worst_cross = 0.0f64;
    let mut count = 0usize;
    for g in abelian_catalog(64) {
        let k = if g.order() <= 16 { 2 } else { 1 };
        let a = OpValFn::random(g.clone(), k, &mut rng);
        let report = crosscheck_inversion(&a).unwrap();
        worst_cross = worst_cross.max(report.max_residual());
        count += 1;
    }

    // independently coded classical DFT oracle on cyclic groups
    let mut worst_oracle = 0.0f64;
    for n in [2usize, 3, 4, 6, 8, 12] {
        let g = FiniteGroup::cyclic(n).unwrap();
        let dual = dual_group(&g).unwrap();
        let x = OpValFn::random(g.clone(), 1, &mut rng);
        let vals = gelfand_transform(&x, &dual).unwrap();
        for m in 0..n {
            let mut oracle = Complex64::new(0.0, 0.0);
            for t in 0..n {
                let ang = -std::f64::consts::TAU * (m * t) as f64 / n as f64;
                oracle += x.scalar_value(t) * Complex64::new(ang.cos(), ang.sin());
            }
            worst_oracle = worst_oracle.max((vals[m][(0, 0)] - oracle).norm());
        }
    }
    conclude(
        "criterion 6 (Abelian dual-group cross-check)",
        worst_cross <= 1e-10 && worst_oracle <= 1e-12,
        &format!(
            "{count} Abelian groups of order <= 64, crosscheck residual {worst_cross:.3e}, \
             DFT oracle residual {worst_oracle:.3e}"
        ),
    );
}

#[test]
fn criterion_7_axb_quadrature() {
    let checks = suites::suite_axb(1);
    let find = |name: &str| {
        checks
            .iter()
            .find(|c| c.name == name)
            .unwrap_or_else(|| panic!("missing check {name}"))
    };
    let hard_ok = [
        "axb/modular-homomorphism",
        "axb/sigma-half-scalar",
        "axb/sigma-exponent-law",
        "axb/net-monotone",
        "axb/net-monotone-flat",
    ]
    .iter()
    .all(|n| find(n).passed());
    let jdev = find("axb/j-conjugation-deviation");
    let ratio = find("axb/j-conjugation-refinement-ratio");
    let pd_ok = [
        "axb/pd-certificates-agree-positive",
        "axb/pd-certificates-agree-perturbed",
        "axb/pd-certificates-agree-zero",
    ]
    .iter()
    .all(|n| find(n).passed());
    conclude(
        "criterion 7 (ax+b quadrature: exact scalar laws hard, operator evidence soft)",
        hard_ok && jdev.passed() && ratio.passed() && pd_ok,
        &format!(
            "J-conjugation deviation {:.3} (<= 0.15), refinement ratio {:.2} (>= 1.5), \
             exact laws at 1e-14, windowed nets monotone, pd certificates agree",
            jdev.residual, ratio.residual
        ),
    );
}

#[test]
fn criterion_8_full_verify_under_budget() {
    let start = Instant::now();
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_ncf"))
        .args(["verify", "all", "--seed", "1", "--out"])
        .arg(std::env::temp_dir().join("ncf_acceptance_all.json"))
        .output()
        .expect("spawn ncf");
    let elapsed = start.elapsed().as_secs_f64();
    let code = output.status.code();
    conclude(
        "criterion 8 (ncf verify all --seed 1 exits 0 within 60s)",
        code == Some(0) && elapsed <= 60.0,
        &format!("exit {code:?}, elapsed {elapsed:.1}s"),
    );
}
