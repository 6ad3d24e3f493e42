//! Cross-module identities exercised over the whole group catalog with
//! seeded randomness. The acceptance suite in the CLI crate runs the same
//! identities at full trial counts; these runs keep the library honest on
//! its own.

use ncf_core::catalog;
use ncf_core::conv::{left_regular, translate_v};
use ncf_core::fourier::{
    fourier_from_operator, fourier_transform, gns_map, invert, plancherel_value, slice_functional,
    PositiveFunctional,
};
use ncf_core::posdef::{
    is_positive_definite, naimark_dilate, pd_structure_report, positivity_equivalence,
};
use ncf_core::{BlockOperator, OpValFn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

#[test]
fn inversion_reassembles_left_regular_across_catalog() {
    let mut rng = ChaCha12Rng::seed_from_u64(101);
    for g in catalog::verification_groups() {
        for k in [1usize, 2, 3] {
            for _ in 0..20 {
                let a = OpValFn::random(g.clone(), k, &mut rng);
                let ahat = fourier_transform(&a);
                let (coeffs, x) = invert(&ahat);
                let lam = left_regular(&a);
                let resid = x.sub(&lam).frobenius_norm();
                assert!(
                    resid <= 1e-10 * (1.0 + lam.frobenius_norm()),
                    "{} k={k}: residual {resid:.3e}",
                    catalog::group_name(&g)
                );
                assert!(fourier_transform(&coeffs).max_residual(&ahat) == 0.0);
            }
        }
    }
}

#[test]
fn transform_is_a_star_isomorphism_across_catalog() {
    let mut rng = ChaCha12Rng::seed_from_u64(102);
    for g in catalog::verification_groups() {
        for _ in 0..10 {
            let x = OpValFn::random(g.clone(), 1, &mut rng);
            let y = OpValFn::random(g.clone(), 1, &mut rng);
            let scale = 1.0 + x.frobenius_norm() * y.frobenius_norm();

            let product_hat =
                fourier_from_operator(&left_regular(&x).matmul(&left_regular(&y))).unwrap();
            let conv_hat = fourier_transform(&x)
                .convolve(&fourier_transform(&y))
                .unwrap();
            assert!(product_hat.max_residual(&conv_hat) <= 1e-12 * scale);

            let star_hat = fourier_from_operator(&left_regular(&x).adjoint()).unwrap();
            assert!(star_hat.max_residual(&fourier_transform(&x).involute()) <= 1e-12 * scale);
        }
    }
}

#[test]
fn plancherel_and_gns_identities_across_catalog() {
    let mut rng = ChaCha12Rng::seed_from_u64(103);
    for g in catalog::verification_groups() {
        // phi(lambda(xi)* lambda(eta)) = <xi, eta> through the operator route
        for _ in 0..10 {
            let xi = OpValFn::random(g.clone(), 1, &mut rng);
            let eta = OpValFn::random(g.clone(), 1, &mut rng);
            let op = left_regular(&xi).adjoint().matmul(&left_regular(&eta));
            let phi = plancherel_value(&fourier_from_operator(&op).unwrap())[(0, 0)];
            let ip = xi.inner_product(&eta).unwrap();
            let scale = 1.0 + xi.frobenius_norm() * eta.frobenius_norm();
            assert!((phi - ip).norm() <= 1e-12 * scale);
        }
        // (id x Lambda)(a)* (id x Lambda)(b) = (id x phi)(a* b) for k = 2
        for _ in 0..10 {
            let a = OpValFn::random(g.clone(), 2, &mut rng);
            let b = OpValFn::random(g.clone(), 2, &mut rng);
            let lhs = gns_map(&a).pairing(&gns_map(&b));
            let rhs = plancherel_value(&a.involute().convolve(&b).unwrap());
            let scale = 1.0 + a.frobenius_norm() * b.frobenius_norm();
            assert!(lhs.sub(&rhs).frobenius_norm() <= 1e-12 * scale);
        }
    }
}

#[test]
fn slice_compatibility_with_spanning_functionals() {
    // theta(a^(t)) = (phi applied to lambda_{t^-1} (theta x id)(a)) for the
    // separating family of rank-one functionals plus random PSD densities.
    let mut rng = ChaCha12Rng::seed_from_u64(104);
    for g in catalog::verification_groups() {
        let k = 2;
        let a = OpValFn::random(g.clone(), k, &mut rng);
        let ahat = fourier_transform(&a);
        let mut thetas = PositiveFunctional::spanning_set(k);
        for _ in 0..10 {
            thetas.push(PositiveFunctional::random(k, &mut rng));
        }
        for theta in &thetas {
            let sliced = slice_functional(&a, theta).unwrap();
            let sliced_hat = fourier_transform(&sliced);
            for t in 0..g.order() {
                let lhs = theta.apply(ahat.coeff(t));
                let rhs = sliced_hat.scalar_value(t);
                assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + a.frobenius_norm()));
            }
        }
    }
}

#[test]
fn gns_factorization_through_translations_matches_transform() {
    let mut rng = ChaCha12Rng::seed_from_u64(105);
    let groups = catalog::verification_groups();
    let g = &groups[1]; // S_3
    let k = 2;
    let b = OpValFn::random(g.clone(), k, &mut rng);
    let c = OpValFn::random(g.clone(), k, &mut rng);
    let a = b.involute().convolve(&c).unwrap();
    let ahat = fourier_transform(&a);
    // apply V_t as an explicit block operator to the GNS matrix
    let lb = gns_map(&b);
    let lc = gns_map(&c);
    for t in 0..g.order() {
        let vt = translate_v(g, t, k);
        let translated = vt.apply(lc.matrix());
        let coeff = lb.matrix().adjoint().matmul(&translated);
        let scale = 1.0 + b.frobenius_norm() * c.frobenius_norm();
        assert!(coeff.sub(ahat.coeff(t)).frobenius_norm() <= 1e-10 * scale);
    }
}

#[test]
fn positivity_and_dilation_pipeline() {
    let mut rng = ChaCha12Rng::seed_from_u64(106);
    for g in catalog::verification_groups() {
        for k in [1usize, 2] {
            for _ in 0..10 {
                let f = OpValFn::random_hermitian_symmetrized(g.clone(), k, &mut rng);
                let eq = positivity_equivalence(&f);
                assert!(eq.agree, "{}: {eq:?}", catalog::group_name(&g));
            }
            let w = OpValFn::random(g.clone(), k, &mut rng);
            let f = w.involute().convolve(&w).unwrap();
            let (pd, _) = is_positive_definite(&f);
            assert!(pd);
            assert!(pd_structure_report(&f).unwrap().all_passed());
            let d = naimark_dilate(&f, 1e-10).unwrap();
            let scale = 1.0 + f.coeff(0).frobenius_norm();
            assert!(d.reconstruction_residual() <= 1e-8 * scale);
            // spot-check the representation law
            for _ in 0..6 {
                let s = rng.random_range(0..g.order());
                let t = rng.random_range(0..g.order());
                let lhs = d.u(s).matmul(d.u(t));
                let rhs = d.u(g.mul(s, t));
                assert!(lhs.sub(rhs).frobenius_norm() <= 1e-9 * (1.0 + d.dim() as f64));
            }
        }
    }
}

#[test]
fn block_operator_positivity_matches_coefficient_positivity() {
    // lambda_A(f) >= 0 certificates agree with the Gram certificate even for
    // borderline inputs scaled near the tolerance floor
    let mut rng = ChaCha12Rng::seed_from_u64(107);
    let groups = catalog::verification_groups();
    let g = &groups[2]; // D_4
    for _ in 0..20 {
        let f = OpValFn::random_hermitian_symmetrized(g.clone(), 2, &mut rng).scale_re(1e-6);
        let eq = positivity_equivalence(&f);
        assert!(eq.agree, "{eq:?}");
    }
    // explicit operator cross-check on one PSD instance
    let w = OpValFn::random(g.clone(), 2, &mut rng);
    let f = w.involute().convolve(&w).unwrap();
    let op = left_regular(&f);
    let expected = left_regular(&w).adjoint().matmul(&left_regular(&w));
    assert!(op.sub(&expected).frobenius_norm() <= 1e-12 * (1.0 + expected.frobenius_norm()));
    let id = BlockOperator::identity(g.clone(), 2);
    let shifted = op.add(&id);
    let report = shifted.matrix().psd_check(1e-10).unwrap();
    assert!(report.is_psd && report.min_eig >= 0.99);
}
