use std::f64::consts::PI;

use landslide::tensor::sampling::{codazzi_operator, random_metric, random_pair};
use landslide::tensor::*;
use landslide::{OperatorSample, Orientation, TangentMetric};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pair_strategy() -> impl Strategy<Value = (TangentMetric, OperatorSample)> {
    any::<u64>().prop_map(|seed| random_pair(&mut ChaCha8Rng::seed_from_u64(seed), 4.0))
}

fn j_of(h: &TangentMetric) -> OperatorSample {
    complex_structure(h, Orientation::Positive).unwrap()
}

fn push_complex(h: &TangentMetric, op: &ComplexOperator) -> TangentMetric {
    push_metric(h, &op.realize(&j_of(h))).unwrap()
}

proptest! {
    #[test]
    fn complex_structure_squares_to_minus_one((h, _b) in pair_strategy()) {
        let j = j_of(&h);
        prop_assert!((j * j + OperatorSample::IDENTITY).max_abs() < 1e-14);
        prop_assert!((j.det() - 1.0).abs() < 1e-14);
        prop_assert!(push_metric(&h, &j).unwrap().max_abs_diff(&h) < 1e-13 * h.trace());
    }

    #[test]
    fn group_law((h, b) in pair_strategy(), t1 in -7.0f64..7.0, t2 in -7.0f64..7.0) {
        let j = j_of(&h);
        let (h1, _) = landslide_point(&h, &b, t1).unwrap();
        let b1 = conjugated_b(&b, &j, t1).unwrap();
        let (h12, hs12) = landslide_point(&h1, &b1, t2).unwrap();
        let (d, ds) = landslide_point(&h, &b, t1 + t2).unwrap();
        let scale = h.trace() + push_metric(&h, &b).unwrap().trace();
        prop_assert!(h12.max_abs_diff(&d) < 1e-12 * scale);
        prop_assert!(hs12.max_abs_diff(&ds) < 1e-12 * scale);
        let prod = beta(t1, &b, &j).unwrap() * beta(t2, &b, &j).unwrap();
        prop_assert!(prod.max_abs_diff(&beta(t1 + t2, &b, &j).unwrap()) < 1e-12 * b.max_abs());
    }

    #[test]
    fn beta_is_unimodular((h, b) in pair_strategy(), t in -10.0f64..10.0) {
        let j = j_of(&h);
        prop_assert!((beta(t, &b, &j).unwrap().det() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conjugated_b_relates_image_pair((h, b) in pair_strategy(), t in -4.0f64..4.0) {
        let j = j_of(&h);
        let bt = conjugated_b(&b, &j, t).unwrap();
        let (ht, hst) = landslide_point(&h, &b, t).unwrap();
        prop_assert!(bt.is_self_adjoint(&ht, 1e-10));
        prop_assert!((bt.det() - 1.0).abs() < 1e-11);
        prop_assert!((bt.trace() - b.trace()).abs() < 1e-11 * b.trace());
        let pushed = push_metric(&ht, &bt).unwrap();
        prop_assert!(pushed.max_abs_diff(&hst) < 1e-11 * (1.0 + hst.trace()));
    }

    #[test]
    fn antipode_swaps_pair((h, b) in pair_strategy()) {
        let (a, s) = landslide_point(&h, &b, PI).unwrap();
        let hs = push_metric(&h, &b).unwrap();
        prop_assert!(a.max_abs_diff(&hs) < 1e-12 * hs.trace());
        prop_assert!(s.max_abs_diff(&h) < 1e-12 * hs.trace());
        let inv = conjugated_b(&b, &j_of(&h), PI).unwrap();
        prop_assert!(inv.max_abs_diff(&b.inverse().unwrap()) < 1e-12 * b.max_abs());
    }

    #[test]
    fn center_is_invariant((h, b) in pair_strategy(), t in -7.0f64..7.0) {
        let c = center(&h, &b).unwrap();
        let (ht, hst) = landslide_point(&h, &b, t).unwrap();
        prop_assert!((ht + hst).max_abs_diff(&c) < 1e-12 * c.trace());
    }

    #[test]
    fn hopf_rotation_law((h, b) in pair_strategy(), t in -7.0f64..7.0) {
        let j = j_of(&h);
        let phi = hopf(&h, &b, &j).unwrap();
        let (ht, hst) = landslide_point(&h, &b, t).unwrap();
        let lhs = (ht.form() - hst.form()).scale(0.25);
        let rhs = phi.rotate(t).re_part;
        prop_assert!((lhs - rhs).max_abs() < 1e-12 * (h.trace() + hst.trace()));
        let c = center(&h, &b).unwrap();
        prop_assert!(phi.re_part.trace_wrt(&c).abs() < 1e-12);
        prop_assert!(phi.im_part.trace_wrt(&c).abs() < 1e-12);
    }

    #[test]
    fn hopf_of_image_rotates((h, b) in pair_strategy(), t in -3.0f64..3.0) {
        let j = j_of(&h);
        let (ht, _) = landslide_point(&h, &b, t).unwrap();
        let bt = conjugated_b(&b, &j, t).unwrap();
        let phi_t = hopf(&ht, &bt, &j_of(&ht)).unwrap();
        let expected = hopf(&h, &b, &j).unwrap().rotate(t);
        let scale = 1.0 + h.trace() * b.max_abs() * b.max_abs();
        prop_assert!((phi_t.re_part - expected.re_part).max_abs() < 1e-11 * scale);
        prop_assert!((phi_t.im_part - expected.im_part).max_abs() < 1e-11 * scale);
    }

    #[test]
    fn codazzi_identities((h, b) in pair_strategy()) {
        let j = j_of(&h);
        let jb = j * b;
        prop_assert!((jb * jb + OperatorSample::IDENTITY).max_abs() < 1e-12 * b.max_abs().powi(2));
        prop_assert!(jb.trace().abs() < 1e-12 * jb.max_abs());
        let sum = b + b.inverse().unwrap();
        prop_assert!(sum.max_abs_diff(&OperatorSample::IDENTITY.scale(b.trace())) < 1e-12 * b.max_abs());
    }

    #[test]
    fn operator_sqrt_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_metric(&mut rng, 4.0);
        let g = random_metric(&mut rng, 4.0);
        let r = operator_sqrt(&h, &g, false).unwrap();
        prop_assert!(push_metric(&h, &r.op).unwrap().max_abs_diff(&g) < 1e-12 * g.trace());
        prop_assert!(r.op.is_self_adjoint(&h, 1e-12));
        prop_assert!(r.op.is_positive(&h));
    }

    #[test]
    fn gauss_residual_grafting((h, b) in pair_strategy(), s in 0.01f64..6.0) {
        let d = hyp_grafting_data(&h, &b, s).unwrap();
        prop_assert!(d.gauss_residual().abs() < 1e-14);
        prop_assert!(d.shape_op.is_self_adjoint(&d.first_form, 1e-12));
    }

    #[test]
    fn grafted_matches_gamma((h, b) in pair_strategy(), s in 0.01f64..4.0) {
        let g = grafted_metric(&hyp_grafting_data(&h, &b, s).unwrap()).unwrap();
        let gamma = OperatorSample::IDENTITY.scale((0.5 * s).cosh()) - b.scale((0.5 * s).sinh());
        let expected = push_metric(&h, &gamma).unwrap();
        prop_assert!(g.max_abs_diff(&expected) < 1e-12 * expected.trace());
        // With the normal pointing to the concave side the closed form uses cosh E + sinh b.
        let data = hyp_grafting_data(&h, &b, s).unwrap().flip_normal();
        let gamma = OperatorSample::IDENTITY.scale((0.5 * s).cosh()) + b.scale((0.5 * s).sinh());
        let expected = push_metric(&h, &gamma).unwrap();
        prop_assert!(grafted_metric(&data).unwrap().max_abs_diff(&expected) < 1e-12 * expected.trace());
    }

    #[test]
    fn beltrami_scale_invariant((h, _b) in pair_strategy(), lam in 0.01f64..100.0) {
        prop_assert!(beltrami(&h, &j_of(&h), &h.scale(lam)).norm() < 1e-14);
    }

    #[test]
    fn branch_choice_is_invisible((h, b) in pair_strategy(), x in -1.5f64..1.5, y in 0.01f64..1.5) {
        // Conjugate points straddle the cut only through the sign of √ζ.
        let zeta = Complex64::new(x, y);
        let j = j_of(&h);
        if let Ok(op) = complex_landslide_operator(zeta, &b, &j) {
            let neg = ComplexOperator { re: -op.re, im: -op.im };
            let c = center(&h, &b).unwrap();
            let jc = j_of(&c);
            let m1 = beltrami(&c, &jc, &push_complex(&h, &op));
            let m2 = beltrami(&c, &jc, &push_complex(&h, &neg));
            prop_assert!((m1 - m2).norm() < 1e-13);
        }
    }
}

#[test]
fn unit_circle_recovers_real_landslide() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let (h, b) = random_pair(&mut rng, 4.0);
        let j = j_of(&h);
        let jh = j;
        for &t in &[0.3, 1.0, 2.5, -1.7] {
            let op = complex_landslide_operator(Complex64::from_polar(1.0, t), &b, &j).unwrap();
            let pushed = push_complex(&h, &op);
            let (h_minus_t, _) = landslide_point(&h, &b, -t).unwrap();
            let mu = beltrami(&h, &jh, &pushed) - beltrami(&h, &jh, &h_minus_t);
            assert!(mu.norm() < 1e-12, "t = {t}: {mu}");
        }
    }
}

#[test]
fn graft_limit_at_zero_is_center() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let (h, b) = random_pair(&mut rng, 6.0);
        let c = center(&h, &b).unwrap();
        let g = push_complex(&h, &graft_limit_operator(Complex64::new(0.0, 0.0), &b));
        assert!(beltrami(&c, &j_of(&c), &g).norm() < 1e-13);
    }
}

#[test]
fn graft_limit_on_negative_axis_is_grafting() {
    // ζ = e^{−s} corresponds to the hyperbolic grafting family.
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let (h, b) = random_pair(&mut rng, 4.0);
        let j = j_of(&h);
        for &s in &[0.2f64, 1.0, 3.0] {
            let zeta = Complex64::new((-s).exp(), 0.0);
            let g = push_complex(&h, &complex_landslide_operator(zeta, &b, &j).unwrap());
            let gamma = OperatorSample::IDENTITY.scale((0.5 * s).cosh()) + b.scale((0.5 * s).sinh());
            let expected = push_metric(&h, &gamma).unwrap();
            assert!(g.max_abs_diff(&expected) < 1e-12 * expected.trace());
        }
    }
}

#[test]
fn beltrami_is_holomorphic_in_zeta() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let step = 1e-4;
    for _ in 0..10 {
        let (h, b) = random_pair(&mut rng, 3.0);
        let c = center(&h, &b).unwrap();
        let jc = j_of(&c);
        let mu = |z: Complex64| beltrami(&c, &jc, &push_complex(&h, &graft_limit_operator(z, &b)));
        for i in -3..=3 {
            for k in -3..=3 {
                let z = Complex64::new(0.3 * i as f64, 0.3 * k as f64);
                let dx = (mu(z + step) - mu(z - step)) / (2.0 * step);
                let dy = (mu(z + Complex64::new(0.0, step)) - mu(z - Complex64::new(0.0, step)))
                    / (2.0 * step);
                let dbar = 0.5 * (dx + Complex64::i() * dy);
                assert!(dbar.norm() < 1e-6, "z = {z}: |dμ/dζ̄| = {}", dbar.norm());
            }
        }
    }
}

#[test]
fn singular_locus_on_real_axis() {
    let h = TangentMetric::IDENTITY;
    let b = codazzi_operator(&h, 2.0, 0.4);
    let j = j_of(&h);
    let r = singular_radius(2.0).unwrap();
    assert!(complex_landslide_operator(Complex64::new(-r, 0.0), &b, &j).is_err());
    for i in 0..40 {
        for k in 0..12 {
            let z = Complex64::from_polar(r * (i as f64 + 0.5) / 40.0, k as f64 * PI / 6.0 + 0.1);
            let op = graft_limit_operator(z, &b).realize(&j);
            assert!(op.det().abs() > 1e-8, "singular at {z}");
        }
    }
}

#[test]
fn embedding_trig_identities() {
    let h = TangentMetric::new(1.5, 0.2, 0.9).unwrap();
    let b = codazzi_operator(&h, 2.5, 1.0);
    let d = ads_embedding_data(&h, &b, 1e-6).unwrap();
    assert!(d.shape_op.max_abs() < 1e-5 && d.first_form.max_abs_diff(&h) < 1e-11);
    let tiny = grafted_metric(&hyp_grafting_data(&h, &b, 1e-8).unwrap()).unwrap();
    assert!(tiny.max_abs_diff(&h) < 1e-7);
}

#[test]
fn variation_residuals_are_second_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let (h, b) = random_pair(&mut rng, 3.0);
        let (a1, a2) = variation_residuals(&h, &b, 1.0, 1e-2).unwrap();
        let (b1, b2) = variation_residuals(&h, &b, 1.0, 5e-3).unwrap();
        assert!(a1 / b1 >= 3.5 && a2 / b2 >= 3.5, "{a1} {b1} {a2} {b2}");
        let (r1, r2) = variation_residuals(&h, &b, 1.0, 1e-4).unwrap();
        assert!(r1 < 1e-7 && r2 < 1e-6);
    }
}
