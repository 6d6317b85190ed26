mod common;

use nonherm_core::biortho::build_system;
use nonherm_core::intertwine::{build_derived, full_report, no_selfadjoint_similarity_demo};
use nonherm_core::numerics::{frobenius_residual, vector_residual, ComplexMatrix, Tolerances};
use nonherm_core::sampling::random_invertible;
use nonherm_core::two_level::{build_h, pipeline_system};

#[test]
fn all_relations_on_random_systems() {
    let tol = Tolerances::default();
    for (i, s) in common::random_systems(21, 200).iter().enumerate() {
        let sys = build_system(&s.h, &tol).unwrap();
        let d = build_derived(&s.h, &sys).unwrap();
        let report = full_report(&s.h, &d, &sys, 1e-9).unwrap();
        assert!(report.passed(), "system {i}:\n{report}");
    }
}

#[test]
fn all_relations_on_two_level_model() {
    let tol = Tolerances::default();
    let mut r = common::rng(22);
    for i in 0..60 {
        let p = if i % 2 == 0 { common::unbroken_params(&mut r) } else { common::broken_params(&mut r) };
        let h = build_h(&p, &tol).unwrap();
        for sys in [build_system(&h, &tol).unwrap(), pipeline_system(&p, &tol).unwrap()] {
            let d = build_derived(&h, &sys).unwrap();
            let report = full_report(&h, &d, &sys, 1e-9).unwrap();
            assert!(report.passed(), "{p:?}\n{report}");
        }
    }
}

#[test]
fn matrix_parts_agree_with_pointwise_action() {
    let tol = Tolerances::default();
    let mut r = common::rng(23);
    let mut max_tilde_gap: f64 = 0.0;
    for s in common::random_systems(24, 30) {
        let sys = build_system(&s.h, &tol).unwrap();
        let d = build_derived(&s.h, &sys).unwrap();
        let f = common::random_vector(&mut r, sys.dim());
        let v = &d.v.v_phi;
        let h_phi_f = v.apply(&s.h.apply(&f).unwrap()).unwrap();
        assert!(vector_residual(&d.h_phi.apply(&f).unwrap(), &h_phi_f).unwrap() < 1e-10);
        let tilde_f = s.h.apply(&v.apply(&f).unwrap()).unwrap();
        assert!(vector_residual(&d.h_phi_tilde.apply(&f).unwrap(), &tilde_f).unwrap() < 1e-10);
        assert!(frobenius_residual(d.h_phi.matrix(), &(v.matrix() * &s.h.conj())).unwrap() < 1e-14);
        max_tilde_gap = max_tilde_gap.max(d.h_phi.distance(&d.h_phi_tilde).unwrap());
    }
    assert!(max_tilde_gap > tol.gap);
}

#[test]
fn similarity_never_removes_complex_eigenvalues() {
    let tol = Tolerances::default();
    let mut r = common::rng(25);
    let mut broken = 0;
    for i in 0..20 {
        let p = common::broken_params(&mut r);
        let h = build_h(&p, &tol).unwrap();
        let sys = build_system(&h, &tol).unwrap();
        let mut xs: Vec<ComplexMatrix> = (0..50).map(|_| random_invertible(&mut r, 2, 100.0).unwrap()).collect();
        xs.push(sys.s_psi_sqrt().clone());
        let demo = no_selfadjoint_similarity_demo(&h, &xs, 1e-8, &tol).unwrap();
        assert!(demo.report.passed(), "draw {i}:\n{}", demo.report);
        broken += 1;
    }
    assert_eq!(broken, 20);
    for s in common::random_systems(26, 10) {
        let xs: Vec<ComplexMatrix> = (0..10).map(|_| random_invertible(&mut r, s.h.rows(), 100.0).unwrap()).collect();
        let demo = no_selfadjoint_similarity_demo(&s.h, &xs, 1e-8, &tol).unwrap();
        assert!(demo.report.passed(), "{}", demo.report);
    }
}
