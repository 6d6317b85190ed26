mod common;

use std::f64::consts::PI;

use nonherm_core::antilinear::AntilinearOp;
use nonherm_core::intertwine::build_derived;
use nonherm_core::numerics::{frobenius_residual, general_eig, Tolerances};
use nonherm_core::two_level::{
    build_h, classify_regime, closed_form_eigensystem, closed_form_hphiphi, closed_form_metrics, das_greenwood_h,
    map_das_greenwood, pipeline_system, regime_from_eigenvalues, Branch, DasGreenwoodParams, Regime,
};
use rand::Rng;

#[test]
fn closed_forms_match_generic_pipeline() {
    let tol = Tolerances::default();
    let mut r = common::rng(31);
    for i in 0..200 {
        let p = if i % 2 == 0 { common::unbroken_params(&mut r) } else { common::broken_params(&mut r) };
        let h = build_h(&p, &tol).unwrap();
        let sys = pipeline_system(&p, &tol).unwrap();
        let cf = closed_form_eigensystem(&p, &tol).unwrap();
        let (s_phi, s_psi) = closed_form_metrics(&p, &tol).unwrap();
        assert!(frobenius_residual(sys.phi(), &cf.phi()).unwrap() < 1e-10, "{p:?}");
        assert!(frobenius_residual(sys.psi(), &cf.psi()).unwrap() < 1e-10, "{p:?}");
        assert!(frobenius_residual(sys.s_phi(), &s_phi).unwrap() < 1e-10, "{p:?}");
        assert!(frobenius_residual(sys.s_psi(), &s_psi).unwrap() < 1e-10, "{p:?}");
        let d = build_derived(&h, &sys).unwrap();
        assert!(d.v.v_phi.approx_eq(&AntilinearOp::conjugation(2), 1e-10));
        assert!(d.v.v_psi.approx_eq(&AntilinearOp::conjugation(2), 1e-10));
        assert!(frobenius_residual(&d.h_phiphi, &closed_form_hphiphi(&p, &tol).unwrap()).unwrap() < 1e-10);
        assert!((h.trace() - (p.e1 + p.e2)).norm() < 1e-12 * p.e1.norm().max(1.0));
        let det = h[(0, 0)] * h[(1, 1)] - h[(0, 1)] * h[(1, 0)];
        assert!((det - p.e1 * p.e2).norm() < 1e-10 * (p.e1 * p.e2).norm().max(1.0));
    }
}

fn random_broken_dg(r: &mut impl Rng) -> DasGreenwoodParams {
    loop {
        let dg = DasGreenwoodParams::new(
            r.gen_range(0.1..3.0),
            r.gen_range(-2.0..2.0),
            r.gen_range(-2.0..2.0),
            r.gen_range(0.0..2.0 * PI),
        );
        if dg.s.abs() > 0.05 && dg.t.abs() > 0.05 && dg.discriminant() > 0.05 {
            return dg;
        }
    }
}

#[test]
fn das_greenwood_round_trip() {
    let tol = Tolerances::default();
    let mut r = common::rng(32);
    for _ in 0..100 {
        let dg = random_broken_dg(&mut r);
        for branch in [Branch::Plus, Branch::Minus] {
            let p = map_das_greenwood(&dg, branch, &tol).unwrap();
            let residual = frobenius_residual(&build_h(&p, &tol).unwrap(), &das_greenwood_h(&dg)).unwrap();
            assert!(residual < 1e-10, "{dg:?} {branch:?}: {residual:e}");
            assert!((p.e1 - p.e2.conj()).norm() < 1e-12);
        }
    }
}

#[test]
fn regime_agrees_with_spectrum_on_grid() {
    let tol = Tolerances::default();
    for i in 0..=100 {
        for j in 0..=100 {
            let dg = DasGreenwoodParams::new(2.0 * i as f64 / 100.0, 1.0, 1.0, PI * j as f64 / 100.0);
            let regime = classify_regime(&dg, &tol);
            if regime == Regime::ExceptionalPoint {
                continue;
            }
            let h = das_greenwood_h(&dg);
            let eig = general_eig(&h, &tol).unwrap().eigenvalues;
            assert_eq!(regime_from_eigenvalues(&eig, 1e-6), regime, "{dg:?}");
        }
    }
    let ep = DasGreenwoodParams::new(1.0, 1.0, 1.0, PI / 2.0);
    assert_eq!(classify_regime(&ep, &tol), Regime::ExceptionalPoint);
}
