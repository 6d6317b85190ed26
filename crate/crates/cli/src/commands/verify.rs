use std::path::Path;

use nonherm_core::intertwine::{derived_from, full_report, no_selfadjoint_similarity_demo, v_ops_unchecked};
use nonherm_core::numerics::{frobenius_residual, ComplexMatrix};
use nonherm_core::report::Report;
use nonherm_core::sampling::{random_invertible, rng_from_seed};
use nonherm_core::two_level::{closed_form_eigensystem, closed_form_hphiphi, closed_form_metrics};
use serde::Serialize;

use super::emit;
use crate::config::RunConfig;
use crate::error::CliError;
use crate::spectrum::{classify, SpectrumKind};

/// Random similarity transforms tried on a non-real spectrum.
const SIMILARITY_SAMPLES: usize = 8;
const SIMILARITY_SEED: u64 = 0x5eed;
const SIMILARITY_MATCH: f64 = 1e-8;

#[derive(Serialize)]
struct VerifyOutput<'a> {
    passed: bool,
    threshold: f64,
    reports: &'a [Report],
}

pub fn run(cfg: &RunConfig, full: bool, threshold: f64, out: Option<&Path>) -> Result<(), CliError> {
    let tol = &cfg.tolerances;
    let (h, sys) = cfg.build()?;
    let mut reports = vec![sys.invariants_report(&h, threshold)?];
    if full {
        let d = derived_from(&h, &sys, v_ops_unchecked(&sys)?)?;
        reports.push(full_report(&h, &d, &sys, threshold)?);

        if let (Some(p), None) = (cfg.model.two_level(), &cfg.basis) {
            let cf = closed_form_eigensystem(&p, tol)?;
            let (s_phi, s_psi) = closed_form_metrics(&p, tol)?;
            let mut r = Report::new("two-level closed forms");
            r.push("phi closed form", frobenius_residual(sys.phi(), &cf.phi())?, threshold);
            r.push("psi closed form", frobenius_residual(sys.psi(), &cf.psi())?, threshold);
            r.push("S_phi closed form", frobenius_residual(sys.s_phi(), &s_phi)?, threshold);
            r.push("S_psi closed form", frobenius_residual(sys.s_psi(), &s_psi)?, threshold);
            r.push("H_phiphi closed form", frobenius_residual(&d.h_phiphi, &closed_form_hphiphi(&p, tol)?)?, threshold);
            reports.push(r);
        }

        if classify(sys.eigenvalues(), tol) != SpectrumKind::Real {
            let mut rng = rng_from_seed(SIMILARITY_SEED);
            let mut xs = vec![ComplexMatrix::identity(sys.dim()), sys.s_psi_sqrt().clone()];
            for _ in 0..SIMILARITY_SAMPLES {
                xs.push(random_invertible(&mut rng, sys.dim(), 100.0)?);
            }
            reports.push(no_selfadjoint_similarity_demo(&h, &xs, SIMILARITY_MATCH, tol)?.report);
        }
    }

    let passed = reports.iter().all(Report::passed);
    for r in &reports {
        println!("{r}");
    }
    let failures: usize = reports.iter().map(|r| r.failures().count()).sum();
    println!("{}", if passed { "all checks passed".to_string() } else { format!("{failures} check(s) FAILED") });
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(&VerifyOutput { passed, threshold, reports: &reports })
            .expect("reports serialize");
        emit(Some(path), &(json + "\n"))?;
    }
    if passed {
        Ok(())
    } else {
        Err(CliError::VerificationFailed { failures })
    }
}
