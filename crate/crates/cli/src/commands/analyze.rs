use std::path::Path;

use nonherm_core::numerics::{condition_number, format_complex, frobenius_residual, hermitian_eig, ComplexMatrix, C64};
use nonherm_core::two_level::{classify_regime, map_das_greenwood, Regime};
use serde::Serialize;

use super::emit;
use crate::config::RunConfig;
use crate::error::CliError;
use crate::spectrum::{classify, SpectrumKind};

#[derive(Serialize)]
struct Analysis {
    model: &'static str,
    dimension: usize,
    #[serde(with = "nonherm_core::numerics::serde_text::complex_vec")]
    eigenvalues: Vec<C64>,
    spectrum: SpectrumKind,
    regime: Option<Regime>,
    discriminant: Option<f64>,
    cond_phi: f64,
    cond_s_phi: f64,
    s_phi_spectrum: Vec<f64>,
    s_psi_spectrum: Vec<f64>,
    trivial_metric: bool,
}

pub fn run(cfg: &RunConfig, threshold: f64, out: Option<&Path>) -> Result<(), CliError> {
    let tol = &cfg.tolerances;
    let mut lines = Vec::new();
    let mut regime = None;
    let mut discriminant = None;
    if let Some((dg, branch)) = cfg.model.das_greenwood() {
        let r = classify_regime(&dg, tol);
        regime = Some(r);
        discriminant = Some(dg.discriminant());
        lines.push(format!("discriminant r^2 sin^2(theta) - ts = {:.16e}", dg.discriminant()));
        lines.push(format!(
            "classification: {}",
            match r {
                Regime::Broken => "Broken",
                Regime::Unbroken => "Unbroken",
                Regime::ExceptionalPoint => "Exceptional point",
            }
        ));
        if r == Regime::Broken {
            match map_das_greenwood(&dg, branch, tol) {
                Ok(p) => lines.push(format!(
                    "two-level parameters: alpha = {}, beta = {}, E1 = {}, E2 = {}",
                    p.alpha,
                    p.beta,
                    format_complex(p.e1),
                    format_complex(p.e2)
                )),
                Err(e) => lines.push(format!("two-level parameters: unavailable ({e})")),
            }
        }
    }
    // the regime above is printed even when the eigensystem cannot be built
    let built = cfg.build();
    let (h, sys) = match built {
        Ok(pair) => pair,
        Err(e) => {
            eprintln!("{}", lines.join("\n"));
            return Err(e);
        }
    };
    let kind = classify(sys.eigenvalues(), tol);
    let s_phi_spectrum = hermitian_eig(sys.s_phi(), tol)?.values;
    let s_psi_spectrum = hermitian_eig(sys.s_psi(), tol)?.values;
    let trivial_metric = frobenius_residual(sys.s_phi(), &ComplexMatrix::identity(sys.dim()))? <= threshold;
    let analysis = Analysis {
        model: cfg.model.name(),
        dimension: h.rows(),
        eigenvalues: sys.eigenvalues().to_vec(),
        spectrum: kind,
        regime,
        discriminant,
        cond_phi: condition_number(sys.phi())?,
        cond_s_phi: condition_number(sys.s_phi())?,
        s_phi_spectrum,
        s_psi_spectrum,
        trivial_metric,
    };

    let mut text = format!("model: {} (dimension {})\n", analysis.model, analysis.dimension);
    text += "eigenvalues:\n";
    for (k, e) in analysis.eigenvalues.iter().enumerate() {
        text += &format!("  E_{k} = {}\n", format_complex(*e));
    }
    text += &format!("regime: {}\n", kind.label());
    for l in &lines {
        text += &format!("{l}\n");
    }
    text += &format!("cond(phi) = {:.6e}\n", analysis.cond_phi);
    text += &format!("cond(S_phi) = {:.6e}\n", analysis.cond_s_phi);
    text += &format!("spectrum(S_phi) = [{}]\n", join(&analysis.s_phi_spectrum));
    text += &format!("spectrum(S_psi) = [{}]\n", join(&analysis.s_psi_spectrum));
    if trivial_metric {
        text += "metric: S_phi = I\n";
    }
    if kind == SpectrumKind::Real && trivial_metric {
        text += "summary: Real spectrum; S_phi = I\n";
    }
    print!("{text}");
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(&analysis).expect("analysis serializes");
        emit(Some(path), &(json + "\n"))?;
    }
    Ok(())
}

fn join(values: &[f64]) -> String {
    values.iter().map(|v| format!("{v:.6e}")).collect::<Vec<_>>().join(", ")
}
