use std::io::Write;
use std::path::Path;

use nonherm_core::biortho::BiorthogonalSystem;
use nonherm_core::dynamics::{asymptote_and_period, asymptotic_behavior, final_state, Asymptote, EvolutionSpec};

use crate::config::RunConfig;
use crate::error::CliError;

pub mod analyze;
pub mod evolve;
pub mod scan;
pub mod verify;

pub const DEFAULT_THRESHOLD: f64 = 1e-9;

/// Writes to `out`, or to stdout when no path is given.
pub fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

/// Long-time behaviour of the configured evolution. The two-level model uses
/// its closed-form classification; other inputs use the spectral data.
pub fn behavior(cfg: &RunConfig, sys: &BiorthogonalSystem, spec: &EvolutionSpec) -> nonherm_core::Result<Asymptote> {
    if let (Some(p), None) = (cfg.model.two_level(), &cfg.basis) {
        return asymptote_and_period(&p, spec, &cfg.tolerances);
    }
    let norms: Vec<f64> = sys.phi().columns().iter().map(|c| c.norm_sq()).collect();
    let final_norm = final_state(sys, &spec.d)?.norm_sq();
    asymptotic_behavior(sys.eigenvalues(), &norms, &spec.c, &spec.d, final_norm, &cfg.tolerances)
}

pub fn describe(a: &Asymptote) -> String {
    match a {
        Asymptote::Periodic { period } => format!("periodic with T = {period:.16e}"),
        Asymptote::QuasiPeriodic => "quasi-periodic".into(),
        Asymptote::ConvergesTo { limit } => format!("converges to {limit:.16e}"),
        Asymptote::DecaysToZero => "decays to zero".into(),
    }
}
