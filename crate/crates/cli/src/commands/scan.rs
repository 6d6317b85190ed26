use std::fmt::Write as _;
use std::path::Path;

use nonherm_core::dynamics::{Asymptote, EvolutionSpec};
use nonherm_core::numerics::C64;
use nonherm_core::two_level::{classify_regime, regime_from_eigenvalues, Regime};
use nonherm_core::Error;
use rayon::prelude::*;

use super::behavior;
use crate::config::{Model, RunConfig};
use crate::error::CliError;

const DG_PARAMS: [&str; 4] = ["r", "s", "t", "theta"];
const TL_PARAMS: [&str; 6] = ["alpha", "beta", "e1_re", "e1_im", "e2_re", "e2_im"];

fn param_names(model: &Model) -> Result<&'static [&'static str], CliError> {
    match model {
        Model::DasGreenwood { .. } => Ok(&DG_PARAMS),
        Model::TwoLevel { .. } => Ok(&TL_PARAMS),
        other => Err(CliError::Config(format!("scan supports das_greenwood and two_level, not {}", other.name()))),
    }
}

fn current(model: &Model, names: &[&str]) -> Vec<f64> {
    match *model {
        Model::DasGreenwood { r, s, t, theta, .. } => vec![r, s, t, theta],
        Model::TwoLevel { alpha, beta, e1, e2 } => vec![alpha, beta, e1.re, e1.im, e2.re, e2.im],
        _ => vec![0.0; names.len()],
    }
}

fn with_values(model: &Model, v: &[f64]) -> Model {
    match *model {
        Model::DasGreenwood { phase, branch, .. } => {
            Model::DasGreenwood { r: v[0], s: v[1], t: v[2], theta: v[3], phase, branch }
        }
        Model::TwoLevel { .. } => Model::TwoLevel {
            alpha: v[0],
            beta: v[1],
            e1: C64::new(v[2], v[3]),
            e2: C64::new(v[4], v[5]),
        },
        ref other => other.clone(),
    }
}

fn status(e: &Error) -> &'static str {
    match e {
        Error::DegenerateParam(_) | Error::DegenerateSpectrum { .. } => "degenerate",
        Error::SingularMatrix { .. } | Error::IllConditionedBasis { .. } => "ill_conditioned",
        Error::Convergence { .. } => "no_convergence",
        _ => "error",
    }
}

fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::Broken => "broken",
        Regime::Unbroken => "unbroken",
        Regime::ExceptionalPoint => "exceptional_point",
    }
}

fn default_spec(dim: usize) -> EvolutionSpec {
    let mut d = vec![C64::new(0.0, 0.0); dim];
    d[0] = C64::new(1.0, 0.0);
    EvolutionSpec { c: vec![C64::new(1.0, 0.0); dim], d, t_start: 0.0, t_end: 1.0, n_steps: 2 }
}

fn row(base: &RunConfig, index: usize, values: &[f64], spec: &EvolutionSpec) -> String {
    let cfg = RunConfig { model: with_values(&base.model, values), basis: None, ..base.clone() };
    let tol = &cfg.tolerances;
    let mut line = index.to_string();
    for v in values {
        write!(line, ",{v:.16e}").unwrap();
    }
    let dg = cfg.model.das_greenwood();
    if let Some((p, _)) = &dg {
        write!(line, ",{:.16e}", p.discriminant()).unwrap();
    }
    match cfg.build() {
        Err(e) => {
            let code = match e {
                CliError::Numeric(ref n) => status(n),
                _ => "error",
            };
            let regime = dg.map(|(p, _)| regime_name(classify_regime(&p, tol))).unwrap_or("");
            write!(line, ",{regime},,,,,,,{code}").unwrap();
        }
        Ok((_, sys)) => {
            let e = sys.eigenvalues();
            let regime = match &dg {
                Some((p, _)) => classify_regime(p, tol),
                None => regime_from_eigenvalues(e, tol.gap * e.iter().map(|z| z.norm()).fold(1.0, f64::max)),
            };
            write!(line, ",{}", regime_name(regime)).unwrap();
            for z in &e[..2] {
                write!(line, ",{:.16e},{:.16e}", z.re, z.im).unwrap();
            }
            match behavior(&cfg, &sys, spec) {
                Ok(a) => {
                    let (kind, value) = match a {
                        Asymptote::Periodic { period } => ("periodic", format!("{period:.16e}")),
                        Asymptote::QuasiPeriodic => ("quasi_periodic", String::new()),
                        Asymptote::ConvergesTo { limit } => ("converges", format!("{limit:.16e}")),
                        Asymptote::DecaysToZero => ("decays", "0".into()),
                    };
                    write!(line, ",{kind},{value},ok").unwrap();
                }
                Err(e) => write!(line, ",,,{}", status(&e)).unwrap(),
            }
        }
    }
    line
}

/// Cartesian product of the sweeps; parameters without a sweep keep their
/// configured value. Rows are computed in parallel and emitted in order.
pub fn run(cfg: &RunConfig, out: Option<&Path>) -> Result<(), CliError> {
    let names = param_names(&cfg.model)?;
    if cfg.scan.is_empty() {
        return Err(CliError::Config("scan needs a `scan` section".into()));
    }
    let mut axes: Vec<Vec<f64>> = current(&cfg.model, names).into_iter().map(|v| vec![v]).collect();
    for sweep in &cfg.scan {
        let Some(i) = names.iter().position(|n| *n == sweep.param) else {
            return Err(CliError::Config(format!("unknown scan parameter `{}` (expected one of {})", sweep.param, names.join(", "))));
        };
        if sweep.count == 0 || !sweep.min.is_finite() || !sweep.max.is_finite() || sweep.max < sweep.min {
            return Err(CliError::Config(format!("bad range for `{}`", sweep.param)));
        }
        axes[i] = sweep.values();
    }
    let spec = match &cfg.evolution {
        Some(s) => {
            s.validate(2).map_err(|e| CliError::Config(format!("in `evolution`: {e}")))?;
            s.clone()
        }
        None => default_spec(2),
    };

    let total: usize = axes.iter().map(Vec::len).product();
    let points: Vec<Vec<f64>> = (0..total)
        .map(|mut k| {
            let mut v = vec![0.0; axes.len()];
            for i in (0..axes.len()).rev() {
                v[i] = axes[i][k % axes[i].len()];
                k /= axes[i].len();
            }
            v
        })
        .collect();
    let rows: Vec<String> = points.par_iter().enumerate().map(|(i, v)| row(cfg, i, v, &spec)).collect();

    let mut csv = format!("index,{}", names.join(","));
    if cfg.model.das_greenwood().is_some() {
        csv.push_str(",discriminant");
    }
    csv.push_str(",regime,re_e1,im_e1,re_e2,im_e2,behavior,value,status\n");
    for r in rows {
        csv.push_str(&r);
        csv.push('\n');
    }
    super::emit(out, &csv)
}
