use std::fmt::Write as _;
use std::path::Path;

use nonherm_core::dynamics::trace;

use super::{behavior, describe, emit};
use crate::config::RunConfig;
use crate::error::CliError;

pub fn run(cfg: &RunConfig, out: Option<&Path>) -> Result<(), CliError> {
    let spec = cfg
        .evolution
        .as_ref()
        .ok_or_else(|| CliError::Config("evolve needs an `evolution` section".into()))?;
    let (_, sys) = cfg.build()?;
    spec.validate(sys.dim()).map_err(|e| CliError::Config(format!("in `evolution`: {e}")))?;
    let tr = trace(&sys, spec)?;

    let n = sys.dim();
    let mut csv = String::from("t");
    for k in 0..n {
        write!(csv, ",re_phi_{k}").unwrap();
    }
    for k in 0..n {
        write!(csv, ",im_phi_{k}").unwrap();
    }
    csv.push_str(",norm_sq,prob\n");
    for (i, t) in tr.times.iter().enumerate() {
        write!(csv, "{t:.16e}").unwrap();
        let state = tr.states[i].entries();
        for z in state {
            write!(csv, ",{:.16e}", z.re).unwrap();
        }
        for z in state {
            write!(csv, ",{:.16e}", z.im).unwrap();
        }
        writeln!(csv, ",{:.16e},{:.16e}", tr.norms_sq[i], tr.probs[i]).unwrap();
    }
    emit(out, &csv)?;

    let last = tr.probs.last().copied().unwrap_or(f64::NAN);
    let summary = match behavior(cfg, &sys, spec) {
        Ok(a) => describe(&a),
        Err(e) => format!("undetermined ({e})"),
    };
    eprintln!("{} points, final prob = {last:.16e}; behavior: {summary}", tr.times.len());
    Ok(())
}
