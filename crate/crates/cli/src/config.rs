//! JSON run configuration.
//!
//! The model is selected by a top-level `"model"` key whose sibling keys are
//! the model parameters. `basis`, `evolution`, `tolerances` and `scan` are
//! optional sections.

use std::path::Path;

use nonherm_core::biortho::{build_system, BiorthogonalSystem};
use nonherm_core::dynamics::EvolutionSpec;
use nonherm_core::numerics::{ComplexMatrix, Tolerances, C64};
use nonherm_core::sampling::{random_diagonalizable, rng_from_seed, SampleOptions};
use nonherm_core::two_level::{build_h, das_greenwood_h, pipeline_system, Branch, DasGreenwoodParams, TwoLevelParams};
use serde::Deserialize;
use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum Model {
    TwoLevel {
        alpha: f64,
        beta: f64,
        #[serde(with = "nonherm_core::numerics::serde_text::complex")]
        e1: C64,
        #[serde(with = "nonherm_core::numerics::serde_text::complex")]
        e2: C64,
    },
    DasGreenwood {
        r: f64,
        s: f64,
        t: f64,
        theta: f64,
        #[serde(default)]
        phase: Option<f64>,
        #[serde(default)]
        branch: Branch,
    },
    Matrix {
        #[serde(with = "nonherm_core::numerics::serde_text::matrix")]
        matrix: ComplexMatrix,
    },
    Random {
        dim: usize,
        seed: u64,
        #[serde(default)]
        real_spectrum: bool,
    },
}

impl Model {
    pub fn two_level(&self) -> Option<TwoLevelParams> {
        match *self {
            Model::TwoLevel { alpha, beta, e1, e2 } => Some(TwoLevelParams::new(alpha, beta, e1, e2)),
            _ => None,
        }
    }

    pub fn das_greenwood(&self) -> Option<(DasGreenwoodParams, Branch)> {
        match *self {
            Model::DasGreenwood { r, s, t, theta, phase, branch } => {
                let mut dg = DasGreenwoodParams::new(r, s, t, theta);
                if let Some(phase) = phase {
                    dg.phase = phase;
                }
                Some((dg, branch))
            }
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Model::TwoLevel { .. } => "two_level",
            Model::DasGreenwood { .. } => "das_greenwood",
            Model::Matrix { .. } => "matrix",
            Model::Random { .. } => "random",
        }
    }

    pub fn hamiltonian(&self, tol: &Tolerances) -> nonherm_core::Result<ComplexMatrix> {
        match self {
            Model::TwoLevel { .. } => build_h(&self.two_level().expect("two-level model"), tol),
            Model::DasGreenwood { .. } => Ok(das_greenwood_h(&self.das_greenwood().expect("h model").0)),
            Model::Matrix { matrix } => Ok(matrix.clone()),
            Model::Random { dim, seed, real_spectrum } => {
                let opts = SampleOptions { real_spectrum: *real_spectrum, ..SampleOptions::default() };
                Ok(random_diagonalizable(&mut rng_from_seed(*seed), *dim, &opts)?.h)
            }
        }
    }

    /// The two-level model keeps its fixed eigenvector normalization; every
    /// other model uses unit eigenvectors.
    pub fn system(&self, h: &ComplexMatrix, tol: &Tolerances) -> nonherm_core::Result<BiorthogonalSystem> {
        match self.two_level() {
            Some(p) => pipeline_system(&p, tol),
            None => build_system(h, tol),
        }
    }
}

/// Replaces the computed eigenbases, e.g. to feed a deliberately broken pair.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisOverride {
    #[serde(default, with = "optional_complex_vec")]
    pub eigenvalues: Option<Vec<C64>>,
    #[serde(with = "nonherm_core::numerics::serde_text::matrix")]
    pub phi: ComplexMatrix,
    #[serde(with = "nonherm_core::numerics::serde_text::matrix")]
    pub psi: ComplexMatrix,
}

mod optional_complex_vec {
    use super::*;
    use serde::Deserializer;

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<C64>>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "nonherm_core::numerics::serde_text::complex_vec")] Vec<C64>);
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub param: String,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        if self.min == self.max || self.count == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count).map(|i| if i + 1 == self.count { self.max } else { self.min + step * i as f64 }).collect()
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub model: Model,
    pub basis: Option<BasisOverride>,
    pub evolution: Option<EvolutionSpec>,
    pub tolerances: Tolerances,
    pub scan: Vec<Sweep>,
}

const SECTIONS: [&str; 4] = ["basis", "evolution", "tolerances", "scan"];

fn section<T: for<'de> Deserialize<'de>>(map: &mut Map<String, Value>, key: &str) -> Result<Option<T>, CliError> {
    match map.remove(key) {
        None => Ok(None),
        Some(v) => serde_json::from_value(v).map(Some).map_err(|e| CliError::Config(format!("in `{key}`: {e}"))),
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let value: Value = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        let Value::Object(mut map) = value else {
            return Err(CliError::Config("top level must be an object".into()));
        };
        let basis = section(&mut map, "basis")?;
        let evolution = section(&mut map, "evolution")?;
        let tolerances = section(&mut map, "tolerances")?.unwrap_or_default();
        let scan = match map.remove("scan") {
            None => Vec::new(),
            Some(Value::Array(items)) => serde_json::from_value(Value::Array(items))
                .map_err(|e| CliError::Config(format!("in `scan`: {e}")))?,
            Some(single) => vec![serde_json::from_value(single).map_err(|e| CliError::Config(format!("in `scan`: {e}")))?],
        };
        if !map.contains_key("model") {
            return Err(CliError::Config(format!(
                "missing `model` (one of two_level, das_greenwood, matrix, random); optional sections: {}",
                SECTIONS.join(", ")
            )));
        }
        let model: Model =
            serde_json::from_value(Value::Object(map)).map_err(|e| CliError::Config(format!("in model: {e}")))?;
        Ok(Self { model, basis, evolution, tolerances, scan })
    }

    /// The Hamiltonian and its biorthogonal system, honoring a basis override.
    pub fn build(&self) -> Result<(ComplexMatrix, BiorthogonalSystem), CliError> {
        let tol = &self.tolerances;
        let h = self.model.hamiltonian(tol)?;
        let sys = match &self.basis {
            None => self.model.system(&h, tol)?,
            Some(b) => {
                let eigenvalues = match &b.eigenvalues {
                    Some(e) => e.clone(),
                    None => self.model.system(&h, tol)?.eigenvalues().to_vec(),
                };
                BiorthogonalSystem::from_bases(eigenvalues, b.phi.clone(), b.psi.clone(), tol)?
            }
        };
        if sys.dim() != h.rows() {
            return Err(CliError::Config(format!("basis has dimension {}, H has {}", sys.dim(), h.rows())));
        }
        Ok((h, sys))
    }
}
