//! Non-unitary time evolution Φ(t) = e^{−iHt}Φ₀ and transition probabilities.
//!
//! The initial state is expanded over the eigenvectors, Φ₀ = Σ c_kφ_k, and the
//! final state over the partner basis, Φ_f = Σ d_kΨ_k, so that
//! ⟨Φ_f, Φ(t)⟩ = Σ d̄_k c_k e^{−iE_k t}.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::biortho::BiorthogonalSystem;
use crate::error::{Error, Result};
use crate::numerics::{scalar_product, ComplexVector, Tolerances, C64};
use crate::two_level::TwoLevelParams;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolutionSpec {
    /// Coefficients of Φ₀ over the eigenvectors φ_k.
    #[serde(with = "crate::numerics::serde_text::complex_vec")]
    pub c: Vec<C64>,
    /// Coefficients of Φ_f over the partner vectors Ψ_k.
    #[serde(with = "crate::numerics::serde_text::complex_vec")]
    pub d: Vec<C64>,
    pub t_start: f64,
    pub t_end: f64,
    /// Number of grid points, endpoints included.
    pub n_steps: usize,
}

impl EvolutionSpec {
    pub fn validate(&self, dim: usize) -> Result<()> {
        if self.c.len() != dim || self.d.len() != dim {
            return Err(Error::Dimension(format!(
                "{} c- and {} d-coefficients for dimension {dim}",
                self.c.len(),
                self.d.len()
            )));
        }
        if self.c.iter().all(|z| *z == C64::new(0.0, 0.0)) {
            return Err(Error::Normalization("initial state has no non-zero coefficient".into()));
        }
        if self.d.iter().all(|z| *z == C64::new(0.0, 0.0)) {
            return Err(Error::Normalization("final state has no non-zero coefficient".into()));
        }
        if !(self.t_start.is_finite() && self.t_end.is_finite() && self.t_end > self.t_start) {
            return Err(Error::InvalidArgument(format!("time window [{}, {}] is empty", self.t_start, self.t_end)));
        }
        if self.n_steps < 2 {
            return Err(Error::InvalidArgument("need at least two grid points".into()));
        }
        Ok(())
    }

    pub fn times(&self) -> Vec<f64> {
        let h = (self.t_end - self.t_start) / (self.n_steps - 1) as f64;
        (0..self.n_steps)
            .map(|i| if i + 1 == self.n_steps { self.t_end } else { self.t_start + h * i as f64 })
            .collect()
    }
}

/// Φ₀ = Σ c_kφ_k.
pub fn initial_state(sys: &BiorthogonalSystem, c: &[C64]) -> Result<ComplexVector> {
    sys.phi().apply(&ComplexVector::new(c.to_vec())?)
}

/// Φ_f = Σ d_kΨ_k.
pub fn final_state(sys: &BiorthogonalSystem, d: &[C64]) -> Result<ComplexVector> {
    sys.psi().apply(&ComplexVector::new(d.to_vec())?)
}

/// Φ·diag(e^{−iE_k t})·Ψ†·Φ₀, the spectral form of e^{−iHt}Φ₀.
pub fn evolve(sys: &BiorthogonalSystem, phi0: &ComplexVector, t: f64) -> Result<ComplexVector> {
    if !t.is_finite() {
        return Err(Error::InvalidArgument(format!("time {t} is not finite")));
    }
    let mut coeffs = sys.coefficients(phi0)?;
    for (k, e) in sys.eigenvalues().iter().enumerate() {
        coeffs[k] *= (-C64::i() * e * t).exp();
    }
    sys.phi().apply(&coeffs)
}

/// |⟨Φ_f, Φ(t)⟩|² / (‖Φ_f‖²‖Φ(t)‖²) with the standard scalar product.
pub fn transition_probability(phif: &ComplexVector, phit: &ComplexVector) -> Result<f64> {
    let (nf, nt) = (phif.norm_sq(), phit.norm_sq());
    if nf == 0.0 || nt == 0.0 {
        return Err(Error::Normalization("transition probability of a zero vector".into()));
    }
    let p = scalar_product(phif, phit)?.norm_sqr() / (nf * nt);
    Ok(p.clamp(0.0, 1.0))
}

#[derive(Clone, Debug, Serialize)]
pub struct EvolutionTrace {
    pub times: Vec<f64>,
    pub states: Vec<ComplexVector>,
    pub norms_sq: Vec<f64>,
    pub probs: Vec<f64>,
}

pub fn trace(sys: &BiorthogonalSystem, spec: &EvolutionSpec) -> Result<EvolutionTrace> {
    spec.validate(sys.dim())?;
    let phi0 = initial_state(sys, &spec.c)?;
    let phif = final_state(sys, &spec.d)?;
    let times = spec.times();
    let mut states = Vec::with_capacity(times.len());
    let mut norms_sq = Vec::with_capacity(times.len());
    let mut probs = Vec::with_capacity(times.len());
    for &t in &times {
        let state = evolve(sys, &phi0, t)?;
        norms_sq.push(state.norm_sq());
        probs.push(transition_probability(&phif, &state)?);
        states.push(state);
    }
    Ok(EvolutionTrace { times, states, norms_sq, probs })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClosedFormSample {
    pub norm_sq: f64,
    pub overlap_sq: f64,
    pub prob: f64,
}

fn two_coefficients(spec: &EvolutionSpec) -> Result<([C64; 2], [C64; 2])> {
    spec.validate(2)?;
    Ok(([spec.c[0], spec.c[1]], [spec.d[0], spec.d[1]]))
}

/// ‖d₁Ψ₁ + d₂Ψ₂‖² in the fixed two-level normalization.
pub fn two_level_final_norm_sq(p: &TwoLevelParams, d: [C64; 2]) -> f64 {
    let (a, b) = (p.alpha, p.beta);
    let cross = 2.0 * (d[0].conj() * d[1]).re;
    (d[0].norm_sqr() * (4.0 + a * a) + d[1].norm_sqr() * (1.0 + b * b) - (a + 2.0 * b) * cross)
        / (p.denominator() * p.denominator())
}

fn sample(p: &TwoLevelParams, d: [C64; 2], norm_sq: f64, overlap_sq: f64) -> ClosedFormSample {
    let prob = overlap_sq / (norm_sq * two_level_final_norm_sq(p, d));
    ClosedFormSample { norm_sq, overlap_sq, prob }
}

/// Unbroken regime (E₁, E₂ real): bounded, oscillating dynamics.
pub fn closed_form_ur(p: &TwoLevelParams, spec: &EvolutionSpec, t: f64, tol: &Tolerances) -> Result<ClosedFormSample> {
    p.validate(tol)?;
    let scale = p.e1.norm().max(p.e2.norm()).max(1.0);
    if p.e1.im.abs() > tol.gap * scale || p.e2.im.abs() > tol.gap * scale {
        return Err(Error::Regime(format!("E₁ = {}, E₂ = {} are not both real", p.e1, p.e2)));
    }
    let ([c1, c2], [d1, d2]) = two_coefficients(spec)?;
    let (a, b) = (p.alpha, p.beta);
    let phase = C64::new(0.0, (p.e1.re - p.e2.re) * t).exp();
    let x = c1.conj() * c2 * phase;
    let norm_sq = c1.norm_sqr() * (1.0 + b * b) + c2.norm_sqr() * (4.0 + a * a) + (a + 2.0 * b) * 2.0 * x.re;
    let y = c1.conj() * c2 * d1 * d2.conj() * phase;
    let overlap_sq = c1.norm_sqr() * d1.norm_sqr() + c2.norm_sqr() * d2.norm_sqr() + 2.0 * y.re;
    Ok(sample(p, [d1, d2], norm_sq, overlap_sq))
}

/// Broken regime (E₁ = Ē₂ = R + iI, I ≠ 0): one mode grows, the other decays.
pub fn closed_form_br(p: &TwoLevelParams, spec: &EvolutionSpec, t: f64, tol: &Tolerances) -> Result<ClosedFormSample> {
    p.validate(tol)?;
    let scale = p.e1.norm().max(1.0);
    if (p.e1 - p.e2.conj()).norm() > tol.gap * scale || p.e1.im.abs() <= tol.gap * scale {
        return Err(Error::Regime(format!("E₁ = {}, E₂ = {} are not a non-real conjugate pair", p.e1, p.e2)));
    }
    let ([c1, c2], [d1, d2]) = two_coefficients(spec)?;
    let (a, b) = (p.alpha, p.beta);
    let im = p.e1.im;
    let (grow, decay) = ((2.0 * im * t).exp(), (-2.0 * im * t).exp());
    let x = c1.conj() * c2;
    let norm_sq = c1.norm_sqr() * (1.0 + b * b) * grow + c2.norm_sqr() * (4.0 + a * a) * decay + (a + 2.0 * b) * 2.0 * x.re;
    let y = c1.conj() * c2 * d1 * d2.conj();
    let overlap_sq = c1.norm_sqr() * d1.norm_sqr() * grow + c2.norm_sqr() * d2.norm_sqr() * decay + 2.0 * y.re;
    Ok(sample(p, [d1, d2], norm_sq, overlap_sq))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Asymptote {
    /// P(t + T) = P(t).
    Periodic { period: f64 },
    /// Several leading modes with incommensurate frequencies (dimension > 2).
    QuasiPeriodic,
    ConvergesTo { limit: f64 },
    DecaysToZero,
}

/// Long-time behaviour from the spectral data alone.
///
/// Among the modes present in Φ₀, those with the largest Im E_k dominate both
/// ‖Φ(t)‖² and the overlap. A single dominant mode k fixes the limit
/// |d_k|² / (‖Φ_f‖²‖φ_k‖²); two dominant modes beat with period 2π/|ΔRe E|.
pub fn asymptotic_behavior(
    eigenvalues: &[C64],
    phi_norms_sq: &[f64],
    c: &[C64],
    d: &[C64],
    final_norm_sq: f64,
    tol: &Tolerances,
) -> Result<Asymptote> {
    let n = eigenvalues.len();
    if phi_norms_sq.len() != n || c.len() != n || d.len() != n {
        return Err(Error::Dimension("spectral data and coefficients differ in length".into()));
    }
    let scale = eigenvalues.iter().map(|e| e.norm()).fold(1.0, f64::max);
    for i in 0..n {
        for j in i + 1..n {
            if (eigenvalues[i] - eigenvalues[j]).norm() <= tol.gap * scale {
                return Err(Error::DegenerateParam(format!("coinciding eigenvalues {}", eigenvalues[i])));
            }
        }
    }
    if final_norm_sq <= 0.0 {
        return Err(Error::Normalization("final state is zero".into()));
    }
    let present: Vec<usize> = (0..n).filter(|&k| c[k].norm() > 0.0).collect();
    let top = present
        .iter()
        .map(|&k| eigenvalues[k].im)
        .fold(f64::NEG_INFINITY, f64::max);
    if present.is_empty() {
        return Err(Error::Normalization("initial state is zero".into()));
    }
    let leading: Vec<usize> = present.into_iter().filter(|&k| top - eigenvalues[k].im <= tol.gap * scale).collect();
    match leading.as_slice() {
        [k] => {
            let limit = d[*k].norm_sqr() / (final_norm_sq * phi_norms_sq[*k]);
            Ok(if limit == 0.0 { Asymptote::DecaysToZero } else { Asymptote::ConvergesTo { limit } })
        }
        [j, k] => Ok(Asymptote::Periodic { period: TAU / (eigenvalues[*j].re - eigenvalues[*k].re).abs() }),
        _ => Ok(Asymptote::QuasiPeriodic),
    }
}

/// Two-level classification. Equal imaginary parts (in particular the
/// unbroken regime) give period T = 2π/|E₁ − E₂|.
pub fn asymptote_and_period(p: &TwoLevelParams, spec: &EvolutionSpec, tol: &Tolerances) -> Result<Asymptote> {
    let scale = p.e1.norm().max(p.e2.norm()).max(1.0);
    if (p.e1 - p.e2).norm() <= tol.gap * scale {
        return Err(Error::DegenerateParam(format!("exceptional point: E₁ = E₂ = {}", p.e1)));
    }
    p.validate(tol)?;
    let ([c1, c2], [d1, d2]) = two_coefficients(spec)?;
    if (p.e1.im - p.e2.im).abs() <= tol.gap * scale {
        return Ok(Asymptote::Periodic { period: TAU / (p.e1 - p.e2).norm() });
    }
    let (a, b) = (p.alpha, p.beta);
    asymptotic_behavior(
        &[p.e1, p.e2],
        &[1.0 + b * b, 4.0 + a * a],
        &[c1, c2],
        &[d1, d2],
        two_level_final_norm_sq(p, [d1, d2]),
        tol,
    )
}
