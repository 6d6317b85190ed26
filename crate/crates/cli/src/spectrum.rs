use nonherm_core::numerics::{Tolerances, C64};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumKind {
    Real,
    ConjugatePairs,
    Mixed,
}

impl SpectrumKind {
    pub fn label(self) -> &'static str {
        match self {
            SpectrumKind::Real => "Unbroken: real spectrum",
            SpectrumKind::ConjugatePairs => "Broken: complex-conjugate pair",
            SpectrumKind::Mixed => "Mixed: non-real eigenvalues without conjugate partners",
        }
    }
}

/// Non-real means |Im E| above `tol.gap` relative to the spectral scale;
/// conjugate partners are matched to 1e−6 of that scale.
pub fn classify(eigenvalues: &[C64], tol: &Tolerances) -> SpectrumKind {
    let scale = eigenvalues.iter().map(|e| e.norm()).fold(1.0, f64::max);
    let non_real: Vec<&C64> = eigenvalues.iter().filter(|e| e.im.abs() > tol.gap * scale).collect();
    if non_real.is_empty() {
        return SpectrumKind::Real;
    }
    let paired = non_real.iter().all(|e| non_real.iter().any(|f| (e.conj() - **f).norm() <= 1e-6 * scale));
    if paired {
        SpectrumKind::ConjugatePairs
    } else {
        SpectrumKind::Mixed
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds() {
        let tol = Tolerances::default();
        let c = C64::new;
        assert_eq!(classify(&[c(1.0, 0.0), c(2.0, 0.0)], &tol), SpectrumKind::Real);
        assert_eq!(classify(&[c(1.0, 1.0), c(1.0, -1.0)], &tol), SpectrumKind::ConjugatePairs);
        assert_eq!(classify(&[c(1.0, 1.0), c(2.0, 0.0)], &tol), SpectrumKind::Mixed);
    }
}
