//! The two-level model with prescribed eigenvalues E₁, E₂ and its relation to
//! the PT-symmetric Hamiltonian
//! `h = [[r e^{iθ}, s e^{iΦ}], [t e^{−iΦ}, r e^{−iθ}]]`.
//!
//! Eigenvectors here use the fixed normalization φ₁ = [1, β], φ₂ = [α, 2],
//! which makes S_φ polynomial in α and β.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::biortho::{build_system, BiorthogonalSystem};
use crate::error::{Error, Result};
use crate::numerics::{frobenius_residual, ComplexMatrix, ComplexVector, Tolerances, C64};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoLevelParams {
    pub alpha: f64,
    pub beta: f64,
    #[serde(with = "crate::numerics::serde_text::complex")]
    pub e1: C64,
    #[serde(with = "crate::numerics::serde_text::complex")]
    pub e2: C64,
}

impl TwoLevelParams {
    pub fn new(alpha: f64, beta: f64, e1: C64, e2: C64) -> Self {
        Self { alpha, beta, e1, e2 }
    }

    /// 2 − αβ, the common denominator.
    pub fn denominator(&self) -> f64 {
        2.0 - self.alpha * self.beta
    }

    pub fn validate(&self, tol: &Tolerances) -> Result<()> {
        let finite = [self.alpha, self.beta, self.e1.re, self.e1.im, self.e2.re, self.e2.im];
        if finite.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("two-level parameters must be finite".into()));
        }
        if self.denominator().abs() <= tol.gap {
            return Err(Error::DegenerateParam(format!("αβ = {} is too close to 2", self.alpha * self.beta)));
        }
        if (self.e1 - self.e2).norm() <= tol.gap {
            return Err(Error::DegenerateParam(format!("E₁ = E₂ = {}", self.e1)));
        }
        Ok(())
    }

    pub fn conjugated(&self) -> Self {
        Self { e1: self.e1.conj(), e2: self.e2.conj(), ..*self }
    }
}

pub fn build_h(p: &TwoLevelParams, tol: &Tolerances) -> Result<ComplexMatrix> {
    p.validate(tol)?;
    let (a, b, e1, e2) = (p.alpha, p.beta, p.e1, p.e2);
    let ab = a * b;
    let k = 1.0 / p.denominator();
    let m = ComplexMatrix::from_rows(vec![
        vec![2.0 * e1 - ab * e2, a * (e2 - e1)],
        vec![2.0 * b * (e1 - e2), 2.0 * e2 - ab * e1],
    ])?;
    Ok(m.scale(C64::new(k, 0.0)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormEigensystem {
    pub phi1: ComplexVector,
    pub phi2: ComplexVector,
    pub psi1: ComplexVector,
    pub psi2: ComplexVector,
}

impl ClosedFormEigensystem {
    pub fn phi(&self) -> ComplexMatrix {
        ComplexMatrix::from_columns(&[self.phi1.clone(), self.phi2.clone()]).expect("two columns of length two")
    }

    pub fn psi(&self) -> ComplexMatrix {
        ComplexMatrix::from_columns(&[self.psi1.clone(), self.psi2.clone()]).expect("two columns of length two")
    }
}

pub fn closed_form_eigensystem(p: &TwoLevelParams, tol: &Tolerances) -> Result<ClosedFormEigensystem> {
    p.validate(tol)?;
    let (a, b) = (p.alpha, p.beta);
    let k = 1.0 / p.denominator();
    Ok(ClosedFormEigensystem {
        phi1: ComplexVector::from_real(&[1.0, b])?,
        phi2: ComplexVector::from_real(&[a, 2.0])?,
        psi1: ComplexVector::from_real(&[2.0 * k, -a * k])?,
        psi2: ComplexVector::from_real(&[-b * k, k])?,
    })
}

/// (S_φ, S_Ψ) in the fixed normalization.
pub fn closed_form_metrics(p: &TwoLevelParams, tol: &Tolerances) -> Result<(ComplexMatrix, ComplexMatrix)> {
    p.validate(tol)?;
    let (a, b) = (p.alpha, p.beta);
    let off = b + 2.0 * a;
    let s_phi = ComplexMatrix::from_real_rows(&[&[1.0 + a * a, off], &[off, 4.0 + b * b]])?;
    let k = 1.0 / (p.denominator() * p.denominator());
    let s_psi = ComplexMatrix::from_real_rows(&[&[k * (4.0 + b * b), -k * off], &[-k * off, k * (1.0 + a * a)]])?;
    Ok((s_phi, s_psi))
}

/// V_φHV_φ: the same matrix with both eigenvalues conjugated.
pub fn closed_form_hphiphi(p: &TwoLevelParams, tol: &Tolerances) -> Result<ComplexMatrix> {
    build_h(&p.conjugated(), tol)
}

/// The generic biorthogonal pipeline applied to `build_h(p)`, with pairs put
/// in the order (E₁, E₂) and rescaled to the fixed normalization.
pub fn pipeline_system(p: &TwoLevelParams, tol: &Tolerances) -> Result<BiorthogonalSystem> {
    let h = build_h(p, tol)?;
    let sys = build_system(&h, tol)?;
    let e = sys.eigenvalues();
    let order = if (e[0] - p.e1).norm() <= (e[1] - p.e1).norm() { [0, 1] } else { [1, 0] };
    let sys = sys.permuted(&order)?;
    let scales = [C64::new(1.0, 0.0) / sys.phi()[(0, 0)], C64::new(2.0, 0.0) / sys.phi()[(1, 1)]];
    sys.rescaled(&scales)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    #[default]
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

fn default_phase() -> f64 {
    -FRAC_PI_2
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DasGreenwoodParams {
    pub r: f64,
    pub s: f64,
    pub t: f64,
    pub theta: f64,
    /// The phase Φ of the off-diagonal entries.
    #[serde(default = "default_phase")]
    pub phase: f64,
}

impl DasGreenwoodParams {
    pub fn new(r: f64, s: f64, t: f64, theta: f64) -> Self {
        Self { r, s, t, theta, phase: default_phase() }
    }

    /// r²sin²θ − ts; positive in the broken regime.
    pub fn discriminant(&self) -> f64 {
        let rs = self.r * self.theta.sin();
        rs * rs - self.t * self.s
    }

    /// r cosθ ± √(−D), the eigenvalues in closed form.
    pub fn eigenvalues(&self) -> [C64; 2] {
        let center = C64::new(self.r * self.theta.cos(), 0.0);
        let root = C64::new(-self.discriminant(), 0.0).sqrt();
        [center + root, center - root]
    }
}

pub fn das_greenwood_h(dg: &DasGreenwoodParams) -> ComplexMatrix {
    let (r, s, t) = (C64::new(dg.r, 0.0), C64::new(dg.s, 0.0), C64::new(dg.t, 0.0));
    let e = |x: f64| C64::from_polar(1.0, x);
    ComplexMatrix::from_rows(vec![
        vec![r * e(dg.theta), s * e(dg.phase)],
        vec![t * e(-dg.phase), r * e(-dg.theta)],
    ])
    .expect("2×2 literal")
}

/// Parameters (α, β, E₁, E₂) that reproduce h at Φ = −π/2. Only defined in
/// the broken regime, where α and β come out real.
pub fn map_das_greenwood(dg: &DasGreenwoodParams, branch: Branch, tol: &Tolerances) -> Result<TwoLevelParams> {
    if (dg.phase + FRAC_PI_2).abs() > tol.eig {
        return Err(Error::InvalidArgument(format!("the mapping needs Φ = −π/2, got {}", dg.phase)));
    }
    if dg.s == 0.0 || dg.t == 0.0 {
        return Err(Error::DegenerateParam("s and t must be non-zero".into()));
    }
    let discriminant = dg.discriminant();
    if discriminant <= 0.0 {
        return Err(Error::NotBrokenRegime { discriminant });
    }
    let beta = (dg.r * dg.theta.sin() + branch.sign() * discriminant.sqrt()) / dg.s;
    let alpha = 2.0 * beta * dg.s / dg.t;
    if alpha == 0.0 {
        return Err(Error::DegenerateParam("mapping gives α = 0".into()));
    }
    let re = dg.r * dg.theta.cos();
    let im = (2.0 - alpha * beta) / (2.0 * alpha) * dg.s;
    let p = TwoLevelParams::new(alpha, beta, C64::new(re, im), C64::new(re, -im));
    let mapped = build_h(&p, tol)?;
    let residual = frobenius_residual(&mapped, &das_greenwood_h(dg))?;
    if residual > tol.eig {
        return Err(Error::Construction { relation: "H(α, β, E₁, E₂) = h".into(), residual });
    }
    Ok(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Broken,
    Unbroken,
    ExceptionalPoint,
}

/// Sign of the discriminant, with a `tol.gap` band around the exceptional point.
pub fn classify_regime(dg: &DasGreenwoodParams, tol: &Tolerances) -> Regime {
    let d = dg.discriminant();
    if d.abs() <= tol.gap {
        Regime::ExceptionalPoint
    } else if d > 0.0 {
        Regime::Broken
    } else {
        Regime::Unbroken
    }
}

/// Regime read off a computed spectrum: broken when some eigenvalue has
/// |Im E| above `threshold`.
pub fn regime_from_eigenvalues(eigenvalues: &[C64], threshold: f64) -> Regime {
    if eigenvalues.iter().any(|e| e.im.abs() > threshold) {
        Regime::Broken
    } else {
        Regime::Unbroken
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::general_eig;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn decoupled_limit_is_diagonal() {
        let p = TwoLevelParams::new(0.0, 0.0, c(1.0, 2.0), c(-1.0, 0.5));
        let h = build_h(&p, &tol()).unwrap();
        assert_eq!(h, ComplexMatrix::diag(&[c(1.0, 2.0), c(-1.0, 0.5)]));
        let (s_phi, s_psi) = closed_form_metrics(&p, &tol()).unwrap();
        assert_eq!(s_phi, ComplexMatrix::diag(&[c(1.0, 0.0), c(4.0, 0.0)]));
        assert_eq!(s_psi, ComplexMatrix::diag(&[c(1.0, 0.0), c(0.25, 0.0)]));
    }

    #[test]
    fn unit_coupling_matrix() {
        let p = TwoLevelParams::new(1.0, 1.0, c(1.0, 1.0), c(1.0, -1.0));
        let h = build_h(&p, &tol()).unwrap();
        let expected = ComplexMatrix::from_rows(vec![vec![c(1.0, 3.0), c(0.0, -2.0)], vec![c(0.0, 4.0), c(1.0, -3.0)]]).unwrap();
        assert!(frobenius_residual(&h, &expected).unwrap() < 1e-15);
        assert!((h.trace() - c(2.0, 0.0)).norm() < 1e-15);

        let p = TwoLevelParams::new(1.0, 0.0, c(2.0, 0.0), c(1.0, 0.0));
        let expected = ComplexMatrix::from_real_rows(&[&[2.0, -0.5], &[0.0, 1.0]]).unwrap();
        assert!(frobenius_residual(&build_h(&p, &tol()).unwrap(), &expected).unwrap() < 1e-15);
    }

    #[test]
    fn degenerate_parameters() {
        let p = TwoLevelParams::new(1.0, 2.0, c(1.0, 0.0), c(2.0, 0.0));
        assert!(matches!(build_h(&p, &tol()), Err(Error::DegenerateParam(_))));
        assert!(matches!(closed_form_eigensystem(&p, &tol()), Err(Error::DegenerateParam(_))));
        let p = TwoLevelParams::new(1.0, 1.0, c(1.0, 0.0), c(1.0, 0.0));
        assert!(matches!(closed_form_metrics(&p, &tol()), Err(Error::DegenerateParam(_))));
    }

    #[test]
    fn closed_form_eigensystem_values() {
        let p = TwoLevelParams::new(1.0, 1.0, c(1.0, 1.0), c(1.0, -1.0));
        let cf = closed_form_eigensystem(&p, &tol()).unwrap();
        assert_eq!(cf.psi1, ComplexVector::from_real(&[2.0, -1.0]).unwrap());
        assert_eq!(cf.psi2, ComplexVector::from_real(&[-1.0, 1.0]).unwrap());

        let p = TwoLevelParams::new(2.0, 3.0, c(0.5, 0.0), c(-1.0, 0.0));
        let cf = closed_form_eigensystem(&p, &tol()).unwrap();
        let dot = |a: &ComplexVector, b: &ComplexVector| crate::numerics::scalar_product(a, b).unwrap();
        assert!((dot(&cf.phi1, &cf.psi1) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(dot(&cf.phi1, &cf.psi2).norm() < 1e-15);
        let h = build_h(&p, &tol()).unwrap();
        let hv = h.apply(&cf.phi2).unwrap();
        assert!(crate::numerics::vector_residual(&hv, &cf.phi2.scale(p.e2)).unwrap() < 1e-15);
    }

    #[test]
    fn metrics_are_mutually_inverse() {
        let p = TwoLevelParams::new(1.0, 1.0, c(1.0, 1.0), c(1.0, -1.0));
        let (s_phi, s_psi) = closed_form_metrics(&p, &tol()).unwrap();
        assert_eq!(s_phi, ComplexMatrix::from_real_rows(&[&[2.0, 3.0], &[3.0, 5.0]]).unwrap());
        assert_eq!(s_psi, ComplexMatrix::from_real_rows(&[&[5.0, -3.0], &[-3.0, 2.0]]).unwrap());
        let p = TwoLevelParams::new(-0.7, 2.3, c(1.0, 1.0), c(1.0, -1.0));
        let (s_phi, s_psi) = closed_form_metrics(&p, &tol()).unwrap();
        assert!(frobenius_residual(&(&s_phi * &s_psi), &ComplexMatrix::identity(2)).unwrap() < 1e-12);
    }

    #[test]
    fn hphiphi_conjugates_eigenvalues() {
        let p = TwoLevelParams::new(1.0, 1.0, c(1.0, 1.0), c(1.0, -1.0));
        let expected = ComplexMatrix::from_rows(vec![vec![c(1.0, -3.0), c(0.0, 2.0)], vec![c(0.0, -4.0), c(1.0, 3.0)]]).unwrap();
        assert!(frobenius_residual(&closed_form_hphiphi(&p, &tol()).unwrap(), &expected).unwrap() < 1e-15);
        let real = TwoLevelParams::new(0.4, -1.2, c(3.0, 0.0), c(1.0, 0.0));
        assert_eq!(closed_form_hphiphi(&real, &tol()).unwrap(), build_h(&real, &tol()).unwrap());
    }

    #[test]
    fn pipeline_reproduces_fixed_normalization() {
        let p = TwoLevelParams::new(1.0, 1.0, c(1.0, 1.0), c(1.0, -1.0));
        let sys = pipeline_system(&p, &tol()).unwrap();
        let (s_phi, _) = closed_form_metrics(&p, &tol()).unwrap();
        assert!(frobenius_residual(sys.s_phi(), &s_phi).unwrap() < 1e-12);
        assert!((sys.eigenvalues()[0] - p.e1).norm() < 1e-12);
    }

    #[test]
    fn das_greenwood_round_trip() {
        let dg = DasGreenwoodParams::new(1.0, 1.0, -1.0, PI / 2.0);
        for branch in [Branch::Plus, Branch::Minus] {
            let p = map_das_greenwood(&dg, branch, &tol()).unwrap();
            assert!(frobenius_residual(&build_h(&p, &tol()).unwrap(), &das_greenwood_h(&dg)).unwrap() < 1e-12);
            assert!(p.e1.re.abs() < 1e-15);
            let mut eig: Vec<C64> = general_eig(&das_greenwood_h(&dg), &tol()).unwrap().eigenvalues;
            let mut mine = [p.e1, p.e2];
            eig.sort_by(|a, b| a.im.total_cmp(&b.im));
            mine.sort_by(|a, b| a.im.total_cmp(&b.im));
            assert!((eig[0] - mine[0]).norm() < 1e-12 && (eig[1] - mine[1]).norm() < 1e-12);
        }
    }

    #[test]
    fn mapping_rejects_outside_broken_regime() {
        let ur = DasGreenwoodParams::new(1.0, 1.0, 1.0, 0.0);
        assert!(matches!(map_das_greenwood(&ur, Branch::Plus, &tol()), Err(Error::NotBrokenRegime { .. })));
        let zero_s = DasGreenwoodParams::new(1.0, 0.0, 1.0, 1.0);
        assert!(matches!(map_das_greenwood(&zero_s, Branch::Plus, &tol()), Err(Error::DegenerateParam(_))));
        let other_phase = DasGreenwoodParams { phase: 0.3, ..DasGreenwoodParams::new(2.0, 1.0, 1.0, 1.0) };
        assert!(map_das_greenwood(&other_phase, Branch::Plus, &tol()).is_err());
    }

    #[test]
    fn regime_classification() {
        let t = tol();
        assert_eq!(classify_regime(&DasGreenwoodParams::new(1.0, 1.0, 1.0, PI / 2.0), &t), Regime::ExceptionalPoint);
        assert_eq!(classify_regime(&DasGreenwoodParams::new(1.0, 1.0, 1.0, 0.0), &t), Regime::Unbroken);
        assert_eq!(classify_regime(&DasGreenwoodParams::new(2.0, 1.0, 1.0, PI / 2.0), &t), Regime::Broken);
    }

    #[test]
    fn closed_form_das_greenwood_eigenvalues() {
        let dg = DasGreenwoodParams { phase: 0.7, ..DasGreenwoodParams::new(1.3, 0.4, 2.0, 0.9) };
        let mut eig = general_eig(&das_greenwood_h(&dg), &tol()).unwrap().eigenvalues;
        let mut mine = dg.eigenvalues().to_vec();
        // broken regime: a conjugate pair, ordered by imaginary part
        eig.sort_by(|a, b| a.im.total_cmp(&b.im));
        mine.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((eig[0] - mine[0]).norm() < 1e-12 && (eig[1] - mine[1]).norm() < 1e-12);
    }

    #[test]
    fn config_shape() {
        let p: TwoLevelParams = serde_json::from_str(r#"{"alpha":1,"beta":1,"e1":"1+1i","e2":"1-1i"}"#).unwrap();
        assert_eq!(p.e2, c(1.0, -1.0));
        let dg: DasGreenwoodParams = serde_json::from_str(r#"{"r":1,"s":1,"t":-1,"theta":1.5}"#).unwrap();
        assert_eq!(dg.phase, -FRAC_PI_2);
        let b: Branch = serde_json::from_str(r#""-""#).unwrap();
        assert_eq!(b, Branch::Minus);
    }
}
