//! The antilinear intertwiners V_φ, V_Ψ and the operators derived from them.
//!
//! `V_φ f = Σ⟨f, Ψ_k⟩φ_k` has matrix part `ΦΨᵀ`, and `V_Ψ` has `ΨΦᵀ`.
//! Relations between antilinear operators are compared through their matrix
//! parts, which is equality on the whole space. A linear operator is never
//! compared against an antilinear one.

use serde::Serialize;

use crate::antilinear::{compose_aa, compose_al, compose_la, AntilinearOp};
use crate::biortho::{BiorthogonalSystem, MetricAdjoint};
use crate::error::{Error, Result};
use crate::numerics::{
    condition_number, frobenius_residual, general_eig, inverse, vector_residual, ComplexMatrix, Tolerances, C64,
};
use crate::report::Report;

#[derive(Clone, Debug)]
pub struct VOps {
    pub v_phi: AntilinearOp,
    pub v_psi: AntilinearOp,
}

/// V_φ and V_Ψ without any contract checking.
pub fn v_ops_unchecked(sys: &BiorthogonalSystem) -> Result<VOps> {
    Ok(VOps {
        v_phi: AntilinearOp::new(sys.phi().multiply(&sys.psi().transpose())?)?,
        v_psi: AntilinearOp::new(sys.psi().multiply(&sys.phi().transpose())?)?,
    })
}

/// Residuals of V_φ² = V_Ψ² = 𝟙, V_φ† = V_Ψ, V_φφ_k = φ_k and V_ΨΨ_k = Ψ_k.
pub fn v_ops_report(sys: &BiorthogonalSystem, ops: &VOps, threshold: f64) -> Result<Report> {
    let id = ComplexMatrix::identity(sys.dim());
    let mut r = Report::new("antilinear intertwiners");
    r.push("V_phi^2 = I", frobenius_residual(&compose_aa(&ops.v_phi, &ops.v_phi)?, &id)?, threshold);
    r.push("V_psi^2 = I", frobenius_residual(&compose_aa(&ops.v_psi, &ops.v_psi)?, &id)?, threshold);
    r.push("V_phi^dag = V_psi", ops.v_phi.adjoint().distance(&ops.v_psi)?, threshold);
    let fix_phi = (0..sys.dim())
        .map(|k| vector_residual(&ops.v_phi.apply(&sys.phi_k(k))?, &sys.phi_k(k)))
        .collect::<Result<Vec<_>>>()?;
    let fix_psi = (0..sys.dim())
        .map(|k| vector_residual(&ops.v_psi.apply(&sys.psi_k(k))?, &sys.psi_k(k)))
        .collect::<Result<Vec<_>>>()?;
    r.push("V_phi phi_k = phi_k", fix_phi.into_iter().fold(0.0, f64::max), threshold);
    r.push("V_psi psi_k = psi_k", fix_psi.into_iter().fold(0.0, f64::max), threshold);
    Ok(r)
}

/// V_φ and V_Ψ with their contracts enforced. Rounding in Ψ = (Φ⁻¹)† grows
/// like cond(Φ)², so the allowance is `tol.eig·max(1, cond(Φ)²)`.
pub fn build_v_ops(sys: &BiorthogonalSystem) -> Result<VOps> {
    let ops = v_ops_unchecked(sys)?;
    let cond = condition_number(sys.phi())?;
    let allowance = sys.tolerances().eig * (cond * cond).max(1.0);
    let report = v_ops_report(sys, &ops, allowance)?;
    if let Some(bad) = report.failures().next() {
        return Err(Error::Construction { relation: bad.name.clone(), residual: bad.residual });
    }
    Ok(ops)
}

#[derive(Clone, Debug)]
pub struct DerivedOperators {
    pub v: VOps,
    /// V_φH
    pub h_phi: AntilinearOp,
    /// HV_φ
    pub h_phi_tilde: AntilinearOp,
    /// V_φHV_φ, linear
    pub h_phiphi: ComplexMatrix,
    /// S_Ψ^{1/2} H_φ S_φ^{1/2}
    pub h0: AntilinearOp,
    /// S_Ψ^{1/2} H̃_φ S_φ^{1/2}
    pub h0_tilde: AntilinearOp,
    /// Columns e_k = S_Ψ^{1/2}φ_k.
    pub e_basis: ComplexMatrix,
}

pub fn build_derived(h: &ComplexMatrix, sys: &BiorthogonalSystem) -> Result<DerivedOperators> {
    let v = build_v_ops(sys)?;
    derived_from(h, sys, v)
}

/// Like `build_derived`, with V_φ, V_Ψ taken as given.
pub fn derived_from(h: &ComplexMatrix, sys: &BiorthogonalSystem, v: VOps) -> Result<DerivedOperators> {
    h.require_square("Hamiltonian")?;
    if h.rows() != sys.dim() {
        return Err(Error::Dimension(format!("H is {0}×{0}, system has dimension {1}", h.rows(), sys.dim())));
    }
    let h_phi = compose_al(&v.v_phi, h)?;
    let h_phi_tilde = compose_la(h, &v.v_phi)?;
    let h_phiphi = compose_aa(&h_phi, &v.v_phi)?;
    let sandwich = |x: &AntilinearOp| compose_la(sys.s_psi_sqrt(), &compose_al(x, sys.s_phi_sqrt())?);
    let h0 = sandwich(&h_phi)?;
    let h0_tilde = sandwich(&h_phi_tilde)?;
    let e_basis = sys.s_psi_sqrt().multiply(sys.phi())?;
    Ok(DerivedOperators { v, h_phi, h_phi_tilde, h_phiphi, h0, h0_tilde, e_basis })
}

/// H_φ† = H†V_Ψ, self-adjointness of H₀ and H̃₀, orthonormality of ℰ and
/// e_k = S_Ψ^{1/2}φ_k = S_φ^{1/2}Ψ_k.
pub fn check_derived_invariants(
    h: &ComplexMatrix,
    d: &DerivedOperators,
    sys: &BiorthogonalSystem,
    threshold: f64,
) -> Result<Report> {
    let mut r = Report::new("derived operators");
    r.push("H_phi^dag = H^dag V_psi", d.h_phi.adjoint().distance(&compose_la(&h.adjoint(), &d.v.v_psi)?)?, threshold);
    r.push("H0 self-adjoint", d.h0.matrix().symmetry_defect(), threshold);
    r.push("H0~ self-adjoint", d.h0_tilde.matrix().symmetry_defect(), threshold);
    r.push(
        "e_basis orthonormal",
        frobenius_residual(&d.e_basis.adjoint().multiply(&d.e_basis)?, &ComplexMatrix::identity(sys.dim()))?,
        threshold,
    );
    r.push(
        "e_k = s_phi_sqrt psi_k",
        frobenius_residual(&d.e_basis, &sys.s_phi_sqrt().multiply(sys.psi())?)?,
        threshold,
    );
    Ok(r)
}

/// S_ΨH_φ = H_φ†S_Ψ, H_φS_φ = S_φH_φ†, H̃_φS_φ = S_φH̃_φ†, H̃_φ†S_Ψ = S_ΨH̃_φ.
pub fn check_antilinear_intertwining(d: &DerivedOperators, sys: &BiorthogonalSystem, threshold: f64) -> Result<Report> {
    let (s_phi, s_psi) = (sys.s_phi(), sys.s_psi());
    let hd = d.h_phi.adjoint();
    let td = d.h_phi_tilde.adjoint();
    let mut r = Report::new("antilinear intertwining");
    r.push("S_psi H_phi = H_phi^dag S_psi", compose_la(s_psi, &d.h_phi)?.distance(&compose_al(&hd, s_psi)?)?, threshold);
    r.push("H_phi S_phi = S_phi H_phi^dag", compose_al(&d.h_phi, s_phi)?.distance(&compose_la(s_phi, &hd)?)?, threshold);
    r.push(
        "H_phi~ S_phi = S_phi H_phi~^dag",
        compose_al(&d.h_phi_tilde, s_phi)?.distance(&compose_la(s_phi, &td)?)?,
        threshold,
    );
    r.push(
        "H_phi~^dag S_psi = S_psi H_phi~",
        compose_al(&td, s_psi)?.distance(&compose_la(s_psi, &d.h_phi_tilde)?)?,
        threshold,
    );
    Ok(r)
}

fn max_eigen_residual(op: &AntilinearOp, basis: &ComplexMatrix, values: &[C64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (k, e) in values.iter().enumerate() {
        let v = basis.column(k);
        worst = worst.max(vector_residual(&op.apply(&v)?, &v.scale(*e))?);
    }
    Ok(worst)
}

/// Eigen-equations of the derived antilinear operators. Note that it is the
/// adjoint of H̃_φ, not of H_φ, that has Ψ_k with eigenvalue E_k.
pub fn check_isospectrality(d: &DerivedOperators, sys: &BiorthogonalSystem, threshold: f64) -> Result<Report> {
    let e = sys.eigenvalues();
    let e_bar: Vec<C64> = e.iter().map(|z| z.conj()).collect();
    let mut r = Report::new("isospectrality");
    r.push("H_phi phi_k = conj(E_k) phi_k", max_eigen_residual(&d.h_phi, sys.phi(), &e_bar)?, threshold);
    r.push("H_phi^dag psi_k = conj(E_k) psi_k", max_eigen_residual(&d.h_phi.adjoint(), sys.psi(), &e_bar)?, threshold);
    r.push("H_phi~ phi_k = E_k phi_k", max_eigen_residual(&d.h_phi_tilde, sys.phi(), e)?, threshold);
    r.push("H_phi~^dag psi_k = E_k psi_k", max_eigen_residual(&d.h_phi_tilde.adjoint(), sys.psi(), e)?, threshold);
    r.push("H0 e_k = conj(E_k) e_k", max_eigen_residual(&d.h0, &d.e_basis, &e_bar)?, threshold);
    r.push("H0~ e_k = E_k e_k", max_eigen_residual(&d.h0_tilde, &d.e_basis, e)?, threshold);
    Ok(r)
}

/// The four equivalent linear relations for H_{φ,φ}.
pub fn check_linear_intertwining(
    d: &DerivedOperators,
    sys: &BiorthogonalSystem,
    h: &ComplexMatrix,
    threshold: f64,
) -> Result<Report> {
    let (s_phi, s_psi) = (sys.s_phi(), sys.s_psi());
    let hpp = &d.h_phiphi;
    let mut r = Report::new("linear intertwining");
    r.push("S_psi H_phiphi = H^dag S_psi", frobenius_residual(&(s_psi * hpp), &(&h.adjoint() * s_psi))?, threshold);
    r.push("H_phiphi S_phi = S_phi H^dag", frobenius_residual(&(hpp * s_phi), &(s_phi * &h.adjoint()))?, threshold);
    r.push("S_phi H_phiphi^dag = H S_phi", frobenius_residual(&(s_phi * &hpp.adjoint()), &(h * s_phi))?, threshold);
    r.push("S_psi H = H_phiphi^dag S_psi", frobenius_residual(&(s_psi * h), &(&hpp.adjoint() * s_psi))?, threshold);
    Ok(r)
}

/// H_φ = H_φ♯, H_φ† = (H_φ†)♭ and the same for H̃_φ.
pub fn check_metric_selfadjointness(d: &DerivedOperators, sys: &BiorthogonalSystem, threshold: f64) -> Result<Report> {
    let hd = d.h_phi.adjoint();
    let td = d.h_phi_tilde.adjoint();
    let mut r = Report::new("metric self-adjointness");
    r.push("H_phi = H_phi^sharp", d.h_phi.sharp(sys)?.distance(&d.h_phi)?, threshold);
    r.push("H_phi^dag = (H_phi^dag)^flat", hd.flat(sys)?.distance(&hd)?, threshold);
    r.push("H_phi~ = H_phi~^sharp", d.h_phi_tilde.sharp(sys)?.distance(&d.h_phi_tilde)?, threshold);
    r.push("H_phi~^dag = (H_phi~^dag)^flat", td.flat(sys)?.distance(&td)?, threshold);
    Ok(r)
}

/// Every intertwining check in one table.
pub fn full_report(h: &ComplexMatrix, d: &DerivedOperators, sys: &BiorthogonalSystem, threshold: f64) -> Result<Report> {
    let mut r = Report::new("intertwining relations");
    r.merge(v_ops_report(sys, &d.v, threshold)?);
    r.merge(check_derived_invariants(h, d, sys, threshold)?);
    r.merge(check_antilinear_intertwining(d, sys, threshold)?);
    r.merge(check_isospectrality(d, sys, threshold)?);
    r.merge(check_linear_intertwining(d, sys, h, threshold)?);
    r.merge(check_metric_selfadjointness(d, sys, threshold)?);
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct SimilaritySample {
    #[serde(with = "crate::numerics::serde_text::complex_vec")]
    pub spectrum: Vec<C64>,
    /// Largest distance to the matched eigenvalue of H, relative to max(1, max|E|).
    pub spectrum_mismatch: f64,
    pub max_abs_imag: f64,
    /// ‖XHX⁻¹ − (XHX⁻¹)†‖_F / ‖XHX⁻¹‖_F
    pub hermitian_defect: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimilarityDemo {
    pub samples: Vec<SimilaritySample>,
    pub report: Report,
}

/// Greedy nearest matching; returns the largest matched distance.
fn spectrum_distance(a: &[C64], b: &[C64]) -> f64 {
    let mut unused: Vec<C64> = b.to_vec();
    let mut worst: f64 = 0.0;
    for x in a {
        let (idx, dist) = unused
            .iter()
            .enumerate()
            .map(|(i, y)| (i, (x - y).norm()))
            .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
        worst = worst.max(dist);
        unused.swap_remove(idx);
    }
    worst
}

/// Numerical witness that no invertible X makes XHX⁻¹ self-adjoint when H has
/// a non-real eigenvalue: every sampled similarity keeps the spectrum, hence
/// keeps a non-real eigenvalue.
pub fn no_selfadjoint_similarity_demo(
    h: &ComplexMatrix,
    samples: &[ComplexMatrix],
    match_tol: f64,
    tol: &Tolerances,
) -> Result<SimilarityDemo> {
    let base = general_eig(h, tol)?.eigenvalues;
    let scale = base.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if base.iter().all(|z| z.im.abs() <= tol.gap * scale) {
        return Err(Error::InvalidArgument("H has a real spectrum; nothing to demonstrate".into()));
    }
    let mut report = Report::new("no self-adjoint similarity");
    let mut out = Vec::with_capacity(samples.len());
    for (i, x) in samples.iter().enumerate() {
        let x_inv = inverse(x, tol)?;
        let hx = x.multiply(h)?.multiply(&x_inv)?;
        let spectrum = general_eig(&hx, tol)?.eigenvalues;
        let sample = SimilaritySample {
            spectrum_mismatch: spectrum_distance(&spectrum, &base) / scale,
            max_abs_imag: spectrum.iter().map(|z| z.im.abs()).fold(0.0, f64::max),
            hermitian_defect: hx.hermitian_defect(),
            spectrum,
        };
        report.push(format!("sample {i}: spectrum preserved"), sample.spectrum_mismatch, match_tol);
        report.push_lower_bound(format!("sample {i}: non-real eigenvalue"), sample.max_abs_imag, tol.gap * scale);
        report.push_lower_bound(format!("sample {i}: not hermitian"), sample.hermitian_defect, tol.gap);
        out.push(sample);
    }
    Ok(SimilarityDemo { samples: out, report })
}
