//! Biorthogonal eigensystems, metric operators and the deformed scalar products.
//!
//! For a diagonalizable `H` with eigenvector matrix `Φ` the biorthogonal partner
//! is `Ψ = (Φ⁻¹)†`, so that `Ψ†Φ = 𝟙`. The metrics are `S_φ = ΦΦ†` and
//! `S_Ψ = ΨΨ† = S_φ⁻¹`.

use serde::Serialize;

use crate::antilinear::{compose_al, compose_la, AntilinearOp};
use crate::error::{Error, Result};
use crate::numerics::{
    frobenius_residual, general_eig, inverse, positive_sqrt, scalar_product, singular_values, ComplexMatrix,
    ComplexVector, Tolerances, C64,
};
use crate::report::Report;

#[derive(Clone, Debug, Serialize)]
pub struct BiorthogonalSystem {
    #[serde(with = "crate::numerics::serde_text::complex_vec")]
    eigenvalues: Vec<C64>,
    #[serde(with = "crate::numerics::serde_text::matrix")]
    phi: ComplexMatrix,
    #[serde(with = "crate::numerics::serde_text::matrix")]
    psi: ComplexMatrix,
    #[serde(with = "crate::numerics::serde_text::matrix")]
    s_phi: ComplexMatrix,
    #[serde(with = "crate::numerics::serde_text::matrix")]
    s_psi: ComplexMatrix,
    #[serde(with = "crate::numerics::serde_text::matrix")]
    s_phi_sqrt: ComplexMatrix,
    #[serde(with = "crate::numerics::serde_text::matrix")]
    s_psi_sqrt: ComplexMatrix,
    #[serde(skip)]
    tol: Tolerances,
}

/// Eigen-decomposes `h`; columns of Φ are unit vectors and Ψ absorbs the scale.
pub fn build_system(h: &ComplexMatrix, tol: &Tolerances) -> Result<BiorthogonalSystem> {
    let eig = general_eig(h, tol)?;
    if eig.condition_estimate > tol.cond_max {
        return Err(Error::IllConditionedBasis { cond: eig.condition_estimate, limit: tol.cond_max });
    }
    let psi = inverse(&eig.right_vectors, tol)?.adjoint();
    BiorthogonalSystem::from_bases(eig.eigenvalues, eig.right_vectors, psi, tol)
}

impl BiorthogonalSystem {
    /// Assembles a system from given bases without checking biorthogonality;
    /// `invariants_report` tells whether the result is consistent.
    pub fn from_bases(eigenvalues: Vec<C64>, phi: ComplexMatrix, psi: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let n = phi.require_square("Φ")?;
        if psi.rows() != n || psi.cols() != n || eigenvalues.len() != n {
            return Err(Error::Dimension(format!(
                "{} eigenvalues, Φ {n}×{n}, Ψ {}×{}",
                eigenvalues.len(),
                psi.rows(),
                psi.cols()
            )));
        }
        let s_phi = (&phi * &phi.adjoint()).hermitian_part();
        let s_psi = (&psi * &psi.adjoint()).hermitian_part();
        let s_phi_sqrt = positive_sqrt(&s_phi, tol)?;
        let s_psi_sqrt = positive_sqrt(&s_psi, tol)?;
        Ok(Self { eigenvalues, phi, psi, s_phi, s_psi, s_phi_sqrt, s_psi_sqrt, tol: *tol })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[C64] {
        &self.eigenvalues
    }

    pub fn phi(&self) -> &ComplexMatrix {
        &self.phi
    }

    pub fn psi(&self) -> &ComplexMatrix {
        &self.psi
    }

    pub fn s_phi(&self) -> &ComplexMatrix {
        &self.s_phi
    }

    pub fn s_psi(&self) -> &ComplexMatrix {
        &self.s_psi
    }

    pub fn s_phi_sqrt(&self) -> &ComplexMatrix {
        &self.s_phi_sqrt
    }

    pub fn s_psi_sqrt(&self) -> &ComplexMatrix {
        &self.s_psi_sqrt
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub fn phi_k(&self, k: usize) -> ComplexVector {
        self.phi.column(k)
    }

    pub fn psi_k(&self, k: usize) -> ComplexVector {
        self.psi.column(k)
    }

    /// Uses the pair freedom φ_k → λ_kφ_k, Ψ_k → Ψ_k/λ̄_k, which keeps
    /// ⟨φ_k, Ψ_l⟩ = δ_kl but changes both metrics.
    pub fn rescaled(&self, scales: &[C64]) -> Result<Self> {
        if scales.len() != self.dim() {
            return Err(Error::Dimension(format!("{} scales for {} pairs", scales.len(), self.dim())));
        }
        if scales.iter().any(|s| s.norm() == 0.0 || !s.is_finite()) {
            return Err(Error::InvalidArgument("pair scales must be finite and non-zero".into()));
        }
        let mut phi = self.phi.clone();
        let mut psi = self.psi.clone();
        for (k, s) in scales.iter().enumerate() {
            phi.set_column(k, &self.phi.column(k).scale(*s));
            psi.set_column(k, &self.psi.column(k).scale(C64::new(1.0, 0.0) / s.conj()));
        }
        Self::from_bases(self.eigenvalues.clone(), phi, psi, &self.tol)
    }

    /// Reorders the pairs; `order[k]` is the old index of the new pair k.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let n = self.dim();
        let mut seen = vec![false; n];
        for &i in order {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidArgument(format!("{order:?} is not a permutation of 0..{n}")));
            }
        }
        if order.len() != n {
            return Err(Error::InvalidArgument(format!("{order:?} is not a permutation of 0..{n}")));
        }
        let eigenvalues = order.iter().map(|&i| self.eigenvalues[i]).collect();
        let phi = ComplexMatrix::from_columns(&order.iter().map(|&i| self.phi.column(i)).collect::<Vec<_>>())?;
        let psi = ComplexMatrix::from_columns(&order.iter().map(|&i| self.psi.column(i)).collect::<Vec<_>>())?;
        Self::from_bases(eigenvalues, phi, psi, &self.tol)
    }

    /// Residual table of every structural invariant, plus the eigen-equations
    /// HΦ = ΦD and H†Ψ = ΨD̄ for the Hamiltonian `h`.
    pub fn invariants_report(&self, h: &ComplexMatrix, threshold: f64) -> Result<Report> {
        let n = self.dim();
        let id = ComplexMatrix::identity(n);
        let d = ComplexMatrix::diag(&self.eigenvalues);
        let d_bar = d.conj();
        let mut r = Report::new("biorthogonal system");
        r.push("biorthogonality psi^dag phi = I", frobenius_residual(&self.psi.adjoint().multiply(&self.phi)?, &id)?, threshold);
        r.push("resolution phi psi^dag = I", frobenius_residual(&self.phi.multiply(&self.psi.adjoint())?, &id)?, threshold);
        r.push("resolution psi phi^dag = I", frobenius_residual(&self.psi.multiply(&self.phi.adjoint())?, &id)?, threshold);
        r.push("s_phi s_psi = I", frobenius_residual(&self.s_phi.multiply(&self.s_psi)?, &id)?, threshold);
        r.push("s_phi hermitian", self.s_phi.hermitian_defect(), threshold);
        r.push("s_psi hermitian", self.s_psi.hermitian_defect(), threshold);
        r.push(
            "s_phi_sqrt^2 = s_phi",
            frobenius_residual(&self.s_phi_sqrt.multiply(&self.s_phi_sqrt)?, &self.s_phi)?,
            threshold,
        );
        r.push(
            "s_psi_sqrt s_phi_sqrt = I",
            frobenius_residual(&self.s_psi_sqrt.multiply(&self.s_phi_sqrt)?, &id)?,
            threshold,
        );
        r.push("s_phi psi_k = phi_k", frobenius_residual(&self.s_phi.multiply(&self.psi)?, &self.phi)?, threshold);
        r.push("s_psi phi_k = psi_k", frobenius_residual(&self.s_psi.multiply(&self.phi)?, &self.psi)?, threshold);
        r.push("H phi_k = E_k phi_k", frobenius_residual(&h.multiply(&self.phi)?, &self.phi.multiply(&d)?)?, threshold);
        r.push(
            "H^dag psi_k = conj(E_k) psi_k",
            frobenius_residual(&h.adjoint().multiply(&self.psi)?, &self.psi.multiply(&d_bar)?)?,
            threshold,
        );
        Ok(r)
    }

    /// ⟨f, g⟩_φ = ⟨S_φ f, g⟩.
    pub fn inner_phi(&self, f: &ComplexVector, g: &ComplexVector) -> Result<C64> {
        scalar_product(&self.s_phi.apply(f)?, g)
    }

    /// ⟨f, g⟩_Ψ = ⟨S_Ψ f, g⟩.
    pub fn inner_psi(&self, f: &ComplexVector, g: &ComplexVector) -> Result<C64> {
        scalar_product(&self.s_psi.apply(f)?, g)
    }

    pub fn norm_phi(&self, f: &ComplexVector) -> Result<f64> {
        Ok(self.s_phi_sqrt.apply(f)?.norm())
    }

    /// Coefficients c_k = ⟨Ψ_k, f⟩ of f = Σ c_k φ_k.
    pub fn coefficients(&self, f: &ComplexVector) -> Result<ComplexVector> {
        self.psi.adjoint().apply(f)
    }
}

/// Largest singular value.
pub fn spectral_norm(a: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(a)?[0])
}

/// Adjoints with respect to the deformed scalar products:
/// X♭ = S_Ψ X† S_φ (for ⟨·,·⟩_φ) and X♯ = S_φ X† S_Ψ (for ⟨·,·⟩_Ψ).
///
/// For an antilinear operand the dagger is the antilinear adjoint, and the
/// defining relation reads ⟨X♯f, g⟩_Ψ = ⟨Xg, f⟩_Ψ.
pub trait MetricAdjoint: Sized {
    fn flat(&self, sys: &BiorthogonalSystem) -> Result<Self>;
    fn sharp(&self, sys: &BiorthogonalSystem) -> Result<Self>;
}

impl MetricAdjoint for ComplexMatrix {
    fn flat(&self, sys: &BiorthogonalSystem) -> Result<Self> {
        sys.s_psi.multiply(&self.adjoint())?.multiply(&sys.s_phi)
    }

    fn sharp(&self, sys: &BiorthogonalSystem) -> Result<Self> {
        sys.s_phi.multiply(&self.adjoint())?.multiply(&sys.s_psi)
    }
}

impl MetricAdjoint for AntilinearOp {
    fn flat(&self, sys: &BiorthogonalSystem) -> Result<Self> {
        compose_la(&sys.s_psi, &compose_al(&self.adjoint(), &sys.s_phi)?)
    }

    fn sharp(&self, sys: &BiorthogonalSystem) -> Result<Self> {
        compose_la(&sys.s_phi, &compose_al(&self.adjoint(), &sys.s_psi)?)
    }
}

pub fn flat_adjoint<X: MetricAdjoint>(x: &X, sys: &BiorthogonalSystem) -> Result<X> {
    x.flat(sys)
}

pub fn sharp_adjoint<X: MetricAdjoint>(x: &X, sys: &BiorthogonalSystem) -> Result<X> {
    x.sharp(sys)
}
