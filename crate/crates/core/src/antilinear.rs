//! Antilinear operators on ℂⁿ.
//!
//! Every antilinear map is stored in the canonical form `f ↦ M·conj(f)`, so
//! the operator is determined by its matrix part `M` alone. In this
//! representation
//!
//! * the antilinear adjoint, defined by `⟨V†φ, ϕ⟩ = ⟨Vϕ, φ⟩`, has matrix part `Mᵀ`;
//! * `V₁V₂` is linear with matrix `M₁·conj(M₂)`;
//! * `A·V` has matrix part `A·M` and `V·A` has matrix part `M·conj(A)`.
//!
//! Linear and antilinear operators are distinct types; there is no way to
//! form a mixed sum `A + V`, which is neither linear nor antilinear.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numerics::{
    condition_number, frobenius_residual, scalar_product, vector_residual, ComplexMatrix, ComplexVector, Tolerances, C64, I,
};

#[derive(Clone, Debug, PartialEq)]
pub struct AntilinearOp {
    m: ComplexMatrix,
}

impl AntilinearOp {
    pub fn new(matrix_part: ComplexMatrix) -> Result<Self> {
        matrix_part.require_square("antilinear matrix part")?;
        Ok(Self { m: matrix_part })
    }

    /// Entrywise complex conjugation on ℂⁿ.
    pub fn conjugation(n: usize) -> Self {
        Self { m: ComplexMatrix::identity(n) }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn apply(&self, f: &ComplexVector) -> Result<ComplexVector> {
        self.m.apply(&f.conj())
    }

    pub fn adjoint(&self) -> Self {
        Self { m: self.m.transpose() }
    }

    /// V = V† holds exactly when the matrix part is symmetric.
    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        self.m.symmetry_defect() <= tol
    }

    /// Relative Frobenius distance between matrix parts.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        frobenius_residual(&self.m, &other.m)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.distance(other).is_ok_and(|d| d <= tol)
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim() == n {
            Ok(())
        } else {
            Err(Error::Dimension(format!("operator of dimension {} combined with dimension {n}", self.dim())))
        }
    }
}

/// V₁∘V₂, a linear operator.
pub fn compose_aa(v1: &AntilinearOp, v2: &AntilinearOp) -> Result<ComplexMatrix> {
    v1.m.multiply(&v2.m.conj())
}

/// A∘V.
pub fn compose_la(a: &ComplexMatrix, v: &AntilinearOp) -> Result<AntilinearOp> {
    a.require_square("linear factor")?;
    v.check_dim(a.rows())?;
    AntilinearOp::new(a.multiply(&v.m)?)
}

/// V∘A.
pub fn compose_al(v: &AntilinearOp, a: &ComplexMatrix) -> Result<AntilinearOp> {
    a.require_square("linear factor")?;
    v.check_dim(a.rows())?;
    AntilinearOp::new(v.m.multiply(&a.conj())?)
}

/// Whether (V₁V₂)† = V₂†V₁† holds to `tol`; both sides are linear.
pub fn anti_adjoint_product_rule_check(v1: &AntilinearOp, v2: &AntilinearOp, tol: f64) -> Result<bool> {
    let lhs = compose_aa(v1, v2)?.adjoint();
    let rhs = compose_aa(&v2.adjoint(), &v1.adjoint())?;
    Ok(frobenius_residual(&lhs, &rhs)? <= tol)
}

/// Given an antilinear `v` that fixes every vector of a spanning `basis`,
/// confirms that `v` is nevertheless not the identity: `v(i·b₀) = −i·b₀`.
pub fn antilinear_fixes_basis_but_not_identity(basis: &[ComplexVector], v: &AntilinearOp, tol: &Tolerances) -> Result<bool> {
    let n = v.dim();
    if basis.len() != n {
        return Err(Error::InvalidArgument(format!("{} vectors cannot span a space of dimension {n}", basis.len())));
    }
    let b = ComplexMatrix::from_columns(basis)?;
    v.check_dim(b.rows())?;
    if condition_number(&b)? > tol.cond_max {
        return Err(Error::InvalidArgument("basis vectors are linearly dependent".into()));
    }
    for (index, bj) in basis.iter().enumerate() {
        let residual = vector_residual(&v.apply(bj)?, bj)?;
        if residual > tol.eig {
            return Err(Error::NotFixed { index, residual });
        }
    }
    let b0 = &basis[0];
    let image = v.apply(&b0.scale(I))?;
    let matches_antilinear = vector_residual(&image, &b0.scale(-I))? <= tol.eig;
    let matches_identity = vector_residual(&image, &b0.scale(I))? <= tol.eig;
    Ok(matches_antilinear && !matches_identity)
}

/// `Vf = α⟨f, ψ⟩ψ`: self-adjoint, yet `Vψ = αψ` with non-real `α`.
pub fn rank_one_selfadjoint_example(psi: &ComplexVector, alpha: C64, tol: &Tolerances) -> Result<AntilinearOp> {
    if (psi.norm() - 1.0).abs() > tol.eig {
        return Err(Error::Normalization(format!("ψ must be a unit vector, has norm {}", psi.norm())));
    }
    if alpha.im == 0.0 {
        return Err(Error::InvalidArgument("α must have a non-zero imaginary part".into()));
    }
    AntilinearOp::new(ComplexMatrix::outer_transpose(psi, psi).scale(alpha))
}

#[derive(Clone, Debug, Serialize)]
pub struct PairOverlap {
    pub j: usize,
    pub k: usize,
    /// | |E_j| − |E_k| |
    pub modulus_gap: f64,
    #[serde(with = "crate::numerics::serde_text::complex")]
    pub overlap: C64,
    pub orthogonality_required: bool,
    pub satisfied: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrthogonalityReport {
    /// Residual of V²φ_j = |E_j|²φ_j per pair.
    pub square_residuals: Vec<f64>,
    pub pairs: Vec<PairOverlap>,
    pub tolerance: f64,
}

impl OrthogonalityReport {
    pub fn holds(&self) -> bool {
        self.square_residuals.iter().all(|r| *r <= self.tolerance) && self.pairs.iter().all(|p| p.satisfied)
    }
}

/// Eigenvectors of an antilinear `v` whose eigenvalues differ in modulus are
/// orthogonal, because they are eigenvectors of the self-adjoint linear V²
/// with eigenvalues |E|². Equal moduli impose nothing.
pub fn v_squared_orthogonality_check(
    v: &AntilinearOp,
    pairs: &[(ComplexVector, C64)],
    tol: &Tolerances,
) -> Result<OrthogonalityReport> {
    for (index, (phi, e)) in pairs.iter().enumerate() {
        let residual = vector_residual(&v.apply(phi)?, &phi.scale(*e))?;
        if residual > tol.eig {
            return Err(Error::NotEigenpair { index, residual });
        }
    }
    let v2 = compose_aa(v, v)?;
    let square_residuals = pairs
        .iter()
        .map(|(phi, e)| vector_residual(&v2.apply(phi)?, &phi.scale(C64::new(e.norm_sqr(), 0.0))))
        .collect::<Result<Vec<_>>>()?;

    let mut overlaps = Vec::new();
    for j in 0..pairs.len() {
        for k in j + 1..pairs.len() {
            let (pj, ej) = &pairs[j];
            let (pk, ek) = &pairs[k];
            let overlap = scalar_product(pj, pk)?;
            let modulus_gap = (ej.norm() - ek.norm()).abs();
            let orthogonality_required = modulus_gap > tol.gap;
            let normalized = overlap.norm() / (pj.norm() * pk.norm());
            overlaps.push(PairOverlap {
                j,
                k,
                modulus_gap,
                overlap,
                orthogonality_required,
                satisfied: !orthogonality_required || normalized <= tol.eig,
            });
        }
    }
    Ok(OrthogonalityReport { square_residuals, pairs: overlaps, tolerance: tol.eig })
}

#[derive(Serialize, Deserialize)]
struct AntilinearRepr {
    antilinear: bool,
    #[serde(with = "crate::numerics::serde_text::matrix")]
    matrix: ComplexMatrix,
}

impl Serialize for AntilinearOp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AntilinearRepr { antilinear: true, matrix: self.m.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AntilinearOp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = AntilinearRepr::deserialize(d)?;
        if !repr.antilinear {
            return Err(D::Error::custom("expected `\"antilinear\": true`"));
        }
        AntilinearOp::new(repr.matrix).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{ONE, ZERO};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn vec_c(entries: &[C64]) -> ComplexVector {
        ComplexVector::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn conjugation_action() {
        let v = AntilinearOp::conjugation(2);
        assert_eq!(v.apply(&vec_c(&[I, ONE])).unwrap(), vec_c(&[-I, ONE]));
        assert!(v.apply(&ComplexVector::zeros(2)).unwrap().is_zero());
        assert!(v.apply(&ComplexVector::zeros(3)).is_err());
    }

    #[test]
    fn swap_then_conjugate() {
        let swap = AntilinearOp::new(ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()).unwrap();
        let out = swap.apply(&vec_c(&[c(1.0, 1.0), c(2.0, 0.0)])).unwrap();
        assert_eq!(out, vec_c(&[c(2.0, 0.0), c(1.0, -1.0)]));
    }

    #[test]
    fn conjugation_is_self_adjoint_and_involutive() {
        let v = AntilinearOp::conjugation(3);
        assert_eq!(v.adjoint(), v);
        assert!(v.is_self_adjoint(0.0));
        assert_eq!(compose_aa(&v, &v).unwrap(), ComplexMatrix::identity(3));
    }

    #[test]
    fn composition_with_linear_operators() {
        let v = AntilinearOp::conjugation(2);
        let h = ComplexMatrix::from_rows(vec![vec![c(1.0, 3.0), c(0.0, -2.0)], vec![c(0.0, 4.0), c(1.0, -3.0)]]).unwrap();
        assert_eq!(compose_la(&ComplexMatrix::identity(2), &v).unwrap(), v);
        assert_eq!(compose_al(&v, &ComplexMatrix::identity(2)).unwrap(), v);
        assert_eq!(compose_la(&h, &v).unwrap().matrix(), &h);
        assert_eq!(compose_al(&v, &h).unwrap().matrix(), &h.conj());

        let d = ComplexMatrix::diag(&[I, I]);
        assert_eq!(compose_aa(&AntilinearOp::new(d.clone()).unwrap(), &v).unwrap(), d);
        assert!(compose_la(&ComplexMatrix::identity(3), &v).is_err());
    }

    #[test]
    fn rank_one_example_has_complex_eigenvalue() {
        let tol = Tolerances::default();
        let psi = ComplexVector::basis(2, 0);
        let v = rank_one_selfadjoint_example(&psi, I, &tol).unwrap();
        assert_eq!(v.matrix(), &ComplexMatrix::diag(&[I, ZERO]));
        assert_eq!(v.apply(&psi).unwrap(), psi.scale(I));
        assert_eq!(v.adjoint(), v);
    }

    #[test]
    fn rank_one_example_phase_scaled_eigenvectors() {
        let tol = Tolerances::default();
        let s = 0.5f64.sqrt();
        let psi = vec_c(&[c(s, 0.0), c(0.0, s)]);
        let alpha = c(0.3, 1.7);
        let v = rank_one_selfadjoint_example(&psi, alpha, &tol).unwrap();
        assert!(v.is_self_adjoint(1e-15));

        let z1 = C64::from_polar(1.0, PI / 4.0);
        let z2 = C64::from_polar(1.0, PI / 3.0);
        let (p1, p2) = (psi.scale(z1), psi.scale(z2));
        let (a1, a2) = (-I * alpha, -(alpha / 2.0) * c(1.0, 3f64.sqrt()));
        assert!(vector_residual(&v.apply(&p1).unwrap(), &p1.scale(a1)).unwrap() < 1e-15);
        assert!(vector_residual(&v.apply(&p2).unwrap(), &p2.scale(a2)).unwrap() < 1e-15);
        let overlap = scalar_product(&p1, &p2).unwrap();
        assert!((overlap - C64::from_polar(1.0, PI / 12.0)).norm() < 1e-15);

        let lambda = c(2.0, -0.5);
        let scaled = psi.scale(lambda);
        let expected = lambda.conj() / lambda * alpha;
        assert!(vector_residual(&v.apply(&scaled).unwrap(), &scaled.scale(expected)).unwrap() < 1e-15);
    }

    #[test]
    fn rank_one_example_argument_errors() {
        let tol = Tolerances::default();
        let long = vec_c(&[c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(rank_one_selfadjoint_example(&long, I, &tol), Err(Error::Normalization(_))));
        let unit = ComplexVector::basis(2, 1);
        assert!(rank_one_selfadjoint_example(&unit, ONE, &tol).is_err());
    }

    #[test]
    fn fixed_basis_does_not_make_identity() {
        let tol = Tolerances::default();
        let v = AntilinearOp::conjugation(2);
        let canonical = [ComplexVector::basis(2, 0), ComplexVector::basis(2, 1)];
        assert!(antilinear_fixes_basis_but_not_identity(&canonical, &v, &tol).unwrap());
        let real = [ComplexVector::from_real(&[1.0, 1.0]).unwrap(), ComplexVector::from_real(&[1.0, 2.0]).unwrap()];
        assert!(antilinear_fixes_basis_but_not_identity(&real, &v, &tol).unwrap());

        let complex_basis = [vec_c(&[I, ZERO]), ComplexVector::basis(2, 1)];
        assert!(matches!(
            antilinear_fixes_basis_but_not_identity(&complex_basis, &v, &tol),
            Err(Error::NotFixed { index: 0, .. })
        ));
        let dependent = [ComplexVector::basis(2, 0), ComplexVector::basis(2, 0)];
        assert!(antilinear_fixes_basis_but_not_identity(&dependent, &v, &tol).is_err());
    }

    #[test]
    fn v_squared_orthogonality_distinct_moduli() {
        let tol = Tolerances::default();
        let v = AntilinearOp::new(ComplexMatrix::diag(&[ONE, c(2.0, 0.0)])).unwrap();
        let pairs = vec![(ComplexVector::basis(2, 0), ONE), (ComplexVector::basis(2, 1), c(2.0, 0.0))];
        let report = v_squared_orthogonality_check(&v, &pairs, &tol).unwrap();
        assert!(report.holds());
        assert!(report.pairs[0].orthogonality_required);
        assert_eq!(report.pairs[0].overlap, ZERO);
        let v2 = compose_aa(&v, &v).unwrap();
        assert_eq!(v2.apply(&ComplexVector::basis(2, 1)).unwrap(), ComplexVector::basis(2, 1).scale(c(4.0, 0.0)));
    }

    #[test]
    fn v_squared_orthogonality_equal_moduli_imposes_nothing() {
        let tol = Tolerances::default();
        let psi = ComplexVector::basis(2, 0);
        let alpha = c(0.0, 1.0);
        let v = rank_one_selfadjoint_example(&psi, alpha, &tol).unwrap();
        let z1 = C64::from_polar(1.0, PI / 4.0);
        let z2 = C64::from_polar(1.0, PI / 3.0);
        let pairs = vec![
            (psi.scale(z1), -I * alpha),
            (psi.scale(z2), -(alpha / 2.0) * c(1.0, 3f64.sqrt())),
        ];
        let report = v_squared_orthogonality_check(&v, &pairs, &tol).unwrap();
        assert!(report.holds());
        assert!(!report.pairs[0].orthogonality_required);
        assert!((report.pairs[0].overlap - C64::from_polar(1.0, PI / 12.0)).norm() < 1e-15);

        let single = v_squared_orthogonality_check(&v, &pairs[..1], &tol).unwrap();
        assert!(single.holds() && single.pairs.is_empty());

        let wrong = vec![(psi.clone(), ONE)];
        assert!(matches!(v_squared_orthogonality_check(&v, &wrong, &tol), Err(Error::NotEigenpair { index: 0, .. })));
    }

    #[test]
    fn serialized_form_carries_antilinear_tag() {
        let v = AntilinearOp::new(ComplexMatrix::diag(&[I, ONE])).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["antilinear"], serde_json::Value::Bool(true));
        assert_eq!(json["matrix"][0][0], "0+1i");
        let back: AntilinearOp = serde_json::from_value(json).unwrap();
        assert_eq!(back, v);
        let untagged = serde_json::json!({"antilinear": false, "matrix": [["1"]]});
        assert!(serde_json::from_value::<AntilinearOp>(untagged).is_err());
    }
}
