//! Cyclic Jacobi for Hermitian matrices, one-sided Jacobi for singular values,
//! and the positive square root built on them.

use super::matrix::{ComplexMatrix, C64, ZERO};
use super::Tolerances;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;

#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Unitary; column k belongs to `values[k]`.
    pub vectors: ComplexMatrix,
}

/// Unitary 2×2 rotation `J` (row-major) with `J† [[app, apq], [conj(apq), aqq]] J` diagonal.
fn rotation(app: f64, aqq: f64, apq: C64) -> [C64; 4] {
    let g = apq.norm();
    let phase = (apq / g).conj();
    let theta = (aqq - app) / (2.0 * g);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    [C64::new(c, 0.0), C64::new(s, 0.0), -phase * s, phase * c]
}

fn rotate_columns(m: &mut ComplexMatrix, p: usize, q: usize, j: &[C64; 4]) {
    for k in 0..m.rows() {
        let (a, b) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = a * j[0] + b * j[2];
        m[(k, q)] = a * j[1] + b * j[3];
    }
}

fn rotate_rows_adjoint(m: &mut ComplexMatrix, p: usize, q: usize, j: &[C64; 4]) {
    for k in 0..m.cols() {
        let (a, b) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = j[0].conj() * a + j[2].conj() * b;
        m[(q, k)] = j[1].conj() * a + j[3].conj() * b;
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// A = U·diag(λ)·U† for Hermitian A, λ ascending.
pub fn hermitian_eig(a: &ComplexMatrix, tol: &Tolerances) -> Result<HermitianEigen> {
    let n = a.require_square("Hermitian eigenproblem input")?;
    let defect = a.hermitian_defect();
    if defect > tol.sym {
        return Err(Error::Symmetry { defect });
    }
    let mut work = a.hermitian_part();
    let mut vectors = ComplexMatrix::identity(n);
    let scale = work.frobenius_norm();
    let mut converged = scale == 0.0;
    for _ in 0..MAX_SWEEPS {
        if converged || off_diagonal_norm(&work) <= f64::EPSILON * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = work[(p, q)];
                if apq.norm() <= f64::MIN_POSITIVE {
                    continue;
                }
                let j = rotation(work[(p, p)].re, work[(q, q)].re, apq);
                rotate_columns(&mut work, p, q, &j);
                rotate_rows_adjoint(&mut work, p, q, &j);
                work[(p, q)] = ZERO;
                work[(q, p)] = ZERO;
                work[(p, p)] = C64::new(work[(p, p)].re, 0.0);
                work[(q, q)] = C64::new(work[(q, q)].re, 0.0);
                rotate_columns(&mut vectors, p, q, &j);
            }
        }
    }
    if !converged && off_diagonal_norm(&work) > f64::EPSILON * scale {
        return Err(Error::Convergence { routine: "Hermitian Jacobi", iterations: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| work[(i, i)].re.total_cmp(&work[(j, j)].re));
    let values = order.iter().map(|&i| work[(i, i)].re).collect();
    let mut sorted = ComplexMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        sorted.set_column(k, &vectors.column(i));
    }
    Ok(HermitianEigen { values, vectors: sorted })
}

/// Singular values in descending order, by one-sided (Hestenes) Jacobi.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let n = a.cols();
    let mut w = a.clone();
    // A rotation cannot push the column inner product much below rounding
    // level, which scales with the column length.
    let threshold = f64::EPSILON * w.rows().max(2) as f64;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, ZERO);
                for k in 0..w.rows() {
                    alpha += w[(k, p)].norm_sqr();
                    beta += w[(k, q)].norm_sqr();
                    gamma += w[(k, p)].conj() * w[(k, q)];
                }
                if gamma.norm() <= threshold * (alpha * beta).sqrt() || gamma.norm() <= f64::MIN_POSITIVE {
                    continue;
                }
                rotated = true;
                let j = rotation(alpha, beta, gamma);
                rotate_columns(&mut w, p, q, &j);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence { routine: "one-sided Jacobi SVD", iterations: MAX_SWEEPS });
    }
    let mut sv: Vec<f64> = w.columns().iter().map(|c| c.norm()).collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    Ok(sv)
}

/// Spectral condition number σ_max/σ_min (infinite for singular input).
pub fn condition_number(a: &ComplexMatrix) -> Result<f64> {
    let sv = singular_values(a)?;
    let (max, min) = (sv[0], *sv.last().unwrap());
    Ok(if min == 0.0 { f64::INFINITY } else { max / min })
}

/// The unique Hermitian positive definite B with B·B = A.
pub fn positive_sqrt(a: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(a, tol)?;
    let min_eigenvalue = eig.values[0];
    if min_eigenvalue <= tol.pd * a.frobenius_norm() || min_eigenvalue <= 0.0 {
        return Err(Error::NotPositiveDefinite { min_eigenvalue });
    }
    let roots: Vec<C64> = eig.values.iter().map(|&l| C64::new(l.sqrt(), 0.0)).collect();
    let b = &(&eig.vectors * &ComplexMatrix::diag(&roots)) * &eig.vectors.adjoint();
    Ok(b.hermitian_part())
}

#[cfg(test)]
pub(crate) fn unitarity_defect(u: &ComplexMatrix) -> f64 {
    let n = u.cols();
    (&(&u.adjoint() * u) - &ComplexMatrix::identity(n)).frobenius_norm()
}
