//! Non-Hermitian eigensolver: Householder reduction to Hessenberg form,
//! implicitly shifted complex QR to Schur form, eigenvectors by triangular
//! back-substitution mapped back through the Schur vectors.

use std::cmp::Ordering;

use super::jacobi::condition_number;
use super::matrix::{ComplexMatrix, ComplexVector, C64, ONE, ZERO};
use super::{text::format_complex, Tolerances};
use crate::error::{Error, Result};

const ITERATIONS_PER_EIGENVALUE: usize = 60;

#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    /// Sorted by (real part, imaginary part).
    pub eigenvalues: Vec<C64>,
    /// Unit columns; column k is the right eigenvector of `eigenvalues[k]`.
    pub right_vectors: ComplexMatrix,
    /// Spectral condition number of `right_vectors`.
    pub condition_estimate: f64,
}

/// Returns (T, Q) with T upper Hessenberg, Q unitary and A = Q·T·Q†.
fn hessenberg(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.rows();
    let mut t = a.clone();
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let mut v: Vec<C64> = (k + 1..n).map(|i| t[(i, k)]).collect();
        let xnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if v[0] == ZERO { ONE } else { v[0] / v[0].norm() };
        v[0] += phase * xnorm;
        let vnorm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let tau = 2.0 / vnorm_sq;

        for j in 0..n {
            let s: C64 = v.iter().enumerate().map(|(i, vi)| vi.conj() * t[(k + 1 + i, j)]).sum();
            for (i, vi) in v.iter().enumerate() {
                t[(k + 1 + i, j)] -= vi * s * tau;
            }
        }
        for m in [&mut t, &mut q] {
            for r in 0..n {
                let s: C64 = v.iter().enumerate().map(|(j, vj)| m[(r, k + 1 + j)] * vj).sum();
                for (j, vj) in v.iter().enumerate() {
                    m[(r, k + 1 + j)] -= s * vj.conj() * tau;
                }
            }
        }
        t[(k + 1, k)] = -phase * xnorm;
        for i in k + 2..n {
            t[(i, k)] = ZERO;
        }
    }
    (t, q)
}

/// Rotation (c, s) with [[c, s], [−conj(s), c]]·[x, y]ᵀ = [r, 0]ᵀ.
fn givens(x: C64, y: C64) -> (f64, C64) {
    if y == ZERO {
        return (1.0, ZERO);
    }
    if x == ZERO {
        return (0.0, ONE);
    }
    let norm = x.norm().hypot(y.norm());
    let c = x.norm() / norm;
    let s = (x / x.norm()) * y.conj() / norm;
    (c, s)
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let (m1, m2) = (mean + disc, mean - disc);
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

/// Reduces Hessenberg `t` to upper triangular form in place, accumulating into `q`.
fn schur(t: &mut ComplexMatrix, q: &mut ComplexMatrix) -> Result<()> {
    let n = t.rows();
    let scale = t.frobenius_norm().max(f64::MIN_POSITIVE);
    let budget = ITERATIONS_PER_EIGENVALUE * n;
    let mut total = 0;
    let mut since_deflation = 0;
    let mut hi = n.saturating_sub(1);
    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let mut s = t[(lo - 1, lo - 1)].norm() + t[(lo, lo)].norm();
            if s == 0.0 {
                s = scale;
            }
            if t[(lo, lo - 1)].norm() <= f64::EPSILON * s {
                t[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        total += 1;
        since_deflation += 1;
        if total > budget {
            return Err(Error::Convergence { routine: "shifted QR", iterations: total });
        }

        let shift = if since_deflation % 10 == 0 {
            // Exceptional shift to break cycles.
            t[(hi, hi)] + C64::new(0.75 * t[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(t[(hi - 1, hi - 1)], t[(hi - 1, hi)], t[(hi, hi - 1)], t[(hi, hi)])
        };

        for k in lo..hi {
            let (x, y) = if k == lo { (t[(lo, lo)] - shift, t[(lo + 1, lo)]) } else { (t[(k, k - 1)], t[(k + 1, k - 1)]) };
            let (c, s) = givens(x, y);
            let first_col = if k == lo { lo } else { k - 1 };
            for j in first_col..n {
                let (a, b) = (t[(k, j)], t[(k + 1, j)]);
                t[(k, j)] = a * c + s * b;
                t[(k + 1, j)] = -s.conj() * a + b * c;
            }
            if k > lo {
                t[(k + 1, k - 1)] = ZERO;
            }
            let last_row = (k + 2).min(hi);
            for i in 0..=last_row {
                let (a, b) = (t[(i, k)], t[(i, k + 1)]);
                t[(i, k)] = a * c + b * s.conj();
                t[(i, k + 1)] = -a * s + b * c;
            }
            for i in 0..n {
                let (a, b) = (q[(i, k)], q[(i, k + 1)]);
                q[(i, k)] = a * c + b * s.conj();
                q[(i, k + 1)] = -a * s + b * c;
            }
        }
    }
    Ok(())
}

/// Eigenvectors of upper triangular `t` (column k for eigenvalue t[k][k]).
fn triangular_eigenvectors(t: &ComplexMatrix) -> ComplexMatrix {
    let n = t.rows();
    let small = f64::EPSILON * t.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut y = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        let lambda = t[(k, k)];
        y[(k, k)] = ONE;
        for i in (0..k).rev() {
            let s: C64 = (i + 1..=k).map(|j| t[(i, j)] * y[(j, k)]).sum();
            let mut d = t[(i, i)] - lambda;
            if d.norm() < small {
                d = C64::new(small, 0.0);
            }
            y[(i, k)] = -s / d;
        }
    }
    y
}

/// Unit norm, with the first largest-magnitude component real and positive.
fn normalize_phase(v: &ComplexVector) -> ComplexVector {
    let max = v.max_abs();
    let pivot = v.entries().iter().position(|z| z.norm() >= max * (1.0 - 1e-8)).unwrap_or(0);
    let phase = v[pivot].conj() / v[pivot].norm();
    v.scale(phase / v.norm())
}

/// Lexicographic (Re, Im) order in which real parts within `band` of each
/// other count as equal, so conjugate pairs order by imaginary part.
fn spectral_order(values: &[C64], band: f64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].re.total_cmp(&values[j].re).then(values[i].im.total_cmp(&values[j].im)));
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]].re - values[order[end - 1]].re <= band {
            end += 1;
        }
        order[start..end].sort_by(|&i, &j| values[i].im.partial_cmp(&values[j].im).unwrap_or(Ordering::Equal));
        start = end;
    }
    order
}

pub fn general_eig(h: &ComplexMatrix, tol: &Tolerances) -> Result<EigenDecomposition> {
    let n = h.require_square("Hamiltonian")?;
    if h.entries().iter().any(|z| !z.is_finite()) {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }
    let scale = h.frobenius_norm();
    let (mut t, mut q) = hessenberg(h);
    schur(&mut t, &mut q)?;
    let values: Vec<C64> = (0..n).map(|k| t[(k, k)]).collect();

    for i in 0..n {
        for j in i + 1..n {
            let gap = (values[i] - values[j]).norm();
            if gap <= tol.gap * scale || scale == 0.0 {
                let (a, b) = if spectral_order(&[values[i], values[j]], 0.0)[0] == 0 { (i, j) } else { (j, i) };
                return Err(Error::DegenerateSpectrum {
                    first: format_complex(values[a]),
                    second: format_complex(values[b]),
                    gap,
                });
            }
        }
    }

    let vectors = &q * &triangular_eigenvectors(&t);
    let order = spectral_order(&values, tol.gap * scale);
    let eigenvalues = order.iter().map(|&k| values[k]).collect();
    let columns: Vec<ComplexVector> = order.iter().map(|&k| normalize_phase(&vectors.column(k))).collect();
    let right_vectors = ComplexMatrix::from_columns(&columns)?;
    let condition_estimate = condition_number(&right_vectors)?;
    Ok(EigenDecomposition { eigenvalues, right_vectors, condition_estimate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{frobenius_residual, inverse, vector_residual};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn max_eigen_residual(h: &ComplexMatrix, e: &EigenDecomposition) -> f64 {
        (0..h.rows())
            .map(|k| {
                let v = e.right_vectors.column(k);
                vector_residual(&(h * &v), &v.scale(e.eigenvalues[k])).unwrap()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn hessenberg_preserves_similarity() {
        let h = ComplexMatrix::from_rows(
            (0..5).map(|i| (0..5).map(|j| c((i * 3 + j) as f64 % 7.0 - 3.0, (i + 2 * j) as f64 % 5.0 - 2.0)).collect()).collect(),
        )
        .unwrap();
        let (t, q) = hessenberg(&h);
        for i in 2..5 {
            for j in 0..i - 1 {
                assert_eq!(t[(i, j)], ZERO);
            }
        }
        assert!(frobenius_residual(&(&(&q * &t) * &q.adjoint()), &h).unwrap() < 1e-14);
    }

    #[test]
    fn diagonal_input_sorted_with_permuted_basis() {
        let h = ComplexMatrix::diag(&[c(1.0, 1.0), c(1.0, -1.0)]);
        let e = general_eig(&h, &Tolerances::default()).unwrap();
        assert_eq!(e.eigenvalues, vec![c(1.0, -1.0), c(1.0, 1.0)]);
        let perm = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        assert!(frobenius_residual(&e.right_vectors, &perm).unwrap() < 1e-15);
        assert!((e.condition_estimate - 1.0).abs() < 1e-14);
    }

    #[test]
    fn two_level_hamiltonian_spectrum() {
        // trace 2, det 2 → roots 1 ± i
        let h = ComplexMatrix::from_rows(vec![vec![c(1.0, 3.0), c(0.0, -2.0)], vec![c(0.0, 4.0), c(1.0, -3.0)]]).unwrap();
        let e = general_eig(&h, &Tolerances::default()).unwrap();
        assert!((e.eigenvalues[0] - c(1.0, -1.0)).norm() < 1e-13);
        assert!((e.eigenvalues[1] - c(1.0, 1.0)).norm() < 1e-13);
        assert!(max_eigen_residual(&h, &e) < 1e-14);
        for k in 0..2 {
            assert!((e.right_vectors.column(k).norm() - 1.0).abs() < 1e-15);
            // real eigenvectors [1, 2] and [1, 1] come out real under the phase convention
            assert!(e.right_vectors.column(k).entries().iter().all(|z| z.im.abs() < 1e-14));
        }
    }

    #[test]
    fn recovers_constructed_spectrum() {
        let d = [c(-1.0, 0.5), c(0.3, -2.0), c(2.0, 0.0), c(0.3, 1.0)];
        let p = ComplexMatrix::from_rows(vec![
            vec![c(1.0, 0.2), c(0.3, 0.0), c(-0.2, 0.1), c(0.0, 0.4)],
            vec![c(0.1, -0.3), c(1.2, 0.0), c(0.5, 0.5), c(0.2, 0.0)],
            vec![c(0.0, 0.0), c(-0.4, 0.2), c(0.9, -0.1), c(0.3, 0.3)],
            vec![c(0.6, 0.0), c(0.0, 0.1), c(0.2, 0.0), c(1.1, 0.0)],
        ])
        .unwrap();
        let tol = Tolerances::default();
        let h = &(&p * &ComplexMatrix::diag(&d)) * &inverse(&p, &tol).unwrap();
        let e = general_eig(&h, &tol).unwrap();
        let expected = [c(-1.0, 0.5), c(0.3, -2.0), c(0.3, 1.0), c(2.0, 0.0)];
        for (got, want) in e.eigenvalues.iter().zip(expected) {
            assert!((got - want).norm() < 1e-12, "{got} vs {want}");
        }
        assert!(max_eigen_residual(&h, &e) < 1e-13);
    }

    #[test]
    fn upper_triangular_and_one_by_one() {
        let tol = Tolerances::default();
        let t = ComplexMatrix::from_rows(vec![vec![c(2.0, 0.0), c(-1.0, 0.5)], vec![ZERO, c(1.0, 0.0)]]).unwrap();
        let e = general_eig(&t, &tol).unwrap();
        assert!(max_eigen_residual(&t, &e) < 1e-15);
        let one = ComplexMatrix::diag(&[c(0.0, 3.0)]);
        let e = general_eig(&one, &tol).unwrap();
        assert_eq!(e.eigenvalues, vec![c(0.0, 3.0)]);
    }

    #[test]
    fn degenerate_spectra_are_rejected() {
        let tol = Tolerances::default();
        let jordan = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(general_eig(&jordan, &tol), Err(Error::DegenerateSpectrum { .. })));
        assert!(matches!(general_eig(&ComplexMatrix::identity(3), &tol), Err(Error::DegenerateSpectrum { .. })));
        assert!(matches!(general_eig(&ComplexMatrix::zeros(2, 2), &tol), Err(Error::DegenerateSpectrum { .. })));
    }

    #[test]
    fn rotation_matrix_has_imaginary_pair() {
        let r = ComplexMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]).unwrap();
        let e = general_eig(&r, &Tolerances::default()).unwrap();
        assert!((e.eigenvalues[0] - c(0.0, -1.0)).norm() < 1e-14);
        assert!((e.eigenvalues[1] - c(0.0, 1.0)).norm() < 1e-14);
    }
}
