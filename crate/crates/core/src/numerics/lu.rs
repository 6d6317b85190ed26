use super::matrix::{ComplexMatrix, C64, ZERO};
use super::Tolerances;
use crate::error::{Error, Result};

/// LU factorization with partial pivoting, packed in place.
struct Lu {
    packed: ComplexMatrix,
    perm: Vec<usize>,
}

impl Lu {
    fn factor(a: &ComplexMatrix) -> Result<Self> {
        let n = a.require_square("matrix to invert")?;
        let scale = a.entries().iter().map(|z| z.norm()).fold(0.0, f64::max);
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pivot) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot <= f64::EPSILON * scale * n as f64 || pivot == 0.0 {
                return Err(Error::SingularMatrix { cond: None });
            }
            if p != k {
                perm.swap(p, k);
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
            }
            let d = lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / d;
                lu[(i, k)] = factor;
                if factor != ZERO {
                    for j in k + 1..n {
                        let u = lu[(k, j)];
                        lu[(i, j)] -= factor * u;
                    }
                }
            }
        }
        Ok(Self { packed: lu, perm })
    }

    fn solve_in_place(&self, b: &mut [C64]) {
        let n = self.perm.len();
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.packed[(i, j)] * x[j];
                x[i] -= l;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.packed[(i, j)] * x[j];
                x[i] -= u;
            }
            x[i] /= self.packed[(i, i)];
        }
        b.copy_from_slice(&x);
    }
}

fn norm_1(a: &ComplexMatrix) -> f64 {
    (0..a.cols()).map(|j| (0..a.rows()).map(|i| a[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// Inverse via partially pivoted LU. Rejects inputs whose 1-norm condition
/// number exceeds `tol.cond_max`.
pub fn inverse(a: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    let lu = Lu::factor(a)?;
    let n = a.rows();
    let mut inv = ComplexMatrix::zeros(n, n);
    let mut col = vec![ZERO; n];
    for j in 0..n {
        col.iter_mut().enumerate().for_each(|(i, z)| *z = if i == j { C64::new(1.0, 0.0) } else { ZERO });
        lu.solve_in_place(&mut col);
        for i in 0..n {
            inv[(i, j)] = col[i];
        }
    }
    let cond = norm_1(a) * norm_1(&inv);
    if !cond.is_finite() || cond > tol.cond_max {
        return Err(Error::SingularMatrix { cond: Some(cond) });
    }
    Ok(inv)
}
