//! Random test matrices with controlled spectra and conditioning.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numerics::{condition_number, inverse, ComplexMatrix, Tolerances, C64};

const MAX_ATTEMPTS: usize = 10_000;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub struct SampleOptions {
    /// Eigenvalues are drawn from the square [−r, r] × [−r, r]i.
    pub spectral_radius: f64,
    /// Smallest allowed distance between two eigenvalues.
    pub min_gap: f64,
    /// Largest allowed spectral condition number of the eigenvector matrix.
    pub max_cond: f64,
    /// When set, all eigenvalues are real.
    pub real_spectrum: bool,
}

impl Default for SampleOptions {
    fn default() -> Self {
        Self { spectral_radius: 2.0, min_gap: 0.1, max_cond: 50.0, real_spectrum: false }
    }
}

fn unit_box<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// An n×n matrix with entries uniform in the unit box and cond₂ ≤ `max_cond`.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize, max_cond: f64) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    for _ in 0..MAX_ATTEMPTS {
        let entries = (0..n * n).map(|_| unit_box(rng)).collect();
        let m = ComplexMatrix::new(n, n, entries)?;
        if condition_number(&m)? <= max_cond {
            return Ok(m);
        }
    }
    Err(Error::InvalidArgument(format!("no {n}×{n} sample with condition number ≤ {max_cond}")))
}

fn random_spectrum<R: Rng>(rng: &mut R, n: usize, opts: &SampleOptions) -> Result<Vec<C64>> {
    'attempt: for _ in 0..MAX_ATTEMPTS {
        let mut values: Vec<C64> = Vec::with_capacity(n);
        for _ in 0..n {
            let mut z = unit_box(rng) * opts.spectral_radius;
            if opts.real_spectrum {
                z.im = 0.0;
            }
            if values.iter().any(|w| (w - z).norm() < opts.min_gap) {
                continue 'attempt;
            }
            values.push(z);
        }
        return Ok(values);
    }
    Err(Error::InvalidArgument(format!("cannot place {n} eigenvalues {} apart", opts.min_gap)))
}

#[derive(Clone, Debug)]
pub struct DiagonalizableSample {
    pub h: ComplexMatrix,
    /// Columns are (unnormalized) eigenvectors.
    pub p: ComplexMatrix,
    pub eigenvalues: Vec<C64>,
}

/// H = P·D·P⁻¹ with a separated spectrum and a well-conditioned P.
pub fn random_diagonalizable<R: Rng>(rng: &mut R, n: usize, opts: &SampleOptions) -> Result<DiagonalizableSample> {
    let eigenvalues = random_spectrum(rng, n, opts)?;
    let p = random_invertible(rng, n, opts.max_cond)?;
    let p_inv = inverse(&p, &Tolerances::default())?;
    let h = p.multiply(&ComplexMatrix::diag(&eigenvalues))?.multiply(&p_inv)?;
    Ok(DiagonalizableSample { h, p, eigenvalues })
}
