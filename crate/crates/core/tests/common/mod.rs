#![allow(dead_code)]

use nonherm_core::numerics::{ComplexMatrix, ComplexVector, C64};
use nonherm_core::sampling::{random_diagonalizable, rng_from_seed, DiagonalizableSample, SampleOptions};
use nonherm_core::two_level::TwoLevelParams;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rng_from_seed(seed)
}

/// `count` random diagonalizable matrices with dimensions cycling through 2..=10.
pub fn random_systems(seed: u64, count: usize) -> Vec<DiagonalizableSample> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| random_diagonalizable(&mut r, 2 + i % 9, &SampleOptions::default()).unwrap())
        .collect()
}

pub fn random_vector(r: &mut ChaCha8Rng, n: usize) -> ComplexVector {
    ComplexVector::new((0..n).map(|_| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect()).unwrap()
}

pub fn random_matrix(r: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    ComplexMatrix::new(n, n, (0..n * n).map(|_| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect())
        .unwrap()
}

fn coupling(r: &mut ChaCha8Rng) -> (f64, f64) {
    loop {
        let (a, b) = (r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
        if (2.0f64 - a * b).abs() >= 0.3 {
            return (a, b);
        }
    }
}

/// Real, distinct E₁, E₂.
pub fn unbroken_params(r: &mut ChaCha8Rng) -> TwoLevelParams {
    let (a, b) = coupling(r);
    loop {
        let (e1, e2): (f64, f64) = (r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
        if (e1 - e2).abs() >= 0.1 {
            return TwoLevelParams::new(a, b, C64::new(e1, 0.0), C64::new(e2, 0.0));
        }
    }
}

/// E₁ = R + iI = Ē₂ with 0.1 ≤ |I| ≤ 1.5.
pub fn broken_params(r: &mut ChaCha8Rng) -> TwoLevelParams {
    let (a, b) = coupling(r);
    let re = r.gen_range(-2.0..2.0);
    let im = r.gen_range(0.1..1.5) * if r.gen_bool(0.5) { 1.0 } else { -1.0 };
    TwoLevelParams::new(a, b, C64::new(re, im), C64::new(re, -im))
}

/// e^{A} by scaling and squaring with a truncated Taylor series.
pub fn taylor_expm(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    let mut squarings = 0;
    let mut norm = a.frobenius_norm();
    while norm > 0.25 {
        norm /= 2.0;
        squarings += 1;
    }
    let scaled = a.scale(C64::new(0.5f64.powi(squarings), 0.0));
    let mut term = ComplexMatrix::identity(n);
    let mut sum = ComplexMatrix::identity(n);
    for k in 1..=24 {
        term = (&term * &scaled).scale(C64::new(1.0 / k as f64, 0.0));
        sum = &sum + &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}
