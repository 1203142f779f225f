#![allow(dead_code)]

use rdmt::algebra::{AlgebraTag, DivMatrix, HermitianPD};
use rdmt::distributions::sample_gaussian;
use rdmt::rng::RngStream;

pub const ASSOCIATIVE: [AlgebraTag; 3] = [AlgebraTag::REAL, AlgebraTag::COMPLEX, AlgebraTag::QUATERNION];

pub fn gaussian(rng: &mut RngStream, tag: AlgebraTag, m: usize, n: usize) -> DivMatrix {
    sample_gaussian(rng, tag, m, n, None).unwrap()
}

/// G G*/(n + 2) + I/2 for an n×(n+2) Gaussian G.
pub fn random_hpd(rng: &mut RngStream, tag: AlgebraTag, n: usize) -> HermitianPD {
    let g = gaussian(rng, tag, n, n + 2);
    let m = g.gram().scale(1.0 / (n + 2) as f64).add(&DivMatrix::identity(tag, n).unwrap().scale(0.5)).unwrap();
    HermitianPD::new(m).unwrap()
}

/// Gaussian plus twice the identity; invertible with overwhelming
/// probability.
pub fn random_invertible(rng: &mut RngStream, tag: AlgebraTag, n: usize) -> DivMatrix {
    gaussian(rng, tag, n, n).add(&DivMatrix::identity(tag, n).unwrap().scale(2.0)).unwrap()
}

pub fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}
