use rand::Rng;

use super::{AlgebraTag, DivMatrix, DivScalar, HermitianPD};

pub fn random_scalar<R: Rng>(rng: &mut R, tag: AlgebraTag) -> DivScalar {
    let c: Vec<f64> = (0..tag.dim()).map(|_| rng.random_range(-1.0..1.0)).collect();
    DivScalar::from_coeffs(tag, &c).unwrap()
}

pub fn random_matrix<R: Rng>(rng: &mut R, tag: AlgebraTag, m: usize, n: usize) -> DivMatrix {
    let data = (0..m * n).map(|_| random_scalar(rng, tag)).collect();
    DivMatrix::from_entries(tag, m, n, data).unwrap()
}

pub fn random_hpd<R: Rng>(rng: &mut R, tag: AlgebraTag, n: usize) -> HermitianPD {
    let x = random_matrix(rng, tag, n, n);
    let shifted = x
        .gram()
        .add(&DivMatrix::identity(tag, n).unwrap().scale(0.5))
        .unwrap();
    HermitianPD::new(shifted).unwrap()
}

/// Gram–Schmidt on the columns of a random matrix (right-module projections).
#[allow(clippy::needless_range_loop)]
pub fn random_unitary<R: Rng>(rng: &mut R, tag: AlgebraTag, n: usize) -> DivMatrix {
    let x = random_matrix(rng, tag, n, n);
    let mut cols: Vec<Vec<DivScalar>> = (0..n).map(|j| (0..n).map(|i| x.get(i, j)).collect()).collect();
    for k in 0..n {
        for j in 0..k {
            let mut dot = DivScalar::zero(tag);
            for i in 0..n {
                dot = dot + cols[j][i].conj() * cols[k][i];
            }
            for i in 0..n {
                let p = cols[j][i] * dot;
                cols[k][i] = cols[k][i] - p;
            }
        }
        let norm = cols[k].iter().map(|s| s.norm_sqr()).sum::<f64>().sqrt();
        for s in cols[k].iter_mut() {
            *s = s.scale(1.0 / norm);
        }
    }
    let mut u = DivMatrix::zeros(tag, n, n).unwrap();
    for (j, col) in cols.iter().enumerate() {
        for (i, s) in col.iter().enumerate() {
            u.set(i, j, *s);
        }
    }
    u
}
