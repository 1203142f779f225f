use nalgebra::DMatrix;
use num_complex::Complex64;

use super::linalg::HERMITIAN_TOL;
use super::matrix::DivMatrix;
use super::scalar::{AlgebraTag, DivScalar};
use crate::error::{Error, Result};

/// Relative gap below which two adjoint eigenvalues are one quaternion pair.
pub const PAIR_TOL: f64 = 1e-8;

/// Complex representation of a real, complex or quaternion matrix.
///
/// Quaternion entries w + x e₁ + y e₂ + z e₃ map to the 2×2 block
/// `[[w + xi, y + zi], [−y + zi, w − xi]]`; the map is multiplicative.
pub fn complex_adjoint(x: &DivMatrix) -> Result<DivMatrix> {
    let c = AlgebraTag::COMPLEX;
    let cx = |re: f64, im: f64| DivScalar::from_coeffs(c, &[re, im]).expect("two coefficients");
    match x.tag().beta() {
        1 => {
            let data = x.entries().iter().map(|s| cx(s.re(), 0.0)).collect();
            DivMatrix::from_entries(c, x.rows(), x.cols(), data)
        }
        2 => Ok(x.clone()),
        4 => {
            let (m, n) = (x.rows(), x.cols());
            let mut out = DivMatrix::zeros(c, 2 * m, 2 * n)?;
            for i in 0..m {
                for j in 0..n {
                    let q = x.get(i, j);
                    let [w, a, b, d] = [q.coeffs()[0], q.coeffs()[1], q.coeffs()[2], q.coeffs()[3]];
                    out.set(2 * i, 2 * j, cx(w, a));
                    out.set(2 * i, 2 * j + 1, cx(b, d));
                    out.set(2 * i + 1, 2 * j, cx(-b, d));
                    out.set(2 * i + 1, 2 * j + 1, cx(w, -a));
                }
            }
            Ok(out)
        }
        _ => Err(Error::OctonionRestriction(
            "no complex representation exists for octonion matrices".into(),
        )),
    }
}

fn to_nalgebra(x: &DivMatrix) -> Result<DMatrix<Complex64>> {
    let adj = complex_adjoint(x)?;
    Ok(DMatrix::from_fn(adj.rows(), adj.cols(), |i, j| {
        let s = adj.get(i, j);
        Complex64::new(s.coeffs()[0], s.coeffs()[1])
    }))
}

fn sort_desc(v: &mut [f64]) {
    v.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
}

/// Collapses the doubled spectrum of a quaternion adjoint, one value per pair.
fn collapse_pairs(tag: AlgebraTag, mut v: Vec<f64>) -> Result<Vec<f64>> {
    sort_desc(&mut v);
    if tag.beta() != 4 {
        return Ok(v);
    }
    let scale = v.iter().fold(0.0_f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
    v.chunks(2)
        .map(|p| {
            let gap = (p[0] - p[1]).abs();
            if gap > PAIR_TOL * scale {
                Err(Error::Pairing(gap / scale))
            } else {
                Ok(0.5 * (p[0] + p[1]))
            }
        })
        .collect()
}

/// Singular values in descending order, min(m, n) of them.
pub fn singular_values(x: &DivMatrix) -> Result<Vec<f64>> {
    let a = to_nalgebra(x)?;
    let sv = a.singular_values();
    collapse_pairs(x.tag(), sv.iter().copied().collect())
}

/// Eigenvalues of a Hermitian matrix in descending order.
pub fn hermitian_eigenvalues(a: &DivMatrix) -> Result<Vec<f64>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("eigenvalues need a square matrix".into()));
    }
    let defect = a.hermitian_defect();
    if defect > HERMITIAN_TOL * a.max_abs_coeff().max(1.0) {
        return Err(Error::NotHermitian(defect));
    }
    let c = to_nalgebra(&a.symmetrized())?;
    let ev = c.symmetric_eigenvalues();
    collapse_pairs(a.tag(), ev.iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::testutil::{random_hpd, random_matrix, random_unitary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const ASSOC: [AlgebraTag; 3] = [AlgebraTag::REAL, AlgebraTag::COMPLEX, AlgebraTag::QUATERNION];

    #[test]
    fn real_singular_values() {
        let x = DivMatrix::from_real_rows(AlgebraTag::REAL, &[&[3.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]).unwrap();
        let sv = singular_values(&x).unwrap();
        assert!((sv[0] - 3.0).abs() < 1e-14 && (sv[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn quaternion_scalar_singular_value_is_norm() {
        let q = DivScalar::from_coeffs(AlgebraTag::QUATERNION, &[1.0, 1.0, 1.0, 1.0]).unwrap();
        let x = DivMatrix::from_entries(AlgebraTag::QUATERNION, 1, 1, vec![q]).unwrap();
        let sv = singular_values(&x).unwrap();
        assert_eq!(sv.len(), 1);
        assert!((sv[0] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn adjoint_block_determinant_is_norm_squared() {
        let q = DivScalar::from_coeffs(AlgebraTag::QUATERNION, &[1.0, -1.0, 1.0, 1.0]).unwrap();
        let x = DivMatrix::from_entries(AlgebraTag::QUATERNION, 1, 1, vec![q]).unwrap();
        let a = complex_adjoint(&x).unwrap();
        let e = |i, j| {
            let s = a.get(i, j);
            Complex64::new(s.coeffs()[0], s.coeffs()[1])
        };
        let det = e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0);
        assert!((det - Complex64::new(4.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn real_embedding_is_identity() {
        let x = DivMatrix::from_real_rows(AlgebraTag::REAL, &[&[1.0, 2.0]]).unwrap();
        let a = complex_adjoint(&x).unwrap();
        assert_eq!(a.get(0, 1).coeffs(), &[2.0, 0.0]);
    }

    #[test]
    fn adjoint_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let a = random_matrix(&mut rng, AlgebraTag::QUATERNION, 2, 2);
            let b = random_matrix(&mut rng, AlgebraTag::QUATERNION, 2, 2);
            let lhs = complex_adjoint(&a.matmul(&b).unwrap()).unwrap();
            let rhs = complex_adjoint(&a)
                .unwrap()
                .matmul(&complex_adjoint(&b).unwrap())
                .unwrap();
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }
    }

    #[test]
    fn octonions_rejected() {
        let x = DivMatrix::identity(AlgebraTag::OCTONION, 1).unwrap();
        assert!(matches!(singular_values(&x), Err(Error::OctonionRestriction(_))));
        assert!(hermitian_eigenvalues(&x).is_err());
    }

    #[test]
    fn diagonal_eigenvalues() {
        let a = DivMatrix::diagonal(AlgebraTag::REAL, &[2.0, 5.0]).unwrap();
        let ev = hermitian_eigenvalues(&a).unwrap();
        assert!((ev[0] - 5.0).abs() < 1e-14 && (ev[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn complex_two_by_two() {
        // (2 − λ)² = 1
        let t = AlgebraTag::COMPLEX;
        let c = |re: f64, im: f64| DivScalar::from_coeffs(t, &[re, im]).unwrap();
        let a = DivMatrix::from_entries(t, 2, 2, vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]).unwrap();
        let ev = hermitian_eigenvalues(&a).unwrap();
        assert!((ev[0] - 3.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn gram_eigenvalues_are_squared_singular_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for tag in ASSOC {
            for _ in 0..10 {
                let x = random_matrix(&mut rng, tag, 3, 5);
                let sv = singular_values(&x).unwrap();
                let ev = hermitian_eigenvalues(&x.gram()).unwrap();
                assert_eq!(sv.len(), 3);
                for (s, e) in sv.iter().zip(ev.iter()) {
                    assert!((s * s - e).abs() < 1e-10 * e.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn eigenvalues_sum_to_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for tag in ASSOC {
            let a = random_hpd(&mut rng, tag, 4);
            let ev = hermitian_eigenvalues(a.matrix()).unwrap();
            assert!((ev.iter().sum::<f64>() - a.matrix().real_trace()).abs() < 1e-10);
        }
    }

    #[test]
    fn unitary_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for tag in ASSOC {
            let x = random_matrix(&mut rng, tag, 2, 3);
            let h = random_unitary(&mut rng, tag, 2);
            let w = random_unitary(&mut rng, tag, 3);
            let y = h.matmul(&x).unwrap().matmul(&w).unwrap();
            let a = singular_values(&x).unwrap();
            let b = singular_values(&y).unwrap();
            for (p, q) in a.iter().zip(b.iter()) {
                assert!((p - q).abs() < 1e-10, "{tag}: {a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn tall_matrices_transpose_internally() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        let x = random_matrix(&mut rng, AlgebraTag::QUATERNION, 4, 2);
        let a = singular_values(&x).unwrap();
        let b = singular_values(&x.conj_transpose()).unwrap();
        assert_eq!(a.len(), 2);
        assert!((a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12);
    }
}
