use rand::Rng;

use super::gaussian::{sample_gamma_scalar, standard_gaussian};
use super::params::{GammaScalarParams, MatrixMTParams};
use super::{add_location, check_point, factor_left, factor_right, sub_location};
use crate::algebra::{solve_lower_adjoint, solve_right_lower, DivMatrix, HermitianPD};
use crate::error::Result;
use crate::special::{log_gamma, LN_PI};

/// Log density of MT_{m×n}^β(ν, μ, Δ, Λ) with scale ρ:
/// the kernel is (1 + ρ‖M*(T − μ)N‖²)^{−β(ν+mn)/2} where MM* = Δ, NN* = Λ.
pub fn logpdf_matrix_mt(params: &MatrixMTParams, t: &DivMatrix) -> Result<f64> {
    let (tag, m, n, nu, rho) = (params.tag(), params.m(), params.n(), params.nu(), params.rho());
    check_point(tag, m, n, t)?;
    let b = tag.b();
    let mn = (m * n) as f64;
    let mut a = sub_location(t, params.mu())?;
    if let Some(delta) = params.delta() {
        a = factor_left(&delta.cholesky().conj_transpose(), &a)?;
    }
    if let Some(lambda) = params.lambda() {
        a = factor_right(&a, lambda.cholesky())?;
    }
    let q = a.frobenius_norm_sqr();
    let head = log_gamma(b * (nu + mn) / 2.0) + b * mn / 2.0 * (rho.ln() - LN_PI) - log_gamma(b * nu / 2.0)
        + b * n as f64 / 2.0 * params.delta().map_or(0.0, HermitianPD::logdet)
        + b * m as f64 / 2.0 * params.lambda().map_or(0.0, HermitianPD::logdet);
    Ok(head - b * (nu + mn) / 2.0 * (rho * q).ln_1p())
}

/// Draws Q = (M*)⁻¹ S^{-1/2} Y N⁻¹ + μ with S ~ Γ^β(ν, ρ) and Y standard
/// Gaussian. Octonion rows (m = 1, Λ = I) are supported.
pub fn sample_matrix_mt<R: Rng + ?Sized>(rng: &mut R, params: &MatrixMTParams) -> Result<DivMatrix> {
    let (tag, m, n) = (params.tag(), params.m(), params.n());
    let s = sample_gamma_scalar(rng, &GammaScalarParams::new(tag, params.nu(), params.rho())?);
    let mut q = standard_gaussian(rng, tag, m, n)?.scale(1.0 / s.sqrt());
    if let Some(delta) = params.delta() {
        q = solve_lower_adjoint(delta.cholesky(), &q)?;
    }
    if let Some(lambda) = params.lambda() {
        q = solve_right_lower(&q, lambda.cholesky())?;
    }
    add_location(q, params.mu())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::testutil::{random_hpd, random_matrix};
    use crate::algebra::AlgebraTag;
    use crate::distributions::{logpdf_matric_t, DensityForm, MatricTParams};
    use crate::rng::RngStream;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn cauchy_reduction() {
        let p = MatrixMTParams::new(AlgebraTag::REAL, 1, 1, 1.0, 1.0).unwrap();
        let t = DivMatrix::zeros(AlgebraTag::REAL, 1, 1).unwrap();
        assert!((logpdf_matrix_mt(&p, &t).unwrap() + PI.ln()).abs() < 1e-14);
    }

    #[test]
    fn row_vectors_coincide_with_matricvariate() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for tag in AlgebraTag::ALL {
            for n in 1..=3 {
                let nu = 2.5;
                let mt = MatrixMTParams::new(tag, 1, n, nu, 1.0).unwrap();
                let tp = MatricTParams::new(tag, 1, n, nu).unwrap();
                for k in 0..50 {
                    let t = random_matrix(&mut rng, tag, 1, n).scale(0.2 * k as f64);
                    let a = logpdf_matrix_mt(&mt, &t).unwrap();
                    let b = logpdf_matric_t(&tp, &t, DensityForm::Primal).unwrap();
                    assert!((a - b).abs() < 1e-12, "{tag} n={n}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn row_vectors_coincide_with_general_scales() {
        // At m = 1 the families agree when Λ = Σ⁻¹ and Δ = Ξ.
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let tag = AlgebraTag::COMPLEX;
        let sigma = random_hpd(&mut rng, tag, 3);
        let xi = HermitianPD::diagonal(tag, &[0.7]).unwrap();
        let mu = random_matrix(&mut rng, tag, 1, 3);
        let mt = MatrixMTParams::new(tag, 1, 3, 4.0, 1.0)
            .unwrap()
            .with_mu(Some(mu.clone()))
            .unwrap()
            .with_delta(Some(xi.clone()))
            .unwrap()
            .with_lambda(Some(sigma.inverse().unwrap()))
            .unwrap();
        let tp = MatricTParams::new(tag, 1, 3, 4.0)
            .unwrap()
            .with_mu(Some(mu))
            .unwrap()
            .with_xi(Some(xi))
            .unwrap()
            .with_sigma(Some(sigma))
            .unwrap();
        for _ in 0..20 {
            let t = random_matrix(&mut rng, tag, 1, 3);
            let a = logpdf_matrix_mt(&mt, &t).unwrap();
            let b = logpdf_matric_t(&tp, &t, DensityForm::Primal).unwrap();
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn rho_scaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let tag = AlgebraTag::QUATERNION;
        let (m, n, rho) = (2, 2, 2.7);
        let with_rho = MatrixMTParams::new(tag, m, n, 3.0, rho).unwrap();
        let unit = MatrixMTParams::new(tag, m, n, 3.0, 1.0).unwrap();
        for _ in 0..20 {
            let t = random_matrix(&mut rng, tag, m, n);
            let lhs = logpdf_matrix_mt(&with_rho, &t).unwrap();
            let rhs = tag.b() * (m * n) as f64 / 2.0 * rho.ln() + logpdf_matrix_mt(&unit, &t.scale(rho.sqrt())).unwrap();
            assert!((lhs - rhs).abs() < 1e-10);
        }
    }

    #[test]
    fn draws_stay_finite_and_reproduce() {
        let tag = AlgebraTag::REAL;
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let p = MatrixMTParams::new(tag, 2, 3, 1.0, 0.5)
            .unwrap()
            .with_delta(Some(random_hpd(&mut rng, tag, 2)))
            .unwrap()
            .with_lambda(Some(random_hpd(&mut rng, tag, 3)))
            .unwrap();
        let mut s = RngStream::new(3, 3);
        let finite = (0..10_000)
            .filter(|_| sample_matrix_mt(&mut s, &p).unwrap().entries().iter().all(|e| e.coeffs().iter().all(|c| c.is_finite())))
            .count();
        assert_eq!(finite, 10_000);
        assert_eq!(
            sample_matrix_mt(&mut RngStream::new(1, 2), &p).unwrap(),
            sample_matrix_mt(&mut RngStream::new(1, 2), &p).unwrap()
        );
    }

    #[test]
    fn octonion_rows_sample() {
        let tag = AlgebraTag::OCTONION;
        let p = MatrixMTParams::new(tag, 1, 3, 2.0, 1.0)
            .unwrap()
            .with_delta(Some(HermitianPD::diagonal(tag, &[2.0]).unwrap()))
            .unwrap();
        let q = sample_matrix_mt(&mut RngStream::new(4, 0), &p).unwrap();
        assert_eq!((q.rows(), q.cols()), (1, 3));
        assert!(logpdf_matrix_mt(&p, &q).unwrap().is_finite());
    }
}
