use rand::Rng;
use serde::{Deserialize, Serialize};

use super::gaussian::{sample_gaussian, sample_wishart, WishartMethod};
use super::params::{MatricTParams, WishartParams};
use super::{add_location, check_point, factor_right, require_associative, sub_location};
use crate::algebra::{solve_lower, solve_right_lower, DivMatrix, HermitianPD};
use crate::error::{Error, Result};
use crate::special::{lmvgamma, LN_PI};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatricTMethod {
    /// T = L⁻¹Y + μ with LL* = V ~ W_m(ν, Ξ) and Y ~ N(0, I ⊗ Σ).
    WishartRoot,
    /// T = X L₁⁻¹ + μ with L₁L₁* = U ~ W_n(ν + n − m, Σ⁻¹) and X ~ N(0, Ξ⁻¹ ⊗ I).
    InverseRoot,
}

/// Which of the two equivalent determinant forms to evaluate: the m×m one
/// or the n×n one.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityForm {
    #[default]
    Primal,
    Dual,
}

fn identity_or(h: Option<&HermitianPD>, tag: crate::algebra::AlgebraTag, n: usize) -> Result<DivMatrix> {
    match h {
        Some(h) => Ok(h.matrix().clone()),
        None => DivMatrix::identity(tag, n),
    }
}

fn logdet_or_zero(h: Option<&HermitianPD>) -> f64 {
    h.map_or(0.0, HermitianPD::logdet)
}

/// Log density of the matricvariate T law at `t`.
pub fn logpdf_matric_t(params: &MatricTParams, t: &DivMatrix, form: DensityForm) -> Result<f64> {
    let (tag, m, n, nu) = (params.tag(), params.m(), params.n(), params.nu());
    check_point(tag, m, n, t)?;
    let b = tag.b();
    let (mf, nf) = (m as f64, n as f64);
    let a = sub_location(t, params.mu())?;
    let ld_xi = logdet_or_zero(params.xi());
    let ld_sigma = logdet_or_zero(params.sigma());
    match form {
        DensityForm::Primal => {
            let head = lmvgamma(tag, m, b * (nf + nu) / 2.0)? - mf * nf * b / 2.0 * LN_PI - lmvgamma(tag, m, b * nu / 2.0)?
                - b * nu / 2.0 * ld_xi
                - b * mf / 2.0 * ld_sigma;
            // Ξ⁻¹ + A Σ⁻¹ A*, with A Σ⁻¹ A* = W W* and W* = L_Σ⁻¹ A*.
            let w = match params.sigma() {
                Some(s) => solve_lower(s.cholesky(), &a.conj_transpose())?.conj_transpose(),
                None => a,
            };
            let xi_inv = match params.xi() {
                Some(xi) => xi.inverse()?.into_matrix(),
                None => DivMatrix::identity(tag, m)?,
            };
            let k = HermitianPD::new(xi_inv.add(&w.gram())?.symmetrized())?;
            Ok(head - b * (nf + nu) / 2.0 * k.logdet())
        }
        DensityForm::Dual => {
            let head = lmvgamma(tag, n, b * (nf + nu) / 2.0)? + b * nf / 2.0 * ld_xi + b * (nf + nu - mf) / 2.0 * ld_sigma
                - mf * nf * b / 2.0 * LN_PI
                - lmvgamma(tag, n, b * (nf + nu - mf) / 2.0)?;
            // Σ + A* Ξ A, with A* Ξ A = U U* and U = A* L_Ξ.
            let at = a.conj_transpose();
            let u = match params.xi() {
                Some(xi) => factor_right(&at, xi.cholesky())?,
                None => at,
            };
            let k = HermitianPD::new(identity_or(params.sigma(), tag, n)?.add(&u.gram())?.symmetrized())?;
            Ok(head - b * (nf + nu) / 2.0 * k.logdet())
        }
    }
}

/// Draws T ~ T_{m×n}^β(ν, μ, Ξ, Σ).
pub fn sample_matric_t<R: Rng + ?Sized>(rng: &mut R, params: &MatricTParams, method: MatricTMethod) -> Result<DivMatrix> {
    let (tag, m, n, nu) = (params.tag(), params.m(), params.n(), params.nu());
    require_associative(tag, "matricvariate T sampling")?;
    let centred = match method {
        MatricTMethod::WishartRoot => {
            let wp = WishartParams::new(tag, m, nu, params.xi().cloned())?;
            let v = sample_wishart(rng, &wp, WishartMethod::Bartlett)?;
            let y = sample_gaussian(rng, tag, m, n, params.sigma())?;
            solve_lower(v.cholesky(), &y)?
        }
        MatricTMethod::InverseRoot => {
            let dof = nu + n as f64 - m as f64;
            let sigma_inv = params.sigma().map(HermitianPD::inverse).transpose()?;
            let wp = WishartParams::new(tag, n, dof, sigma_inv).map_err(|e| match e {
                Error::Domain(_) => Error::Domain(format!(
                    "inverse-root construction needs nu + n - m > beta(n-1), got {dof} with n = {n}"
                )),
                other => other,
            })?;
            let u = sample_wishart(rng, &wp, WishartMethod::Bartlett)?;
            let xi_inv = params.xi().map(HermitianPD::inverse).transpose()?;
            // Rows of X have covariance Ξ⁻¹: X = K X₀ with K K* = Ξ⁻¹.
            let x0 = sample_gaussian(rng, tag, m, n, None)?;
            let x = match &xi_inv {
                Some(k) => k.cholesky().matmul(&x0)?,
                None => x0,
            };
            solve_right_lower(&x, u.cholesky())?
        }
    };
    add_location(centred, params.mu())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::testutil::{random_hpd, random_matrix};
    use crate::algebra::{AlgebraTag, DivScalar};
    use crate::rng::RngStream;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn scalar(tag: AlgebraTag, c: &[f64]) -> DivMatrix {
        DivMatrix::from_entries(tag, 1, 1, vec![DivScalar::from_coeffs(tag, c).unwrap()]).unwrap()
    }

    #[test]
    fn cauchy_at_the_mode() {
        let p = MatricTParams::new(AlgebraTag::REAL, 1, 1, 1.0).unwrap();
        let v = logpdf_matric_t(&p, &scalar(AlgebraTag::REAL, &[0.0]), DensityForm::Primal).unwrap();
        assert!((v + PI.ln()).abs() < 1e-14);
        assert!((v + 1.1447).abs() < 1e-4);
    }

    #[test]
    fn student_three_at_the_mode() {
        let p = MatricTParams::new(AlgebraTag::REAL, 1, 1, 3.0).unwrap();
        let v = logpdf_matric_t(&p, &scalar(AlgebraTag::REAL, &[0.0]), DensityForm::Primal).unwrap();
        assert!((v - (2.0 / PI).ln()).abs() < 1e-14);
    }

    #[test]
    fn primal_equals_dual_quaternion() {
        let tag = AlgebraTag::QUATERNION;
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for k in 0..100 {
            let nu = 4.5 + (k % 7) as f64;
            let p = MatricTParams::new(tag, 2, 3, nu)
                .unwrap()
                .with_mu(Some(random_matrix(&mut rng, tag, 2, 3)))
                .unwrap()
                .with_xi(Some(random_hpd(&mut rng, tag, 2)))
                .unwrap()
                .with_sigma(Some(random_hpd(&mut rng, tag, 3)))
                .unwrap();
            let t = random_matrix(&mut rng, tag, 2, 3).scale(2.0);
            let a = logpdf_matric_t(&p, &t, DensityForm::Primal).unwrap();
            let b = logpdf_matric_t(&p, &t, DensityForm::Dual).unwrap();
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn octonion_scalar_density() {
        // β = 8, m = n = 1, ν = 1: π⁻⁴ Γ(8)/Γ(4) (1 + |t|²)^{-8}
        let tag = AlgebraTag::OCTONION;
        let p = MatricTParams::new(tag, 1, 1, 1.0).unwrap();
        let t = scalar(tag, &[0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5]);
        let want = (5040.0f64 / 6.0).ln() - 4.0 * PI.ln() - 8.0 * 1.5f64.ln();
        for form in [DensityForm::Primal, DensityForm::Dual] {
            let got = logpdf_matric_t(&p, &t, form).unwrap();
            assert!((got - want).abs() < 1e-12, "{form:?}: {got} vs {want}");
        }
    }

    #[test]
    fn octonion_rows_only_in_primal_form() {
        let tag = AlgebraTag::OCTONION;
        let p = MatricTParams::new(tag, 1, 3, 2.0).unwrap();
        let t = DivMatrix::zeros(tag, 1, 3).unwrap();
        assert!(logpdf_matric_t(&p, &t, DensityForm::Primal).unwrap().is_finite());
        assert!(matches!(
            logpdf_matric_t(&p, &t, DensityForm::Dual),
            Err(Error::OctonionRestriction(_))
        ));
        let mut rng = RngStream::new(1, 1);
        assert!(matches!(
            sample_matric_t(&mut rng, &p, MatricTMethod::WishartRoot),
            Err(Error::OctonionRestriction(_))
        ));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let p = MatricTParams::new(AlgebraTag::REAL, 2, 2, 3.0).unwrap();
        let t = DivMatrix::zeros(AlgebraTag::REAL, 2, 3).unwrap();
        assert!(matches!(logpdf_matric_t(&p, &t, DensityForm::Primal), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn inverse_root_domain() {
        // ν + n − m = 5 + 3 − 2 = 6 is not above β(n − 1) = 8 for quaternions.
        let p = MatricTParams::new(AlgebraTag::QUATERNION, 2, 3, 5.0).unwrap();
        let mut rng = RngStream::new(2, 0);
        assert!(sample_matric_t(&mut rng, &p, MatricTMethod::WishartRoot).is_ok());
        assert!(matches!(
            sample_matric_t(&mut rng, &p, MatricTMethod::InverseRoot),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn sampler_is_deterministic_and_shaped() {
        let tag = AlgebraTag::COMPLEX;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = MatricTParams::new(tag, 2, 3, 5.0)
            .unwrap()
            .with_mu(Some(random_matrix(&mut rng, tag, 2, 3)))
            .unwrap()
            .with_xi(Some(random_hpd(&mut rng, tag, 2)))
            .unwrap()
            .with_sigma(Some(random_hpd(&mut rng, tag, 3)))
            .unwrap();
        for method in [MatricTMethod::WishartRoot, MatricTMethod::InverseRoot] {
            let a = sample_matric_t(&mut RngStream::new(9, 4), &p, method).unwrap();
            let b = sample_matric_t(&mut RngStream::new(9, 4), &p, method).unwrap();
            assert_eq!(a, b);
            assert_eq!((a.rows(), a.cols()), (2, 3));
        }
    }
}
