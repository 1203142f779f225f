use rand::Rng;

use super::matric_t::{sample_matric_t, MatricTMethod};
use super::matrix_t::sample_matrix_mt;
use super::params::{BetaIIParams, MatricTParams, MatrixMTParams, Orientation};
use super::{check_point, Transcription};
use crate::algebra::{congruence, hermitian_eigenvalues, DivMatrix, HermitianPD, HERMITIAN_TOL};
use crate::error::{Error, Result};
use crate::special::{lmvgamma, log_gamma, log_mvbeta};

/// Relative size below which a pivot or eigenvalue counts as zero when
/// deciding whether a matrix sits on the boundary of the PD cone.
const BOUNDARY_TOL: f64 = 1e-10;

/// (p, q, ν′): F is p×p, and the law is the gram law of a p×q T with ν′
/// degrees of freedom.
fn shape(params: &BetaIIParams) -> (usize, usize, f64) {
    let (m, n, nu) = (params.m(), params.n(), params.nu());
    match params.orientation() {
        Orientation::Gram => (m, n, nu),
        Orientation::Cogram => (n, m, nu + n as f64 - m as f64),
    }
}

/// `a · log|F|` for Hermitian F, extended to the PD boundary: −∞ when the
/// power a is positive, 0 when it is zero, an error when it is negative.
fn det_power(f: &DivMatrix, a: f64) -> Result<f64> {
    let defect = f.hermitian_defect();
    if defect > HERMITIAN_TOL * f.max_abs_coeff().max(1.0) {
        return Err(Error::NotHermitian(defect));
    }
    match HermitianPD::new(f.clone()) {
        Ok(h) => Ok(a * h.logdet()),
        Err(Error::NotPositiveDefinite { row, pivot }) => {
            let eig = if f.tag().is_associative() {
                hermitian_eigenvalues(f)?
            } else {
                vec![f.get(0, 0).re()]
            };
            let top = eig.iter().fold(1.0_f64, |s, x| s.max(x.abs()));
            let low = eig.iter().copied().fold(f64::INFINITY, f64::min);
            if low < -BOUNDARY_TOL * top {
                return Err(Error::NotPositiveDefinite { row, pivot });
            }
            if a > 0.0 {
                Ok(f64::NEG_INFINITY)
            } else if a == 0.0 {
                Ok(0.0)
            } else {
                Err(Error::DivergentDensity)
            }
        }
        Err(e) => Err(e),
    }
}

fn plus(a: &DivMatrix, b: &DivMatrix) -> Result<HermitianPD> {
    HermitianPD::new(a.add(b)?.symmetrized())
}

/// Real part of tr(AB) for Hermitian A, B.
fn trace_product(a: &DivMatrix, b: &DivMatrix) -> f64 {
    let n = a.rows();
    let mut t = 0.0;
    for i in 0..n {
        for j in 0..n {
            t += a.get(i, j).mul_same(&b.get(j, i)).re();
        }
    }
    t
}

/// Log density of the matricvariate beta type II law. With a scale Δ the
/// argument is Z = L_Δ F L_Δ*, otherwise it is F itself.
pub fn logpdf_beta2_matric(params: &BetaIIParams, f: &DivMatrix) -> Result<f64> {
    logpdf_beta2_matric_variant(params, f, Transcription::Corrected)
}

/// As [`logpdf_beta2_matric`]; the printed variant of the cogram law carries
/// an extra −1 in the exponent of |I + F|.
pub fn logpdf_beta2_matric_variant(params: &BetaIIParams, f: &DivMatrix, variant: Transcription) -> Result<f64> {
    let tag = params.tag();
    let (p, q, nup) = shape(params);
    check_point(tag, p, p, f)?;
    let b = tag.b();
    let a = b * (q as f64 - p as f64 + 1.0) / 2.0 - 1.0;
    let mut c = b * (q as f64 + nup) / 2.0;
    if variant == Transcription::Printed && params.orientation() == Orientation::Cogram {
        c += 1.0;
    }
    let head = -log_mvbeta(tag, p, b * nup / 2.0, b * q as f64 / 2.0)?;
    let det_term = det_power(f, a)?;
    match params.scale() {
        None => {
            let tail = plus(&DivMatrix::identity(tag, p)?, f)?.logdet();
            Ok(head + det_term - c * tail)
        }
        Some(delta) => {
            let tail = plus(delta.matrix(), f)?.logdet();
            Ok(head + b * nup / 2.0 * delta.logdet() + det_term - c * tail)
        }
    }
}

/// Log density of the matrix multivariate beta type II law. With a scale Π
/// the argument is Z = M F M* where MM* = Π⁻¹, otherwise it is F itself.
pub fn logpdf_beta2_multivariate(params: &BetaIIParams, f: &DivMatrix) -> Result<f64> {
    let tag = params.tag();
    let (p, q, _) = shape(params);
    check_point(tag, p, p, f)?;
    let b = tag.b();
    let nu = params.nu();
    let mn = (params.m() * params.n()) as f64;
    let a = b * (q as f64 - p as f64 + 1.0) / 2.0 - 1.0;
    let c = b * (nu + mn) / 2.0;
    let head = log_gamma(c) - log_gamma(b * nu / 2.0) - lmvgamma(tag, p, b * q as f64 / 2.0)?;
    let det_term = det_power(f, a)?;
    match params.scale() {
        None => Ok(head + det_term - c * f.real_trace().ln_1p()),
        Some(pi) => {
            let tr = trace_product(pi.matrix(), f);
            Ok(head + b * q as f64 / 2.0 * pi.logdet() + det_term - c * tr.ln_1p())
        }
    }
}

fn gram_by_orientation(t: &DivMatrix, orientation: Orientation) -> Result<HermitianPD> {
    match orientation {
        Orientation::Gram => HermitianPD::gram_of(t),
        Orientation::Cogram => HermitianPD::gram_of(&t.conj_transpose()),
    }
}

fn scaled(f: HermitianPD, root: Option<&DivMatrix>) -> Result<HermitianPD> {
    match root {
        None => Ok(f),
        Some(l) => congruence(l, &f),
    }
}

/// F = TT* (or T*T) with T standard matricvariate T; scaled to L_Δ F L_Δ*
/// when Δ is set.
pub fn sample_beta2_matric<R: Rng + ?Sized>(rng: &mut R, params: &BetaIIParams) -> Result<HermitianPD> {
    let tag = params.tag();
    let tp = MatricTParams::new(tag, params.m(), params.n(), params.nu())?;
    let t = sample_matric_t(rng, &tp, MatricTMethod::WishartRoot)?;
    let f = gram_by_orientation(&t, params.orientation())?;
    scaled(f, params.scale().map(HermitianPD::cholesky))
}

/// F₁ = T₁T₁* (or T₁*T₁) with T₁ standard matrix multivariate T (ρ = 1);
/// scaled to M F₁ M* with MM* = Π⁻¹ when Π is set.
pub fn sample_beta2_multivariate<R: Rng + ?Sized>(rng: &mut R, params: &BetaIIParams) -> Result<HermitianPD> {
    let tag = params.tag();
    let tp = MatrixMTParams::new(tag, params.m(), params.n(), params.nu(), 1.0)?;
    let t = sample_matrix_mt(rng, &tp)?;
    let f = gram_by_orientation(&t, params.orientation())?;
    let pi_inv = params.scale().map(HermitianPD::inverse).transpose()?;
    scaled(f, pi_inv.as_ref().map(HermitianPD::cholesky))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::testutil::random_hpd;
    use crate::algebra::{AlgebraTag, DivScalar};
    use crate::rng::RngStream;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const R: AlgebraTag = AlgebraTag::REAL;

    fn s(tag: AlgebraTag, x: f64) -> DivMatrix {
        DivMatrix::from_entries(tag, 1, 1, vec![DivScalar::real(tag, x)]).unwrap()
    }

    #[test]
    fn scalar_matricvariate_values() {
        let p = BetaIIParams::new(R, 1, 2, 2.0, Orientation::Gram).unwrap();
        assert!((logpdf_beta2_matric(&p, &s(R, 1.0)).unwrap() - 0.25f64.ln()).abs() < 1e-14);
        assert!(logpdf_beta2_matric(&p, &s(R, 1e-12)).unwrap().abs() < 1e-10);
        assert!(logpdf_beta2_matric(&p, &s(R, 0.0)).unwrap().abs() < 1e-14);
    }

    #[test]
    fn scalar_multivariate_value() {
        let p = BetaIIParams::new(R, 1, 2, 2.0, Orientation::Gram).unwrap();
        assert!((logpdf_beta2_multivariate(&p, &s(R, 1.0)).unwrap() - 0.25f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn boundary_behaviour() {
        // a = β(q − p + 1)/2 − 1: positive for n = 3, negative for n = 1 (β = 1, m = 1).
        let zero = s(R, 0.0);
        let pos = BetaIIParams::new(R, 1, 3, 2.0, Orientation::Gram).unwrap();
        assert_eq!(logpdf_beta2_matric(&pos, &zero).unwrap(), f64::NEG_INFINITY);
        let neg = BetaIIParams::new(R, 1, 1, 2.0, Orientation::Gram).unwrap();
        assert!(matches!(logpdf_beta2_matric(&neg, &zero), Err(Error::DivergentDensity)));
        assert!(matches!(
            logpdf_beta2_matric(&pos, &s(R, -0.5)),
            Err(Error::NotPositiveDefinite { .. })
        ));
        let p2 = BetaIIParams::new(R, 2, 4, 2.0, Orientation::Gram).unwrap();
        let asym = DivMatrix::from_real_rows(R, &[&[1.0, 0.5], &[0.0, 1.0]]).unwrap();
        assert!(matches!(logpdf_beta2_matric(&p2, &asym), Err(Error::NotHermitian(_))));
        let singular = DivMatrix::from_real_rows(R, &[&[1.0, 1.0], &[1.0, 1.0]]).unwrap();
        assert_eq!(logpdf_beta2_matric(&p2, &singular).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn row_vectors_coincide() {
        for tag in AlgebraTag::ALL {
            for n in 1..=3 {
                let p = BetaIIParams::new(tag, 1, n, 2.5, Orientation::Gram).unwrap();
                for k in 1..=50 {
                    let f = s(tag, 0.1 * k as f64);
                    let a = logpdf_beta2_matric(&p, &f).unwrap();
                    let b = logpdf_beta2_multivariate(&p, &f).unwrap();
                    assert!((a - b).abs() < 1e-12, "{tag} n={n}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn identity_scale_is_the_standard_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (m, n, o) in [(2, 3, Orientation::Gram), (3, 2, Orientation::Cogram)] {
            let tag = AlgebraTag::COMPLEX;
            let p = BetaIIParams::new(tag, m, n, 4.0, o).unwrap();
            let scaled = p.clone().with_scale(Some(HermitianPD::identity(tag, p.dim()).unwrap())).unwrap();
            let f = random_hpd(&mut rng, tag, p.dim()).into_matrix();
            assert_eq!(logpdf_beta2_matric(&p, &f).unwrap(), logpdf_beta2_matric(&scaled, &f).unwrap());
            assert_eq!(logpdf_beta2_multivariate(&p, &f).unwrap(), logpdf_beta2_multivariate(&scaled, &f).unwrap());
        }
    }

    #[test]
    fn scale_enters_by_congruence() {
        // Z = L F L* with density f_F(F) |Δ|^{-(β(p-1)/2+1)}.
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let tag = AlgebraTag::QUATERNION;
        let p = BetaIIParams::new(tag, 2, 4, 3.5, Orientation::Gram).unwrap();
        let delta = random_hpd(&mut rng, tag, 2);
        let ps = p.clone().with_scale(Some(delta.clone())).unwrap();
        let f = random_hpd(&mut rng, tag, 2);
        let z = congruence(delta.cholesky(), &f).unwrap();
        let jac = (tag.b() * 1.0 / 2.0 + 1.0) * delta.logdet();
        let lhs = logpdf_beta2_matric(&ps, z.matrix()).unwrap();
        let rhs = logpdf_beta2_matric(&p, f.matrix()).unwrap() - jac;
        assert!((lhs - rhs).abs() < 1e-9, "{lhs} vs {rhs}");

        let pi = random_hpd(&mut rng, tag, 2);
        let pm = p.with_scale(Some(pi.clone())).unwrap();
        let root = pi.inverse().unwrap();
        let z = congruence(root.cholesky(), &f).unwrap();
        let lhs = logpdf_beta2_multivariate(&pm, z.matrix()).unwrap();
        let base = BetaIIParams::new(tag, 2, 4, 3.5, Orientation::Gram).unwrap();
        let rhs = logpdf_beta2_multivariate(&base, f.matrix()).unwrap() + (tag.b() / 2.0 + 1.0) * pi.logdet();
        assert!((lhs - rhs).abs() < 1e-9, "{lhs} vs {rhs}");
    }

    #[test]
    fn printed_cogram_exponent_differs() {
        let p = BetaIIParams::new(R, 2, 1, 3.0, Orientation::Cogram).unwrap();
        let f = s(R, 1.0);
        let good = logpdf_beta2_matric(&p, &f).unwrap();
        let printed = logpdf_beta2_matric_variant(&p, &f, Transcription::Printed).unwrap();
        assert!((good - printed - 2.0f64.ln()).abs() < 1e-14);
        let g = BetaIIParams::new(R, 1, 2, 3.0, Orientation::Gram).unwrap();
        assert_eq!(
            logpdf_beta2_matric(&g, &f).unwrap(),
            logpdf_beta2_matric_variant(&g, &f, Transcription::Printed).unwrap()
        );
    }

    #[test]
    fn samples_have_the_right_shape() {
        let mut rng = RngStream::new(3, 0);
        for (m, n, o) in [(2, 3, Orientation::Gram), (3, 2, Orientation::Cogram)] {
            let p = BetaIIParams::new(AlgebraTag::QUATERNION, m, n, 9.5, o).unwrap();
            for _ in 0..50 {
                let f = sample_beta2_matric(&mut rng, &p).unwrap();
                assert_eq!(f.dim(), p.dim());
                assert!(hermitian_eigenvalues(f.matrix()).unwrap().iter().all(|x| *x >= 0.0));
                let g = sample_beta2_multivariate(&mut rng, &p).unwrap();
                assert_eq!(g.dim(), p.dim());
            }
        }
        let p8 = BetaIIParams::new(AlgebraTag::OCTONION, 1, 2, 2.0, Orientation::Gram)
            .unwrap()
            .with_scale(Some(HermitianPD::diagonal(AlgebraTag::OCTONION, &[3.0]).unwrap()))
            .unwrap();
        let f = sample_beta2_multivariate(&mut rng, &p8).unwrap();
        assert!(f.matrix().get(0, 0).re() > 0.0);
    }
}
