use std::cell::RefCell;
use std::collections::BTreeMap;
use std::f64::consts::LN_2;

use rand::Rng;

use super::checks::{Beta2Family, Budget, CheckSpec, CheckTarget, Erratum, RadialFamily};
use super::ks::{ks_one_sample_values, ks_two_sample, KsResult};
use super::moment_check;
use super::quadrature::{integrate, integrate_half_line, integrate_ordered_cone_2d, radial_mass, Quad, QuadOptions};
use crate::algebra::{hermitian_eigenvalues, singular_values, AlgebraTag, DivMatrix, DivScalar, HermitianPD};
use crate::distributions::{
    logpdf_beta2_matric_variant, logpdf_beta2_multivariate, logpdf_matric_t, logpdf_matrix_mt, sample_beta2_matric,
    sample_elliptical_t, sample_gamma_scalar, sample_matric_t, sample_matrix_mt, sample_wishart, BetaIIParams,
    DensityForm, EllipticalParams, GammaScalarParams, MatricTMethod, MatricTParams, MatrixMTParams, Orientation,
    Transcription, WishartMethod, WishartParams,
};
use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::special::{beta_reg, log_gamma_ratio_identity_gap};
use crate::spectral::SpectralDensity;

pub(crate) struct Outcome {
    pub statistic: f64,
    pub pass: bool,
    pub details: BTreeMap<String, f64>,
}

/// Holds the first error raised inside an integrand, which itself can
/// only return a number.
struct Trap(RefCell<Option<Error>>);

impl Trap {
    fn new() -> Self {
        Trap(RefCell::new(None))
    }

    fn value(&self, r: Result<f64>) -> f64 {
        match r {
            Ok(v) => v,
            Err(e) => {
                self.0.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    }

    fn finish<T>(self, r: Result<T>) -> Result<T> {
        match self.0.into_inner() {
            Some(e) => Err(e),
            None => r,
        }
    }
}

fn details(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn samples(budget: Budget) -> usize {
    match budget {
        Budget::Samples(n) => n,
        _ => unreachable!("validated budget"),
    }
}

fn trials(budget: Budget) -> usize {
    match budget {
        Budget::Trials(n) => n,
        _ => unreachable!("validated budget"),
    }
}

fn tolerance(budget: Budget) -> f64 {
    match budget {
        Budget::Tolerance(t) => t,
        _ => unreachable!("validated budget"),
    }
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

fn draw<F: FnMut() -> Result<f64>>(n: usize, mut f: F) -> Result<Vec<f64>> {
    (0..n).map(|_| f()).collect::<Result<Vec<_>>>().map(sorted)
}

fn scalar(tag: AlgebraTag, x: f64) -> DivMatrix {
    DivMatrix::from_entries(tag, 1, 1, vec![DivScalar::real(tag, x)]).expect("1x1 matrix")
}

pub(crate) fn evaluate(spec: &CheckSpec, rng: &mut RngStream) -> Result<Outcome> {
    let threshold = spec.threshold();
    let budget = spec.budget();
    match spec.target() {
        CheckTarget::GammaRatioIdentity => {
            let mut worst: f64 = 0.0;
            for _ in 0..trials(budget) {
                let tag = AlgebraTag::ALL[rng.random_range(0..4)];
                let m = rng.random_range(1..=5);
                let n = rng.random_range(1..=5);
                let nu = m as f64 - 1.0 + 0.05 + 8.0 * rng.random::<f64>();
                worst = worst.max(log_gamma_ratio_identity_gap(tag, m, n, nu)?.abs());
            }
            Ok(identity_outcome(worst, threshold, trials(budget)))
        }
        CheckTarget::FormEquivalence { beta } => {
            let mut worst: f64 = 0.0;
            for _ in 0..trials(budget) {
                worst = worst.max(form_gap(rng, *beta)?);
            }
            Ok(identity_outcome(worst, threshold, trials(budget)))
        }
        CheckTarget::RadialMass { family, beta, n, nu } => {
            let q = radial(*family, *beta, *n, *nu, tolerance(budget))?;
            Ok(mass_outcome(q, threshold))
        }
        CheckTarget::Beta2Mass {
            family,
            beta,
            m,
            n,
            nu,
            orientation,
            variant,
        } => {
            let q = beta2_mass(*family, *beta, *m, *n, *nu, *orientation, *variant, tolerance(budget))?;
            Ok(mass_outcome(q, threshold))
        }
        CheckTarget::SpectralMass {
            density,
            beta,
            m,
            n,
            nu,
            variant,
        } => {
            let q = spectral_mass(*density, *beta, *m, *n, *nu, *variant, tolerance(budget))?;
            Ok(mass_outcome(q, threshold))
        }
        CheckTarget::ErratumEvidence { erratum } => {
            let tol = tolerance(budget);
            let mass = |variant| match erratum {
                Erratum::CogramExponent => beta2_mass(
                    Beta2Family::Matric,
                    AlgebraTag::REAL,
                    2,
                    1,
                    3.0,
                    Orientation::Cogram,
                    variant,
                    tol,
                ),
                Erratum::PiPower => spectral_mass(SpectralDensity::SvMatricT, AlgebraTag::REAL, 1, 1, 1.0, variant, tol),
            };
            let corrected = mass(Transcription::Corrected)?.value;
            let printed = mass(Transcription::Printed)?.value;
            Ok(Outcome {
                statistic: corrected,
                pass: (corrected - 1.0).abs() <= threshold && (printed - 1.0).abs() > 0.1,
                details: details(&[("corrected_mass", corrected), ("printed_mass", printed)]),
            })
        }
        CheckTarget::StudentScalar { nu } => {
            let p = MatricTParams::new(AlgebraTag::REAL, 1, 1, *nu)?;
            let xs = draw(samples(budget), || {
                Ok(sample_matric_t(rng, &p, MatricTMethod::WishartRoot)?.get(0, 0).re())
            })?;
            let cdf: Vec<f64> = xs.iter().map(|&x| student_cdf(x, *nu)).collect();
            ks1_outcome(ks_one_sample_values(&xs, &cdf)?, xs.len(), threshold)
        }
        CheckTarget::BetaPrimeScalar { beta, n, nu } => {
            let p = BetaIIParams::new(*beta, 1, *n, *nu, Orientation::Gram)?;
            let xs = draw(samples(budget), || Ok(sample_beta2_matric(rng, &p)?.matrix().get(0, 0).re()))?;
            let (a, b) = (beta.b() * *n as f64 / 2.0, beta.b() * nu / 2.0);
            let cdf: Vec<f64> = xs.iter().map(|&f| beta_reg(a, b, f / (1.0 + f))).collect();
            ks1_outcome(ks_one_sample_values(&xs, &cdf)?, xs.len(), threshold)
        }
        CheckTarget::MatrixTScalar { nu, rho } => {
            let p = MatrixMTParams::new(AlgebraTag::REAL, 1, 1, *nu, *rho)?;
            let xs = draw(samples(budget), || Ok(sample_matrix_mt(rng, &p)?.get(0, 0).re()))?;
            let trap = Trap::new();
            let pdf = |x: f64| trap.value(logpdf_matrix_mt(&p, &scalar(AlgebraTag::REAL, x))).exp();
            let cdf = symmetric_cdf(&xs, &pdf);
            let cdf = trap.finish(cdf)?;
            ks1_outcome(ks_one_sample_values(&xs, &cdf)?, xs.len(), threshold)
        }
        CheckTarget::TopEigenvalue { beta, m, n, nu } => {
            let p = BetaIIParams::new(*beta, *m, *n, *nu, Orientation::Gram)?;
            let xs = draw(samples(budget), || {
                let f = sample_beta2_matric(rng, &p)?;
                Ok(hermitian_eigenvalues(f.matrix())?[0])
            })?;
            let cdf = top_eigen_cdf(*beta, *m, *n, *nu, &xs)?;
            ks1_outcome(ks_one_sample_values(&xs, &cdf)?, xs.len(), threshold)
        }
        CheckTarget::ConstructionEquivalence {
            beta,
            m,
            n,
            nu,
            component,
        } => {
            let p = MatricTParams::new(*beta, *m, *n, *nu)?;
            let count = samples(budget);
            let mut sv = |method| draw(count, || Ok(singular_values(&sample_matric_t(rng, &p, method)?)?[*component]));
            let a = sv(MatricTMethod::WishartRoot)?;
            let b = sv(MatricTMethod::InverseRoot)?;
            ks2_outcome(ks_two_sample(&a, &b)?, count, threshold)
        }
        CheckTarget::WishartMethods { beta, m, nu, component } => {
            let p = WishartParams::new(*beta, *m, *nu, None)?;
            let count = samples(budget);
            let mut eig = |method| {
                draw(count, || {
                    let v = sample_wishart(rng, &p, method)?;
                    Ok(hermitian_eigenvalues(v.matrix())?[*component])
                })
            };
            let a = eig(WishartMethod::Bartlett)?;
            let b = eig(WishartMethod::Gram)?;
            ks2_outcome(ks_two_sample(&a, &b)?, count, threshold)
        }
        CheckTarget::EllipticalInvariance {
            beta,
            m,
            n,
            nu,
            mixture,
            component,
        } => {
            let mixed = EllipticalParams::new(*beta, *m, *n, *nu, mixture.clone())?;
            let normal = MatricTParams::new(*beta, *m, *n, *nu as f64)?;
            let count = samples(budget);
            let a = draw(count, || Ok(singular_values(&sample_elliptical_t(rng, &mixed)?)?[*component]))?;
            let b = draw(count, || {
                Ok(singular_values(&sample_matric_t(rng, &normal, MatricTMethod::WishartRoot)?)?[*component])
            })?;
            ks2_outcome(ks_two_sample(&a, &b)?, count, threshold)
        }
        CheckTarget::WishartMean { beta, m, nu, xi } => {
            let p = WishartParams::new(*beta, *m, *nu, xi.clone())?;
            let draws: Vec<HermitianPD> = (0..samples(budget))
                .map(|_| sample_wishart(rng, &p, WishartMethod::Bartlett))
                .collect::<Result<_>>()?;
            let scale = match xi {
                Some(x) => x.matrix().clone(),
                None => DivMatrix::identity(*beta, *m)?,
            };
            let mut worst: f64 = 0.0;
            let mut components = 0;
            for i in 0..*m {
                for j in i..*m {
                    let coeffs = if i == j { 1 } else { beta.dim() };
                    for k in 0..coeffs {
                        let expected = nu * scale.get(i, j).coeffs()[k];
                        let r = moment_check(&draws, |v| v.matrix().get(i, j).coeffs()[k], expected, threshold)?;
                        worst = worst.max(r.z.abs());
                        components += 1;
                    }
                }
            }
            Ok(Outcome {
                statistic: worst,
                pass: worst <= threshold,
                details: details(&[("components", components as f64), ("samples", draws.len() as f64)]),
            })
        }
        CheckTarget::GammaMean { beta, nu, rho } => {
            let p = GammaScalarParams::new(*beta, *nu, *rho)?;
            let xs: Vec<f64> = (0..samples(budget)).map(|_| sample_gamma_scalar(rng, &p)).collect();
            let r = moment_check(&xs, |x| *x, p.mean(), threshold)?;
            Ok(Outcome {
                statistic: r.z.abs(),
                pass: r.pass,
                details: details(&[("mean", r.mean), ("se", r.se), ("expected", p.mean())]),
            })
        }
    }
}

fn identity_outcome(worst: f64, threshold: f64, trials: usize) -> Outcome {
    Outcome {
        statistic: worst,
        pass: worst < threshold,
        details: details(&[("trials", trials as f64)]),
    }
}

fn mass_outcome(q: Quad, threshold: f64) -> Outcome {
    Outcome {
        statistic: q.value,
        pass: (q.value - 1.0).abs() <= threshold,
        details: details(&[("quadrature_error", q.error), ("evaluations", q.evaluations as f64)]),
    }
}

fn ks1_outcome(r: KsResult, n: usize, threshold: f64) -> Result<Outcome> {
    Ok(Outcome {
        statistic: r.p,
        pass: r.p > threshold,
        details: details(&[("d", r.d), ("samples", n as f64)]),
    })
}

fn ks2_outcome(r: KsResult, n: usize, threshold: f64) -> Result<Outcome> {
    Ok(Outcome {
        statistic: r.p,
        pass: r.p > threshold,
        details: details(&[("d", r.d), ("samples_each", n as f64)]),
    })
}

fn random_hpd(rng: &mut RngStream, tag: AlgebraTag, k: usize) -> Result<HermitianPD> {
    let g = crate::distributions::standard_gaussian(rng, tag, k, k + 2)?;
    let m = g.gram().scale(1.0 / (k + 2) as f64).add(&DivMatrix::identity(tag, k)?.scale(0.5))?;
    HermitianPD::new(m)
}

fn form_gap(rng: &mut RngStream, tag: AlgebraTag) -> Result<f64> {
    use crate::distributions::standard_gaussian;
    let m = rng.random_range(1..=4);
    let n = rng.random_range(1..=4);
    let nu = tag.b() * (m as f64 - 1.0) + 0.1 + 6.0 * rng.random::<f64>();
    let mu = standard_gaussian(rng, tag, m, n)?;
    let params = MatricTParams::new(tag, m, n, nu)?
        .with_mu(Some(mu.clone()))?
        .with_xi(Some(random_hpd(rng, tag, m)?))?
        .with_sigma(Some(random_hpd(rng, tag, n)?))?;
    let t = mu.add(&standard_gaussian(rng, tag, m, n)?.scale(1.5))?;
    let primal = logpdf_matric_t(&params, &t, DensityForm::Primal)?;
    let dual = logpdf_matric_t(&params, &t, DensityForm::Dual)?;
    Ok((primal - dual).abs())
}

/// CDF of a real scalar matricvariate T with ν degrees of freedom, which is
/// Student's t with ν degrees of freedom scaled by 1/√ν.
fn student_cdf(x: f64, nu: f64) -> f64 {
    let tail = 0.5 * beta_reg(nu / 2.0, 0.5, 1.0 / (1.0 + x * x));
    if x > 0.0 {
        1.0 - tail
    } else {
        tail
    }
}

fn radial(family: RadialFamily, tag: AlgebraTag, n: usize, nu: f64, tol: f64) -> Result<Quad> {
    let point = |r: f64| -> Result<DivMatrix> {
        let mut t = DivMatrix::zeros(tag, 1, n)?;
        t.set(0, 0, DivScalar::real(tag, r));
        Ok(t)
    };
    let trap = Trap::new();
    let q = match family {
        RadialFamily::MatricT => {
            let p = MatricTParams::new(tag, 1, n, nu)?;
            radial_mass(
                |r| trap.value(point(r).and_then(|t| logpdf_matric_t(&p, &t, DensityForm::Primal))),
                tag.dim() * n,
                QuadOptions::abs(tol),
            )
        }
        RadialFamily::MatrixT => {
            let p = MatrixMTParams::new(tag, 1, n, nu, 1.0)?;
            radial_mass(
                |r| trap.value(point(r).and_then(|t| logpdf_matrix_mt(&p, &t))),
                tag.dim() * n,
                QuadOptions::abs(tol),
            )
        }
    };
    trap.finish(q)
}

/// ∫₀^∞ p(f) df, computed as ∫₀^∞ 2u p(u²) du to soften the power
/// singularity at the origin.
#[allow(clippy::too_many_arguments)]
fn beta2_mass(
    family: Beta2Family,
    tag: AlgebraTag,
    m: usize,
    n: usize,
    nu: f64,
    orientation: Orientation,
    variant: Transcription,
    tol: f64,
) -> Result<Quad> {
    let p = BetaIIParams::new(tag, m, n, nu, orientation)?;
    let logpdf = |f: f64| match family {
        Beta2Family::Matric => logpdf_beta2_matric_variant(&p, &scalar(tag, f), variant),
        Beta2Family::Multivariate => logpdf_beta2_multivariate(&p, &scalar(tag, f)),
    };
    let trap = Trap::new();
    let q = integrate_half_line(
        |u| (LN_2 + u.ln() + trap.value(logpdf(u * u))).exp(),
        0.0,
        QuadOptions::abs(tol),
    );
    trap.finish(q)
}

fn spectral_mass(
    density: SpectralDensity,
    tag: AlgebraTag,
    m: usize,
    n: usize,
    nu: f64,
    variant: Transcription,
    tol: f64,
) -> Result<Quad> {
    let trap = Trap::new();
    let q = match m {
        1 => integrate_half_line(
            |x| trap.value(density.log_density_values(tag, 1, n, nu, &[x], variant)).exp(),
            0.0,
            QuadOptions::abs(tol),
        ),
        2 => integrate_ordered_cone_2d(
            |x1, x2| trap.value(density.log_density_values(tag, 2, n, nu, &[x1, x2], variant)).exp(),
            QuadOptions::abs(tol),
        ),
        _ => return Err(Error::InvalidParameter(format!("spectral mass needs m <= 2, got {m}"))),
    };
    trap.finish(q)
}

fn piece_options() -> QuadOptions {
    QuadOptions {
        abs_tol: 1e-13,
        rel_tol: 1e-11,
        max_intervals: 400,
    }
}

/// Running integrals of `g` from `start` to each of the ascending `points`.
fn cumulative<G: FnMut(f64) -> f64>(points: &[f64], start: f64, mut g: G) -> Result<Vec<f64>> {
    let mut acc = 0.0;
    let mut prev = start;
    let mut out = Vec::with_capacity(points.len());
    for &x in points {
        acc += integrate(&mut g, prev, x, piece_options())?.value;
        prev = x;
        out.push(acc);
    }
    Ok(out)
}

/// CDF values at the sorted `xs` of a density symmetric about zero,
/// integrating outward from the origin on each side.
fn symmetric_cdf<P: Fn(f64) -> f64>(xs: &[f64], pdf: &P) -> Result<Vec<f64>> {
    let split = xs.partition_point(|x| *x < 0.0);
    let neg: Vec<f64> = xs[..split].iter().rev().map(|x| -x).collect();
    let below = cumulative(&neg, 0.0, |y| pdf(-y))?;
    let above = cumulative(&xs[split..], 0.0, pdf)?;
    let mut cdf: Vec<f64> = below.iter().rev().map(|g| 0.5 - g).collect();
    cdf.extend(above.iter().map(|g| 0.5 + g));
    Ok(cdf.into_iter().map(|c| c.clamp(0.0, 1.0)).collect())
}

/// P(λ_max ≤ x) at the sorted `xs`, integrating the joint eigenvalue
/// density over λ₂ < λ₁ ≤ x.
fn top_eigen_cdf(tag: AlgebraTag, m: usize, n: usize, nu: f64, xs: &[f64]) -> Result<Vec<f64>> {
    let density = SpectralDensity::EigBeta2;
    let trap = Trap::new();
    let joint = |v: &[f64]| trap.value(density.log_density_values(tag, m, n, nu, v, Transcription::Corrected)).exp();
    let cdf = match m {
        1 => cumulative(xs, 0.0, |x| joint(&[x])),
        2 => cumulative(xs, 0.0, |x1| match integrate(|x2| joint(&[x1, x2]), 0.0, x1, piece_options()) {
            Ok(q) => q.value,
            Err(e) => trap.value(Err(e)),
        }),
        _ => return Err(Error::InvalidParameter(format!("top eigenvalue CDF needs m <= 2, got {m}"))),
    };
    let cdf = trap.finish(cdf)?;
    Ok(cdf.into_iter().map(|c| c.clamp(0.0, 1.0)).collect())
}
