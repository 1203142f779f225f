//! Adaptive Gauss–Kronrod (7, 15) quadrature with a compactifying map for
//! half-line integrals, plus the radial and ordered-cone reductions used by
//! the normalization checks.

use crate::algebra::AlgebraTag;
use crate::error::{Error, Result};
use crate::special::{log_gamma, LN_PI};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the odd-indexed Kronrod nodes (and the centre).
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quad {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_intervals: 4000,
        }
    }
}

impl QuadOptions {
    pub fn abs(abs_tol: f64) -> Self {
        QuadOptions {
            abs_tol,
            rel_tol: 0.0,
            ..Default::default()
        }
    }
}

/// One 15-point Kronrod rule on [a, b] with its embedded 7-point Gauss
/// estimate; returns (kronrod, |kronrod − gauss|).
fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive integral of `f` over the finite interval [a, b].
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, opts: QuadOptions) -> Result<Quad> {
    if a == b {
        return Ok(Quad {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    let (v, e) = gk15(&mut f, a, b);
    let mut intervals = vec![(a, b, v, e)];
    let mut evaluations = 15;
    loop {
        let value: f64 = intervals.iter().map(|i| i.2).sum();
        let error: f64 = intervals.iter().map(|i| i.3).sum();
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::Quadrature {
                estimate: value,
                error,
            });
        }
        if error <= opts.abs_tol.max(opts.rel_tol * value.abs()) {
            return Ok(Quad {
                value,
                error,
                evaluations,
            });
        }
        if intervals.len() >= opts.max_intervals {
            return Err(Error::Quadrature {
                estimate: value,
                error,
            });
        }
        let worst = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .expect("at least one interval");
        let (lo, hi, _, _) = intervals.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            return Err(Error::Quadrature {
                estimate: value,
                error,
            });
        }
        let (v1, e1) = gk15(&mut f, lo, mid);
        let (v2, e2) = gk15(&mut f, mid, hi);
        evaluations += 30;
        intervals.push((lo, mid, v1, e1));
        intervals.push((mid, hi, v2, e2));
    }
}

/// ∫_a^∞ f(x) dx through x = a + t/(1 − t), t ∈ [0, 1).
pub fn integrate_half_line<F: FnMut(f64) -> f64>(mut f: F, a: f64, opts: QuadOptions) -> Result<Quad> {
    integrate(
        |t| {
            if t >= 1.0 {
                return 0.0;
            }
            let u = 1.0 - t;
            let x = a + t / u;
            if x.is_infinite() {
                return 0.0;
            }
            f(x) / (u * u)
        },
        0.0,
        1.0,
        opts,
    )
}

/// log of the area of the unit sphere in ℝ^d, 2π^{d/2}/Γ(d/2).
pub fn log_sphere_area(d: usize) -> f64 {
    std::f64::consts::LN_2 + d as f64 / 2.0 * LN_PI - log_gamma(d as f64 / 2.0)
}

/// Mass of an isotropic density on ℝ^d given its log density as a function
/// of the radius: ∫₀^∞ |S^{d−1}| r^{d−1} p(r) dr.
pub fn radial_mass<F: FnMut(f64) -> f64>(mut log_pdf_at_radius: F, d: usize, opts: QuadOptions) -> Result<Quad> {
    let area = log_sphere_area(d);
    let k = d as f64 - 1.0;
    integrate_half_line(
        |r| (area + k * r.ln() + log_pdf_at_radius(r)).exp(),
        0.0,
        opts,
    )
}

/// Mass of a density on 𝔽 ≅ ℝ^β that depends on its argument through the
/// norm only.
pub fn quadrature_mass_scalar<F: FnMut(f64) -> f64>(log_pdf_at_radius: F, tag: AlgebraTag) -> Result<Quad> {
    radial_mass(log_pdf_at_radius, tag.dim(), QuadOptions::abs(1e-9))
}

/// ∫∫_{x₁ > x₂ > 0} f(x₁, x₂) by nested adaptive quadrature after the
/// substitution x₂ = v², x₁ = v² + w² (Jacobian 4vw), which turns power-law
/// tails and square-root edges into milder integrands. The outer variable
/// is v, the inner one w, both over (0, ∞).
pub fn integrate_ordered_cone_2d<F: Fn(f64, f64) -> f64>(f: F, opts: QuadOptions) -> Result<Quad> {
    // The outer map multiplies inner errors by 1/(1 − t)², so the inner
    // integrals are held to a relative tolerance.
    let inner_opts = QuadOptions {
        abs_tol: opts.abs_tol * 1e-6,
        rel_tol: 1e-10,
        max_intervals: opts.max_intervals,
    };
    let mut failure = None;
    let mut evaluations = 0;
    let outer = integrate_half_line(
        |v| {
            let x2 = v * v;
            match integrate_half_line(|w| 4.0 * v * w * f(x2 + w * w, x2), 0.0, inner_opts) {
                Ok(q) => {
                    evaluations += q.evaluations;
                    q.value
                }
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            }
        },
        0.0,
        opts,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(Quad {
        evaluations: evaluations + outer.evaluations,
        ..outer
    })
}
