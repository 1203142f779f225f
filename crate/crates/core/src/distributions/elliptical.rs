use rand::Rng;

use super::gaussian::standard_gaussian;
use super::params::EllipticalParams;
use crate::algebra::{solve_lower, DivMatrix, HermitianPD};
use crate::error::Result;

/// Draws Y = s·(Y₁ ⋮ Y₂), an m×(n+ν) Gaussian matrix times one mixture
/// scale s, and returns T = L⁻¹Y₁ with LL* = Y₂Y₂*. The scale cancels, so
/// T follows the matricvariate T law whatever the mixture.
pub fn sample_elliptical_t<R: Rng + ?Sized>(rng: &mut R, params: &EllipticalParams) -> Result<DivMatrix> {
    let (tag, m, n, nu) = (params.tag(), params.m(), params.n(), params.nu());
    let s = params.mixture().pick(rng.random::<f64>());
    let y = standard_gaussian(rng, tag, m, n + nu)?.scale(s);
    let y1 = y.columns(0, n)?;
    let v = HermitianPD::gram_of(&y.columns(n, nu)?)?;
    solve_lower(v.cholesky(), &y1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraTag;
    use crate::distributions::ScaleMixtureSpec;
    use crate::rng::RngStream;

    #[test]
    fn degenerate_mixture_is_the_normal_construction() {
        let tag = AlgebraTag::COMPLEX;
        let normal = EllipticalParams::new(tag, 2, 3, 4, ScaleMixtureSpec::normal()).unwrap();
        let mut rng = RngStream::new(10, 0);
        let t = sample_elliptical_t(&mut rng, &normal).unwrap();

        let mut rng = RngStream::new(10, 0);
        let _: f64 = rng.random();
        let y = standard_gaussian(&mut rng, tag, 2, 7).unwrap();
        let v = HermitianPD::gram_of(&y.columns(3, 4).unwrap()).unwrap();
        let direct = solve_lower(v.cholesky(), &y.columns(0, 3).unwrap()).unwrap();
        assert_eq!(t, direct);
    }

    #[test]
    fn mixture_scale_cancels() {
        let tag = AlgebraTag::REAL;
        let heavy = EllipticalParams::new(tag, 2, 3, 4, ScaleMixtureSpec::new(vec![1.0], vec![3.0]).unwrap()).unwrap();
        let normal = EllipticalParams::new(tag, 2, 3, 4, ScaleMixtureSpec::normal()).unwrap();
        let a = sample_elliptical_t(&mut RngStream::new(1, 5), &heavy).unwrap();
        let b = sample_elliptical_t(&mut RngStream::new(1, 5), &normal).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn rejects_short_denominator() {
        assert!(EllipticalParams::new(AlgebraTag::REAL, 3, 2, 2, ScaleMixtureSpec::normal()).is_err());
        assert!(EllipticalParams::new(AlgebraTag::OCTONION, 1, 2, 2, ScaleMixtureSpec::normal()).is_err());
    }
}
