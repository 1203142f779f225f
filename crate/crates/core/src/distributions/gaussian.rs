use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use serde::{Deserialize, Serialize};

use super::params::{GammaScalarParams, WishartParams};
use super::{factor_left, require_associative};
use crate::algebra::{AlgebraTag, DivMatrix, DivScalar, HermitianPD};
use crate::error::{Error, Result};

pub(crate) fn gaussian_scalar<R: Rng + ?Sized>(rng: &mut R, tag: AlgebraTag) -> DivScalar {
    let sd = (1.0 / tag.b()).sqrt();
    let mut s = DivScalar::zero(tag);
    for c in s.coeffs_mut() {
        let z: f64 = StandardNormal.sample(rng);
        *c = sd * z;
    }
    s
}

/// m×n matrix of i.i.d. entries with variance 1/β per real coefficient.
/// Defined for every algebra: the entries need no multiplication.
pub(crate) fn standard_gaussian<R: Rng + ?Sized>(rng: &mut R, tag: AlgebraTag, m: usize, n: usize) -> Result<DivMatrix> {
    let data = (0..m * n).map(|_| gaussian_scalar(rng, tag)).collect();
    DivMatrix::from_entries(tag, m, n, data)
}

/// Y ~ N_{m×n}^β(0, I_m ⊗ Σ): rows share the covariance Σ (identity when
/// `None`), each coefficient of a standard entry having variance 1/β.
pub fn sample_gaussian<R: Rng + ?Sized>(
    rng: &mut R,
    tag: AlgebraTag,
    m: usize,
    n: usize,
    sigma: Option<&HermitianPD>,
) -> Result<DivMatrix> {
    require_associative(tag, "Gaussian matrix sampling")?;
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter(format!("dimensions must be positive, got {m}x{n}")));
    }
    let y0 = standard_gaussian(rng, tag, m, n)?;
    match sigma {
        None => Ok(y0),
        Some(s) => {
            if s.tag() != tag || s.dim() != n {
                return Err(Error::DimensionMismatch(format!("Sigma must be a {n}x{n} matrix over the same algebra")));
            }
            y0.matmul(&s.cholesky().conj_transpose())
        }
    }
}

/// S ~ Γ^β(ν, ρ), i.e. Gamma with shape βν/2 and scale 2ρ/β.
pub fn sample_gamma_scalar<R: Rng + ?Sized>(rng: &mut R, params: &GammaScalarParams) -> f64 {
    Gamma::new(params.shape(), params.scale())
        .expect("validated gamma parameters")
        .sample(rng)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WishartMethod {
    /// Triangular factor with gamma pivots; any real ν > β(m − 1).
    Bartlett,
    /// Y Y* with Y an m×ν Gaussian matrix; integer ν ≥ m only.
    Gram,
}

/// V ~ W_m^β(ν, Ξ).
pub fn sample_wishart<R: Rng + ?Sized>(rng: &mut R, params: &WishartParams, method: WishartMethod) -> Result<HermitianPD> {
    let (tag, m, nu) = (params.tag(), params.m(), params.nu());
    require_associative(tag, "Wishart sampling")?;
    let root = match method {
        WishartMethod::Bartlett => {
            let mut b = DivMatrix::zeros(tag, m, m)?;
            for i in 0..m {
                let shape = tag.b() * (nu - i as f64) / 2.0;
                let g = Gamma::new(shape, 2.0 / tag.b())
                    .map_err(|e| Error::Domain(format!("Bartlett pivot {i}: {e}")))?;
                let pivot: f64 = g.sample(rng);
                b.set(i, i, DivScalar::real(tag, pivot.sqrt()));
                for j in 0..i {
                    b.set(i, j, gaussian_scalar(rng, tag));
                }
            }
            b
        }
        WishartMethod::Gram => {
            if nu.fract() != 0.0 || nu < m as f64 {
                return Err(Error::InvalidParameter(format!(
                    "gram construction needs an integer nu >= m, got {nu}"
                )));
            }
            standard_gaussian(rng, tag, m, nu as usize)?
        }
    };
    let root = match params.xi() {
        Some(xi) => factor_left(xi.cholesky(), &root)?,
        None => root,
    };
    HermitianPD::gram_of(&root)
}
