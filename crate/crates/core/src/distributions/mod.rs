//! Parameter records, samplers and log densities for the matricvariate and
//! matrix multivariate T families, their beta type II relatives, the
//! Wishart and scalar gamma laws, and the scale-mixture elliptical
//! construction.

mod beta2;
mod elliptical;
mod gaussian;
mod matric_t;
mod matrix_t;
mod params;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraTag, DivMatrix};
use crate::error::{Error, Result};

pub use beta2::{
    logpdf_beta2_matric, logpdf_beta2_matric_variant, logpdf_beta2_multivariate, sample_beta2_matric,
    sample_beta2_multivariate,
};
pub use elliptical::sample_elliptical_t;
pub(crate) use gaussian::standard_gaussian;
pub use gaussian::{sample_gamma_scalar, sample_gaussian, sample_wishart, WishartMethod};
pub use matric_t::{logpdf_matric_t, sample_matric_t, DensityForm, MatricTMethod};
pub use matrix_t::{logpdf_matrix_mt, sample_matrix_mt};
pub use params::{
    parse_params_json, BetaIIParams, DistParams, EllipticalParams, GammaScalarParams, GaussianParams,
    MatricTParams, MatrixMTParams, Orientation, ScaleMixtureSpec, WishartParams,
};

/// Selects between a formula as corrected here and as it was originally
/// typeset. Only the corrected form is a normalized density; the printed
/// form exists so the difference can be measured.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Transcription {
    #[default]
    Corrected,
    Printed,
}

pub(crate) fn require_associative(tag: AlgebraTag, what: &str) -> Result<()> {
    if tag.is_associative() {
        Ok(())
    } else {
        Err(Error::OctonionRestriction(format!("{what} requires beta <= 4")))
    }
}

pub(crate) fn check_point(tag: AlgebraTag, m: usize, n: usize, x: &DivMatrix) -> Result<()> {
    if x.tag() != tag {
        return Err(Error::TagMismatch {
            left: tag.beta(),
            right: x.tag().beta(),
        });
    }
    if x.rows() != m || x.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "expected a {m}x{n} matrix, got {}x{}",
            x.rows(),
            x.cols()
        )));
    }
    Ok(())
}

/// L·X for a Cholesky factor L. A 1×1 factor is a positive real and is
/// applied as a scalar, which keeps octonion rows usable.
pub(crate) fn factor_left(l: &DivMatrix, x: &DivMatrix) -> Result<DivMatrix> {
    if l.rows() == 1 && l.cols() == 1 && x.rows() == 1 {
        Ok(x.scale(l.get(0, 0).re()))
    } else {
        l.matmul(x)
    }
}

/// X·L for a Cholesky factor L, with the same 1×1 shortcut.
pub(crate) fn factor_right(x: &DivMatrix, l: &DivMatrix) -> Result<DivMatrix> {
    if l.rows() == 1 && l.cols() == 1 && x.cols() == 1 {
        Ok(x.scale(l.get(0, 0).re()))
    } else {
        x.matmul(l)
    }
}

fn sub_location(x: &DivMatrix, mu: Option<&DivMatrix>) -> Result<DivMatrix> {
    match mu {
        Some(mu) => x.sub(mu),
        None => Ok(x.clone()),
    }
}

fn add_location(x: DivMatrix, mu: Option<&DivMatrix>) -> Result<DivMatrix> {
    match mu {
        Some(mu) => x.add(mu),
        None => Ok(x),
    }
}
