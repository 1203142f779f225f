//! Joint densities of singular values and eigenvalues for the matricvariate
//! and matrix multivariate families, and empirical spectra of samples.
//!
//! All four normalizing constants use the power π^{βm²/2+τ}. The variant
//! with π^{βm²+τ} is kept behind [`Transcription::Printed`] for comparison
//! only: it does not integrate to one.

use std::f64::consts::LN_2;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::{hermitian_eigenvalues, singular_values, AlgebraTag, DivMatrix};
use crate::distributions::Transcription;
use crate::error::{Error, Result};
use crate::special::{lmvgamma, log_gamma, log_mvbeta, tau, LN_PI};

/// Gaps at or below this (relative to the largest value, floored at 1)
/// count as ties.
pub const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumKind {
    Singular,
    Eigen,
}

/// Positive, strictly descending singular values or eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSample {
    values: Vec<f64>,
    kind: SpectrumKind,
}

impl SpectrumSample {
    pub fn new(values: Vec<f64>, kind: SpectrumKind) -> Result<Self> {
        check_ordered(&values)?;
        Ok(SpectrumSample { values, kind })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `v1,…,vm` with shortest round-trip formatting.
    pub fn csv_row(&self) -> String {
        let mut s = String::new();
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            write!(s, "{v:?}").expect("writing to a String");
        }
        s
    }
}

/// `v1,…,vm`.
pub fn csv_header(m: usize) -> String {
    (1..=m).map(|i| format!("v{i}")).collect::<Vec<_>>().join(",")
}

fn check_ordered(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::Ordering("empty spectrum".into()));
    }
    if let Some(bad) = values.iter().find(|v| !(**v > 0.0) || !v.is_finite()) {
        return Err(Error::Ordering(format!("spectrum values must be positive and finite, found {bad}")));
    }
    let scale = values[0].abs().max(1.0);
    for (i, w) in values.windows(2).enumerate() {
        if w[0] - w[1] <= TIE_TOL * scale {
            return Err(Error::Ordering(format!(
                "values {} and {} are not strictly descending ({} vs {})",
                i + 1,
                i + 2,
                w[0],
                w[1]
            )));
        }
    }
    Ok(())
}

/// Spectrum of a sampled matrix: its singular values, or the eigenvalues of
/// a Hermitian matrix.
pub fn empirical_spectrum(x: &DivMatrix, kind: SpectrumKind) -> Result<SpectrumSample> {
    let values = match kind {
        SpectrumKind::Singular => singular_values(x)?,
        SpectrumKind::Eigen => hermitian_eigenvalues(x)?,
    };
    SpectrumSample::new(values, kind)
}

fn check_law(m: usize, n: usize, nu: f64, s: &SpectrumSample, kind: SpectrumKind) -> Result<()> {
    if m == 0 || n < m {
        return Err(Error::Domain(format!("spectral densities need 1 <= m <= n, got m={m}, n={n}")));
    }
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(Error::Domain(format!("nu must be positive, got {nu}")));
    }
    if s.kind != kind {
        return Err(Error::InvalidParameter(format!("expected a {kind:?} spectrum, got {:?}", s.kind)));
    }
    if s.len() != m {
        return Err(Error::DimensionMismatch(format!("expected {m} values, got {}", s.len())));
    }
    Ok(())
}

/// π-power in the normalizing constants, in log form.
fn log_pi_power(tag: AlgebraTag, m: usize, variant: Transcription) -> f64 {
    let mf = m as f64;
    let corrected = tag.b() * mf * mf / 2.0 + tau(tag, m) as f64;
    match variant {
        Transcription::Corrected => corrected * LN_PI,
        Transcription::Printed => (corrected + tag.b() * mf * mf / 2.0) * LN_PI,
    }
}

/// β Σ_{i<j} log(xᵢ − xⱼ) for descending x.
fn log_vandermonde(b: f64, x: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            s += (x[i] - x[j]).ln();
        }
    }
    b * s
}

pub(crate) fn eig_matric_values(tag: AlgebraTag, m: usize, n: usize, nu: f64, lambda: &[f64], variant: Transcription) -> Result<f64> {
    let b = tag.b();
    let (mf, nf) = (m as f64, n as f64);
    let head = log_pi_power(tag, m, variant) - lmvgamma(tag, m, b * mf / 2.0)? - log_mvbeta(tag, m, b * nu / 2.0, b * nf / 2.0)?;
    let a = b * (nf - mf + 1.0) / 2.0 - 1.0;
    let c = b * (nf + nu) / 2.0;
    let body: f64 = lambda.iter().map(|l| a * l.ln() - c * l.ln_1p()).sum();
    Ok(head + body + log_vandermonde(b, lambda))
}

pub(crate) fn eig_mv_values(tag: AlgebraTag, m: usize, n: usize, nu: f64, gamma: &[f64]) -> Result<f64> {
    let b = tag.b();
    let (mf, nf) = (m as f64, n as f64);
    let c = b * (nu + mf * nf) / 2.0;
    let head = log_pi_power(tag, m, Transcription::Corrected) + log_gamma(c) - log_gamma(b * nu / 2.0)
        - lmvgamma(tag, m, b * mf / 2.0)?
        - lmvgamma(tag, m, b * nf / 2.0)?;
    let a = b * (nf - mf + 1.0) / 2.0 - 1.0;
    let body: f64 = gamma.iter().map(|g| a * g.ln()).sum();
    let total: f64 = gamma.iter().sum();
    Ok(head + body + log_vandermonde(b, gamma) - c * total.ln_1p())
}

/// Singular-value density from the eigenvalue density of the squares:
/// dλ = 2δ dδ per coordinate.
fn sv_from_eig(eig: f64, delta: &[f64]) -> f64 {
    eig + delta.iter().map(|d| LN_2 + d.ln()).sum::<f64>()
}

fn squares(x: &[f64]) -> Vec<f64> {
    x.iter().map(|v| v * v).collect()
}

/// Joint density of the singular values δ₁ > … > δₘ of a standard
/// matricvariate T matrix.
pub fn log_joint_sv_matric_t(tag: AlgebraTag, m: usize, n: usize, nu: f64, deltas: &SpectrumSample) -> Result<f64> {
    log_joint_sv_matric_t_variant(tag, m, n, nu, deltas, Transcription::Corrected)
}

pub fn log_joint_sv_matric_t_variant(
    tag: AlgebraTag,
    m: usize,
    n: usize,
    nu: f64,
    deltas: &SpectrumSample,
    variant: Transcription,
) -> Result<f64> {
    check_law(m, n, nu, deltas, SpectrumKind::Singular)?;
    let eig = eig_matric_values(tag, m, n, nu, &squares(&deltas.values), variant)?;
    Ok(sv_from_eig(eig, &deltas.values))
}

/// Joint density of the singular values of a standard matrix multivariate T
/// matrix (ρ = 1).
pub fn log_joint_sv_matrix_mt(tag: AlgebraTag, m: usize, n: usize, nu: f64, alphas: &SpectrumSample) -> Result<f64> {
    check_law(m, n, nu, alphas, SpectrumKind::Singular)?;
    let eig = eig_mv_values(tag, m, n, nu, &squares(&alphas.values))?;
    Ok(sv_from_eig(eig, &alphas.values))
}

/// Joint density of the eigenvalues of F = TT*, matricvariate family.
pub fn log_joint_eig_beta2(tag: AlgebraTag, m: usize, n: usize, nu: f64, lambdas: &SpectrumSample) -> Result<f64> {
    log_joint_eig_beta2_variant(tag, m, n, nu, lambdas, Transcription::Corrected)
}

pub fn log_joint_eig_beta2_variant(
    tag: AlgebraTag,
    m: usize,
    n: usize,
    nu: f64,
    lambdas: &SpectrumSample,
    variant: Transcription,
) -> Result<f64> {
    check_law(m, n, nu, lambdas, SpectrumKind::Eigen)?;
    eig_matric_values(tag, m, n, nu, &lambdas.values, variant)
}

/// Joint density of the eigenvalues of F₁ = T₁T₁*, matrix multivariate family.
pub fn log_joint_eig_mv(tag: AlgebraTag, m: usize, n: usize, nu: f64, gammas: &SpectrumSample) -> Result<f64> {
    check_law(m, n, nu, gammas, SpectrumKind::Eigen)?;
    eig_mv_values(tag, m, n, nu, &gammas.values)
}

/// The four joint spectral densities, selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralDensity {
    SvMatricT,
    SvMatrixMt,
    EigBeta2,
    EigMv,
}

impl SpectralDensity {
    pub fn kind(self) -> SpectrumKind {
        match self {
            SpectralDensity::SvMatricT | SpectralDensity::SvMatrixMt => SpectrumKind::Singular,
            SpectralDensity::EigBeta2 | SpectralDensity::EigMv => SpectrumKind::Eigen,
        }
    }

    /// Whether a printed variant of the normalizing constant exists.
    pub fn has_printed_variant(self) -> bool {
        matches!(self, SpectralDensity::SvMatricT | SpectralDensity::EigBeta2)
    }

    pub fn log_density(
        self,
        tag: AlgebraTag,
        m: usize,
        n: usize,
        nu: f64,
        s: &SpectrumSample,
        variant: Transcription,
    ) -> Result<f64> {
        check_law(m, n, nu, s, self.kind())?;
        self.log_density_values(tag, m, n, nu, &s.values, variant)
    }

    /// Density at raw values, without the ordering check; used by the
    /// quadrature routines, which evaluate near the cone boundary.
    pub(crate) fn log_density_values(
        self,
        tag: AlgebraTag,
        m: usize,
        n: usize,
        nu: f64,
        values: &[f64],
        variant: Transcription,
    ) -> Result<f64> {
        match self {
            SpectralDensity::SvMatricT => Ok(sv_from_eig(eig_matric_values(tag, m, n, nu, &squares(values), variant)?, values)),
            SpectralDensity::SvMatrixMt => Ok(sv_from_eig(eig_mv_values(tag, m, n, nu, &squares(values))?, values)),
            SpectralDensity::EigBeta2 => eig_matric_values(tag, m, n, nu, values, variant),
            SpectralDensity::EigMv => eig_mv_values(tag, m, n, nu, values),
        }
    }
}
