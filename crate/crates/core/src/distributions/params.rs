//! Parameter records for every family. Scale matrices are optional: `None`
//! stands for the identity, which keeps octonion row-vector cases (where no
//! n×n octonion Hermitian factorization exists) expressible.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraTag, DivMatrix, HermitianPD};
use crate::error::{Error, Result};

fn positive_dims(m: usize, n: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter(format!("dimensions must be positive, got {m}x{n}")));
    }
    Ok(())
}

fn check_square(name: &str, tag: AlgebraTag, h: &Option<HermitianPD>, dim: usize) -> Result<()> {
    if let Some(h) = h {
        if h.tag() != tag {
            return Err(Error::TagMismatch {
                left: tag.beta(),
                right: h.tag().beta(),
            });
        }
        if h.dim() != dim {
            return Err(Error::DimensionMismatch(format!("{name} must be {dim}x{dim}, got {0}x{0}", h.dim())));
        }
    }
    Ok(())
}

fn check_location(tag: AlgebraTag, mu: &Option<DivMatrix>, m: usize, n: usize) -> Result<()> {
    if let Some(mu) = mu {
        if mu.tag() != tag {
            return Err(Error::TagMismatch {
                left: tag.beta(),
                right: mu.tag().beta(),
            });
        }
        if mu.rows() != m || mu.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "mu must be {m}x{n}, got {}x{}",
                mu.rows(),
                mu.cols()
            )));
        }
    }
    Ok(())
}

/// Octonion matrices are only admitted as row vectors with identity column scale.
fn check_octonion_rows(tag: AlgebraTag, m: usize, col_scale: &Option<HermitianPD>) -> Result<()> {
    if tag.is_associative() {
        return Ok(());
    }
    if m != 1 {
        return Err(Error::OctonionRestriction(format!(
            "beta = 8 requires m = 1, got m = {m}"
        )));
    }
    if col_scale.as_ref().is_some_and(|s| s.dim() > 1) {
        return Err(Error::OctonionRestriction("column scale must be the identity".into()));
    }
    Ok(())
}

fn finite_positive(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidParameter(format!("{name} must be positive and finite, got {x}")));
    }
    Ok(())
}

/// Matricvariate T: T ~ T_{m×n}^β(ν, μ, Ξ, Σ).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatricTJson", into = "MatricTJson")]
pub struct MatricTParams {
    pub(crate) tag: AlgebraTag,
    pub(crate) m: usize,
    pub(crate) n: usize,
    pub(crate) nu: f64,
    pub(crate) mu: Option<DivMatrix>,
    pub(crate) xi: Option<HermitianPD>,
    pub(crate) sigma: Option<HermitianPD>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatricTJson {
    beta: AlgebraTag,
    m: usize,
    n: usize,
    nu: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mu: Option<DivMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    xi: Option<HermitianPD>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sigma: Option<HermitianPD>,
}

impl TryFrom<MatricTJson> for MatricTParams {
    type Error = Error;

    fn try_from(j: MatricTJson) -> Result<Self> {
        MatricTParams::new(j.beta, j.m, j.n, j.nu)?
            .with_mu(j.mu)?
            .with_xi(j.xi)?
            .with_sigma(j.sigma)
    }
}

impl From<MatricTParams> for MatricTJson {
    fn from(p: MatricTParams) -> Self {
        MatricTJson {
            beta: p.tag,
            m: p.m,
            n: p.n,
            nu: p.nu,
            mu: p.mu,
            xi: p.xi,
            sigma: p.sigma,
        }
    }
}

impl MatricTParams {
    /// Standard form: μ = 0, Ξ = I, Σ = I. Requires ν > β(m − 1).
    pub fn new(tag: AlgebraTag, m: usize, n: usize, nu: f64) -> Result<Self> {
        positive_dims(m, n)?;
        finite_positive("nu", nu)?;
        let bound = tag.b() * (m as f64 - 1.0);
        if !(nu > bound) {
            return Err(Error::Domain(format!("matricvariate T requires nu > beta(m-1) = {bound}, got {nu}")));
        }
        check_octonion_rows(tag, m, &None)?;
        Ok(MatricTParams {
            tag,
            m,
            n,
            nu,
            mu: None,
            xi: None,
            sigma: None,
        })
    }

    pub fn with_mu(mut self, mu: Option<DivMatrix>) -> Result<Self> {
        check_location(self.tag, &mu, self.m, self.n)?;
        self.mu = mu;
        Ok(self)
    }

    pub fn with_xi(mut self, xi: Option<HermitianPD>) -> Result<Self> {
        check_square("Xi", self.tag, &xi, self.m)?;
        self.xi = xi;
        Ok(self)
    }

    pub fn with_sigma(mut self, sigma: Option<HermitianPD>) -> Result<Self> {
        check_square("Sigma", self.tag, &sigma, self.n)?;
        check_octonion_rows(self.tag, self.m, &sigma)?;
        self.sigma = sigma;
        Ok(self)
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn mu(&self) -> Option<&DivMatrix> {
        self.mu.as_ref()
    }

    pub fn xi(&self) -> Option<&HermitianPD> {
        self.xi.as_ref()
    }

    pub fn sigma(&self) -> Option<&HermitianPD> {
        self.sigma.as_ref()
    }
}

/// Matrix multivariate T: Q ~ MT_{m×n}^β(ν, μ, Δ, Λ) with scale ρ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixMTJson", into = "MatrixMTJson")]
pub struct MatrixMTParams {
    pub(crate) tag: AlgebraTag,
    pub(crate) m: usize,
    pub(crate) n: usize,
    pub(crate) nu: f64,
    pub(crate) rho: f64,
    pub(crate) mu: Option<DivMatrix>,
    pub(crate) delta: Option<HermitianPD>,
    pub(crate) lambda: Option<HermitianPD>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixMTJson {
    beta: AlgebraTag,
    m: usize,
    n: usize,
    nu: f64,
    #[serde(default = "one")]
    rho: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mu: Option<DivMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    delta: Option<HermitianPD>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<HermitianPD>,
}

fn one() -> f64 {
    1.0
}

impl TryFrom<MatrixMTJson> for MatrixMTParams {
    type Error = Error;

    fn try_from(j: MatrixMTJson) -> Result<Self> {
        MatrixMTParams::new(j.beta, j.m, j.n, j.nu, j.rho)?
            .with_mu(j.mu)?
            .with_delta(j.delta)?
            .with_lambda(j.lambda)
    }
}

impl From<MatrixMTParams> for MatrixMTJson {
    fn from(p: MatrixMTParams) -> Self {
        MatrixMTJson {
            beta: p.tag,
            m: p.m,
            n: p.n,
            nu: p.nu,
            rho: p.rho,
            mu: p.mu,
            delta: p.delta,
            lambda: p.lambda,
        }
    }
}

impl MatrixMTParams {
    pub fn new(tag: AlgebraTag, m: usize, n: usize, nu: f64, rho: f64) -> Result<Self> {
        positive_dims(m, n)?;
        finite_positive("nu", nu)?;
        finite_positive("rho", rho)?;
        check_octonion_rows(tag, m, &None)?;
        Ok(MatrixMTParams {
            tag,
            m,
            n,
            nu,
            rho,
            mu: None,
            delta: None,
            lambda: None,
        })
    }

    pub fn with_mu(mut self, mu: Option<DivMatrix>) -> Result<Self> {
        check_location(self.tag, &mu, self.m, self.n)?;
        self.mu = mu;
        Ok(self)
    }

    pub fn with_delta(mut self, delta: Option<HermitianPD>) -> Result<Self> {
        check_square("Delta", self.tag, &delta, self.m)?;
        self.delta = delta;
        Ok(self)
    }

    pub fn with_lambda(mut self, lambda: Option<HermitianPD>) -> Result<Self> {
        check_square("Lambda", self.tag, &lambda, self.n)?;
        check_octonion_rows(self.tag, self.m, &lambda)?;
        self.lambda = lambda;
        Ok(self)
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn mu(&self) -> Option<&DivMatrix> {
        self.mu.as_ref()
    }

    pub fn delta(&self) -> Option<&HermitianPD> {
        self.delta.as_ref()
    }

    pub fn lambda(&self) -> Option<&HermitianPD> {
        self.lambda.as_ref()
    }
}

/// V ~ W_m^β(ν, Ξ).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WishartJson", into = "WishartJson")]
pub struct WishartParams {
    pub(crate) tag: AlgebraTag,
    pub(crate) m: usize,
    pub(crate) nu: f64,
    pub(crate) xi: Option<HermitianPD>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WishartJson {
    beta: AlgebraTag,
    m: usize,
    nu: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    xi: Option<HermitianPD>,
}

impl TryFrom<WishartJson> for WishartParams {
    type Error = Error;

    fn try_from(j: WishartJson) -> Result<Self> {
        WishartParams::new(j.beta, j.m, j.nu, j.xi)
    }
}

impl From<WishartParams> for WishartJson {
    fn from(p: WishartParams) -> Self {
        WishartJson {
            beta: p.tag,
            m: p.m,
            nu: p.nu,
            xi: p.xi,
        }
    }
}

impl WishartParams {
    /// Requires ν > β(m − 1).
    pub fn new(tag: AlgebraTag, m: usize, nu: f64, xi: Option<HermitianPD>) -> Result<Self> {
        positive_dims(m, 1)?;
        finite_positive("nu", nu)?;
        if !tag.is_associative() {
            return Err(Error::OctonionRestriction("Wishart matrices need beta <= 4".into()));
        }
        let bound = tag.b() * (m as f64 - 1.0);
        if !(nu > bound) {
            return Err(Error::Domain(format!("Wishart requires nu > beta(m-1) = {bound}, got {nu}")));
        }
        check_square("Xi", tag, &xi, m)?;
        Ok(WishartParams { tag, m, nu, xi })
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn xi(&self) -> Option<&HermitianPD> {
        self.xi.as_ref()
    }
}

/// S ~ Γ^β(ν, ρ): shape βν/2, scale 2ρ/β.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GammaJson", into = "GammaJson")]
pub struct GammaScalarParams {
    pub(crate) tag: AlgebraTag,
    pub(crate) nu: f64,
    pub(crate) rho: f64,
}

#[derive(Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GammaJson {
    beta: AlgebraTag,
    nu: f64,
    #[serde(default = "one")]
    rho: f64,
}

impl TryFrom<GammaJson> for GammaScalarParams {
    type Error = Error;

    fn try_from(j: GammaJson) -> Result<Self> {
        GammaScalarParams::new(j.beta, j.nu, j.rho)
    }
}

impl From<GammaScalarParams> for GammaJson {
    fn from(p: GammaScalarParams) -> Self {
        GammaJson {
            beta: p.tag,
            nu: p.nu,
            rho: p.rho,
        }
    }
}

impl GammaScalarParams {
    pub fn new(tag: AlgebraTag, nu: f64, rho: f64) -> Result<Self> {
        finite_positive("nu", nu)?;
        finite_positive("rho", rho)?;
        Ok(GammaScalarParams { tag, nu, rho })
    }

    pub fn shape(&self) -> f64 {
        self.tag.b() * self.nu / 2.0
    }

    pub fn scale(&self) -> f64 {
        2.0 * self.rho / self.tag.b()
    }

    pub fn mean(&self) -> f64 {
        self.nu * self.rho
    }
}

/// Which product of T with itself the beta type II matrix is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// F = T T*, m×m, requires n ≥ m.
    Gram,
    /// F̃ = T* T, n×n, requires n < m.
    Cogram,
}

/// Beta type II parameters, shared by the matricvariate and matrix
/// multivariate families. `scale` is Δ for the matricvariate family and Π
/// for the matrix multivariate one; `None` gives the standardised law.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BetaIIJson", into = "BetaIIJson")]
pub struct BetaIIParams {
    pub(crate) tag: AlgebraTag,
    pub(crate) m: usize,
    pub(crate) n: usize,
    pub(crate) nu: f64,
    pub(crate) orientation: Orientation,
    pub(crate) scale: Option<HermitianPD>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BetaIIJson {
    beta: AlgebraTag,
    m: usize,
    n: usize,
    nu: f64,
    #[serde(default = "gram")]
    orientation: Orientation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    scale: Option<HermitianPD>,
}

fn gram() -> Orientation {
    Orientation::Gram
}

impl TryFrom<BetaIIJson> for BetaIIParams {
    type Error = Error;

    fn try_from(j: BetaIIJson) -> Result<Self> {
        BetaIIParams::new(j.beta, j.m, j.n, j.nu, j.orientation)?.with_scale(j.scale)
    }
}

impl From<BetaIIParams> for BetaIIJson {
    fn from(p: BetaIIParams) -> Self {
        BetaIIJson {
            beta: p.tag,
            m: p.m,
            n: p.n,
            nu: p.nu,
            orientation: p.orientation,
            scale: p.scale,
        }
    }
}

impl BetaIIParams {
    pub fn new(tag: AlgebraTag, m: usize, n: usize, nu: f64, orientation: Orientation) -> Result<Self> {
        positive_dims(m, n)?;
        finite_positive("nu", nu)?;
        match orientation {
            Orientation::Gram if n < m => {
                return Err(Error::InvalidParameter(format!("gram orientation requires n >= m, got m={m}, n={n}")))
            }
            Orientation::Cogram if n >= m => {
                return Err(Error::InvalidParameter(format!("cogram orientation requires n < m, got m={m}, n={n}")))
            }
            _ => {}
        }
        check_octonion_rows(tag, m, &None)?;
        Ok(BetaIIParams {
            tag,
            m,
            n,
            nu,
            orientation,
            scale: None,
        })
    }

    pub fn with_scale(mut self, scale: Option<HermitianPD>) -> Result<Self> {
        check_square("scale", self.tag, &scale, self.dim())?;
        self.scale = scale;
        Ok(self)
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn scale(&self) -> Option<&HermitianPD> {
        self.scale.as_ref()
    }

    /// Side length of F.
    pub fn dim(&self) -> usize {
        match self.orientation {
            Orientation::Gram => self.m,
            Orientation::Cogram => self.n,
        }
    }
}

/// A finite scale mixture of normals: component k is chosen with
/// probability `weights[k]` and multiplies the whole Gaussian matrix by
/// `scales[k]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MixtureJson", into = "MixtureJson")]
pub struct ScaleMixtureSpec {
    weights: Vec<f64>,
    scales: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MixtureJson {
    weights: Vec<f64>,
    scales: Vec<f64>,
}

impl TryFrom<MixtureJson> for ScaleMixtureSpec {
    type Error = Error;

    fn try_from(j: MixtureJson) -> Result<Self> {
        ScaleMixtureSpec::new(j.weights, j.scales)
    }
}

impl From<ScaleMixtureSpec> for MixtureJson {
    fn from(s: ScaleMixtureSpec) -> Self {
        MixtureJson {
            weights: s.weights,
            scales: s.scales,
        }
    }
}

impl ScaleMixtureSpec {
    pub fn new(weights: Vec<f64>, scales: Vec<f64>) -> Result<Self> {
        if weights.is_empty() || weights.len() != scales.len() {
            return Err(Error::InvalidParameter(
                "mixture needs matching, non-empty weight and scale lists".into(),
            ));
        }
        if weights.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
            return Err(Error::InvalidParameter("mixture weights must be non-negative".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("mixture weights sum to {total}, not 1")));
        }
        for s in &scales {
            finite_positive("mixture scale", *s)?;
        }
        Ok(ScaleMixtureSpec { weights, scales })
    }

    /// The single-component mixture, i.e. plain normality.
    pub fn normal() -> Self {
        ScaleMixtureSpec {
            weights: vec![1.0],
            scales: vec![1.0],
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    /// Scale of the component selected by a uniform draw `u` in [0, 1).
    pub fn pick(&self, u: f64) -> f64 {
        let mut acc = 0.0;
        for (w, s) in self.weights.iter().zip(&self.scales) {
            acc += w;
            if u < acc {
                return *s;
            }
        }
        *self.scales.last().expect("non-empty mixture")
    }
}

/// T built from a scale-mixture Gaussian block matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "EllipticalJson", into = "EllipticalJson")]
pub struct EllipticalParams {
    pub(crate) tag: AlgebraTag,
    pub(crate) m: usize,
    pub(crate) n: usize,
    pub(crate) nu: usize,
    pub(crate) mixture: ScaleMixtureSpec,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EllipticalJson {
    beta: AlgebraTag,
    m: usize,
    n: usize,
    nu: usize,
    #[serde(default = "ScaleMixtureSpec::normal")]
    mixture: ScaleMixtureSpec,
}

impl TryFrom<EllipticalJson> for EllipticalParams {
    type Error = Error;

    fn try_from(j: EllipticalJson) -> Result<Self> {
        EllipticalParams::new(j.beta, j.m, j.n, j.nu, j.mixture)
    }
}

impl From<EllipticalParams> for EllipticalJson {
    fn from(p: EllipticalParams) -> Self {
        EllipticalJson {
            beta: p.tag,
            m: p.m,
            n: p.n,
            nu: p.nu,
            mixture: p.mixture,
        }
    }
}

impl EllipticalParams {
    pub fn new(tag: AlgebraTag, m: usize, n: usize, nu: usize, mixture: ScaleMixtureSpec) -> Result<Self> {
        positive_dims(m, n)?;
        if !tag.is_associative() {
            return Err(Error::OctonionRestriction("elliptical construction needs beta <= 4".into()));
        }
        if nu < m {
            return Err(Error::InvalidParameter(format!(
                "elliptical construction needs an integer nu >= m, got nu={nu}, m={m}"
            )));
        }
        Ok(EllipticalParams { tag, m, n, nu, mixture })
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn mixture(&self) -> &ScaleMixtureSpec {
        &self.mixture
    }
}

/// Algebra-Gaussian matrix Y ~ N_{m×n}^β(0, I_m ⊗ Σ).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GaussianJson", into = "GaussianJson")]
pub struct GaussianParams {
    pub(crate) tag: AlgebraTag,
    pub(crate) m: usize,
    pub(crate) n: usize,
    pub(crate) sigma: Option<HermitianPD>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GaussianJson {
    beta: AlgebraTag,
    m: usize,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sigma: Option<HermitianPD>,
}

impl TryFrom<GaussianJson> for GaussianParams {
    type Error = Error;

    fn try_from(j: GaussianJson) -> Result<Self> {
        GaussianParams::new(j.beta, j.m, j.n, j.sigma)
    }
}

impl From<GaussianParams> for GaussianJson {
    fn from(p: GaussianParams) -> Self {
        GaussianJson {
            beta: p.tag,
            m: p.m,
            n: p.n,
            sigma: p.sigma,
        }
    }
}

impl GaussianParams {
    pub fn new(tag: AlgebraTag, m: usize, n: usize, sigma: Option<HermitianPD>) -> Result<Self> {
        positive_dims(m, n)?;
        if !tag.is_associative() {
            return Err(Error::OctonionRestriction("Gaussian matrix sampling needs beta <= 4".into()));
        }
        check_square("Sigma", tag, &sigma, n)?;
        Ok(GaussianParams { tag, m, n, sigma })
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> Option<&HermitianPD> {
        self.sigma.as_ref()
    }
}

/// Any parameter record, tagged by family name, as read from parameter files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum DistParams {
    MatricT(MatricTParams),
    MatrixT(MatrixMTParams),
    Wishart(WishartParams),
    Gamma(GammaScalarParams),
    Gaussian(GaussianParams),
    Beta2Matric(BetaIIParams),
    Beta2Multivariate(BetaIIParams),
    EllipticalT(EllipticalParams),
}

impl DistParams {
    pub fn family(&self) -> &'static str {
        match self {
            DistParams::MatricT(_) => "matric-t",
            DistParams::MatrixT(_) => "matrix-t",
            DistParams::Wishart(_) => "wishart",
            DistParams::Gamma(_) => "gamma",
            DistParams::Gaussian(_) => "gaussian",
            DistParams::Beta2Matric(_) => "beta2-matric",
            DistParams::Beta2Multivariate(_) => "beta2-multivariate",
            DistParams::EllipticalT(_) => "elliptical-t",
        }
    }
}

/// Parses a parameter file. Never panics on malformed input.
pub fn parse_params_json(text: &str) -> Result<DistParams> {
    Ok(serde_json::from_str(text)?)
}
