use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraTag, DivMatrix, DivScalar, HermitianPD};
use crate::distributions::{
    BetaIIParams, EllipticalParams, GammaScalarParams, MatricTParams, MatrixMTParams, Orientation, ScaleMixtureSpec,
    Transcription, WishartParams,
};
use crate::error::{Error, Result};
use crate::spectral::SpectralDensity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Normalization,
    Ks1,
    Ks2,
    Moment,
    Identity,
}

impl CheckKind {
    /// Checks that draw random samples; only these are retried once on
    /// failure.
    pub fn is_stochastic(self) -> bool {
        matches!(self, CheckKind::Ks1 | CheckKind::Ks2 | CheckKind::Moment)
    }
}

/// Work allowance of a check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Budget {
    /// Sample size for KS and moment checks.
    Samples(usize),
    /// Absolute quadrature tolerance for normalization checks.
    Tolerance(f64),
    /// Number of random cases for identity checks.
    Trials(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialFamily {
    MatricT,
    MatrixT,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Beta2Family {
    Matric,
    Multivariate,
}

/// The two typesetting corrections whose effect is measured by
/// [`CheckTarget::ErratumEvidence`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Erratum {
    /// Exponent of |I + F| in the cogram beta II density, scalar case
    /// β = 1, m = 2, n = 1, ν = 3.
    CogramExponent,
    /// Power of π in the singular value density, scalar case
    /// β = 1, m = n = ν = 1.
    PiPower,
}

/// What a check computes. Every variant fixes the law, its parameters and
/// the statistic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CheckTarget {
    /// Largest log-space gap of the multivariate gamma ratio identity over
    /// random admissible (β, m, n, ν).
    GammaRatioIdentity,
    /// Largest |primal − dual| matricvariate T log density over random
    /// parameters and points with m, n ≤ 4.
    FormEquivalence { beta: AlgebraTag },
    /// Mass of a 1×n density by radial quadrature.
    RadialMass {
        family: RadialFamily,
        beta: AlgebraTag,
        n: usize,
        nu: f64,
    },
    /// Mass of a scalar (1×1) beta II density.
    Beta2Mass {
        family: Beta2Family,
        beta: AlgebraTag,
        m: usize,
        n: usize,
        nu: f64,
        orientation: Orientation,
        #[serde(default)]
        variant: Transcription,
    },
    /// Mass of a joint spectral density with m ∈ {1, 2}.
    SpectralMass {
        density: SpectralDensity,
        beta: AlgebraTag,
        m: usize,
        n: usize,
        nu: f64,
        #[serde(default)]
        variant: Transcription,
    },
    /// Mass of a density in its corrected and its printed form.
    ErratumEvidence { erratum: Erratum },
    /// Real scalar matricvariate T against the Student CDF.
    StudentScalar { nu: f64 },
    /// F = TT* for a 1×n matricvariate T against the beta-prime CDF.
    BetaPrimeScalar { beta: AlgebraTag, n: usize, nu: f64 },
    /// Real scalar matrix multivariate T against its numerically
    /// integrated density.
    MatrixTScalar { nu: f64, rho: f64 },
    /// Largest eigenvalue of F = TT* against the marginal obtained by
    /// integrating the joint eigenvalue density (m ≤ 2).
    TopEigenvalue {
        beta: AlgebraTag,
        m: usize,
        n: usize,
        nu: f64,
    },
    /// One singular value of T from the Wishart-root and inverse-root
    /// constructions.
    ConstructionEquivalence {
        beta: AlgebraTag,
        m: usize,
        n: usize,
        nu: f64,
        component: usize,
    },
    /// One eigenvalue of V from the Bartlett and Gram Wishart samplers.
    WishartMethods {
        beta: AlgebraTag,
        m: usize,
        nu: f64,
        component: usize,
    },
    /// One singular value of T from a scale-mixture construction against
    /// the Wishart-root matricvariate T sampler.
    EllipticalInvariance {
        beta: AlgebraTag,
        m: usize,
        n: usize,
        nu: usize,
        mixture: ScaleMixtureSpec,
        component: usize,
    },
    /// E[V] = νΞ entry by entry for Bartlett Wishart draws.
    WishartMean {
        beta: AlgebraTag,
        m: usize,
        nu: f64,
        #[serde(default)]
        xi: Option<HermitianPD>,
    },
    /// E[S] = νρ for the scalar gamma law.
    GammaMean { beta: AlgebraTag, nu: f64, rho: f64 },
}

impl CheckTarget {
    pub fn kind(&self) -> CheckKind {
        use CheckTarget::*;
        match self {
            GammaRatioIdentity | FormEquivalence { .. } => CheckKind::Identity,
            RadialMass { .. } | Beta2Mass { .. } | SpectralMass { .. } | ErratumEvidence { .. } => CheckKind::Normalization,
            StudentScalar { .. } | BetaPrimeScalar { .. } | MatrixTScalar { .. } | TopEigenvalue { .. } => CheckKind::Ks1,
            ConstructionEquivalence { .. } | WishartMethods { .. } | EllipticalInvariance { .. } => CheckKind::Ks2,
            WishartMean { .. } | GammaMean { .. } => CheckKind::Moment,
        }
    }

    /// Rejects parameter sets the check cannot run with.
    pub fn validate(&self) -> Result<()> {
        use CheckTarget::*;
        match self {
            GammaRatioIdentity => Ok(()),
            FormEquivalence { beta } => associative(*beta),
            RadialMass { family, beta, n, nu } => match family {
                RadialFamily::MatricT => MatricTParams::new(*beta, 1, *n, *nu).map(drop),
                RadialFamily::MatrixT => MatrixMTParams::new(*beta, 1, *n, *nu, 1.0).map(drop),
            },
            Beta2Mass {
                family,
                beta,
                m,
                n,
                nu,
                orientation,
                variant,
            } => {
                let p = BetaIIParams::new(*beta, *m, *n, *nu, *orientation)?;
                if p.dim() != 1 {
                    return Err(Error::InvalidParameter("beta II mass checks need a scalar F".into()));
                }
                if *family == Beta2Family::Multivariate && *variant == Transcription::Printed {
                    return Err(Error::InvalidParameter("no printed variant for the multivariate beta II law".into()));
                }
                Ok(())
            }
            SpectralMass {
                density,
                beta,
                m,
                n,
                nu,
                variant,
            } => {
                if *variant == Transcription::Printed && !density.has_printed_variant() {
                    return Err(Error::InvalidParameter(format!("no printed variant for {density:?}")));
                }
                spectral_domain(*density, *beta, *m, *n, *nu)
            }
            ErratumEvidence { .. } => Ok(()),
            StudentScalar { nu } => MatricTParams::new(AlgebraTag::REAL, 1, 1, *nu).map(drop),
            BetaPrimeScalar { beta, n, nu } => {
                associative(*beta)?;
                BetaIIParams::new(*beta, 1, *n, *nu, Orientation::Gram).map(drop)
            }
            MatrixTScalar { nu, rho } => MatrixMTParams::new(AlgebraTag::REAL, 1, 1, *nu, *rho).map(drop),
            TopEigenvalue { beta, m, n, nu } => {
                associative(*beta)?;
                MatricTParams::new(*beta, *m, *n, *nu)?;
                spectral_domain(SpectralDensity::EigBeta2, *beta, *m, *n, *nu)
            }
            ConstructionEquivalence {
                beta,
                m,
                n,
                nu,
                component,
            } => {
                associative(*beta)?;
                MatricTParams::new(*beta, *m, *n, *nu)?;
                WishartParams::new(*beta, *n, nu + *n as f64 - *m as f64, None)?;
                check_component(*component, (*m).min(*n))
            }
            WishartMethods { beta, m, nu, component } => {
                WishartParams::new(*beta, *m, *nu, None)?;
                if nu.fract() != 0.0 || *nu < *m as f64 {
                    return Err(Error::InvalidParameter(format!("the Gram sampler needs an integer nu >= m, got {nu}")));
                }
                check_component(*component, *m)
            }
            EllipticalInvariance {
                beta,
                m,
                n,
                nu,
                mixture,
                component,
            } => {
                EllipticalParams::new(*beta, *m, *n, *nu, mixture.clone())?;
                MatricTParams::new(*beta, *m, *n, *nu as f64)?;
                check_component(*component, (*m).min(*n))
            }
            WishartMean { beta, m, nu, xi } => WishartParams::new(*beta, *m, *nu, xi.clone()).map(drop),
            GammaMean { beta, nu, rho } => GammaScalarParams::new(*beta, *nu, *rho).map(drop),
        }
    }
}

fn associative(tag: AlgebraTag) -> Result<()> {
    if tag.is_associative() {
        Ok(())
    } else {
        Err(Error::OctonionRestriction("this check samples matrices and needs beta <= 4".into()))
    }
}

fn check_component(component: usize, count: usize) -> Result<()> {
    if component >= count {
        return Err(Error::InvalidParameter(format!(
            "component {component} out of range for {count} values"
        )));
    }
    Ok(())
}

fn spectral_domain(density: SpectralDensity, tag: AlgebraTag, m: usize, n: usize, nu: f64) -> Result<()> {
    if !(1..=2).contains(&m) || n < m {
        return Err(Error::InvalidParameter(format!(
            "spectral checks need m in {{1, 2}} and n >= m, got m={m}, n={n}"
        )));
    }
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(Error::InvalidParameter(format!("nu must be positive, got {nu}")));
    }
    let point: Vec<f64> = [2.0, 1.0][..m].to_vec();
    density.log_density_values(tag, m, n, nu, &point, Transcription::Corrected).map(drop)
}

/// One entry of a verification suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CheckSpecJson", into = "CheckSpecJson")]
pub struct CheckSpec {
    name: String,
    target: CheckTarget,
    budget: Budget,
    threshold: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CheckSpecJson {
    name: String,
    kind: CheckKind,
    target: CheckTarget,
    budget: Budget,
    threshold: f64,
}

impl TryFrom<CheckSpecJson> for CheckSpec {
    type Error = Error;

    fn try_from(j: CheckSpecJson) -> Result<Self> {
        let spec = CheckSpec::new(j.name, j.target, j.budget, j.threshold)?;
        if spec.kind() != j.kind {
            return Err(Error::InvalidParameter(format!(
                "check {}: kind {:?} does not match its target ({:?})",
                spec.name,
                j.kind,
                spec.kind()
            )));
        }
        Ok(spec)
    }
}

impl From<CheckSpec> for CheckSpecJson {
    fn from(s: CheckSpec) -> Self {
        CheckSpecJson {
            kind: s.kind(),
            name: s.name,
            target: s.target,
            budget: s.budget,
            threshold: s.threshold,
        }
    }
}

impl CheckSpec {
    /// The threshold is a p-value floor in (0, 1) for KS checks, a z-score
    /// bound for moment checks, the allowed |mass − 1| for normalization
    /// checks and the allowed gap for identity checks.
    pub fn new(name: impl Into<String>, target: CheckTarget, budget: Budget, threshold: f64) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::InvalidParameter("check name must not be empty".into()));
        }
        let kind = target.kind();
        match kind {
            CheckKind::Ks1 | CheckKind::Ks2 => {
                if !(threshold > 0.0 && threshold < 1.0) {
                    return Err(Error::InvalidParameter(format!(
                        "check {name}: KS threshold must be a p-value in (0, 1), got {threshold}"
                    )));
                }
            }
            _ => {
                if !(threshold > 0.0) || !threshold.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "check {name}: threshold must be positive, got {threshold}"
                    )));
                }
            }
        }
        match (kind, budget) {
            (CheckKind::Ks1 | CheckKind::Ks2, Budget::Samples(n)) if n >= super::ks::KS_MIN_SAMPLES => {}
            (CheckKind::Moment, Budget::Samples(n)) if n >= 2 => {}
            (CheckKind::Normalization, Budget::Tolerance(t)) if t > 0.0 && t.is_finite() => {}
            (CheckKind::Identity, Budget::Trials(n)) if n > 0 => {}
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "check {name}: budget {budget:?} does not suit a {kind:?} check"
                )))
            }
        }
        target
            .validate()
            .map_err(|e| Error::InvalidParameter(format!("check {name}: {e}")))?;
        Ok(CheckSpec {
            name,
            target,
            budget,
            threshold,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> CheckKind {
        self.target.kind()
    }

    pub fn target(&self) -> &CheckTarget {
        &self.target
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }
}

/// Parses a JSON array of check specifications.
pub fn parse_suite_json(text: &str) -> Result<Vec<CheckSpec>> {
    let specs: Vec<CheckSpec> = serde_json::from_str(text)?;
    check_unique_names(&specs)?;
    Ok(specs)
}

pub(crate) fn check_unique_names(specs: &[CheckSpec]) -> Result<()> {
    let mut names: Vec<&str> = specs.iter().map(CheckSpec::name).collect();
    names.sort_unstable();
    if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter(format!("duplicate check name {}", w[0])));
    }
    Ok(())
}

const P_FLOOR: f64 = 0.005;

fn spec(name: String, target: CheckTarget, budget: Budget, threshold: f64) -> CheckSpec {
    CheckSpec::new(name, target, budget, threshold).expect("built-in check is valid")
}

fn tag(beta: u32) -> AlgebraTag {
    AlgebraTag::new(beta).expect("built-in algebra")
}

/// The built-in suite. Check names start with `c<k>-`, grouping them by
/// acceptance criterion.
pub fn default_suite() -> Vec<CheckSpec> {
    let mut s = Vec::new();

    s.push(spec("c1-gamma-ratio".into(), CheckTarget::GammaRatioIdentity, Budget::Trials(200), 1e-10));
    for beta in [1, 2, 4] {
        s.push(spec(
            format!("c2-form-equivalence-b{beta}"),
            CheckTarget::FormEquivalence { beta: tag(beta) },
            Budget::Trials(100),
            1e-9,
        ));
    }

    for beta in [1, 2, 4, 8] {
        for n in 1..=3 {
            for (label, family) in [("matric-t", RadialFamily::MatricT), ("matrix-t", RadialFamily::MatrixT)] {
                s.push(spec(
                    format!("c3-mass-{label}-b{beta}-n{n}"),
                    CheckTarget::RadialMass {
                        family,
                        beta: tag(beta),
                        n,
                        nu: 2.0,
                    },
                    Budget::Tolerance(1e-9),
                    1e-6,
                ));
            }
            for (label, family) in [("beta2-matric", Beta2Family::Matric), ("beta2-mv", Beta2Family::Multivariate)] {
                s.push(spec(
                    format!("c3-mass-{label}-b{beta}-n{n}"),
                    CheckTarget::Beta2Mass {
                        family,
                        beta: tag(beta),
                        m: 1,
                        n,
                        nu: 2.0,
                        orientation: Orientation::Gram,
                        variant: Transcription::Corrected,
                    },
                    Budget::Tolerance(1e-9),
                    1e-6,
                ));
            }
        }
    }
    for (label, density, n) in [
        ("eig-beta2", SpectralDensity::EigBeta2, 3),
        ("eig-mv", SpectralDensity::EigMv, 3),
        ("sv-matric-t", SpectralDensity::SvMatricT, 2),
        ("sv-matrix-t", SpectralDensity::SvMatrixMt, 2),
    ] {
        s.push(spec(
            format!("c3-mass-2d-{label}"),
            CheckTarget::SpectralMass {
                density,
                beta: AlgebraTag::REAL,
                m: 2,
                n,
                nu: 3.0,
                variant: Transcription::Corrected,
            },
            Budget::Tolerance(1e-6),
            1e-4,
        ));
    }

    // β = 4 needs ν + n − m > 4(n − 1) for the inverse-root Wishart.
    for (beta, nu) in [(1, 5.0), (2, 5.0), (4, 8.0)] {
        for component in 0..2 {
            s.push(spec(
                format!("c4-construction-b{beta}-sv{}", component + 1),
                CheckTarget::ConstructionEquivalence {
                    beta: tag(beta),
                    m: 2,
                    n: 3,
                    nu,
                    component,
                },
                Budget::Samples(20_000),
                P_FLOOR,
            ));
        }
    }

    s.push(spec("c5-cauchy".into(), CheckTarget::StudentScalar { nu: 1.0 }, Budget::Samples(50_000), P_FLOOR));
    s.push(spec(
        "c5-beta-prime".into(),
        CheckTarget::BetaPrimeScalar {
            beta: AlgebraTag::REAL,
            n: 2,
            nu: 3.0,
        },
        Budget::Samples(50_000),
        P_FLOOR,
    ));
    s.push(spec(
        "c5-matrix-t-scalar".into(),
        CheckTarget::MatrixTScalar { nu: 3.0, rho: 2.0 },
        Budget::Samples(50_000),
        P_FLOOR,
    ));

    s.push(spec(
        "c6-wishart-methods".into(),
        CheckTarget::WishartMethods {
            beta: AlgebraTag::REAL,
            m: 2,
            nu: 6.0,
            component: 0,
        },
        Budget::Samples(20_000),
        P_FLOOR,
    ));
    s.push(spec(
        "c6-wishart-mean".into(),
        CheckTarget::WishartMean {
            beta: AlgebraTag::COMPLEX,
            m: 2,
            nu: 5.0,
            xi: Some(sample_xi()),
        },
        Budget::Samples(20_000),
        3.0,
    ));

    let mixture = ScaleMixtureSpec::new(vec![0.7, 0.3], vec![1.0, 3.0]).expect("valid mixture");
    for beta in [1, 2] {
        for component in 0..2 {
            s.push(spec(
                format!("c7-elliptical-b{beta}-sv{}", component + 1),
                CheckTarget::EllipticalInvariance {
                    beta: tag(beta),
                    m: 2,
                    n: 3,
                    nu: 4,
                    mixture: mixture.clone(),
                    component,
                },
                Budget::Samples(20_000),
                P_FLOOR,
            ));
        }
    }

    for (label, erratum) in [("cogram-exponent", Erratum::CogramExponent), ("pi-power", Erratum::PiPower)] {
        s.push(spec(
            format!("c8-erratum-{label}"),
            CheckTarget::ErratumEvidence { erratum },
            Budget::Tolerance(1e-9),
            1e-6,
        ));
    }

    s.push(spec(
        "c9-top-eigenvalue".into(),
        CheckTarget::TopEigenvalue {
            beta: AlgebraTag::REAL,
            m: 2,
            n: 3,
            nu: 4.0,
        },
        Budget::Samples(20_000),
        P_FLOOR,
    ));
    s
}

/// A fixed complex scale [[2, 0.5 + 0.3i], [0.5 − 0.3i, 1]].
fn sample_xi() -> HermitianPD {
    let t = AlgebraTag::COMPLEX;
    let c = |re: f64, im: f64| DivScalar::from_coeffs(t, &[re, im]).expect("complex coefficients");
    let m = DivMatrix::from_entries(t, 2, 2, vec![c(2.0, 0.0), c(0.5, 0.3), c(0.5, -0.3), c(1.0, 0.0)]).expect("2x2");
    HermitianPD::new(m).expect("positive definite")
}
