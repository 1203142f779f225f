//! Verification harness: quadrature normalization checks, Kolmogorov–Smirnov
//! tests, moment checks and the suite runner that turns a list of
//! [`CheckSpec`]s into a [`VerifyReport`].

mod checks;
mod eval;
pub mod ks;
pub mod quadrature;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngStream;

pub use checks::{
    default_suite, parse_suite_json, Beta2Family, Budget, CheckKind, CheckSpec, CheckTarget, Erratum, RadialFamily,
};
pub use ks::{kolmogorov_sf, ks_one_sample, ks_one_sample_values, ks_two_sample, KsResult};
pub use quadrature::{integrate, integrate_half_line, integrate_ordered_cone_2d, quadrature_mass_scalar, Quad, QuadOptions};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentResult {
    pub mean: f64,
    pub se: f64,
    pub z: f64,
    pub pass: bool,
}

/// Compares the sample mean of `estimator` with `expected`, passing when
/// they are within `tol_se` standard errors.
pub fn moment_check<T, F: Fn(&T) -> f64>(samples: &[T], estimator: F, expected: f64, tol_se: f64) -> Result<MomentResult> {
    if samples.len() < 2 {
        return Err(Error::InvalidParameter("moment check needs at least two samples".into()));
    }
    let xs: Vec<f64> = samples.iter().map(estimator).collect();
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let se = (var / n).sqrt();
    let diff = mean - expected;
    let z = if se > 0.0 {
        diff / se
    } else if diff == 0.0 {
        0.0
    } else {
        diff.signum() * f64::INFINITY
    };
    Ok(MomentResult {
        mean,
        se,
        z,
        pass: z.abs() <= tol_se,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Run checks on the rayon pool. Results do not depend on this.
    pub parallel: bool,
    /// Record wall time per check. Timings make reports differ between
    /// runs, so they are off by default.
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub kind: CheckKind,
    /// None when the check could not be computed; see `error`.
    pub statistic: Option<f64>,
    pub threshold: f64,
    pub pass: bool,
    pub attempts: u32,
    pub details: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub version: String,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Stream for the rerun of a failed stochastic check.
const RERUN_BIT: u64 = 1 << 63;

fn run_one(spec: &CheckSpec, index: usize, seed: u64, timing: bool) -> CheckResult {
    let start = Instant::now();
    let mut attempts = 0;
    let mut outcome;
    loop {
        let stream = if attempts == 0 { index as u64 } else { index as u64 | RERUN_BIT };
        let mut rng = RngStream::new(seed, stream);
        outcome = eval::evaluate(spec, &mut rng);
        attempts += 1;
        let retry = attempts == 1 && spec.kind().is_stochastic() && matches!(&outcome, Ok(o) if !o.pass);
        if !retry {
            break;
        }
    }
    let wall_time_ms = timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    match outcome {
        Ok(o) => CheckResult {
            name: spec.name().to_string(),
            kind: spec.kind(),
            statistic: Some(o.statistic).filter(|s| s.is_finite()),
            threshold: spec.threshold(),
            pass: o.pass,
            attempts,
            details: o.details.into_iter().filter(|(_, v)| v.is_finite()).collect(),
            error: None,
            wall_time_ms,
        },
        Err(e) => CheckResult {
            name: spec.name().to_string(),
            kind: spec.kind(),
            statistic: None,
            threshold: spec.threshold(),
            pass: false,
            attempts,
            details: BTreeMap::new(),
            error: Some(e.to_string()),
            wall_time_ms,
        },
    }
}

/// Runs every check. The i-th check draws from stream i of `seed`; a
/// stochastic check that fails is rerun once on a disjoint stream. Results
/// are sorted by name.
pub fn run_suite(specs: &[CheckSpec], seed: u64, opts: RunOptions) -> Result<VerifyReport> {
    checks::check_unique_names(specs)?;
    let mut results: Vec<CheckResult> = if opts.parallel {
        specs
            .par_iter()
            .enumerate()
            .map(|(i, s)| run_one(s, i, seed, opts.timing))
            .collect()
    } else {
        specs
            .iter()
            .enumerate()
            .map(|(i, s)| run_one(s, i, seed, opts.timing))
            .collect()
    };
    results.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(VerifyReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed,
        pass: results.iter().all(|r| r.pass),
        checks: results,
    })
}
