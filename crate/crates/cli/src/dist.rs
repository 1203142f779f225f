//! Distribution selection: either family flags or a parameter file.

use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, ValueEnum};
use serde_json::{Map, Value};

use rdmt::distributions::{parse_params_json, DistParams};

use crate::{config_error, ConfigError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    MatricT,
    MatrixT,
    Wishart,
    Gamma,
    Gaussian,
    Beta2Matric,
    Beta2Multivariate,
    EllipticalT,
}

impl Family {
    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_owned()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrientationArg {
    Gram,
    Cogram,
}

#[derive(Args, Debug)]
pub struct DistArgs {
    /// Distribution family.
    #[arg(long, value_enum, required_unless_present = "params")]
    dist: Option<Family>,
    /// Parameter file (JSON with a "family" field) instead of the flags.
    #[arg(long, conflicts_with_all = ["dist", "beta", "m", "n", "nu", "rho", "orientation"])]
    params: Option<PathBuf>,
    /// Algebra dimension: 1, 2, 4 or 8.
    #[arg(long)]
    beta: Option<u32>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Degrees of freedom.
    #[arg(long)]
    nu: Option<f64>,
    /// Scale of the matrix multivariate T and the gamma law.
    #[arg(long)]
    rho: Option<f64>,
    /// Beta type II orientation.
    #[arg(long, value_enum)]
    orientation: Option<OrientationArg>,
}

/// Integral values go in as JSON integers so that integer-typed fields
/// (the elliptical ν) accept them.
fn number(x: f64) -> Value {
    if x.is_finite() && x.fract() == 0.0 && x.abs() < 9.0e15 {
        Value::from(x as i64)
    } else {
        serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
    }
}

impl DistArgs {
    pub fn resolve(&self) -> anyhow::Result<DistParams> {
        let text = match &self.params {
            Some(path) => std::fs::read_to_string(path)
                .map_err(|e| ConfigError(format!("reading {}: {e}", path.display())))?,
            None => self.flags_json()?,
        };
        parse_params_json(&text).context("invalid distribution parameters")
    }

    fn flags_json(&self) -> anyhow::Result<String> {
        let Some(family) = self.dist else {
            return config_error("either --dist or --params is required");
        };
        let mut obj = Map::new();
        obj.insert("family".into(), Value::from(family.name()));
        if let Some(b) = self.beta {
            obj.insert("beta".into(), Value::from(b));
        }
        if let Some(m) = self.m {
            obj.insert("m".into(), Value::from(m));
        }
        if let Some(n) = self.n {
            obj.insert("n".into(), Value::from(n));
        }
        if let Some(nu) = self.nu {
            obj.insert("nu".into(), number(nu));
        }
        if let Some(rho) = self.rho {
            obj.insert("rho".into(), number(rho));
        }
        if let Some(o) = self.orientation {
            let o = match o {
                OrientationArg::Gram => "gram",
                OrientationArg::Cogram => "cogram",
            };
            obj.insert("orientation".into(), Value::from(o));
        }
        Ok(Value::Object(obj).to_string())
    }
}
