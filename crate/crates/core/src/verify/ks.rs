//! One- and two-sample Kolmogorov–Smirnov statistics with asymptotic
//! p-values.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Smallest sample for which the asymptotic one-sample p-value is used.
pub const KS_MIN_SAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub d: f64,
    pub p: f64,
}

/// P(K > λ) for the Kolmogorov limit distribution.
pub fn kolmogorov_sf(lambda: f64) -> f64 {
    if lambda.is_nan() {
        return f64::NAN;
    }
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 1.0 {
        // Jacobi theta form of the CDF, fast for small λ.
        let c = -PI * PI / (8.0 * lambda * lambda);
        let mut s = 0.0;
        for k in 1..=20 {
            let j = (2 * k - 1) as f64;
            let term = (c * j * j).exp();
            s += term;
            if term < 1e-300 {
                break;
            }
        }
        let cdf = (2.0 * PI).sqrt() / lambda * s;
        return (1.0 - cdf).clamp(0.0, 1.0);
    }
    let mut s = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * lambda * lambda).exp();
        s += if k % 2 == 1 { term } else { -term };
        if term < 1e-300 {
            break;
        }
    }
    (2.0 * s).clamp(0.0, 1.0)
}

fn check_sorted(xs: &[f64], what: &str) -> Result<()> {
    if let Some(i) = xs.iter().position(|x| x.is_nan()) {
        return Err(Error::InvalidParameter(format!("{what}: NaN at position {i}")));
    }
    if let Some(i) = xs.windows(2).position(|w| w[1] < w[0]) {
        return Err(Error::InvalidParameter(format!("{what}: not sorted at position {}", i + 1)));
    }
    Ok(())
}

/// One-sample test of sorted `samples` against a continuous CDF.
pub fn ks_one_sample<F: FnMut(f64) -> f64>(samples: &[f64], cdf: F) -> Result<KsResult> {
    let cdf_values: Vec<f64> = samples.iter().copied().map(cdf).collect();
    ks_one_sample_values(samples, &cdf_values)
}

/// As [`ks_one_sample`] with the reference CDF already evaluated at each
/// sample point.
pub fn ks_one_sample_values(samples: &[f64], cdf_values: &[f64]) -> Result<KsResult> {
    let n = samples.len();
    if n < KS_MIN_SAMPLES {
        return Err(Error::InvalidParameter(format!(
            "one-sample KS needs at least {KS_MIN_SAMPLES} samples, got {n}"
        )));
    }
    if cdf_values.len() != n {
        return Err(Error::DimensionMismatch(format!("{} CDF values for {n} samples", cdf_values.len())));
    }
    check_sorted(samples, "samples")?;
    let nf = n as f64;
    let mut d: f64 = 0.0;
    for (i, &f) in cdf_values.iter().enumerate() {
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::Domain(format!("CDF value {f} outside [0, 1]")));
        }
        d = d.max((i + 1) as f64 / nf - f).max(f - i as f64 / nf);
    }
    Ok(KsResult {
        d,
        p: kolmogorov_sf(nf.sqrt() * d),
    })
}

/// Two-sample test on sorted samples; the p-value uses the effective size
/// nm/(n + m).
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidParameter("two-sample KS needs non-empty samples".into()));
    }
    check_sorted(a, "first sample")?;
    check_sorted(b, "second sample")?;
    let (na, nb) = (a.len(), b.len());
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < na && j < nb {
        let x = a[i].min(b[j]);
        while i < na && a[i] == x {
            i += 1;
        }
        while j < nb && b[j] == x {
            j += 1;
        }
        d = d.max((i as f64 / na as f64 - j as f64 / nb as f64).abs());
    }
    let en = (na * nb) as f64 / (na + nb) as f64;
    Ok(KsResult {
        d,
        p: kolmogorov_sf(en.sqrt() * d),
    })
}
