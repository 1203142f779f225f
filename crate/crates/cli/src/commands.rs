use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, ValueEnum};
use serde::Serialize;

use rdmt::algebra::{AlgebraTag, DivMatrix, DivScalar, HermitianPD};
use rdmt::distributions::{
    logpdf_beta2_matric, logpdf_beta2_multivariate, logpdf_matric_t, logpdf_matrix_mt, sample_beta2_matric,
    sample_beta2_multivariate, sample_elliptical_t, sample_gamma_scalar, sample_gaussian, sample_matric_t,
    sample_matrix_mt, sample_wishart, DensityForm, DistParams, MatricTMethod, Orientation, Transcription,
    WishartMethod,
};
use rdmt::io::{read_matrices_jsonl, write_matrix_jsonl};
use rdmt::rng::RngStream;
use rdmt::spectral::{csv_header, empirical_spectrum, SpectralDensity, SpectrumKind, SpectrumSample};
use rdmt::verify::{default_suite, parse_suite_json, run_suite, RunOptions};

use crate::config_error;
use crate::dist::DistArgs;

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest analytic grid written by `spectrum --grid`.
const MAX_GRID_ROWS: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    WishartRoot,
    InverseRoot,
    Bartlett,
    Gram,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Jsonl,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Primal,
    Dual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Singular,
    Eigen,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[command(flatten)]
    dist: DistArgs,
    /// Random seed.
    #[arg(long, env = "RDMT_SEED")]
    seed: u64,
    /// Number of draws.
    #[arg(long)]
    count: usize,
    /// Construction: wishart-root or inverse-root for matric-t, bartlett or
    /// gram for wishart.
    #[arg(long, value_enum)]
    method: Option<Method>,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DensityArgs {
    #[command(flatten)]
    dist: DistArgs,
    /// JSON Lines file of matrices, or `-` for standard input.
    #[arg(long)]
    points: PathBuf,
    /// Determinant form of the matricvariate T density.
    #[arg(long, value_enum, default_value_t = Form::Primal)]
    form: Form,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    dist: DistArgs,
    #[arg(long, env = "RDMT_SEED")]
    seed: u64,
    #[arg(long)]
    count: usize,
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Singular values of T, or eigenvalues (of TT* for T-valued families).
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the closed-form joint log density on a grid to this CSV file.
    #[arg(long)]
    grid: Option<PathBuf>,
    /// Grid levels per coordinate.
    #[arg(long, default_value_t = 40)]
    grid_points: usize,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// `default`, or a JSON file holding an array of checks.
    #[arg(long, default_value = "default")]
    suite: String,
    #[arg(long, env = "RDMT_SEED")]
    seed: u64,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Run checks on a thread pool. The report does not change.
    #[arg(long)]
    parallel: bool,
    /// Record per-check wall times in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Serialize, Default)]
struct RunRecord<'a> {
    rdmt: &'static str,
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<&'a DistParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    method: Option<Method>,
    #[serde(skip_serializing_if = "Option::is_none")]
    kind: Option<Kind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    form: Option<Form>,
    #[serde(skip_serializing_if = "Option::is_none")]
    format: Option<Format>,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    suite: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    checks: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    parallel: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing: Option<bool>,
}

impl RunRecord<'_> {
    fn emit(&self) {
        eprintln!("{}", serde_json::to_string(self).expect("run record serializes"));
    }
}

fn create(path: &Path) -> anyhow::Result<File> {
    File::create(path).map_err(|e| crate::ConfigError(format!("creating {}: {e}", path.display())).into())
}

fn output(path: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    let mut text = String::new();
    let res = if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        File::open(path).and_then(|mut f| f.read_to_string(&mut text).map(|_| ()))
    };
    match res {
        Ok(()) => Ok(text),
        Err(e) => config_error(format!("reading {}: {e}", path.display())),
    }
}

/// One draw from any family.
enum Draw {
    Matrix(DivMatrix),
    Hermitian(HermitianPD),
    Scalar(f64),
}

impl Draw {
    fn into_matrix(self) -> rdmt::Result<DivMatrix> {
        match self {
            Draw::Matrix(t) => Ok(t),
            Draw::Hermitian(h) => Ok(h.into_matrix()),
            Draw::Scalar(x) => DivMatrix::from_entries(AlgebraTag::REAL, 1, 1, vec![DivScalar::real(AlgebraTag::REAL, x)]),
        }
    }
}

#[derive(Clone, Copy)]
enum Construction {
    MatricT(MatricTMethod),
    Wishart(WishartMethod),
    Only,
}

fn construction(params: &DistParams, method: Option<Method>) -> anyhow::Result<Construction> {
    Ok(match (params, method) {
        (DistParams::MatricT(_), None | Some(Method::WishartRoot)) => Construction::MatricT(MatricTMethod::WishartRoot),
        (DistParams::MatricT(_), Some(Method::InverseRoot)) => Construction::MatricT(MatricTMethod::InverseRoot),
        (DistParams::Wishart(_), None | Some(Method::Bartlett)) => Construction::Wishart(WishartMethod::Bartlett),
        (DistParams::Wishart(_), Some(Method::Gram)) => Construction::Wishart(WishartMethod::Gram),
        (_, None) => Construction::Only,
        (p, Some(m)) => {
            let name = m.to_possible_value().expect("no skipped variants").get_name().to_owned();
            return config_error(format!("--method {name} does not apply to {}", p.family()));
        }
    })
}

fn draw(rng: &mut RngStream, params: &DistParams, how: Construction) -> rdmt::Result<Draw> {
    Ok(match (params, how) {
        (DistParams::MatricT(p), Construction::MatricT(m)) => Draw::Matrix(sample_matric_t(rng, p, m)?),
        (DistParams::Wishart(p), Construction::Wishart(m)) => Draw::Hermitian(sample_wishart(rng, p, m)?),
        (DistParams::MatrixT(p), _) => Draw::Matrix(sample_matrix_mt(rng, p)?),
        (DistParams::Gamma(p), _) => Draw::Scalar(sample_gamma_scalar(rng, p)),
        (DistParams::Gaussian(p), _) => Draw::Matrix(sample_gaussian(rng, p.tag(), p.m(), p.n(), p.sigma())?),
        (DistParams::Beta2Matric(p), _) => Draw::Hermitian(sample_beta2_matric(rng, p)?),
        (DistParams::Beta2Multivariate(p), _) => Draw::Hermitian(sample_beta2_multivariate(rng, p)?),
        (DistParams::EllipticalT(p), _) => Draw::Matrix(sample_elliptical_t(rng, p)?),
        (DistParams::MatricT(_) | DistParams::Wishart(_), _) => unreachable!("construction matches the family"),
    })
}

pub fn sample(args: SampleArgs) -> anyhow::Result<ExitCode> {
    if args.format == Format::Csv {
        return config_error("samples are written as JSON Lines; CSV output is for spectra");
    }
    let params = args.dist.resolve()?;
    let how = construction(&params, args.method)?;
    RunRecord {
        rdmt: VERSION,
        command: "sample",
        seed: Some(args.seed),
        params: Some(&params),
        count: Some(args.count),
        method: args.method,
        format: Some(args.format),
        ..Default::default()
    }
    .emit();
    let mut out = output(&args.out)?;
    let mut rng = RngStream::new(args.seed, 0);
    for _ in 0..args.count {
        let x = draw(&mut rng, &params, how)?.into_matrix()?;
        write_matrix_jsonl(&mut out, &x)?;
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

pub fn density(args: DensityArgs) -> anyhow::Result<ExitCode> {
    let params = args.dist.resolve()?;
    if args.form == Form::Dual && !matches!(params, DistParams::MatricT(_)) {
        return config_error(format!("--form dual only applies to matric-t, not {}", params.family()));
    }
    if !matches!(
        params,
        DistParams::MatricT(_) | DistParams::MatrixT(_) | DistParams::Beta2Matric(_) | DistParams::Beta2Multivariate(_)
    ) {
        return config_error(format!("no density evaluator for {}", params.family()));
    }
    RunRecord {
        rdmt: VERSION,
        command: "density",
        params: Some(&params),
        form: Some(args.form),
        points: Some(args.points.display().to_string()),
        ..Default::default()
    }
    .emit();
    let points = read_matrices_jsonl(&read_input(&args.points)?)?;
    let form = match args.form {
        Form::Primal => DensityForm::Primal,
        Form::Dual => DensityForm::Dual,
    };
    let mut out = output(&args.out)?;
    for (i, x) in points.iter().enumerate() {
        let v = match &params {
            DistParams::MatricT(p) => logpdf_matric_t(p, x, form),
            DistParams::MatrixT(p) => logpdf_matrix_mt(p, x),
            DistParams::Beta2Matric(p) => logpdf_beta2_matric(p, x),
            DistParams::Beta2Multivariate(p) => logpdf_beta2_multivariate(p, x),
            _ => unreachable!("family checked above"),
        }
        .with_context(|| format!("point {}", i + 1))?;
        writeln!(out, "{v}")?;
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

/// Whether draws are T-like rectangular matrices (singular values by
/// default) or Hermitian ones (eigenvalues only).
fn spectrum_kind(params: &DistParams, kind: Option<Kind>) -> anyhow::Result<Kind> {
    match params {
        DistParams::Gamma(_) => config_error("the gamma law is scalar; it has no spectrum"),
        DistParams::Wishart(_) | DistParams::Beta2Matric(_) | DistParams::Beta2Multivariate(_) => match kind {
            None | Some(Kind::Eigen) => Ok(Kind::Eigen),
            Some(Kind::Singular) => config_error(format!("{} draws are Hermitian; use --kind eigen", params.family())),
        },
        _ => Ok(kind.unwrap_or(Kind::Singular)),
    }
}

fn spectrum_of(d: Draw, kind: Kind) -> rdmt::Result<SpectrumSample> {
    match d {
        Draw::Matrix(t) => {
            let sv = empirical_spectrum(&t, SpectrumKind::Singular)?;
            match kind {
                Kind::Singular => Ok(sv),
                Kind::Eigen => SpectrumSample::new(sv.values().iter().map(|s| s * s).collect(), SpectrumKind::Eigen),
            }
        }
        Draw::Hermitian(h) => empirical_spectrum(h.matrix(), SpectrumKind::Eigen),
        Draw::Scalar(_) => unreachable!("scalar families are rejected before sampling"),
    }
}

/// The closed-form joint density of the spectrum, with the (tag, m, n, ν)
/// it is evaluated at. Only standardised laws have one.
fn closed_form(params: &DistParams, kind: Kind) -> Option<(SpectralDensity, AlgebraTag, usize, usize, f64)> {
    let pick = |sv, eig| if kind == Kind::Singular { sv } else { eig };
    match params {
        DistParams::MatricT(p) if p.mu().is_none() && p.xi().is_none() && p.sigma().is_none() && p.n() >= p.m() => Some((
            pick(SpectralDensity::SvMatricT, SpectralDensity::EigBeta2),
            p.tag(),
            p.m(),
            p.n(),
            p.nu(),
        )),
        DistParams::MatrixT(p)
            if p.mu().is_none() && p.delta().is_none() && p.lambda().is_none() && p.rho() == 1.0 && p.n() >= p.m() =>
        {
            Some((pick(SpectralDensity::SvMatrixMt, SpectralDensity::EigMv), p.tag(), p.m(), p.n(), p.nu()))
        }
        DistParams::Beta2Matric(p) if p.scale().is_none() => Some(match p.orientation() {
            Orientation::Gram => (SpectralDensity::EigBeta2, p.tag(), p.m(), p.n(), p.nu()),
            Orientation::Cogram => (SpectralDensity::EigBeta2, p.tag(), p.n(), p.m(), p.nu() + p.n() as f64 - p.m() as f64),
        }),
        DistParams::Beta2Multivariate(p) if p.scale().is_none() => Some(match p.orientation() {
            Orientation::Gram => (SpectralDensity::EigMv, p.tag(), p.m(), p.n(), p.nu()),
            Orientation::Cogram => (SpectralDensity::EigMv, p.tag(), p.n(), p.m(), p.nu()),
        }),
        _ => None,
    }
}

fn binomial(k: usize, m: usize) -> u128 {
    if m > k {
        return 0;
    }
    (0..m as u128).fold(1u128, |acc, i| acc * (k as u128 - i) / (i + 1))
}

/// Every strictly descending m-tuple of grid levels, in lexicographic order.
fn descending_tuples(levels: &[f64], m: usize, mut visit: impl FnMut(&[f64]) -> anyhow::Result<()>) -> anyhow::Result<()> {
    let k = levels.len();
    let mut idx: Vec<usize> = (0..m).rev().collect();
    let mut buf = vec![0.0; m];
    loop {
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = levels[i];
        }
        visit(&buf)?;
        // Advance like an odometer over k-1 ≥ idx[0] > idx[1] > … ≥ 0.
        let mut pos = m;
        while pos > 0 {
            pos -= 1;
            let cap = if pos == 0 { k - 1 } else { idx[pos - 1] - 1 };
            if idx[pos] < cap {
                idx[pos] += 1;
                for (j, slot) in idx.iter_mut().enumerate().skip(pos + 1) {
                    *slot = m - 1 - j;
                }
                break;
            }
            if pos == 0 {
                return Ok(());
            }
        }
    }
}

fn write_grid(
    path: &Path,
    law: (SpectralDensity, AlgebraTag, usize, usize, f64),
    kind: Kind,
    upper: f64,
    k: usize,
) -> anyhow::Result<()> {
    let (density, tag, m, n, nu) = law;
    let rows = binomial(k, m);
    if rows == 0 || rows > MAX_GRID_ROWS {
        return config_error(format!(
            "a grid of {k} levels in {m} coordinates has {rows} points; choose --grid-points so it is between 1 and {MAX_GRID_ROWS}"
        ));
    }
    let levels: Vec<f64> = (1..=k).map(|i| upper * i as f64 / k as f64).collect();
    let sk = match kind {
        Kind::Singular => SpectrumKind::Singular,
        Kind::Eigen => SpectrumKind::Eigen,
    };
    let mut out = BufWriter::new(create(path)?);
    writeln!(out, "{},log_density", csv_header(m))?;
    descending_tuples(&levels, m, |v| {
        let s = SpectrumSample::new(v.to_vec(), sk)?;
        let ld = density.log_density(tag, m, n, nu, &s, Transcription::Corrected)?;
        writeln!(out, "{},{ld}", s.csv_row())?;
        Ok(())
    })?;
    out.flush()?;
    Ok(())
}

pub fn spectrum(args: SpectrumArgs) -> anyhow::Result<ExitCode> {
    let params = args.dist.resolve()?;
    let how = construction(&params, args.method)?;
    let kind = spectrum_kind(&params, args.kind)?;
    let law = closed_form(&params, kind);
    if args.grid.is_some() {
        if law.is_none() {
            return config_error(format!(
                "no closed-form spectral density for these {} parameters (needs identity scales, zero location, n >= m)",
                params.family()
            ));
        }
        if args.grid_points == 0 {
            return config_error("--grid-points must be positive");
        }
    }
    RunRecord {
        rdmt: VERSION,
        command: "spectrum",
        seed: Some(args.seed),
        params: Some(&params),
        count: Some(args.count),
        method: args.method,
        kind: Some(kind),
        format: Some(args.format),
        grid_points: args.grid.as_ref().map(|_| args.grid_points),
        ..Default::default()
    }
    .emit();

    let mut out = output(&args.out)?;
    let mut rng = RngStream::new(args.seed, 0);
    let mut upper: f64 = 0.0;
    let mut header = args.format == Format::Csv;
    for _ in 0..args.count {
        let s = spectrum_of(draw(&mut rng, &params, how)?, kind)?;
        upper = upper.max(s.values()[0]);
        match args.format {
            Format::Csv => {
                if header {
                    writeln!(out, "{}", csv_header(s.len()))?;
                    header = false;
                }
                writeln!(out, "{}", s.csv_row())?;
            }
            Format::Jsonl => writeln!(out, "{}", serde_json::to_string(&s)?)?,
        }
    }
    out.flush()?;

    if let (Some(path), Some(law)) = (&args.grid, law) {
        if upper <= 0.0 {
            return config_error("the grid range comes from the samples; use --count >= 1");
        }
        write_grid(path, law, kind, upper, args.grid_points)?;
    }
    Ok(ExitCode::SUCCESS)
}

pub fn verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let suite = if args.suite == "default" {
        default_suite()
    } else {
        parse_suite_json(&read_input(Path::new(&args.suite))?).with_context(|| format!("suite {}", args.suite))?
    };
    RunRecord {
        rdmt: VERSION,
        command: "verify",
        seed: Some(args.seed),
        suite: Some(&args.suite),
        checks: Some(suite.len()),
        parallel: Some(args.parallel),
        timing: Some(args.timing),
        ..Default::default()
    }
    .emit();
    let opts = RunOptions {
        parallel: args.parallel,
        timing: args.timing,
    };
    let report = run_suite(&suite, args.seed, opts)?;
    for c in report.failed() {
        match &c.error {
            Some(e) => eprintln!("FAIL {}: {e}", c.name),
            None => eprintln!("FAIL {}: statistic {:?}, threshold {}", c.name, c.statistic, c.threshold),
        }
    }
    let passed = report.checks.iter().filter(|c| c.pass).count();
    eprintln!("{passed}/{} checks passed", report.checks.len());
    match &args.report {
        Some(path) => {
            let mut f = create(path)?;
            f.write_all(report.to_json().as_bytes())?;
        }
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(report.to_json().as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
