//! Experiment subcommand drivers: continuity, metric, rieffel, sobolev.

use crate::analysis::{
    continuity_sweep, metric_derivative_fd, rieffel_equivalence, sobolev_ratio_experiment,
    CoefficientFix, ExperimentReport,
};
use crate::bases::AnyBasis;
use crate::error::{Error, Result};
use crate::spectral::SobolevParams;
use crate::star::{DeformedAlgebra, TruncationPolicy};
use crate::weights::{SkewMatrix, Weight};

use super::config::{
    build_basis, parse_metric_family, parse_weight, parse_weight_path, Options,
};

/// Echo the invocation options into the report, skipping keys the harness
/// already recorded.
fn echo_options(report: &mut ExperimentReport, opts: &Options) {
    for (k, v) in opts.echo() {
        if !report.config_echo.iter().any(|(ek, _)| *ek == k) {
            report.echo(&k, v);
        }
    }
}

pub const CONTINUITY_KEYS: &[&str] = &[
    "config", "basis", "dim", "nmax", "radii", "lmax", "path", "t-grid", "bandwidth", "seed",
    "sobolev-s", "decay", "csv", "json",
];

pub fn run_continuity(opts: &Options) -> Result<ExperimentReport> {
    let basis = build_basis(opts)?;
    let path = parse_weight_path(opts.require("path")?)?;
    let t_grid = opts.float_list("t-grid")?;
    let seed = opts.parse_u64("seed", 1)?;
    let decay = opts.parse_f64("decay", 1.0)?;
    let s = SobolevParams::new(opts.parse_f64("sobolev-s", 0.0)?);
    let default_bw = (basis.max_degree() / 2).max(1);
    let bw = opts.parse_usize("bandwidth", default_bw as usize)? as u32;
    let alg = DeformedAlgebra::build(basis, Weight::one(), TruncationPolicy::HardTruncate)?;
    let f = alg.random_band_limited(seed, decay, bw)?;
    let g = alg.random_band_limited(seed + 1, decay, bw)?;
    let mut report = continuity_sweep(&alg, &path, &f, &g, s, &t_grid)?;
    echo_options(&mut report, opts);
    Ok(report)
}

pub const METRIC_KEYS: &[&str] = &[
    "config", "family", "nmax", "weight", "steps", "fix", "seed", "bandwidth", "decay", "csv",
    "json",
];

pub fn run_metric(opts: &Options) -> Result<ExperimentReport> {
    let family = parse_metric_family(opts.require("family")?)?;
    let nmax: i32 = opts
        .require("nmax")?
        .parse()
        .map_err(|_| Error::Config("--nmax must be an integer".into()))?;
    let weight = parse_weight(opts.get("weight").unwrap_or("one"))?;
    let steps = opts.float_list("steps")?;
    let fix = match opts.get("fix").unwrap_or("coefficients") {
        "coefficients" => CoefficientFix::Coefficients,
        "function" => CoefficientFix::Function,
        other => {
            return Err(Error::Config(format!(
                "--fix must be coefficients|function, got {other}"
            )))
        }
    };
    let seed = opts.parse_u64("seed", 1)?;
    let decay = opts.parse_f64("decay", 1.0)?;
    let bw = opts.parse_usize("bandwidth", ((nmax / 2).max(1)) as usize)? as u32;
    let basis = crate::bases::TorusBasis::new(family.dim(), nmax, family.radii_at(0.0)?)?;
    let f = crate::spectral::random_coeff_vec_filtered(basis.spectrum(), seed, decay, |id| {
        basis.mode_degree(id) <= bw
    })?;
    let g = crate::spectral::random_coeff_vec_filtered(basis.spectrum(), seed + 1, decay, |id| {
        basis.mode_degree(id) <= bw
    })?;
    let mut report = metric_derivative_fd(&family, &weight, nmax, &f, &g, fix, &steps)?;
    echo_options(&mut report, opts);
    Ok(report)
}

pub const RIEFFEL_KEYS: &[&str] = &[
    "config", "dim", "nmax", "J", "J-matrix", "pairs", "seed", "bandwidth", "csv", "json",
];

pub fn run_rieffel(opts: &Options) -> Result<ExperimentReport> {
    let dim = opts.parse_usize("dim", 2)?;
    let nmax: i32 = opts
        .require("nmax")?
        .parse()
        .map_err(|_| Error::Config("--nmax must be an integer".into()))?;
    let j = match (opts.get("J"), opts.get("J-matrix")) {
        (Some(theta), None) => {
            if dim != 2 {
                return Err(Error::Config(
                    "--J <theta> is the 2-d shorthand; use --J-matrix for other dimensions".into(),
                ));
            }
            let theta: f64 = theta
                .parse()
                .map_err(|_| Error::Config("--J must be a number".into()))?;
            SkewMatrix::theta_2d(theta)
        }
        (None, Some(text)) => {
            let entries: Vec<Vec<f64>> = serde_json::from_str(text)
                .map_err(|e| Error::Config(format!("--J-matrix: {e}")))?;
            SkewMatrix::new(entries)?
        }
        _ => return Err(Error::Config("give exactly one of --J or --J-matrix".into())),
    };
    let pairs = opts.parse_usize("pairs", 20)?;
    let seed = opts.parse_u64("seed", 1)?;
    let bw = opts.parse_usize("bandwidth", ((nmax / 2).max(1)) as usize)? as u32;
    let basis = AnyBasis::Torus(crate::bases::TorusBasis::unit(dim, nmax)?);
    let alg = DeformedAlgebra::build(
        basis,
        Weight::torus_triphase(j.clone()),
        TruncationPolicy::HardTruncate,
    )?;
    let mut report = rieffel_equivalence(&alg, &j, pairs, seed, bw)?;
    echo_options(&mut report, opts);
    Ok(report)
}

pub const SOBOLEV_KEYS: &[&str] = &[
    "config", "basis", "dim", "nmax", "radii", "lmax", "weight", "sobolev-s", "samples", "seed",
    "bandwidth", "csv", "json",
];

pub fn run_sobolev(opts: &Options) -> Result<ExperimentReport> {
    let basis = build_basis(opts)?;
    let weight = parse_weight(opts.get("weight").unwrap_or("one"))?;
    let s = SobolevParams::new(opts.parse_f64("sobolev-s", 0.0)?);
    let samples = opts.parse_usize("samples", 200)?;
    let seed = opts.parse_u64("seed", 1)?;
    let default_bw = (basis.max_degree() / 2).max(1);
    let bw = opts.parse_usize("bandwidth", default_bw as usize)? as u32;
    let alg = DeformedAlgebra::build(basis, weight, TruncationPolicy::HardTruncate)?;
    let mut report = sobolev_ratio_experiment(&alg, s, samples, seed, bw)?;
    echo_options(&mut report, opts);
    Ok(report)
}
