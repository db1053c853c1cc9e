//! Batch front end: builds and caches fusion tensors, runs verification
//! suites and experiments, and emits machine-readable reports.
//!
//! Exit codes: 0 all checks passed; 1 a mathematical check failed;
//! 2 usage or configuration error; 3 I/O error.

pub mod cache;
pub mod config;
pub mod report;

mod experiment;
mod verify;

pub use verify::{run_verify, Suite, Tolerances};

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use crate::analysis::ExperimentReport;
use crate::error::{Error, Result};
use crate::spectral::SobolevParams;
use crate::star::{DeformedAlgebra, TruncationPolicy};

use config::{build_basis, parse_weight, Options};
use report::{fmt_f64, report_csv, report_json};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

const USAGE: &str = "usage:
  starspec build-fusion --basis torus --dim D --nmax N [--radii a1,...] [--drop-tol X] --out FILE
  starspec build-fusion --basis sphere --lmax L --out FILE
  starspec build-fusion --basis su2 --lmax L --out FILE
  starspec verify --basis ... --weight SPEC --suite cocycle|assoc|involution|equivariance|gauge|all
                  [--seed S] [--sobolev-s X] [--pass-tol X] [--fail-tol X] [--hom-tol X]
                  [--cache FILE] [--report FILE] [--config FILE]
  starspec experiment continuity --basis ... --path eigenphase:c=C|triphase:J=[[..]] --t-grid t1,t2,...
  starspec experiment metric --family \"a=(1,1+t)\" --nmax N --weight SPEC --steps h1,h2,...
  starspec experiment rieffel --dim D --nmax N --J THETA --pairs P
  starspec experiment sobolev --basis ... --weight SPEC --sobolev-s X --samples K
  (experiments also accept --seed, --bandwidth, --csv FILE, --json FILE, --config FILE)

weight SPEC: one | eigenphase:c=F | triphase:J=[[..]] | bichar:J=[[..]] | su2phase,
optionally wrapped with ~conj or ~perturb:eps=F,seed=N.
The STARSPEC_CACHE_DIR environment variable supplies the directory for bare
cache file names.";

/// Entry point for the binary; returns the process exit code.
pub fn run(args: &[String]) -> i32 {
    match dispatch(args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) | Error::InvalidArgument(_) => EXIT_USAGE,
                Error::Io(_) | Error::Cache(_) => EXIT_IO,
                _ => EXIT_CHECK_FAILED,
            }
        }
    }
}

fn dispatch(args: &[String]) -> Result<i32> {
    let Some(command) = args.first() else {
        eprintln!("{USAGE}");
        return Ok(EXIT_USAGE);
    };
    match command.as_str() {
        "build-fusion" => cmd_build_fusion(&args[1..]),
        "verify" => cmd_verify(&args[1..]),
        "experiment" => cmd_experiment(&args[1..]),
        "help" | "--help" | "-h" => {
            println!("{USAGE}");
            Ok(EXIT_OK)
        }
        other => {
            eprintln!("unknown command: {other}\n{USAGE}");
            Ok(EXIT_USAGE)
        }
    }
}

/// Joins bare file names onto STARSPEC_CACHE_DIR when it is set.
fn resolve_cache_path(name: &str) -> PathBuf {
    let p = Path::new(name);
    if p.components().count() == 1 {
        if let Ok(dir) = std::env::var("STARSPEC_CACHE_DIR") {
            if !dir.is_empty() {
                return Path::new(&dir).join(p);
            }
        }
    }
    p.to_path_buf()
}

const BUILD_KEYS: &[&str] = &[
    "config", "basis", "dim", "nmax", "radii", "lmax", "drop-tol", "out",
];

fn cmd_build_fusion(args: &[String]) -> Result<i32> {
    let opts = Options::parse(args, BUILD_KEYS)?;
    let basis = build_basis(&opts)?;
    let drop_tol = opts.parse_f64("drop-tol", 0.0)?;
    let out = resolve_cache_path(opts.require("out")?);
    let started = Instant::now();
    let tensor = basis.build_fusion(drop_tol);
    cache::write_cache(&tensor, &out)?;
    println!(
        "wrote {} pairs ({} channel entries, {} leaking) checksum {} to {}",
        tensor.pairs_total(),
        tensor.entry_count(),
        tensor.pairs_leaking(),
        cache::checksum_of(&tensor),
        out.display()
    );
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    Ok(EXIT_OK)
}

const VERIFY_KEYS: &[&str] = &[
    "config", "basis", "dim", "nmax", "radii", "lmax", "weight", "suite", "seed", "sobolev-s",
    "pass-tol", "fail-tol", "hom-tol", "cache", "report",
];

fn cmd_verify(args: &[String]) -> Result<i32> {
    let opts = Options::parse(args, VERIFY_KEYS)?;
    let basis = build_basis(&opts)?;
    let weight = parse_weight(opts.require("weight")?)?;
    let suites = verify::Suite::parse_list(opts.get("suite").unwrap_or("all"))?;
    let seed = opts.parse_u64("seed", 1)?;
    let s = SobolevParams::new(opts.parse_f64("sobolev-s", 0.0)?);
    let tol = Tolerances {
        pass: opts.parse_f64("pass-tol", 1e-10)?,
        fail: opts.parse_f64("fail-tol", 1e-6)?,
        hom: opts.parse_f64("hom-tol", 1e-8)?,
    };
    let tensor = match opts.get("cache") {
        Some(name) => Arc::new(cache::load_cache(&resolve_cache_path(name), &basis)?),
        None => Arc::new(basis.build_fusion(0.0)),
    };
    let alg = DeformedAlgebra::new(
        Arc::new(basis),
        tensor,
        weight,
        TruncationPolicy::HardTruncate,
    )?;
    let started = Instant::now();
    let report = run_verify(&alg, &suites, seed, s, tol)?;
    let text_cell = |row: &crate::analysis::ReportRow, name: &str| -> String {
        match row.get(name) {
            Some(crate::analysis::ReportValue::Text(s)) => s.clone(),
            _ => String::new(),
        }
    };
    for row in &report.rows {
        let defect = row.get_f64("defect").unwrap_or(0.0);
        let pass = matches!(
            row.get("pass"),
            Some(crate::analysis::ReportValue::Bool(true))
        );
        println!(
            "[{}] {}/{} defect {}",
            if pass { "pass" } else { "FAIL" },
            text_cell(row, "suite"),
            text_cell(row, "check"),
            fmt_f64(defect),
        );
    }
    for note in &report.notes {
        println!("note: {note}");
    }
    if let Some(path) = opts.get("report") {
        std::fs::write(path, report_json(&report))?;
    }
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    Ok(if report.pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_experiment(args: &[String]) -> Result<i32> {
    let Some(kind) = args.first() else {
        return Err(Error::Config(
            "experiment needs a kind: continuity|metric|rieffel|sobolev".into(),
        ));
    };
    let rest = &args[1..];
    let started = Instant::now();
    let (report, opts) = match kind.as_str() {
        "continuity" => {
            let opts = Options::parse(rest, experiment::CONTINUITY_KEYS)?;
            (experiment::run_continuity(&opts)?, opts)
        }
        "metric" => {
            let opts = Options::parse(rest, experiment::METRIC_KEYS)?;
            (experiment::run_metric(&opts)?, opts)
        }
        "rieffel" => {
            let opts = Options::parse(rest, experiment::RIEFFEL_KEYS)?;
            (experiment::run_rieffel(&opts)?, opts)
        }
        "sobolev" => {
            let opts = Options::parse(rest, experiment::SOBOLEV_KEYS)?;
            (experiment::run_sobolev(&opts)?, opts)
        }
        other => {
            return Err(Error::Config(format!(
                "unknown experiment {other}; expected continuity|metric|rieffel|sobolev"
            )))
        }
    };
    emit_experiment(&report, &opts)?;
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    Ok(if report.pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn emit_experiment(report: &ExperimentReport, opts: &Options) -> Result<()> {
    println!(
        "{}: max_defect {} threshold {} -> {}",
        report.experiment,
        fmt_f64(report.max_defect),
        fmt_f64(report.threshold),
        if report.pass { "pass" } else { "FAIL" }
    );
    for note in &report.notes {
        println!("note: {note}");
    }
    if let Some(path) = opts.get("csv") {
        std::fs::write(path, report_csv(report))?;
    }
    if let Some(path) = opts.get("json") {
        std::fs::write(path, report_json(report))?;
    }
    Ok(())
}
