//! Flag and config-file handling. A config file is a flat JSON object over
//! the same keys as the flags; unknown keys are rejected before any
//! computation, and explicit flags override file values.

use std::collections::BTreeMap;
use std::path::Path;

use crate::analysis::{FlatMetricFamily, WeightPath};
use crate::bases::{AnyBasis, SphereBasis, Su2Basis, TorusBasis};
use crate::error::{Error, Result};
use crate::weights::{SkewMatrix, Weight};

/// Ordered key-value view of one subcommand invocation.
#[derive(Debug, Clone, Default)]
pub struct Options {
    values: BTreeMap<String, String>,
}

impl Options {
    /// Parses `--key value` pairs; `--config FILE` merges a JSON object of
    /// defaults (flags win). `allowed` is the closed key set.
    pub fn parse(args: &[String], allowed: &[&str]) -> Result<Options> {
        let mut flags = BTreeMap::new();
        let mut iter = args.iter();
        while let Some(arg) = iter.next() {
            let key = arg
                .strip_prefix("--")
                .ok_or_else(|| Error::Config(format!("expected a --flag, got {arg}")))?;
            let value = iter
                .next()
                .ok_or_else(|| Error::Config(format!("flag --{key} needs a value")))?;
            if flags.insert(key.to_string(), value.clone()).is_some() {
                return Err(Error::Config(format!("flag --{key} given twice")));
            }
        }
        let mut values = BTreeMap::new();
        if let Some(path) = flags.get("config") {
            values = load_config_file(Path::new(path))?;
        }
        for (k, v) in flags {
            if k != "config" {
                values.insert(k, v);
            }
        }
        for key in values.keys() {
            if !allowed.contains(&key.as_str()) {
                return Err(Error::Config(format!("unknown key: {key}")));
            }
        }
        Ok(Options { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key)
            .ok_or_else(|| Error::Config(format!("missing required option --{key}")))
    }

    pub fn parse_f64(&self, key: &str, default: f64) -> Result<f64> {
        match self.get(key) {
            None => Ok(default),
            Some(s) => s
                .parse()
                .map_err(|_| Error::Config(format!("--{key}: not a number: {s}"))),
        }
    }

    pub fn parse_u64(&self, key: &str, default: u64) -> Result<u64> {
        match self.get(key) {
            None => Ok(default),
            Some(s) => s
                .parse()
                .map_err(|_| Error::Config(format!("--{key}: not an integer: {s}"))),
        }
    }

    pub fn parse_usize(&self, key: &str, default: usize) -> Result<usize> {
        match self.get(key) {
            None => Ok(default),
            Some(s) => s
                .parse()
                .map_err(|_| Error::Config(format!("--{key}: not an integer: {s}"))),
        }
    }

    /// Comma-separated floats; JSON-style brackets from config files are
    /// tolerated.
    pub fn float_list(&self, key: &str) -> Result<Vec<f64>> {
        let raw = self
            .require(key)?
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']');
        raw.split(',')
            .map(|p| {
                p.trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("--{key}: not a number: {p}")))
            })
            .collect()
    }

    /// Deterministic echo of every option for reports.
    pub fn echo(&self) -> Vec<(String, String)> {
        self.values
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }
}

fn load_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("config {} is not JSON: {e}", path.display())))?;
    let object = value
        .as_object()
        .ok_or_else(|| Error::Config("config file must hold a JSON object".into()))?;
    let mut out = BTreeMap::new();
    for (k, v) in object {
        let s = match v {
            serde_json::Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        out.insert(k.clone(), s);
    }
    Ok(out)
}

/// Builds the geometry from `--basis` plus its size options.
pub fn build_basis(opts: &Options) -> Result<AnyBasis> {
    match opts.require("basis")? {
        "torus" => {
            let dim = opts.parse_usize("dim", 0)?;
            if dim == 0 {
                return Err(Error::Config("torus basis needs --dim".into()));
            }
            let nmax: i32 = opts
                .require("nmax")?
                .parse()
                .map_err(|_| Error::Config("--nmax must be an integer".into()))?;
            let radii = match opts.get("radii") {
                Some(_) => opts.float_list("radii")?,
                None => vec![1.0; dim],
            };
            Ok(AnyBasis::Torus(TorusBasis::new(dim, nmax, radii)?))
        }
        "sphere" => {
            let lmax: u32 = opts
                .require("lmax")?
                .parse()
                .map_err(|_| Error::Config("--lmax must be a nonnegative integer".into()))?;
            Ok(AnyBasis::Sphere(SphereBasis::new(lmax)))
        }
        "su2" => {
            let lmax: f64 = opts
                .require("lmax")?
                .parse()
                .map_err(|_| Error::Config("--lmax must be a half-integer".into()))?;
            let two_lmax = (2.0 * lmax).round();
            if (2.0 * lmax - two_lmax).abs() > 1e-12 || two_lmax < 0.0 {
                return Err(Error::Config(format!(
                    "--lmax must be a nonnegative half-integer, got {lmax}"
                )));
            }
            Ok(AnyBasis::Su2(Su2Basis::new(two_lmax as u32)))
        }
        other => Err(Error::Config(format!(
            "unknown basis {other}; expected torus|sphere|su2"
        ))),
    }
}

fn parse_skew(text: &str) -> Result<SkewMatrix> {
    let entries: Vec<Vec<f64>> = serde_json::from_str(text)
        .map_err(|e| Error::Config(format!("J must be a JSON matrix: {e}")))?;
    SkewMatrix::new(entries).map_err(|e| Error::Config(e.to_string()))
}

/// Weight grammar: `one`, `eigenphase:c=<float>`,
/// `triphase:J=<json matrix>`, `bichar:J=<json matrix>`, `su2phase`,
/// with optional suffixes `~conj` and `~perturb:eps=<float>,seed=<int>`.
pub fn parse_weight(spec: &str) -> Result<Weight> {
    let mut parts = spec.split('~');
    let base = parts.next().unwrap_or_default();
    let mut w = parse_base_weight(base)?;
    for wrapper in parts {
        if wrapper == "conj" {
            w = Weight::inv(&w);
        } else if let Some(params) = wrapper.strip_prefix("perturb:") {
            let mut eps = None;
            let mut seed = None;
            for p in params.split(',') {
                match p.split_once('=') {
                    Some(("eps", v)) => {
                        eps = Some(v.parse().map_err(|_| {
                            Error::Config(format!("perturb eps is not a number: {v}"))
                        })?)
                    }
                    Some(("seed", v)) => {
                        seed = Some(v.parse().map_err(|_| {
                            Error::Config(format!("perturb seed is not an integer: {v}"))
                        })?)
                    }
                    _ => return Err(Error::Config(format!("bad perturb parameter: {p}"))),
                }
            }
            let eps = eps.ok_or_else(|| Error::Config("perturb needs eps=".into()))?;
            w = Weight::perturbed(w, eps, seed.unwrap_or(0));
        } else {
            return Err(Error::Config(format!("unknown weight wrapper: ~{wrapper}")));
        }
    }
    Ok(w)
}

fn parse_base_weight(spec: &str) -> Result<Weight> {
    match spec {
        "one" => return Ok(Weight::one()),
        "su2phase" => return Ok(Weight::su2_phase()),
        _ => {}
    }
    let (family, params) = spec
        .split_once(':')
        .ok_or_else(|| Error::Config(format!("unknown weight family: {spec}")))?;
    match family {
        "eigenphase" => {
            let c = params
                .strip_prefix("c=")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Config(format!("eigenphase needs c=<float>: {params}")))?;
            Ok(Weight::eigenvalue_phase(c))
        }
        "triphase" => {
            let j = params
                .strip_prefix("J=")
                .ok_or_else(|| Error::Config("triphase needs J=<matrix>".into()))?;
            Ok(Weight::torus_triphase(parse_skew(j)?))
        }
        "bichar" => {
            let j = params
                .strip_prefix("J=")
                .ok_or_else(|| Error::Config("bichar needs J=<matrix>".into()))?;
            Ok(Weight::bicharacter(parse_skew(j)?))
        }
        other => Err(Error::Config(format!("unknown weight family: {other}"))),
    }
}

/// Weight-path grammar for the continuity experiment: the same family names
/// with the parameter read as the t = 1 endpoint.
pub fn parse_weight_path(spec: &str) -> Result<WeightPath> {
    let (family, params) = spec
        .split_once(':')
        .ok_or_else(|| Error::Config(format!("unknown weight path: {spec}")))?;
    match family {
        "eigenphase" => {
            let c = params
                .strip_prefix("c=")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Config(format!("eigenphase needs c=<float>: {params}")))?;
            Ok(WeightPath::EigenvaluePhase { c })
        }
        "triphase" => {
            let j = params
                .strip_prefix("J=")
                .ok_or_else(|| Error::Config("triphase needs J=<matrix>".into()))?;
            Ok(WeightPath::TorusTriphase { j: parse_skew(j)? })
        }
        other => Err(Error::Config(format!("unknown weight path family: {other}"))),
    }
}

/// Metric-family grammar: `a=(<expr>,<expr>,...)` with each component a
/// linear form in t: `1`, `1+t`, `2-0.5*t`, ...
pub fn parse_metric_family(spec: &str) -> Result<FlatMetricFamily> {
    let inner = spec
        .trim()
        .strip_prefix("a=(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::Config(format!("expected a=(...), got {spec}")))?;
    let mut base = Vec::new();
    let mut rate = Vec::new();
    for comp in inner.split(',') {
        let (b, r) = parse_linear(comp.trim())?;
        base.push(b);
        rate.push(r);
    }
    FlatMetricFamily::new(base, rate).map_err(|e| Error::Config(e.to_string()))
}

/// Parses `B`, `B+t`, `B-t`, `B+R*t`, `B-R*t` into (B, R); exponents like
/// `1e-3` are handled by only splitting on signs not preceded by e/E.
fn parse_linear(expr: &str) -> Result<(f64, f64)> {
    let bad = || Error::Config(format!("cannot parse metric component: {expr}"));
    if !expr.contains('t') {
        return Ok((expr.parse().map_err(|_| bad())?, 0.0));
    }
    // find the top-level sign splitting base from the t-term
    let bytes = expr.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let c = bytes[i] as char;
        if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
            split = Some(i);
            break;
        }
    }
    let i = split.ok_or_else(bad)?;
    let base: f64 = expr[..i].trim().parse().map_err(|_| bad())?;
    let sign = if bytes[i] as char == '-' { -1.0 } else { 1.0 };
    let term = expr[i + 1..].trim();
    let rate: f64 = if term == "t" {
        1.0
    } else if let Some(coef) = term.strip_suffix("*t") {
        coef.trim().parse().map_err(|_| bad())?
    } else {
        return Err(bad());
    };
    Ok((base, sign * rate))
}
