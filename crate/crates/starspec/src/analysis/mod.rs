//! Experiment harnesses for the analytic claims: continuity of deformation
//! paths, metric-perturbation derivatives on the flat torus family, the
//! bicharacter coefficient identity, and empirical Sobolev product bounds.

mod continuity;
mod metric;
mod rieffel;
mod sobolev_ratio;

pub use continuity::{continuity_sweep, WeightPath};
pub use metric::{
    metric_derivative_analytic, metric_derivative_fd, CoefficientFix, FlatMetricFamily,
};
pub use rieffel::rieffel_equivalence;
pub use sobolev_ratio::sobolev_ratio_experiment;

/// One table cell of an experiment report.
#[derive(Debug, Clone, PartialEq)]
pub enum ReportValue {
    Float(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl ReportValue {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            ReportValue::Float(x) => Some(*x),
            ReportValue::Int(i) => Some(*i as f64),
            _ => None,
        }
    }
}

/// Ordered row of named cells; the column order is the CSV order.
#[derive(Debug, Clone, Default)]
pub struct ReportRow {
    pub cells: Vec<(String, ReportValue)>,
}

impl ReportRow {
    pub fn new() -> ReportRow {
        ReportRow { cells: Vec::new() }
    }

    pub fn push(&mut self, name: &str, value: ReportValue) -> &mut Self {
        self.cells.push((name.to_string(), value));
        self
    }

    pub fn float(mut self, name: &str, value: f64) -> Self {
        self.push(name, ReportValue::Float(value));
        self
    }

    pub fn int(mut self, name: &str, value: i64) -> Self {
        self.push(name, ReportValue::Int(value));
        self
    }

    pub fn get(&self, name: &str) -> Option<&ReportValue> {
        self.cells.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn get_f64(&self, name: &str) -> Option<f64> {
        self.get(name).and_then(|v| v.as_f64())
    }
}

/// Result of one experiment run: parameter echo, measured rows, and the
/// pass/fail summary against the declared tolerance. Content is fully
/// deterministic given the configuration and seed; timing is reported on
/// stderr by the driver, never stored here.
#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub experiment: String,
    pub config_echo: Vec<(String, String)>,
    pub rows: Vec<ReportRow>,
    pub max_defect: f64,
    pub threshold: f64,
    pub pass: bool,
    /// Free-form notes surfaced to the operator (violation flags etc.).
    pub notes: Vec<String>,
}

impl ExperimentReport {
    pub fn new(experiment: &str) -> ExperimentReport {
        ExperimentReport {
            experiment: experiment.to_string(),
            config_echo: Vec::new(),
            rows: Vec::new(),
            max_defect: 0.0,
            threshold: 0.0,
            pass: true,
            notes: Vec::new(),
        }
    }

    pub fn echo(&mut self, key: &str, value: impl std::fmt::Display) {
        self.config_echo.push((key.to_string(), value.to_string()));
    }
}
