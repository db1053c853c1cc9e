//! Verification suites: each row measures one defect against its threshold
//! and the run passes only if every selected row does.

use num_complex::Complex64;

use crate::analysis::{ExperimentReport, ReportRow, ReportValue};
use crate::bases::IsometryAction;
use crate::error::{Error, Result};
use crate::spectral::{hs_norm, SobolevParams};
use crate::star::DeformedAlgebra;
use crate::weights::{
    check_admissible, check_gauge_cocycle, check_square_cocycle, check_summed_cocycle,
    GaugeCharacter, GaugePhase,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Cocycle,
    Assoc,
    Involution,
    Equivariance,
    Gauge,
}

impl Suite {
    pub fn parse_list(spec: &str) -> Result<Vec<Suite>> {
        if spec == "all" {
            return Ok(vec![
                Suite::Cocycle,
                Suite::Assoc,
                Suite::Involution,
                Suite::Equivariance,
                Suite::Gauge,
            ]);
        }
        spec.split(',')
            .map(|s| match s.trim() {
                "cocycle" => Ok(Suite::Cocycle),
                "assoc" => Ok(Suite::Assoc),
                "involution" => Ok(Suite::Involution),
                "equivariance" => Ok(Suite::Equivariance),
                "gauge" => Ok(Suite::Gauge),
                other => Err(Error::Config(format!(
                    "unknown suite {other}; expected cocycle|assoc|involution|equivariance|gauge|all"
                ))),
            })
            .collect()
    }

    fn name(self) -> &'static str {
        match self {
            Suite::Cocycle => "cocycle",
            Suite::Assoc => "assoc",
            Suite::Involution => "involution",
            Suite::Equivariance => "equivariance",
            Suite::Gauge => "gauge",
        }
    }
}

/// Pass/fail thresholds. Genuine passes land at or below `pass`; genuine
/// violations at or above `fail`; the gap guards against quadrature noise
/// and anything inside it is reported as a failure with a note.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub pass: f64,
    pub fail: f64,
    /// Homomorphism-defect allowance for pullbacks (blockwise rotations
    /// accumulate more roundoff than diagonal phases).
    pub hom: f64,
}

impl Default for Tolerances {
    fn default() -> Tolerances {
        Tolerances {
            pass: 1e-10,
            fail: 1e-6,
            hom: 1e-8,
        }
    }
}

fn push_check(
    report: &mut ExperimentReport,
    suite: Suite,
    check: &str,
    defect: f64,
    threshold: f64,
) {
    let pass = defect <= threshold;
    let mut row = ReportRow::new();
    row.push("suite", ReportValue::Text(suite.name().into()));
    row.push("check", ReportValue::Text(check.into()));
    row.push("defect", ReportValue::Float(defect));
    row.push("threshold", ReportValue::Float(threshold));
    row.push("pass", ReportValue::Bool(pass));
    report.rows.push(row);
    report.max_defect = report.max_defect.max(defect);
    if !pass {
        report.pass = false;
    }
}

/// Canonical isometries exercised by the equivariance suite.
fn canonical_isometries(alg: &DeformedAlgebra) -> Vec<(String, IsometryAction)> {
    match alg.basis() {
        crate::bases::AnyBasis::Torus(t) => {
            let d = t.dim();
            let v: Vec<f64> = (0..d).map(|i| 0.23 + 0.31 * i as f64).collect();
            let neg: Vec<Vec<i64>> = (0..d)
                .map(|i| (0..d).map(|j| if i == j { -1 } else { 0 }).collect())
                .collect();
            vec![
                ("translation".into(), IsometryAction::translation(v)),
                (
                    "negation".into(),
                    IsometryAction::TorusMap {
                        matrix: neg,
                        translation: vec![0.0; d],
                    },
                ),
            ]
        }
        crate::bases::AnyBasis::Sphere(_) => vec![
            ("z-rotation".into(), IsometryAction::z_rotation(0.8)),
            (
                "rotation-a".into(),
                IsometryAction::SphereRotation {
                    alpha: 0.7,
                    beta: 1.1,
                    gamma: -0.4,
                },
            ),
            (
                "rotation-b".into(),
                IsometryAction::SphereRotation {
                    alpha: -1.2,
                    beta: 0.5,
                    gamma: 2.0,
                },
            ),
        ],
        crate::bases::AnyBasis::Su2(_) => vec![(
            "torus-translation".into(),
            IsometryAction::Su2Translation {
                left: 0.9,
                right: 1.7,
            },
        )],
    }
}

fn canonical_characters(alg: &DeformedAlgebra) -> Vec<(String, GaugePhase)> {
    match alg.basis() {
        crate::bases::AnyBasis::Torus(t) => {
            let theta: Vec<f64> = (0..t.dim()).map(|i| 0.7 - 0.5 * i as f64).collect();
            vec![("lattice-linear".into(), GaugePhase::TorusLinear { theta })]
        }
        crate::bases::AnyBasis::Sphere(_) => vec![(
            "azimuthal".into(),
            GaugePhase::SphereAzimuthal { phi0: 0.9 },
        )],
        crate::bases::AnyBasis::Su2(_) => vec![(
            "diagonal".into(),
            GaugePhase::Su2Diagonal { a: 0.4, b: -1.0 },
        )],
    }
}

/// Runs the selected suites and assembles the report. The exit decision is
/// `report.pass`.
pub fn run_verify(
    alg: &DeformedAlgebra,
    suites: &[Suite],
    seed: u64,
    s: SobolevParams,
    tol: Tolerances,
) -> Result<ExperimentReport> {
    let mut report = ExperimentReport::new("verify");
    report.echo("weight", alg.weight().describe());
    report.echo("backend", alg.basis().id());
    report.echo("truncation", alg.basis().spectrum().truncation());
    report.echo("seed", seed);
    report.echo("s", s.s);

    let max_degree = alg.basis().max_degree();
    for &suite in suites {
        match suite {
            Suite::Cocycle => {
                let adm = check_admissible(alg.weight(), alg.tensor());
                push_check(&mut report, suite, "unimodularity", adm.unimodularity_defect, tol.pass);
                let sq = check_square_cocycle(alg.weight(), alg.tensor());
                push_check(
                    &mut report,
                    suite,
                    "square_cocycle",
                    sq.square_cocycle_defect,
                    tol.pass,
                );
                let summed = check_summed_cocycle(alg.weight(), alg.tensor());
                push_check(
                    &mut report,
                    suite,
                    "summed_cocycle",
                    summed.summed_cocycle_defect,
                    tol.pass,
                );
                report.echo(
                    "summed_cocycle_excluded_quadruples",
                    summed.quadruples_excluded,
                );
            }
            Suite::Assoc => {
                let bw = max_degree / 3;
                if bw == 0 {
                    return Err(Error::Config(
                        "associativity suite needs truncation degree >= 3".into(),
                    ));
                }
                let mut worst = 0.0f64;
                for k in 0..20u64 {
                    let f = alg.random_band_limited(seed + 3 * k, 1.0, bw)?;
                    let g = alg.random_band_limited(seed + 3 * k + 1, 1.0, bw)?;
                    let h = alg.random_band_limited(seed + 3 * k + 2, 1.0, bw)?;
                    worst = worst.max(alg.associativity_defect(&f, &g, &h, s)?);
                }
                push_check(&mut report, suite, "associativity", worst, tol.pass);
            }
            Suite::Involution => {
                let adm = check_admissible(alg.weight(), alg.tensor());
                push_check(
                    &mut report,
                    suite,
                    "hermitian_symmetry",
                    adm.hermitian_defect,
                    tol.pass,
                );
                if !alg.weight().claims_hermitian() {
                    report.notes.push(
                        "weight does not claim Hermitian symmetry; *-compatibility not guaranteed"
                            .into(),
                    );
                }
                let bw = (max_degree / 2).max(1);
                let mut worst = 0.0f64;
                for k in 0..10u64 {
                    let f = alg.random_band_limited(seed + 100 + 2 * k, 1.0, bw)?;
                    let g = alg.random_band_limited(seed + 101 + 2 * k, 1.0, bw)?;
                    let (defect, _) = alg.involution_defect(&f, &g, s)?;
                    worst = worst.max(defect);
                }
                push_check(&mut report, suite, "involution", worst, tol.pass);
            }
            Suite::Equivariance => {
                let bw = (max_degree / 2).max(1);
                let f = alg.random_band_limited(seed + 200, 1.0, bw)?;
                let g = alg.random_band_limited(seed + 201, 1.0, bw)?;
                for (name, h) in canonical_isometries(alg) {
                    let criterion = alg.equivariance_defect(&h)?;
                    push_check(
                        &mut report,
                        suite,
                        &format!("criterion[{name}]"),
                        criterion,
                        tol.pass,
                    );
                    if criterion <= tol.pass {
                        let hom = alg.pullback_homomorphism_defect(&h, &f, &g, s)?;
                        push_check(
                            &mut report,
                            suite,
                            &format!("pullback_homomorphism[{name}]"),
                            hom,
                            tol.hom,
                        );
                    }
                }
            }
            Suite::Gauge => {
                let bw = (max_degree / 2).max(1);
                let f = alg.random_band_limited(seed + 300, 1.0, bw)?;
                let g = alg.random_band_limited(seed + 301, 1.0, bw)?;
                for (name, phase) in canonical_characters(alg) {
                    let chi = GaugeCharacter::new(phase.clone());
                    let cocycle = check_gauge_cocycle(&chi, alg.tensor());
                    push_check(
                        &mut report,
                        suite,
                        &format!("one_cocycle[{name}]"),
                        cocycle,
                        tol.pass,
                    );
                    if cocycle > tol.pass {
                        continue;
                    }
                    let lhs = alg.gauge_automorphism(&chi, &alg.star(&f, &g)?)?;
                    let rhs = alg.star(
                        &alg.gauge_automorphism(&chi, &f)?,
                        &alg.gauge_automorphism(&chi, &g)?,
                    )?;
                    push_check(
                        &mut report,
                        suite,
                        &format!("homomorphism[{name}]"),
                        hs_norm(&lhs.sub(&rhs), s),
                        tol.pass,
                    );
                    // first-order convergence of the generator differences
                    let gen = alg.gauge_generator(&phase, &f);
                    let fd_err = |t: f64| -> Result<f64> {
                        let chi_t = GaugeCharacter::at_time(phase.clone(), t);
                        let moved = alg.gauge_automorphism(&chi_t, &f)?;
                        let diff = moved.sub(&f).scale(Complex64::new(1.0 / t, 0.0));
                        Ok(hs_norm(&diff.sub(&gen), s))
                    };
                    let ratio = fd_err(1e-2)? / fd_err(1e-3)?;
                    let slope_defect = (ratio - 10.0).abs() / 10.0;
                    push_check(
                        &mut report,
                        suite,
                        &format!("generator_fd_slope[{name}]"),
                        slope_defect,
                        0.2,
                    );
                }
            }
        }
    }
    // flag results inside the indeterminate gap
    for row in &report.rows {
        let defect = row.get_f64("defect").unwrap_or(0.0);
        let threshold = row.get_f64("threshold").unwrap_or(0.0);
        if defect > threshold && defect < tol.fail && threshold == tol.pass {
            report.notes.push(format!(
                "defect {defect:e} lies between the pass and fail thresholds"
            ));
        }
    }
    report.threshold = tol.pass;
    Ok(report)
}
