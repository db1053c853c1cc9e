//! Deformation paths t -> omega_t with omega_0 = 1, and the continuity
//! sweep measuring how fast the deformed product approaches the pointwise
//! product as t -> 0.

use crate::error::{Error, Result};
use crate::spectral::{hs_norm, CoeffVec, SobolevParams};
use crate::star::DeformedAlgebra;
use crate::weights::{SkewMatrix, Weight};

use super::{ExperimentReport, ReportRow};

/// A C^1 family of weights through the identity: `omega_0 = 1`.
#[derive(Debug, Clone)]
pub enum WeightPath {
    /// `omega_t = exp(i t c (lambda_a + lambda_b - lambda_g))`.
    EigenvaluePhase { c: f64 },
    /// `omega_t` is the torus three-term phase at `t J`.
    TorusTriphase { j: SkewMatrix },
}

impl WeightPath {
    pub fn at(&self, t: f64) -> Weight {
        match self {
            WeightPath::EigenvaluePhase { c } => Weight::eigenvalue_phase(t * c),
            WeightPath::TorusTriphase { j } => Weight::torus_triphase(j.scale(t)),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            WeightPath::EigenvaluePhase { c } => format!("eigenphase-path:c={c}"),
            WeightPath::TorusTriphase { j } => format!("triphase-path:J={j:?}"),
        }
    }
}

/// Sweeps `defect(t) = || f *_t g - f *_0 g ||_{H^s}` over the grid and
/// checks the first-order decay expected of a C^1 path: a monotone tail,
/// defects below the fitted linear slope, and product norms uniformly close
/// to the undeformed one.
pub fn continuity_sweep(
    template: &DeformedAlgebra,
    path: &WeightPath,
    f: &CoeffVec,
    g: &CoeffVec,
    s: SobolevParams,
    t_grid: &[f64],
) -> Result<ExperimentReport> {
    if t_grid.iter().any(|&t| !(0.0..=1.0).contains(&t)) {
        return Err(Error::InvalidArgument(
            "continuity grid values must lie in [0, 1]".into(),
        ));
    }
    let mut report = ExperimentReport::new("continuity");
    report.echo("path", path.describe());
    report.echo("s", s.s);
    let n = template.basis().manifold_dim();
    if s.s <= n as f64 / 2.0 {
        report
            .notes
            .push(format!("s = {} is not above n/2 = {}", s.s, n as f64 / 2.0));
    }

    let flat = template.with_weight(Weight::one())?;
    let base = flat.star(f, g)?;
    let base_norm = hs_norm(&base, s);

    let mut defects = Vec::new();
    let mut sup_norm_rel: f64 = 0.0;
    for &t in t_grid {
        let alg = template.with_weight(path.at(t))?;
        let prod = alg.star(f, g)?;
        let defect = hs_norm(&prod.sub(&base), s);
        let norm = hs_norm(&prod, s);
        if base_norm > 0.0 {
            sup_norm_rel = sup_norm_rel.max((norm - base_norm).abs() / base_norm);
        }
        defects.push((t, defect));
        report.rows.push(
            ReportRow::new()
                .float("t", t)
                .float("defect", defect)
                .float("product_norm", norm),
        );
    }

    // least-squares slope through the origin
    let (mut num, mut den) = (0.0, 0.0);
    for &(t, d) in &defects {
        num += t * d;
        den += t * t;
    }
    let slope = if den > 0.0 { num / den } else { 0.0 };

    // monotone decay along the decreasing-t tail
    let mut sorted = defects.clone();
    sorted.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let monotone = sorted
        .windows(2)
        .all(|w| w[0].0 == w[1].0 || w[1].1 <= w[0].1 + 1e-15);
    let linear = defects
        .iter()
        .all(|&(t, d)| d <= slope * t * 1.05 + 1e-12);
    let norms_stable = sup_norm_rel <= 0.05;

    report.echo("fitted_slope", format!("{slope:e}"));
    report.echo("sup_norm_rel_change", format!("{sup_norm_rel:e}"));
    report.max_defect = defects.iter().map(|&(_, d)| d).fold(0.0, f64::max);
    report.threshold = slope * t_grid.iter().cloned().fold(0.0, f64::max) * 1.05;
    report.pass = monotone && linear && norms_stable;
    if !monotone {
        report.notes.push("defect not monotone on the tail".into());
    }
    if !norms_stable {
        report
            .notes
            .push("product norms moved more than 5% along the path".into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{AnyBasis, SphereBasis, TorusBasis};
    use crate::star::TruncationPolicy;

    #[test]
    fn zero_time_gives_zero_defect() {
        let alg = DeformedAlgebra::build(
            AnyBasis::Torus(TorusBasis::unit(2, 3).unwrap()),
            Weight::one(),
            TruncationPolicy::HardTruncate,
        )
        .unwrap();
        let f = alg.random_band_limited(1, 1.0, 1).unwrap();
        let g = alg.random_band_limited(2, 1.0, 1).unwrap();
        let path = WeightPath::TorusTriphase {
            j: SkewMatrix::theta_2d(0.1),
        };
        let report =
            continuity_sweep(&alg, &path, &f, &g, SobolevParams::new(2.0), &[0.0]).unwrap();
        assert_eq!(report.rows[0].get_f64("defect").unwrap(), 0.0);
        assert!(continuity_sweep(&alg, &path, &f, &g, SobolevParams::new(2.0), &[1.5]).is_err());
    }

    #[test]
    fn halving_grid_decays_linearly() {
        let alg = DeformedAlgebra::build(
            AnyBasis::Sphere(SphereBasis::new(4)),
            Weight::one(),
            TruncationPolicy::HardTruncate,
        )
        .unwrap();
        let f = alg.random_band_limited(3, 1.0, 2).unwrap();
        let g = alg.random_band_limited(4, 1.0, 2).unwrap();
        let path = WeightPath::EigenvaluePhase { c: 0.08 };
        let grid = [0.4, 0.2, 0.1, 0.05, 0.025];
        let report =
            continuity_sweep(&alg, &path, &f, &g, SobolevParams::new(2.0), &grid).unwrap();
        assert!(report.pass, "notes: {:?}", report.notes);
        let d: Vec<f64> = report
            .rows
            .iter()
            .map(|r| r.get_f64("defect").unwrap())
            .collect();
        for w in d.windows(2) {
            let ratio = w[0] / w[1];
            assert!(
                (1.7..=2.3).contains(&ratio),
                "halving ratio {ratio} outside the linear-order band"
            );
        }
    }
}
