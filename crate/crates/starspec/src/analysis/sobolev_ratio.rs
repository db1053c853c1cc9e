//! Empirical Sobolev product bound: the ratio
//! `||f * g||_{H^s} / (||f||_{H^s} ||g||_{H^s})` sampled over seeded
//! vectors, reported together with the log-Lipschitz estimate of the weight
//! for context. The max must stabilize (not grow) as the sample count
//! doubles.

use crate::error::Result;
use crate::spectral::{hs_norm, SobolevParams};
use crate::star::DeformedAlgebra;
use crate::weights::estimate_log_lipschitz;

use super::{ExperimentReport, ReportRow};

pub fn sobolev_ratio_experiment(
    algebra: &DeformedAlgebra,
    s: SobolevParams,
    sample_count: usize,
    seed: u64,
    bandwidth: u32,
) -> Result<ExperimentReport> {
    let mut report = ExperimentReport::new("sobolev");
    report.echo("s", s.s);
    report.echo("samples", sample_count);
    report.echo("seed", seed);
    report.echo("weight", algebra.weight().describe());
    let n = algebra.basis().manifold_dim();
    if s.s <= n as f64 / 2.0 {
        report
            .notes
            .push(format!("s = {} is not above n/2 = {}", s.s, n as f64 / 2.0));
    }

    let mut max_ratio = 0.0f64;
    let mut max_at_half = 0.0f64;
    for k in 0..sample_count {
        let f = algebra.random_band_limited(seed + 2 * k as u64, 1.0, bandwidth)?;
        let g = algebra.random_band_limited(seed + 2 * k as u64 + 1, 1.0, bandwidth)?;
        let nf = hs_norm(&f, s);
        let ng = hs_norm(&g, s);
        if nf == 0.0 || ng == 0.0 {
            continue;
        }
        let ratio = hs_norm(&algebra.star(&f, &g)?, s) / (nf * ng);
        max_ratio = max_ratio.max(ratio);
        if k < sample_count / 2 {
            max_at_half = max_at_half.max(ratio);
        }
        report.rows.push(
            ReportRow::new()
                .int("sample", k as i64)
                .float("ratio", ratio),
        );
    }
    let lipschitz = estimate_log_lipschitz(algebra.weight(), algebra.tensor(), 2000)?;
    report.echo("log_lipschitz_estimate", format!("{lipschitz:e}"));
    let growth = if max_at_half > 0.0 {
        max_ratio / max_at_half
    } else {
        1.0
    };
    report.echo("max_ratio", format!("{max_ratio:e}"));
    report.echo("max_ratio_first_half", format!("{max_at_half:e}"));
    report.max_defect = max_ratio;
    // stability: doubling the sample count must not move the max by more
    // than 10%
    report.threshold = 1.1;
    report.pass = growth <= 1.1;
    if !report.pass {
        report
            .notes
            .push(format!("empirical max grew by {growth:.3}x on the second half"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{AnyBasis, TorusBasis};
    use crate::star::TruncationPolicy;
    use crate::weights::{SkewMatrix, Weight};
    use num_complex::Complex64;
    use std::sync::Arc;

    #[test]
    fn constant_mode_ratio_is_volume_normalized() {
        let basis = AnyBasis::Torus(TorusBasis::unit(1, 3).unwrap());
        let alg =
            DeformedAlgebra::build(basis, Weight::one(), TruncationPolicy::HardTruncate).unwrap();
        let t = match alg.basis() {
            AnyBasis::Torus(t) => t.clone(),
            _ => unreachable!(),
        };
        let sp = alg.basis().spectrum();
        let one = crate::spectral::CoeffVec::single(
            Arc::clone(sp),
            t.lookup_mode(&[0]).unwrap(),
            Complex64::ONE,
        );
        let s = SobolevParams::new(1.0);
        let ratio = hs_norm(&alg.star(&one, &one).unwrap(), s)
            / (hs_norm(&one, s) * hs_norm(&one, s));
        // unit volume: the constant mode is the unit, ratio exactly 1
        assert!((ratio - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ratio_is_stable_and_phase_independent_for_single_modes() {
        let basis = AnyBasis::Torus(TorusBasis::unit(1, 8).unwrap());
        let alg =
            DeformedAlgebra::build(basis, Weight::one(), TruncationPolicy::HardTruncate).unwrap();
        let s = SobolevParams::new(1.0);
        let report = sobolev_ratio_experiment(&alg, s, 60, 7, 4).unwrap();
        assert!(report.pass, "{:?}", report.notes);
        // when each output channel receives a single mode pair, a
        // unimodular phase cannot change any H^0 magnitude
        let basis2 = AnyBasis::Torus(TorusBasis::unit(2, 4).unwrap());
        let flat =
            DeformedAlgebra::build(basis2, Weight::one(), TruncationPolicy::HardTruncate).unwrap();
        let tw = flat
            .with_weight(Weight::torus_triphase(SkewMatrix::theta_2d(0.37)))
            .unwrap();
        let t = match flat.basis() {
            AnyBasis::Torus(t) => t.clone(),
            _ => unreachable!(),
        };
        let sp = flat.basis().spectrum();
        let s0 = SobolevParams::new(0.0);
        for (na, nb) in [([1, 0], [0, 2]), ([2, -1], [1, 1]), ([0, 1], [1, 0])] {
            let f = crate::spectral::CoeffVec::single(
                Arc::clone(sp),
                t.lookup_mode(&na).unwrap(),
                Complex64::new(0.8, -0.3),
            );
            let g = crate::spectral::CoeffVec::single(
                Arc::clone(sp),
                t.lookup_mode(&nb).unwrap(),
                Complex64::new(-0.2, 1.1),
            );
            let r1 = hs_norm(&flat.star(&f, &g).unwrap(), s0);
            let r2 = hs_norm(&tw.star(&f, &g).unwrap(), s0);
            assert!((r1 - r2).abs() <= 1e-15 * (1.0 + r1));
        }
    }
}
