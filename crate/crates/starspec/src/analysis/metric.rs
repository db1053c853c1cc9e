//! Metric-perturbation derivative on the flat torus family.
//!
//! The radii path `a_j(t) = base_j + rate_j t` keeps the Fourier
//! eigenfunctions fixed while the eigenvalues and the fusion normalization
//! move:
//!
//! * `lambda_n(t) = 4 pi^2 sum_j n_j^2 / a_j(t)`, so
//!   `lambda_n-dot = -4 pi^2 sum_j n_j^2 rate_j / base_j^2`;
//! * `C_t = vol_t^(-1/2) = prod a_j(t)^(-1/4)`, so
//!   `C-dot / C = -(1/4) sum_j rate_j / base_j`.
//!
//! With no eigenfunction mixing the t-derivative of `f *_t g` splits into
//! the weight-variation term (the phase derivative through the moving
//! eigenvalues) and the volume term; both are in closed form here and serve
//! as the oracle for the central finite differences.

use std::sync::Arc;

use num_complex::Complex64;

use crate::bases::{AnyBasis, TorusBasis};
use crate::error::{Error, Result};
use crate::spectral::{hs_norm, CoeffVec, SobolevParams, SpectralLabel, Spectrum};
use crate::star::{DeformedAlgebra, TruncationPolicy};
use crate::weights::{Weight, WeightFamily};

use super::{ExperimentReport, ReportRow};

/// Smooth positive radii path `a_j(t) = base_j + rate_j t`.
#[derive(Debug, Clone)]
pub struct FlatMetricFamily {
    base: Vec<f64>,
    rate: Vec<f64>,
}

impl FlatMetricFamily {
    pub fn new(base: Vec<f64>, rate: Vec<f64>) -> Result<FlatMetricFamily> {
        if base.is_empty() || base.len() != rate.len() {
            return Err(Error::InvalidArgument(
                "metric family needs matching nonempty base and rate vectors".into(),
            ));
        }
        if base.iter().any(|&a| !(a > 0.0)) {
            return Err(Error::InvalidArgument("base radii must be positive".into()));
        }
        Ok(FlatMetricFamily { base, rate })
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn base(&self) -> &[f64] {
        &self.base
    }

    pub fn rate(&self) -> &[f64] {
        &self.rate
    }

    pub fn radii_at(&self, t: f64) -> Result<Vec<f64>> {
        let radii: Vec<f64> = self
            .base
            .iter()
            .zip(&self.rate)
            .map(|(&b, &r)| b + r * t)
            .collect();
        if radii.iter().any(|&a| !(a > 0.0)) {
            return Err(Error::InvalidArgument(format!(
                "radii not positive at t = {t}"
            )));
        }
        Ok(radii)
    }

    pub fn volume_at(&self, t: f64) -> Result<f64> {
        Ok(self.radii_at(t)?.iter().map(|a| a.sqrt()).product())
    }

    /// `sum_j rate_j / base_j`; drives both the volume and eigenvalue terms.
    pub fn log_volume_rate(&self) -> f64 {
        self.base
            .iter()
            .zip(&self.rate)
            .map(|(&b, &r)| r / b)
            .sum()
    }

    /// `lambda_n-dot at t = 0` for a lattice mode.
    pub fn eigenvalue_rate(&self, n: &[i32]) -> f64 {
        let four_pi_sq = 4.0 * std::f64::consts::PI * std::f64::consts::PI;
        -four_pi_sq
            * n.iter()
                .zip(self.base.iter().zip(&self.rate))
                .map(|(&nj, (&bj, &rj))| (nj as f64) * (nj as f64) * rj / (bj * bj))
                .sum::<f64>()
    }
}

/// Which datum is held fixed along the path: the spectral coefficients with
/// respect to the t = 0 basis, or the represented function (whose
/// coefficients then pick up the volume rescaling of the basis).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientFix {
    Coefficients,
    Function,
}

impl CoefficientFix {
    /// Total volume-term coefficient multiplying `star_0(f, g)`:
    /// `C-dot/C = -(1/4) L` alone for fixed coefficients, plus `(1/2) L`
    /// from the two rescaled inputs when the functions are held fixed
    /// (`L = sum rate/base`).
    fn volume_coefficient(self, family: &FlatMetricFamily) -> f64 {
        let l = family.log_volume_rate();
        match self {
            CoefficientFix::Coefficients => -0.25 * l,
            CoefficientFix::Function => 0.25 * l,
        }
    }
}

fn torus_algebra_at(
    family: &FlatMetricFamily,
    nmax: i32,
    weight: &Weight,
    t: f64,
) -> Result<DeformedAlgebra> {
    let basis = TorusBasis::new(family.dim(), nmax, family.radii_at(t)?)?;
    DeformedAlgebra::build(AnyBasis::Torus(basis), weight.clone(), TruncationPolicy::HardTruncate)
}

/// Re-key a coefficient vector onto another spectrum over the same label
/// set (the flat family never changes the labels).
fn rekey(v: &CoeffVec, sp: &Arc<Spectrum>) -> CoeffVec {
    CoeffVec::from_entries(Arc::clone(sp), v.iter())
}

/// Phase derivative of the weight through the moving eigenvalues:
/// `eta(a,b,g) = d/dt omega_t(a,b,g) at t = 0`. Only the eigenvalue-phase
/// family varies; label-based families are t-independent.
fn weight_lambda_derivative(
    w: &Weight,
    family: &FlatMetricFamily,
    sp: &Spectrum,
    a: usize,
    b: usize,
    g: usize,
) -> Complex64 {
    let lambda_rate = |id: usize| -> f64 {
        match sp.label(id) {
            SpectralLabel::Torus(n) => family.eigenvalue_rate(n),
            _ => unreachable!("flat metric family lives on the torus"),
        }
    };
    match w.family() {
        WeightFamily::One
        | WeightFamily::TorusTriphase { .. }
        | WeightFamily::Bicharacter2Face { .. }
        | WeightFamily::Su2Phase => Complex64::ZERO,
        WeightFamily::EigenvaluePhase { c } => {
            let rate = c * (lambda_rate(a) + lambda_rate(b) - lambda_rate(g));
            Complex64::new(0.0, rate) * w.eval(sp, a, b, g)
        }
        WeightFamily::Product(w1, w2) => {
            weight_lambda_derivative(w1, family, sp, a, b, g) * w2.eval(sp, a, b, g)
                + w1.eval(sp, a, b, g) * weight_lambda_derivative(w2, family, sp, a, b, g)
        }
        WeightFamily::Conjugate(w1) => {
            weight_lambda_derivative(w1, family, sp, a, b, g).conj()
        }
        WeightFamily::Perturbed { base, .. } => {
            // the injected noise is label-based, hence t-independent
            let noise = w.eval(sp, a, b, g) / base.eval(sp, a, b, g);
            weight_lambda_derivative(base, family, sp, a, b, g) * noise
        }
    }
}

/// Closed-form t-derivative of `f *_t g` at t = 0 for the flat family:
/// the eta-term plus the volume term (signed per the coefficient fix).
pub fn metric_derivative_analytic(
    family: &FlatMetricFamily,
    weight: &Weight,
    nmax: i32,
    f: &CoeffVec,
    g: &CoeffVec,
    fix: CoefficientFix,
) -> Result<CoeffVec> {
    metric_derivative_analytic_terms(family, weight, nmax, f, g, fix, true, true)
}

/// Same with the two terms individually switchable, for isolating them in
/// experiments.
#[allow(clippy::too_many_arguments)]
pub fn metric_derivative_analytic_terms(
    family: &FlatMetricFamily,
    weight: &Weight,
    nmax: i32,
    f: &CoeffVec,
    g: &CoeffVec,
    fix: CoefficientFix,
    include_weight_term: bool,
    include_volume_term: bool,
) -> Result<CoeffVec> {
    let alg0 = torus_algebra_at(family, nmax, weight, 0.0)?;
    let sp = Arc::clone(alg0.basis().spectrum());
    let f0 = rekey(f, &sp);
    let g0 = rekey(g, &sp);
    let tensor = alg0.tensor();

    let mut out = CoeffVec::zero(Arc::clone(&sp));
    if include_weight_term {
        for (a, za) in f0.iter() {
            for (b, zb) in g0.iter() {
                for &(e, c) in tensor.channels(a, b) {
                    let eta = weight_lambda_derivative(weight, family, &sp, a, b, e);
                    if eta != Complex64::ZERO {
                        let prev = out.get(e);
                        out.set(e, prev + eta * za * zb * c);
                    }
                }
            }
        }
    }
    if include_volume_term {
        let vol_coef = fix.volume_coefficient(family);
        if vol_coef != 0.0 {
            let base = alg0.star(&f0, &g0)?;
            out = out.add(&base.scale(Complex64::new(vol_coef, 0.0)));
        }
    }
    Ok(out)
}

/// Central finite differences of `t -> f *_t g` (tensor and eigenvalues
/// rebuilt at each t) against the analytic derivative. Rows report the
/// relative error per step and the Richardson ratio between consecutive
/// steps; second-order decay means ratios near 4 on a halving grid.
pub fn metric_derivative_fd(
    family: &FlatMetricFamily,
    weight: &Weight,
    nmax: i32,
    f: &CoeffVec,
    g: &CoeffVec,
    fix: CoefficientFix,
    steps: &[f64],
) -> Result<ExperimentReport> {
    if steps.is_empty() || steps.iter().any(|&h| !(h > 0.0)) {
        return Err(Error::InvalidArgument("steps must be positive".into()));
    }
    let mut report = ExperimentReport::new("metric");
    report.echo("weight", weight.describe());
    report.echo(
        "family",
        format!("base={:?},rate={:?}", family.base, family.rate),
    );
    report.echo("fix", format!("{fix:?}"));

    let analytic = metric_derivative_analytic(family, weight, nmax, f, g, fix)?;
    let alg0 = torus_algebra_at(family, nmax, weight, 0.0)?;
    let sp0 = Arc::clone(alg0.basis().spectrum());
    let vol0 = family.volume_at(0.0)?;
    let s0 = SobolevParams::new(0.0);
    let analytic_norm = hs_norm(&analytic, s0);

    let star_at = |t: f64| -> Result<CoeffVec> {
        let alg = torus_algebra_at(family, nmax, weight, t)?;
        let sp_t = Arc::clone(alg.basis().spectrum());
        let scale = match fix {
            CoefficientFix::Coefficients => 1.0,
            CoefficientFix::Function => (family.volume_at(t)? / vol0).sqrt(),
        };
        let ft = rekey(f, &sp_t).scale(Complex64::new(scale, 0.0));
        let gt = rekey(g, &sp_t).scale(Complex64::new(scale, 0.0));
        Ok(rekey(&alg.star(&ft, &gt)?, &sp0))
    };

    let mut errors = Vec::new();
    for &h in steps {
        let plus = star_at(h)?;
        let minus = star_at(-h)?;
        let fd = plus.sub(&minus).scale(Complex64::new(0.5 / h, 0.0));
        let err_abs = hs_norm(&fd.sub(&analytic), s0);
        let err = if analytic_norm > 0.0 {
            err_abs / analytic_norm
        } else {
            err_abs
        };
        errors.push((h, err));
    }
    for (i, &(h, err)) in errors.iter().enumerate() {
        let mut row = ReportRow::new().float("step", h).float("relative_error", err);
        if i + 1 < errors.len() {
            let (h2, err2) = errors[i + 1];
            if err2 > 0.0 {
                let expected = (h / h2).powi(2);
                row.push("richardson_ratio", super::ReportValue::Float(err / err2));
                row.push(
                    "expected_ratio",
                    super::ReportValue::Float(expected),
                );
            }
        }
        report.rows.push(row);
    }
    // cancellation shows up as non-monotone error on a decreasing grid
    let mut monotone = true;
    for w in errors.windows(2) {
        if w[0].0 > w[1].0 && w[1].1 > w[0].1 {
            monotone = false;
        }
    }
    if !monotone {
        report
            .notes
            .push("error not monotone in step: floating-point cancellation dominates".into());
    }
    report.max_defect = errors.iter().map(|&(_, e)| e).fold(0.0, f64::max);
    report.threshold = 1e-6;
    report.pass = errors.last().map(|&(_, e)| e <= 1e-6).unwrap_or(false);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::random_coeff_vec_filtered;

    fn band_limited(basis: &TorusBasis, seed: u64, bw: u32) -> CoeffVec {
        random_coeff_vec_filtered(basis.spectrum(), seed, 1.0, |id| {
            basis.mode_degree(id) <= bw
        })
        .unwrap()
    }

    #[test]
    fn constant_family_has_zero_derivative() {
        let fam = FlatMetricFamily::new(vec![1.0, 2.0], vec![0.0, 0.0]).unwrap();
        let basis = TorusBasis::new(2, 3, vec![1.0, 2.0]).unwrap();
        let f = band_limited(&basis, 1, 1);
        let g = band_limited(&basis, 2, 1);
        let d = metric_derivative_analytic(
            &fam,
            &Weight::one(),
            3,
            &f,
            &g,
            CoefficientFix::Coefficients,
        )
        .unwrap();
        assert_eq!(d.support_len(), 0);
    }

    #[test]
    fn pure_volume_term_in_one_dimension() {
        // a(t) = 1 + t, constant weight: derivative is -(1/4) star_0(f, g)
        let fam = FlatMetricFamily::new(vec![1.0], vec![1.0]).unwrap();
        let basis = TorusBasis::unit(1, 4).unwrap();
        let f = band_limited(&basis, 3, 2);
        let g = band_limited(&basis, 4, 2);
        let d = metric_derivative_analytic(
            &fam,
            &Weight::one(),
            4,
            &f,
            &g,
            CoefficientFix::Coefficients,
        )
        .unwrap();
        let alg = DeformedAlgebra::build(
            AnyBasis::Torus(basis),
            Weight::one(),
            TruncationPolicy::HardTruncate,
        )
        .unwrap();
        let sp = Arc::clone(alg.basis().spectrum());
        let expect = rekey(&alg.star(&rekey(&f, &sp), &rekey(&g, &sp)).unwrap(), &sp)
            .scale(Complex64::new(-0.25, 0.0));
        assert!(rekey(&d, &sp).max_abs_diff(&expect) < 1e-14);
    }

    #[test]
    fn fd_converges_to_analytic_at_second_order() {
        let fam = FlatMetricFamily::new(vec![1.0, 1.0], vec![0.0, 1.0]).unwrap();
        let basis = TorusBasis::unit(2, 3).unwrap();
        let f = band_limited(&basis, 7, 1);
        let g = band_limited(&basis, 8, 1);
        let w = Weight::eigenvalue_phase(0.05);
        let report = metric_derivative_fd(
            &fam,
            &w,
            3,
            &f,
            &g,
            CoefficientFix::Coefficients,
            &[1e-2, 5e-3, 1e-4],
        )
        .unwrap();
        assert!(report.pass, "rows: {:?}", report.rows);
        let r = report.rows[0].get_f64("richardson_ratio").unwrap();
        assert!((3.5..=4.5).contains(&r), "richardson ratio {r}");
        let last = report.rows.last().unwrap().get_f64("relative_error").unwrap();
        assert!(last <= 1e-6, "relative error {last}");
    }

    #[test]
    fn volume_preserving_family_isolates_the_weight_term() {
        // a(t) = (1 + t, 1 - t): the volume rate vanishes at t = 0
        let fam = FlatMetricFamily::new(vec![1.0, 1.0], vec![1.0, -1.0]).unwrap();
        assert_eq!(fam.log_volume_rate(), 0.0);
        let basis = TorusBasis::unit(2, 3).unwrap();
        let f = band_limited(&basis, 9, 1);
        let g = band_limited(&basis, 10, 1);
        let w = Weight::eigenvalue_phase(0.04);
        let full = metric_derivative_analytic(
            &fam,
            &w,
            3,
            &f,
            &g,
            CoefficientFix::Coefficients,
        )
        .unwrap();
        let weight_only = metric_derivative_analytic_terms(
            &fam,
            &w,
            3,
            &f,
            &g,
            CoefficientFix::Coefficients,
            true,
            false,
        )
        .unwrap();
        assert!(full.max_abs_diff(&weight_only) < 1e-15);
        let report = metric_derivative_fd(
            &fam,
            &w,
            3,
            &f,
            &g,
            CoefficientFix::Coefficients,
            &[1e-3, 1e-4],
        )
        .unwrap();
        assert!(report.pass);
    }

    #[test]
    fn function_fix_flips_the_volume_sign() {
        let fam = FlatMetricFamily::new(vec![1.0], vec![1.0]).unwrap();
        let basis = TorusBasis::unit(1, 4).unwrap();
        let f = band_limited(&basis, 5, 2);
        let g = band_limited(&basis, 6, 2);
        let report = metric_derivative_fd(
            &fam,
            &Weight::one(),
            4,
            &f,
            &g,
            CoefficientFix::Function,
            &[1e-3, 1e-4],
        )
        .unwrap();
        assert!(report.pass, "rows: {:?}", report.rows);
    }
}
