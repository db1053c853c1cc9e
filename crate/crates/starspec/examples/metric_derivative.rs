//! Derivative of the deformed product along a flat metric family.
//!
//! For torus radii `a(t)` the eigenfunctions stay fixed while eigenvalues
//! and the fusion normalization move; the closed-form derivative (weight
//! term through lambda-dot plus the volume term) is checked by central
//! finite differences, which converge at second order.
//!
//! Run with: `cargo run --example metric_derivative`

use starspec::analysis::{metric_derivative_fd, CoefficientFix, FlatMetricFamily};
use starspec::bases::TorusBasis;
use starspec::spectral::random_coeff_vec_filtered;
use starspec::weights::Weight;

fn main() -> starspec::Result<()> {
    let family = FlatMetricFamily::new(vec![1.0, 1.0], vec![0.0, 1.0])?;
    let nmax = 3;
    let basis = TorusBasis::unit(2, nmax)?;
    let f = random_coeff_vec_filtered(basis.spectrum(), 81, 1.0, |id| basis.mode_degree(id) <= 1)?;
    let g = random_coeff_vec_filtered(basis.spectrum(), 82, 1.0, |id| basis.mode_degree(id) <= 1)?;

    for (label, weight) in [
        ("constant weight (volume term only)", Weight::one()),
        ("eigenvalue phase c = 0.05", Weight::eigenvalue_phase(0.05)),
    ] {
        println!("radii a(t) = (1, 1+t), {label}:");
        let report = metric_derivative_fd(
            &family,
            &weight,
            nmax,
            &f,
            &g,
            CoefficientFix::Coefficients,
            &[1e-2, 5e-3, 2.5e-3, 1e-4],
        )?;
        println!(
            "  {:>9}  {:>16}  {:>10}",
            "step", "relative error", "ratio"
        );
        for row in &report.rows {
            let h = row.get_f64("step").unwrap();
            let e = row.get_f64("relative_error").unwrap();
            match row.get_f64("richardson_ratio") {
                Some(r) => println!("  {h:>9.1e}  {e:>16.6e}  {r:>10.4}"),
                None => println!("  {h:>9.1e}  {e:>16.6e}  {:>10}", "-"),
            }
        }
        println!(
            "  second-order agreement with the analytic derivative: {}\n",
            if report.pass { "yes" } else { "NO" }
        );
    }
    Ok(())
}
