//! Generator commutation relations on the deformed 2-torus.
//!
//! With the three-term lattice phase at deformation matrix Theta, the
//! Fourier generators satisfy `U_j * U_k = exp(2 pi i Theta_jk) U_k * U_j`:
//! the defining relations of the smooth noncommutative torus.
//!
//! Run with: `cargo run --example connes_landi`

use num_complex::Complex64;
use starspec::bases::{AnyBasis, TorusBasis};
use starspec::star::{DeformedAlgebra, TruncationPolicy};
use starspec::weights::{SkewMatrix, Weight};

fn main() -> starspec::Result<()> {
    for theta in [0.1, 0.25, 0.5] {
        let alg = DeformedAlgebra::build(
            AnyBasis::Torus(TorusBasis::unit(2, 4)?),
            Weight::torus_triphase(SkewMatrix::theta_2d(theta)),
            TruncationPolicy::HardTruncate,
        )?;
        println!("Theta_12 = {theta}");
        for j in 0..2 {
            for k in 0..2 {
                let r = alg.commutation_ratio(j, k)?;
                let theta_jk = if j == k {
                    0.0
                } else if j < k {
                    theta
                } else {
                    -theta
                };
                let expect = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * theta_jk);
                println!(
                    "  U_{} * U_{} = r U_{} * U_{} with r = {:+.12} {:+.12}i   (error {:.2e})",
                    j + 1,
                    k + 1,
                    k + 1,
                    j + 1,
                    r.re,
                    r.im,
                    (r - expect).norm()
                );
            }
        }
    }
    Ok(())
}
