//! Fusion coefficients of spherical harmonics.
//!
//! Prints the channel expansion of a few products `Y_l1^m1 Y_l2^m2` from
//! the sparse tensor, cross-checked against direct Gauss-Legendre x
//! trapezoid quadrature of the triple integrals.
//!
//! Run with: `cargo run --example sphere_fusion`

use num_complex::Complex64;
use starspec::bases::quadrature::{equispaced, gauss_legendre};
use starspec::bases::{sph_harm, SphereBasis};

fn main() {
    let lmax = 4u32;
    let basis = SphereBasis::new(lmax);
    let tensor = basis.build_fusion(0.0);
    println!(
        "lmax = {lmax}: {} mode pairs, {} stored channels, {} pairs truncation-leaking\n",
        tensor.pairs_total(),
        tensor.entry_count(),
        tensor.pairs_leaking()
    );

    // quadrature oracle sized for triple products
    let (xs, ws) = gauss_legendre(3 * lmax as usize / 2 + 2);
    let (phis, dphi) = equispaced(3 * lmax as usize + 2, 2.0 * std::f64::consts::PI);
    let oracle = |l1: u32, m1: i32, l2: u32, m2: i32, l3: u32, m3: i32| -> Complex64 {
        let mut acc = Complex64::ZERO;
        for (&x, &w) in xs.iter().zip(&ws) {
            let theta = x.clamp(-1.0, 1.0).acos();
            for &phi in &phis {
                acc += sph_harm(l1, m1, theta, phi)
                    * sph_harm(l2, m2, theta, phi)
                    * sph_harm(l3, m3, theta, phi).conj()
                    * (w * dphi);
            }
        }
        acc
    };

    for (l1, m1, l2, m2) in [(0, 0, 0, 0), (1, 1, 1, -1), (2, 1, 1, 0), (2, 2, 2, -1)] {
        let a = basis.lookup_lm(l1, m1).unwrap();
        let b = basis.lookup_lm(l2, m2).unwrap();
        println!("Y_{l1}^{m1} * Y_{l2}^{m2} expands over:");
        for &(g, c) in tensor.channels(a, b) {
            let label = basis.spectrum().label(g).clone();
            let (l3, m3) = match label {
                starspec::spectral::SpectralLabel::Sphere { l, m } => (l, m),
                _ => unreachable!(),
            };
            let q = oracle(l1, m1, l2, m2, l3, m3);
            println!(
                "  (l={l3}, m={m3})  C = {:+.12}   quadrature {:+.12}   error {:.2e}",
                c.re,
                q.re,
                (c - q).norm()
            );
        }
        println!();
    }
    println!("selection rules in the sparse structure: m3 = m1 + m2, |l1 - l2| <= l3 <= l1 + l2, l1 + l2 + l3 even");
}
