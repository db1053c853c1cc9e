//! The spectral toolbox: projection, synthesis, Sobolev norms, and dyadic
//! blocks on all three geometries.
//!
//! Run with: `cargo run --example spectral_toolbox`

use num_complex::Complex64;
use starspec::bases::{AnyBasis, SphereBasis, Su2Basis, TorusBasis};
use starspec::spectral::{
    dyadic_project, hs_norm, max_dyadic_block, random_coeff_vec, SobolevParams,
};

fn main() -> starspec::Result<()> {
    // project a concrete function on the 1-torus: cos(2 pi x) splits into
    // the two unit-frequency modes with coefficient 1/2 each
    let t1 = TorusBasis::unit(1, 3)?;
    let f = t1.project_fn(|x| Complex64::new((2.0 * std::f64::consts::PI * x[0]).cos(), 0.0))?;
    println!("projection of cos(2 pi x) on the 1-torus:");
    for (id, z) in f.iter() {
        println!("  mode {}: {:+.6} {:+.6}i", t1.spectrum().label(id), z.re, z.im);
    }

    // synthesis/analysis round trips on every backend
    let bases: Vec<(&str, AnyBasis)> = vec![
        ("torus d=2", AnyBasis::Torus(TorusBasis::new(2, 3, vec![1.0, 2.0])?)),
        ("sphere", AnyBasis::Sphere(SphereBasis::new(4))),
        ("su2", AnyBasis::Su2(Su2Basis::new(3))),
    ];
    println!("\nround-trip project(synthesize(f)) errors:");
    for (name, basis) in &bases {
        let f = random_coeff_vec(basis.spectrum(), 7, 1.0)?;
        let back = basis.project_fn(|x| basis.synthesize(&f, x).unwrap())?;
        println!("  {name:<10} {:.2e}", back.max_abs_diff(&f));
    }

    // Sobolev norms and the dyadic decomposition
    let sphere = SphereBasis::new(6);
    let f = random_coeff_vec(sphere.spectrum(), 3, 1.0)?;
    println!("\nSobolev norms of a random sphere vector (decay 1):");
    for s in [0.0, 1.0, 2.0] {
        println!("  H^{s}: {:.6}", hs_norm(&f, SobolevParams::new(s)));
    }
    println!("\ndyadic blocks 2^j <= 1 + lambda < 2^(j+1):");
    for j in 0..=max_dyadic_block(&f).unwrap() {
        let block = dyadic_project(&f, j);
        println!(
            "  j = {j}: {} modes, l2 mass {:.6}",
            block.support_len(),
            hs_norm(&block, SobolevParams::new(0.0))
        );
    }
    Ok(())
}
