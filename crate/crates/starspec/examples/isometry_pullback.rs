//! Pullbacks by isometries as *-homomorphisms of the deformed algebra.
//!
//! An eigenvalue-only weight satisfies the equivariance criterion for every
//! isometry, so rotations commute with the deformed product. A lattice map
//! that moves the deformation matrix fails the criterion and the pullback
//! refuses to run.
//!
//! Run with: `cargo run --example isometry_pullback`

use starspec::bases::{AnyBasis, IsometryAction, SphereBasis, TorusBasis};
use starspec::spectral::{SobolevParams, SplitMix64};
use starspec::star::{DeformedAlgebra, TruncationPolicy};
use starspec::weights::{SkewMatrix, Weight};

fn main() -> starspec::Result<()> {
    let s = SobolevParams::new(0.0);
    let alg = DeformedAlgebra::build(
        AnyBasis::Sphere(SphereBasis::new(5)),
        Weight::eigenvalue_phase(0.8),
        TruncationPolicy::HardTruncate,
    )?;
    let f = alg.random_band_limited(1, 1.0, 2)?;
    let g = alg.random_band_limited(2, 1.0, 2)?;
    let mut rng = SplitMix64::new(9);
    println!("sphere, eigenvalue-phase weight, random rotations:");
    for k in 0..5 {
        let rot = IsometryAction::SphereRotation {
            alpha: rng.next_sym() * std::f64::consts::PI,
            beta: rng.next_f64() * std::f64::consts::PI,
            gamma: rng.next_sym() * std::f64::consts::PI,
        };
        let criterion = alg.equivariance_defect(&rot)?;
        let hom = alg.pullback_homomorphism_defect(&rot, &f, &g, s)?;
        println!(
            "  rotation {k}: equivariance criterion {criterion:.2e}, homomorphism defect {hom:.2e}"
        );
    }

    println!("\ntorus, lattice phase J, candidate lattice maps:");
    let talg = DeformedAlgebra::build(
        AnyBasis::Torus(TorusBasis::unit(2, 4)?),
        Weight::torus_triphase(SkewMatrix::theta_2d(0.25)),
        TruncationPolicy::HardTruncate,
    )?;
    let tf = talg.random_band_limited(3, 1.0, 2)?;
    let tg = talg.random_band_limited(4, 1.0, 2)?;
    let candidates: Vec<(&str, IsometryAction)> = vec![
        ("translation", IsometryAction::translation(vec![0.3, 0.8])),
        (
            "negation (A = -I)",
            IsometryAction::TorusMap {
                matrix: vec![vec![-1, 0], vec![0, -1]],
                translation: vec![0.0, 0.0],
            },
        ),
        (
            "swap axes (A^T J A = -J)",
            IsometryAction::TorusMap {
                matrix: vec![vec![0, 1], vec![1, 0]],
                translation: vec![0.0, 0.0],
            },
        ),
    ];
    for (name, h) in candidates {
        match talg.pullback_homomorphism_defect(&h, &tf, &tg, s) {
            Ok(d) => println!("  {name:<26} homomorphism defect {d:.2e}"),
            Err(e) => println!("  {name:<26} rejected: {e}"),
        }
    }
    Ok(())
}
