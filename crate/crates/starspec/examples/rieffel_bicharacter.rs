//! Coefficient identity with the bicharacter deformation.
//!
//! On the torus the fusion rule is additive, and the three-term lattice
//! phase restricted to the face g = a + b is the bicharacter
//! `sigma(a, b) = exp(pi i a.Jb)`. The full three-index product and the
//! two-face product are computed through separate code paths and agree
//! channel by channel at machine precision.
//!
//! Run with: `cargo run --example rieffel_bicharacter`

use starspec::analysis::rieffel_equivalence;
use starspec::bases::{AnyBasis, TorusBasis};
use starspec::star::{DeformedAlgebra, TruncationPolicy};
use starspec::weights::{SkewMatrix, Weight};

fn main() -> starspec::Result<()> {
    for theta in [0.0, 0.1, 0.3] {
        let j = SkewMatrix::theta_2d(theta);
        let alg = DeformedAlgebra::build(
            AnyBasis::Torus(TorusBasis::unit(2, 6)?),
            Weight::torus_triphase(j.clone()),
            TruncationPolicy::HardTruncate,
        )?;
        let report = rieffel_equivalence(&alg, &j, 20, 11, 3)?;
        println!(
            "J_12 = {theta:<4} over {} band-limited pairs: max channel defect {:.3e}  ({})",
            report.rows.len(),
            report.max_defect,
            if report.pass { "agree" } else { "DISAGREE" }
        );
    }
    Ok(())
}
