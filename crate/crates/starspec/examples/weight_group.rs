//! The abelian group of admissible weights.
//!
//! Pointwise products and conjugates of square-cocycle weights are square
//! cocycles again; the identity is the constant weight and `w * inv(w) = 1`
//! on every admissible triple.
//!
//! Run with: `cargo run --example weight_group`

use num_complex::Complex64;
use starspec::bases::TorusBasis;
use starspec::weights::{check_admissible, check_square_cocycle, SkewMatrix, Weight};

fn main() -> starspec::Result<()> {
    let basis = TorusBasis::unit(2, 3)?;
    let tensor = basis.build_fusion(0.0);
    let w1 = Weight::torus_triphase(SkewMatrix::theta_2d(0.2));
    let w2 = Weight::eigenvalue_phase(0.7);

    let report = |name: &str, w: &Weight| {
        let adm = check_admissible(w, &tensor);
        let sq = check_square_cocycle(w, &tensor);
        println!(
            "{name:<22} unimodularity {:.2e}   hermitian {:.2e}   square-cocycle {:.2e}",
            adm.unimodularity_defect, adm.hermitian_defect, sq.square_cocycle_defect
        );
    };

    report("w1 (lattice phase)", &w1);
    report("w2 (eigenvalue phase)", &w2);
    report("w1 * w2", &Weight::mul(&w1, &w2));
    report("inv(w1)", &Weight::inv(&w1));
    report("inv(w1 * w2)", &Weight::inv(&Weight::mul(&w1, &w2)));

    // the inverse really is the pointwise inverse
    let unit = Weight::mul(&w1, &Weight::inv(&w1));
    let sp = tensor.spectrum();
    let worst = tensor
        .iter_triples()
        .map(|(a, b, g, _)| (unit.eval(sp, a, b, g) - Complex64::ONE).norm())
        .fold(0.0f64, f64::max);
    println!("\nmax |w1 * inv(w1) - 1| over all admissible triples: {worst:.2e}");
    Ok(())
}
