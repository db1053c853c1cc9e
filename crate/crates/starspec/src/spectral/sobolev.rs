use std::sync::Arc;

use super::coeff::CoeffVec;

/// Sobolev order parameter. Any real order is accepted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SobolevParams {
    pub s: f64,
}

impl SobolevParams {
    pub fn new(s: f64) -> SobolevParams {
        SobolevParams { s }
    }
}

/// Spectral Sobolev norm: `sqrt(sum_a (1 + lambda_a)^s |f_a|^2)`.
///
/// `hs_norm(f, 0)` is the plain l2 coefficient norm; the empty vector gives 0.
pub fn hs_norm(f: &CoeffVec, params: SobolevParams) -> f64 {
    let spectrum = f.spectrum();
    let mut acc = 0.0_f64;
    for (i, z) in f.iter() {
        let w = (1.0 + spectrum.eigenvalue(i)).powf(params.s);
        acc += w * z.norm_sqr();
    }
    acc.sqrt()
}

/// Dyadic block index of an eigenvalue under the sharp cutoffs
/// `2^j <= 1 + lambda < 2^(j+1)`; lambda >= 0 lands in j >= 0.
pub fn dyadic_block(lambda: f64) -> i32 {
    (1.0 + lambda).log2().floor() as i32
}

/// Keeps only the coefficients whose eigenvalue falls in dyadic block `j`.
/// The blocks partition the spectrum, so summing over all j reconstructs
/// the input exactly.
pub fn dyadic_project(f: &CoeffVec, j: i32) -> CoeffVec {
    let spectrum = Arc::clone(f.spectrum());
    let entries = f
        .iter()
        .filter(|&(i, _)| dyadic_block(spectrum.eigenvalue(i)) == j)
        .collect::<Vec<_>>();
    CoeffVec::from_entries(spectrum, entries)
}

/// Largest dyadic block index present in `f` (None when empty).
pub fn max_dyadic_block(f: &CoeffVec) -> Option<i32> {
    f.iter()
        .map(|(i, _)| dyadic_block(f.spectrum().eigenvalue(i)))
        .max()
}
