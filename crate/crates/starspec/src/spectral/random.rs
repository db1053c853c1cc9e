use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::coeff::CoeffVec;
use super::spectrum::Spectrum;

/// SplitMix64: a fixed, platform-independent PRNG. The algorithm is pinned
/// here (rather than taken from a crate) so that seeded vectors, reports and
/// cache checksums are bit-stable forever.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53-bit resolution.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [-1, 1).
    pub fn next_sym(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }
}

/// Deterministic pseudo-random coefficient vector with magnitudes damped by
/// `(1 + lambda)^(-decay)`. Iteration follows the sorted label order, so the
/// same `(spectrum, seed, decay)` always produces the identical vector.
pub fn random_coeff_vec(spectrum: &Arc<Spectrum>, seed: u64, decay: f64) -> Result<CoeffVec> {
    if !(decay > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "decay must be positive, got {decay}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut out = CoeffVec::zero(Arc::clone(spectrum));
    for id in 0..spectrum.len() {
        let re = rng.next_sym();
        let im = rng.next_sym();
        let damp = (1.0 + spectrum.eigenvalue(id)).powf(-decay);
        out.set(id, Complex64::new(re, im) * damp);
    }
    Ok(out)
}

/// Same generator restricted to labels passing `keep`; used for band-limited
/// test vectors. RNG draws are still consumed for every label so the kept
/// coefficients match the unrestricted vector.
pub fn random_coeff_vec_filtered<F>(
    spectrum: &Arc<Spectrum>,
    seed: u64,
    decay: f64,
    keep: F,
) -> Result<CoeffVec>
where
    F: Fn(usize) -> bool,
{
    if !(decay > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "decay must be positive, got {decay}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut out = CoeffVec::zero(Arc::clone(spectrum));
    for id in 0..spectrum.len() {
        let re = rng.next_sym();
        let im = rng.next_sym();
        if keep(id) {
            let damp = (1.0 + spectrum.eigenvalue(id)).powf(-decay);
            out.set(id, Complex64::new(re, im) * damp);
        }
    }
    Ok(out)
}
