use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::spectrum::Spectrum;

/// A truncated spectral coefficient vector. Keys are mode ids of the owning
/// spectrum; an absent key means the coefficient is zero.
#[derive(Debug, Clone)]
pub struct CoeffVec {
    spectrum: Arc<Spectrum>,
    data: BTreeMap<usize, Complex64>,
}

impl CoeffVec {
    pub fn zero(spectrum: Arc<Spectrum>) -> CoeffVec {
        CoeffVec {
            spectrum,
            data: BTreeMap::new(),
        }
    }

    pub fn single(spectrum: Arc<Spectrum>, id: usize, value: Complex64) -> CoeffVec {
        let mut v = CoeffVec::zero(spectrum);
        v.set(id, value);
        v
    }

    pub fn from_entries(
        spectrum: Arc<Spectrum>,
        entries: impl IntoIterator<Item = (usize, Complex64)>,
    ) -> CoeffVec {
        let mut v = CoeffVec::zero(spectrum);
        for (id, z) in entries {
            v.set(id, z);
        }
        v
    }

    pub fn spectrum(&self) -> &Arc<Spectrum> {
        &self.spectrum
    }

    pub fn get(&self, id: usize) -> Complex64 {
        self.data.get(&id).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn set(&mut self, id: usize, value: Complex64) {
        assert!(id < self.spectrum.len(), "mode id outside truncation");
        if value == Complex64::ZERO {
            self.data.remove(&id);
        } else {
            self.data.insert(id, value);
        }
    }

    /// Nonzero entries in ascending mode-id (= sorted label) order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.data.iter().map(|(&i, &z)| (i, z))
    }

    pub fn support_len(&self) -> usize {
        self.data.len()
    }

    pub fn scale(&self, a: Complex64) -> CoeffVec {
        let data = self.data.iter().map(|(&i, &z)| (i, a * z)).collect();
        CoeffVec {
            spectrum: Arc::clone(&self.spectrum),
            data,
        }
    }

    pub fn add(&self, other: &CoeffVec) -> CoeffVec {
        assert!(self.spectrum.same_domain(&other.spectrum));
        let mut out = self.clone();
        for (i, z) in other.iter() {
            let v = out.get(i) + z;
            out.set(i, v);
        }
        out
    }

    pub fn sub(&self, other: &CoeffVec) -> CoeffVec {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Pointwise complex conjugate of the represented function, computed on
    /// coefficients via the spectrum's conjugation rule: the entry at `a`
    /// contributes `c_a * conj(f_a)` at `sigma(a)`.
    pub fn involution(&self) -> Result<CoeffVec> {
        let mut out = CoeffVec::zero(Arc::clone(&self.spectrum));
        for (i, z) in self.iter() {
            let (si, c) = self.spectrum.conjugate(i);
            if si >= self.spectrum.len() {
                return Err(Error::ConjugationLeavesTruncation(
                    self.spectrum.label(i).to_string(),
                ));
            }
            out.set(si, c * z.conj());
        }
        Ok(out)
    }

    /// Max coefficient-wise modulus of the difference; convenient for
    /// channelwise comparisons.
    pub fn max_abs_diff(&self, other: &CoeffVec) -> f64 {
        let mut m: f64 = 0.0;
        for (i, z) in self.iter() {
            m = m.max((z - other.get(i)).norm());
        }
        for (i, z) in other.iter() {
            m = m.max((self.get(i) - z).norm());
        }
        m
    }
}
