use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use super::spectrum::Spectrum;

/// Fusion channels of one mode pair. `leaks` records that at least one
/// product channel fell outside the truncation and was omitted.
#[derive(Debug, Clone, Default)]
pub struct PairEntry {
    pub channels: Vec<(usize, Complex64)>,
    pub leaks: bool,
}

/// Sparse fusion tensor: for each mode pair (a, b), the expansion
/// coefficients of `phi_a * phi_b` over the truncated eigenbasis.
///
/// Entries with modulus at or below the drop tolerance are absent. Pairs
/// are stored densely (row-major over mode ids) so channel lookups inside
/// the contraction loops are O(1). Immutable after construction.
#[derive(Debug)]
pub struct FusionTensor {
    spectrum: Arc<Spectrum>,
    drop_tol: f64,
    pairs: Vec<PairEntry>,
    len: usize,
    pairs_leaking: usize,
}

impl FusionTensor {
    pub(crate) fn from_pairs(
        spectrum: Arc<Spectrum>,
        drop_tol: f64,
        map: BTreeMap<(usize, usize), PairEntry>,
    ) -> FusionTensor {
        let len = spectrum.len();
        let mut pairs = vec![PairEntry::default(); len * len];
        for ((a, b), entry) in map {
            pairs[a * len + b] = entry;
        }
        let pairs_leaking = pairs.iter().filter(|p| p.leaks).count();
        FusionTensor {
            spectrum,
            drop_tol,
            pairs,
            len,
            pairs_leaking,
        }
    }

    pub fn spectrum(&self) -> &Arc<Spectrum> {
        &self.spectrum
    }

    pub fn drop_tol(&self) -> f64 {
        self.drop_tol
    }

    pub fn pairs_total(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs_leaking(&self) -> usize {
        self.pairs_leaking
    }

    /// Number of stored (a, b, g) channel entries.
    pub fn entry_count(&self) -> usize {
        self.pairs.iter().map(|p| p.channels.len()).sum()
    }

    pub fn pair(&self, a: usize, b: usize) -> Option<&PairEntry> {
        self.pairs.get(a * self.len + b)
    }

    pub fn channels(&self, a: usize, b: usize) -> &[(usize, Complex64)] {
        &self.pairs[a * self.len + b].channels
    }

    pub fn leaks(&self, a: usize, b: usize) -> bool {
        self.pairs[a * self.len + b].leaks
    }

    /// Coefficient of channel g in `phi_a * phi_b` (zero when absent).
    pub fn coefficient(&self, a: usize, b: usize, g: usize) -> Complex64 {
        self.channels(a, b)
            .iter()
            .find(|(c, _)| *c == g)
            .map(|(_, v)| *v)
            .unwrap_or(Complex64::ZERO)
    }

    /// All pairs in deterministic row-major order.
    pub fn iter_pairs(&self) -> impl Iterator<Item = ((usize, usize), &PairEntry)> + '_ {
        self.pairs
            .iter()
            .enumerate()
            .map(move |(i, p)| ((i / self.len, i % self.len), p))
    }

    /// All admissible triples (a, b, g, C) in deterministic order.
    pub fn iter_triples(&self) -> impl Iterator<Item = (usize, usize, usize, Complex64)> + '_ {
        self.iter_pairs()
            .flat_map(|((a, b), entry)| entry.channels.iter().map(move |&(g, c)| (a, b, g, c)))
    }

    /// Max Hermitian-symmetry defect `|conj(C^g_ab) - C^g_ba|` over all
    /// stored triples.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (a, b, g, c) in self.iter_triples() {
            let sym = self.coefficient(b, a, g);
            worst = worst.max((c.conj() - sym).norm());
        }
        worst
    }
}
