use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use super::label::{BackendId, SpectralLabel};

/// A truncated Laplace eigenbasis: ordered labels, eigenvalues, and the
/// conjugation rule realizing `conj(phi_a) = c_a * phi_{sigma(a)}`.
///
/// Immutable after construction; shared via `Arc`.
#[derive(Debug)]
pub struct Spectrum {
    backend: BackendId,
    /// Sorted label list; index into this vec is the internal mode id.
    labels: Vec<SpectralLabel>,
    index: BTreeMap<SpectralLabel, usize>,
    eigenvalues: Vec<f64>,
    /// conj[i] = (sigma(i), c_i) with |c_i| = 1.
    conj: Vec<(usize, Complex64)>,
    /// Human-readable truncation descriptor, e.g. "nmax=6" or "lmax=4".
    truncation: String,
}

impl Spectrum {
    /// Assemble a spectrum from `(label, eigenvalue)` pairs and a conjugation
    /// rule. Labels are sorted; the rule must stay inside the label set.
    pub(crate) fn new<F>(
        backend: BackendId,
        mut items: Vec<(SpectralLabel, f64)>,
        truncation: String,
        conj_rule: F,
    ) -> Arc<Spectrum>
    where
        F: Fn(&SpectralLabel) -> (SpectralLabel, Complex64),
    {
        items.sort_by(|a, b| a.0.cmp(&b.0));
        let labels: Vec<SpectralLabel> = items.iter().map(|(l, _)| l.clone()).collect();
        let eigenvalues: Vec<f64> = items.iter().map(|(_, e)| *e).collect();
        let index: BTreeMap<SpectralLabel, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let conj: Vec<(usize, Complex64)> = labels
            .iter()
            .map(|l| {
                let (sl, c) = conj_rule(l);
                let si = *index
                    .get(&sl)
                    .unwrap_or_else(|| panic!("conjugation leaves truncation at {l}"));
                debug_assert!((c.norm() - 1.0).abs() < 1e-14);
                (si, c)
            })
            .collect();
        // sigma must be an involution preserving eigenvalues
        for (i, &(si, _)) in conj.iter().enumerate() {
            debug_assert_eq!(conj[si].0, i);
            debug_assert!((eigenvalues[si] - eigenvalues[i]).abs() < 1e-12);
        }
        Arc::new(Spectrum {
            backend,
            labels,
            index,
            eigenvalues,
            conj,
            truncation,
        })
    }

    pub fn backend(&self) -> BackendId {
        self.backend
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[SpectralLabel] {
        &self.labels
    }

    pub fn label(&self, id: usize) -> &SpectralLabel {
        &self.labels[id]
    }

    pub fn eigenvalue(&self, id: usize) -> f64 {
        self.eigenvalues[id]
    }

    pub fn lookup(&self, label: &SpectralLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Conjugation rule on mode ids: returns `(sigma(id), c)` with
    /// `conj(phi_id) = c * phi_{sigma(id)}`.
    pub fn conjugate(&self, id: usize) -> (usize, Complex64) {
        self.conj[id]
    }

    pub fn truncation(&self) -> &str {
        &self.truncation
    }

    /// Two spectra are interchangeable when backend, truncation and labels agree.
    pub fn same_domain(&self, other: &Spectrum) -> bool {
        self.backend == other.backend
            && self.truncation == other.truncation
            && self.labels == other.labels
    }
}
