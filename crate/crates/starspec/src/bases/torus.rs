//! Flat d-torus with metric diag(a_1, ..., a_d) on [0,1)^d.
//!
//! Eigenfunctions are Fourier modes `phi_n(x) = vol^(-1/2) exp(2 pi i n.x)`
//! with `lambda_n = 4 pi^2 sum_j n_j^2 / a_j` and `vol = prod_j sqrt(a_j)`;
//! fusion is additive: `phi_n phi_m = vol^(-1/2) phi_(n+m)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{BackendId, CoeffVec, FusionTensor, PairEntry, SpectralLabel, Spectrum};

use super::quadrature::equispaced;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

#[derive(Debug, Clone)]
pub struct TorusBasis {
    dim: usize,
    nmax: i32,
    radii: Vec<f64>,
    volume: f64,
    spectrum: Arc<Spectrum>,
}

impl TorusBasis {
    pub fn new(dim: usize, nmax: i32, radii: Vec<f64>) -> Result<TorusBasis> {
        if dim == 0 {
            return Err(Error::InvalidArgument("torus dimension must be >= 1".into()));
        }
        if nmax < 0 {
            return Err(Error::InvalidArgument("nmax must be >= 0".into()));
        }
        if radii.len() != dim {
            return Err(Error::InvalidArgument(format!(
                "expected {dim} radii, got {}",
                radii.len()
            )));
        }
        if radii.iter().any(|&a| !(a > 0.0)) {
            return Err(Error::InvalidArgument("radii must be positive".into()));
        }
        let volume: f64 = radii.iter().map(|a| a.sqrt()).product();
        let side = (2 * nmax + 1) as usize;
        let total = side.pow(dim as u32);
        let mut items = Vec::with_capacity(total);
        for t in 0..total {
            let mut rem = t;
            let mut n = vec![0i32; dim];
            for c in n.iter_mut().rev() {
                *c = (rem % side) as i32 - nmax;
                rem /= side;
            }
            let lambda = eigenvalue_of(&n, &radii);
            items.push((SpectralLabel::Torus(n), lambda));
        }
        let truncation = format!("d={dim},nmax={nmax},radii={radii:?}");
        let spectrum = Spectrum::new(BackendId::Torus, items, truncation, |l| match l {
            SpectralLabel::Torus(n) => (
                SpectralLabel::Torus(n.iter().map(|c| -c).collect()),
                Complex64::ONE,
            ),
            _ => unreachable!(),
        });
        Ok(TorusBasis {
            dim,
            nmax,
            radii,
            volume,
            spectrum,
        })
    }

    /// Unit radii convenience constructor.
    pub fn unit(dim: usize, nmax: i32) -> Result<TorusBasis> {
        TorusBasis::new(dim, nmax, vec![1.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nmax(&self) -> i32 {
        self.nmax
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn spectrum(&self) -> &Arc<Spectrum> {
        &self.spectrum
    }

    fn mode(&self, id: usize) -> &[i32] {
        match self.spectrum.label(id) {
            SpectralLabel::Torus(n) => n,
            _ => unreachable!(),
        }
    }

    pub fn lookup_mode(&self, n: &[i32]) -> Option<usize> {
        self.spectrum.lookup(&SpectralLabel::Torus(n.to_vec()))
    }

    /// `infinity-norm` of the mode vector; the band-limiting degree.
    pub fn mode_degree(&self, id: usize) -> u32 {
        self.mode(id).iter().map(|c| c.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u32 {
        self.nmax as u32
    }

    pub fn build_fusion(&self, drop_tol: f64) -> FusionTensor {
        let len = self.spectrum.len();
        let coeff = Complex64::new(1.0 / self.volume.sqrt(), 0.0);
        let mut pairs = BTreeMap::new();
        for a in 0..len {
            for b in 0..len {
                let sum: Vec<i32> = self
                    .mode(a)
                    .iter()
                    .zip(self.mode(b))
                    .map(|(x, y)| x + y)
                    .collect();
                let entry = match self.lookup_mode(&sum) {
                    Some(g) if coeff.norm() > drop_tol => PairEntry {
                        channels: vec![(g, coeff)],
                        leaks: false,
                    },
                    Some(_) => PairEntry {
                        channels: vec![],
                        leaks: false,
                    },
                    None => PairEntry {
                        channels: vec![],
                        leaks: true,
                    },
                };
                pairs.insert((a, b), entry);
            }
        }
        FusionTensor::from_pairs(Arc::clone(&self.spectrum), drop_tol, pairs)
    }

    pub fn evaluate(&self, id: usize, point: &[f64]) -> Result<Complex64> {
        if point.len() != self.dim {
            return Err(Error::ChartDomain(format!(
                "expected {} coordinates, got {}",
                self.dim,
                point.len()
            )));
        }
        if point.iter().any(|&x| !(0.0..1.0).contains(&x)) {
            return Err(Error::ChartDomain(format!("{point:?} not in [0,1)^d")));
        }
        let phase: f64 = self
            .mode(id)
            .iter()
            .zip(point)
            .map(|(&n, &x)| n as f64 * x)
            .sum();
        Ok(Complex64::from_polar(1.0 / self.volume.sqrt(), TWO_PI * phase))
    }

    pub fn synthesize(&self, f: &CoeffVec, point: &[f64]) -> Result<Complex64> {
        let mut acc = Complex64::ZERO;
        for (id, z) in f.iter() {
            acc += z * self.evaluate(id, point)?;
        }
        Ok(acc)
    }

    /// Projection by the exact equispaced tensor rule with `points_per_axis`
    /// nodes on each axis; needs at least 2 nmax + 1 for band-limited
    /// exactness within the truncation.
    pub fn project_fn_with<F>(&self, f: F, points_per_axis: usize) -> Result<CoeffVec>
    where
        F: Fn(&[f64]) -> Complex64,
    {
        let need = 2 * self.nmax as usize + 1;
        if points_per_axis < need {
            return Err(Error::GridResolution {
                need,
                got: points_per_axis,
            });
        }
        let (axis_nodes, _) = equispaced(points_per_axis, 1.0);
        let total = points_per_axis.pow(self.dim as u32);
        let cell = 1.0 / total as f64;
        // sample the grid once, then discrete Fourier sums per mode
        let mut points = Vec::with_capacity(total);
        for t in 0..total {
            let mut rem = t;
            let mut x = vec![0.0f64; self.dim];
            for c in x.iter_mut().rev() {
                *c = axis_nodes[rem % points_per_axis];
                rem /= points_per_axis;
            }
            let fx = f(&x);
            points.push((x, fx));
        }
        let scale = self.volume.sqrt() * cell;
        let mut out = CoeffVec::zero(Arc::clone(&self.spectrum));
        for id in 0..self.spectrum.len() {
            let n = self.mode(id);
            let mut acc = Complex64::ZERO;
            for (x, fx) in &points {
                let phase: f64 = n.iter().zip(x).map(|(&nj, &xj)| nj as f64 * xj).sum();
                acc += fx * Complex64::from_polar(1.0, -TWO_PI * phase);
            }
            let value = acc * scale;
            if value.norm() > 1e-13 {
                out.set(id, value);
            }
        }
        Ok(out)
    }

    pub fn project_fn<F>(&self, f: F) -> Result<CoeffVec>
    where
        F: Fn(&[f64]) -> Complex64,
    {
        self.project_fn_with(f, 2 * self.nmax as usize + 1)
    }

    /// The canonical equispaced tensor grid (2 nmax + 1 points per axis) in
    /// the same order `project_samples` consumes.
    pub fn canonical_grid(&self) -> Vec<Vec<f64>> {
        let points_per_axis = 2 * self.nmax as usize + 1;
        let (axis_nodes, _) = equispaced(points_per_axis, 1.0);
        let total = points_per_axis.pow(self.dim as u32);
        let mut grid = Vec::with_capacity(total);
        for t in 0..total {
            let mut rem = t;
            let mut x = vec![0.0f64; self.dim];
            for c in x.iter_mut().rev() {
                *c = axis_nodes[rem % points_per_axis];
                rem /= points_per_axis;
            }
            grid.push(x);
        }
        grid
    }

    /// Projection from samples on the canonical grid.
    pub fn project_samples(&self, samples: &[Complex64]) -> Result<CoeffVec> {
        let grid = self.canonical_grid();
        if samples.len() != grid.len() {
            return Err(Error::GridResolution {
                need: grid.len(),
                got: samples.len(),
            });
        }
        let scale = self.volume.sqrt() / grid.len() as f64;
        let mut out = CoeffVec::zero(Arc::clone(&self.spectrum));
        for id in 0..self.spectrum.len() {
            let n = self.mode(id);
            let mut acc = Complex64::ZERO;
            for (x, fx) in grid.iter().zip(samples) {
                let phase: f64 = n.iter().zip(x).map(|(&nj, &xj)| nj as f64 * xj).sum();
                acc += fx * Complex64::from_polar(1.0, -TWO_PI * phase);
            }
            let value = acc * scale;
            if value.norm() > 1e-13 {
                out.set(id, value);
            }
        }
        Ok(out)
    }

    /// Validates a lattice isometry: integer matrix with |det| = 1 satisfying
    /// `A^T diag(a) A = diag(a)`, and a label map preserving the truncation.
    pub fn validate_map(&self, matrix: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
        let d = self.dim;
        if matrix.len() != d || matrix.iter().any(|row| row.len() != d) {
            return Err(Error::InvalidIsometry(format!("matrix must be {d}x{d}")));
        }
        let det = int_det(matrix);
        if det.abs() != 1 {
            return Err(Error::InvalidIsometry(format!(
                "matrix not in GL({d},Z): det = {det}"
            )));
        }
        for i in 0..d {
            for j in 0..d {
                let mut acc = 0.0;
                for (k, ak) in self.radii.iter().enumerate() {
                    acc += matrix[k][i] as f64 * ak * matrix[k][j] as f64;
                }
                let target = if i == j { self.radii[i] } else { 0.0 };
                if (acc - target).abs() > 1e-9 {
                    return Err(Error::InvalidIsometry(
                        "matrix does not preserve the metric: A^T diag(a) A != diag(a)".into(),
                    ));
                }
            }
        }
        let inv_t = int_inverse_transpose(matrix, det);
        // the induced label map n -> A^(-T) n must keep the truncation box
        let corners = self.spectrum.labels().iter().map(|l| match l {
            SpectralLabel::Torus(n) => n.clone(),
            _ => unreachable!(),
        });
        for n in corners {
            let mapped = apply_int(&inv_t, &n);
            if mapped.iter().any(|&c| c.abs() > self.nmax as i64) {
                return Err(Error::InvalidIsometry(
                    "label map does not preserve the truncation box".into(),
                ));
            }
        }
        Ok(inv_t)
    }

    /// Pullback by the isometry `x -> A x + v` on coefficients:
    /// mode n moves to `A^(-T) n` and picks up the phase `exp(-2 pi i k.v)`.
    pub fn act(&self, matrix: &[Vec<i64>], translation: &[f64], f: &CoeffVec) -> Result<CoeffVec> {
        if translation.len() != self.dim {
            return Err(Error::InvalidIsometry(format!(
                "translation must have {} components",
                self.dim
            )));
        }
        let inv_t = self.validate_map(matrix)?;
        let mut out = CoeffVec::zero(Arc::clone(&self.spectrum));
        for (id, z) in f.iter() {
            let n = self.mode(id);
            let k = apply_int(&inv_t, n);
            let k32: Vec<i32> = k.iter().map(|&c| c as i32).collect();
            let target = self
                .lookup_mode(&k32)
                .ok_or_else(|| Error::InvalidIsometry("mapped label left truncation".into()))?;
            let phase: f64 = k32
                .iter()
                .zip(translation)
                .map(|(&kj, &vj)| kj as f64 * vj)
                .sum();
            out.set(target, z * Complex64::from_polar(1.0, -TWO_PI * phase));
        }
        Ok(out)
    }

    /// Sparse coefficient matrix of the pullback: entry per input mode id,
    /// listing `(output id, weight)`.
    pub fn coefficient_matrix(
        &self,
        matrix: &[Vec<i64>],
        translation: &[f64],
    ) -> Result<Vec<Vec<(usize, Complex64)>>> {
        let inv_t = self.validate_map(matrix)?;
        let mut rows = Vec::with_capacity(self.spectrum.len());
        for id in 0..self.spectrum.len() {
            let n = self.mode(id);
            let k = apply_int(&inv_t, n);
            let k32: Vec<i32> = k.iter().map(|&c| c as i32).collect();
            let target = self
                .lookup_mode(&k32)
                .ok_or_else(|| Error::InvalidIsometry("mapped label left truncation".into()))?;
            let phase: f64 = k32
                .iter()
                .zip(translation)
                .map(|(&kj, &vj)| kj as f64 * vj)
                .sum();
            rows.push(vec![(target, Complex64::from_polar(1.0, -TWO_PI * phase))]);
        }
        Ok(rows)
    }
}

fn eigenvalue_of(n: &[i32], radii: &[f64]) -> f64 {
    4.0 * std::f64::consts::PI
        * std::f64::consts::PI
        * n.iter()
            .zip(radii)
            .map(|(&nj, &aj)| (nj as f64) * (nj as f64) / aj)
            .sum::<f64>()
}

fn int_det(m: &[Vec<i64>]) -> i64 {
    let d = m.len();
    if d == 1 {
        return m[0][0];
    }
    let mut det = 0;
    for j in 0..d {
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        det += sign * m[0][j] * int_det(&minor);
    }
    det
}

/// Inverse transpose of an integer matrix with det = +-1 (adjugate method).
fn int_inverse_transpose(m: &[Vec<i64>], det: i64) -> Vec<Vec<i64>> {
    let d = m.len();
    let mut adj_t = vec![vec![0i64; d]; d];
    for i in 0..d {
        for j in 0..d {
            let minor: Vec<Vec<i64>> = m
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            let cof = if d == 1 { 1 } else { sign * int_det(&minor) };
            // inverse = adj^T / det; inverse transpose = adj / det
            adj_t[i][j] = cof * det.signum();
        }
    }
    adj_t
}

fn apply_int(m: &[Vec<i64>], n: &[i32]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(n).map(|(&a, &b)| a * b as i64).sum())
        .collect()
}


#[cfg(test)]
mod sample_tests {
    use super::*;
    use crate::spectral::random_coeff_vec;

    #[test]
    fn samples_on_the_canonical_grid_project_exactly() {
        let t = TorusBasis::new(2, 2, vec![1.0, 1.5]).unwrap();
        let f = random_coeff_vec(t.spectrum(), 21, 1.0).unwrap();
        let samples: Vec<Complex64> = t
            .canonical_grid()
            .iter()
            .map(|x| t.synthesize(&f, x).unwrap())
            .collect();
        let back = t.project_samples(&samples).unwrap();
        assert!(back.max_abs_diff(&f) < 1e-10);
        assert!(t.project_samples(&samples[1..]).is_err());
    }
}
