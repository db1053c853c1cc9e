//! Round two-sphere with the orthonormal complex spherical harmonics
//! `Y_l^m` (Condon-Shortley phase), `lambda_l = l (l + 1)`.
//!
//! Fusion coefficients are Gaunt integrals, computed from the Wigner 3j
//! closed form; the quadrature route is kept as an independent test oracle.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{BackendId, CoeffVec, FusionTensor, PairEntry, SpectralLabel, Spectrum};

use super::quadrature::{equispaced, gauss_legendre};
use super::rotation::wigner_d_matrix;
use super::wigner::gaunt;

#[derive(Debug, Clone)]
pub struct SphereBasis {
    lmax: u32,
    spectrum: Arc<Spectrum>,
}

impl SphereBasis {
    pub fn new(lmax: u32) -> SphereBasis {
        let mut items = Vec::new();
        for l in 0..=lmax {
            for m in -(l as i32)..=(l as i32) {
                items.push((SpectralLabel::Sphere { l, m }, (l * (l + 1)) as f64));
            }
        }
        let spectrum = Spectrum::new(
            BackendId::Sphere,
            items,
            format!("lmax={lmax}"),
            |label| match *label {
                SpectralLabel::Sphere { l, m } => {
                    // conj(Y_l^m) = (-1)^m Y_l^(-m)
                    let c = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                    (SpectralLabel::Sphere { l, m: -m }, Complex64::new(c, 0.0))
                }
                _ => unreachable!(),
            },
        );
        SphereBasis { lmax, spectrum }
    }

    pub fn lmax(&self) -> u32 {
        self.lmax
    }

    pub fn spectrum(&self) -> &Arc<Spectrum> {
        &self.spectrum
    }

    fn lm(&self, id: usize) -> (u32, i32) {
        match *self.spectrum.label(id) {
            SpectralLabel::Sphere { l, m } => (l, m),
            _ => unreachable!(),
        }
    }

    pub fn lookup_lm(&self, l: u32, m: i32) -> Option<usize> {
        self.spectrum.lookup(&SpectralLabel::Sphere { l, m })
    }

    pub fn mode_degree(&self, id: usize) -> u32 {
        self.lm(id).0
    }

    pub fn max_degree(&self) -> u32 {
        self.lmax
    }

    pub fn build_fusion(&self, drop_tol: f64) -> FusionTensor {
        let len = self.spectrum.len();
        let mut pairs = BTreeMap::new();
        for a in 0..len {
            let (l1, m1) = self.lm(a);
            for b in 0..len {
                let (l2, m2) = self.lm(b);
                let m3 = m1 + m2;
                let lo = l1.abs_diff(l2);
                let hi = l1 + l2;
                let leaks = hi > self.lmax;
                let mut channels = Vec::new();
                for l3 in lo..=hi.min(self.lmax) {
                    if (l1 + l2 + l3) % 2 != 0 {
                        continue; // parity selection rule
                    }
                    if m3.unsigned_abs() > l3 {
                        continue;
                    }
                    let c = gaunt(l1 as i64, m1 as i64, l2 as i64, m2 as i64, l3 as i64, m3 as i64);
                    if c.abs() > drop_tol && c != 0.0 {
                        let g = self.lookup_lm(l3, m3).expect("channel within truncation");
                        channels.push((g, Complex64::new(c, 0.0)));
                    }
                }
                channels.sort_by_key(|&(g, _)| g);
                pairs.insert((a, b), PairEntry { channels, leaks });
            }
        }
        FusionTensor::from_pairs(Arc::clone(&self.spectrum), drop_tol, pairs)
    }

    /// Orthonormal spherical harmonic at `point = [theta, phi]`.
    pub fn evaluate(&self, id: usize, point: &[f64]) -> Result<Complex64> {
        let (theta, phi) = check_chart(point)?;
        let (l, m) = self.lm(id);
        Ok(sph_harm(l, m, theta, phi))
    }

    pub fn synthesize(&self, f: &CoeffVec, point: &[f64]) -> Result<Complex64> {
        let (theta, phi) = check_chart(point)?;
        let mut acc = Complex64::ZERO;
        for (id, z) in f.iter() {
            let (l, m) = self.lm(id);
            acc += z * sph_harm(l, m, theta, phi);
        }
        Ok(acc)
    }

    /// Projection by Gauss-Legendre in cos(theta) times an equispaced
    /// azimuthal rule; exact for band-limited inputs when `n_theta >= lmax+1`
    /// and `n_phi >= 2 lmax + 1`.
    pub fn project_fn_with<F>(&self, f: F, n_theta: usize, n_phi: usize) -> Result<CoeffVec>
    where
        F: Fn(&[f64]) -> Complex64,
    {
        let need_t = self.lmax as usize + 1;
        let need_p = 2 * self.lmax as usize + 1;
        if n_theta < need_t {
            return Err(Error::GridResolution {
                need: need_t,
                got: n_theta,
            });
        }
        if n_phi < need_p {
            return Err(Error::GridResolution {
                need: need_p,
                got: n_phi,
            });
        }
        let (xs, ws) = gauss_legendre(n_theta);
        let (phis, dphi) = equispaced(n_phi, 2.0 * std::f64::consts::PI);
        // sample on the grid
        let mut samples = Vec::with_capacity(n_theta * n_phi);
        for (&x, &w) in xs.iter().zip(&ws) {
            let theta = x.clamp(-1.0, 1.0).acos();
            for &phi in &phis {
                samples.push((theta, phi, w * dphi, f(&[theta, phi])));
            }
        }
        let mut out = CoeffVec::zero(Arc::clone(&self.spectrum));
        for id in 0..self.spectrum.len() {
            let (l, m) = self.lm(id);
            let mut acc = Complex64::ZERO;
            for &(theta, phi, w, fx) in &samples {
                acc += fx * sph_harm(l, m, theta, phi).conj() * w;
            }
            if acc.norm() > 1e-13 {
                out.set(id, acc);
            }
        }
        Ok(out)
    }

    pub fn project_fn<F>(&self, f: F) -> Result<CoeffVec>
    where
        F: Fn(&[f64]) -> Complex64,
    {
        self.project_fn_with(f, self.lmax as usize + 1, 2 * self.lmax as usize + 1)
    }

    /// Canonical Gauss-Legendre x equispaced grid with quadrature weights,
    /// theta-major, in the order `project_samples` consumes.
    pub fn canonical_grid(&self) -> Vec<([f64; 2], f64)> {
        let n_theta = self.lmax as usize + 1;
        let n_phi = 2 * self.lmax as usize + 1;
        let (xs, ws) = gauss_legendre(n_theta);
        let (phis, dphi) = equispaced(n_phi, 2.0 * std::f64::consts::PI);
        let mut grid = Vec::with_capacity(n_theta * n_phi);
        for (&x, &w) in xs.iter().zip(&ws) {
            let theta = x.clamp(-1.0, 1.0).acos();
            for &phi in &phis {
                grid.push(([theta, phi], w * dphi));
            }
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
        let mut out = CoeffVec::zero(Arc::clone(&self.spectrum));
        for id in 0..self.spectrum.len() {
            let (l, m) = self.lm(id);
            let mut acc = Complex64::ZERO;
            for ((point, w), fx) in grid.iter().zip(samples) {
                acc += fx * sph_harm(l, m, point[0], point[1]).conj() * w;
            }
            if acc.norm() > 1e-13 {
                out.set(id, acc);
            }
        }
        Ok(out)
    }

    /// Pullback by the rotation with ZYZ Euler angles `(alpha, beta, gamma)`:
    /// blockwise Wigner-D mixing within each degree l.
    pub fn act(&self, alpha: f64, beta: f64, gamma: f64, f: &CoeffVec) -> Result<CoeffVec> {
        let mut out = CoeffVec::zero(Arc::clone(&self.spectrum));
        // group the support by degree, then apply D^l
        let mut by_l: BTreeMap<u32, Vec<(i32, Complex64)>> = BTreeMap::new();
        for (id, z) in f.iter() {
            let (l, m) = self.lm(id);
            by_l.entry(l).or_default().push((m, z));
        }
        for (l, modes) in by_l {
            for mp in -(l as i32)..=(l as i32) {
                let mut acc = Complex64::ZERO;
                for &(m, z) in &modes {
                    let d = wigner_d_matrix(
                        2 * l as i64,
                        2 * mp as i64,
                        2 * m as i64,
                        alpha,
                        beta,
                        gamma,
                    );
                    acc += d * z;
                }
                if acc.norm() > 0.0 {
                    let target = self.lookup_lm(l, mp).unwrap();
                    let prev = out.get(target);
                    out.set(target, prev + acc);
                }
            }
        }
        Ok(out)
    }

    /// Sparse coefficient matrix of the rotation pullback, rows indexed by
    /// input mode id.
    pub fn coefficient_matrix(
        &self,
        alpha: f64,
        beta: f64,
        gamma: f64,
    ) -> Vec<Vec<(usize, Complex64)>> {
        let mut rows = Vec::with_capacity(self.spectrum.len());
        for id in 0..self.spectrum.len() {
            let (l, m) = self.lm(id);
            let mut row = Vec::with_capacity(2 * l as usize + 1);
            for mp in -(l as i32)..=(l as i32) {
                let d = wigner_d_matrix(
                    2 * l as i64,
                    2 * mp as i64,
                    2 * m as i64,
                    alpha,
                    beta,
                    gamma,
                );
                if d.norm() > 0.0 {
                    row.push((self.lookup_lm(l, mp).unwrap(), d));
                }
            }
            rows.push(row);
        }
        rows
    }
}

fn check_chart(point: &[f64]) -> Result<(f64, f64)> {
    if point.len() != 2 {
        return Err(Error::ChartDomain(format!(
            "expected [theta, phi], got {point:?}"
        )));
    }
    let (theta, phi) = (point[0], point[1]);
    if !(0.0..=std::f64::consts::PI).contains(&theta)
        || !(0.0..2.0 * std::f64::consts::PI).contains(&phi)
    {
        return Err(Error::ChartDomain(format!(
            "(theta, phi) = ({theta}, {phi}) outside [0,pi] x [0,2pi)"
        )));
    }
    Ok((theta, phi))
}

/// Orthonormal complex spherical harmonic with Condon-Shortley phase.
pub fn sph_harm(l: u32, m: i32, theta: f64, phi: f64) -> Complex64 {
    let am = m.unsigned_abs();
    let p = assoc_legendre(l, am, theta.cos());
    let norm = norm_factor(l, am);
    let val = norm * p;
    // Y_l^{-|m|} = (-1)^|m| conj(Y_l^{|m|})
    let sign = if m < 0 && am % 2 == 1 { -1.0 } else { 1.0 };
    sign * val * Complex64::from_polar(1.0, m as f64 * phi)
}

fn norm_factor(l: u32, am: u32) -> f64 {
    let mut ratio = 1.0;
    // (l - |m|)! / (l + |m|)!
    for k in (l - am + 1)..=(l + am) {
        ratio /= k as f64;
    }
    ((2 * l + 1) as f64 / (4.0 * std::f64::consts::PI) * ratio).sqrt()
}

/// Associated Legendre P_l^m(x) for m >= 0, Condon-Shortley phase included.
fn assoc_legendre(l: u32, m: u32, x: f64) -> f64 {
    debug_assert!(m <= l);
    let somx2 = ((1.0 - x) * (1.0 + x)).max(0.0).sqrt();
    let mut pmm = 1.0;
    for k in 1..=m {
        pmm *= -((2 * k - 1) as f64) * somx2;
    }
    if l == m {
        return pmm;
    }
    let mut pmmp1 = x * (2 * m + 1) as f64 * pmm;
    if l == m + 1 {
        return pmmp1;
    }
    let mut pll = 0.0;
    for ll in (m + 2)..=l {
        pll = (x * (2 * ll - 1) as f64 * pmmp1 - (ll + m - 1) as f64 * pmm)
            / (ll - m) as f64;
        pmm = pmmp1;
        pmmp1 = pll;
    }
    pll
}
