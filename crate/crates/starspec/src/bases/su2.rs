//! SU(2) = S^3 with the bi-invariant metric normalized so that
//! `lambda_l = 4 l (l + 1)`. Eigenfunctions are the Wigner matrix elements
//! `t^l_{mn}` scaled by `sqrt(2l + 1)`, orthonormal under normalized Haar
//! measure; fusion is a product of two Clebsch-Gordan factors.
//!
//! Euler-angle chart `(phi, theta, psi)` with `phi, psi` in `[0, 4 pi)` so
//! half-integer representations are single-valued; the Haar weight is
//! `sin(theta) / (32 pi^2)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{BackendId, CoeffVec, FusionTensor, PairEntry, SpectralLabel, Spectrum};

use super::quadrature::{equispaced, gauss_legendre};
use super::rotation::wigner_small_d;
use super::wigner::clebsch_gordan_doubled;

const FOUR_PI: f64 = 4.0 * std::f64::consts::PI;

#[derive(Debug, Clone)]
pub struct Su2Basis {
    two_lmax: u32,
    spectrum: Arc<Spectrum>,
}

impl Su2Basis {
    /// `two_lmax` is the doubled spin truncation (2 l_max), so half-integer
    /// truncations stay exact.
    pub fn new(two_lmax: u32) -> Su2Basis {
        let mut items = Vec::new();
        for two_l in 0..=two_lmax {
            let lambda = (two_l * (two_l + 2)) as f64; // 4 l (l + 1)
            let tl = two_l as i32;
            for two_m in (-tl..=tl).step_by(2) {
                for two_n in (-tl..=tl).step_by(2) {
                    items.push((
                        SpectralLabel::Su2 {
                            two_l,
                            two_m,
                            two_n,
                        },
                        lambda,
                    ));
                }
            }
        }
        let spectrum = Spectrum::new(
            BackendId::Su2,
            items,
            format!("two_lmax={two_lmax}"),
            |label| match *label {
                SpectralLabel::Su2 {
                    two_l,
                    two_m,
                    two_n,
                } => {
                    // conj(D^l_{mn}) = (-1)^(m-n) D^l_{-m,-n}; m - n is integer
                    let c = if ((two_m - two_n) / 2).rem_euclid(2) == 0 {
                        1.0
                    } else {
                        -1.0
                    };
                    (
                        SpectralLabel::Su2 {
                            two_l,
                            two_m: -two_m,
                            two_n: -two_n,
                        },
                        Complex64::new(c, 0.0),
                    )
                }
                _ => unreachable!(),
            },
        );
        Su2Basis { two_lmax, spectrum }
    }

    pub fn two_lmax(&self) -> u32 {
        self.two_lmax
    }

    pub fn spectrum(&self) -> &Arc<Spectrum> {
        &self.spectrum
    }

    fn lmn(&self, id: usize) -> (u32, i32, i32) {
        match *self.spectrum.label(id) {
            SpectralLabel::Su2 {
                two_l,
                two_m,
                two_n,
            } => (two_l, two_m, two_n),
            _ => unreachable!(),
        }
    }

    pub fn lookup_lmn(&self, two_l: u32, two_m: i32, two_n: i32) -> Option<usize> {
        self.spectrum.lookup(&SpectralLabel::Su2 {
            two_l,
            two_m,
            two_n,
        })
    }

    /// Doubled spin 2l; the band-limiting degree.
    pub fn mode_degree(&self, id: usize) -> u32 {
        self.lmn(id).0
    }

    pub fn max_degree(&self) -> u32 {
        self.two_lmax
    }

    pub fn build_fusion(&self, drop_tol: f64) -> FusionTensor {
        let len = self.spectrum.len();
        let mut pairs = BTreeMap::new();
        for a in 0..len {
            let (tl1, tm1, tn1) = self.lmn(a);
            for b in 0..len {
                let (tl2, tm2, tn2) = self.lmn(b);
                let tm = tm1 + tm2;
                let tn = tn1 + tn2;
                let lo = tl1.abs_diff(tl2);
                let hi = tl1 + tl2;
                let leaks = hi > self.two_lmax;
                let mut channels = Vec::new();
                let mut tl = lo;
                while tl <= hi.min(self.two_lmax) {
                    if tm.unsigned_abs() <= tl && tn.unsigned_abs() <= tl {
                        let cg_m = clebsch_gordan_doubled(
                            tl1 as i64, tm1 as i64, tl2 as i64, tm2 as i64, tl as i64, tm as i64,
                        );
                        let cg_n = clebsch_gordan_doubled(
                            tl1 as i64, tn1 as i64, tl2 as i64, tn2 as i64, tl as i64, tn as i64,
                        );
                        // sqrt((2l1+1)(2l2+1)/(2l+1)) from the sqrt(2l+1)
                        // normalization of the basis
                        let norm = (((tl1 + 1) as f64 * (tl2 + 1) as f64)
                            / (tl + 1) as f64)
                            .sqrt();
                        let c = norm * cg_m * cg_n;
                        if c.abs() > drop_tol && c != 0.0 {
                            let g = self
                                .lookup_lmn(tl, tm, tn)
                                .expect("channel within truncation");
                            channels.push((g, Complex64::new(c, 0.0)));
                        }
                    }
                    tl += 2;
                }
                channels.sort_by_key(|&(g, _)| g);
                pairs.insert((a, b), PairEntry { channels, leaks });
            }
        }
        FusionTensor::from_pairs(Arc::clone(&self.spectrum), drop_tol, pairs)
    }

    /// Orthonormal matrix element at Euler angles `point = [phi, theta, psi]`.
    pub fn evaluate(&self, id: usize, point: &[f64]) -> Result<Complex64> {
        let (phi, theta, psi) = check_chart(point)?;
        let (tl, tm, tn) = self.lmn(id);
        Ok(mode_value(tl, tm, tn, phi, theta, psi))
    }

    pub fn synthesize(&self, f: &CoeffVec, point: &[f64]) -> Result<Complex64> {
        let (phi, theta, psi) = check_chart(point)?;
        let mut acc = Complex64::ZERO;
        for (id, z) in f.iter() {
            let (tl, tm, tn) = self.lmn(id);
            acc += z * mode_value(tl, tm, tn, phi, theta, psi);
        }
        Ok(acc)
    }

    /// Projection by the product Euler-angle rule: Gauss-Legendre in
    /// cos(theta), equispaced in phi and psi over [0, 4 pi).
    pub fn project_fn_with<F>(&self, f: F, n_theta: usize, n_angle: usize) -> Result<CoeffVec>
    where
        F: Fn(&[f64]) -> Complex64,
    {
        let need_t = self.two_lmax as usize / 2 + 1;
        let need_a = 2 * self.two_lmax as usize + 1;
        if n_theta < need_t {
            return Err(Error::GridResolution {
                need: need_t,
                got: n_theta,
            });
        }
        if n_angle < need_a {
            return Err(Error::GridResolution {
                need: need_a,
                got: n_angle,
            });
        }
        let (xs, ws) = gauss_legendre(n_theta);
        let (angles, _) = equispaced(n_angle, FOUR_PI);
        // normalized Haar: (1 / 32 pi^2) sin(theta) dphi dtheta dpsi over
        // [0,4pi) x [0,pi] x [0,4pi); the equispaced cells give
        // (4 pi / n)^2, so the total prefactor is w_theta / (2 n^2)
        let cell = 1.0 / (2.0 * n_angle as f64 * n_angle as f64);
        let mut samples = Vec::with_capacity(n_theta * n_angle * n_angle);
        for (&x, &w) in xs.iter().zip(&ws) {
            let theta = x.clamp(-1.0, 1.0).acos();
            for &phi in &angles {
                for &psi in &angles {
                    samples.push((phi, theta, psi, w * cell, f(&[phi, theta, psi])));
                }
            }
        }
        let mut out = CoeffVec::zero(Arc::clone(&self.spectrum));
        for id in 0..self.spectrum.len() {
            let (tl, tm, tn) = self.lmn(id);
            let mut acc = Complex64::ZERO;
            for &(phi, theta, psi, w, fx) in &samples {
                acc += fx * mode_value(tl, tm, tn, phi, theta, psi).conj() * w;
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
        self.project_fn_with(
            f,
            self.two_lmax as usize / 2 + 1,
            2 * self.two_lmax as usize + 1,
        )
    }

    /// Canonical product Euler-angle grid with Haar weights, in the order
    /// `project_samples` consumes (theta-major, then phi, then psi).
    pub fn canonical_grid(&self) -> Vec<([f64; 3], f64)> {
        let n_theta = self.two_lmax as usize / 2 + 1;
        let n_angle = 2 * self.two_lmax as usize + 1;
        let (xs, ws) = gauss_legendre(n_theta);
        let (angles, _) = equispaced(n_angle, FOUR_PI);
        let cell = 1.0 / (2.0 * n_angle as f64 * n_angle as f64);
        let mut grid = Vec::with_capacity(n_theta * n_angle * n_angle);
        for (&x, &w) in xs.iter().zip(&ws) {
            let theta = x.clamp(-1.0, 1.0).acos();
            for &phi in &angles {
                for &psi in &angles {
                    grid.push(([phi, theta, psi], w * cell));
                }
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
            let (tl, tm, tn) = self.lmn(id);
            let mut acc = Complex64::ZERO;
            for ((point, w), fx) in grid.iter().zip(samples) {
                acc += fx * mode_value(tl, tm, tn, point[0], point[1], point[2]).conj() * w;
            }
            if acc.norm() > 1e-13 {
                out.set(id, acc);
            }
        }
        Ok(out)
    }

    /// Pullback by the maximal-torus translation pair: left translation by
    /// angle `left` and right translation by angle `right` act diagonally,
    /// `f(l,m,n) -> exp(i (m left - n right)) f(l,m,n)`; pointwise this is
    /// `f(phi, theta, psi) -> f(phi - left, theta, psi + right)`.
    pub fn act(&self, left: f64, right: f64, f: &CoeffVec) -> Result<CoeffVec> {
        let mut out = CoeffVec::zero(Arc::clone(&self.spectrum));
        for (id, z) in f.iter() {
            let (_, tm, tn) = self.lmn(id);
            let phase = 0.5 * (tm as f64) * left - 0.5 * (tn as f64) * right;
            out.set(id, z * Complex64::from_polar(1.0, phase));
        }
        Ok(out)
    }

    pub fn coefficient_matrix(&self, left: f64, right: f64) -> Vec<Vec<(usize, Complex64)>> {
        (0..self.spectrum.len())
            .map(|id| {
                let (_, tm, tn) = self.lmn(id);
                let phase = 0.5 * (tm as f64) * left - 0.5 * (tn as f64) * right;
                vec![(id, Complex64::from_polar(1.0, phase))]
            })
            .collect()
    }
}

fn check_chart(point: &[f64]) -> Result<(f64, f64, f64)> {
    if point.len() != 3 {
        return Err(Error::ChartDomain(format!(
            "expected [phi, theta, psi], got {point:?}"
        )));
    }
    let (phi, theta, psi) = (point[0], point[1], point[2]);
    if !(0.0..FOUR_PI).contains(&phi)
        || !(0.0..=std::f64::consts::PI).contains(&theta)
        || !(0.0..FOUR_PI).contains(&psi)
    {
        return Err(Error::ChartDomain(format!(
            "({phi}, {theta}, {psi}) outside [0,4pi) x [0,pi] x [0,4pi)"
        )));
    }
    Ok((phi, theta, psi))
}

fn mode_value(tl: u32, tm: i32, tn: i32, phi: f64, theta: f64, psi: f64) -> Complex64 {
    let d = wigner_small_d(tl as i64, tm as i64, tn as i64, theta);
    let norm = ((tl + 1) as f64).sqrt();
    let m = tm as f64 / 2.0;
    let n = tn as f64 / 2.0;
    norm * d * Complex64::from_polar(1.0, -m * phi - n * psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{hs_norm, random_coeff_vec, SobolevParams, SplitMix64};

    #[test]
    fn eigenvalues_are_4_l_l_plus_1() {
        let b = Su2Basis::new(3);
        for id in 0..b.spectrum().len() {
            let (tl, _, _) = b.lmn(id);
            let l = tl as f64 / 2.0;
            assert_eq!(b.spectrum().eigenvalue(id), 4.0 * l * (l + 1.0));
        }
        // label count: sum over 2l of (2l+1)^2
        assert_eq!(b.spectrum().len(), 1 + 4 + 9 + 16);
    }

    #[test]
    fn quadrature_orthonormality() {
        let b = Su2Basis::new(2);
        for a in 0..b.spectrum().len() {
            let row = b.project_fn(|p| b.evaluate(a, p).unwrap()).unwrap();
            for c in 0..b.spectrum().len() {
                let expect = if a == c { 1.0 } else { 0.0 };
                assert!(
                    (row.get(c) - Complex64::new(expect, 0.0)).norm() < 1e-10,
                    "<{a},{c}> = {}",
                    row.get(c)
                );
            }
        }
    }

    #[test]
    fn projection_round_trip() {
        let b = Su2Basis::new(2);
        let f = random_coeff_vec(b.spectrum(), 41, 1.0).unwrap();
        let g = b.project_fn(|p| b.synthesize(&f, p).unwrap()).unwrap();
        assert!(g.max_abs_diff(&f) < 1e-10);
    }

    #[test]
    fn fusion_matches_pointwise_product() {
        // phi_a phi_b synthesized and projected must equal the CG-built
        // channels; grid sized for the product bandwidth
        let b = Su2Basis::new(2);
        let fusion = b.build_fusion(0.0);
        let big = Su2Basis::new(4);
        for (a, b_id) in [(1usize, 2usize), (3, 7), (0, 5), (6, 6)] {
            let (tl1, tm1, tn1) = b.lmn(a);
            let (tl2, tm2, tn2) = b.lmn(b_id);
            let prod = big
                .project_fn(|p| {
                    mode_value(tl1, tm1, tn1, p[0], p[1], p[2])
                        * mode_value(tl2, tm2, tn2, p[0], p[1], p[2])
                })
                .unwrap();
            // compare channelwise against the sparse tensor
            for (g_big, z) in prod.iter() {
                let (tl, tm, tn) = big.lmn(g_big);
                let expect = match b.lookup_lmn(tl, tm, tn) {
                    Some(g) => fusion.coefficient(a, b_id, g),
                    None => {
                        assert!(fusion.leaks(a, b_id), "unexpected out-of-range channel");
                        continue;
                    }
                };
                assert!(
                    (z - expect).norm() < 1e-10,
                    "channel ({tl},{tm},{tn}): {z} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn hermitian_symmetry() {
        let b = Su2Basis::new(3);
        let fusion = b.build_fusion(0.0);
        assert!(fusion.hermitian_defect() < 1e-12);
    }

    #[test]
    fn involution_on_projected_real_function() {
        let b = Su2Basis::new(2);
        let f = b
            .project_fn(|p| {
                Complex64::new(
                    1.0 + p[1].cos() + 0.5 * (p[0] / 2.0).cos() * (p[2] / 2.0).sin(),
                    0.0,
                )
            })
            .unwrap();
        let fi = f.involution().unwrap();
        assert!(fi.max_abs_diff(&f) < 1e-12);
    }

    #[test]
    fn torus_translation_matches_pointwise_shift() {
        let b = Su2Basis::new(2);
        let f = random_coeff_vec(b.spectrum(), 3, 1.0).unwrap();
        let (left, right) = (0.8, 1.9);
        let g = b.act(left, right, &f).unwrap();
        let s0 = SobolevParams::new(0.0);
        assert!((hs_norm(&g, s0) - hs_norm(&f, s0)).abs() < 1e-12);
        let mut rng = SplitMix64::new(8);
        for _ in 0..12 {
            let phi = rng.next_f64() * FOUR_PI;
            let theta = rng.next_f64() * std::f64::consts::PI;
            let psi = rng.next_f64() * FOUR_PI;
            let lhs = b.synthesize(&g, &[phi, theta, psi]).unwrap();
            let rhs = b
                .synthesize(
                    &f,
                    &[
                        (phi - left).rem_euclid(FOUR_PI),
                        theta,
                        (psi + right).rem_euclid(FOUR_PI),
                    ],
                )
                .unwrap();
            assert!((lhs - rhs).norm() < 1e-10);
        }
    }
}
