//! Domain types shared by every geometry: spectral labels, truncated
//! coefficient vectors, fusion tensors, and the Sobolev-norm machinery.

mod coeff;
mod fusion;
mod label;
mod random;
mod sobolev;
mod spectrum;

pub use coeff::CoeffVec;
pub use fusion::{FusionTensor, PairEntry};
pub use label::{BackendId, SpectralLabel};
pub use random::{random_coeff_vec, random_coeff_vec_filtered, SplitMix64};
pub use sobolev::{dyadic_block, dyadic_project, hs_norm, max_dyadic_block, SobolevParams};
pub use spectrum::Spectrum;

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use num_complex::Complex64;

    use super::*;

    fn toy_spectrum() -> Arc<Spectrum> {
        // 1-d torus-like toy: labels -2..=2, lambda = n^2, conj = negation
        let items: Vec<(SpectralLabel, f64)> = (-2..=2)
            .map(|n: i32| (SpectralLabel::Torus(vec![n]), (n * n) as f64))
            .collect();
        Spectrum::new(BackendId::Torus, items, "toy".into(), |l| match l {
            SpectralLabel::Torus(n) => (
                SpectralLabel::Torus(n.iter().map(|c| -c).collect()),
                Complex64::ONE,
            ),
            _ => unreachable!(),
        })
    }

    #[test]
    fn hs_norm_single_mode() {
        // single mode with lambda = 2, s = 2 -> (1+2)^(2/2)... sqrt((1+2)^2) = 3
        let items = vec![
            (SpectralLabel::Torus(vec![0]), 0.0),
            (SpectralLabel::Torus(vec![1]), 2.0),
            (SpectralLabel::Torus(vec![-1]), 2.0),
        ];
        let sp = Spectrum::new(BackendId::Torus, items, "toy".into(), |l| match l {
            SpectralLabel::Torus(n) => (
                SpectralLabel::Torus(n.iter().map(|c| -c).collect()),
                Complex64::ONE,
            ),
            _ => unreachable!(),
        });
        let id = sp.lookup(&SpectralLabel::Torus(vec![1])).unwrap();
        let f = CoeffVec::single(Arc::clone(&sp), id, Complex64::ONE);
        assert!((hs_norm(&f, SobolevParams::new(2.0)) - 3.0).abs() < 1e-15);
        let zero = CoeffVec::zero(sp);
        assert_eq!(hs_norm(&zero, SobolevParams::new(2.0)), 0.0);
    }

    #[test]
    fn hs_norm_two_modes_hand_sum() {
        // coefficients 1 at lambda = 0 and lambda = 2, s = 1:
        // sqrt((1+0)*1 + (1+2)*1) = sqrt(4) = 2  (hand sum of the definition)
        let items = vec![
            (SpectralLabel::Torus(vec![0]), 0.0),
            (SpectralLabel::Torus(vec![1]), 2.0),
            (SpectralLabel::Torus(vec![-1]), 2.0),
        ];
        let sp = Spectrum::new(BackendId::Torus, items, "toy".into(), |l| match l {
            SpectralLabel::Torus(n) => (
                SpectralLabel::Torus(n.iter().map(|c| -c).collect()),
                Complex64::ONE,
            ),
            _ => unreachable!(),
        });
        let i0 = sp.lookup(&SpectralLabel::Torus(vec![0])).unwrap();
        let i1 = sp.lookup(&SpectralLabel::Torus(vec![1])).unwrap();
        let f = CoeffVec::from_entries(sp, [(i0, Complex64::ONE), (i1, Complex64::ONE)]);
        assert!((hs_norm(&f, SobolevParams::new(1.0)) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn hs_norm_monotone_in_order() {
        let sp = toy_spectrum();
        let f = random_coeff_vec(&sp, 7, 1.0).unwrap();
        let n0 = hs_norm(&f, SobolevParams::new(0.5));
        let n1 = hs_norm(&f, SobolevParams::new(1.5));
        assert!(n0 <= n1 + 1e-15);
    }

    #[test]
    fn dyadic_blocks_and_reconstruction() {
        assert_eq!(dyadic_block(0.0), 0); // 1 + 0 = 2^0
        assert_eq!(dyadic_block(5.0), 2); // 1 + 5 = 6 in [4, 8)
        let sp = toy_spectrum();
        let f = random_coeff_vec(&sp, 3, 0.5).unwrap();
        let jmax = max_dyadic_block(&f).unwrap();
        let mut sum = CoeffVec::zero(Arc::clone(&sp));
        for j in 0..=jmax {
            let block = dyadic_project(&f, j);
            // disjoint supports
            for (i, _) in block.iter() {
                assert_eq!(dyadic_block(sp.eigenvalue(i)), j);
            }
            sum = sum.add(&block);
        }
        assert_eq!(sum.max_abs_diff(&f), 0.0);
    }

    #[test]
    fn norm_equivalence_blockwise() {
        // hs^2 within factor 4^|s| of sum_j 2^(j s) * ||P_j f||^2 for the
        // sharp blocks 2^j <= 1 + lambda < 2^(j+1)
        let sp = toy_spectrum();
        let f = random_coeff_vec(&sp, 11, 0.3).unwrap();
        for &s in &[-1.5, 0.0, 1.0, 2.0] {
            let hs2 = hs_norm(&f, SobolevParams::new(s)).powi(2);
            let mut block_sum = 0.0;
            for j in 0..=max_dyadic_block(&f).unwrap() {
                let pj = dyadic_project(&f, j);
                let l2 = hs_norm(&pj, SobolevParams::new(0.0));
                block_sum += (2.0_f64).powf(j as f64 * s) * l2 * l2;
            }
            if hs2 == 0.0 {
                assert_eq!(block_sum, 0.0);
                continue;
            }
            let factor = 4.0_f64.powf(s.abs());
            let ratio = hs2 / block_sum;
            assert!(ratio <= factor + 1e-12 && ratio >= 1.0 / factor - 1e-12);
        }
    }

    #[test]
    fn involution_is_antilinear_involution() {
        let sp = toy_spectrum();
        let f = random_coeff_vec(&sp, 1, 0.7).unwrap();
        let g = random_coeff_vec(&sp, 2, 0.7).unwrap();
        let a = Complex64::new(0.3, -1.2);
        // involution(a f + g) = conj(a) involution(f) + involution(g)
        let lhs = f.scale(a).add(&g).involution().unwrap();
        let rhs = f.involution().unwrap().scale(a.conj()).add(&g.involution().unwrap());
        assert!(lhs.max_abs_diff(&rhs) < 1e-15);
        // involution^2 = id
        let back = lhs.involution().unwrap();
        assert!(back.max_abs_diff(&f.scale(a).add(&g)) < 1e-15);
    }

    #[test]
    fn random_vec_determinism_and_decay() {
        let sp = toy_spectrum();
        let f1 = random_coeff_vec(&sp, 42, 2.0).unwrap();
        let f2 = random_coeff_vec(&sp, 42, 2.0).unwrap();
        assert_eq!(f1.max_abs_diff(&f2), 0.0);
        let f3 = random_coeff_vec(&sp, 43, 2.0).unwrap();
        assert!(f1.max_abs_diff(&f3) > 0.0);
        // hs norm decreases when decay increases (same seed draws)
        let lo = random_coeff_vec(&sp, 42, 1.0).unwrap();
        let hi = random_coeff_vec(&sp, 42, 3.0).unwrap();
        let s = SobolevParams::new(1.0);
        assert!(hs_norm(&hi, s) <= hs_norm(&lo, s));
        assert!(random_coeff_vec(&sp, 1, 0.0).is_err());
        assert!(random_coeff_vec(&sp, 1, -1.0).is_err());
    }

    #[test]
    fn hs_norm_triangle_inequality_and_homogeneity() {
        let sp = toy_spectrum();
        let s = SobolevParams::new(1.3);
        for seed in 0..20u64 {
            let f = random_coeff_vec(&sp, seed, 0.8).unwrap();
            let g = random_coeff_vec(&sp, seed + 100, 0.8).unwrap();
            let nf = hs_norm(&f, s);
            let ng = hs_norm(&g, s);
            let nsum = hs_norm(&f.add(&g), s);
            assert!(nsum <= nf + ng + 1e-12);
            let a = Complex64::new(-2.5, 1.0);
            assert!((hs_norm(&f.scale(a), s) - a.norm() * nf).abs() < 1e-12 * (1.0 + nf));
        }
    }
}
