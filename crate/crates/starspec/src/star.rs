//! The deformed product on truncated coefficient vectors, its defect
//! measurements, gauge automorphisms, and pullback morphisms.

use std::sync::Arc;

use num_complex::Complex64;

use crate::bases::{AnyBasis, IsometryAction};
use crate::error::{Error, Result};
use crate::spectral::{hs_norm, CoeffVec, FusionTensor, SobolevParams};
use crate::weights::{
    check_equivariance, check_gauge_cocycle, GaugeCharacter, GaugePhase, Weight,
};

/// What to do when a product channel falls outside the truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncationPolicy {
    /// Drop the lost channels; the tensor's leakage flags keep the account.
    HardTruncate,
    /// Refuse the product, listing the offending mode pairs.
    ErrorOnLeakage,
}

/// Defect threshold below which a precondition (gauge 1-cocycle,
/// equivariance) counts as satisfied.
pub const PRECONDITION_TOL: f64 = 1e-10;

/// A truncated spectral algebra: basis, fusion tensor and weight, with a
/// truncation policy for the product.
#[derive(Clone)]
pub struct DeformedAlgebra {
    basis: Arc<AnyBasis>,
    tensor: Arc<FusionTensor>,
    weight: Weight,
    policy: TruncationPolicy,
}

impl DeformedAlgebra {
    pub fn new(
        basis: Arc<AnyBasis>,
        tensor: Arc<FusionTensor>,
        weight: Weight,
        policy: TruncationPolicy,
    ) -> Result<DeformedAlgebra> {
        if !basis.spectrum().same_domain(tensor.spectrum()) {
            return Err(Error::SpectrumMismatch);
        }
        if !weight.compatible_with(basis.id()) {
            return Err(Error::InvalidArgument(format!(
                "weight {} does not apply to the {} backend",
                weight.describe(),
                basis.id()
            )));
        }
        Ok(DeformedAlgebra {
            basis,
            tensor,
            weight,
            policy,
        })
    }

    /// Build basis + tensor + algebra in one step.
    pub fn build(basis: AnyBasis, weight: Weight, policy: TruncationPolicy) -> Result<Self> {
        let tensor = Arc::new(basis.build_fusion(0.0));
        DeformedAlgebra::new(Arc::new(basis), tensor, weight, policy)
    }

    pub fn basis(&self) -> &AnyBasis {
        &self.basis
    }

    pub fn tensor(&self) -> &FusionTensor {
        &self.tensor
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn policy(&self) -> TruncationPolicy {
        self.policy
    }

    pub fn with_weight(&self, weight: Weight) -> Result<DeformedAlgebra> {
        DeformedAlgebra::new(
            Arc::clone(&self.basis),
            Arc::clone(&self.tensor),
            weight,
            self.policy,
        )
    }

    /// The deformed product: `(f * g)_e = sum_ab omega(a,b,e) f_a g_b C^e_ab`,
    /// iterating the sparse tensor over the supports of f and g.
    pub fn star(&self, f: &CoeffVec, g: &CoeffVec) -> Result<CoeffVec> {
        let sp = self.basis.spectrum();
        if !f.spectrum().same_domain(sp) || !g.spectrum().same_domain(sp) {
            return Err(Error::SpectrumMismatch);
        }
        let mut out = CoeffVec::zero(Arc::clone(sp));
        let mut leaking: Vec<(usize, usize)> = Vec::new();
        for (a, za) in f.iter() {
            for (b, zb) in g.iter() {
                let entry = match self.tensor.pair(a, b) {
                    Some(e) => e,
                    None => continue,
                };
                if entry.leaks {
                    leaking.push((a, b));
                    if self.policy == TruncationPolicy::ErrorOnLeakage {
                        continue; // keep collecting offenders for the report
                    }
                }
                let zab = za * zb;
                for &(e, c) in &entry.channels {
                    let w = self.weight.eval(sp, a, b, e);
                    let prev = out.get(e);
                    out.set(e, prev + w * zab * c);
                }
            }
        }
        if self.policy == TruncationPolicy::ErrorOnLeakage && !leaking.is_empty() {
            let examples = leaking
                .iter()
                .take(4)
                .map(|&(a, b)| format!("{}x{}", sp.label(a), sp.label(b)))
                .collect::<Vec<_>>()
                .join(", ");
            return Err(Error::Leakage {
                count: leaking.len(),
                examples,
            });
        }
        Ok(out)
    }

    /// The unique ratio r with `U_j * U_k = r (U_k * U_j)` for torus
    /// generators `U_j = phi_(e_j)`; for the shipped triphase weight this is
    /// the generator commutation phase `exp(2 pi i Theta_jk)`.
    pub fn commutation_ratio(&self, j: usize, k: usize) -> Result<Complex64> {
        let torus = match self.basis.as_ref() {
            AnyBasis::Torus(t) => t,
            _ => {
                return Err(Error::InvalidArgument(
                    "commutation ratio is defined on the torus backend".into(),
                ))
            }
        };
        let d = torus.dim();
        if j >= d || k >= d {
            return Err(Error::InvalidArgument(format!(
                "generator index out of range for d={d}"
            )));
        }
        let mut ej = vec![0i32; d];
        ej[j] = 1;
        let mut ek = vec![0i32; d];
        ek[k] = 1;
        let sp = self.basis.spectrum();
        let uj = CoeffVec::single(
            Arc::clone(sp),
            torus.lookup_mode(&ej).expect("generator within truncation"),
            Complex64::ONE,
        );
        let uk = CoeffVec::single(
            Arc::clone(sp),
            torus.lookup_mode(&ek).expect("generator within truncation"),
            Complex64::ONE,
        );
        let jk = self.star(&uj, &uk)?;
        let kj = self.star(&uk, &uj)?;
        let mut sum: Vec<i32> = vec![0; d];
        sum[j] += 1;
        sum[k] += 1;
        let channel = torus
            .lookup_mode(&sum)
            .expect("product channel within truncation");
        let denom = kj.get(channel);
        if denom == Complex64::ZERO {
            return Err(Error::InvalidArgument("zero product channel".into()));
        }
        Ok(jk.get(channel) / denom)
    }

    /// `|| (f*g)*h - f*(g*h) ||_{H^s}`. Inputs must be band-limited to a
    /// third of the truncation so both double products are leakage-free.
    pub fn associativity_defect(
        &self,
        f: &CoeffVec,
        g: &CoeffVec,
        h: &CoeffVec,
        s: SobolevParams,
    ) -> Result<f64> {
        let left = self.star(&self.star(f, g)?, h)?;
        let right = self.star(f, &self.star(g, h)?)?;
        Ok(hs_norm(&left.sub(&right), s))
    }

    /// `|| (f*g)^* - g^* * f^* ||_{H^s}` together with the weight's
    /// Hermitian-symmetry claim; when the claim is false the defect is
    /// reported but not guaranteed to vanish.
    pub fn involution_defect(
        &self,
        f: &CoeffVec,
        g: &CoeffVec,
        s: SobolevParams,
    ) -> Result<(f64, bool)> {
        let prod = self.star(f, g)?;
        let lhs = prod.involution()?;
        let rhs = self.star(&g.involution()?, &f.involution()?)?;
        Ok((hs_norm(&lhs.sub(&rhs), s), self.weight.claims_hermitian()))
    }

    /// Diagonal automorphism `f_a -> chi(a) f_a`; requires chi to pass the
    /// fusion 1-cocycle check on this tensor.
    pub fn gauge_automorphism(&self, chi: &GaugeCharacter, f: &CoeffVec) -> Result<CoeffVec> {
        let defect = check_gauge_cocycle(chi, &self.tensor);
        if defect > PRECONDITION_TOL {
            return Err(Error::GaugeCocycle { defect });
        }
        Ok(self.apply_character(chi, f))
    }

    fn apply_character(&self, chi: &GaugeCharacter, f: &CoeffVec) -> CoeffVec {
        let sp = self.basis.spectrum();
        let entries: Vec<(usize, Complex64)> =
            f.iter().map(|(i, z)| (i, chi.eval(sp, i) * z)).collect();
        CoeffVec::from_entries(Arc::clone(sp), entries)
    }

    /// Infinitesimal gauge generator: `(d/dt) gamma_{exp(i t theta)} f` at
    /// t = 0, i.e. `f_a -> i theta(a) f_a`.
    pub fn gauge_generator(&self, theta: &GaugePhase, f: &CoeffVec) -> CoeffVec {
        let sp = self.basis.spectrum();
        let entries: Vec<(usize, Complex64)> = f
            .iter()
            .map(|(i, z)| (i, Complex64::new(0.0, theta.eval(sp, i)) * z))
            .collect();
        CoeffVec::from_entries(Arc::clone(sp), entries)
    }

    /// Equivariance defect of this algebra's weight under `h`.
    pub fn equivariance_defect(&self, h: &IsometryAction) -> Result<f64> {
        check_equivariance(&self.weight, &self.basis, h, &self.tensor)
    }

    /// Pullback of coefficients by the isometry, guarded by the equivariance
    /// criterion at the precondition tolerance.
    pub fn pullback(&self, h: &IsometryAction, f: &CoeffVec) -> Result<CoeffVec> {
        let defect = self.equivariance_defect(h)?;
        if defect > PRECONDITION_TOL {
            return Err(Error::Equivariance { defect });
        }
        self.basis.act(h, f)
    }

    /// `|| act(h, f*g) - act(h,f) * act(h,g) ||_{H^s}` for an equivariant
    /// weight; the pullback is a *-homomorphism, so this stays at numerical
    /// noise for leakage-free inputs.
    pub fn pullback_homomorphism_defect(
        &self,
        h: &IsometryAction,
        f: &CoeffVec,
        g: &CoeffVec,
        s: SobolevParams,
    ) -> Result<f64> {
        let defect = self.equivariance_defect(h)?;
        if defect > PRECONDITION_TOL {
            return Err(Error::Equivariance { defect });
        }
        let lhs = self.basis.act(h, &self.star(f, g)?)?;
        let rhs = self.star(&self.basis.act(h, f)?, &self.basis.act(h, g)?)?;
        Ok(hs_norm(&lhs.sub(&rhs), s))
    }

    /// Deterministic band-limited test vector: coefficients live on modes of
    /// degree at most `max_degree`.
    pub fn random_band_limited(
        &self,
        seed: u64,
        decay: f64,
        max_degree: u32,
    ) -> Result<CoeffVec> {
        crate::spectral::random_coeff_vec_filtered(self.basis.spectrum(), seed, decay, |id| {
            self.basis.mode_degree(id) <= max_degree
        })
    }
}


#[cfg(test)]
mod torus_3d_tests {
    use super::*;
    use crate::bases::TorusBasis;
    use crate::weights::SkewMatrix;

    #[test]
    fn three_dimensional_lattice_deformation() {
        let j = SkewMatrix::new(vec![
            vec![0.0, 0.2, -0.1],
            vec![-0.2, 0.0, 0.4],
            vec![0.1, -0.4, 0.0],
        ])
        .unwrap();
        let basis = AnyBasis::Torus(TorusBasis::unit(3, 3).unwrap());
        let alg = DeformedAlgebra::build(
            basis,
            Weight::torus_triphase(j.clone()),
            TruncationPolicy::HardTruncate,
        )
        .unwrap();
        // generator relations across all pairs
        for jj in 0..3 {
            for kk in 0..3 {
                let r = alg.commutation_ratio(jj, kk).unwrap();
                let expect = Complex64::from_polar(
                    1.0,
                    2.0 * std::f64::consts::PI * j.entry(jj, kk),
                );
                assert!((r - expect).norm() < 1e-13, "pair ({jj},{kk})");
            }
        }
        // cocycle (on the lighter N = 2 tensor) and associativity at roundoff
        let small = TorusBasis::unit(3, 2).unwrap().build_fusion(0.0);
        let d = crate::weights::check_square_cocycle(alg.weight(), &small);
        assert!(d.square_cocycle_defect <= 1e-12);
        let f = alg.random_band_limited(1, 1.0, 1).unwrap();
        let g = alg.random_band_limited(2, 1.0, 1).unwrap();
        let h = alg.random_band_limited(3, 1.0, 1).unwrap();
        let defect = alg
            .associativity_defect(&f, &g, &h, SobolevParams::new(0.0))
            .unwrap();
        assert!(defect <= 1e-12);
        // signed 3-permutations that fix J are accepted, others rejected
        let cycle = IsometryAction::TorusMap {
            matrix: vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]],
            translation: vec![0.0; 3],
        };
        let defect = alg.equivariance_defect(&cycle).unwrap();
        assert!(defect > 1e-6, "cyclic permutation should move this J");
        let ident = IsometryAction::translation(vec![0.1, 0.7, 0.3]);
        assert!(alg.equivariance_defect(&ident).unwrap() <= 1e-12);
    }
}
