//! Weight families omega(a, b, g) on admissible fusion triples, the group
//! operations on them, gauge characters, and the defect diagnostics filled
//! in by the checks.

mod checks;

pub use checks::{
    check_admissible, check_equivariance, check_gauge_cocycle, check_square_cocycle,
    check_summed_cocycle, estimate_log_lipschitz,
};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{BackendId, SpectralLabel, SplitMix64, Spectrum};

const PI: f64 = std::f64::consts::PI;

/// Real skew-symmetric matrix, validated at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewMatrix {
    entries: Vec<Vec<f64>>,
}

impl SkewMatrix {
    pub fn new(entries: Vec<Vec<f64>>) -> Result<SkewMatrix> {
        let d = entries.len();
        if entries.iter().any(|row| row.len() != d) {
            return Err(Error::InvalidArgument("skew matrix must be square".into()));
        }
        for i in 0..d {
            for j in 0..d {
                if (entries[i][j] + entries[j][i]).abs() > 1e-14 {
                    return Err(Error::InvalidArgument(
                        "matrix is not skew-symmetric: J + J^T != 0".into(),
                    ));
                }
            }
        }
        Ok(SkewMatrix { entries })
    }

    /// The standard 2x2 block `[[0, theta], [-theta, 0]]`.
    pub fn theta_2d(theta: f64) -> SkewMatrix {
        SkewMatrix {
            entries: vec![vec![0.0, theta], vec![-theta, 0.0]],
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }

    pub fn scale(&self, t: f64) -> SkewMatrix {
        SkewMatrix {
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|&x| t * x).collect())
                .collect(),
        }
    }

    /// Bilinear form `x . J y`.
    pub fn pair(&self, x: &[i32], y: &[i32]) -> f64 {
        let mut acc = 0.0;
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &jij) in row.iter().enumerate() {
                acc += x[i] as f64 * jij * y[j] as f64;
            }
        }
        acc
    }
}

/// The shipped weight families and the group operations closing over them.
#[derive(Debug, Clone)]
pub enum WeightFamily {
    /// omega = 1: the undeformed product.
    One,
    /// omega = exp(i c (lambda_a + lambda_b - lambda_g)); eigenvalue-only,
    /// so equivariant under every isometry, but it violates the Hermitian
    /// symmetry axiom whenever the phase is nonzero.
    EigenvaluePhase { c: f64 },
    /// Torus three-term phase exp(-pi i [a.Jb + b.Jg + g.Ja]) on lattice
    /// labels. Restricted to the 2-face g = a + b this is the bicharacter
    /// exp(+pi i a.Jb), and the generators obey
    /// `U_j * U_k = exp(2 pi i J_jk) U_k * U_j`.
    TorusTriphase { j: SkewMatrix },
    /// The 2-face bicharacter sigma(a, b) = exp(+pi i a.Jb) by itself,
    /// defined only on additive fusion; the independent second route for
    /// the coefficient-identity experiment.
    Bicharacter2Face { j: SkewMatrix },
    /// SU(2) phase exp(-pi i [m1(n2-n3) + m2(n3-n1) + m3(n1-n2)]),
    /// antisymmetric under permutation of the three labels.
    Su2Phase,
    /// Pointwise product of two weights.
    Product(Box<Weight>, Box<Weight>),
    /// Pointwise complex conjugate (the group inverse).
    Conjugate(Box<Weight>),
    /// base * exp(i eps r(a,b,g)) with seeded noise r antisymmetric under
    /// a <-> b; injects a controlled cocycle violation for detection tests.
    Perturbed {
        base: Box<Weight>,
        eps: f64,
        seed: u64,
    },
}

#[derive(Debug, Clone)]
pub struct Weight {
    family: WeightFamily,
}

impl Weight {
    pub fn new(family: WeightFamily) -> Weight {
        Weight { family }
    }

    pub fn one() -> Weight {
        Weight::new(WeightFamily::One)
    }

    pub fn eigenvalue_phase(c: f64) -> Weight {
        Weight::new(WeightFamily::EigenvaluePhase { c })
    }

    pub fn torus_triphase(j: SkewMatrix) -> Weight {
        Weight::new(WeightFamily::TorusTriphase { j })
    }

    pub fn bicharacter(j: SkewMatrix) -> Weight {
        Weight::new(WeightFamily::Bicharacter2Face { j })
    }

    pub fn su2_phase() -> Weight {
        Weight::new(WeightFamily::Su2Phase)
    }

    pub fn perturbed(base: Weight, eps: f64, seed: u64) -> Weight {
        Weight::new(WeightFamily::Perturbed {
            base: Box::new(base),
            eps,
            seed,
        })
    }

    /// Pointwise product; the group law on admissible weights.
    pub fn mul(w1: &Weight, w2: &Weight) -> Weight {
        Weight::new(WeightFamily::Product(
            Box::new(w1.clone()),
            Box::new(w2.clone()),
        ))
    }

    /// Pointwise conjugate; the group inverse.
    pub fn inv(w: &Weight) -> Weight {
        Weight::new(WeightFamily::Conjugate(Box::new(w.clone())))
    }

    pub fn family(&self) -> &WeightFamily {
        &self.family
    }

    /// Whether the family asserts the Hermitian symmetry
    /// `conj omega(a,b,g) = omega(b,a,g)` of an admissible weight.
    pub fn claims_hermitian(&self) -> bool {
        match &self.family {
            WeightFamily::One
            | WeightFamily::TorusTriphase { .. }
            | WeightFamily::Bicharacter2Face { .. }
            | WeightFamily::Su2Phase => true,
            WeightFamily::EigenvaluePhase { c } => *c == 0.0,
            WeightFamily::Product(a, b) => a.claims_hermitian() && b.claims_hermitian(),
            WeightFamily::Conjugate(w) => w.claims_hermitian(),
            WeightFamily::Perturbed { base, .. } => base.claims_hermitian(),
        }
    }

    pub fn compatible_with(&self, backend: BackendId) -> bool {
        match &self.family {
            WeightFamily::One | WeightFamily::EigenvaluePhase { .. } => true,
            WeightFamily::TorusTriphase { .. } | WeightFamily::Bicharacter2Face { .. } => {
                backend == BackendId::Torus
            }
            WeightFamily::Su2Phase => backend == BackendId::Su2,
            WeightFamily::Product(a, b) => {
                a.compatible_with(backend) && b.compatible_with(backend)
            }
            WeightFamily::Conjugate(w) => w.compatible_with(backend),
            WeightFamily::Perturbed { base, .. } => base.compatible_with(backend),
        }
    }

    /// Evaluate on an admissible triple of mode ids. Always unit modulus:
    /// every family is a pure phase by construction.
    pub fn eval(&self, sp: &Spectrum, a: usize, b: usize, g: usize) -> Complex64 {
        match &self.family {
            WeightFamily::One => Complex64::ONE,
            WeightFamily::EigenvaluePhase { c } => {
                let phase =
                    c * (sp.eigenvalue(a) + sp.eigenvalue(b) - sp.eigenvalue(g));
                Complex64::from_polar(1.0, phase)
            }
            WeightFamily::TorusTriphase { j } => {
                let na = torus_mode(sp, a);
                let nb = torus_mode(sp, b);
                let ng = torus_mode(sp, g);
                let e = j.pair(na, nb) + j.pair(nb, ng) + j.pair(ng, na);
                Complex64::from_polar(1.0, -PI * e)
            }
            WeightFamily::Bicharacter2Face { j } => {
                let na = torus_mode(sp, a);
                let nb = torus_mode(sp, b);
                Complex64::from_polar(1.0, PI * j.pair(na, nb))
            }
            WeightFamily::Su2Phase => {
                let (m1, n1) = su2_mn(sp, a);
                let (m2, n2) = su2_mn(sp, b);
                let (m3, n3) = su2_mn(sp, g);
                let e = m1 * (n2 - n3) + m2 * (n3 - n1) + m3 * (n1 - n2);
                Complex64::from_polar(1.0, -PI * e)
            }
            WeightFamily::Product(w1, w2) => w1.eval(sp, a, b, g) * w2.eval(sp, a, b, g),
            WeightFamily::Conjugate(w) => w.eval(sp, a, b, g).conj(),
            WeightFamily::Perturbed { base, eps, seed } => {
                let r = triple_noise(*seed, sp, a, b, g) - triple_noise(*seed, sp, b, a, g);
                base.eval(sp, a, b, g) * Complex64::from_polar(1.0, eps * r)
            }
        }
    }

    pub fn describe(&self) -> String {
        match &self.family {
            WeightFamily::One => "one".into(),
            WeightFamily::EigenvaluePhase { c } => format!("eigenphase:c={c}"),
            WeightFamily::TorusTriphase { j } => format!("triphase:J={:?}", j.entries),
            WeightFamily::Bicharacter2Face { j } => format!("bichar:J={:?}", j.entries),
            WeightFamily::Su2Phase => "su2phase".into(),
            WeightFamily::Product(a, b) => format!("({}*{})", a.describe(), b.describe()),
            WeightFamily::Conjugate(w) => format!("conj({})", w.describe()),
            WeightFamily::Perturbed { base, eps, seed } => {
                format!("{}~perturb:eps={eps},seed={seed}", base.describe())
            }
        }
    }
}

fn torus_mode(sp: &Spectrum, id: usize) -> &[i32] {
    match sp.label(id) {
        SpectralLabel::Torus(n) => n,
        other => panic!("torus weight evaluated on {other}"),
    }
}

/// (m, n) of an SU(2) label as real half-integers.
fn su2_mn(sp: &Spectrum, id: usize) -> (f64, f64) {
    match *sp.label(id) {
        SpectralLabel::Su2 { two_m, two_n, .. } => (two_m as f64 / 2.0, two_n as f64 / 2.0),
        ref other => panic!("su2 weight evaluated on {other}"),
    }
}

/// Deterministic label-triple noise in [0, 1): a stable FNV-1a hash of the
/// encoded labels feeds one SplitMix64 draw.
fn triple_noise(seed: u64, sp: &Spectrum, a: usize, b: usize, g: usize) -> f64 {
    let mut h: u64 = 0xCBF29CE484222325;
    let mut eat = |bytes: &[u8]| {
        for &x in bytes {
            h ^= x as u64;
            h = h.wrapping_mul(0x100000001B3);
        }
    };
    eat(&seed.to_le_bytes());
    eat(sp.label(a).encode().as_bytes());
    eat(b"|");
    eat(sp.label(b).encode().as_bytes());
    eat(b"|");
    eat(sp.label(g).encode().as_bytes());
    SplitMix64::new(h).next_f64()
}

/// Real phase function theta on labels; `chi_t = exp(i t theta)` generates
/// the one-parameter gauge groups.
#[derive(Debug, Clone)]
pub enum GaugePhase {
    Zero,
    /// theta(n) = theta . n on the torus lattice.
    TorusLinear { theta: Vec<f64> },
    /// theta(l, m) = m phi0 on the sphere.
    SphereAzimuthal { phi0: f64 },
    /// theta(l, m) = c l; not additive under fusion, so the induced
    /// character fails the 1-cocycle check (the shipped counterexample).
    SphereDegree { c: f64 },
    /// theta(l, m, n) = m a + n b on SU(2).
    Su2Diagonal { a: f64, b: f64 },
    /// theta = value at a single mode id, zero elsewhere.
    SingleMode { id: usize, value: f64 },
}

impl GaugePhase {
    pub fn eval(&self, sp: &Spectrum, id: usize) -> f64 {
        match self {
            GaugePhase::Zero => 0.0,
            GaugePhase::TorusLinear { theta } => {
                let n = torus_mode(sp, id);
                n.iter().zip(theta).map(|(&nj, &tj)| nj as f64 * tj).sum()
            }
            GaugePhase::SphereAzimuthal { phi0 } => match *sp.label(id) {
                SpectralLabel::Sphere { m, .. } => m as f64 * phi0,
                ref other => panic!("sphere gauge phase evaluated on {other}"),
            },
            GaugePhase::SphereDegree { c } => match *sp.label(id) {
                SpectralLabel::Sphere { l, .. } => c * l as f64,
                ref other => panic!("sphere gauge phase evaluated on {other}"),
            },
            GaugePhase::Su2Diagonal { a, b } => match *sp.label(id) {
                SpectralLabel::Su2 { two_m, two_n, .. } => {
                    a * two_m as f64 / 2.0 + b * two_n as f64 / 2.0
                }
                ref other => panic!("su2 gauge phase evaluated on {other}"),
            },
            GaugePhase::SingleMode { id: target, value } => {
                if id == *target {
                    *value
                } else {
                    0.0
                }
            }
        }
    }
}

/// Unimodular character chi = exp(i scale theta) on spectral labels.
#[derive(Debug, Clone)]
pub struct GaugeCharacter {
    pub phase: GaugePhase,
    pub scale: f64,
}

impl GaugeCharacter {
    pub fn new(phase: GaugePhase) -> GaugeCharacter {
        GaugeCharacter { phase, scale: 1.0 }
    }

    pub fn at_time(phase: GaugePhase, t: f64) -> GaugeCharacter {
        GaugeCharacter { phase, scale: t }
    }

    pub fn eval(&self, sp: &Spectrum, id: usize) -> Complex64 {
        Complex64::from_polar(1.0, self.scale * self.phase.eval(sp, id))
    }
}

/// Defect measurements collected by the admissibility and cocycle checks.
/// Defects are maxima over everything examined; a field is zero when the
/// corresponding check was not run.
#[derive(Debug, Clone, Default)]
pub struct WeightDiagnostics {
    pub unimodularity_defect: f64,
    pub hermitian_defect: f64,
    pub square_cocycle_defect: f64,
    pub summed_cocycle_defect: f64,
    pub log_lipschitz_estimate: f64,
    pub triples_examined: usize,
    pub squares_examined: usize,
    pub quadruples_examined: usize,
    pub quadruples_excluded: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{AnyBasis, IsometryAction, SphereBasis, Su2Basis, TorusBasis};
    use crate::spectral::FusionTensor;

    fn torus_tensor(dim: usize, nmax: i32) -> (AnyBasis, FusionTensor) {
        let b = TorusBasis::unit(dim, nmax).unwrap();
        let t = b.build_fusion(0.0);
        (AnyBasis::Torus(b), t)
    }

    fn sphere_tensor(lmax: u32) -> (AnyBasis, FusionTensor) {
        let b = SphereBasis::new(lmax);
        let t = b.build_fusion(0.0);
        (AnyBasis::Sphere(b), t)
    }

    #[test]
    fn admissibility_defects() {
        let (_, tensor) = torus_tensor(2, 3);
        let d = check_admissible(&Weight::one(), &tensor);
        assert_eq!(d.unimodularity_defect, 0.0);
        assert_eq!(d.hermitian_defect, 0.0);
        assert!(d.triples_examined > 0);
        // triphase: hermitian by skewness
        let w = Weight::torus_triphase(SkewMatrix::theta_2d(0.37));
        let d = check_admissible(&w, &tensor);
        assert!(d.unimodularity_defect < 1e-15);
        assert!(d.hermitian_defect < 1e-12);
        // eigenvalue phase on the sphere: violation visible; the triple
        // l = (1,1,2) alone gives |exp(2i) - exp(-2i)| ~ 1.819
        let (_, stensor) = sphere_tensor(2);
        let d = check_admissible(&Weight::eigenvalue_phase(1.0), &stensor);
        assert!(d.hermitian_defect >= (2.0f64.sin() * 2.0) - 1e-12);
    }

    #[test]
    fn square_cocycle_families_pass() {
        let (_, tensor) = torus_tensor(2, 3);
        for w in [
            Weight::one(),
            Weight::eigenvalue_phase(0.8),
            Weight::torus_triphase(SkewMatrix::theta_2d(0.29)),
        ] {
            let d = check_square_cocycle(&w, &tensor);
            assert!(d.square_cocycle_defect <= 1e-12, "{}: {}", w.describe(), d.square_cocycle_defect);
            assert!(d.squares_examined > 0);
        }
        let (_, stensor) = sphere_tensor(3);
        let d = check_square_cocycle(&Weight::eigenvalue_phase(1.0), &stensor);
        assert!(d.square_cocycle_defect <= 1e-12);
        let su2 = Su2Basis::new(2);
        let sutensor = su2.build_fusion(0.0);
        let d = check_square_cocycle(&Weight::su2_phase(), &sutensor);
        assert!(d.square_cocycle_defect <= 1e-12);
    }

    #[test]
    fn perturbed_weight_is_detected() {
        let (_, tensor) = sphere_tensor(3);
        let base = Weight::eigenvalue_phase(0.5);
        let bad = Weight::perturbed(base, 1e-3, 11);
        let d = check_square_cocycle(&bad, &tensor);
        assert!(
            d.square_cocycle_defect > 1e-6 && d.square_cocycle_defect < 1e-2,
            "defect {} out of the injected-order window",
            d.square_cocycle_defect
        );
    }

    #[test]
    fn summed_cocycle_and_square_bound() {
        let (_, tensor) = sphere_tensor(4);
        let w = Weight::eigenvalue_phase(0.6);
        let d = check_summed_cocycle(&w, &tensor);
        assert!(d.summed_cocycle_defect <= 1e-12);
        assert!(d.quadruples_examined > 0);
        assert!(d.quadruples_excluded > 0); // truncation edge is accounted
        // detection through the summed identity as well
        let bad = Weight::perturbed(Weight::one(), 1e-2, 3);
        let d = check_summed_cocycle(&bad, &tensor);
        assert!(d.summed_cocycle_defect > 1e-5);
        // quantified square -> summed direction: the summed defect is
        // bounded by the square defect times the channel mass
        let sq = check_square_cocycle(&bad, &tensor);
        let mut mass = 0.0f64;
        let sp = tensor.spectrum();
        let len = sp.len();
        for a in 0..len {
            for b in 0..len {
                if tensor.leaks(a, b) {
                    continue;
                }
                for c in 0..len {
                    if tensor.leaks(b, c) {
                        continue;
                    }
                    let mut m = 0.0;
                    for &(dd, cab) in tensor.channels(a, b) {
                        for &(_, cdc) in tensor.channels(dd, c) {
                            m += (cab * cdc).norm();
                        }
                    }
                    for &(dp, cbc) in tensor.channels(b, c) {
                        for &(_, cad) in tensor.channels(a, dp) {
                            m += (cbc * cad).norm();
                        }
                    }
                    mass = mass.max(m);
                }
            }
        }
        assert!(
            d.summed_cocycle_defect <= sq.square_cocycle_defect * mass + 1e-12,
            "{} > {} * {}",
            d.summed_cocycle_defect,
            sq.square_cocycle_defect,
            mass
        );
    }

    #[test]
    fn group_law_on_square_cocycles() {
        let (_, tensor) = torus_tensor(2, 3);
        let w1 = Weight::torus_triphase(SkewMatrix::theta_2d(0.2));
        let w2 = Weight::torus_triphase(SkewMatrix::theta_2d(-0.45));
        let prod = Weight::mul(&w1, &w2);
        let d = check_square_cocycle(&prod, &tensor);
        assert!(d.square_cocycle_defect <= 1e-12);
        let inv = Weight::inv(&w1);
        let d = check_square_cocycle(&inv, &tensor);
        assert!(d.square_cocycle_defect <= 1e-12);
        // w * inv(w) = 1 on sampled triples, and mul(one, w) = w
        let sp = tensor.spectrum();
        let unit = Weight::mul(&w1, &Weight::inv(&w1));
        let mut count = 0;
        for (a, b, g, _) in tensor.iter_triples() {
            let u = unit.eval(sp, a, b, g);
            assert!((u - Complex64::ONE).norm() <= 1e-15);
            let m = Weight::mul(&Weight::one(), &w1).eval(sp, a, b, g);
            assert!((m - w1.eval(sp, a, b, g)).norm() == 0.0);
            count += 1;
            if count >= 1000 {
                break;
            }
        }
        assert!(count >= 1000);
        // commutativity and associativity of the product on sampled triples
        let w3 = Weight::eigenvalue_phase(0.3);
        for (a, b, g, _) in tensor.iter_triples().take(200) {
            let ab = Weight::mul(&w1, &w3).eval(sp, a, b, g);
            let ba = Weight::mul(&w3, &w1).eval(sp, a, b, g);
            assert!((ab - ba).norm() < 1e-15);
            let assoc1 = Weight::mul(&Weight::mul(&w1, &w2), &w3).eval(sp, a, b, g);
            let assoc2 = Weight::mul(&w1, &Weight::mul(&w2, &w3)).eval(sp, a, b, g);
            assert!((assoc1 - assoc2).norm() < 1e-15);
        }
    }

    #[test]
    fn rieffel_two_face_identity() {
        // on additive fusion the triphase restricts to the bicharacter
        let (_, tensor) = torus_tensor(2, 4);
        let j = SkewMatrix::theta_2d(0.31);
        let tri = Weight::torus_triphase(j.clone());
        let bi = Weight::bicharacter(j);
        let sp = tensor.spectrum();
        for (a, b, g, _) in tensor.iter_triples() {
            let d = (tri.eval(sp, a, b, g) - bi.eval(sp, a, b, g)).norm();
            assert!(d <= 1e-12, "2-face mismatch {d}");
        }
    }

    #[test]
    fn gauge_cocycle_checks() {
        let (_, tensor) = torus_tensor(2, 3);
        let chi = GaugeCharacter::new(GaugePhase::TorusLinear {
            theta: vec![0.9, -0.2],
        });
        assert!(check_gauge_cocycle(&chi, &tensor) <= 1e-12);
        let (_, stensor) = sphere_tensor(3);
        let chi = GaugeCharacter::new(GaugePhase::SphereAzimuthal { phi0: 1.1 });
        assert!(check_gauge_cocycle(&chi, &stensor) <= 1e-12);
        let bad = GaugeCharacter::new(GaugePhase::SphereDegree { c: 1.0 });
        assert!(check_gauge_cocycle(&bad, &stensor) > 0.1);
        let su2 = Su2Basis::new(2);
        let sutensor = su2.build_fusion(0.0);
        let chi = GaugeCharacter::new(GaugePhase::Su2Diagonal { a: 0.4, b: -1.0 });
        assert!(check_gauge_cocycle(&chi, &sutensor) <= 1e-12);
    }

    #[test]
    fn equivariance_criterion() {
        // eigenvalue weight with any isometry
        let (sb, stensor) = sphere_tensor(4);
        let w = Weight::eigenvalue_phase(0.9);
        let rot = IsometryAction::SphereRotation {
            alpha: 1.2,
            beta: 0.7,
            gamma: -0.3,
        };
        let d = check_equivariance(&w, &sb, &rot, &stensor).unwrap();
        assert!(d <= 1e-10, "defect {d}");
        // triphase with translations: labels unchanged
        let (tb, ttensor) = torus_tensor(2, 3);
        let w = Weight::torus_triphase(SkewMatrix::theta_2d(0.3));
        let shift = IsometryAction::translation(vec![0.4, 0.1]);
        let d = check_equivariance(&w, &tb, &shift, &ttensor).unwrap();
        assert!(d <= 1e-12);
        // a lattice map with A^T J A != J has a visible defect
        let swap = IsometryAction::TorusMap {
            matrix: vec![vec![0, 1], vec![1, 0]],
            translation: vec![0.0, 0.0],
        };
        let d = check_equivariance(&w, &tb, &swap, &ttensor).unwrap();
        assert!(d > 1e-6, "expected violation, got {d}");
        // but the swap is fine for an eigenvalue-only weight
        let d = check_equivariance(&Weight::eigenvalue_phase(0.4), &tb, &swap, &ttensor).unwrap();
        assert!(d <= 1e-12);
    }

    #[test]
    fn log_lipschitz_estimates() {
        let (_, tensor) = torus_tensor(1, 6);
        assert_eq!(
            estimate_log_lipschitz(&Weight::one(), &tensor, 500).unwrap(),
            0.0
        );
        // the eigenvalue phase is Lipschitz in lambda, not log lambda: the
        // estimate grows with truncation
        let w = Weight::eigenvalue_phase(1.0);
        let small = estimate_log_lipschitz(&w, &TorusBasis::unit(1, 2).unwrap().build_fusion(0.0), 2000).unwrap();
        let large = estimate_log_lipschitz(&w, &TorusBasis::unit(1, 8).unwrap().build_fusion(0.0), 2000).unwrap();
        assert!(large > small);
        // finite value for the bicharacter on a fixed truncation
        let (_, t2) = torus_tensor(2, 3);
        let b = estimate_log_lipschitz(&Weight::bicharacter(SkewMatrix::theta_2d(0.3)), &t2, 500)
            .unwrap();
        assert!(b.is_finite());
        assert!(estimate_log_lipschitz(&w, &tensor, 1).is_err());
    }

    #[test]
    fn skew_matrix_validation() {
        assert!(SkewMatrix::new(vec![vec![0.0, 0.5], vec![-0.5, 0.0]]).is_ok());
        assert!(SkewMatrix::new(vec![vec![0.0, 0.5], vec![0.5, 0.0]]).is_err());
        assert!(SkewMatrix::new(vec![vec![0.1]]).is_err());
        assert!(SkewMatrix::new(vec![vec![0.0, 1.0]]).is_err());
    }
}
