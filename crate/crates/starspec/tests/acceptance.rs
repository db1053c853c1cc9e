//! Acceptance suite: every numbered capability of the engine, each checked
//! at its stated tolerance on desk-scale truncations and printing one
//! pass/fail line (visible under `cargo test --test acceptance -- --nocapture`).

use std::sync::Arc;

use num_complex::Complex64;

use starspec::analysis::{
    continuity_sweep, metric_derivative_fd, rieffel_equivalence, CoefficientFix,
    FlatMetricFamily, WeightPath,
};
use starspec::bases::quadrature::{equispaced, gauss_legendre};
use starspec::bases::wigner::wigner3j;
use starspec::bases::{sph_harm, AnyBasis, IsometryAction, SphereBasis, Su2Basis, TorusBasis};
use starspec::cli::{report::report_json, run_verify, Suite, Tolerances};
use starspec::error::Error;
use starspec::spectral::{hs_norm, CoeffVec, SobolevParams, SplitMix64};
use starspec::star::{DeformedAlgebra, TruncationPolicy};
use starspec::weights::{
    check_gauge_cocycle, check_square_cocycle, GaugeCharacter, GaugePhase, SkewMatrix, Weight,
};

const PI: f64 = std::f64::consts::PI;

fn verdict(criterion: &str, pass: bool, detail: &str) {
    println!(
        "[{}] {criterion}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{criterion}: {detail}");
}

fn torus_algebra(nmax: i32, w: Weight) -> DeformedAlgebra {
    DeformedAlgebra::build(
        AnyBasis::Torus(TorusBasis::unit(2, nmax).unwrap()),
        w,
        TruncationPolicy::HardTruncate,
    )
    .unwrap()
}

#[test]
fn criterion_01_connes_landi_relations() {
    let mut worst = 0.0f64;
    for &theta in &[0.1, 0.25, 0.5] {
        let alg = torus_algebra(4, Weight::torus_triphase(SkewMatrix::theta_2d(theta)));
        for j in 0..2 {
            for k in 0..2 {
                let theta_jk = if j == k {
                    0.0
                } else if (j, k) == (0, 1) {
                    theta
                } else {
                    -theta
                };
                let expect = Complex64::from_polar(1.0, 2.0 * PI * theta_jk);
                let r = alg.commutation_ratio(j, k).unwrap();
                worst = worst.max((r - expect).norm());
            }
        }
    }
    verdict(
        "criterion 1: generator commutation phases",
        worst <= 1e-12,
        &format!("max ratio error {worst:.3e} (tol 1e-12)"),
    );
}

#[test]
fn criterion_02_associativity_iff_cocycle() {
    let s = SobolevParams::new(0.0);
    let algebras = vec![
        (
            "torus triphase",
            torus_algebra(6, Weight::torus_triphase(SkewMatrix::theta_2d(0.3))),
        ),
        (
            "sphere eigenphase",
            DeformedAlgebra::build(
                AnyBasis::Sphere(SphereBasis::new(6)),
                Weight::eigenvalue_phase(1.0),
                TruncationPolicy::HardTruncate,
            )
            .unwrap(),
        ),
        (
            "su2 phase",
            DeformedAlgebra::build(
                AnyBasis::Su2(Su2Basis::new(6)),
                Weight::su2_phase(),
                TruncationPolicy::HardTruncate,
            )
            .unwrap(),
        ),
    ];
    let mut worst = 0.0f64;
    for (name, alg) in &algebras {
        let bw = alg.basis().max_degree() / 3;
        for seed in 0..20u64 {
            let f = alg.random_band_limited(seed, 1.0, bw).unwrap();
            let g = alg.random_band_limited(seed + 40, 1.0, bw).unwrap();
            let h = alg.random_band_limited(seed + 80, 1.0, bw).unwrap();
            let d = alg.associativity_defect(&f, &g, &h, s).unwrap();
            assert!(d <= 1e-9, "{name} seed {seed}: defect {d}");
            worst = worst.max(d);
        }
    }
    // converse: the perturbed weight fails both measurements
    let base = Weight::torus_triphase(SkewMatrix::theta_2d(0.3));
    let bad = torus_algebra(4, Weight::perturbed(base, 1e-2, 7));
    let mut bad_worst = 0.0f64;
    for seed in 0..20u64 {
        let f = bad.random_band_limited(seed, 1.0, 1).unwrap();
        let g = bad.random_band_limited(seed + 40, 1.0, 1).unwrap();
        let h = bad.random_band_limited(seed + 80, 1.0, 1).unwrap();
        bad_worst = bad_worst.max(bad.associativity_defect(&f, &g, &h, s).unwrap());
    }
    let sq = check_square_cocycle(bad.weight(), bad.tensor());
    let pass = worst <= 1e-9 && bad_worst >= 1e-5 && sq.square_cocycle_defect >= 1e-4;
    verdict(
        "criterion 2: associativity iff cocycle",
        pass,
        &format!(
            "cocycle-weight max defect {worst:.3e} (tol 1e-9); perturbed defect {bad_worst:.3e} \
             (>= 1e-5); perturbed square defect {:.3e} (>= 1e-4)",
            sq.square_cocycle_defect
        ),
    );
}

#[test]
fn criterion_03_group_law() {
    let torus = TorusBasis::unit(2, 4).unwrap();
    let tensor = torus.build_fusion(0.0);
    let w1 = Weight::torus_triphase(SkewMatrix::theta_2d(0.2));
    let w2 = Weight::eigenvalue_phase(0.7);
    let mut worst_sq = 0.0f64;
    for w in [
        Weight::mul(&w1, &w2),
        Weight::inv(&w1),
        Weight::inv(&Weight::mul(&w1, &w2)),
    ] {
        worst_sq = worst_sq.max(check_square_cocycle(&w, &tensor).square_cocycle_defect);
    }
    // w * inv(w) = 1 on 1000 sampled triples
    let unit = Weight::mul(&w1, &Weight::inv(&w1));
    let sp = tensor.spectrum();
    let mut worst_unit = 0.0f64;
    let mut sampled = 0usize;
    for (a, b, g, _) in tensor.iter_triples() {
        worst_unit = worst_unit.max((unit.eval(sp, a, b, g) - Complex64::ONE).norm());
        sampled += 1;
        if sampled >= 1000 {
            break;
        }
    }
    let pass = worst_sq <= 1e-12 && worst_unit <= 1e-15 && sampled >= 1000;
    verdict(
        "criterion 3: group law on square cocycles",
        pass,
        &format!(
            "product/inverse square defect {worst_sq:.3e} (tol 1e-12); w*inv(w) defect \
             {worst_unit:.3e} on {sampled} triples (tol 1e-15)"
        ),
    );
}

#[test]
fn criterion_04_rieffel_coefficient_identity() {
    let mut worst = 0.0f64;
    for &theta in &[0.1, 0.3] {
        let j = SkewMatrix::theta_2d(theta);
        let alg = torus_algebra(6, Weight::torus_triphase(j.clone()));
        let report = rieffel_equivalence(&alg, &j, 20, 11, 3).unwrap();
        worst = worst.max(report.max_defect);
        assert!(report.pass);
    }
    verdict(
        "criterion 4: three-index vs two-face coefficient identity",
        worst <= 1e-12,
        &format!("max channel defect {worst:.3e} (tol 1e-12)"),
    );
}

#[test]
fn criterion_05_sphere_fusion_correctness() {
    let lmax = 6u32;
    let sphere = SphereBasis::new(lmax);
    let tensor = sphere.build_fusion(0.0);

    // quadrature oracle over every stored entry, grid sized for the triple
    // product (degree 3 lmax in cos theta, frequency 3 lmax in phi)
    let n_t = (3 * lmax as usize) / 2 + 2;
    let n_p = 3 * lmax as usize + 2;
    let (xs, ws) = gauss_legendre(n_t);
    let (phis, dphi) = equispaced(n_p, 2.0 * PI);
    let sp = tensor.spectrum();
    let lm = |id: usize| match *sp.label(id) {
        starspec::spectral::SpectralLabel::Sphere { l, m } => (l, m),
        _ => unreachable!(),
    };
    // table of Y values on the grid
    let mut table = vec![vec![Complex64::ZERO; n_t * n_p]; sp.len()];
    for (id, row) in table.iter_mut().enumerate() {
        let (l, m) = lm(id);
        for (i, &x) in xs.iter().enumerate() {
            let theta = x.clamp(-1.0, 1.0).acos();
            for (j, &phi) in phis.iter().enumerate() {
                row[i * n_p + j] = sph_harm(l, m, theta, phi);
            }
        }
    }
    let oracle = |a: usize, b: usize, g: usize| -> Complex64 {
        let mut acc = Complex64::ZERO;
        for i in 0..n_t {
            let w = ws[i] * dphi;
            for j in 0..n_p {
                let k = i * n_p + j;
                acc += table[a][k] * table[b][k] * table[g][k].conj() * w;
            }
        }
        acc
    };
    let mut worst = 0.0f64;
    for (a, b, g, c) in tensor.iter_triples() {
        worst = worst.max((oracle(a, b, g) - c).norm());
    }
    // absent channels within truncation really are zero: sample pairs and
    // compare the full channel line against the oracle
    let mut rng = SplitMix64::new(5);
    for _ in 0..150 {
        let a = (rng.next_u64() % sp.len() as u64) as usize;
        let b = (rng.next_u64() % sp.len() as u64) as usize;
        for g in 0..sp.len() {
            let stored = tensor.coefficient(a, b, g);
            worst = worst.max((oracle(a, b, g) - stored).norm());
        }
    }

    // selection rules hold exactly in the sparse structure
    let mut rules = true;
    for (a, b, g, c) in tensor.iter_triples() {
        let (l1, m1) = lm(a);
        let (l2, m2) = lm(b);
        let (l3, m3) = lm(g);
        rules &= c.norm() > 0.0
            && m3 == m1 + m2
            && (l1 + l2 + l3) % 2 == 0
            && l1.abs_diff(l2) <= l3
            && l3 <= l1 + l2;
    }

    // 3j orthogonality up to j = 16
    let mut worst_orth = 0.0f64;
    for &(j1, j2, j3) in &[(2i64, 2, 2), (4, 6, 8), (8, 8, 8), (12, 10, 6), (16, 16, 16)] {
        for m3 in -j3..=j3 {
            let mut sum = 0.0;
            for m1 in -j1..=j1 {
                let m2 = -m3 - m1;
                if m2.abs() > j2 {
                    continue;
                }
                let w = wigner3j(j1, j2, j3, m1, m2, m3);
                sum += (2 * j3 + 1) as f64 * w * w;
            }
            worst_orth = worst_orth.max((sum - 1.0).abs());
        }
    }
    let pass = worst <= 1e-10 && rules && worst_orth <= 1e-12;
    verdict(
        "criterion 5: sphere fusion vs quadrature oracle",
        pass,
        &format!(
            "max Gaunt error {worst:.3e} (tol 1e-10); selection rules {}; 3j orthogonality \
             defect {worst_orth:.3e} (tol 1e-12)",
            if rules { "exact" } else { "violated" }
        ),
    );
}

#[test]
fn criterion_06_equivariance_and_rejection() {
    let s = SobolevParams::new(0.0);
    let alg = DeformedAlgebra::build(
        AnyBasis::Sphere(SphereBasis::new(6)),
        Weight::eigenvalue_phase(0.8),
        TruncationPolicy::HardTruncate,
    )
    .unwrap();
    let f = alg.random_band_limited(61, 1.0, 3).unwrap();
    let g = alg.random_band_limited(62, 1.0, 3).unwrap();
    let mut rng = SplitMix64::new(600);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let rot = IsometryAction::SphereRotation {
            alpha: rng.next_sym() * PI,
            beta: rng.next_f64() * PI,
            gamma: rng.next_sym() * PI,
        };
        let d = alg.pullback_homomorphism_defect(&rot, &f, &g, s).unwrap();
        worst = worst.max(d);
    }
    // a lattice map that moves J is rejected by the precondition
    let talg = torus_algebra(4, Weight::torus_triphase(SkewMatrix::theta_2d(0.25)));
    let tf = talg.random_band_limited(63, 1.0, 2).unwrap();
    let swap = IsometryAction::TorusMap {
        matrix: vec![vec![0, 1], vec![1, 0]],
        translation: vec![0.0, 0.0],
    };
    let rejected = match talg.pullback(&swap, &tf) {
        Err(Error::Equivariance { defect }) => defect > 1e-6,
        _ => false,
    };
    let pass = worst <= 1e-8 && rejected;
    verdict(
        "criterion 6: equivariant pullbacks and precondition rejection",
        pass,
        &format!(
            "max homomorphism defect over 10 rotations {worst:.3e} (tol 1e-8); \
             non-equivariant lattice map rejected: {rejected}"
        ),
    );
}

#[test]
fn criterion_07_continuity_of_deformation_paths() {
    let grid = [0.4, 0.2, 0.1, 0.05, 0.025];
    let mut all_pass = true;
    let mut detail = String::new();
    let cases: Vec<(&str, DeformedAlgebra, WeightPath, u32, f64)> = vec![
        (
            "sphere eigenphase path",
            DeformedAlgebra::build(
                AnyBasis::Sphere(SphereBasis::new(4)),
                Weight::one(),
                TruncationPolicy::HardTruncate,
            )
            .unwrap(),
            WeightPath::EigenvaluePhase { c: 0.08 },
            2,
            2.0,
        ),
        (
            "torus triphase path",
            torus_algebra(4, Weight::one()),
            WeightPath::TorusTriphase {
                j: SkewMatrix::theta_2d(0.15),
            },
            1,
            2.0,
        ),
    ];
    for (name, alg, path, bw, s) in cases {
        let f = alg.random_band_limited(71, 1.0, bw).unwrap();
        let g = alg.random_band_limited(72, 1.0, bw).unwrap();
        let report =
            continuity_sweep(&alg, &path, &f, &g, SobolevParams::new(s), &grid).unwrap();
        let defects: Vec<f64> = report
            .rows
            .iter()
            .map(|r| r.get_f64("defect").unwrap())
            .collect();
        let monotone = defects.windows(2).all(|w| w[1] < w[0]);
        let ratios_ok = defects
            .windows(2)
            .all(|w| (1.7..=2.3).contains(&(w[0] / w[1])));
        let norms: Vec<f64> = report
            .rows
            .iter()
            .map(|r| r.get_f64("product_norm").unwrap())
            .collect();
        let boundary = {
            let flat = alg.with_weight(Weight::one()).unwrap();
            hs_norm(&flat.star(&f, &g).unwrap(), SobolevParams::new(s))
        };
        let norms_ok = norms
            .iter()
            .all(|&n| (n - boundary).abs() <= 0.05 * boundary);
        all_pass &= monotone && ratios_ok && norms_ok && report.pass;
        detail.push_str(&format!(
            "[{name}: monotone {monotone}, ratios {ratios_ok}, norms-within-5% {norms_ok}] "
        ));
    }
    verdict("criterion 7: continuity of deformation paths", all_pass, &detail);
}

#[test]
fn criterion_08_metric_derivative() {
    let family = FlatMetricFamily::new(vec![1.0, 1.0], vec![0.0, 1.0]).unwrap();
    let basis = TorusBasis::unit(2, 3).unwrap();
    let f = starspec::spectral::random_coeff_vec_filtered(basis.spectrum(), 81, 1.0, |id| {
        basis.mode_degree(id) <= 1
    })
    .unwrap();
    let g = starspec::spectral::random_coeff_vec_filtered(basis.spectrum(), 82, 1.0, |id| {
        basis.mode_degree(id) <= 1
    })
    .unwrap();
    let report = metric_derivative_fd(
        &family,
        &Weight::eigenvalue_phase(0.05),
        3,
        &f,
        &g,
        CoefficientFix::Coefficients,
        &[1e-2, 5e-3, 1e-4],
    )
    .unwrap();
    let richardson = report.rows[0].get_f64("richardson_ratio").unwrap();
    let final_err = report
        .rows
        .last()
        .unwrap()
        .get_f64("relative_error")
        .unwrap();
    let pass = (3.5..=4.5).contains(&richardson) && final_err <= 1e-6;
    verdict(
        "criterion 8: metric derivative vs finite differences",
        pass,
        &format!(
            "relative error {final_err:.3e} at step 1e-4 (tol 1e-6); Richardson ratio \
             {richardson:.3} (band [3.5, 4.5])"
        ),
    );
}

#[test]
fn criterion_09_star_structure() {
    let s = SobolevParams::new(0.0);
    let mut worst = 0.0f64;
    let talg = torus_algebra(4, Weight::torus_triphase(SkewMatrix::theta_2d(0.35)));
    let sualg = DeformedAlgebra::build(
        AnyBasis::Su2(Su2Basis::new(4)),
        Weight::su2_phase(),
        TruncationPolicy::HardTruncate,
    )
    .unwrap();
    for alg in [&talg, &sualg] {
        let bw = (alg.basis().max_degree() / 2).max(1);
        for seed in 0..5u64 {
            let f = alg.random_band_limited(90 + seed, 1.0, bw).unwrap();
            let g = alg.random_band_limited(95 + seed, 1.0, bw).unwrap();
            let (d, guaranteed) = alg.involution_defect(&f, &g, s).unwrap();
            assert!(guaranteed);
            worst = worst.max(d);
        }
    }
    // the eigenvalue-phase violation is visible on a single sphere triple
    // and fails the involution suite with exit code 1
    let salg = DeformedAlgebra::build(
        AnyBasis::Sphere(SphereBasis::new(3)),
        Weight::eigenvalue_phase(1.0),
        TruncationPolicy::HardTruncate,
    )
    .unwrap();
    let sphere = match salg.basis() {
        AnyBasis::Sphere(s) => s.clone(),
        _ => unreachable!(),
    };
    let sp = salg.basis().spectrum();
    let f = CoeffVec::single(Arc::clone(sp), sphere.lookup_lm(1, 1).unwrap(), Complex64::ONE);
    let g = CoeffVec::single(Arc::clone(sp), sphere.lookup_lm(1, -1).unwrap(), Complex64::ONE);
    let (violation, guaranteed) = salg.involution_defect(&f, &g, s).unwrap();
    let report = run_verify(
        &salg,
        &[Suite::Involution],
        1,
        s,
        Tolerances::default(),
    )
    .unwrap();
    let pass = worst <= 1e-10 && !guaranteed && violation >= 1e-3 && !report.pass;
    verdict(
        "criterion 9: *-structure compatibility and violation reporting",
        pass,
        &format!(
            "hermitian-weight involution defect {worst:.3e} (tol 1e-10); eigenphase violation \
             {violation:.3e} (>= 1e-3); involution suite fails: {}",
            !report.pass
        ),
    );
}

#[test]
fn criterion_10_gauge_automorphisms() {
    let s = SobolevParams::new(0.0);
    let mut worst_cocycle = 0.0f64;
    let mut worst_hom = 0.0f64;
    let mut slopes_ok = true;
    let cases: Vec<(DeformedAlgebra, GaugePhase)> = vec![
        (
            torus_algebra(4, Weight::torus_triphase(SkewMatrix::theta_2d(0.2))),
            GaugePhase::TorusLinear {
                theta: vec![0.8, -0.45],
            },
        ),
        (
            DeformedAlgebra::build(
                AnyBasis::Sphere(SphereBasis::new(4)),
                Weight::eigenvalue_phase(0.5),
                TruncationPolicy::HardTruncate,
            )
            .unwrap(),
            GaugePhase::SphereAzimuthal { phi0: 1.2 },
        ),
    ];
    for (alg, phase) in cases {
        let chi = GaugeCharacter::new(phase.clone());
        worst_cocycle = worst_cocycle.max(check_gauge_cocycle(&chi, alg.tensor()));
        let bw = (alg.basis().max_degree() / 2).max(1);
        let f = alg.random_band_limited(101, 1.0, bw).unwrap();
        let g = alg.random_band_limited(102, 1.0, bw).unwrap();
        let lhs = alg
            .gauge_automorphism(&chi, &alg.star(&f, &g).unwrap())
            .unwrap();
        let rhs = alg
            .star(
                &alg.gauge_automorphism(&chi, &f).unwrap(),
                &alg.gauge_automorphism(&chi, &g).unwrap(),
            )
            .unwrap();
        worst_hom = worst_hom.max(hs_norm(&lhs.sub(&rhs), s));
        // first-order generator slope
        let gen = alg.gauge_generator(&phase, &f);
        let fd_err = |t: f64| {
            let chi_t = GaugeCharacter::at_time(phase.clone(), t);
            let moved = alg.gauge_automorphism(&chi_t, &f).unwrap();
            hs_norm(
                &moved.sub(&f).scale(Complex64::new(1.0 / t, 0.0)).sub(&gen),
                s,
            )
        };
        let ratio = fd_err(1e-2) / fd_err(1e-3);
        slopes_ok &= (8.0..=12.0).contains(&ratio);
    }
    let pass = worst_cocycle <= 1e-12 && worst_hom <= 1e-10 && slopes_ok;
    verdict(
        "criterion 10: gauge automorphisms and generators",
        pass,
        &format!(
            "1-cocycle defect {worst_cocycle:.3e} (tol 1e-12); homomorphism defect \
             {worst_hom:.3e} (tol 1e-10); generator slope first-order: {slopes_ok}"
        ),
    );
}

#[test]
fn criterion_11_determinism() {
    // identical config + seed => byte-identical reports and cache checksums
    let make_report = || {
        let alg = torus_algebra(3, Weight::torus_triphase(SkewMatrix::theta_2d(0.25)));
        let report = run_verify(
            &alg,
            &[Suite::Cocycle, Suite::Assoc, Suite::Gauge],
            42,
            SobolevParams::new(0.0),
            Tolerances::default(),
        )
        .unwrap();
        report_json(&report)
    };
    let r1 = make_report();
    let r2 = make_report();
    let cache1 = starspec::cli::cache::encode(&SphereBasis::new(4).build_fusion(0.0));
    let cache2 = starspec::cli::cache::encode(&SphereBasis::new(4).build_fusion(0.0));
    let pass = r1 == r2 && cache1 == cache2;
    verdict(
        "criterion 11: byte-identical reports and caches",
        pass,
        &format!(
            "report bytes equal: {}; cache bytes equal: {}",
            r1 == r2,
            cache1 == cache2
        ),
    );
}
