//! Defect measurements: admissibility (unimodularity + Hermitian symmetry),
//! the square and summed cocycle identities, gauge 1-cocycles, equivariance
//! under isometries, and the log-Lipschitz estimate.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::bases::{AnyBasis, IsometryAction};
use crate::error::{Error, Result};
use crate::spectral::{FusionTensor, SplitMix64};

use super::{GaugeCharacter, Weight, WeightDiagnostics};

/// Unimodularity and Hermitian-symmetry defects over every admissible triple
/// of the tensor. Never fails; violations are reported, not thrown.
pub fn check_admissible(w: &Weight, tensor: &FusionTensor) -> WeightDiagnostics {
    let sp = tensor.spectrum();
    let mut diag = WeightDiagnostics::default();
    for (a, b, g, _) in tensor.iter_triples() {
        let val = w.eval(sp, a, b, g);
        diag.unimodularity_defect = diag.unimodularity_defect.max((val.norm() - 1.0).abs());
        let sym = w.eval(sp, b, a, g);
        diag.hermitian_defect = diag.hermitian_defect.max((val.conj() - sym).norm());
        diag.triples_examined += 1;
    }
    diag
}

/// Channelwise square-cocycle defect (the identity per admissible fusion
/// square, before any summation):
/// `omega(a,b,d) omega(d,c,e) = omega(b,c,d') omega(a,d',e)`.
pub fn check_square_cocycle(w: &Weight, tensor: &FusionTensor) -> WeightDiagnostics {
    let sp = tensor.spectrum();
    let len = sp.len();
    let mut diag = WeightDiagnostics::default();
    let mut left: Vec<(usize, Complex64)> = Vec::new();
    let mut right: Vec<(usize, Complex64)> = Vec::new();
    let mut w_ab: Vec<(usize, Complex64)> = Vec::new();
    for a in 0..len {
        for b in 0..len {
            let left_first = tensor.channels(a, b);
            if left_first.is_empty() {
                continue;
            }
            w_ab.clear();
            w_ab.extend(
                left_first
                    .iter()
                    .map(|&(d, _)| (d, w.eval(sp, a, b, d))),
            );
            for c in 0..len {
                // left route: d in channels(a,b), e in channels(d,c)
                left.clear();
                for &(d, wd) in &w_ab {
                    for &(e, _) in tensor.channels(d, c) {
                        left.push((e, wd * w.eval(sp, d, c, e)));
                    }
                }
                if left.is_empty() {
                    continue;
                }
                // right route: d' in channels(b,c), e in channels(a,d')
                right.clear();
                for &(dp, _) in tensor.channels(b, c) {
                    let w_bcd = w.eval(sp, b, c, dp);
                    for &(e, _) in tensor.channels(a, dp) {
                        right.push((e, w_bcd * w.eval(sp, a, dp, e)));
                    }
                }
                // a square is a (d, d') pair sharing the output e
                for &(e_l, lv) in &left {
                    for &(e_r, rv) in &right {
                        if e_l == e_r {
                            diag.square_cocycle_defect =
                                diag.square_cocycle_defect.max((lv - rv).norm());
                            diag.squares_examined += 1;
                        }
                    }
                }
            }
        }
    }
    diag
}

/// Summed associativity identity over leakage-free quadruples (a, b, c, e):
/// `sum_d w(a,b,d) w(d,c,e) C^d_ab C^e_dc = sum_d' w(b,c,d') w(a,d',e) C^d'_bc C^e_ad'`.
/// Quadruples whose intermediate channels leak out of the truncation are
/// excluded and counted.
pub fn check_summed_cocycle(w: &Weight, tensor: &FusionTensor) -> WeightDiagnostics {
    let sp = tensor.spectrum();
    let len = sp.len();
    let mut diag = WeightDiagnostics::default();
    let mut lhs: BTreeMap<usize, Complex64> = BTreeMap::new();
    let mut rhs: BTreeMap<usize, Complex64> = BTreeMap::new();
    for a in 0..len {
        for b in 0..len {
            let ab = match tensor.pair(a, b) {
                Some(p) => p,
                None => continue,
            };
            'gamma: for c in 0..len {
                // leakage control on both association orders
                if ab.leaks || tensor.leaks(b, c) {
                    diag.quadruples_excluded += 1;
                    continue;
                }
                for &(d, _) in &ab.channels {
                    if tensor.leaks(d, c) {
                        diag.quadruples_excluded += 1;
                        continue 'gamma;
                    }
                }
                for &(dp, _) in tensor.channels(b, c) {
                    if tensor.leaks(a, dp) {
                        diag.quadruples_excluded += 1;
                        continue 'gamma;
                    }
                }
                lhs.clear();
                for &(d, c_ab) in &ab.channels {
                    let w_abd = w.eval(sp, a, b, d);
                    for &(e, c_dc) in tensor.channels(d, c) {
                        *lhs.entry(e).or_insert(Complex64::ZERO) +=
                            w_abd * w.eval(sp, d, c, e) * c_ab * c_dc;
                    }
                }
                rhs.clear();
                for &(dp, c_bc) in tensor.channels(b, c) {
                    let w_bcd = w.eval(sp, b, c, dp);
                    for &(e, c_ad) in tensor.channels(a, dp) {
                        *rhs.entry(e).or_insert(Complex64::ZERO) +=
                            w_bcd * w.eval(sp, a, dp, e) * c_bc * c_ad;
                    }
                }
                let mut pair_defect = 0.0f64;
                for (&e, &lv) in &lhs {
                    pair_defect = pair_defect
                        .max((lv - rhs.get(&e).copied().unwrap_or(Complex64::ZERO)).norm());
                }
                for (&e, &rv) in &rhs {
                    if !lhs.contains_key(&e) {
                        pair_defect = pair_defect.max(rv.norm());
                    }
                }
                diag.summed_cocycle_defect = diag.summed_cocycle_defect.max(pair_defect);
                diag.quadruples_examined += 1;
            }
        }
    }
    diag
}

/// Max defect `|chi(a) chi(b) - chi(g)|` over all admissible triples.
pub fn check_gauge_cocycle(chi: &GaugeCharacter, tensor: &FusionTensor) -> f64 {
    let sp = tensor.spectrum();
    let mut worst = 0.0f64;
    for (a, b, g, _) in tensor.iter_triples() {
        let defect = (chi.eval(sp, a) * chi.eval(sp, b) - chi.eval(sp, g)).norm();
        worst = worst.max(defect);
    }
    worst
}

/// Equivariance criterion in weighted-tensor form: with `W^g_ab = omega C^g_ab`
/// and `rho` the blockwise coefficient unitary of the isometry, the deformed
/// product commutes with the pullback iff
/// `sum_g rho(g,e) W^g_ab = sum_a'b' rho(a,a') rho(b,b') W^e_a'b'`
/// on every leakage-free pair. For label-permuting actions this reduces to
/// the direct identity `omega(h.a, h.b, h.g) = omega(a, b, g)`.
pub fn check_equivariance(
    w: &Weight,
    basis: &AnyBasis,
    h: &IsometryAction,
    tensor: &FusionTensor,
) -> Result<f64> {
    let sp = tensor.spectrum();
    let rows = basis.coefficient_matrix(h)?;
    let mut worst = 0.0f64;
    for ((a, b), entry) in tensor.iter_pairs() {
        if entry.leaks {
            continue;
        }
        // lhs: rotate the output of phi_a phi_b
        let mut lhs: BTreeMap<usize, Complex64> = BTreeMap::new();
        for &(g, c) in &entry.channels {
            let wv = w.eval(sp, a, b, g) * c;
            for &(e, u) in &rows[g] {
                *lhs.entry(e).or_insert(Complex64::ZERO) += wv * u;
            }
        }
        // rhs: multiply the rotated inputs
        let mut rhs: BTreeMap<usize, Complex64> = BTreeMap::new();
        for &(ap, ua) in &rows[a] {
            for &(bp, ub) in &rows[b] {
                let uv = ua * ub;
                for &(e, c) in tensor.channels(ap, bp) {
                    *rhs.entry(e).or_insert(Complex64::ZERO) += uv * w.eval(sp, ap, bp, e) * c;
                }
            }
        }
        for (&e, &lv) in &lhs {
            worst = worst.max((lv - rhs.get(&e).copied().unwrap_or(Complex64::ZERO)).norm());
        }
        for (&e, &rv) in &rhs {
            if !lhs.contains_key(&e) {
                worst = worst.max(rv.norm());
            }
        }
    }
    Ok(worst)
}

/// Sampled lower bound on the log-Lipschitz constant:
/// `max |omega(t) - omega(t')| / sum |log(1+lambda) - log(1+lambda')|`
/// over pairs of admissible triples with distinct eigenvalue data.
pub fn estimate_log_lipschitz(
    w: &Weight,
    tensor: &FusionTensor,
    sample_count: usize,
) -> Result<f64> {
    if sample_count < 2 {
        return Err(Error::InvalidArgument(
            "log-Lipschitz estimate needs sample_count >= 2".into(),
        ));
    }
    let sp = tensor.spectrum();
    let triples: Vec<(usize, usize, usize)> =
        tensor.iter_triples().map(|(a, b, g, _)| (a, b, g)).collect();
    if triples.is_empty() {
        return Err(Error::InvalidArgument("tensor has no admissible triples".into()));
    }
    let lam = |t: &(usize, usize, usize)| {
        [
            (1.0 + sp.eigenvalue(t.0)).ln(),
            (1.0 + sp.eigenvalue(t.1)).ln(),
            (1.0 + sp.eigenvalue(t.2)).ln(),
        ]
    };
    let mut rng = SplitMix64::new(0x10C0);
    let mut best = 0.0f64;
    let mut distinct_seen = false;
    for _ in 0..sample_count {
        let t1 = &triples[(rng.next_u64() % triples.len() as u64) as usize];
        let t2 = &triples[(rng.next_u64() % triples.len() as u64) as usize];
        let l1 = lam(t1);
        let l2 = lam(t2);
        let den: f64 = l1.iter().zip(&l2).map(|(x, y)| (x - y).abs()).sum();
        if den == 0.0 {
            continue;
        }
        distinct_seen = true;
        let dv = (w.eval(sp, t1.0, t1.1, t1.2) - w.eval(sp, t2.0, t2.1, t2.2)).norm();
        best = best.max(dv / den);
    }
    if !distinct_seen {
        // every sampled pair shared its eigenvalue triple; try all pairs of a
        // deterministic subset before giving up
        let cap = triples.len().min(64);
        for i in 0..cap {
            for j in (i + 1)..cap {
                let l1 = lam(&triples[i]);
                let l2 = lam(&triples[j]);
                let den: f64 = l1.iter().zip(&l2).map(|(x, y)| (x - y).abs()).sum();
                if den == 0.0 {
                    continue;
                }
                distinct_seen = true;
                let dv = (w.eval(sp, triples[i].0, triples[i].1, triples[i].2)
                    - w.eval(sp, triples[j].0, triples[j].1, triples[j].2))
                .norm();
                best = best.max(dv / den);
            }
        }
        if !distinct_seen {
            return Err(Error::InvalidArgument(
                "fewer than 2 distinct eigenvalue triples in the tensor".into(),
            ));
        }
    }
    Ok(best)
}
