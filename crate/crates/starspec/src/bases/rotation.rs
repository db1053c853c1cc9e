//! Wigner d- and D-matrices for SO(3)/SU(2) rotations in the ZYZ Euler
//! convention, plus conversions between Euler angles and rotation matrices.

use num_complex::Complex64;

fn factorial_f64(n: i64) -> f64 {
    debug_assert!(n >= 0);
    let mut acc = 1.0;
    for k in 2..=n {
        acc *= k as f64;
    }
    acc
}

/// Wigner small-d matrix element `d^l_{mp,m}(beta)` with doubled arguments,
/// from the standard factorial sum.
pub fn wigner_small_d(two_l: i64, two_mp: i64, two_m: i64, beta: f64) -> f64 {
    debug_assert!((two_l + two_mp) % 2 == 0 && (two_l + two_m) % 2 == 0);
    let jp_mp = (two_l + two_mp) / 2;
    let jm_mp = (two_l - two_mp) / 2;
    let jp_m = (two_l + two_m) / 2;
    let jm_m = (two_l - two_m) / 2;
    if jp_mp < 0 || jm_mp < 0 || jp_m < 0 || jm_m < 0 {
        return 0.0;
    }
    let pref = (factorial_f64(jp_mp) * factorial_f64(jm_mp) * factorial_f64(jp_m)
        * factorial_f64(jm_m))
    .sqrt();
    let c = (beta / 2.0).cos();
    let s = (beta / 2.0).sin();
    let mu = (two_mp - two_m) / 2; // m' - m, always an integer
    let s_min = 0.max(-mu);
    let s_max = jp_m.min(jm_mp);
    let mut sum = 0.0;
    for k in s_min..=s_max {
        let den = factorial_f64(jp_m - k)
            * factorial_f64(k)
            * factorial_f64(mu + k)
            * factorial_f64(jm_mp - k);
        let sign = if (mu + k).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let cos_exp = (jp_m - k) + (jm_mp - k);
        let sin_exp = mu + 2 * k;
        sum += sign * c.powi(cos_exp as i32) * s.powi(sin_exp as i32) / den;
    }
    pref * sum
}

/// Wigner D-matrix element `D^l_{mp,m}(alpha, beta, gamma)` in the ZYZ
/// convention: `exp(-i mp alpha) d^l_{mp,m}(beta) exp(-i m gamma)`.
/// A function transforms under the pullback `(U_R f)(x) = f(R^{-1} x)` as
/// `U_R Y_l^m = sum_mp D^l_{mp,m}(R) Y_l^mp`.
pub fn wigner_d_matrix(
    two_l: i64,
    two_mp: i64,
    two_m: i64,
    alpha: f64,
    beta: f64,
    gamma: f64,
) -> Complex64 {
    let d = wigner_small_d(two_l, two_mp, two_m, beta);
    let mp = two_mp as f64 / 2.0;
    let m = two_m as f64 / 2.0;
    Complex64::from_polar(1.0, -mp * alpha) * d * Complex64::from_polar(1.0, -m * gamma)
}

/// 3x3 rotation matrix of the ZYZ Euler triple: `R = Rz(alpha) Ry(beta) Rz(gamma)`.
pub fn euler_to_matrix(alpha: f64, beta: f64, gamma: f64) -> [[f64; 3]; 3] {
    let (ca, sa) = (alpha.cos(), alpha.sin());
    let (cb, sb) = (beta.cos(), beta.sin());
    let (cg, sg) = (gamma.cos(), gamma.sin());
    [
        [
            ca * cb * cg - sa * sg,
            -ca * cb * sg - sa * cg,
            ca * sb,
        ],
        [
            sa * cb * cg + ca * sg,
            -sa * cb * sg + ca * cg,
            sa * sb,
        ],
        [-sb * cg, sb * sg, cb],
    ]
}

/// Recovers a ZYZ Euler triple from a rotation matrix.
pub fn matrix_to_euler(r: &[[f64; 3]; 3]) -> (f64, f64, f64) {
    let cb = r[2][2].clamp(-1.0, 1.0);
    let beta = cb.acos();
    if beta.sin().abs() > 1e-12 {
        let alpha = r[1][2].atan2(r[0][2]);
        let gamma = r[2][1].atan2(-r[2][0]);
        (alpha, beta, gamma)
    } else if cb > 0.0 {
        // beta = 0: only alpha + gamma matters
        (r[1][0].atan2(r[0][0]), 0.0, 0.0)
    } else {
        // beta = pi: only alpha - gamma matters
        ((-r[1][0]).atan2(-r[0][0]), std::f64::consts::PI, 0.0)
    }
}

pub fn mat_mul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for (k, bk) in b.iter().enumerate() {
                out[i][j] += a[i][k] * bk[j];
            }
        }
    }
    out
}

pub fn mat_transpose(a: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i];
        }
    }
    out
}

/// Applies the rotation to a unit vector given as spherical angles
/// `(theta, phi)`, returning the rotated angles.
pub fn rotate_point(r: &[[f64; 3]; 3], theta: f64, phi: f64) -> (f64, f64) {
    let v = [
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    ];
    let mut w = [0.0; 3];
    for i in 0..3 {
        for (k, vk) in v.iter().enumerate() {
            w[i] += r[i][k] * vk;
        }
    }
    let theta2 = w[2].clamp(-1.0, 1.0).acos();
    let phi2 = w[1].atan2(w[0]).rem_euclid(2.0 * std::f64::consts::PI);
    (theta2, phi2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_d_is_orthogonal() {
        // rows of d^l(beta) are orthonormal
        for &two_l in &[1i64, 2, 4, 5, 8] {
            let beta = 0.7;
            for two_mp in (-two_l..=two_l).step_by(2) {
                for two_mq in (-two_l..=two_l).step_by(2) {
                    let mut acc = 0.0;
                    for two_m in (-two_l..=two_l).step_by(2) {
                        acc += wigner_small_d(two_l, two_mp, two_m, beta)
                            * wigner_small_d(two_l, two_mq, two_m, beta);
                    }
                    let expect = if two_mp == two_mq { 1.0 } else { 0.0 };
                    assert!((acc - expect).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn small_d_half_spin_closed_form() {
        let beta = 1.1;
        assert!((wigner_small_d(1, 1, 1, beta) - (beta / 2.0).cos()).abs() < 1e-15);
        assert!((wigner_small_d(1, 1, -1, beta) - (-(beta / 2.0).sin())).abs() < 1e-15);
        assert!((wigner_small_d(1, -1, 1, beta) - (beta / 2.0).sin()).abs() < 1e-15);
        assert!((wigner_small_d(1, -1, -1, beta) - (beta / 2.0).cos()).abs() < 1e-15);
    }

    #[test]
    fn euler_round_trip() {
        let (a, b, g) = (0.4, 1.2, -0.9);
        let r = euler_to_matrix(a, b, g);
        let (a2, b2, g2) = matrix_to_euler(&r);
        let r2 = euler_to_matrix(a2, b2, g2);
        for i in 0..3 {
            for j in 0..3 {
                assert!((r[i][j] - r2[i][j]).abs() < 1e-12);
            }
        }
    }
}
