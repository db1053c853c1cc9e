//! Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
//! Legendre recurrence. Exact for polynomials of degree 2n - 1.

/// Returns `(nodes, weights)` of the n-point Gauss-Legendre rule, nodes in
/// ascending order.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Tricomi initial guess, then Newton
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_pair(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        // enforce exact symmetry at the center
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Value and derivative of P_n at x.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Equispaced nodes on [0, period) with uniform weight period/n; the exact
/// rule for trigonometric polynomials of frequency below n (relative to the
/// period).
pub fn equispaced(n: usize, period: f64) -> (Vec<f64>, f64) {
    let nodes = (0..n).map(|k| period * k as f64 / n as f64).collect();
    (nodes, period / n as f64)
}
