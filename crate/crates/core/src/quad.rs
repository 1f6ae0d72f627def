// SPDX-License-Identifier: Apache-2.0

//! Gauss–Legendre nodes and weights, computed at runtime by Newton iteration
//! on the Legendre recurrence. Used by the diagonal Padé approximant of the
//! logarithm and by the integral-form Fréchet cross-checks.

/// Nodes and weights of the n-point Gauss–Legendre rule on [0, 1].
pub fn gauss_legendre_01(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    // Symmetric rule: solve for the first half on [-1, 1], mirror the rest.
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    // Map [-1, 1] → [0, 1].
    for i in 0..n {
        nodes[i] = 0.5 * (nodes[i] + 1.0);
        weights[i] *= 0.5;
    }
    (nodes, weights)
}

/// Legendre polynomial P_n and its derivative at x, by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_interval_length() {
        for n in [1, 2, 7, 8, 16, 33, 128] {
            let (_, w) = gauss_legendre_01(n);
            let total: f64 = w.iter().sum();
            assert!((total - 1.0).abs() < 1e-13, "n={n}: weight sum {total}");
        }
    }

    #[test]
    fn integrates_polynomials_exactly() {
        // n-point GL is exact for degree 2n-1: ∫₀¹ x^9 dx = 1/10 with n=5.
        let (x, w) = gauss_legendre_01(5);
        let got: f64 = x.iter().zip(&w).map(|(&t, &wi)| wi * t.powi(9)).sum();
        assert!((got - 0.1).abs() < 1e-14);
    }

    #[test]
    fn matches_seven_point_reference() {
        // Midpoint node of the odd rule sits at 1/2 with weight 256/1225·(1/2).
        let (x, w) = gauss_legendre_01(7);
        assert!((x[3] - 0.5).abs() < 1e-15);
        assert!((w[3] - 0.417959183673469 / 2.0).abs() < 1e-13);
    }
}
