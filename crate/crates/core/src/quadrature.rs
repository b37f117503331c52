//! Gauss-Legendre and second-kind Gauss-Chebyshev rules.

use std::f64::consts::PI;

use crate::error::{param, Result};

/// Nodes and weights of a one-dimensional quadrature rule on `interval`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub order: usize,
    pub interval: (f64, f64),
}

impl QuadratureRule {
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Legendre polynomial `P_n(x)` and its derivative by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n_f = n as f64;
    // P'_n = n (x P_n - P_{n-1}) / (x^2 - 1); nodes never sit at +-1.
    let dp = n_f * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Gauss-Legendre rule of `order` points on `[a, b]`.
///
/// Roots are found by Newton iteration from Tricomi's initial guess. Only the
/// upper half is computed, the rest follows from symmetry so the rule is
/// exactly symmetric about the interval midpoint.
pub fn gauss_legendre(order: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(param("order", "must be at least 1"));
    }
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(param(
            "interval",
            format!("need finite a < b, got ({a}, {b})"),
        ));
    }

    let n = order;
    let mut x_ref = vec![0.0; n];
    let mut w_ref = vec![0.0; n];
    let n_f = n as f64;
    for k in 0..n.div_ceil(2) {
        // k-th largest root.
        let theta = PI * (k as f64 + 0.75) / (n_f + 0.5);
        let mut x = (1.0 - (n_f - 1.0) / (8.0 * n_f.powi(3))) * theta.cos();
        if n % 2 == 1 && k == n / 2 {
            x = 0.0;
        }
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        x_ref[n - 1 - k] = x;
        x_ref[k] = -x;
        w_ref[n - 1 - k] = w;
        w_ref[k] = w;
    }
    if n % 2 == 1 {
        x_ref[n / 2] = 0.0;
    }

    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    Ok(QuadratureRule {
        nodes: x_ref.iter().map(|&x| mid + half * x).collect(),
        weights: w_ref.iter().map(|&w| half * w).collect(),
        order,
        interval: (a, b),
    })
}

/// Second-kind Gauss-Chebyshev rule for `∫ f(z) √(1−z²) dz` over `(−1, 1)`.
///
/// Nodes are returned in increasing order.
pub fn gauss_chebyshev2(order: usize) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(param("order", "must be at least 1"));
    }
    let step = PI / (order as f64 + 1.0);
    let (nodes, weights) = (1..=order)
        .rev()
        .map(|k| {
            let theta = k as f64 * step;
            let s = theta.sin();
            (theta.cos(), step * s * s)
        })
        .unzip();
    Ok(QuadratureRule {
        nodes,
        weights,
        order,
        interval: (-1.0, 1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn two_point_rule() {
        let r = gauss_legendre(2, -1.0, 1.0).unwrap();
        assert_relative_eq!(r.nodes[0], -0.5773502691896258, epsilon = 1e-15);
        assert_relative_eq!(r.nodes[1], 0.5773502691896258, epsilon = 1e-15);
        assert_relative_eq!(r.weights[0], 1.0, epsilon = 1e-15);
        assert_relative_eq!(r.weights[1], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn midpoint_rule() {
        let r = gauss_legendre(1, 0.0, 2.0).unwrap();
        assert_eq!(r.nodes, vec![1.0]);
        assert_eq!(r.weights, vec![2.0]);
    }

    #[test]
    fn five_points_integrate_x8() {
        let r = gauss_legendre(5, -1.0, 1.0).unwrap();
        let got = r.integrate(|x| x.powi(8));
        assert_relative_eq!(got, 2.0 / 9.0, epsilon = 1e-12);
    }

    #[test]
    fn node_residuals_and_weight_sum() {
        for n in [3, 10, 64, 100, 257] {
            let r = gauss_legendre(n, -1.0, 1.0).unwrap();
            for &x in &r.nodes {
                let (p, dp) = legendre_with_derivative(n, x);
                assert!((p / dp).abs() <= 1e-14, "n={n}");
            }
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
            assert!(r.weights.iter().all(|&w| w > 0.0));
            let sum: f64 = r.weights.iter().sum();
            assert_relative_eq!(sum, 2.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(gauss_legendre(0, 0.0, 1.0).is_err());
        assert!(gauss_legendre(3, 1.0, 1.0).is_err());
        assert!(gauss_legendre(3, 2.0, 1.0).is_err());
        assert!(gauss_chebyshev2(0).is_err());
    }

    #[test]
    fn chebyshev_single_node() {
        let r = gauss_chebyshev2(1).unwrap();
        assert!(r.nodes[0].abs() < 1e-16);
        assert_relative_eq!(r.weights[0], PI / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn chebyshev_moments() {
        let r = gauss_chebyshev2(32).unwrap();
        assert_relative_eq!(r.integrate(|_| 1.0), PI / 2.0, epsilon = 1e-12);
        assert!(r.integrate(|z| z).abs() < 1e-14);
        // ∫ z² √(1−z²) dz = π/8
        assert_relative_eq!(r.integrate(|z| z * z), PI / 8.0, epsilon = 1e-12);
        assert!(r.nodes.iter().all(|&z| z > -1.0 && z < 1.0));
        assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
    }
}
