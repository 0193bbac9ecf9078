//! Composite Gauss–Legendre quadrature.

use std::f64::consts::PI;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// by Newton's method on the three-term recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Composite rule over a list of panel endpoints.
#[derive(Debug, Clone)]
pub struct Composite {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Composite {
    pub fn new(order: usize) -> Self {
        let (nodes, weights) = gauss_legendre(order);
        Self { nodes, weights }
    }

    /// Integral over consecutive intervals `[breaks[i], breaks[i+1]]`.
    pub fn integrate(&self, breaks: &[f64], f: impl Fn(f64) -> f64) -> f64 {
        breaks
            .windows(2)
            .map(|w| {
                let (half, mid) = (0.5 * (w[1] - w[0]), 0.5 * (w[1] + w[0]));
                half * self
                    .nodes
                    .iter()
                    .zip(&self.weights)
                    .map(|(&t, &wt)| wt * f(mid + half * t))
                    .sum::<f64>()
            })
            .sum()
    }
}

/// Panel endpoints on `[0, end]` of width at most `width`. With `grade`,
/// the first panel is further split geometrically towards 0.
pub fn panels(end: f64, width: f64, grade: bool) -> Vec<f64> {
    let n = (end / width).ceil().max(1.0) as usize;
    let h = end / n as f64;
    let mut breaks = Vec::with_capacity(n + 13);
    breaks.push(0.0);
    if grade {
        breaks.extend((1..=12).rev().map(|j| h * 0.25f64.powi(j)));
    }
    breaks.extend((1..=n).map(|i| if i == n { end } else { i as f64 * h }));
    breaks
}
