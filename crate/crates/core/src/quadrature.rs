//! Gauss–Legendre rules and periodic trapezoid helpers.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Computes an `n`-point rule by Newton iteration on `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            nodes.push(x);
            weights.push(2.0 / ((1.0 - x * x) * dp * dp));
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Radial rule on `[0, r]`: `panels` equal panels of `nodes` Gauss points.
///
/// The last equal panel is split further, each cut halving the distance to
/// `1`, until a panel is no wider than `max_width`. A radial factor such as
/// `ρ^{2N}` then varies by a bounded amount across every panel near the
/// circle. Pass `f64::INFINITY` for plain equal panels.
pub fn radial_rule(r: f64, panels: usize, nodes: usize, max_width: f64) -> Vec<(f64, f64)> {
    let rule = GaussLegendre::new(nodes);
    let width = r / panels as f64;
    let mut cuts: Vec<f64> = (0..panels).map(|p| p as f64 * width).collect();
    let mut current = *cuts.last().unwrap_or(&0.0);
    loop {
        let step = (1.0 - current) / 2.0;
        if step <= max_width || current + step >= r {
            break;
        }
        current += step;
        cuts.push(current);
    }
    cuts.push(r);
    cuts.windows(2)
        .flat_map(|w| rule.mapped(w[0], w[1]).collect::<Vec<_>>())
        .collect()
}

/// Uniform angles `2 pi j / n`.
pub fn circle_angles(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |j| 2.0 * PI * j as f64 / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(8);
        for p in 0..16 {
            let exact = if p % 2 == 0 { 2.0 / (p as f64 + 1.0) } else { 0.0 };
            let got = rule.integrate(-1.0, 1.0, |x| x.powi(p));
            assert!((got - exact).abs() < 1e-14, "degree {p}: {got}");
        }
    }

    #[test]
    fn weights_sum_to_interval_length() {
        let rule = GaussLegendre::new(64);
        let total: f64 = rule.mapped(0.0, 3.0).map(|(_, w)| w).sum();
        assert!((total - 3.0).abs() < 1e-13);
    }

    #[test]
    fn radial_rule_integrates_r_cubed() {
        let rule = radial_rule(0.7, 8, 16, f64::INFINITY);
        assert_eq!(rule.len(), 128);
        let got: f64 = rule.iter().map(|(x, w)| w * x * x * x).sum();
        assert!((got - 0.7f64.powi(4) / 4.0).abs() < 1e-15);
    }

    #[test]
    fn graded_rule_resolves_high_powers() {
        let r = 1.0 - 1e-4;
        let n = 32768;
        let exact = r.powi(n + 1) / (n + 1) as f64;
        let plain: f64 = radial_rule(r, 8, 64, f64::INFINITY).iter().map(|(x, w)| w * x.powi(n)).sum();
        let graded: f64 = radial_rule(r, 8, 64, 64.0 / n as f64).iter().map(|(x, w)| w * x.powi(n)).sum();
        assert!(((graded - exact) / exact).abs() < 1e-10, "{graded} vs {exact}");
        assert!(((plain - exact) / exact).abs() > 1e-6);
        let total: f64 = radial_rule(r, 8, 64, 1e-3).iter().map(|(_, w)| w).sum();
        assert!((total - r).abs() < 1e-14);
    }
}
