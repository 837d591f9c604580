//! Composite Gauss-Legendre integration with panel doubling.

use std::f64::consts::PI;

use super::OpticsError;

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Roots of P_n by Newton iteration from the Chebyshev-like initial guess.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                let step = p / d;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * d * d);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integral over `[a, b]` split into `panels` equal pieces.
    pub fn composite<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64, panels: usize) -> f64 {
        let width = (b - a) / panels as f64;
        let half = 0.5 * width;
        let mut total = 0.0;
        for p in 0..panels {
            let mid = a + (p as f64 + 0.5) * width;
            let mut panel = 0.0;
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                panel += w * f(mid + half * x);
            }
            total += panel * half;
        }
        total
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    /// Absolute difference between successive estimates that counts as converged.
    pub tolerance: f64,
    /// Maximum number of panel doublings.
    pub max_depth: u32,
    /// Points per panel.
    pub order: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        QuadratureSettings { tolerance: 1e-10, max_depth: 20, order: 10 }
    }
}

#[derive(Debug, Clone)]
pub struct Integrator {
    rule: GaussLegendre,
    settings: QuadratureSettings,
}

impl Integrator {
    pub fn new(settings: QuadratureSettings) -> Self {
        Integrator { rule: GaussLegendre::new(settings.order), settings }
    }

    pub fn settings(&self) -> &QuadratureSettings {
        &self.settings
    }

    /// Doubles the panel count until two successive estimates agree.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<f64, OpticsError> {
        let mut previous = self.rule.composite(&f, a, b, 1);
        let mut delta = f64::INFINITY;
        for depth in 1..=self.settings.max_depth {
            let current = self.rule.composite(&f, a, b, 1usize << depth);
            delta = (current - previous).abs();
            if delta < self.settings.tolerance {
                return Ok(current);
            }
            previous = current;
        }
        Err(OpticsError::NonConvergence { depth: self.settings.max_depth, last_delta: delta })
    }
}

impl Default for Integrator {
    fn default() -> Self {
        Integrator::new(QuadratureSettings::default())
    }
}
