//! Composite Gauss–Legendre rules on panels graded toward a kernel peak.

use core::f64::consts::PI;

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

/// Nodes per panel.
pub const GL_POINTS: usize = 16;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            // Chebyshev-like initial guess, then Newton on P_n
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre(n, x);
            nodes.push(x);
            weights.push(2.0 / ((1.0 - x * x) * dp * dp));
        }
        GaussLegendre { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Calls `f(t, w)` for every node of the rule mapped to `[lo, hi]`.
    pub fn for_each(&self, lo: f64, hi: f64, mut f: impl FnMut(f64, f64)) {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            f(mid + half * x, half * w);
        }
    }
}

// (P_n(x), P_n'(x)) by the three-term recurrence
fn legendre(n: usize, x: f64) -> (f64, f64) {
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
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Panels covering `[lo, hi]`, starting with width `w0` at `peak` and doubling
/// outward, never longer than `max_len`.
pub fn graded_panels(lo: f64, hi: f64, peak: f64, w0: f64, max_len: f64) -> Vec<(f64, f64)> {
    let peak = peak.clamp(lo, hi);
    let w0 = w0.clamp(1e-15, max_len);
    let mut out = Vec::new();
    let (mut x, mut w) = (peak, w0);
    while x > lo {
        let next = (x - w.min(max_len)).max(lo);
        out.push((next, x));
        x = next;
        w *= 2.0;
    }
    out.reverse();
    let (mut x, mut w) = (peak, w0);
    while x < hi {
        let next = (x + w.min(max_len)).min(hi);
        out.push((x, next));
        x = next;
        w *= 2.0;
    }
    out
}
