use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::classify::{classify_ap_on, OrderEvidence};
use super::fit::{in_window, window_angles};
use super::sweep::check_radii;
use super::{ClassifierThresholds, Verdict};
use crate::extension::{smooth_arc_completion, ArcExtension, SplitExtension};
use crate::kernel::PoissonDerivative;
use crate::seminorms::default_grid;
use crate::space::{Arc, ArcTrace, DiffScheme, PowerSeries};
use crate::{Error, Result, TAU};

/// Decay of the arc extension on a compact window of the complementary arc.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcDecayReport {
    pub order: usize,
    pub window: (f64, f64),
    pub radii: Vec<f64>,
    /// `sup |∂^l A/∂θ^l (re^{iθ})|` over the window samples.
    pub sups: Vec<f64>,
    /// Explicit bound per radius, first order only.
    pub bounds: Option<Vec<f64>>,
    /// Cosine-separation constant `max{cos(θ₁ − b), cos(θ₂ − a)}`.
    pub separation: f64,
    pub violations: usize,
    pub decreasing: bool,
}

/// `(1/2π)‖u‖_∞ · 2r(1 − r²)/((1 − r)² + 2r(1 − M))`.
pub fn decay_bound(sup_u: f64, r: f64, separation: f64) -> f64 {
    sup_u / TAU * 2.0 * r * (1.0 - r * r) / ((1.0 - r).powi(2) + 2.0 * r * (1.0 - separation))
}

/// Checks that `∂^l A/∂θ^l` tends to zero on `[θ₁, θ₂]`, a window strictly
/// inside the complement of the arc, sampling `n` angles per radius. For
/// `l = 1` every sample is also compared with [`decay_bound`].
pub fn arc_decay_check(u: &ArcTrace, window: (f64, f64), order: usize, radii: &[f64], n: usize) -> Result<ArcDecayReport> {
    check_radii(radii)?;
    let arc = u.arc();
    let (lo, hi) = window;
    if !arc.complement().contains_window(lo, hi) {
        return Err(Error::InvalidWindow { lo, hi });
    }
    let ext = ArcExtension::new(u.clone());
    let kernel = PoissonDerivative::new(order)?;
    let separation = (lo - arc.b()).cos().max((hi - arc.a()).cos());
    let sup_u = u.sup_norm();
    let mut sups = Vec::with_capacity(radii.len());
    let mut bounds = Vec::with_capacity(radii.len());
    let mut violations = 0;
    for &r in radii {
        let bound = decay_bound(sup_u, r, separation);
        let mut s: f64 = 0.0;
        for theta in window_angles(lo, hi, n.max(2)) {
            let v = ext.eval_polar(&kernel, r, theta)?.norm();
            if order == 1 && v > bound {
                violations += 1;
            }
            s = s.max(v);
        }
        sups.push(s);
        bounds.push(bound);
    }
    let decreasing = sups.windows(2).all(|w| w[1] < w[0]) || sups.iter().all(|s| *s == 0.0);
    Ok(ArcDecayReport {
        order,
        window,
        radii: radii.to_vec(),
        sups,
        bounds: (order == 1).then_some(bounds),
        separation,
        violations,
        decreasing,
    })
}

/// Convergence of `∂^l A/∂θ^l` to `u^{(l)}` on a window inside the arc.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcConvergenceReport {
    pub order: usize,
    pub smoothness: usize,
    pub window: (f64, f64),
    pub radii: Vec<f64>,
    /// `sup |∂^l A/∂θ^l (re^{iθ}) − u^{(l)}(θ)|` over the window.
    pub sup_errors: Vec<f64>,
    /// `sup |∂^l B/∂θ^l|` over the window, `B` the extension of the
    /// completed trace from the complementary arc.
    pub b_sups: Vec<f64>,
    /// Points of the completion grid used on the window.
    pub points: usize,
    pub decreasing: bool,
    /// Spectral-energy warning of the reference derivative.
    pub warning: bool,
}

/// Completes `u` to a periodic `C^p` trace on `m` points, takes the spectral
/// derivative of order `l ≤ p` as reference on the grid angles in `[c, d]`,
/// and compares it with the arc extension at each radius. At most
/// `max_points` window angles are used.
pub fn arc_convergence_check(
    u: &ArcTrace,
    p: usize,
    order: usize,
    window: (f64, f64),
    radii: &[f64],
    m: usize,
    max_points: usize,
) -> Result<ArcConvergenceReport> {
    check_radii(radii)?;
    if order > p {
        return Err(Error::OrderExceedsClaim { order, claim: p });
    }
    let arc = u.arc();
    let (lo, hi) = window;
    if !arc.contains_window(lo, hi) {
        return Err(Error::InvalidWindow { lo, hi });
    }
    let g = smooth_arc_completion(u, p, m)?;
    let d = g.derivative(order, DiffScheme::Spectral)?;
    let mut pts: Vec<(f64, Complex64)> = (0..m)
        .filter(|&j| in_window(g.angle(j), lo, hi))
        .map(|j| (g.angle(j), d.trace.samples()[j]))
        .collect();
    if max_points > 0 && pts.len() > max_points {
        let stride = pts.len().div_ceil(max_points);
        pts = pts.into_iter().step_by(stride).collect();
    }
    let ext = ArcExtension::new(u.clone());
    let split = SplitExtension::new(&g, arc)?;
    let kernel = PoissonDerivative::new(order)?;
    let mut sup_errors = Vec::with_capacity(radii.len());
    let mut b_sups = Vec::with_capacity(radii.len());
    for &r in radii {
        let mut e: f64 = 0.0;
        let mut b: f64 = 0.0;
        for (theta, reference) in &pts {
            e = e.max((ext.eval_polar(&kernel, r, *theta)? - reference).norm());
            b = b.max(split.b().eval_polar(&kernel, r, *theta)?.norm());
        }
        sup_errors.push(e);
        b_sups.push(b);
    }
    let decreasing = sup_errors.windows(2).all(|w| w[1] < w[0]);
    Ok(ArcConvergenceReport {
        order,
        smoothness: p,
        window,
        radii: radii.to_vec(),
        sup_errors,
        b_sups,
        points: pts.len(),
        decreasing,
        warning: d.warning,
    })
}

/// Per-order verdicts for `f` on a window compactly inside an arc.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcClassification {
    pub arc: Arc,
    pub window: (f64, f64),
    pub orders: Vec<OrderEvidence>,
    /// `max |FD_h[f(ρe^{it})] − iρe^{it} f'(ρe^{it})|` on the window at the
    /// outermost radius resolved at order 1, when order 1 is judged
    /// convergent.
    pub cross_check: Option<f64>,
    pub cross_check_radius: Option<f64>,
    pub cross_check_step: f64,
}

impl ArcClassification {
    pub fn verdict(&self, order: usize) -> Option<Verdict> {
        self.orders.iter().find(|o| o.order == order).map(|o| o.verdict)
    }
}

const CROSS_CHECK_STEP: f64 = 1e-5;
const CROSS_CHECK_POINTS: usize = 256;

/// Window margin `min(0.25, (b − a)/4)` on each side of the arc.
pub fn arc_window(arc: Arc) -> (f64, f64) {
    let margin = 0.25f64.min(arc.len() / 4.0);
    (arc.a() + margin, arc.b() - margin)
}

/// Growth fitting as in [`classify_ap`](super::classify_ap) with the sup
/// restricted to a window compactly inside `arc`.
pub fn arc_classify(f: &PowerSeries, arc: Arc, p: usize, th: &ClassifierThresholds) -> Result<ArcClassification> {
    let window = arc_window(arc);
    let grid = default_grid(f);
    let c = classify_ap_on(f, p, th, grid, Some(window))?;
    let check = if c.orders.get(1).is_some_and(|o| o.verdict == Verdict::Converges) {
        // outermost radius the truncated series resolves at order 1
        let o1 = &c.orders[1];
        let rho = c.radii.iter().zip(&o1.resolved).filter(|(_, ok)| **ok).map(|(r, _)| *r).next_back().unwrap_or(c.radii[0]);
        let df = f.derivative(1);
        let i = Complex64::new(0.0, 1.0);
        let h = CROSS_CHECK_STEP;
        let g = |t: f64| f.horner(Complex64::from_polar(rho, t));
        let worst = window_angles(window.0, window.1, CROSS_CHECK_POINTS)
            .map(|t| {
                let z = Complex64::from_polar(rho, t);
                ((g(t + h) - g(t - h)) / (2.0 * h) - i * z * df.horner(z)).norm()
            })
            .fold(0.0, f64::max);
        Some((worst, rho))
    } else {
        None
    };
    Ok(ArcClassification {
        arc,
        window,
        orders: c.orders,
        cross_check: check.map(|c| c.0),
        cross_check_radius: check.map(|c| c.1),
        cross_check_step: CROSS_CHECK_STEP,
    })
}
