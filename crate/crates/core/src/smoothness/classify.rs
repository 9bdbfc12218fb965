use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::fit::{grid_angle, in_window, linear_fit};
use super::sweep::force_monotone;
use super::Verdict;
use crate::seminorms::{complex_derivative_samples, default_grid};
use crate::space::PowerSeries;
use crate::{Error, Result};

/// Knobs of the growth-exponent classifier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifierThresholds {
    /// Slope above which an order is judged divergent.
    pub alpha_div: f64,
    /// Fits with a larger RMS residual are inconclusive.
    pub max_residual: f64,
    /// Radii `1 − 2^{−j}`, `j = j_min..=j_max`.
    pub j_min: u32,
    pub j_max: u32,
    /// A radius counts only when the truncation-tail estimate is below this
    /// fraction of `M_l(ρ)`.
    pub resolve_fraction: f64,
    /// Number of trailing resolved radii used in the fit.
    pub fit_window: usize,
    pub min_resolved: usize,
}

impl Default for ClassifierThresholds {
    fn default() -> Self {
        ClassifierThresholds {
            alpha_div: 0.1,
            max_residual: 0.1,
            j_min: 3,
            j_max: 14,
            resolve_fraction: 0.01,
            fit_window: 4,
            min_resolved: 3,
        }
    }
}

impl ClassifierThresholds {
    pub fn validate(&self) -> Result<()> {
        if !(self.j_min >= 1 && self.j_min < self.j_max && self.j_max <= 50) {
            return Err(Error::InvalidSchedule(format!("need 1 <= j_min < j_max <= 50, got {}..{}", self.j_min, self.j_max)));
        }
        if self.min_resolved < 2 || self.fit_window < self.min_resolved {
            return Err(Error::InvalidParameter("need 2 <= min_resolved <= fit_window".into()));
        }
        if !(self.alpha_div.is_finite() && self.max_residual > 0.0 && self.resolve_fraction > 0.0) {
            return Err(Error::InvalidParameter("thresholds must be positive and finite".into()));
        }
        Ok(())
    }

    pub fn radii(&self) -> Vec<f64> {
        (self.j_min..=self.j_max).map(|j| 1.0 - 2f64.powi(-(j as i32))).collect()
    }
}

/// Growth evidence for one derivative order.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderEvidence {
    pub order: usize,
    /// `M_l(ρ_j)`, sup over the grid (or window) at each schedule radius.
    pub sup_norms: Vec<f64>,
    pub resolved: Vec<bool>,
    pub slope: Option<f64>,
    pub residual: Option<f64>,
    pub verdict: Verdict,
    /// Set when the verdict was overridden by a lower divergent order.
    pub forced: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApClass {
    /// Order 0 already grows.
    NotContinuous,
    /// Orders `0..=p` bounded, `p + 1` divergent.
    Finite(usize),
    /// Every order up to the cap bounded.
    Capped(usize),
    Inconclusive,
}

impl ApClass {
    /// `p̂` when it is a definite integer (the cap counts).
    pub fn p_hat(self) -> Option<usize> {
        match self {
            ApClass::Finite(p) | ApClass::Capped(p) => Some(p),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApClassification {
    pub class: ApClass,
    pub p_max: usize,
    pub radii: Vec<f64>,
    pub grid: usize,
    pub window: Option<(f64, f64)>,
    pub orders: Vec<OrderEvidence>,
    pub thresholds: ClassifierThresholds,
}

impl ApClassification {
    pub fn inconclusive_count(&self) -> usize {
        self.orders.iter().filter(|o| o.verdict == Verdict::Inconclusive).count()
    }
}

/// Heuristic `A^p` classification by fitting `log M_l(ρ)` against
/// `−log(1 − ρ)` on the schedule `ρ_j = 1 − 2^{−j}`.
pub fn classify_ap(f: &PowerSeries, p_max: usize, th: &ClassifierThresholds) -> Result<ApClassification> {
    classify_ap_on(f, p_max, th, default_grid(f), None)
}

/// As [`classify_ap`] with an explicit grid, and the sup optionally taken
/// over the angle window `[lo, hi]` only.
pub fn classify_ap_on(
    f: &PowerSeries,
    p_max: usize,
    th: &ClassifierThresholds,
    grid: usize,
    window: Option<(f64, f64)>,
) -> Result<ApClassification> {
    th.validate()?;
    let radii = th.radii();
    let top = radii[radii.len() - 1];
    if !(top < f.assumed_radius()) {
        return Err(Error::OutsideDisk { modulus: top, radius: f.assumed_radius() });
    }
    if let Some((lo, hi)) = window {
        if !(lo < hi && hi - lo < crate::TAU) {
            return Err(Error::InvalidWindow { lo, hi });
        }
    }
    let mut orders = (0..=p_max)
        .map(|l| order_evidence(f, l, &radii, grid, window, th))
        .collect::<Result<Vec<_>>>()?;

    let ls: Vec<usize> = orders.iter().map(|o| o.order).collect();
    let mut verdicts: Vec<Verdict> = orders.iter().map(|o| o.verdict).collect();
    force_monotone(&ls, &mut verdicts);
    for (o, v) in orders.iter_mut().zip(verdicts) {
        if o.verdict != v {
            o.verdict = v;
            o.forced = true;
        }
    }
    let class = match orders.iter().find(|o| o.verdict != Verdict::Converges) {
        None => ApClass::Capped(p_max),
        Some(o) if o.verdict == Verdict::Inconclusive => ApClass::Inconclusive,
        Some(o) if o.order == 0 => ApClass::NotContinuous,
        Some(o) => ApClass::Finite(o.order - 1),
    };
    Ok(ApClassification { class, p_max, radii, grid, window, orders, thresholds: *th })
}

fn order_evidence(
    f: &PowerSeries,
    l: usize,
    radii: &[f64],
    grid: usize,
    window: Option<(f64, f64)>,
    th: &ClassifierThresholds,
) -> Result<OrderEvidence> {
    let d = f.derivative(l);
    let top = d.top_nonzero();
    let mut sup_norms = Vec::with_capacity(radii.len());
    let mut resolved = Vec::with_capacity(radii.len());
    for &rho in radii {
        let samples = complex_derivative_samples(f, l, rho, grid)?;
        let m = samples
            .iter()
            .enumerate()
            .filter(|(j, _)| window.is_none_or(|(lo, hi)| in_window(grid_angle(*j, grid), lo, hi)))
            .map(|(_, v)| v.norm())
            .fold(0.0, f64::max);
        let ok = f.assumed_radius() > 1.0
            || top.is_none_or(|t| d.coeffs()[t].norm() * rho.powi(t as i32) / (1.0 - rho) <= th.resolve_fraction * m);
        sup_norms.push(m);
        resolved.push(ok);
    }
    let mut ev = OrderEvidence { order: l, sup_norms, resolved, slope: None, residual: None, verdict: Verdict::Converges, forced: false };
    if top.is_none() {
        return Ok(ev);
    }
    let idx: Vec<usize> = (0..radii.len()).filter(|&i| ev.resolved[i]).collect();
    if idx.len() < th.min_resolved {
        ev.verdict = Verdict::Inconclusive;
        return Ok(ev);
    }
    let sel = &idx[idx.len().saturating_sub(th.fit_window)..];
    if sel.iter().any(|&i| ev.sup_norms[i] == 0.0) {
        return Ok(ev);
    }
    let x: Vec<f64> = sel.iter().map(|&i| -(1.0 - radii[i]).ln()).collect();
    let y: Vec<f64> = sel.iter().map(|&i| ev.sup_norms[i].ln()).collect();
    let (slope, _, rms) = linear_fit(&x, &y).ok_or(Error::InvalidSchedule("degenerate radius schedule".into()))?;
    ev.slope = Some(slope);
    ev.residual = Some(rms);
    ev.verdict = if rms > th.max_residual {
        Verdict::Inconclusive
    } else if slope > th.alpha_div {
        Verdict::Diverges
    } else {
        Verdict::Converges
    };
    Ok(ev)
}
