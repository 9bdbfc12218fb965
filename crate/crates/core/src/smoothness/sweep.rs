use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::fit::{grid_angle, linear_fit};
use super::{ClassifierThresholds, Verdict};
use crate::seminorms::{complex_derivative_samples, ChainRuleSystem};
use crate::space::{BoundaryTrace, DiffScheme, PowerSeries, Smoothness};
use crate::{Error, Result};

/// Result of a radial sweep: sup-errors against the rim trace, per order and
/// radius, with fitted exponents.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub orders: Vec<usize>,
    pub radii: Vec<f64>,
    pub reference_radius: f64,
    pub grid: usize,
    /// `[order][radius]`: `sup_θ |∂^l_θ f(re^{iθ}) − ∂^l_θ f(e^{iθ})|`.
    pub sup_errors: Vec<Vec<f64>>,
    /// `[order][radius]`: `M_l(r) = sup_θ |f^{(l)}(re^{iθ})|`.
    pub sup_norms: Vec<Vec<f64>>,
    /// `α` in `error ~ (1 − r)^α`.
    pub error_exponents: Vec<Option<f64>>,
    /// `α` in `M_l(r) ~ (1 − r)^{−α}`.
    pub growth_exponents: Vec<Option<f64>>,
    pub verdicts: Vec<Verdict>,
    /// Gap between the exact rim derivative and the spectral derivative of
    /// the rim samples, when the grid resolves the series.
    pub rim_spectral_gap: Vec<Option<f64>>,
}

pub(crate) fn check_radii(radii: &[f64]) -> Result<()> {
    if radii.is_empty() {
        return Err(Error::InvalidSchedule("empty radius schedule".into()));
    }
    if let Some(r) = radii.iter().find(|r| !(**r >= 0.0 && **r < 1.0)) {
        return Err(Error::InvalidSchedule(format!("radius {r} not in [0, 1)")));
    }
    if radii.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidSchedule("radii must increase strictly".into()));
    }
    Ok(())
}

/// `∂^l/∂θ^l f(ρ e^{iθ})` on the `m`-point grid, assembled as
/// `Σ_k P_{k,l}(z) f^{(k)}(z)`.
pub fn angular_derivative_via_chain(
    f: &PowerSeries,
    l: usize,
    rho: f64,
    m: usize,
    system: Option<&ChainRuleSystem>,
) -> Result<Vec<Complex64>> {
    if l == 0 {
        return complex_derivative_samples(f, 0, rho, m);
    }
    let owned;
    let sys = match system {
        Some(s) if s.order() >= l => s,
        _ => {
            owned = ChainRuleSystem::new(l)?;
            &owned
        }
    };
    let mut out = alloc::vec![Complex64::new(0.0, 0.0); m];
    for k in 1..=l {
        let dk = complex_derivative_samples(f, k, rho, m)?;
        let p = sys.p(k, l);
        for (j, (o, d)) in out.iter_mut().zip(&dk).enumerate() {
            *o += p.eval(Complex64::from_polar(rho, grid_angle(j, m))) * d;
        }
    }
    Ok(out)
}

fn sup_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn sup(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Radial sweep of the angular derivatives of `f` toward the rim.
///
/// The reference is the rim (`ρ_ref = 1`); `f` must be declared in `A(D)`,
/// i.e. `assumed_radius ≥ 1`.
pub fn radial_sweep(
    f: &PowerSeries,
    orders: &[usize],
    radii: &[f64],
    m: usize,
    thresholds: &ClassifierThresholds,
) -> Result<ConvergenceReport> {
    check_radii(radii)?;
    if f.assumed_radius() < 1.0 {
        return Err(Error::PolicyViolation(format!(
            "radial sweep needs f in A(D), assumed_radius = {}",
            f.assumed_radius()
        )));
    }
    let max_order = orders.iter().copied().max().unwrap_or(0);
    let sys = if max_order > 0 { Some(ChainRuleSystem::new(max_order)?) } else { None };
    let rim_trace = BoundaryTrace::from_series(f, 1.0, m)?.with_claim(Smoothness::Unbounded);
    let resolved = f.top_nonzero().is_none_or(|t| 2 * t < m);

    let mut report = ConvergenceReport {
        orders: orders.to_vec(),
        radii: radii.to_vec(),
        reference_radius: 1.0,
        grid: m,
        sup_errors: Vec::new(),
        sup_norms: Vec::new(),
        error_exponents: Vec::new(),
        growth_exponents: Vec::new(),
        verdicts: Vec::new(),
        rim_spectral_gap: Vec::new(),
    };
    for &l in orders {
        let reference = angular_derivative_via_chain(f, l, 1.0, m, sys.as_ref())?;
        let mut errs = Vec::with_capacity(radii.len());
        let mut norms = Vec::with_capacity(radii.len());
        for &r in radii {
            errs.push(sup_diff(&angular_derivative_via_chain(f, l, r, m, sys.as_ref())?, &reference));
            norms.push(sup(&complex_derivative_samples(f, l, r, m)?));
        }
        let gap = if resolved {
            let spectral = rim_trace.derivative(l, DiffScheme::Spectral)?.trace;
            Some(sup_diff(spectral.samples(), &reference))
        } else {
            None
        };
        let (err_exp, growth_exp, verdict) = judge(f, l, radii, &errs, &norms, thresholds);
        report.sup_errors.push(errs);
        report.sup_norms.push(norms);
        report.error_exponents.push(err_exp);
        report.growth_exponents.push(growth_exp);
        report.verdicts.push(verdict);
        report.rim_spectral_gap.push(gap);
    }
    force_monotone(&report.orders, &mut report.verdicts);
    Ok(report)
}

// growth is fitted only on outer radii where the truncation tail is negligible
fn judge(
    f: &PowerSeries,
    l: usize,
    radii: &[f64],
    errs: &[f64],
    norms: &[f64],
    th: &ClassifierThresholds,
) -> (Option<f64>, Option<f64>, Verdict) {
    let d = f.derivative(l);
    let tail = |r: f64| match d.top_nonzero() {
        Some(t) if f.assumed_radius() <= 1.0 => d.coeffs()[t].norm() * r.powi(t as i32) / (1.0 - r),
        _ => 0.0,
    };
    // small radii say nothing about rim growth; use the classifier's regime
    let inner = 1.0 - 2f64.powi(-(th.j_min as i32));
    let fit_on = |vals: &[f64], only_resolved: bool| -> Option<(f64, f64)> {
        let (x, y): (Vec<f64>, Vec<f64>) = radii
            .iter()
            .zip(vals)
            .filter(|(r, v)| {
                **v > 0.0 && (!only_resolved || (**r >= inner && tail(**r) <= th.resolve_fraction * **v))
            })
            .map(|(r, v)| (-(1.0 - r).ln(), v.ln()))
            .unzip();
        if only_resolved && x.len() < th.min_resolved {
            return None;
        }
        linear_fit(&x, &y).map(|(s, _, rms)| (s, rms))
    };
    let err_fit = fit_on(errs, false).map(|(s, rms)| (-s, rms));
    let growth_fit = fit_on(norms, true);
    let err_exp = err_fit.map(|e| e.0);
    let growth_exp = growth_fit.map(|g| g.0);
    if errs.iter().all(|e| *e == 0.0) {
        return (err_exp, growth_exp, Verdict::Converges);
    }
    let monotone = errs.windows(2).all(|w| w[1] <= w[0]);
    let errors_shrink = monotone && err_fit.is_some_and(|(a, _)| a > th.alpha_div);
    let settle = |ok: bool| if ok { Verdict::Converges } else { Verdict::Inconclusive };
    let verdict = if f.assumed_radius() > 1.0 {
        settle(errors_shrink)
    } else {
        match growth_fit {
            None => Verdict::Inconclusive,
            Some((s, rms)) if s > th.alpha_div && rms < th.max_residual => Verdict::Diverges,
            Some((s, _)) if s > th.alpha_div => Verdict::Inconclusive,
            Some(_) => settle(errors_shrink),
        }
    };
    (err_exp, growth_exp, verdict)
}

/// Divergence at an order forces divergence at every higher order.
pub(crate) fn force_monotone(orders: &[usize], verdicts: &mut [Verdict]) {
    let first = orders
        .iter()
        .zip(verdicts.iter())
        .filter(|(_, v)| **v == Verdict::Diverges)
        .map(|(l, _)| *l)
        .min();
    if let Some(d) = first {
        for (l, v) in orders.iter().zip(verdicts.iter_mut()) {
            if *l > d {
                *v = Verdict::Diverges;
            }
        }
    }
}

/// `max_j |(g(t_j + h) − g(t_j − h))/2h − g'(t_j)|` over the `m`-point grid.
pub fn fd_discrepancy(m: usize, h: f64, g: impl Fn(f64) -> Complex64, dg: impl Fn(f64) -> Complex64) -> f64 {
    (0..m)
        .map(|j| {
            let t = grid_angle(j, m);
            ((g(t + h) - g(t - h)) / (2.0 * h) - dg(t)).norm()
        })
        .fold(0.0, f64::max)
}

/// Largest gap between a central difference of `g(t) = f(e^{it})` and
/// `i e^{it} f'(e^{it})` on the `m`-point grid.
pub fn verify_trace_formula(f: &PowerSeries, m: usize, h: f64) -> Result<f64> {
    if !(f.assumed_radius() > 1.0) {
        return Err(Error::PolicyViolation("trace formula check needs assumed_radius > 1".into()));
    }
    if !(h > 0.0) || m == 0 {
        return Err(Error::InvalidParameter(format!("need h > 0 and m > 0, got h = {h}, m = {m}")));
    }
    let df = f.derivative(1);
    let i = Complex64::new(0.0, 1.0);
    Ok(fd_discrepancy(
        m,
        h,
        |t| f.horner(Complex64::from_polar(1.0, t)),
        |t| {
            let z = Complex64::from_polar(1.0, t);
            i * z * df.horner(z)
        },
    ))
}
