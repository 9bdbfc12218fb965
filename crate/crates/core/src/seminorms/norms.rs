use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::ChainRuleSystem;
use crate::fft::next_power_of_two;
use crate::space::{falling_factorial, i_pow, sample_on_circle, BoundaryTrace, DiffScheme, PowerSeries, MIN_TRACE_LEN};
use crate::{Error, Result};

/// Radius `1 − 2^{−14}` used in place of the rim for series of radius 1.
pub const PROXY_RADIUS: f64 = 1.0 - 1.0 / 16384.0;

/// Where rim sup-norms are taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RimPolicy {
    /// On `|z| = 1`; needs `assumed_radius > 1`.
    Rim,
    /// On `|z| = PROXY_RADIUS`, flagged as a proxy.
    InteriorProxy,
    /// `Rim` when allowed, otherwise `InteriorProxy`.
    #[default]
    Auto,
}

impl RimPolicy {
    /// Sampling radius and proxy flag for `f`.
    pub fn resolve(self, f: &PowerSeries) -> Result<(f64, bool)> {
        let radius = f.assumed_radius();
        match self {
            RimPolicy::Rim if radius > 1.0 => Ok((1.0, false)),
            RimPolicy::Rim => Err(Error::PolicyViolation(format!(
                "rim sampling needs assumed_radius > 1, got {radius}"
            ))),
            RimPolicy::InteriorProxy | RimPolicy::Auto => {
                if matches!(self, RimPolicy::Auto) && radius > 1.0 {
                    Ok((1.0, false))
                } else if PROXY_RADIUS < radius {
                    Ok((PROXY_RADIUS, true))
                } else {
                    Err(Error::PolicyViolation(format!("proxy radius exceeds assumed_radius {radius}")))
                }
            }
        }
    }
}

/// Grid used when the caller does not choose one: at least 1024 points and
/// twice the number of stored coefficients.
pub fn default_grid(f: &PowerSeries) -> usize {
    1024.max(2 * next_power_of_two(f.degree() + 1))
}

/// Samples of `f^{(l)}(ρ e^{it})` on the `m`-point grid.
pub fn complex_derivative_samples(f: &PowerSeries, l: usize, rho: f64, m: usize) -> Result<Vec<Complex64>> {
    check_grid(m)?;
    let terms = f.coeffs().iter().enumerate().skip(l).map(|(n, a)| (n - l, a * falling_factorial(n, l)));
    sample_on_circle(terms, rho, m)
}

/// Samples of `d^l/dt^l f(ρ e^{it})`, from the coefficients `a_n (in)^l ρ^n`.
pub fn angular_derivative_samples(f: &PowerSeries, l: usize, rho: f64, m: usize) -> Result<Vec<Complex64>> {
    check_grid(m)?;
    let il = i_pow(l);
    let terms = f.coeffs().iter().enumerate().map(|(n, a)| (n, a * il * (n as f64).powi(l as i32)));
    sample_on_circle(terms, rho, m)
}

fn check_grid(m: usize) -> Result<()> {
    if m < MIN_TRACE_LEN || !m.is_power_of_two() {
        return Err(Error::GridSize(m, MIN_TRACE_LEN));
    }
    Ok(())
}

fn grid_max(samples: &[Complex64]) -> f64 {
    samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// One semi-norm estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeminormValue {
    pub value: f64,
    pub radius: f64,
    pub proxy: bool,
    pub grid: usize,
}

/// `|f|_l`: grid maximum of `|f^{(l)}|` on the circle picked by `policy`.
pub fn seminorm(f: &PowerSeries, l: usize, m: usize, policy: RimPolicy) -> Result<SeminormValue> {
    let (radius, proxy) = policy.resolve(f)?;
    let value = grid_max(&complex_derivative_samples(f, l, radius, m)?);
    Ok(SeminormValue { value, radius, proxy, grid: m })
}

/// `|g|_l` for a sampled trace: maximum of the spectral derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceSeminorm {
    pub value: f64,
    pub warning: bool,
}

pub fn seminorm_trace(g: &BoundaryTrace, l: usize) -> Result<TraceSeminorm> {
    g.claim().check(l)?;
    let d = g.derivative(l, DiffScheme::Spectral)?;
    Ok(TraceSeminorm { value: d.trace.sup_norm(), warning: d.warning })
}

/// `|f|_0, …, |f|_p` on one grid and radius.
#[derive(Debug, Clone, PartialEq)]
pub struct SeminormVector {
    pub values: Vec<f64>,
    pub grid: usize,
    pub radius: f64,
    pub proxy: bool,
}

impl SeminormVector {
    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, l: usize) -> f64 {
        self.values[l]
    }
}

/// `|f|_l` for `l = 0..=p`.
pub fn seminorm_vector(f: &PowerSeries, p: usize, m: usize, policy: RimPolicy) -> Result<SeminormVector> {
    let (radius, proxy) = policy.resolve(f)?;
    let values = (0..=p)
        .map(|l| complex_derivative_samples(f, l, radius, m).map(|s| grid_max(&s)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SeminormVector { values, grid: m, radius, proxy })
}

/// `|g|_l` for `l = 0..=p`, `g(t) = f(ρ e^{it})`, computed from exact
/// coefficients rather than by differentiating samples.
pub fn trace_seminorm_vector(f: &PowerSeries, p: usize, m: usize, policy: RimPolicy) -> Result<SeminormVector> {
    let (radius, proxy) = policy.resolve(f)?;
    let values = (0..=p)
        .map(|l| angular_derivative_samples(f, l, radius, m).map(|s| grid_max(&s)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SeminormVector { values, grid: m, radius, proxy })
}

/// Residuals `(rhs − lhs)/max(1, rhs)` of the three inequality families.
/// Nonnegative up to [`EQUIVALENCE_SLACK`] means the inequality holds.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    pub f_norms: SeminormVector,
    pub g_norms: SeminormVector,
    /// `−||f|_0 − |g|_0|`, scaled.
    pub zeroth: f64,
    /// `|f|_l ≤ Σ_k b_{k,l} |g|_k`, entry `l − 1`.
    pub f_by_g: Vec<f64>,
    /// `|g|_l ≤ Σ_k a_{k,l} |f|_k`, entry `l − 1`.
    pub g_by_f: Vec<f64>,
}

pub const EQUIVALENCE_SLACK: f64 = 1e-9;

impl EquivalenceReport {
    pub fn min_residual(&self) -> f64 {
        self.f_by_g.iter().chain(&self.g_by_f).fold(self.zeroth, |m, r| m.min(*r))
    }

    pub fn holds(&self) -> bool {
        self.min_residual() >= -EQUIVALENCE_SLACK
    }
}

fn residual(lhs: f64, rhs: f64) -> f64 {
    (rhs - lhs) / rhs.max(1.0)
}

/// Checks the semi-norm equivalence between `f` and `g(t) = f(ρ e^{it})` up to
/// order `p`.
///
/// At a proxy radius `ρ < 1` the `Q` polynomials are evaluated at
/// `|w| = 1/ρ`, so their coefficient sums are weighted by `ρ^{−j}`; the `P`
/// side only improves since `|z| = ρ < 1`.
pub fn check_equivalence(f: &PowerSeries, p: usize, m: usize, policy: RimPolicy) -> Result<EquivalenceReport> {
    let f_norms = seminorm_vector(f, p, m, policy)?;
    let g_norms = trace_seminorm_vector(f, p, m, policy)?;
    let rho = f_norms.radius;
    let zeroth = -(f_norms.get(0) - g_norms.get(0)).abs() / f_norms.get(0).max(1.0);
    let mut f_by_g = Vec::with_capacity(p);
    let mut g_by_f = Vec::with_capacity(p);
    if p > 0 {
        let sys = ChainRuleSystem::new(p)?;
        for l in 1..=p {
            let rhs_f: f64 = (1..=l).map(|k| sys.q(k, l).weighted_abs_sum(rho) * g_norms.get(k)).sum();
            f_by_g.push(residual(f_norms.get(l), rhs_f));
            let rhs_g: f64 = (1..=l).map(|k| sys.a(k, l) * f_norms.get(k)).sum();
            g_by_f.push(residual(g_norms.get(l), rhs_g));
        }
    }
    Ok(EquivalenceReport { f_norms, g_norms, zeroth, f_by_g, g_by_f })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn cubic() -> PowerSeries {
        PowerSeries::polynomial(vec![c(0.0), c(2.0), c(0.0), c(1.0)]).unwrap()
    }

    #[test]
    fn monomial_seminorms() {
        let f = PowerSeries::monomial(4, c(1.0));
        assert!((seminorm(&f, 0, 64, RimPolicy::Rim).unwrap().value - 1.0).abs() < 1e-14);
        assert!((seminorm(&f, 1, 64, RimPolicy::Rim).unwrap().value - 4.0).abs() < 1e-13);
        let v = seminorm_vector(&f, 4, 64, RimPolicy::Auto).unwrap();
        assert!((v.get(4) - 24.0).abs() < 1e-12);
        assert!(!v.proxy);
    }

    #[test]
    fn cubic_seminorms() {
        let f = cubic();
        let v = seminorm(&f, 1, 1024, RimPolicy::Rim).unwrap();
        assert!((v.value - 5.0).abs() < 1e-12);
        let g = BoundaryTrace::from_series(&f, 1.0, 1024).unwrap().with_claim(crate::Smoothness::Unbounded);
        assert!((seminorm_trace(&g, 1).unwrap().value - 5.0).abs() < 1e-11);
    }

    #[test]
    fn trace_seminorm_examples() {
        let g = BoundaryTrace::from_fn(32, crate::Smoothness::Unbounded, |_| Complex64::new(0.0, -2.0)).unwrap();
        assert!((seminorm_trace(&g, 0).unwrap().value - 2.0).abs() < 1e-15);
        let g = BoundaryTrace::from_fn(32, crate::Smoothness::Unbounded, |t| Complex64::from_polar(1.0, 3.0 * t))
            .unwrap();
        assert!((seminorm_trace(&g, 2).unwrap().value - 9.0).abs() < 1e-12);
        let g = BoundaryTrace::from_fn(32, crate::Smoothness::Finite(1), |t| c(t.cos())).unwrap();
        assert!(seminorm_trace(&g, 2).is_err());
    }

    #[test]
    fn policy_resolution() {
        let marginal = PowerSeries::from_real(&[0.0, 1.0, 0.25], 1.0).unwrap();
        assert!(matches!(seminorm(&marginal, 0, 64, RimPolicy::Rim), Err(Error::PolicyViolation(_))));
        let v = seminorm(&marginal, 0, 64, RimPolicy::Auto).unwrap();
        assert!(v.proxy);
        assert_eq!(v.radius, PROXY_RADIUS);
        assert!(!seminorm(&cubic(), 0, 64, RimPolicy::Auto).unwrap().proxy);
        assert!(seminorm(&cubic(), 0, 64, RimPolicy::InteriorProxy).unwrap().proxy);
        assert!(seminorm(&cubic(), 0, 48, RimPolicy::Rim).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let k = PowerSeries::constant(c(3.0));
        let r = check_equivalence(&k, 2, 64, RimPolicy::Auto).unwrap();
        assert_eq!(r.zeroth, 0.0);
        assert!(r.holds());

        let r = check_equivalence(&cubic(), 2, 1024, RimPolicy::Auto).unwrap();
        assert!(r.holds());
        assert_eq!(r.f_by_g.len(), 2);

        let f = PowerSeries::monomial(5, c(1.0));
        let r = check_equivalence(&f, 3, 64, RimPolicy::Auto).unwrap();
        assert!(r.holds());
        for l in 0..=3 {
            assert!((r.g_norms.get(l) - 5f64.powi(l as i32)).abs() < 1e-9);
        }
    }

    #[test]
    fn equivalence_on_marginal_series_with_proxy() {
        let coeffs: Vec<f64> = (0..=2048).map(|n| if n == 0 { 0.0 } else { (n as f64).powf(-2.5) }).collect();
        let f = PowerSeries::from_real(&coeffs, 1.0).unwrap();
        let r = check_equivalence(&f, 3, default_grid(&f), RimPolicy::Auto).unwrap();
        assert!(r.f_norms.proxy);
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn homogeneity_and_grid_refinement() {
        let f = cubic();
        let a = seminorm_vector(&f, 3, 256, RimPolicy::Rim).unwrap();
        let b = seminorm_vector(&f.scale(Complex64::new(0.0, -2.5)), 3, 256, RimPolicy::Rim).unwrap();
        for l in 0..=3 {
            assert!((b.get(l) - 2.5 * a.get(l)).abs() < 1e-12 * b.get(l).max(1.0));
        }
        let coarse = seminorm(&f.rotate(0.3), 0, 64, RimPolicy::Rim).unwrap().value;
        let fine = seminorm(&f.rotate(0.3), 0, 1024, RimPolicy::Rim).unwrap().value;
        assert!(coarse <= fine + 1e-12);
    }
}
