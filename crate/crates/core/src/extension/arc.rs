use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::quadrature::{graded_panels, GaussLegendre, GL_POINTS};
use crate::kernel::{herglotz_eval, KernelPoint, PoissonDerivative};
use crate::space::{Arc, ArcTrace, BoundaryTrace};
use crate::{Error, Result, TAU};

/// Default proximity guard for rim evaluations off the arc.
pub const DEFAULT_DELTA_MIN: f64 = 1e-8;

/// Longest quadrature panel, in radians.
pub const MAX_PANEL: f64 = 0.25;

// |z| within this of 1 counts as a rim point
const RIM_SNAP: f64 = 1e-14;

/// `(1/2π)∫_a^b u(t) ∂^l P/∂θ^l (z, t) dt` for data on a closed arc.
///
/// Quadrature is composite Gauss–Legendre on panels graded geometrically
/// toward the point of the arc nearest `arg z`, starting at width
/// `max(1 − r, angular distance)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcExtension {
    trace: ArcTrace,
    delta_min: f64,
    rule: GaussLegendre,
}

impl ArcExtension {
    pub fn new(trace: ArcTrace) -> Self {
        ArcExtension { trace, delta_min: DEFAULT_DELTA_MIN, rule: GaussLegendre::new(GL_POINTS) }
    }

    pub fn with_delta_min(mut self, delta_min: f64) -> Result<Self> {
        if !(delta_min >= 0.0) {
            return Err(Error::InvalidParameter("delta_min must be nonnegative".into()));
        }
        self.delta_min = delta_min;
        Ok(self)
    }

    pub fn trace(&self) -> &ArcTrace {
        &self.trace
    }

    pub fn arc(&self) -> Arc {
        self.trace.arc()
    }

    /// `∂^l A/∂θ^l (z)`. Rim points off the closed arc give exactly `0`.
    pub fn eval(&self, order: usize, z: Complex64) -> Result<Complex64> {
        let kernel = PoissonDerivative::new(order)?;
        self.eval_with(&kernel, z)
    }

    /// As [`eval`](Self::eval) with a precomputed kernel derivative.
    pub fn eval_with(&self, kernel: &PoissonDerivative, z: Complex64) -> Result<Complex64> {
        let mut r = z.norm();
        if (r - 1.0).abs() <= RIM_SNAP {
            r = 1.0;
        }
        self.eval_polar(kernel, r, z.arg())
    }

    pub fn eval_polar(&self, kernel: &PoissonDerivative, r: f64, theta: f64) -> Result<Complex64> {
        if r > 1.0 {
            return Err(Error::OutsideDisk { modulus: r, radius: 1.0 });
        }
        if r == 1.0 {
            let distance = self.arc().distance(Complex64::from_polar(1.0, theta));
            if !(distance >= self.delta_min) || distance == 0.0 {
                return Err(Error::ArcProximity { distance, guard: self.delta_min });
            }
            return Ok(Complex64::new(0.0, 0.0));
        }
        if !(r >= 0.0) {
            return Err(Error::RadiusOutOfRange { r });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        self.for_each_node(r, theta, |t, w| {
            let p = KernelPoint::new(r, theta - t).expect("interior point");
            acc += self.trace.value_at(t) * (w * kernel.eval(p));
        });
        Ok(acc / TAU)
    }

    /// `(1/2π)∫_a^b u(t) (1 + e^{−it}z)/(1 − e^{−it}z) dt` for `|z| < 1`.
    pub fn herglotz(&self, z: Complex64) -> Result<Complex64> {
        let r = z.norm();
        if !(r < 1.0) {
            return Err(Error::OutsideDisk { modulus: r, radius: 1.0 });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        let mut failure = None;
        self.for_each_node(r, z.arg(), |t, w| match herglotz_eval(z, t) {
            Ok(h) => acc += self.trace.value_at(t) * h * w,
            Err(e) => failure = Some(e),
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(acc / TAU),
        }
    }

    fn for_each_node(&self, r: f64, theta: f64, mut f: impl FnMut(f64, f64)) {
        let arc = self.arc();
        let s = arc.unwrap(theta);
        let (peak, gap) = if s <= arc.b() {
            (s, 0.0)
        } else if s - arc.b() <= arc.a() + TAU - s {
            (arc.b(), s - arc.b())
        } else {
            (arc.a(), arc.a() + TAU - s)
        };
        let w0 = (1.0 - r).max(gap);
        for (lo, hi) in graded_panels(arc.a(), arc.b(), peak, w0, MAX_PANEL) {
            self.rule.for_each(lo, hi, &mut f);
        }
    }
}

/// The pair `A` (data on `[t₁, t₂]`) and `B` (data on `[t₂, t₁ + 2π]`) whose sum
/// is the full-circle extension.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitExtension {
    a_part: ArcExtension,
    b_part: ArcExtension,
}

impl SplitExtension {
    /// Both parts read the periodic interpolant of `g`; the stored samples use
    /// spacing `2π/(8M)`.
    pub fn new(g: &BoundaryTrace, arc: Arc) -> Result<Self> {
        let interp = g.interpolant();
        let spacing = TAU / (8 * g.len()) as f64;
        Ok(SplitExtension {
            a_part: ArcExtension::new(ArcTrace::restrict(&interp, arc, spacing)?),
            b_part: ArcExtension::new(ArcTrace::restrict(&interp, arc.complement(), spacing)?),
        })
    }

    pub fn a(&self) -> &ArcExtension {
        &self.a_part
    }

    pub fn b(&self) -> &ArcExtension {
        &self.b_part
    }

    /// `(A(z), B(z))`.
    pub fn eval(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        self.eval_dtheta(0, z)
    }

    pub fn eval_dtheta(&self, order: usize, z: Complex64) -> Result<(Complex64, Complex64)> {
        let kernel = PoissonDerivative::new(order)?;
        Ok((self.a_part.eval_with(&kernel, z)?, self.b_part.eval_with(&kernel, z)?))
    }
}

/// Largest `|∂^l A/∂θ^l|` over `points`, for reporting.
pub fn sup_over(ext: &ArcExtension, order: usize, points: &[Complex64]) -> Result<f64> {
    let kernel = PoissonDerivative::new(order)?;
    let values: Result<Vec<f64>> = points.iter().map(|z| ext.eval_with(&kernel, *z).map(|v| v.norm())).collect();
    Ok(values?.into_iter().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::PoissonExtension;
    use crate::space::{PowerSeries, Smoothness};
    use core::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit_on_01() -> ArcExtension {
        let arc = Arc::new(0.0, 1.0).unwrap();
        ArcExtension::new(ArcTrace::from_fn(arc, 65, |_| c(1.0, 0.0)).unwrap())
    }

    #[test]
    fn center_value_is_arc_measure() {
        let v = unit_on_01().eval(0, c(0.0, 0.0)).unwrap();
        assert!((v - c(1.0 / TAU, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn interior_value_matches_closed_form() {
        // (1/2π)∫_0^1 P_r(θ − t) dt via the antiderivative of the Poisson kernel
        let ext = unit_on_01();
        let anti = |r: f64, x: f64| 2.0 * (((1.0 + r) / (1.0 - r)) * (0.5 * x).tan()).atan();
        for (r, theta) in [(0.5, 2.0), (0.999, 0.5), (0.9999, 3.0), (0.99, 1.0)] {
            let z = Complex64::from_polar(r, theta);
            let v = ext.eval(0, z).unwrap();
            let exact = (anti(r, theta) - anti(r, theta - 1.0)) / TAU;
            assert!((v.re - exact).abs() < 1e-12, "r={r} θ={theta}: {} vs {exact}", v.re);
        }
    }

    #[test]
    fn rim_values_off_arc_vanish() {
        let ext = unit_on_01();
        for l in 0..3 {
            assert_eq!(ext.eval(l, Complex64::from_polar(1.0, PI)).unwrap(), c(0.0, 0.0));
        }
        assert!(matches!(ext.eval(1, Complex64::from_polar(1.0, 0.5)), Err(Error::ArcProximity { .. })));
        assert!(matches!(ext.eval(1, Complex64::from_polar(1.0, 1.0 + 1e-9)), Err(Error::ArcProximity { .. })));
        assert!(ext.eval(1, Complex64::from_polar(1.0, 1.0 + 1e-7)).is_ok());
        assert!(matches!(ext.eval(0, c(1.5, 0.0)), Err(Error::OutsideDisk { .. })));
    }

    #[test]
    fn derivative_respects_decay_bound_near_rim() {
        let ext = unit_on_01();
        let r: f64 = 0.99;
        let m = (PI - 1.0).cos().max(PI.cos());
        let bound = 2.0 * r * (1.0 - r * r) / ((1.0 - r).powi(2) + 2.0 * r * (1.0 - m)) / TAU;
        let v = ext.eval(1, Complex64::from_polar(r, PI)).unwrap();
        assert!(v.norm() <= bound);
    }

    #[test]
    fn real_part_of_herglotz_integral() {
        let arc = Arc::new(0.3, 2.5).unwrap();
        let ext = ArcExtension::new(ArcTrace::from_fn(arc, 257, |t| c(t.sin() + 2.0, 0.0)).unwrap());
        for z in [c(0.1, 0.2), c(-0.7, 0.5), Complex64::from_polar(0.995, 1.0)] {
            let a = ext.eval(0, z).unwrap();
            let h = ext.herglotz(z).unwrap();
            assert!((a.re - h.re).abs() < 1e-10);
        }
    }

    #[test]
    fn complex_data_splits_into_parts() {
        let arc = Arc::new(1.0, 4.0).unwrap();
        let u = |t: f64| c(t.cos(), t * t);
        let whole = ArcExtension::new(ArcTrace::from_fn(arc, 200, u).unwrap());
        let re = ArcExtension::new(ArcTrace::from_fn(arc, 200, |t| c(u(t).re, 0.0)).unwrap());
        let im = ArcExtension::new(ArcTrace::from_fn(arc, 200, |t| c(u(t).im, 0.0)).unwrap());
        let z = c(0.3, -0.6);
        for l in 0..3 {
            let w = whole.eval(l, z).unwrap();
            let parts = re.eval(l, z).unwrap() + c(0.0, 1.0) * im.eval(l, z).unwrap();
            assert!((w - parts).norm() < 1e-13);
        }
    }

    #[test]
    fn split_of_constant_at_center() {
        let g = BoundaryTrace::from_fn(32, Smoothness::Unbounded, |_| c(1.0, 0.0)).unwrap();
        let arc = Arc::new(0.5, 2.0).unwrap();
        let split = SplitExtension::new(&g, arc).unwrap();
        let (a, b) = split.eval(c(0.0, 0.0)).unwrap();
        assert!((a.re - 1.5 / TAU).abs() < 1e-14);
        assert!((b.re - (1.0 - 1.5 / TAU)).abs() < 1e-14);
    }

    #[test]
    fn split_reproduces_full_extension() {
        let f = PowerSeries::monomial(2, c(1.0, 0.0));
        let g = BoundaryTrace::from_series(&f, 1.0, 32).unwrap();
        let split = SplitExtension::new(&g, Arc::new(0.0, 1.0).unwrap()).unwrap();
        let (a, b) = split.eval(c(0.2, 0.0)).unwrap();
        assert!((a + b - c(0.04, 0.0)).norm() < 1e-10);

        let full = PoissonExtension::new(g);
        for (r, th) in [(0.95, 0.5), (0.9, 3.0), (0.3, 5.0)] {
            let z = Complex64::from_polar(r, th);
            let (a, b) = split.eval(z).unwrap();
            assert!((a + b - full.eval(z).unwrap()).norm() < 1e-10);
        }
    }

    #[test]
    fn nearly_full_arc_leaves_a_thin_complement() {
        let g = BoundaryTrace::from_fn(32, Smoothness::Unbounded, |t| c(2.0 + t.cos(), 0.0)).unwrap();
        let eps = 1e-3;
        let split = SplitExtension::new(&g, Arc::new(0.0, TAU - eps).unwrap()).unwrap();
        let (_, b) = split.eval(c(0.0, 0.0)).unwrap();
        // g ≈ 3 near t = 0
        assert!((b.re - eps / TAU * 3.0).abs() < 1e-8);
    }
}
