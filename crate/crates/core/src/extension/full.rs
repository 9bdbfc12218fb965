use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::fft::next_power_of_two;
use crate::kernel::{poisson_eval, KernelPoint, PoissonDerivative};
use crate::space::{BoundaryTrace, DiffScheme};
use crate::{Error, Result};

/// Default constant `C` in the node count `Q ≥ C/(1 − r)`.
pub const DEFAULT_RIM_CONSTANT: f64 = 64.0;

/// Periodic trapezoid approximation of `(1/2π)∫ u(t) P_z(t) dt`.
///
/// The trace is replaced by its trigonometric interpolant and resampled on
/// `Q = 2^⌈log₂ max(4M, C/(1 − r))⌉` nodes, so the kernel peak is resolved
/// close to the rim.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonExtension {
    trace: BoundaryTrace,
    rim_constant: f64,
}

/// Both sides of the angular-derivative identity at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DthetaEval {
    /// `u^{(l)}` convolved with `P_r`.
    pub value: Complex64,
    /// `u` convolved with `∂^l P_r/∂θ^l`.
    pub kernel_side: Complex64,
    pub discrepancy: f64,
}

impl PoissonExtension {
    pub fn new(trace: BoundaryTrace) -> Self {
        PoissonExtension { trace, rim_constant: DEFAULT_RIM_CONSTANT }
    }

    pub fn with_rim_constant(mut self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidParameter("rim constant must be positive".into()));
        }
        self.rim_constant = c;
        Ok(self)
    }

    pub fn trace(&self) -> &BoundaryTrace {
        &self.trace
    }

    /// Quadrature node count used at radius `r`.
    pub fn node_count(&self, r: f64) -> usize {
        let floor = 4 * self.trace.len();
        let adaptive = (self.rim_constant / (1.0 - r)).ceil();
        // clamp keeps the cast finite; radii that close to 1 are rejected upstream
        next_power_of_two(floor.max(adaptive.min(1e9) as usize))
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let r = check_interior(z)?;
        let fine = self.trace.upsample(self.node_count(r))?;
        Ok(convolve(fine.samples(), r, z.arg(), poisson_eval))
    }

    /// Evaluates at many points, upsampling once per distinct node count.
    pub fn eval_many(&self, zs: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, z) in zs.iter().enumerate() {
            let r = check_interior(*z)?;
            groups.entry(self.node_count(r)).or_default().push(i);
        }
        let mut out = vec![Complex64::new(0.0, 0.0); zs.len()];
        for (q, idx) in groups {
            let fine = self.trace.upsample(q)?;
            for i in idx {
                out[i] = convolve(fine.samples(), zs[i].norm(), zs[i].arg(), poisson_eval);
            }
        }
        Ok(out)
    }

    /// `∂^l U/∂θ^l (z)` computed both ways; `l` may not exceed the trace's
    /// smoothness claim.
    pub fn eval_dtheta(&self, order: usize, z: Complex64) -> Result<DthetaEval> {
        self.trace.claim().check(order)?;
        let r = check_interior(z)?;
        let theta = z.arg();
        let q = self.node_count(r);
        let fine = self.trace.upsample(q)?;
        let du = fine.derivative(order, DiffScheme::Spectral)?.trace;
        let value = convolve(du.samples(), r, theta, poisson_eval);
        let kernel = PoissonDerivative::new(order)?;
        let kernel_side = convolve(fine.samples(), r, theta, |p| kernel.eval(p));
        Ok(DthetaEval { value, kernel_side, discrepancy: (value - kernel_side).norm() })
    }
}

fn check_interior(z: Complex64) -> Result<f64> {
    let r = z.norm();
    if !(r < 1.0) {
        return Err(Error::OutsideDisk { modulus: r, radius: 1.0 });
    }
    Ok(r)
}

// trapezoid mean of samples × kernel(r, θ − t_j)
fn convolve(samples: &[Complex64], r: f64, theta: f64, kernel: impl Fn(KernelPoint) -> f64) -> Complex64 {
    let q = samples.len();
    let h = crate::TAU / q as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, u) in samples.iter().enumerate() {
        let p = KernelPoint::new(r, theta - j as f64 * h).expect("interior point");
        acc += u * kernel(p);
    }
    acc / q as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{PowerSeries, Smoothness};
    use crate::TAU;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn mode(k: i32, m: usize) -> BoundaryTrace {
        BoundaryTrace::from_fn(m, Smoothness::Unbounded, |t| Complex64::from_polar(1.0, k as f64 * t)).unwrap()
    }

    #[test]
    fn constant_is_reproduced() {
        let ext = PoissonExtension::new(BoundaryTrace::from_fn(16, Smoothness::Unbounded, |_| c(1.0, 0.0)).unwrap());
        for z in [c(0.0, 0.0), c(0.5, -0.3), c(-0.99, 0.0)] {
            assert!((ext.eval(z).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn eigenfunction_identity() {
        let ext = PoissonExtension::new(mode(1, 16));
        assert!((ext.eval(c(0.5, 0.0)).unwrap() - c(0.5, 0.0)).norm() < 1e-14);
        let ext = PoissonExtension::new(mode(-3, 16));
        let z = Complex64::from_polar(0.8, 1.1);
        let expect = Complex64::from_polar(0.8f64.powi(3), -3.3);
        assert!((ext.eval(z).unwrap() - expect).norm() < 1e-13);
    }

    #[test]
    fn reproduces_rim_trace_of_polynomial() {
        let f = PowerSeries::monomial(2, c(1.0, 0.0));
        let ext = PoissonExtension::new(BoundaryTrace::from_series(&f, 1.0, 32).unwrap());
        let z = c(0.3, 0.2);
        assert!((ext.eval(z).unwrap() - z * z).norm() < 1e-10);
    }

    #[test]
    fn rejects_points_outside() {
        let ext = PoissonExtension::new(mode(0, 16));
        assert!(matches!(ext.eval(c(1.0, 0.0)), Err(Error::OutsideDisk { .. })));
        assert!(ext.eval_many(&[c(0.1, 0.0), c(0.0, 1.2)]).is_err());
    }

    #[test]
    fn eval_many_matches_pointwise() {
        let u = BoundaryTrace::from_fn(32, Smoothness::Unbounded, |t| c(t.cos(), (2.0 * t).sin())).unwrap();
        let ext = PoissonExtension::new(u);
        let zs = [c(0.1, 0.2), c(0.95, 0.0), c(-0.5, 0.5), c(0.0, 0.999)];
        let many = ext.eval_many(&zs).unwrap();
        for (z, v) in zs.iter().zip(&many) {
            assert_eq!(*v, ext.eval(*z).unwrap());
        }
    }

    #[test]
    fn mean_value_property() {
        let u = BoundaryTrace::from_fn(64, Smoothness::Unbounded, |t| c((3.0 * t).cos() + 0.25, t.sin())).unwrap();
        let ext = PoissonExtension::new(u.clone());
        assert!((ext.eval(c(0.0, 0.0)).unwrap() - u.mean()).norm() < 1e-12);
    }

    #[test]
    fn node_count_grows_near_rim() {
        let ext = PoissonExtension::new(mode(0, 16));
        assert_eq!(ext.node_count(0.0), 64);
        assert_eq!(ext.node_count(0.99), 8192);
        assert!(ext.node_count(0.9999) >= 640_000);
    }

    #[test]
    fn dtheta_of_eigenfunction_and_constant() {
        let ext = PoissonExtension::new(mode(2, 16));
        let z = Complex64::from_polar(0.6, 0.4);
        let d = ext.eval_dtheta(1, z).unwrap();
        let expect = c(0.0, 2.0) * Complex64::from_polar(0.36, 0.8);
        assert!((d.value - expect).norm() < 1e-12);
        assert!(d.discrepancy < 1e-12);

        let ext = PoissonExtension::new(BoundaryTrace::from_fn(16, Smoothness::Finite(1), |_| c(2.0, 0.0)).unwrap());
        assert!(ext.eval_dtheta(1, z).unwrap().value.norm() < 1e-13);
        assert!(matches!(ext.eval_dtheta(2, z), Err(Error::OrderExceedsClaim { order: 2, claim: 1 })));
    }

    #[test]
    fn dtheta_both_ways_on_trig_polynomial() {
        let u = |t: f64| {
            (1..=8).fold(c(0.3, 0.0), |acc, k| {
                let k = k as f64;
                acc + c((k * t + 0.3).cos() / k, (k * t).sin() / (k * k))
            })
        };
        let ext = PoissonExtension::new(BoundaryTrace::from_fn(32, Smoothness::Unbounded, u).unwrap());
        for l in 0..=3 {
            for j in 0..8 {
                let z = Complex64::from_polar(0.7, TAU * j as f64 / 8.0 + 0.1);
                assert!(ext.eval_dtheta(l, z).unwrap().discrepancy < 1e-10);
            }
        }
    }
}
