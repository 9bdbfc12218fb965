use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::trace::TrigInterpolant;
use crate::{rem_tau, Error, Result, TAU};

/// Closed parameter interval `[a, b]` with `0 ≤ a < 2π` and `0 < b − a < 2π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    a: f64,
    b: f64,
}

impl Arc {
    /// Shifts both endpoints by the same multiple of `2π` so that `a ∈ [0, 2π)`.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        let len = b - a;
        if !(a.is_finite() && b.is_finite()) || !(len > 0.0 && len < TAU) {
            return Err(Error::InvalidArc { a, b });
        }
        let a0 = rem_tau(a);
        Ok(Arc { a: a0, b: a0 + len })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn len(&self) -> f64 {
        self.b - self.a
    }

    /// `[b, a + 2π]`.
    pub fn complement(&self) -> Arc {
        Arc::new(self.b, self.a + TAU).expect("complement of a valid arc is valid")
    }

    /// Representative of `t` in `[a, a + 2π)`.
    pub fn unwrap(&self, t: f64) -> f64 {
        self.a + rem_tau(t - self.a)
    }

    /// Membership of `t mod 2π` in the closed arc.
    pub fn contains(&self, t: f64) -> bool {
        self.unwrap(t) <= self.b
    }

    /// `true` when `[lo, hi]` (taken mod 2π, `lo < hi`) lies in the open arc.
    pub fn contains_window(&self, lo: f64, hi: f64) -> bool {
        if !(lo < hi) {
            return false;
        }
        let s = self.unwrap(lo);
        s > self.a && s + (hi - lo) < self.b
    }

    /// Euclidean distance from `z` to the closed arc `{e^{it}: a ≤ t ≤ b}`.
    pub fn distance(&self, z: Complex64) -> f64 {
        let modulus = z.norm();
        if modulus > 0.0 && self.contains(z.arg()) {
            return (modulus - 1.0).abs();
        }
        let ea = Complex64::from_polar(1.0, self.a);
        let eb = Complex64::from_polar(1.0, self.b);
        (z - ea).norm().min((z - eb).norm())
    }

    /// Angular distance from `t` to the closed arc, `0` inside.
    pub fn angular_distance(&self, t: f64) -> f64 {
        let s = self.unwrap(t);
        if s <= self.b {
            0.0
        } else {
            (s - self.b).min(self.a + TAU - s)
        }
    }
}

/// Derivatives `u^{(j)}(a)`, `u^{(j)}(b)` for `j = 0..=order`.
#[derive(Debug, Clone, PartialEq)]
pub struct EndpointJets {
    at_a: Vec<Complex64>,
    at_b: Vec<Complex64>,
}

impl EndpointJets {
    pub fn new(at_a: Vec<Complex64>, at_b: Vec<Complex64>) -> Result<Self> {
        if at_a.is_empty() || at_a.len() != at_b.len() {
            return Err(Error::InvalidParameter("endpoint jets need equal, nonzero lengths".into()));
        }
        Ok(EndpointJets { at_a, at_b })
    }

    pub fn order(&self) -> usize {
        self.at_a.len() - 1
    }

    pub fn at_a(&self) -> &[Complex64] {
        &self.at_a
    }

    pub fn at_b(&self) -> &[Complex64] {
        &self.at_b
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Evaluator {
    /// Local degree-7 Lagrange interpolation of the grid samples.
    Lagrange,
    /// Exact periodic interpolant the samples were taken from.
    Periodic(TrigInterpolant),
}

/// Samples of `u` on a uniform closed grid of `[a, b]`, with optional
/// endpoint jets.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcTrace {
    arc: Arc,
    samples: Vec<Complex64>,
    jets: Option<EndpointJets>,
    evaluator: Evaluator,
}

const LAGRANGE_POINTS: usize = 8;

impl ArcTrace {
    /// `samples[j] = u(a + j (b − a)/(n − 1))`, `n ≥ 2`.
    pub fn new(arc: Arc, samples: Vec<Complex64>, jets: Option<EndpointJets>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::GridSize(samples.len(), 2));
        }
        Ok(ArcTrace { arc, samples, jets, evaluator: Evaluator::Lagrange })
    }

    pub fn from_fn(arc: Arc, n: usize, u: impl Fn(f64) -> Complex64) -> Result<Self> {
        if n < 2 {
            return Err(Error::GridSize(n, 2));
        }
        let h = arc.len() / (n - 1) as f64;
        let samples = (0..n).map(|j| u(arc.a() + j as f64 * h)).collect();
        Self::new(arc, samples, None)
    }

    /// Restriction of a periodic interpolant to `arc`, sampled with about
    /// `spacing` between nodes; values off the grid come from the interpolant.
    pub(crate) fn restrict(interp: &TrigInterpolant, arc: Arc, spacing: f64) -> Result<Self> {
        let n = ((arc.len() / spacing).ceil() as usize + 1).max(2);
        let mut out = Self::from_fn(arc, n, |t| interp.eval(t))?;
        out.evaluator = Evaluator::Periodic(interp.clone());
        Ok(out)
    }

    pub fn with_jets(mut self, jets: EndpointJets) -> Self {
        self.jets = Some(jets);
        self
    }

    pub fn arc(&self) -> Arc {
        self.arc
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn jets(&self) -> Option<&EndpointJets> {
        self.jets.as_ref()
    }

    pub fn spacing(&self) -> f64 {
        self.arc.len() / (self.samples.len() - 1) as f64
    }

    pub fn node(&self, j: usize) -> f64 {
        self.arc.a() + j as f64 * self.spacing()
    }

    pub fn sup_norm(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `u(t)` for `t ∈ [a, b]` (taken mod 2π).
    pub fn value_at(&self, t: f64) -> Complex64 {
        let t = self.arc.unwrap(t).min(self.arc.b());
        match &self.evaluator {
            Evaluator::Periodic(interp) => interp.eval(t),
            Evaluator::Lagrange => self.lagrange(t),
        }
    }

    fn lagrange(&self, t: f64) -> Complex64 {
        let n = self.samples.len();
        let s = (t - self.arc.a()) / self.spacing();
        let k = LAGRANGE_POINTS.min(n);
        let start = ((s.floor() as isize) - (k as isize / 2 - 1)).clamp(0, (n - k) as isize) as usize;
        // exact hit avoids 0/0 in the barycentric-free product form
        let nearest = s.round();
        if (s - nearest).abs() < 1e-14 && nearest >= 0.0 && (nearest as usize) < n {
            return self.samples[nearest as usize];
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for i in start..start + k {
            let mut w = 1.0;
            for j in start..start + k {
                if j != i {
                    w *= (s - j as f64) / (i as f64 - j as f64);
                }
            }
            acc += self.samples[i] * w;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_validation() {
        let arc = Arc::new(-0.5, 0.5).unwrap();
        assert!((arc.a() - (TAU - 0.5)).abs() < 1e-15);
        assert!((arc.len() - 1.0).abs() < 1e-15);
        assert!(arc.contains(0.0));
        assert!(arc.contains(0.5));
        assert!(!arc.contains(0.6));
        assert!(Arc::new(1.0, 1.0).is_err());
        assert!(Arc::new(0.0, TAU).is_err());
        assert!(Arc::new(0.0, f64::NAN).is_err());
    }

    #[test]
    fn complement_and_windows() {
        let arc = Arc::new(0.0, 1.0).unwrap();
        let comp = arc.complement();
        assert_eq!(comp.a(), 1.0);
        assert!((comp.b() - TAU).abs() < 1e-15);
        assert!(comp.contains_window(2.0, 5.0));
        assert!(!comp.contains_window(0.5, 2.0));
        assert!(!comp.contains_window(1.0, 2.0));
        assert!(arc.contains_window(0.25, 0.75));
    }

    #[test]
    fn distance_to_closed_arc() {
        let arc = Arc::new(0.0, 1.0).unwrap();
        assert!((arc.distance(Complex64::new(0.0, 0.0)) - 1.0).abs() < 1e-15);
        assert!((arc.distance(Complex64::from_polar(0.9, 0.5)) - 0.1).abs() < 1e-15);
        let z = Complex64::from_polar(1.0, core::f64::consts::PI);
        assert!((arc.distance(z) - (z - Complex64::from_polar(1.0, 1.0)).norm()).abs() < 1e-15);
        assert!((arc.angular_distance(1.3) - 0.3).abs() < 1e-15);
        assert!((arc.angular_distance(TAU - 0.2) - 0.2).abs() < 1e-14);
    }

    #[test]
    fn lagrange_reproduces_smooth_data() {
        let arc = Arc::new(0.0, 1.0).unwrap();
        let u = ArcTrace::from_fn(arc, 129, |t| Complex64::new(t.cos(), (3.0 * t).sin())).unwrap();
        for t in [0.0, 0.0013, 0.37, 0.5, 0.9991, 1.0] {
            let e = u.value_at(t) - Complex64::new(t.cos(), (3.0 * t).sin());
            assert!(e.norm() < 1e-13, "t={t}");
        }
    }

    #[test]
    fn short_grids_interpolate_with_fewer_points() {
        let arc = Arc::new(1.0, 2.0).unwrap();
        let u = ArcTrace::from_fn(arc, 3, |t| Complex64::new(t * t, 0.0)).unwrap();
        assert!((u.value_at(1.3) - Complex64::new(1.69, 0.0)).norm() < 1e-14);
    }
}
