use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::{Error, Result};

/// Truncated Taylor series `Σ_{n=0}^{N} a_n z^n` of a function holomorphic on
/// the disk of radius `assumed_radius` (declared, not checked).
///
/// Polynomials use `assumed_radius = ∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
    assumed_radius: f64,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<Complex64>, assumed_radius: f64) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        if !(assumed_radius > 0.0) {
            return Err(Error::InvalidAssumedRadius(assumed_radius));
        }
        Ok(PowerSeries { coeffs, assumed_radius })
    }

    /// Entire function given by finitely many coefficients.
    pub fn polynomial(coeffs: Vec<Complex64>) -> Result<Self> {
        Self::new(coeffs, f64::INFINITY)
    }

    pub fn from_real(coeffs: &[f64], assumed_radius: f64) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(), assumed_radius)
    }

    /// `c · z^k`.
    pub fn monomial(k: usize, c: Complex64) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k + 1];
        coeffs[k] = c;
        PowerSeries { coeffs, assumed_radius: f64::INFINITY }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial(0, c)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn assumed_radius(&self) -> f64 {
        self.assumed_radius
    }

    pub fn with_assumed_radius(mut self, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::InvalidAssumedRadius(radius));
        }
        self.assumed_radius = radius;
        Ok(self)
    }

    /// Stored degree `N` (trailing zeros included).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Index of the last nonzero coefficient, `None` for the zero series.
    pub fn top_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| *c != Complex64::new(0.0, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.top_nonzero().is_none()
    }

    /// Horner evaluation; requires `|z| < assumed_radius`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let modulus = z.norm();
        if !(modulus < self.assumed_radius) {
            return Err(Error::OutsideDisk { modulus, radius: self.assumed_radius });
        }
        Ok(self.horner(z))
    }

    /// Evaluation on the closed disk `|z| ≤ assumed_radius`. The caller asserts
    /// that the represented function is continuous up to the rim.
    pub fn eval_on_closure(&self, z: Complex64) -> Result<Complex64> {
        let modulus = z.norm();
        if !(modulus <= self.assumed_radius) {
            return Err(Error::OutsideDisk { modulus, radius: self.assumed_radius });
        }
        Ok(self.horner(z))
    }

    pub(crate) fn horner(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// `f^{(l)}`, term-wise. Orders beyond the degree give the zero series.
    pub fn derivative(&self, order: usize) -> PowerSeries {
        if order == 0 {
            return self.clone();
        }
        if order > self.degree() {
            return PowerSeries { coeffs: vec![Complex64::new(0.0, 0.0)], assumed_radius: self.assumed_radius };
        }
        let coeffs = (order..=self.degree())
            .map(|n| self.coeffs[n] * falling_factorial(n, order))
            .collect();
        PowerSeries { coeffs, assumed_radius: self.assumed_radius }
    }

    pub fn scale(&self, c: Complex64) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect(), assumed_radius: self.assumed_radius }
    }

    /// `z ↦ f(e^{ic} z)`.
    pub fn rotate(&self, c: f64) -> PowerSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| a * Complex64::from_polar(1.0, c * n as f64))
            .collect();
        PowerSeries { coeffs, assumed_radius: self.assumed_radius }
    }

    /// Product truncated to `degree`; the radius is the smaller of the two.
    pub fn mul_truncated(&self, other: &PowerSeries, degree: usize) -> PowerSeries {
        PowerSeries {
            coeffs: mul_coeffs(&self.coeffs, &other.coeffs, degree),
            assumed_radius: self.assumed_radius.min(other.assumed_radius),
        }
    }

    /// Coefficients of `self ∘ inner` up to `degree`.
    ///
    /// Returns the composed series (radius copied from `inner`) together with
    /// the coefficients beyond `degree` up to `tail_degree`, which callers use
    /// to bound the truncation error. Needs `inner(0)` inside the radius of
    /// `self` only in the sense that the caller asserts the composition
    /// makes sense; no check is made.
    pub fn compose_with_tail(
        &self,
        inner: &PowerSeries,
        degree: usize,
        tail_degree: usize,
    ) -> (PowerSeries, Vec<Complex64>) {
        let full = tail_degree.max(degree);
        let zero = Complex64::new(0.0, 0.0);
        let mut acc: Vec<Complex64> = vec![zero];
        for c in self.coeffs.iter().rev() {
            acc = mul_coeffs(&acc, &inner.coeffs, full);
            acc[0] += c;
        }
        acc.resize(full + 1, zero);
        let tail = acc.split_off(degree + 1);
        (PowerSeries { coeffs: acc, assumed_radius: inner.assumed_radius }, tail)
    }
}

fn mul_coeffs(a: &[Complex64], b: &[Complex64], degree: usize) -> Vec<Complex64> {
    let len = (a.len() + b.len() - 1).min(degree + 1);
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if *x == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `n (n − 1) ⋯ (n − k + 1)` as a float; zero when `k > n`.
pub fn falling_factorial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).map(|i| (n - i) as f64).product()
}
