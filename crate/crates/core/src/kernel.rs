//! Poisson kernel `P_r(θ) = (1 − r²)/(1 + r² − 2r cos θ)`, its angular
//! derivatives, and the Herglotz kernel `(1 + e^{−it}z)/(1 − e^{−it}z)`.
//!
//! Angular derivatives are kept in closed rational-trigonometric form
//!
//! ```text
//! ∂^l P/∂θ^l = (1 − r²) · Σ_{m=1}^{l+1} N_{l,m}(r, cos θ, sin θ) / D^m,
//! D = 1 + r² − 2r cos θ,
//! ```
//!
//! where each `N_{l,m}` is a polynomial with integer coefficients. Since
//! `dD/dθ = 2r sin θ`, differentiating a term gives
//! `N_{l+1,m} = (−sin ∂_c + cos ∂_s) N_{l,m} − 2(m − 1) r sin N_{l,m−1}`.
//! The explicit `1 − r²` factor makes every order vanish exactly on the rim
//! away from the singular point.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::{wrap_angle, Error, Result};

/// Default pole tolerance for Herglotz evaluation.
pub const HERGLOTZ_POLE_TOLERANCE: f64 = 1e-14;

/// A validated evaluation point `(r, θ − t)` for the Poisson kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPoint {
    r: f64,
    dtheta: f64,
}

impl KernelPoint {
    /// `dtheta` is reduced to `(−π, π]`.
    pub fn new(r: f64, dtheta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) || !dtheta.is_finite() {
            return Err(Error::RadiusOutOfRange { r });
        }
        let dtheta = wrap_angle(dtheta);
        if r == 1.0 && dtheta == 0.0 {
            return Err(Error::KernelSingularity);
        }
        Ok(KernelPoint { r, dtheta })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn dtheta(&self) -> f64 {
        self.dtheta
    }

    /// `1 + r² − 2r cos θ`, written as `(1 − r)² + 4r sin²(θ/2)` to avoid
    /// cancellation at the peak.
    fn denominator(&self) -> f64 {
        let h = (0.5 * self.dtheta).sin();
        (1.0 - self.r) * (1.0 - self.r) + 4.0 * self.r * h * h
    }
}

pub fn poisson_eval(p: KernelPoint) -> f64 {
    (1.0 - p.r) * (1.0 + p.r) / p.denominator()
}

/// `∂^l P_r/∂θ^l` at `p`.
pub fn poisson_dtheta(order: usize, p: KernelPoint) -> Result<f64> {
    Ok(PoissonDerivative::new(order)?.eval(p))
}

// exponents of r, cos, sin
type Monomial = (u32, u32, u32);

/// Precomputed symbolic form of `∂^l P/∂θ^l`, reusable across many points.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonDerivative {
    order: usize,
    // numerators[m - 1] holds N_{l,m}
    numerators: Vec<Vec<(Monomial, i128)>>,
    max_r: u32,
    max_c: u32,
    max_s: u32,
}

impl PoissonDerivative {
    pub fn new(order: usize) -> Result<Self> {
        let overflow = || Error::OrderTooLarge { order };
        let mut terms: Vec<BTreeMap<Monomial, i128>> = vec![BTreeMap::new()];
        terms[0].insert((0, 0, 0), 1);

        for _ in 0..order {
            let mut next: Vec<BTreeMap<Monomial, i128>> = vec![BTreeMap::new(); terms.len() + 1];
            for (idx, numer) in terms.iter().enumerate() {
                let m = idx as i128 + 1;
                for (&(a, b, e), &coef) in numer {
                    // d/dθ cos^b = −b cos^{b−1} sin
                    if b > 0 {
                        let v = coef.checked_mul(-(b as i128)).ok_or_else(overflow)?;
                        add_term(&mut next[idx], (a, b - 1, e + 1), v).ok_or_else(overflow)?;
                    }
                    // d/dθ sin^e = e sin^{e−1} cos
                    if e > 0 {
                        let v = coef.checked_mul(e as i128).ok_or_else(overflow)?;
                        add_term(&mut next[idx], (a, b + 1, e - 1), v).ok_or_else(overflow)?;
                    }
                    // d/dθ D^{−m} = −m · 2r sin · D^{−m−1}
                    let v = coef.checked_mul(-2 * m).ok_or_else(overflow)?;
                    add_term(&mut next[idx + 1], (a + 1, b, e + 1), v).ok_or_else(overflow)?;
                }
            }
            terms = next;
        }

        let numerators: Vec<Vec<(Monomial, i128)>> = terms
            .into_iter()
            .map(|t| t.into_iter().filter(|&(_, c)| c != 0).collect())
            .collect();
        let (mut max_r, mut max_c, mut max_s) = (0, 0, 0);
        for &((a, b, e), _) in numerators.iter().flatten() {
            max_r = max_r.max(a);
            max_c = max_c.max(b);
            max_s = max_s.max(e);
        }
        Ok(PoissonDerivative { order, numerators, max_r, max_c, max_s })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of denominator powers in the rational form (`order + 1`).
    pub fn fraction_count(&self) -> usize {
        self.numerators.len()
    }

    /// Integer numerator of `D^{-m}` as `((r, cos, sin) exponents, coefficient)`.
    pub fn numerator(&self, m: usize) -> &[(Monomial, i128)] {
        &self.numerators[m - 1]
    }

    pub fn eval(&self, p: KernelPoint) -> f64 {
        let factor = (1.0 - p.r) * (1.0 + p.r);
        if factor == 0.0 {
            return 0.0;
        }
        let (s, c) = p.dtheta.sin_cos();
        let rp = powers(p.r, self.max_r);
        let cp = powers(c, self.max_c);
        let sp = powers(s, self.max_s);
        let inv_d = 1.0 / p.denominator();

        let mut acc = 0.0;
        let mut inv_dm = 1.0;
        for numer in &self.numerators {
            inv_dm *= inv_d;
            let n: f64 = numer
                .iter()
                .map(|&((a, b, e), coef)| {
                    coef as f64 * rp[a as usize] * cp[b as usize] * sp[e as usize]
                })
                .sum();
            acc += n * inv_dm;
        }
        factor * acc
    }
}

fn add_term(map: &mut BTreeMap<Monomial, i128>, key: Monomial, value: i128) -> Option<()> {
    let slot = map.entry(key).or_insert(0);
    *slot = slot.checked_add(value)?;
    Some(())
}

fn powers(x: f64, max: u32) -> Vec<f64> {
    let mut out = Vec::with_capacity(max as usize + 1);
    let mut acc = 1.0;
    for _ in 0..=max {
        out.push(acc);
        acc *= x;
    }
    out
}

/// Herglotz kernel with a configurable pole guard.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HerglotzKernel {
    pub pole_tolerance: f64,
}

impl Default for HerglotzKernel {
    fn default() -> Self {
        HerglotzKernel { pole_tolerance: HERGLOTZ_POLE_TOLERANCE }
    }
}

impl HerglotzKernel {
    fn rotated(&self, z: Complex64, t: f64) -> Result<(Complex64, Complex64)> {
        let e = Complex64::new(t.cos(), -t.sin());
        let w = e * z;
        let denom = Complex64::new(1.0, 0.0) - w;
        let distance = denom.norm();
        if !(distance >= self.pole_tolerance) {
            return Err(Error::NearPole { distance, tolerance: self.pole_tolerance });
        }
        Ok((e, w))
    }

    /// `(1 + e^{−it}z)/(1 − e^{−it}z)`.
    pub fn eval(&self, z: Complex64, t: f64) -> Result<Complex64> {
        let (_, w) = self.rotated(z, t)?;
        let one = Complex64::new(1.0, 0.0);
        Ok((one + w) / (one - w))
    }

    /// `2e^{−it}/(1 − e^{−it}z)²`, the z-derivative of [`HerglotzKernel::eval`].
    pub fn dz(&self, z: Complex64, t: f64) -> Result<Complex64> {
        let (e, w) = self.rotated(z, t)?;
        let d = Complex64::new(1.0, 0.0) - w;
        Ok(e * 2.0 / (d * d))
    }
}

pub fn herglotz_eval(z: Complex64, t: f64) -> Result<Complex64> {
    HerglotzKernel::default().eval(z, t)
}

pub fn herglotz_dz(z: Complex64, t: f64) -> Result<Complex64> {
    HerglotzKernel::default().dz(z, t)
}
