use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

/// Gaussian integer `re + i·im` with arbitrary-precision parts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt { re: re.into(), im: im.into() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    /// `i^n`.
    pub fn i_pow(n: usize) -> Self {
        match n % 4 {
            0 => Self::new(1, 0),
            1 => Self::new(0, 1),
            2 => Self::new(-1, 0),
            _ => Self::new(0, -1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    pub fn scale(&self, k: &BigInt) -> GaussInt {
        GaussInt { re: &self.re * k, im: &self.im * k }
    }

    /// `i · self`.
    pub fn mul_i(&self) -> GaussInt {
        GaussInt { re: -&self.im, im: self.re.clone() }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    /// Modulus as an exact integer when `self` lies on an axis.
    pub fn modulus_exact(&self) -> Option<BigUint> {
        if self.im.is_zero() {
            Some(self.re.magnitude().clone())
        } else if self.re.is_zero() {
            Some(self.im.magnitude().clone())
        } else {
            None
        }
    }

    pub fn modulus(&self) -> f64 {
        self.to_complex().norm()
    }

    /// `(t, n)` with `self = i^t · n`, `n` an integer, when `self` lies on an
    /// axis. Zero maps to `(0, 0)`.
    pub fn as_i_power(&self) -> Option<(u8, BigInt)> {
        if self.im.is_zero() {
            match self.re.sign() {
                Sign::Minus => Some((2, -&self.re)),
                _ => Some((0, self.re.clone())),
            }
        } else if self.re.is_zero() {
            match self.im.sign() {
                Sign::Minus => Some((3, -&self.im)),
                _ => Some((1, self.im.clone())),
            }
        } else {
            None
        }
    }
}

/// Polynomial with Gaussian-integer coefficients; `coeffs[j]` multiplies `x^j`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GaussPoly {
    coeffs: Vec<GaussInt>,
}

impl GaussPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(degree: usize, c: GaussInt) -> Self {
        let mut coeffs = vec![GaussInt::zero(); degree + 1];
        coeffs[degree] = c;
        GaussPoly { coeffs }.trimmed()
    }

    pub fn from_coeffs(coeffs: Vec<GaussInt>) -> Self {
        GaussPoly { coeffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(GaussInt::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    /// Coefficients without trailing zeros.
    pub fn coeffs(&self) -> &[GaussInt] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> GaussInt {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, o: &GaussPoly) -> GaussPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        GaussPoly::from_coeffs((0..n).map(|j| self.coeff(j).add(&o.coeff(j))).collect())
    }

    pub fn sub(&self, o: &GaussPoly) -> GaussPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        GaussPoly::from_coeffs((0..n).map(|j| self.coeff(j).sub(&o.coeff(j))).collect())
    }

    pub fn mul(&self, o: &GaussPoly) -> GaussPoly {
        if self.is_zero() || o.is_zero() {
            return GaussPoly::zero();
        }
        let mut out = vec![GaussInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        GaussPoly::from_coeffs(out)
    }

    pub fn mul_scalar(&self, c: &GaussInt) -> GaussPoly {
        GaussPoly::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// `x^k · self`.
    pub fn shift(&self, k: usize) -> GaussPoly {
        if self.is_zero() {
            return GaussPoly::zero();
        }
        let mut coeffs = vec![GaussInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        GaussPoly { coeffs }
    }

    pub fn derivative(&self) -> GaussPoly {
        GaussPoly::from_coeffs(
            self.coeffs.iter().enumerate().skip(1).map(|(j, a)| a.scale(&BigInt::from(j))).collect(),
        )
    }

    /// `x^n · self(1/x)`; needs `n ≥ degree`.
    pub fn reversed(&self, n: usize) -> GaussPoly {
        let mut coeffs = vec![GaussInt::zero(); n + 1];
        for (j, a) in self.coeffs.iter().enumerate() {
            coeffs[n - j] = a.clone();
        }
        GaussPoly::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c.to_complex())
    }

    /// `Σ_j |c_j|`.
    pub fn abs_sum(&self) -> f64 {
        self.coeffs.iter().map(GaussInt::modulus).sum()
    }

    /// `Σ_j |c_j|` exactly, when every coefficient lies on an axis.
    pub fn abs_sum_exact(&self) -> Option<BigUint> {
        self.coeffs.iter().map(GaussInt::modulus_exact).sum()
    }

    /// `Σ_j |c_j| ρ^{−j}`: a bound for `|p(w)|` on `|w| = 1/ρ`.
    pub fn weighted_abs_sum(&self, rho: f64) -> f64 {
        let mut scale = 1.0;
        let mut acc = 0.0;
        for c in &self.coeffs {
            acc += c.modulus() * scale;
            scale /= rho;
        }
        acc
    }

    /// Common `i`-power tag `t` and integer coefficients `n_j` with
    /// `c_j = i^t n_j`, if one exists.
    pub fn i_power_form(&self) -> Option<(u8, Vec<BigInt>)> {
        let mut tag: Option<u8> = None;
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if c.is_zero() {
                out.push(BigInt::zero());
                continue;
            }
            let (t, n) = c.as_i_power()?;
            // i^{t+2} n = i^t (−n), so only the parity of t is fixed
            let t0 = *tag.get_or_insert(t % 2);
            if t % 2 != t0 {
                return None;
            }
            out.push(if t == t0 { n } else { -n });
        }
        Some((tag.unwrap_or(0), out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    #[test]
    fn arithmetic() {
        assert_eq!(g(1, 2).mul(&g(3, -1)), g(5, 5));
        assert_eq!(g(2, 3).mul_i(), g(-3, 2));
        assert_eq!(GaussInt::i_pow(7), g(0, -1));
        assert_eq!(g(0, -4).modulus_exact(), Some(BigUint::from(4u32)));
        assert_eq!(g(3, 4).modulus_exact(), None);
        assert!((g(3, 4).modulus() - 5.0).abs() < 1e-15);
    }

    #[test]
    fn polynomial_ring_operations() {
        let p = GaussPoly::from_coeffs(vec![g(1, 0), g(0, 1)]); // 1 + i x
        let q = GaussPoly::from_coeffs(vec![g(0, 0), g(2, 0), g(0, 0)]); // 2x
        assert_eq!(q.degree(), Some(1));
        assert_eq!(p.mul(&q), GaussPoly::from_coeffs(vec![g(0, 0), g(2, 0), g(0, 2)]));
        assert_eq!(p.derivative(), GaussPoly::monomial(0, g(0, 1)));
        assert_eq!(p.sub(&p), GaussPoly::zero());
        assert_eq!(q.shift(2), GaussPoly::monomial(3, g(2, 0)));
        assert_eq!(p.reversed(3), GaussPoly::from_coeffs(vec![g(0, 0), g(0, 0), g(0, 1), g(1, 0)]));
        let x = Complex64::new(0.5, -0.25);
        assert!((p.eval(x) - (Complex64::new(1.0, 0.0) + Complex64::new(0.0, 1.0) * x)).norm() < 1e-15);
    }

    #[test]
    fn coefficient_sums() {
        let p = GaussPoly::from_coeffs(vec![g(0, -3), g(2, 0)]);
        assert_eq!(p.abs_sum_exact(), Some(BigUint::from(5u32)));
        assert!((p.abs_sum() - 5.0).abs() < 1e-15);
        assert!((p.weighted_abs_sum(0.5) - 7.0).abs() < 1e-15);
    }

    #[test]
    fn i_power_tags() {
        let p = GaussPoly::from_coeffs(vec![g(0, 0), g(0, -3), g(0, 1)]);
        let (t, n) = p.i_power_form().unwrap();
        assert_eq!(t, 1);
        assert_eq!(n, vec![BigInt::from(0), BigInt::from(-3), BigInt::from(1)]);
        let mixed = GaussPoly::from_coeffs(vec![g(1, 0), g(0, 1)]);
        assert!(mixed.i_power_form().is_none());
        assert_eq!(GaussPoly::monomial(2, g(-1, 0)).i_power_form().unwrap().0, 0);
    }
}
