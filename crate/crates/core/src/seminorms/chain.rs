use alloc::vec::Vec;

use num_bigint::BigUint;
use num_complex::Complex64;

use super::gaussian::{GaussInt, GaussPoly};
use crate::{Error, Result};

/// Exact chain-rule families for `g(t) = f(e^{it})` up to order `p`:
///
/// ```text
/// g^{(l)}(t)     = Σ_{k=1}^{l} P_{k,l}(e^{it})  f^{(k)}(e^{it})
/// f^{(l)}(e^{it}) = Σ_{k=1}^{l} Q_{k,l}(e^{−it}) g^{(k)}(t)
/// ```
///
/// `P` follows `P_{1,1} = iz`, `P_{k,l+1} = iz (P'_{k,l} + P_{k−1,l})`. `Q` is
/// obtained by back-substitution in `w = e^{−it}` using the reversed
/// polynomials `R_{k,l}(w) = w^l P_{k,l}(1/w)`:
/// `Q_{m,l} = i^{−l} [δ_{ml} w^l − Σ_{k=m}^{l−1} R_{k,l} Q_{m,k}]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainRuleSystem {
    order: usize,
    // [l − 1][k − 1]
    p: Vec<Vec<GaussPoly>>,
    q: Vec<Vec<GaussPoly>>,
}

impl ChainRuleSystem {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter("chain-rule order must be at least 1".into()));
        }
        let p = chain_polys(order);
        for (l, row) in p.iter().enumerate() {
            let l = l + 1;
            if row[l - 1] != GaussPoly::monomial(l, GaussInt::i_pow(l)) {
                return Err(Error::SingularLeadingTerm { order: l });
            }
        }
        let q = inverse_polys(&p);
        Ok(ChainRuleSystem { order, p, q })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `P_{k,l}`, `1 ≤ k ≤ l ≤ p`.
    pub fn p(&self, k: usize, l: usize) -> &GaussPoly {
        &self.p[l - 1][k - 1]
    }

    /// `Q_{k,l}`, a polynomial in `w = e^{−it}`.
    pub fn q(&self, k: usize, l: usize) -> &GaussPoly {
        &self.q[l - 1][k - 1]
    }

    /// `a_{k,l}`: sum of coefficient moduli of `P_{k,l}`.
    pub fn a(&self, k: usize, l: usize) -> f64 {
        self.p(k, l).abs_sum()
    }

    /// `b_{k,l}`: sum of coefficient moduli of `Q_{k,l}`.
    pub fn b(&self, k: usize, l: usize) -> f64 {
        self.q(k, l).abs_sum()
    }

    /// `(a_{k,l}, b_{k,l})` as exact integers. Every coefficient is a power of
    /// `i` times an integer, so the sums are integral.
    pub fn coeff_sums_exact(&self, k: usize, l: usize) -> Option<(BigUint, BigUint)> {
        Some((self.p(k, l).abs_sum_exact()?, self.q(k, l).abs_sum_exact()?))
    }

    /// `Σ_k Q_{k,l}(w) R_{m,k}(w) w^{l−k} − δ_{ml} w^l`, which vanishes
    /// identically when `Q` inverts `P`.
    pub fn composition_residual(&self, m: usize, l: usize) -> GaussPoly {
        let mut acc = GaussPoly::zero();
        for k in m..=l {
            let r = self.p(m, k).reversed(k);
            acc = acc.add(&self.q(k, l).mul(&r).shift(l - k));
        }
        if m == l {
            acc = acc.sub(&GaussPoly::monomial(l, GaussInt::one()));
        }
        acc
    }

    pub fn composition_is_identity(&self) -> bool {
        (1..=self.order).all(|l| (1..=l).all(|m| self.composition_residual(m, l).is_zero()))
    }

    pub fn eval_p(&self, k: usize, l: usize, z: Complex64) -> Complex64 {
        self.p(k, l).eval(z)
    }

    pub fn eval_q(&self, k: usize, l: usize, w: Complex64) -> Complex64 {
        self.q(k, l).eval(w)
    }

    /// `Σ_k P_{k,l}(z) d_k` with `d_k = f^{(k)}(z)` (`derivs[k − 1]`).
    pub fn angular_from_complex(&self, l: usize, z: Complex64, derivs: &[Complex64]) -> Complex64 {
        (1..=l).map(|k| self.eval_p(k, l, z) * derivs[k - 1]).sum()
    }
}

/// `P_{k,l}` for `1 ≤ k ≤ l ≤ p`, indexed `[l − 1][k − 1]`.
pub fn chain_polys(order: usize) -> Vec<Vec<GaussPoly>> {
    let iz = GaussPoly::monomial(1, GaussInt::i_pow(1));
    let mut rows: Vec<Vec<GaussPoly>> = Vec::with_capacity(order);
    if order == 0 {
        return rows;
    }
    rows.push(alloc::vec![iz.clone()]);
    for l in 1..order {
        let prev = &rows[l - 1];
        let next: Vec<GaussPoly> = (1..=l + 1)
            .map(|k| {
                let dp = if k <= l { prev[k - 1].derivative() } else { GaussPoly::zero() };
                let lower = if k >= 2 { prev[k - 2].clone() } else { GaussPoly::zero() };
                iz.mul(&dp.add(&lower))
            })
            .collect();
        rows.push(next);
    }
    rows
}

/// `Q_{k,l}` from the `P` rows of [`chain_polys`].
pub fn inverse_polys(p: &[Vec<GaussPoly>]) -> Vec<Vec<GaussPoly>> {
    let order = p.len();
    let mut q: Vec<Vec<GaussPoly>> = Vec::with_capacity(order);
    for l in 1..=order {
        // i^{−l} = i^{3l}
        let inv = GaussInt::i_pow(3 * l);
        let row: Vec<GaussPoly> = (1..=l)
            .map(|m| {
                let mut acc = if m == l { GaussPoly::monomial(l, GaussInt::one()) } else { GaussPoly::zero() };
                for k in m..l {
                    let r = p[l - 1][k - 1].reversed(l);
                    acc = acc.sub(&r.mul(&q[k - 1][m - 1]));
                }
                acc.mul_scalar(&inv)
            })
            .collect();
        q.push(row);
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    #[test]
    fn low_order_p_values() {
        let s = ChainRuleSystem::new(3).unwrap();
        assert_eq!(*s.p(1, 1), GaussPoly::monomial(1, g(0, 1)));
        assert_eq!(*s.p(1, 2), GaussPoly::monomial(1, g(-1, 0)));
        assert_eq!(*s.p(2, 2), GaussPoly::monomial(2, g(-1, 0)));
        assert_eq!(*s.p(1, 3), GaussPoly::monomial(1, g(0, -1)));
        assert_eq!(*s.p(2, 3), GaussPoly::monomial(2, g(0, -3)));
        assert_eq!(*s.p(3, 3), GaussPoly::monomial(3, g(0, -1)));
    }

    #[test]
    fn low_order_q_values() {
        let s = ChainRuleSystem::new(2).unwrap();
        assert_eq!(*s.q(1, 1), GaussPoly::monomial(1, g(0, -1)));
        assert_eq!(*s.q(1, 2), GaussPoly::monomial(2, g(0, 1)));
        assert_eq!(*s.q(2, 2), GaussPoly::monomial(2, g(-1, 0)));
    }

    #[test]
    fn coefficient_sums() {
        let s = ChainRuleSystem::new(3).unwrap();
        assert_eq!(s.a(1, 1), 1.0);
        assert_eq!(s.a(1, 2), 1.0);
        assert_eq!(s.a(2, 2), 1.0);
        assert_eq!(s.b(2, 2), 1.0);
        assert_eq!(s.a(2, 3), 3.0);
        let (a, b) = s.coeff_sums_exact(2, 3).unwrap();
        assert_eq!(a, BigUint::from(3u32));
        assert_eq!(b, BigUint::from(3u32));
    }

    #[test]
    fn leading_terms_and_inversion() {
        let s = ChainRuleSystem::new(8).unwrap();
        for l in 1..=8 {
            assert_eq!(*s.p(l, l), GaussPoly::monomial(l, GaussInt::i_pow(l)));
            for k in 1..=l {
                assert!(s.p(k, l).degree().unwrap() <= l);
                assert!(s.q(k, l).degree().unwrap() <= l);
            }
        }
        assert!(s.composition_is_identity());
    }

    // independent oracle: differentiate c·z^a·f^{(k)}(z), z = e^{it}, term by term
    fn oracle_p(order: usize) -> Vec<Vec<GaussPoly>> {
        use alloc::collections::BTreeMap;
        let mut terms: BTreeMap<(usize, usize), GaussInt> = BTreeMap::new();
        terms.insert((0, 0), GaussInt::one());
        let mut rows = Vec::new();
        for l in 1..=order {
            let mut next: BTreeMap<(usize, usize), GaussInt> = BTreeMap::new();
            for ((a, k), c) in &terms {
                let ci = c.mul_i();
                if *a > 0 {
                    let e = next.entry((*a, *k)).or_default();
                    *e = e.add(&ci.scale(&(*a).into()));
                }
                let e = next.entry((a + 1, k + 1)).or_default();
                *e = e.add(&ci);
            }
            terms = next;
            let row = (1..=l)
                .map(|k| {
                    let mut coeffs = vec![GaussInt::zero(); l + 1];
                    for ((a, kk), c) in &terms {
                        if *kk == k {
                            coeffs[*a] = c.clone();
                        }
                    }
                    GaussPoly::from_coeffs(coeffs)
                })
                .collect();
            rows.push(row);
        }
        rows
    }

    #[test]
    fn recurrence_matches_term_oracle() {
        let s = ChainRuleSystem::new(10).unwrap();
        let oracle = oracle_p(10);
        for l in 1..=10 {
            for k in 1..=l {
                assert_eq!(s.p(k, l), &oracle[l - 1][k - 1], "P_({k},{l})");
            }
        }
    }

    #[test]
    fn angular_identity_on_polynomials() {
        use crate::space::{BoundaryTrace, DiffScheme, PowerSeries, Smoothness};
        let coeffs: Vec<Complex64> =
            (0..=12).map(|n| Complex64::new((n as f64 * 0.7).sin(), 1.0 / (n as f64 + 1.0))).collect();
        let f = PowerSeries::polynomial(coeffs).unwrap();
        let m = 64;
        let g = BoundaryTrace::from_series(&f, 1.0, m).unwrap().with_claim(Smoothness::Unbounded);
        let s = ChainRuleSystem::new(5).unwrap();
        for l in 1..=5 {
            let spectral = g.derivative(l, DiffScheme::Spectral).unwrap().trace;
            for j in 0..m {
                let z = Complex64::from_polar(1.0, g.angle(j));
                let derivs: Vec<Complex64> = (1..=l).map(|k| f.derivative(k).eval(z).unwrap()).collect();
                let lhs = s.angular_from_complex(l, z, &derivs);
                let scale = spectral.sup_norm().max(1.0);
                assert!((lhs - spectral.samples()[j]).norm() < 1e-9 * scale);
            }
        }
    }

    #[test]
    fn rejects_order_zero() {
        assert!(ChainRuleSystem::new(0).is_err());
    }
}
