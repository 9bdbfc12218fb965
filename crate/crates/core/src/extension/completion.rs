use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::space::{falling_factorial, ArcTrace, BoundaryTrace, Smoothness};
use crate::{Error, Result, TAU};

/// Two-point Hermite polynomial on the complementary arc `[b, a + 2π]`,
/// written in `s = (t − b)/L`, `L = 2π − (b − a)`, matching the jets of `u`
/// at `b` (`s = 0`) and at `a + 2π` (`s = 1`) to order `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteBridge {
    start: f64,
    len: f64,
    coeffs: Vec<Complex64>,
}

impl HermiteBridge {
    /// `jets_start[j] = u^{(j)}(b)`, `jets_end[j] = u^{(j)}(a)`, `j = 0..=p`.
    pub fn new(start: f64, len: f64, jets_start: &[Complex64], jets_end: &[Complex64], p: usize) -> Result<Self> {
        let n = p + 1;
        if jets_start.len() < n || jets_end.len() < n {
            return Err(Error::MissingEndpointData {
                needed: p,
                available: Some(jets_start.len().min(jets_end.len()).saturating_sub(1)),
            });
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * n];
        let mut lj = 1.0;
        let mut fact = 1.0;
        for j in 0..n {
            if j > 0 {
                fact *= j as f64;
            }
            coeffs[j] = jets_start[j] * (lj / fact);
            lj *= len;
        }
        // remaining coefficients from the conditions at s = 1
        let mut mat = vec![vec![0.0; n]; n];
        let mut rhs = vec![Complex64::new(0.0, 0.0); n];
        let mut lj = 1.0;
        for j in 0..n {
            for (i, m) in mat[j].iter_mut().enumerate() {
                *m = falling_factorial(n + i, j);
            }
            let known: Complex64 = (0..n).map(|k| coeffs[k] * falling_factorial(k, j)).sum();
            rhs[j] = jets_end[j] * lj - known;
            lj *= len;
        }
        let tail = solve(mat, rhs).ok_or(Error::InvalidParameter("singular Hermite system".into()))?;
        coeffs[n..].copy_from_slice(&tail);
        Ok(HermiteBridge { start, len, coeffs })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        let s = (t - self.start) / self.len;
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * s + c)
    }

    /// `d^l/dt^l` of the bridge.
    pub fn derivative(&self, order: usize, t: f64) -> Complex64 {
        let s = (t - self.start) / self.len;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate().skip(order).rev() {
            acc = acc * s + c * falling_factorial(k, order);
        }
        acc / self.len.powi(order as i32)
    }
}

// Gaussian elimination with partial pivoting; real matrix, complex right side
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col] == 0.0 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f != 0.0 {
                for k in col..n {
                    a[row][k] -= f * a[col][k];
                }
                let bc = b[col];
                b[row] -= bc * f;
            }
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let s: Complex64 = (row + 1..n).map(|k| x[k] * a[row][k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Periodic `C^p` trace equal to `u` on its arc and to the Hermite bridge on
/// the complement, sampled on `m` points.
pub fn smooth_arc_completion(u: &ArcTrace, p: usize, m: usize) -> Result<BoundaryTrace> {
    let jets = u.jets().ok_or(Error::MissingEndpointData { needed: p, available: None })?;
    if jets.order() < p {
        return Err(Error::MissingEndpointData { needed: p, available: Some(jets.order()) });
    }
    let arc = u.arc();
    let bridge = HermiteBridge::new(arc.b(), TAU - arc.len(), jets.at_b(), jets.at_a(), p)?;
    BoundaryTrace::from_fn(m, Smoothness::Finite(p), |t| {
        let s = arc.unwrap(t);
        if s <= arc.b() {
            u.value_at(s)
        } else {
            bridge.eval(s)
        }
    })
}

/// Bridge used by [`smooth_arc_completion`], exposed for inspection.
pub fn completion_bridge(u: &ArcTrace, p: usize) -> Result<HermiteBridge> {
    let jets = u.jets().ok_or(Error::MissingEndpointData { needed: p, available: None })?;
    if jets.order() < p {
        return Err(Error::MissingEndpointData { needed: p, available: Some(jets.order()) });
    }
    let arc = u.arc();
    HermiteBridge::new(arc.b(), TAU - arc.len(), jets.at_b(), jets.at_a(), p)
}
