//! Radix-2 complex FFT.
//!
//! Conventions: `forward` computes `X_k = Σ_j x_j e^{-2πi jk/n}`,
//! `inverse_unnormalized` computes `x_j = Σ_k X_k e^{+2πi jk/n}`. Lengths must
//! be powers of two.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result, TAU};

pub fn forward(data: &mut [Complex64]) -> Result<()> {
    transform(data, -1.0)
}

pub fn inverse_unnormalized(data: &mut [Complex64]) -> Result<()> {
    transform(data, 1.0)
}

/// `inverse_unnormalized` scaled by `1/n`.
pub fn inverse(data: &mut [Complex64]) -> Result<()> {
    transform(data, 1.0)?;
    let scale = 1.0 / data.len() as f64;
    for x in data.iter_mut() {
        *x *= scale;
    }
    Ok(())
}

/// Signed frequency of FFT bin `j` on an `n`-point grid. The Nyquist bin maps
/// to `+n/2`.
pub fn signed_frequency(j: usize, n: usize) -> i64 {
    if j <= n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

pub fn next_power_of_two(n: usize) -> usize {
    n.max(1).next_power_of_two()
}

fn transform(data: &mut [Complex64], sign: f64) -> Result<()> {
    let n = data.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::GridSize(n, 1));
    }
    if n == 1 {
        return Ok(());
    }

    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }

    // twiddles computed directly, no recurrence drift
    let twiddles: Vec<Complex64> = (0..n / 2)
        .map(|k| {
            let a = sign * TAU * k as f64 / n as f64;
            Complex64::new(a.cos(), a.sin())
        })
        .collect();

    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let w = twiddles[k * stride];
                let a = data[start + k];
                let b = data[start + k + half] * w;
                data[start + k] = a + b;
                data[start + k + half] = a - b;
            }
        }
        len <<= 1;
    }
    Ok(())
}
