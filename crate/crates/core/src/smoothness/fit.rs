use crate::TAU;

/// Least-squares line through `(x, y)`: `(slope, intercept, rms residual)`.
/// `None` with fewer than two points or degenerate `x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Option<(f64, f64, f64)> {
    let n = x.len();
    if n < 2 || y.len() != n {
        return None;
    }
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let sxx: f64 = x.iter().map(|v| (v - mx) * (v - mx)).sum();
    if !(sxx > 0.0) {
        return None;
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
    Some((slope, intercept, (ss / nf).sqrt()))
}

/// `true` when `theta` (mod 2π) falls in `[lo, hi]`, `lo < hi`.
pub(crate) fn in_window(theta: f64, lo: f64, hi: f64) -> bool {
    crate::rem_tau(theta - lo) <= hi - lo
}

/// `n` equispaced angles covering `[lo, hi]` inclusive.
pub(crate) fn window_angles(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = if n > 1 { (hi - lo) / (n - 1) as f64 } else { 0.0 };
    (0..n).map(move |i| lo + step * i as f64)
}

pub(crate) fn grid_angle(j: usize, m: usize) -> f64 {
    TAU * j as f64 / m as f64
}
