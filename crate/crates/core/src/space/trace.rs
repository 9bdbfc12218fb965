use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::PowerSeries;
use crate::fft::{self, signed_frequency};
use crate::{Error, Result, TAU};

/// Smallest admissible grid.
pub const MIN_TRACE_LEN: usize = 16;

/// Energy fraction in the top quarter of the spectrum above which
/// differentiation is flagged.
pub const SPECTRAL_WARNING_FRACTION: f64 = 0.01;

/// Claimed smoothness order of a trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    Finite(usize),
    Unbounded,
}

impl Smoothness {
    pub fn allows(self, order: usize) -> bool {
        match self {
            Smoothness::Finite(p) => order <= p,
            Smoothness::Unbounded => true,
        }
    }

    pub fn lower(self, order: usize) -> Smoothness {
        match self {
            Smoothness::Finite(p) => Smoothness::Finite(p.saturating_sub(order)),
            Smoothness::Unbounded => Smoothness::Unbounded,
        }
    }

    pub(crate) fn check(self, order: usize) -> Result<()> {
        match self {
            Smoothness::Finite(p) if order > p => Err(Error::OrderExceedsClaim { order, claim: p }),
            _ => Ok(()),
        }
    }
}

/// Samples `g(2πj/M)`, `j = 0..M`, of a 2π-periodic function.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryTrace {
    samples: Vec<Complex64>,
    claim: Smoothness,
}

/// Differentiation rule for [`BoundaryTrace::derivative`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiffScheme {
    Spectral,
    /// Second-order periodic central difference with step `step`, which must be
    /// a whole number of grid spacings. Applied once per order.
    CentralFd { step: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceDerivative {
    pub trace: BoundaryTrace,
    /// Set when the top quarter of the input spectrum carries more than
    /// [`SPECTRAL_WARNING_FRACTION`] of the energy.
    pub warning: bool,
    pub tail_energy_fraction: f64,
}

impl BoundaryTrace {
    pub fn new(samples: Vec<Complex64>, claim: Smoothness) -> Result<Self> {
        let m = samples.len();
        if m < MIN_TRACE_LEN || !m.is_power_of_two() {
            return Err(Error::GridSize(m, MIN_TRACE_LEN));
        }
        Ok(BoundaryTrace { samples, claim })
    }

    pub fn from_fn(m: usize, claim: Smoothness, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let h = TAU / m as f64;
        Self::new((0..m).map(|j| f(j as f64 * h)).collect(), claim)
    }

    /// Samples `t ↦ f(ρ e^{it})`.
    ///
    /// Coefficients are folded modulo `M` and transformed, so the samples are
    /// exact partial sums whatever the degree. `ρ = 1 = assumed_radius` is
    /// accepted as the caller's assertion that `f ∈ A(D)`; the claim is then
    /// `Finite(0)`, otherwise `Unbounded`.
    pub fn from_series(f: &PowerSeries, rho: f64, m: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&rho) {
            return Err(Error::RadiusOutOfRange { r: rho });
        }
        let radius = f.assumed_radius();
        let interior = rho < radius;
        if !interior && !(rho == 1.0 && radius >= 1.0) {
            return Err(Error::OutsideDisk { modulus: rho, radius });
        }
        let claim = if interior { Smoothness::Unbounded } else { Smoothness::Finite(0) };
        let samples = sample_on_circle(f.coeffs().iter().copied().enumerate(), rho, m)?;
        Self::new(samples, claim)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn claim(&self) -> Smoothness {
        self.claim
    }

    pub fn with_claim(mut self, claim: Smoothness) -> Self {
        self.claim = claim;
        self
    }

    pub fn spacing(&self) -> f64 {
        TAU / self.len() as f64
    }

    pub fn angle(&self, j: usize) -> f64 {
        j as f64 * self.spacing()
    }

    /// Discrete Fourier coefficients `c_k = M^{-1} Σ_j g_j e^{-ik t_j}` in FFT
    /// order.
    pub fn fourier(&self) -> Vec<Complex64> {
        let mut c = self.samples.clone();
        fft::forward(&mut c).expect("trace length is a power of two");
        let scale = 1.0 / self.len() as f64;
        c.iter_mut().for_each(|x| *x *= scale);
        c
    }

    pub fn mean(&self) -> Complex64 {
        self.samples.iter().sum::<Complex64>() / self.len() as f64
    }

    pub fn sup_norm(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn interpolant(&self) -> TrigInterpolant {
        TrigInterpolant::new(self.fourier())
    }

    /// Trigonometric interpolant at an arbitrary angle.
    pub fn eval_interpolant(&self, t: f64) -> Complex64 {
        self.interpolant().eval(t)
    }

    /// Resamples the trigonometric interpolant on `q ≥ M` points by
    /// zero-padding; the Nyquist coefficient is split evenly between `±M/2`.
    pub fn upsample(&self, q: usize) -> Result<BoundaryTrace> {
        let m = self.len();
        if q < m || !q.is_power_of_two() {
            return Err(Error::GridSize(q, m));
        }
        if q == m {
            return Ok(self.clone());
        }
        let c = self.fourier();
        let mut padded = vec![Complex64::new(0.0, 0.0); q];
        for (j, cj) in c.iter().enumerate() {
            let k = signed_frequency(j, m);
            if k == (m / 2) as i64 {
                padded[m / 2] += cj * 0.5;
                padded[q - m / 2] += cj * 0.5;
            } else {
                padded[k.rem_euclid(q as i64) as usize] = *cj;
            }
        }
        fft::inverse_unnormalized(&mut padded)?;
        BoundaryTrace::new(padded, self.claim)
    }

    /// Energy fraction carried by bins with `|k| > 3M/8`.
    pub fn tail_energy_fraction(&self) -> f64 {
        tail_fraction(&self.fourier())
    }

    pub fn derivative(&self, order: usize, scheme: DiffScheme) -> Result<TraceDerivative> {
        let c = self.fourier();
        let tail = tail_fraction(&c);
        let samples = match scheme {
            DiffScheme::Spectral => spectral_derivative(c, order)?,
            DiffScheme::CentralFd { step } => self.central_fd(order, step)?,
        };
        Ok(TraceDerivative {
            trace: BoundaryTrace { samples, claim: self.claim.lower(order) },
            warning: tail > SPECTRAL_WARNING_FRACTION,
            tail_energy_fraction: tail,
        })
    }

    fn central_fd(&self, order: usize, step: f64) -> Result<Vec<Complex64>> {
        let m = self.len();
        let spacing = self.spacing();
        let ratio = step / spacing;
        let shift = ratio.round();
        if !(step > 0.0) || shift < 1.0 || (ratio - shift).abs() > 1e-9 * ratio.max(1.0) {
            return Err(Error::InvalidStep { step, spacing });
        }
        let s = (shift as usize) % m;
        let inv = 1.0 / (2.0 * step);
        let mut cur = self.samples.clone();
        for _ in 0..order {
            cur = (0..m).map(|j| (cur[(j + s) % m] - cur[(j + m - s) % m]) * inv).collect();
        }
        Ok(cur)
    }
}

fn spectral_derivative(mut c: Vec<Complex64>, order: usize) -> Result<Vec<Complex64>> {
    let m = c.len();
    if order > 0 {
        for (j, cj) in c.iter_mut().enumerate() {
            let k = signed_frequency(j, m);
            // the Nyquist mode is cos(Mt/2) on the grid: odd derivatives vanish there
            let factor = if k == (m / 2) as i64 && order % 2 == 1 {
                Complex64::new(0.0, 0.0)
            } else {
                i_pow(order) * (k as f64).powi(order as i32)
            };
            *cj *= factor;
        }
    }
    fft::inverse_unnormalized(&mut c)?;
    Ok(c)
}

fn tail_fraction(c: &[Complex64]) -> f64 {
    let m = c.len() as i64;
    let mut total = 0.0;
    let mut tail = 0.0;
    for (j, cj) in c.iter().enumerate() {
        let e = cj.norm_sqr();
        total += e;
        if 8 * signed_frequency(j, c.len()).abs() > 3 * m {
            tail += e;
        }
    }
    if total > 0.0 {
        tail / total
    } else {
        0.0
    }
}

/// `i^n`.
pub fn i_pow(n: usize) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Samples `Σ_n c_n ρ^n e^{int}` on the `M`-point grid by folding the
/// coefficients modulo `M`; exact for any number of terms.
pub(crate) fn sample_on_circle(
    terms: impl Iterator<Item = (usize, Complex64)>,
    rho: f64,
    m: usize,
) -> Result<Vec<Complex64>> {
    if m == 0 || !m.is_power_of_two() {
        return Err(Error::GridSize(m, 1));
    }
    let mut folded = vec![Complex64::new(0.0, 0.0); m];
    let mut pow = 1.0;
    let mut next = 0usize;
    for (n, c) in terms {
        while next < n {
            pow *= rho;
            next += 1;
        }
        folded[n % m] += c * pow;
    }
    fft::inverse_unnormalized(&mut folded)?;
    Ok(folded)
}

/// Trigonometric interpolant `Σ_{|k|<M/2} c_k e^{ikt} + c_{M/2} cos(Mt/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigInterpolant {
    coeffs: Vec<Complex64>,
}

impl TrigInterpolant {
    /// `coeffs` in FFT order, as returned by [`BoundaryTrace::fourier`].
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        TrigInterpolant { coeffs }
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        let m = self.coeffs.len();
        let half = m / 2;
        let step = Complex64::from_polar(1.0, t);
        let mut acc = self.coeffs[0];
        let mut pos = Complex64::new(1.0, 0.0);
        for k in 1..half {
            pos *= step;
            acc += self.coeffs[k] * pos + self.coeffs[m - k] * pos.conj();
        }
        if m >= 2 {
            acc += self.coeffs[half] * (half as f64 * t).cos();
        }
        acc
    }
}

/// Radius and angle grid used for sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleGrid {
    r: f64,
    m: usize,
}

impl CircleGrid {
    pub fn new(r: f64, m: usize) -> Result<Self> {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::RadiusOutOfRange { r });
        }
        if m == 0 || !m.is_power_of_two() {
            return Err(Error::GridSize(m, 1));
        }
        Ok(CircleGrid { r, m })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn angle(&self, j: usize) -> f64 {
        TAU * j as f64 / self.m as f64
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.m).map(move |j| Complex64::from_polar(self.r, self.angle(j)))
    }
}
