//! Analytic Jordan domains given by disk maps `phi` with radius `R > 1`, and
//! transfer of traces, derivatives, semi-norms and classification to `∂Ω`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::seminorms::SeminormVector;
use crate::smoothness::{classify_ap, fd_discrepancy, ApClass, ApClassification, ClassifierThresholds};
use crate::space::{sample_on_circle, BoundaryTrace, DiffScheme, PowerSeries, Smoothness, MIN_TRACE_LEN};
use crate::{Error, Result, TAU};

/// Boundary segments used by the injectivity scan.
pub const DEFAULT_SEGMENTS: usize = 4096;
/// Segments closer than this count as intersecting.
pub const INTERSECTION_TOLERANCE: f64 = 1e-9;
/// Smallest admissible `|γ'|` on the chart grid.
pub const MIN_SPEED: f64 = 1e-10;
pub const DEFAULT_COMPOSITION_DEGREE: usize = 256;
pub const DEFAULT_TRUNCATION_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InjectivityCertificate {
    /// No two non-adjacent boundary segments meet.
    VerifiedOnGrid { segments: usize },
    /// Taken on the caller's word.
    Asserted,
}

/// `phi` holomorphic on a disk of radius `R > 1`, with `phi' ≠ 0` on the
/// closed unit disk and a simple boundary curve.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticDiskMap {
    phi: PowerSeries,
    dphi: PowerSeries,
    certificate: InjectivityCertificate,
    min_derivative: f64,
}

impl AnalyticDiskMap {
    pub fn new(phi: PowerSeries) -> Result<Self> {
        Self::with_segments(phi, DEFAULT_SEGMENTS)
    }

    pub fn with_segments(phi: PowerSeries, segments: usize) -> Result<Self> {
        let mut map = Self::asserted(phi)?;
        if segments < 3 {
            return Err(Error::InvalidParameter(format!("need at least 3 segments, got {segments}")));
        }
        let curve: Vec<Complex64> =
            (0..segments).map(|j| map.phi.horner(Complex64::from_polar(1.0, TAU * j as f64 / segments as f64))).collect();
        if let Some((first, second, point)) = find_self_intersection(&curve, INTERSECTION_TOLERANCE) {
            return Err(Error::SelfIntersection { first, second, point });
        }
        map.certificate = InjectivityCertificate::VerifiedOnGrid { segments };
        Ok(map)
    }

    /// Skips the injectivity scan; the derivative check still runs.
    pub fn asserted(phi: PowerSeries) -> Result<Self> {
        if !(phi.assumed_radius() > 1.0) {
            return Err(Error::PolicyViolation(format!(
                "disk map needs assumed_radius > 1, got {}",
                phi.assumed_radius()
            )));
        }
        let dphi = phi.derivative(1);
        let min_derivative = check_derivative(&dphi)?;
        Ok(AnalyticDiskMap { phi, dphi, certificate: InjectivityCertificate::Asserted, min_derivative })
    }

    pub fn identity() -> Self {
        Self::new(PowerSeries::monomial(1, Complex64::new(1.0, 0.0))).expect("identity map is valid")
    }

    pub fn phi(&self) -> &PowerSeries {
        &self.phi
    }

    pub fn certificate(&self) -> InjectivityCertificate {
        self.certificate
    }

    /// Smallest `|phi'|` seen on the unit-circle check grid.
    pub fn min_derivative(&self) -> f64 {
        self.min_derivative
    }

    pub fn gamma(&self, t: f64) -> Complex64 {
        self.phi.horner(Complex64::from_polar(1.0, t))
    }

    /// `γ'(t) = i e^{it} phi'(e^{it})`.
    pub fn dgamma(&self, t: f64) -> Complex64 {
        let z = Complex64::from_polar(1.0, t);
        Complex64::new(0.0, 1.0) * z * self.dphi.horner(z)
    }
}

const WINDING_GRID: usize = 4096;

// zeros of phi' in the closed disk: rim minimum, then the argument principle
fn check_derivative(dphi: &PowerSeries) -> Result<f64> {
    let vals: Vec<Complex64> = (0..WINDING_GRID)
        .map(|j| dphi.horner(Complex64::from_polar(1.0, TAU * j as f64 / WINDING_GRID as f64)))
        .collect();
    let (jmin, min) = vals
        .iter()
        .map(|v| v.norm())
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (j, v)| if v < acc.1 { (j, v) } else { acc });
    if min < MIN_SPEED {
        let at = Complex64::from_polar(1.0, TAU * jmin as f64 / WINDING_GRID as f64);
        return Err(Error::VanishingDerivative { at, modulus: min });
    }
    let mut turn = 0.0;
    for j in 0..WINDING_GRID {
        turn += (vals[(j + 1) % WINDING_GRID] / vals[j]).arg();
    }
    let winding = (turn / TAU).round();
    if winding != 0.0 {
        let at = derivative_root(dphi);
        return Err(Error::VanishingDerivative { at, modulus: dphi.horner(at).norm() });
    }
    Ok(min)
}

// witness: polar-grid minimum of |phi'| polished by Newton
fn derivative_root(dphi: &PowerSeries) -> Complex64 {
    let d2 = dphi.derivative(1);
    let mut best = (Complex64::new(0.0, 0.0), f64::INFINITY);
    for i in 0..=64 {
        let r = i as f64 / 64.0;
        for j in 0..256 {
            let z = Complex64::from_polar(r, TAU * j as f64 / 256.0);
            let v = dphi.horner(z).norm();
            if v < best.1 {
                best = (z, v);
            }
        }
    }
    let mut z = best.0;
    for _ in 0..60 {
        let d = d2.horner(z);
        if d.norm() == 0.0 {
            break;
        }
        let step = dphi.horner(z) / d;
        z -= step;
        if step.norm() < 1e-15 * z.norm().max(1.0) {
            break;
        }
    }
    if z.norm() <= 1.0 + 1e-9 && dphi.horner(z).norm() <= best.1 {
        z
    } else {
        best.0
    }
}

/// First pair of non-adjacent segments of the closed polygon `pts` within
/// `tol` of each other, with an approximate meeting point.
pub fn find_self_intersection(pts: &[Complex64], tol: f64) -> Option<(usize, usize, Complex64)> {
    let n = pts.len();
    let seg = |i: usize| (pts[i], pts[(i + 1) % n]);
    let longest = (0..n).map(|i| (seg(i).1 - seg(i).0).norm()).fold(0.0, f64::max);
    let cell = longest.max(tol) * 2.0;
    let key = |x: f64| (x / cell).floor() as i64;
    let mut grid: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let (p, q) = seg(i);
        for cx in key(p.re.min(q.re) - tol)..=key(p.re.max(q.re) + tol) {
            for cy in key(p.im.min(q.im) - tol)..=key(p.im.max(q.im) + tol) {
                grid.entry((cx, cy)).or_default().push(i);
            }
        }
    }
    let mut found: Option<(usize, usize, Complex64)> = None;
    for members in grid.values() {
        for (x, &i) in members.iter().enumerate() {
            for &j in &members[x + 1..] {
                let gap = (j + n - i) % n;
                if gap <= 1 || gap == n - 1 {
                    continue;
                }
                let (a, b) = seg(i);
                let (c, d) = seg(j);
                if let Some(point) = segments_meet(a, b, c, d, tol) {
                    let pair = (i.min(j), i.max(j), point);
                    if found.is_none_or(|f| (pair.0, pair.1) < (f.0, f.1)) {
                        found = Some(pair);
                    }
                }
            }
        }
    }
    found
}

fn cross(u: Complex64, v: Complex64) -> f64 {
    u.re * v.im - u.im * v.re
}

fn point_segment(p: Complex64, a: Complex64, b: Complex64) -> (f64, Complex64) {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    let s = if len2 > 0.0 { (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0) } else { 0.0 };
    let q = a + ab * s;
    ((p - q).norm(), q)
}

fn segments_meet(a: Complex64, b: Complex64, c: Complex64, d: Complex64, tol: f64) -> Option<Complex64> {
    let d1 = cross(b - a, c - a);
    let d2 = cross(b - a, d - a);
    let d3 = cross(d - c, a - c);
    let d4 = cross(d - c, b - c);
    if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
        let s = d3 / (d3 - d4);
        return Some(a + (b - a) * s);
    }
    [point_segment(a, c, d), point_segment(b, c, d), point_segment(c, a, b), point_segment(d, a, b)]
        .into_iter()
        .filter(|(dist, _)| *dist <= tol)
        .map(|(_, q)| q)
        .next()
}

/// Boundary samples `γ(t_j)`, `γ'(t_j)` of a disk map on an `M`-point grid.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanChart {
    map: AnalyticDiskMap,
    gamma: Vec<Complex64>,
    dgamma: Vec<Complex64>,
}

impl JordanChart {
    pub fn map(&self) -> &AnalyticDiskMap {
        &self.map
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }

    pub fn angle(&self, j: usize) -> f64 {
        TAU * j as f64 / self.len() as f64
    }

    pub fn gamma(&self) -> &[Complex64] {
        &self.gamma
    }

    pub fn dgamma(&self) -> &[Complex64] {
        &self.dgamma
    }

    pub fn max_modulus(&self) -> f64 {
        self.gamma.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Validates `phi` as a disk map and samples its boundary curve.
pub fn build_chart(phi: PowerSeries, m: usize) -> Result<JordanChart> {
    chart_from_map(AnalyticDiskMap::new(phi)?, m)
}

pub fn chart_from_map(map: AnalyticDiskMap, m: usize) -> Result<JordanChart> {
    if m < MIN_TRACE_LEN || !m.is_power_of_two() {
        return Err(Error::GridSize(m, MIN_TRACE_LEN));
    }
    let gamma = sample_on_circle(map.phi.coeffs().iter().copied().enumerate(), 1.0, m)?;
    let dgamma: Vec<Complex64> = (0..m).map(|j| map.dgamma(TAU * j as f64 / m as f64)).collect();
    if let Some((j, v)) = dgamma.iter().enumerate().find(|(_, v)| v.norm() < MIN_SPEED) {
        return Err(Error::VanishingDerivative { at: Complex64::from_polar(1.0, TAU * j as f64 / m as f64), modulus: v.norm() });
    }
    Ok(JordanChart { map, gamma, dgamma })
}

/// `f∘phi` as a truncated series with an estimate of the discarded tail.
#[derive(Debug, Clone, PartialEq)]
pub struct Composition {
    pub series: PowerSeries,
    pub degree: usize,
    /// `Σ |c_n|` over the computed coefficients beyond `degree` (evaluation
    /// radius 1).
    pub tail_estimate: f64,
    pub tolerance: f64,
}

impl Composition {
    /// `f∘phi` truncated at `degree`. The tail is computed up to the exact
    /// degree of the composition, capped at `4·degree`.
    pub fn new(f: &PowerSeries, map: &AnalyticDiskMap, degree: usize, tolerance: f64) -> Result<Self> {
        let full = f.degree().saturating_mul(map.phi.degree()).clamp(degree, 4 * degree.max(1));
        let (mut series, tail) = f.compose_with_tail(&map.phi, degree, full);
        let tail_estimate: f64 = tail.iter().map(|c| c.norm()).sum();
        if tail_estimate > tolerance {
            return Err(Error::TruncationTooLarge { estimate: tail_estimate, tolerance });
        }
        if f.assumed_radius().is_finite() {
            // analyticity of f∘phi past the rim is not known; keep A(D) only
            series = series.with_assumed_radius(1.0)?;
        }
        Ok(Composition { series, degree, tail_estimate, tolerance })
    }

    /// A series supplied directly as `f∘phi`.
    pub fn from_series(series: PowerSeries) -> Self {
        let degree = series.degree();
        Composition { series, degree, tail_estimate: 0.0, tolerance: DEFAULT_TRUNCATION_TOLERANCE }
    }
}

/// `g(t) = f(γ(t))` on the chart grid, from the composed series.
pub fn transfer_trace(comp: &Composition, chart: &JordanChart) -> Result<BoundaryTrace> {
    let trace = BoundaryTrace::from_series(&comp.series, 1.0, chart.len())?;
    let claim = if comp.series.assumed_radius() > 1.0 { Smoothness::Unbounded } else { Smoothness::Finite(0) };
    Ok(trace.with_claim(claim))
}

/// `max |FD_h[t ↦ F(γ(t))] − F'(γ(t))·γ'(t)|` over the chart grid.
pub fn verify_chain_rule(big_f: &PowerSeries, chart: &JordanChart, h: f64) -> Result<f64> {
    let reach = chart.max_modulus();
    if !(big_f.assumed_radius() > reach) {
        return Err(Error::OutsideDisk { modulus: reach, radius: big_f.assumed_radius() });
    }
    if !(h > 0.0) {
        return Err(Error::InvalidParameter(format!("step must be positive, got {h}")));
    }
    let df = big_f.derivative(1);
    let map = &chart.map;
    Ok(fd_discrepancy(chart.len(), h, |t| big_f.horner(map.gamma(t)), |t| df.horner(map.gamma(t)) * map.dgamma(t)))
}

/// Classifies `f ∈ A^p(Ω)` through the pulled-back series `f∘phi` on the
/// disk. A tail estimate above the composition's tolerance gives an
/// inconclusive class.
pub fn classify_ap_domain(
    comp: &Composition,
    chart: &JordanChart,
    p_max: usize,
    th: &ClassifierThresholds,
) -> Result<ApClassification> {
    let _ = chart.map().certificate();
    let mut c = classify_ap(&comp.series, p_max, th)?;
    if comp.tail_estimate > comp.tolerance {
        c.class = ApClass::Inconclusive;
    }
    Ok(c)
}

/// `sup_t |d^l (f∘γ)/dt^l|`, `l = 0..=p`, from spectral derivatives of the
/// transferred trace, each grid maximum refined on the interpolant.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainSeminorms {
    pub vector: SeminormVector,
    pub warning: bool,
}

pub fn domain_seminorms(comp: &Composition, chart: &JordanChart, p: usize) -> Result<DomainSeminorms> {
    let trace = transfer_trace(comp, chart)?.with_claim(Smoothness::Unbounded);
    let mut values = Vec::with_capacity(p + 1);
    let mut warning = false;
    for l in 0..=p {
        let d = trace.derivative(l, DiffScheme::Spectral)?;
        warning |= d.warning;
        values.push(refined_max(&d.trace));
    }
    Ok(DomainSeminorms {
        vector: SeminormVector { values, grid: chart.len(), radius: 1.0, proxy: false },
        warning,
    })
}

// golden-section search on |interpolant| around the grid argmax
fn refined_max(trace: &BoundaryTrace) -> f64 {
    let s = trace.samples();
    let (j, grid_max) = s
        .iter()
        .map(|v| v.norm())
        .enumerate()
        .fold((0, 0.0), |acc, (j, v)| if v > acc.1 { (j, v) } else { acc });
    if grid_max == 0.0 {
        return 0.0;
    }
    let interp = trace.interpolant();
    let h = trace.spacing();
    let f = |t: f64| interp.eval(t).norm();
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (trace.angle(j) - h, trace.angle(j) + h);
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-9 * h.max(1e-3) {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        }
    }
    grid_max.max(f1).max(f2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seminorms::seminorm_trace;
    use crate::smoothness::verify_trace_formula;
    use alloc::vec;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn quad(eps: f64) -> PowerSeries {
        PowerSeries::polynomial(vec![c(0.0), c(1.0), c(eps)]).unwrap()
    }

    fn w_pow(k: usize) -> PowerSeries {
        PowerSeries::monomial(k, c(1.0))
    }

    #[test]
    fn identity_chart() {
        let chart = build_chart(w_pow(1), 64).unwrap();
        for j in 0..64 {
            let t = chart.angle(j);
            assert!((chart.dgamma()[j] - Complex64::new(0.0, 1.0) * Complex64::from_polar(1.0, t)).norm() < 1e-15);
        }
        assert_eq!(chart.map().certificate(), InjectivityCertificate::VerifiedOnGrid { segments: DEFAULT_SEGMENTS });
    }

    #[test]
    fn quadratic_chart_passes() {
        let chart = build_chart(quad(0.3), 1024).unwrap();
        assert!(chart.map().min_derivative() > 0.39);
    }

    #[test]
    fn vanishing_derivative_is_witnessed() {
        match build_chart(quad(0.8), 256) {
            Err(Error::VanishingDerivative { at, modulus }) => {
                assert!((at - c(-0.625)).norm() < 1e-12, "{at}");
                assert!(modulus < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        // zero of phi' on the rim itself
        assert!(matches!(build_chart(quad(0.5), 256), Err(Error::VanishingDerivative { .. })));
    }

    #[test]
    fn self_intersection_is_witnessed() {
        // exp(4z): phi' never vanishes, the boundary winds past ±π
        let mut coeffs = vec![c(1.0)];
        for n in 1..=80 {
            let prev = coeffs[n - 1];
            coeffs.push(prev * 4.0 / n as f64);
        }
        let phi = PowerSeries::polynomial(coeffs).unwrap();
        match AnalyticDiskMap::with_segments(phi, 1024) {
            Err(Error::SelfIntersection { first, second, point }) => {
                assert!(second > first + 1);
                assert!(point.norm() > 0.0);
            }
            other => panic!("{other:?}"),
        }
        // a polygon with a crossing
        let bow = [c(0.0), Complex64::new(1.0, 1.0), c(1.0), Complex64::new(0.0, 1.0)];
        let (i, j, p) = find_self_intersection(&bow, 1e-9).unwrap();
        assert_eq!((i, j), (0, 2));
        assert!((p - Complex64::new(0.5, 0.5)).norm() < 1e-12);
        let square = [c(0.0), c(1.0), Complex64::new(1.0, 1.0), Complex64::new(0.0, 1.0)];
        assert!(find_self_intersection(&square, 1e-9).is_none());
    }

    #[test]
    fn maps_need_radius_beyond_one() {
        let phi = quad(0.3).with_assumed_radius(1.0).unwrap();
        assert!(matches!(AnalyticDiskMap::new(phi), Err(Error::PolicyViolation(_))));
    }

    #[test]
    fn transfer_examples() {
        let chart = build_chart(quad(0.3), 64).unwrap();
        let comp = Composition::new(&w_pow(1), chart.map(), 256, 1e-10).unwrap();
        let g = transfer_trace(&comp, &chart).unwrap();
        for j in 0..64 {
            let t = chart.angle(j);
            let e = Complex64::from_polar(1.0, t);
            assert!((g.samples()[j] - (e + e * e * 0.3)).norm() < 1e-14);
        }
        let comp = Composition::new(&w_pow(2), chart.map(), 256, 1e-10).unwrap();
        let g = transfer_trace(&comp, &chart).unwrap();
        for j in 0..64 {
            let e = Complex64::from_polar(1.0, chart.angle(j));
            let v = e + e * e * 0.3;
            assert!((g.samples()[j] - v * v).norm() < 1e-14);
        }
    }

    #[test]
    fn truncated_exp_on_identity_chart() {
        let mut coeffs = vec![c(1.0)];
        for n in 1..20 {
            let prev = coeffs[n - 1];
            coeffs.push(prev / n as f64);
        }
        let f = PowerSeries::polynomial(coeffs).unwrap();
        let chart = build_chart(w_pow(1), 128).unwrap();
        let comp = Composition::new(&f, chart.map(), 256, 1e-10).unwrap();
        let g = transfer_trace(&comp, &chart).unwrap();
        let disk = BoundaryTrace::from_series(&f, 1.0, 128).unwrap();
        for j in 0..128 {
            let z = Complex64::from_polar(1.0, chart.angle(j));
            assert!((g.samples()[j] - z.exp()).norm() < 1e-12);
            assert!((g.samples()[j] - disk.samples()[j]).norm() < 1e-12);
        }
    }

    #[test]
    fn truncation_is_guarded() {
        let map = AnalyticDiskMap::asserted(quad(0.3)).unwrap();
        let f = w_pow(20);
        assert!(matches!(Composition::new(&f, &map, 8, 1e-10), Err(Error::TruncationTooLarge { .. })));
        assert!(Composition::new(&f, &map, 40, 1e-10).is_ok());
    }

    #[test]
    fn chain_rule_examples() {
        let chart = build_chart(quad(0.3), 1024).unwrap();
        let d1 = verify_chain_rule(&w_pow(2), &chart, 1e-4).unwrap();
        let d2 = verify_chain_rule(&w_pow(2), &chart, 5e-5).unwrap();
        assert!(d1 <= 1e-6);
        assert!((3.5..=4.5).contains(&(d1 / d2)));
        assert_eq!(verify_chain_rule(&PowerSeries::constant(c(2.0)), &chart, 1e-4).unwrap(), 0.0);
        assert!(verify_chain_rule(&w_pow(1), &chart, 1e-4).unwrap() < 1e-7);
    }

    #[test]
    fn identity_chart_matches_disk() {
        let chart = build_chart(w_pow(1), 1024).unwrap();
        let f = PowerSeries::polynomial(vec![c(0.0), c(2.0), c(0.0), c(1.0)]).unwrap();
        let a = verify_chain_rule(&f, &chart, 1e-4).unwrap();
        let b = verify_trace_formula(&f, 1024, 1e-4).unwrap();
        assert!((a - b).abs() < 1e-12);
        let comp = Composition::new(&f, chart.map(), 256, 1e-10).unwrap();
        let th = ClassifierThresholds::default();
        assert_eq!(classify_ap_domain(&comp, &chart, 3, &th).unwrap(), classify_ap(&f, 3, &th).unwrap());
        let s = domain_seminorms(&comp, &chart, 2).unwrap();
        let g = BoundaryTrace::from_series(&f, 1.0, 1024).unwrap().with_claim(Smoothness::Unbounded);
        for l in 0..=2 {
            let grid = seminorm_trace(&g, l).unwrap().value;
            assert!(s.vector.get(l) >= grid - 1e-12);
            assert!(s.vector.get(l) - grid < 1e-4 * grid);
        }
    }

    #[test]
    fn synthetic_composition_classifies() {
        let coeffs: Vec<f64> = (0..=8192).map(|n| if n == 0 { 0.0 } else { (n as f64).powf(-2.5) }).collect();
        let comp = Composition::from_series(PowerSeries::from_real(&coeffs, 1.0).unwrap());
        let chart = build_chart(quad(0.3), 64).unwrap();
        let c = classify_ap_domain(&comp, &chart, 3, &ClassifierThresholds::default()).unwrap();
        assert_eq!(c.class, ApClass::Finite(1));
    }

    #[test]
    fn domain_seminorm_examples() {
        let id = build_chart(w_pow(1), 256).unwrap();
        let comp = Composition::new(&w_pow(1), id.map(), 256, 1e-10).unwrap();
        assert!((domain_seminorms(&comp, &id, 1).unwrap().vector.get(1) - 1.0).abs() < 1e-12);

        let chart = build_chart(quad(0.3), 256).unwrap();
        let comp = Composition::new(&w_pow(1), chart.map(), 256, 1e-10).unwrap();
        assert!((domain_seminorms(&comp, &chart, 0).unwrap().vector.get(0) - 1.3).abs() < 1e-12);

        let k = Composition::new(&PowerSeries::constant(c(5.0)), chart.map(), 256, 1e-10).unwrap();
        let v = domain_seminorms(&k, &chart, 3).unwrap().vector;
        assert!((v.get(0) - 5.0).abs() < 1e-12);
        assert!(v.values[1..].iter().all(|x| *x < 1e-12));
    }

    #[test]
    fn domain_seminorm_rotation_invariance() {
        let chart = build_chart(w_pow(1), 256).unwrap();
        let f = PowerSeries::polynomial(vec![c(0.2), Complex64::new(1.0, 0.5), c(-0.7), Complex64::new(0.0, 0.3)]).unwrap();
        let base = Composition::new(&f, chart.map(), 256, 1e-10).unwrap();
        let a = domain_seminorms(&base, &chart, 0).unwrap().vector.get(0);
        for shift in [0.013, 0.4, 2.9] {
            let rotated = Composition::from_series(f.rotate(shift));
            let b = domain_seminorms(&rotated, &chart, 0).unwrap().vector.get(0);
            assert!((a - b).abs() < 1e-10, "{a} {b}");
        }
    }
}
