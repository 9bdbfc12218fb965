//! Reference functions, traces, arc data and charts with known ground truth.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::space::{falling_factorial, Arc, ArcTrace, BoundaryTrace, EndpointJets, PowerSeries, Smoothness};
use crate::{Error, Result};

/// Truncation degree of the marginal series family.
pub const DEFAULT_ZETA_DEGREE: usize = 8192;
/// Samples per arc fixture.
pub const ARC_SAMPLES: usize = 1025;
/// Order of the endpoint jets shipped with arc fixtures.
pub const ARC_JET_ORDER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Series,
    Trace,
    Arc,
    Chart,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Series => "series",
            Kind::Trace => "trace",
            Kind::Arc => "arc",
            Kind::Chart => "chart",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        [Kind::Series, Kind::Trace, Kind::Arc, Kind::Chart].into_iter().find(|k| k.as_str() == s)
    }
}

/// True smoothness class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrueClass {
    /// Every derivative extends continuously (`A^∞`).
    Infinite,
    /// In `A^p`, not in `A^{p+1}`.
    Exact(usize),
    /// Not continuous up to the rim.
    NotContinuous,
    /// Chart fixture that must be refused.
    Rejected,
}

/// Quantity a ground-truth fact is about.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    /// `|f|_l`.
    Seminorm(usize),
    /// `|g|_l` for the rim trace.
    TraceSeminorm(usize),
    /// Explicit decay bound at radius `r` on the window `[lo, hi]`.
    DecayBound { r: f64, lo: f64, hi: f64 },
    /// Location (real part) of a zero of `phi'` inside the disk.
    DerivativeRoot,
    /// `max |γ(t)|` over the boundary curve.
    CurveSup,
}

impl Quantity {
    pub fn label(&self) -> String {
        match self {
            Quantity::Seminorm(l) => format!("seminorm_{l}"),
            Quantity::TraceSeminorm(l) => format!("trace_seminorm_{l}"),
            Quantity::DecayBound { r, lo, hi } => format!("decay_bound_r{r}_[{lo},{hi}]"),
            Quantity::DerivativeRoot => "derivative_root".to_string(),
            Quantity::CurveSup => "curve_sup".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fact {
    pub quantity: Quantity,
    pub value: f64,
    pub derivation: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruth {
    pub class: Option<TrueClass>,
    pub class_derivation: &'static str,
    pub facts: Vec<Fact>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    Series(PowerSeries),
    /// Sampled periodic trace; `series` is set when the trace is the rim
    /// trace of a polynomial.
    Trace { trace: BoundaryTrace, series: Option<PowerSeries> },
    Arc(ArcTrace),
    /// Disk map `phi`.
    Chart(PowerSeries),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEntry {
    pub name: String,
    pub kind: Kind,
    pub generator: Generator,
    pub truth: GroundTruth,
    pub note: &'static str,
}

impl CorpusEntry {
    /// Series view: the function itself, the polynomial behind a trace, or the
    /// chart map.
    pub fn series(&self) -> Option<&PowerSeries> {
        match &self.generator {
            Generator::Series(f) | Generator::Chart(f) => Some(f),
            Generator::Trace { series, .. } => series.as_ref(),
            Generator::Arc(_) => None,
        }
    }

    pub fn arc_trace(&self) -> Option<&ArcTrace> {
        match &self.generator {
            Generator::Arc(u) => Some(u),
            _ => None,
        }
    }

    pub fn trace(&self) -> Option<&BoundaryTrace> {
        match &self.generator {
            Generator::Trace { trace, .. } => Some(trace),
            _ => None,
        }
    }
}

/// Selection for [`corpus_all`]. Classes are compared with `Infinite` above
/// every finite order.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CorpusFilter {
    pub kind: Option<Kind>,
    pub class_min: Option<usize>,
    pub class_max: Option<usize>,
}

impl CorpusFilter {
    fn accepts(&self, e: &CorpusEntry) -> bool {
        if self.kind.is_some_and(|k| k != e.kind) {
            return false;
        }
        if self.class_min.is_none() && self.class_max.is_none() {
            return true;
        }
        let (lo, hi) = (self.class_min.unwrap_or(0), self.class_max.unwrap_or(usize::MAX));
        match e.truth.class {
            Some(TrueClass::Exact(p)) => lo <= p && p <= hi,
            Some(TrueClass::Infinite) => self.class_max.is_none(),
            _ => false,
        }
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

const NAMES: [&str; 17] = [
    "monomial_1",
    "monomial_3",
    "monomial_5",
    "cubic_z3_plus_2z",
    "exp_truncated",
    "zeta_series_1.5",
    "zeta_series_2.5",
    "zeta_series_3.5",
    "zeta_series_4.5",
    "trig_analytic",
    "trig_mode_neg2",
    "arc_constant",
    "arc_cosine",
    "arc_sine_pi",
    "arc_exp2",
    "chart_quadratic_0.3",
    "chart_quadratic_0.8",
];

/// Registered names in their stable order.
pub fn corpus_names() -> &'static [&'static str] {
    &NAMES
}

/// Entry by name. `monomial_<k>` and `zeta_series_<s>` accept any parameter.
pub fn corpus_get(name: &str) -> Result<CorpusEntry> {
    corpus_get_with_degree(name, None)
}

/// As [`corpus_get`]; `degree` overrides the truncation of marginal series.
pub fn corpus_get_with_degree(name: &str, degree: Option<usize>) -> Result<CorpusEntry> {
    let unknown = || Error::UnknownCorpusEntry(name.to_string());
    if let Some(k) = name.strip_prefix("monomial_") {
        let k: usize = k.parse().map_err(|_| unknown())?;
        return Ok(monomial(k));
    }
    if let Some(s) = name.strip_prefix("zeta_series_") {
        let s: f64 = s.parse().map_err(|_| unknown())?;
        if !(s > 0.0 && s.is_finite()) {
            return Err(unknown());
        }
        return zeta_series(name, s, degree.unwrap_or(DEFAULT_ZETA_DEGREE));
    }
    match name {
        "cubic_z3_plus_2z" => Ok(cubic()),
        "exp_truncated" => Ok(exp_truncated()),
        "trig_analytic" => trig_analytic(),
        "trig_mode_neg2" => trig_mode_neg2(),
        "arc_constant" => arc_fixture(name, |_| c(1.0), |_, _| c(0.0), "u = 1 on [0, 1]"),
        "arc_cosine" => arc_fixture(name, |t| c(t.cos()), |j, t| c(cos_derivative(j, t)), "u = cos t on [0, 1]"),
        "arc_sine_pi" => arc_fixture(
            name,
            |t| c((core::f64::consts::PI * t).sin()),
            |j, t| {
                let pi = core::f64::consts::PI;
                c(pi.powi(j as i32) * cos_derivative(j, pi * t - core::f64::consts::FRAC_PI_2))
            },
            "u = sin(πt) on [0, 1]",
        ),
        "arc_exp2" => arc_fixture(
            name,
            |t| Complex64::from_polar(1.0, 2.0 * t),
            |j, t| Complex64::new(0.0, 2.0).powu(j as u32) * Complex64::from_polar(1.0, 2.0 * t),
            "u = e^{2it} on [0, 1]",
        ),
        "chart_quadratic_0.3" => chart(name, 0.3),
        "chart_quadratic_0.8" => chart(name, 0.8),
        _ => Err(unknown()),
    }
}

/// Every registered entry passing `filter`, in registry order.
pub fn corpus_all(filter: &CorpusFilter) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for name in NAMES {
        let e = corpus_get(name)?;
        if filter.accepts(&e) {
            out.push(e);
        }
    }
    Ok(out)
}

// d^j/dt^j cos t
fn cos_derivative(j: usize, t: f64) -> f64 {
    match j % 4 {
        0 => t.cos(),
        1 => -t.sin(),
        2 => -t.cos(),
        _ => t.sin(),
    }
}

fn monomial(k: usize) -> CorpusEntry {
    let facts = (0..=3.min(k))
        .flat_map(|l| {
            let v = falling_factorial(k, l);
            [
                Fact { quantity: Quantity::Seminorm(l), value: v, derivation: "|f^(l)| = k!/(k-l)! |z|^(k-l), maximal on the rim" },
                Fact {
                    quantity: Quantity::TraceSeminorm(l),
                    value: (k as f64).powi(l as i32),
                    derivation: "g(t) = e^{ikt}, |g^(l)| = k^l",
                },
            ]
        })
        .collect();
    CorpusEntry {
        name: format!("monomial_{k}"),
        kind: Kind::Series,
        generator: Generator::Series(PowerSeries::monomial(k, c(1.0))),
        truth: GroundTruth { class: Some(TrueClass::Infinite), class_derivation: "polynomial", facts },
        note: "f(z) = z^k",
    }
}

/// `p = ⌈s − 1⌉ − 1`, the largest integer with `s − p > 1`.
pub fn zeta_class(s: f64) -> TrueClass {
    if s <= 1.0 {
        TrueClass::NotContinuous
    } else {
        TrueClass::Exact(((s - 1.0).ceil() as usize).saturating_sub(1))
    }
}

fn zeta_series(name: &str, s: f64, degree: usize) -> Result<CorpusEntry> {
    if degree == 0 {
        return Err(Error::InvalidParameter("zeta series needs degree >= 1".into()));
    }
    let coeffs: Vec<f64> = (0..=degree).map(|n| if n == 0 { 0.0 } else { (n as f64).powf(-s) }).collect();
    let f = PowerSeries::from_real(&coeffs, 1.0)?;
    Ok(CorpusEntry {
        name: name.to_string(),
        kind: Kind::Series,
        generator: Generator::Series(f),
        truth: GroundTruth {
            class: Some(zeta_class(s)),
            class_derivation: "f^(p) has coefficients ~ n^(p-s); absolutely convergent on the rim iff s - p > 1, \
                               and the positive terms diverge at z = 1 otherwise",
            facts: Vec::new(),
        },
        note: "f(z) = sum_{n=1}^N n^(-s) z^n",
    })
}

fn cubic() -> CorpusEntry {
    let f = PowerSeries::polynomial(vec![c(0.0), c(2.0), c(0.0), c(1.0)]).expect("nonempty");
    let facts = vec![
        Fact { quantity: Quantity::Seminorm(0), value: 3.0, derivation: "|z^3 + 2z| <= 3 on the rim, equality at z = 1" },
        Fact { quantity: Quantity::Seminorm(1), value: 5.0, derivation: "|3z^2 + 2| <= 5, equality at z = ±1" },
        Fact { quantity: Quantity::TraceSeminorm(1), value: 5.0, derivation: "|g'| = |3e^{2it} + 2|" },
        Fact { quantity: Quantity::Seminorm(2), value: 6.0, derivation: "|6z| = 6 on the rim" },
    ];
    CorpusEntry {
        name: "cubic_z3_plus_2z".to_string(),
        kind: Kind::Series,
        generator: Generator::Series(f),
        truth: GroundTruth { class: Some(TrueClass::Infinite), class_derivation: "polynomial", facts },
        note: "f(z) = z^3 + 2z",
    }
}

fn exp_truncated() -> CorpusEntry {
    let mut coeffs = vec![c(1.0)];
    for n in 1..20 {
        let prev = coeffs[n - 1];
        coeffs.push(prev / n as f64);
    }
    let sup: f64 = coeffs.iter().map(|a| a.re).sum();
    let f = PowerSeries::polynomial(coeffs).expect("nonempty");
    CorpusEntry {
        name: "exp_truncated".to_string(),
        kind: Kind::Series,
        generator: Generator::Series(f),
        truth: GroundTruth {
            class: Some(TrueClass::Infinite),
            class_derivation: "polynomial",
            facts: vec![Fact {
                quantity: Quantity::Seminorm(0),
                value: sup,
                derivation: "positive coefficients: the rim maximum is f(1) = sum_{n<20} 1/n!",
            }],
        },
        note: "first 20 Taylor terms of exp",
    }
}

fn trig_analytic() -> Result<CorpusEntry> {
    let f = PowerSeries::polynomial(vec![c(1.0), c(0.5), c(0.0), c(0.25)])?;
    let trace = BoundaryTrace::from_series(&f, 1.0, 64)?.with_claim(Smoothness::Unbounded);
    Ok(CorpusEntry {
        name: "trig_analytic".to_string(),
        kind: Kind::Trace,
        generator: Generator::Trace { trace, series: Some(f) },
        truth: GroundTruth {
            class: Some(TrueClass::Infinite),
            class_derivation: "rim trace of a polynomial",
            facts: vec![
                Fact { quantity: Quantity::TraceSeminorm(0), value: 1.75, derivation: "positive coefficients, maximum at t = 0" },
                Fact { quantity: Quantity::TraceSeminorm(1), value: 1.25, derivation: "|0.5i e^{it} + 0.75i e^{3it}|, maximum at t = 0" },
            ],
        },
        note: "g(t) = 1 + 0.5e^{it} + 0.25e^{3it}",
    })
}

fn trig_mode_neg2() -> Result<CorpusEntry> {
    let trace = BoundaryTrace::from_fn(64, Smoothness::Unbounded, |t| Complex64::from_polar(1.0, -2.0 * t))?;
    let facts = (0..=3)
        .map(|l| Fact {
            quantity: Quantity::TraceSeminorm(l),
            value: 2f64.powi(l as i32),
            derivation: "Fourier eigenfunction: |g^(l)| = 2^l",
        })
        .collect();
    Ok(CorpusEntry {
        name: "trig_mode_neg2".to_string(),
        kind: Kind::Trace,
        generator: Generator::Trace { trace, series: None },
        truth: GroundTruth { class: None, class_derivation: "smooth, but not the trace of a holomorphic function", facts },
        note: "g(t) = e^{-2it}",
    })
}

fn arc_fixture(
    name: &str,
    u: impl Fn(f64) -> Complex64,
    d: impl Fn(usize, f64) -> Complex64,
    note: &'static str,
) -> Result<CorpusEntry> {
    let arc = Arc::new(0.0, 1.0)?;
    let jet = |t: f64| -> Vec<Complex64> { (0..=ARC_JET_ORDER).map(|j| if j == 0 { u(t) } else { d(j, t) }).collect() };
    let trace = ArcTrace::from_fn(arc, ARC_SAMPLES, &u)?.with_jets(EndpointJets::new(jet(0.0), jet(1.0))?);
    let mut facts = Vec::new();
    if name == "arc_constant" {
        let (lo, hi, r) = (2.0, 5.0, 0.9999);
        let m = (lo - 1.0f64).cos().max(hi.cos());
        facts.push(Fact {
            quantity: Quantity::DecayBound { r, lo, hi },
            value: crate::smoothness::decay_bound(1.0, r, m),
            derivation: "(1/2pi) 2r(1-r^2)/((1-r)^2 + 2r(1-M)), M = max(cos(lo-1), cos(hi)) = cos 1",
        });
    }
    Ok(CorpusEntry {
        name: name.to_string(),
        kind: Kind::Arc,
        generator: Generator::Arc(trace),
        truth: GroundTruth {
            class: None,
            class_derivation: "restriction of an entire function; endpoint jets from closed-form derivatives",
            facts,
        },
        note,
    })
}

fn chart(name: &str, eps: f64) -> Result<CorpusEntry> {
    let phi = PowerSeries::polynomial(vec![c(0.0), c(1.0), c(eps)])?;
    let (class, derivation, facts) = if 2.0 * eps < 1.0 {
        (
            None,
            "|2 eps| < 1 keeps phi' = 1 + 2 eps z away from 0 on the closed disk",
            vec![Fact { quantity: Quantity::CurveSup, value: 1.0 + eps, derivation: "|e^{it} + eps e^{2it}| <= 1 + eps, equality at t = 0" }],
        )
    } else {
        (
            Some(TrueClass::Rejected),
            "phi' = 1 + 2 eps z vanishes at z = -1/(2 eps) inside the closed disk",
            vec![Fact { quantity: Quantity::DerivativeRoot, value: -1.0 / (2.0 * eps), derivation: "root of 1 + 2 eps z" }],
        )
    };
    Ok(CorpusEntry {
        name: name.to_string(),
        kind: Kind::Chart,
        generator: Generator::Chart(phi),
        truth: GroundTruth { class, class_derivation: derivation, facts },
        note: "phi(z) = z + eps z^2",
    })
}
