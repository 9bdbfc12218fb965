//! Function specs: `corpus:NAME`, inline JSON, or a path to a JSON file.

use std::path::Path;

use rimtrace_core::corpus::{corpus_get_with_degree, CorpusEntry, Generator};
use rimtrace_core::{Arc, ArcTrace, BoundaryTrace, Complex64, EndpointJets, PowerSeries, Smoothness};
use serde::Deserialize;

use crate::CliError;

/// A real number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Real(f64),
    Pair([f64; 2]),
}

impl From<Num> for Complex64 {
    fn from(n: Num) -> Self {
        match n {
            Num::Real(x) => Complex64::new(x, 0.0),
            Num::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

fn complex(v: Vec<Num>) -> Vec<Complex64> {
    v.into_iter().map(Into::into).collect()
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum JsonSpec {
    /// `radius` omitted means an entire function.
    Series { coeffs: Vec<Num>, radius: Option<f64> },
    Zeta { s: f64, degree: usize },
    /// Periodic samples on `2πj/M`; `smoothness` omitted means unbounded.
    Trace { samples: Vec<Num>, smoothness: Option<usize> },
    Arc { a: f64, b: f64, samples: Vec<Num>, jets_a: Option<Vec<Num>>, jets_b: Option<Vec<Num>> },
    Chart { phi: Vec<Num> },
}

/// What a spec resolves to.
#[derive(Debug, Clone)]
pub enum Input {
    Series(PowerSeries),
    Trace { trace: BoundaryTrace, series: Option<PowerSeries> },
    Arc(ArcTrace),
    Chart(PowerSeries),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Series(_) => "series",
            Input::Trace { .. } => "trace",
            Input::Arc(_) => "arc",
            Input::Chart(_) => "chart",
        }
    }

    pub fn series(&self) -> Option<&PowerSeries> {
        match self {
            Input::Series(f) | Input::Chart(f) => Some(f),
            Input::Trace { series, .. } => series.as_ref(),
            Input::Arc(_) => None,
        }
    }

    pub fn require_series(&self, cmd: &str) -> Result<&PowerSeries, CliError> {
        self.series().ok_or_else(|| CliError::Spec(format!("{cmd} needs a power series, got a {} spec", self.kind())))
    }

    pub fn require_arc(&self, cmd: &str) -> Result<&ArcTrace, CliError> {
        match self {
            Input::Arc(u) => Ok(u),
            _ => Err(CliError::Spec(format!("{cmd} needs arc data, got a {} spec", self.kind()))),
        }
    }
}

impl From<CorpusEntry> for Input {
    fn from(e: CorpusEntry) -> Self {
        match e.generator {
            Generator::Series(f) => Input::Series(f),
            Generator::Trace { trace, series } => Input::Trace { trace, series },
            Generator::Arc(u) => Input::Arc(u),
            Generator::Chart(phi) => Input::Chart(phi),
        }
    }
}

/// Resolves a spec string. `degree` overrides the corpus truncation of
/// marginal series.
pub fn resolve(spec: &str, degree: Option<usize>) -> Result<Input, CliError> {
    let spec = spec.trim();
    if let Some(name) = spec.strip_prefix("corpus:") {
        return Ok(corpus_get_with_degree(name, degree)?.into());
    }
    let text = if spec.starts_with('{') {
        spec.to_string()
    } else {
        let path = Path::new(spec);
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("reading spec {}: {e}", path.display())))?
    };
    let parsed: JsonSpec = serde_json::from_str(&text).map_err(|e| CliError::Spec(format!("malformed spec: {e}")))?;
    Ok(build(parsed)?)
}

fn build(s: JsonSpec) -> rimtrace_core::Result<Input> {
    Ok(match s {
        JsonSpec::Series { coeffs, radius } => Input::Series(PowerSeries::new(complex(coeffs), radius.unwrap_or(f64::INFINITY))?),
        JsonSpec::Zeta { s, degree } => {
            let coeffs: Vec<f64> = (0..=degree).map(|n| if n == 0 { 0.0 } else { (n as f64).powf(-s) }).collect();
            Input::Series(PowerSeries::from_real(&coeffs, 1.0)?)
        }
        JsonSpec::Trace { samples, smoothness } => {
            let claim = smoothness.map_or(Smoothness::Unbounded, Smoothness::Finite);
            Input::Trace { trace: BoundaryTrace::new(complex(samples), claim)?, series: None }
        }
        JsonSpec::Arc { a, b, samples, jets_a, jets_b } => {
            let jets = match (jets_a, jets_b) {
                (Some(ja), Some(jb)) => Some(EndpointJets::new(complex(ja), complex(jb))?),
                (None, None) => None,
                _ => return Err(rimtrace_core::Error::InvalidParameter("jets_a and jets_b go together".into())),
            };
            Input::Arc(ArcTrace::new(Arc::new(a, b)?, complex(samples), jets)?)
        }
        JsonSpec::Chart { phi } => Input::Chart(PowerSeries::polynomial(complex(phi))?),
    })
}
