//! Power series, periodic boundary traces and arc data.

mod arc;
mod series;
mod trace;

pub use arc::{Arc, ArcTrace, EndpointJets};
pub use series::{falling_factorial, PowerSeries};
pub use trace::{
    i_pow, BoundaryTrace, CircleGrid, DiffScheme, Smoothness, TraceDerivative, TrigInterpolant, MIN_TRACE_LEN,
    SPECTRAL_WARNING_FRACTION,
};

pub(crate) use trace::sample_on_circle;
