//! Chain-rule polynomial systems for `t ↦ f(e^{it})` and semi-norms.

mod chain;
mod gaussian;
mod norms;

pub use chain::{chain_polys, inverse_polys, ChainRuleSystem};
pub use gaussian::{GaussInt, GaussPoly};
pub use norms::{
    angular_derivative_samples, check_equivalence, complex_derivative_samples, default_grid, seminorm,
    seminorm_trace, seminorm_vector, trace_seminorm_vector, EquivalenceReport, RimPolicy, SeminormValue,
    SeminormVector, TraceSeminorm, EQUIVALENCE_SLACK, PROXY_RADIUS,
};
