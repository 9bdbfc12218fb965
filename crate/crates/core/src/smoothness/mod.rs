//! Radial convergence sweeps, the trace-derivative formula, the heuristic
//! `A^p` classifier and arc-localized decay/convergence checks.

mod arc;
mod classify;
mod fit;
mod sweep;

pub use arc::{
    arc_classify, arc_convergence_check, arc_decay_check, arc_window, decay_bound, ArcClassification,
    ArcConvergenceReport, ArcDecayReport,
};
pub use classify::{classify_ap, classify_ap_on, ApClass, ApClassification, ClassifierThresholds, OrderEvidence};
pub use fit::linear_fit;
pub use sweep::{angular_derivative_via_chain, fd_discrepancy, radial_sweep, verify_trace_formula, ConvergenceReport};

/// Per-order outcome of a sweep or growth fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Converges to the rim limit (sweeps) or stays bounded (growth fits).
    Converges,
    Diverges,
    Inconclusive,
}
