//! Poisson integrals of periodic and arc-supported data.

mod arc;
mod completion;
mod full;
pub mod quadrature;

pub use arc::{sup_over, ArcExtension, SplitExtension, DEFAULT_DELTA_MIN, MAX_PANEL};
pub use completion::{completion_bridge, smooth_arc_completion, HermiteBridge};
pub use full::{DthetaEval, PoissonExtension, DEFAULT_RIM_CONSTANT};
