#![no_std]
// `!(x > y)` routes NaN into the error branch; index loops mirror the formulas
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

//! Numerical machinery for boundary regularity of holomorphic functions on
//! the unit disk and on analytic Jordan domains.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs; IO, file formats and the command-line driver live
//! in the companion `rimtrace` crate.
//!
//! Float math goes through `num_traits::Float` (libm). Those imports carry
//! `allow(unused_imports)` because std's inherent methods shadow them
//! whenever std is linked, as in test builds.
//!
//! ## Layout
//! - [`kernel`]: Poisson kernel, its angular derivatives, Herglotz kernel.
//! - [`space`]: power series, boundary traces, arc data.
//! - [`extension`]: full-circle and arc-localized Poisson integrals, the
//!   `A + B` split and Hermite completion of arc data.
//! - [`smoothness`]: radial sweeps, trace-formula checks, `A^p` classifier,
//!   arc decay/convergence checks.
//! - [`seminorms`]: exact chain-rule polynomial systems and semi-norms.
//! - [`conformal`]: analytic disk maps and transfer to `∂Ω`.
//! - [`corpus`]: reference functions with known ground truth.

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod conformal;
pub mod corpus;
mod error;
pub mod extension;
pub mod fft;
pub mod kernel;
pub mod seminorms;
pub mod smoothness;
pub mod space;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use conformal::{AnalyticDiskMap, Composition, JordanChart};
pub use extension::{ArcExtension, PoissonExtension, SplitExtension};
pub use kernel::{KernelPoint, PoissonDerivative};
pub use seminorms::{ChainRuleSystem, RimPolicy, SeminormVector};
pub use smoothness::{ApClass, ApClassification, ClassifierThresholds, ConvergenceReport, Verdict};
pub use space::{Arc, ArcTrace, BoundaryTrace, CircleGrid, EndpointJets, PowerSeries, Smoothness};

/// Full turn, `2π`.
pub const TAU: f64 = core::f64::consts::TAU;

/// Reduces an angle to `(-π, π]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let pi = core::f64::consts::PI;
    // `%` keeps the sign of the dividend, one correction is enough
    let mut t = theta % TAU;
    if t <= -pi {
        t += TAU;
    } else if t > pi {
        t -= TAU;
    }
    t
}

/// `x mod 2π` in `[0, 2π)`.
pub(crate) fn rem_tau(x: f64) -> f64 {
    let r = x % TAU;
    let r = if r < 0.0 { r + TAU } else { r };
    // `r + TAU` can round up to exactly TAU
    if r >= TAU {
        0.0
    } else {
        r
    }
}
