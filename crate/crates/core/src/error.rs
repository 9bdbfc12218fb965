use alloc::string::String;

use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("radius {r} outside [0, 1]")]
    RadiusOutOfRange { r: f64 },

    #[error("Poisson kernel is singular at r = 1, dtheta = 0 (mod 2π)")]
    KernelSingularity,

    #[error("Herglotz kernel pole: |1 - e^(-it) z| = {distance:e} below tolerance {tolerance:e}")]
    NearPole { distance: f64, tolerance: f64 },

    #[error("kernel derivative of order {order} overflows the exact coefficient range")]
    OrderTooLarge { order: usize },

    #[error("|z| = {modulus} is not inside the disk of radius {radius}")]
    OutsideDisk { modulus: f64, radius: f64 },

    #[error("assumed radius must be positive, got {0}")]
    InvalidAssumedRadius(f64),

    #[error("a power series needs at least one coefficient")]
    EmptySeries,

    #[error("grid size {0} must be a power of two and at least {1}")]
    GridSize(usize, usize),

    #[error("invalid arc [{a}, {b}]: need b - a in (0, 2π)")]
    InvalidArc { a: f64, b: f64 },

    #[error("point at distance {distance:e} from the closed arc, below the guard {guard:e}")]
    ArcProximity { distance: f64, guard: f64 },

    #[error("derivative order {order} exceeds the smoothness claim {claim}")]
    OrderExceedsClaim { order: usize, claim: usize },

    #[error("endpoint derivative data needed to order {needed}, available {available:?}")]
    MissingEndpointData { needed: usize, available: Option<usize> },

    #[error("finite-difference step {step} is not a positive multiple of the grid spacing {spacing}")]
    InvalidStep { step: f64, spacing: f64 },

    #[error("invalid radius schedule: {0}")]
    InvalidSchedule(String),

    #[error("window [{lo}, {hi}] is not compactly inside the required open arc")]
    InvalidWindow { lo: f64, hi: f64 },

    #[error("rim policy violated: {0}")]
    PolicyViolation(String),

    #[error("map derivative vanishes near z = {at} (|phi'| = {modulus:e})")]
    VanishingDerivative { at: Complex64, modulus: f64 },

    #[error("boundary curve self-intersects: segments {first} and {second} meet near {point}")]
    SelfIntersection { first: usize, second: usize, point: Complex64 },

    #[error("composition truncation estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    TruncationTooLarge { estimate: f64, tolerance: f64 },

    #[error("leading chain-rule polynomial P_({order},{order}) is not a unit monomial")]
    SingularLeadingTerm { order: usize },

    #[error("unknown corpus entry {0:?}")]
    UnknownCorpusEntry(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
