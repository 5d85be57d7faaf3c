//! Numerical spectral analysis on the modular surface.
//!
//! This crate evaluates Eisenstein series and Hecke-Maass cusp forms from
//! their Fourier expansions, integrates automorphic functions over the
//! fundamental domain (including Zagier's regularized integrals), evaluates
//! completed L-functions by approximate functional equations, and assembles
//! the spectral moment quantities built from all of the above.

pub mod bounds;
pub mod forms;
pub mod ingest;
pub mod lfunctions;
pub mod quadrature;
pub mod specfun;
pub mod spectral;

pub use num_complex::Complex64;

/// Shared error type for numerical operations across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("gamma pole at non-positive integer {0}")]
    GammaPole(i64),
    #[error("evaluation within {radius:e} of a pole at {location}")]
    NearPole { location: String, radius: f64 },
    #[error("argument outside the validated regime: {0}")]
    OutOfRegime(String),
    #[error("insufficient coefficients: have {have}, need {need}")]
    InsufficientCoefficients { have: usize, need: usize },
    #[error("division by zero jet")]
    ZeroJetDivision,
    #[error("analytic conductor {0:.3e} exceeds the supported gate {1:.1e}")]
    ConductorGate(f64, f64),
    #[error("unsupported L-function kind for this operation: {0}")]
    UnsupportedKind(String),
    #[error("quadrature budget exceeded ({spent} evaluations, budget {budget})")]
    BudgetExceeded { spent: usize, budget: usize },
    #[error("renormalization profile mismatch: measured {measured:.3e} against limit {limit:.3e}")]
    ProfileMismatch { measured: f64, limit: f64 },
    #[error("contour too close to a singularity: {0}")]
    ContourTooClose(String),
    #[error("parameter ordering violated: {0}")]
    OrderingViolation(String),
    #[error("parameter range not covered by the regime table: {0}")]
    UncoveredRange(String),
    #[error("network failure: {0}")]
    Network(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
