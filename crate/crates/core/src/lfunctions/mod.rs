//! Completed L-functions: archimedean Gamma factors, Dirichlet series with
//! certified truncation tails, and central values by smoothed approximate
//! functional equations.

mod afe;
mod gamma;
mod series;

pub use afe::{afe_central, afe_truncation_length, completed_l};
pub use gamma::{analytic_conductor, GammaFactorSpec, GammaKind};
pub use series::{LKind, LSeries};
