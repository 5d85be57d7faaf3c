//! Automorphic forms on the modular surface: points of the upper half-plane
//! with fundamental-domain reduction, Eisenstein series, and Hecke-Maass cusp
//! forms evaluated from their Fourier expansions with certified truncation.

mod eisenstein;
mod hecke;
mod maass;
mod point;

pub use eisenstein::{
    eisenstein_coeff, eisenstein_eval, eisenstein_star, EisensteinParams, EisensteinSeries,
};
pub use hecke::{hecke_validate, synthetic_multiplicative_form, HeckeReport};
pub use maass::{MaassForm, Parity};
pub use point::UpperHalfPoint;

/// Truncation length for a K_{it}-Fourier expansion so the discarded tail is
/// below eps in absolute value: past n with 2 pi n y > t the Bessel factor
/// decays exponentially, with an Airy-type transition of width ~ t^{1/3}.
pub fn truncation_bound(t: f64, y_min: f64, eps: f64) -> usize {
    assert!(y_min > 0.0, "truncation bound needs y_min > 0");
    let eps = eps.clamp(1e-300, 1.0);
    let t = t.abs();
    let n = (t + 10.0 * t.powf(1.0 / 3.0) + (1.0 / eps).ln()) / (2.0 * std::f64::consts::PI * y_min);
    (n.ceil() as usize).max(1)
}
