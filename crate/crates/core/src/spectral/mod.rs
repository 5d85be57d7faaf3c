//! Spectral decompositions and the assembled moment quantities.

mod basis;
mod coefficients;
mod moments;
mod regularized_part;

pub use basis::SpectralBasis;
pub use coefficients::{
    cusp_coefficient, eisenstein_coefficient, spectral_coefficients, SpectralCoefficients,
};
pub use moments::{
    completeness_tail_bound, cubic_moment_direct, cubic_moment_spectral,
    eisenstein_triple_profile_terms, i1_closed_form,
    i2_direct, i3_regularized, i4_principal_unfold, i4_regularized, j3_envelope, joint_moment_eeg,
    rotation,
    MomentReport,
};
pub use regularized_part::{
    f_factor_constants, regularized_part_closed_form, regularized_part_constant,
    regularized_part_jet, regularized_part_magnitude_large,
};
