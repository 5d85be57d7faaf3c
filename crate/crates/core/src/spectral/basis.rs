//! The truncated spectral basis: cusp forms ordered by spectral parameter
//! plus a quadrature grid for the continuous spectrum.

use crate::forms::MaassForm;
use crate::{Error, Result};

/// Cusp forms with t_j <= completeness_height, sorted by t_j, together with
/// the symmetric Eisenstein t-grid used for the continuous spectrum.
#[derive(Debug, Clone)]
pub struct SpectralBasis {
    forms: Vec<MaassForm>,
    completeness_height: f64,
    eisenstein_grid: Vec<f64>,
}

impl SpectralBasis {
    /// Build from validated forms. Sorts by t_j; refuses duplicates (within
    /// 1e-9) and forms above the declared completeness height.
    pub fn new(
        mut forms: Vec<MaassForm>,
        completeness_height: f64,
        grid_spacing: f64,
    ) -> Result<Self> {
        assert!(completeness_height >= 0.0 && grid_spacing > 0.0);
        forms.sort_by(|a, b| a.t_j.total_cmp(&b.t_j));
        for w in forms.windows(2) {
            if (w[1].t_j - w[0].t_j).abs() < 1e-9 {
                return Err(Error::Invalid(format!(
                    "duplicate spectral parameter {}",
                    w[0].t_j
                )));
            }
        }
        if let Some(f) = forms.iter().find(|f| f.t_j > completeness_height) {
            return Err(Error::Invalid(format!(
                "form with t_j = {} above the completeness height {completeness_height}",
                f.t_j
            )));
        }
        // midpoint grid: uniform spacing, symmetric, and never on tau = 0,
        // where the scattering ratio of the Eisenstein evaluator degenerates
        let mut eisenstein_grid = Vec::new();
        let n = (completeness_height / grid_spacing).round() as i64;
        for k in -n..n {
            let t = (k as f64 + 0.5) * grid_spacing;
            eisenstein_grid.push(t);
        }
        Ok(Self {
            forms,
            completeness_height,
            eisenstein_grid,
        })
    }

    pub fn empty() -> Self {
        Self {
            forms: Vec::new(),
            completeness_height: 0.0,
            eisenstein_grid: Vec::new(),
        }
    }

    pub fn forms(&self) -> &[MaassForm] {
        &self.forms
    }

    pub fn completeness_height(&self) -> f64 {
        self.completeness_height
    }

    pub fn eisenstein_grid(&self) -> &[f64] {
        &self.eisenstein_grid
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midpoint_grid_is_symmetric_and_avoids_zero() {
        let basis = SpectralBasis::new(Vec::new(), 2.0, 0.5).unwrap();
        let grid = basis.eisenstein_grid();
        assert_eq!(grid.len(), 8);
        assert!(grid.iter().all(|&t| t.abs() >= 0.25));
        for (a, b) in grid.iter().zip(grid.iter().rev()) {
            assert_eq!(*a, -*b);
        }
        for w in grid.windows(2) {
            assert!((w[1] - w[0] - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn duplicate_spectral_parameters_refused() {
        let f = crate::forms::synthetic_multiplicative_form(120);
        let mut a = f.clone();
        a.t_j = 9.5;
        let mut b = f;
        b.t_j = 9.5 + 1e-12;
        assert!(SpectralBasis::new(vec![a, b], 15.0, 0.25).is_err());
    }

    #[test]
    fn form_above_height_refused() {
        let mut f = crate::forms::synthetic_multiplicative_form(120);
        f.t_j = 16.0;
        assert!(SpectralBasis::new(vec![f], 15.0, 0.25).is_err());
    }
}
