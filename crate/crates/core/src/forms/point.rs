//! Points of the upper half-plane and reduction to the standard fundamental
//! domain of SL(2, Z).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A point x + iy with y > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UpperHalfPoint {
    pub x: f64,
    pub y: f64,
}

impl UpperHalfPoint {
    pub fn new(x: f64, y: f64) -> Self {
        assert!(y > 0.0, "upper half-plane needs y > 0");
        UpperHalfPoint { x, y }
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    /// Gauss reduction by the generators T: z -> z+1 and S: z -> -1/z, to the
    /// standard fundamental domain |x| <= 1/2, x^2 + y^2 >= 1.
    pub fn reduced(&self) -> UpperHalfPoint {
        let (mut x, mut y) = (self.x, self.y);
        for _ in 0..256 {
            x -= x.round();
            let n2 = x * x + y * y;
            if n2 >= 1.0 - 1e-14 {
                break;
            }
            x = -x / n2;
            y /= n2;
        }
        x -= x.round();
        UpperHalfPoint { x, y }
    }

    /// Whether the point already lies in the (closed) standard domain.
    pub fn in_fundamental_domain(&self) -> bool {
        self.x.abs() <= 0.5 + 1e-12 && self.x * self.x + self.y * self.y >= 1.0 - 1e-12
    }

    /// Apply z -> (az + b) / (cz + d).
    pub fn apply(&self, a: i64, b: i64, c: i64, d: i64) -> UpperHalfPoint {
        assert_eq!(a * d - b * c, 1, "matrix must lie in SL(2, Z)");
        let z = self.as_complex();
        let w = (z * a as f64 + b as f64) / (z * c as f64 + d as f64);
        UpperHalfPoint { x: w.re, y: w.im }
    }
}
