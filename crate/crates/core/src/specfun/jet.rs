//! Truncated Laurent series in one formal variable, used to verify pole
//! cancellations without symbolic algebra.

use crate::{Error, Result};
use num_complex::Complex64;

/// A truncated Laurent series sum_{k=m}^{T-1} c_k eta^k + O(eta^T).
///
/// `coeffs[j]` is the coefficient of eta^{lowest_order + j}; the truncation
/// order is `lowest_order + coeffs.len()`. Arithmetic tracks the truncation
/// order of the result exactly: no term that is determined by the inputs is
/// dropped, and no term beyond what the inputs determine is invented.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentJet {
    lowest_order: i32,
    coeffs: Vec<Complex64>,
}

impl LaurentJet {
    /// Build a jet from the coefficient of eta^lowest_order onward.
    pub fn new(lowest_order: i32, coeffs: Vec<Complex64>) -> Self {
        let mut jet = LaurentJet {
            lowest_order,
            coeffs,
        };
        jet.normalize();
        jet
    }

    /// The constant jet c + O(eta^order).
    pub fn constant(c: Complex64, order: i32) -> Self {
        assert!(order > 0, "constant jet needs a positive truncation order");
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order as usize];
        coeffs[0] = c;
        LaurentJet::new(0, coeffs)
    }

    /// The jet of eta^k, truncated at eta^order.
    pub fn monomial(k: i32, order: i32) -> Self {
        assert!(order > k, "monomial truncated below its own degree");
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (order - k) as usize];
        coeffs[0] = Complex64::new(1.0, 0.0);
        LaurentJet::new(k, coeffs)
    }

    /// Strip exactly-zero leading coefficients so the leading coefficient is
    /// nonzero unless the jet is identically zero.
    fn normalize(&mut self) {
        while !self.coeffs.is_empty() && self.coeffs[0] == Complex64::new(0.0, 0.0) {
            self.coeffs.remove(0);
            self.lowest_order += 1;
        }
    }

    pub fn lowest_order(&self) -> i32 {
        self.lowest_order
    }

    /// First order NOT determined by this jet.
    pub fn truncation_order(&self) -> i32 {
        self.lowest_order + self.coeffs.len() as i32
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm() == 0.0)
    }

    /// Coefficient of eta^k (zero when k is below the known range; panics if
    /// k is at or beyond the truncation order, where the jet is undetermined).
    pub fn coeff(&self, k: i32) -> Complex64 {
        assert!(
            k < self.truncation_order(),
            "coefficient of eta^{k} requested beyond truncation order {}",
            self.truncation_order()
        );
        if k < self.lowest_order {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(k - self.lowest_order) as usize]
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Evaluate the truncated series at a concrete eta.
    pub fn eval(&self, eta: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * eta + c;
        }
        acc * eta.powi(self.lowest_order)
    }

    /// Substitute eta -> -eta.
    pub fn reflect(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let k = self.lowest_order + j as i32;
                if k.rem_euclid(2) == 0 {
                    *c
                } else {
                    -*c
                }
            })
            .collect();
        LaurentJet::new(self.lowest_order, coeffs)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        LaurentJet::new(
            self.lowest_order,
            self.coeffs.iter().map(|a| a * c).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(Complex64::new(-1.0, 0.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() {
            return other.clone();
        }
        if other.coeffs.is_empty() {
            return self.clone();
        }
        let lowest = self.lowest_order.min(other.lowest_order);
        let trunc = self.truncation_order().min(other.truncation_order());
        if trunc <= lowest {
            return LaurentJet::new(trunc, vec![]);
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (trunc - lowest) as usize];
        for (j, c) in coeffs.iter_mut().enumerate() {
            let k = lowest + j as i32;
            if k >= self.lowest_order && k < self.truncation_order() {
                *c += self.coeff(k);
            }
            if k >= other.lowest_order && k < other.truncation_order() {
                *c += other.coeff(k);
            }
        }
        LaurentJet {
            lowest_order: lowest,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            // An empty jet carries no known coefficients; the product's
            // truncation order is still determined.
            let trunc = (self.truncation_order() + other.lowest_order)
                .min(other.truncation_order() + self.lowest_order);
            return LaurentJet::new(trunc, vec![]);
        }
        let lowest = self.lowest_order + other.lowest_order;
        let trunc = (self.truncation_order() + other.lowest_order)
            .min(other.truncation_order() + self.lowest_order);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (trunc - lowest) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j < coeffs.len() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentJet {
            lowest_order: lowest,
            coeffs,
        }
    }

    /// Series division; the divisor must have a nonzero leading coefficient.
    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() || other.coeffs.is_empty() {
            return Err(Error::ZeroJetDivision);
        }
        let lead = other.coeffs[0];
        if lead.norm() == 0.0 {
            return Err(Error::ZeroJetDivision);
        }
        let lowest = self.lowest_order - other.lowest_order;
        // Known relative orders: the quotient is determined to the smaller of
        // the two relative depths.
        let n = self.coeffs.len().min(other.coeffs.len());
        if self.coeffs.is_empty() {
            return Ok(LaurentJet::new(lowest, vec![]));
        }
        let mut q = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = if i < self.coeffs.len() {
                self.coeffs[i]
            } else {
                Complex64::new(0.0, 0.0)
            };
            for j in 0..i {
                let b = if i - j < other.coeffs.len() {
                    other.coeffs[i - j]
                } else {
                    Complex64::new(0.0, 0.0)
                };
                acc -= q[j] * b;
            }
            q[i] = acc / lead;
        }
        Ok(LaurentJet::new(lowest, q))
    }

    /// exp of a jet with no pole part; the constant term is exponentiated and
    /// the positive-order part fed through the power-series exponential.
    pub fn exp(&self) -> Result<Self> {
        if self.lowest_order < 0 && !self.coeffs.is_empty() {
            return Err(Error::Invalid(
                "exp of a jet with a pole part is not a Laurent series".into(),
            ));
        }
        let trunc = self.truncation_order();
        if trunc <= 0 {
            return Err(Error::Invalid("exp needs at least the constant term".into()));
        }
        let n = trunc as usize;
        // f = constant + g with g = O(eta); exp f = e^c * exp g, and
        // (exp g)' = g' exp g gives the coefficient recursion.
        let c0 = self.coeff(0);
        let mut g = vec![Complex64::new(0.0, 0.0); n];
        for (k, item) in g.iter_mut().enumerate().skip(1) {
            *item = self.coeff(k as i32);
        }
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[0] = Complex64::new(1.0, 0.0);
        for k in 1..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                acc += (j as f64) * g[j] * e[k - j];
            }
            e[k] = acc / k as f64;
        }
        let scale = c0.exp();
        Ok(LaurentJet::new(0, e.iter().map(|v| v * scale).collect()))
    }

    /// Natural logarithm of a jet with nonzero constant term and no pole part.
    pub fn ln(&self) -> Result<Self> {
        if self.lowest_order != 0 || self.coeffs.is_empty() || self.coeffs[0].norm() == 0.0 {
            return Err(Error::Invalid(
                "jet ln needs a nonzero constant term and no pole part".into(),
            ));
        }
        let c0 = self.coeffs[0];
        let n = self.coeffs.len();
        // w = f/c0 - 1 has positive lowest order; ln f = ln c0 + ln(1 + w).
        let w = LaurentJet::new(
            1,
            self.coeffs[1..].iter().map(|c| c / c0).collect(),
        );
        let mut acc = LaurentJet::constant(c0.ln(), n as i32);
        let mut wp = LaurentJet::constant(Complex64::new(1.0, 0.0), n as i32);
        for k in 1..n {
            wp = wp.mul(&w);
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            acc = acc.add(&wp.scale(Complex64::new(sign / k as f64, 0.0)));
        }
        // The padded powers of w shrink the tracked truncation below what the
        // input determines; restore it.
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
        for (k, item) in coeffs.iter_mut().enumerate() {
            let kk = k as i32;
            if kk >= acc.lowest_order() && kk < acc.truncation_order() {
                *item = acc.coeff(kk);
            }
        }
        Ok(LaurentJet::new(0, coeffs))
    }

    /// Complex power of a jet with nonzero constant term: exp(p ln f).
    pub fn powc(&self, p: Complex64) -> Result<Self> {
        self.ln()?.scale(p).exp()
    }

    pub fn powf(&self, p: f64) -> Result<Self> {
        self.powc(Complex64::new(p, 0.0))
    }

    /// Antiderivative with the integration constant set to `c0`; requires no
    /// eta^{-1} term.
    pub fn antiderivative(&self, c0: Complex64) -> Result<Self> {
        if self.lowest_order <= -1 && !self.coeffs.is_empty() && self.coeff(-1).norm() != 0.0 {
            return Err(Error::Invalid(
                "antiderivative of a jet with an eta^{-1} term is not a Laurent series".into(),
            ));
        }
        let mut out = LaurentJet::constant(c0, self.truncation_order() + 1);
        for (j, c) in self.coeffs.iter().enumerate() {
            let k = self.lowest_order + j as i32;
            if k == -1 {
                continue;
            }
            let term = LaurentJet::monomial(k + 1, self.truncation_order() + 1)
                .scale(c / (k + 1) as f64);
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Derivative with respect to eta.
    pub fn derivative(&self) -> Self {
        let coeffs: Vec<Complex64> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let k = self.lowest_order + j as i32;
                c * k as f64
            })
            .collect();
        // d/deta maps eta^k to k eta^{k-1}; the truncation order drops by one.
        let mut jet = LaurentJet {
            lowest_order: self.lowest_order - 1,
            coeffs,
        };
        jet.normalize();
        jet
    }
}
