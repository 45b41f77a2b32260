//! Types shared by the two sextic families.

use crate::error::{Error, Result};
use crate::poly::{ComplexScalar, MonicPolynomial, RootMultiset};

/// `z^6 + c5 z^5 + ... + c0`, coefficients ascending.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonicSextic {
    coeffs: [ComplexScalar; 6],
}

impl MonicSextic {
    pub fn new(coeffs: [ComplexScalar; 6]) -> Result<Self> {
        if !coeffs.iter().all(|c| c.is_finite()) {
            return Err(Error::NonFinite {
                what: "sextic coefficients",
            });
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: [f64; 6]) -> Result<Self> {
        Self::new(coeffs.map(|x| ComplexScalar::new(x, 0.0)))
    }

    pub fn coeffs(&self) -> &[ComplexScalar; 6] {
        &self.coeffs
    }

    pub fn to_polynomial(&self) -> MonicPolynomial {
        MonicPolynomial::new(self.coeffs.to_vec()).expect("sextic coefficients are finite")
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `1 + max |c_n|^3`, the scale of expressions cubic in the coefficients.
    pub fn cubic_scale(&self) -> f64 {
        1.0 + self.max_coeff_norm().powi(3)
    }

    /// `1 + max |c_n|^5`.
    pub fn quintic_scale(&self) -> f64 {
        1.0 + self.max_coeff_norm().powi(5)
    }

    pub fn max_abs_diff(&self, other: &MonicSextic) -> f64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl TryFrom<&MonicPolynomial> for MonicSextic {
    type Error = Error;

    fn try_from(p: &MonicPolynomial) -> Result<Self> {
        let coeffs: [ComplexScalar; 6] =
            p.coeffs()
                .try_into()
                .map_err(|_| Error::DegreeMismatch {
                    expected: 6,
                    found: p.degree(),
                })?;
        Ok(Self { coeffs })
    }
}

impl From<MonicSextic> for MonicPolynomial {
    fn from(s: MonicSextic) -> Self {
        s.to_polynomial()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabeledRoot {
    /// Quadratic-stage label, 1 or 2.
    pub lambda: u8,
    /// Cubic-stage label, 1 to 3.
    pub mu: u8,
    pub value: ComplexScalar,
}

/// A root of the intermediate resolvent equation, tagged with the label
/// (λ for model one, μ for model two) it feeds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resolvent {
    pub label: u8,
    pub value: ComplexScalar,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SexticRoots {
    pub roots: Vec<LabeledRoot>,
    pub resolvents: Vec<Resolvent>,
}

impl SexticRoots {
    pub fn values(&self) -> RootMultiset {
        RootMultiset::new(self.roots.iter().map(|r| r.value).collect())
    }
}

/// Residuals of a family's two membership constraints.
///
/// `residual_1` is judged against `scale_1` and `residual_2` against `scale_2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintReport {
    pub residual_1: ComplexScalar,
    pub residual_2: ComplexScalar,
    pub scale_1: f64,
    pub scale_2: f64,
    pub tolerance: f64,
    pub satisfied: bool,
}

impl ConstraintReport {
    pub(crate) fn new(
        residual_1: ComplexScalar,
        residual_2: ComplexScalar,
        scale_1: f64,
        scale_2: f64,
        tolerance: f64,
    ) -> Self {
        let satisfied = residual_1.norm() <= tolerance * scale_1
            && residual_2.norm() <= tolerance * scale_2;
        Self {
            residual_1,
            residual_2,
            scale_1,
            scale_2,
            tolerance,
            satisfied,
        }
    }

    /// Largest residual relative to its own scale.
    pub fn max_scaled_residual(&self) -> f64 {
        (self.residual_1.norm() / self.scale_1).max(self.residual_2.norm() / self.scale_2)
    }
}

pub(crate) fn ensure_tolerance(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!(
            "tolerance must be positive and finite, got {tol}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrong_degree_is_rejected() {
        let p = MonicPolynomial::from_real(&[1.0, 2.0, 3.0]).unwrap();
        assert!(matches!(
            MonicSextic::try_from(&p),
            Err(Error::DegreeMismatch { expected: 6, found: 3 })
        ));
    }

    #[test]
    fn scales() {
        let s = MonicSextic::from_real([0.0, 0.0, -2.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(s.cubic_scale(), 9.0);
        assert_eq!(s.quintic_scale(), 33.0);
    }

    #[test]
    fn report_satisfaction_boundary() {
        let r = ConstraintReport::new(
            ComplexScalar::new(1e-9, 0.0),
            ComplexScalar::new(0.0, 0.0),
            1.0,
            1.0,
            1e-9,
        );
        assert!(r.satisfied);
        let r = ConstraintReport::new(
            ComplexScalar::new(0.0, 0.0),
            ComplexScalar::new(2e-9, 0.0),
            1.0,
            1.0,
            1e-9,
        );
        assert!(!r.satisfied);
    }
}
