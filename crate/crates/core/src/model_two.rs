//! Second family: `P6(z) = K(Q(z))` with quadratic inner `Q(z) = z^2 + b1 z + b0`
//! and cubic outer `K(y) = y^3 + a2 y^2 + a1 y + a0`.
//!
//! The parameter names mirror [`crate::model_one`] but their roles differ:
//! here the `a`'s belong to the outer cubic, the `b`'s to the inner quadratic.
//! Recovery leaves `b0` free.

use crate::error::{Error, Result};
use crate::poly::{ComplexScalar, MonicPolynomial};
use crate::radical::{polish_root, solve_cubic, solve_quadratic};
use crate::sextic::{ensure_tolerance, ConstraintReport, LabeledRoot, MonicSextic, Resolvent, SexticRoots};

pub use crate::model_one::{max_scaled_residual, POLISH_STEPS};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelTwoParams {
    pub a0: ComplexScalar,
    pub a1: ComplexScalar,
    pub a2: ComplexScalar,
    pub b0: ComplexScalar,
    pub b1: ComplexScalar,
}

impl ModelTwoParams {
    /// Parameters in the order `(a0, a1, a2, b0, b1)`.
    pub fn from_array([a0, a1, a2, b0, b1]: [ComplexScalar; 5]) -> Result<Self> {
        let p = Self { a0, a1, a2, b0, b1 };
        if p.to_array().iter().all(|x| x.is_finite()) {
            Ok(p)
        } else {
            Err(Error::NonFinite {
                what: "model two parameters",
            })
        }
    }

    pub fn from_real(v: [f64; 5]) -> Result<Self> {
        Self::from_array(v.map(|x| ComplexScalar::new(x, 0.0)))
    }

    pub fn to_array(&self) -> [ComplexScalar; 5] {
        [self.a0, self.a1, self.a2, self.b0, self.b1]
    }

    pub fn outer_cubic(&self) -> MonicPolynomial {
        MonicPolynomial::new(vec![self.a0, self.a1, self.a2]).expect("finite parameters")
    }

    pub fn inner_quadratic(&self) -> MonicPolynomial {
        MonicPolynomial::new(vec![self.b0, self.b1]).expect("finite parameters")
    }
}

/// Which closed form to use for `a1` during recovery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum A1Formula {
    /// `a1 = c2 - a2 (2 b0 + b1^2) - 3 b0 (b0 + b1^2)`, the exact inverse of the
    /// forward map's `c2` entry.
    #[default]
    DirectInversion,
    /// `a1 = c2 - 2 [3 c4 - 9 b0 - c5^2][18 b0 + c5^2] / 27 - b0 [9 b0 + c5^2] / 3`,
    /// the published closed form. It does not round-trip; kept for comparison.
    Printed,
}

pub fn coefficients_from_params(p: &ModelTwoParams) -> MonicSextic {
    let &ModelTwoParams { a0, a1, a2, b0, b1 } = p;
    let b1_sq = b1 * b1;
    let c5 = 3.0 * b1;
    let c4 = a2 + 3.0 * (b0 + b1_sq);
    let c3 = (2.0 * a2 + 6.0 * b0 + b1_sq) * b1;
    let c2 = a1 + a2 * (2.0 * b0 + b1_sq) + 3.0 * b0 * (b0 + b1_sq);
    let c1 = a1 * b1 + 2.0 * a2 * b0 * b1 + 3.0 * b0 * b0 * b1;
    let c0 = a0 + a1 * b0 + a2 * b0 * b0 + b0 * b0 * b0;
    MonicSextic::new([c0, c1, c2, c3, c4, c5]).expect("finite parameters give finite coefficients")
}

/// Roots by radicals: the cubic resolvent first, then one quadratic per `y_μ`.
pub fn solve(p: &ModelTwoParams) -> SexticRoots {
    let sextic = coefficients_from_params(p).to_polynomial();
    let ys = solve_cubic(p.a2, p.a1, p.a0).roots;
    let mut roots = Vec::with_capacity(6);
    let mut resolvents = Vec::with_capacity(3);
    for (mu, y) in (1u8..).zip(ys) {
        resolvents.push(Resolvent { label: mu, value: y });
        let quad = solve_quadratic(p.b1, p.b0 - y);
        for (lambda, z) in (1u8..).zip(quad.as_array()) {
            roots.push(LabeledRoot {
                lambda,
                mu,
                value: polish_root(&sextic, z, POLISH_STEPS),
            });
        }
    }
    SexticRoots { roots, resolvents }
}

pub fn constraint_report(c: &MonicSextic, tol: f64) -> ConstraintReport {
    let [_, c1, c2, c3, c4, c5] = *c.coeffs();
    let c5_sq = c5 * c5;
    let residual_1 = 27.0 * c3 - 18.0 * c4 * c5 + 5.0 * c5_sq * c5;
    let rhs_2 = (27.0 * c2 - 3.0 * c4 * c5_sq + c5_sq * c5_sq) * c5 / 81.0;
    ConstraintReport::new(residual_1, c1 - rhs_2, c.cubic_scale(), c.quintic_scale(), tol)
}

/// Residuals `27 c3 - 18 c4 c5 + 5 c5^3` (reported raw) and `c1 - RHS`.
pub fn constraint_residuals(c: &MonicPolynomial, tol: f64) -> Result<ConstraintReport> {
    ensure_tolerance(tol)?;
    Ok(constraint_report(&MonicSextic::try_from(c)?, tol))
}

/// The published closed form for `a1` given `b0`.
pub fn printed_a1(c: &MonicSextic, b0: ComplexScalar) -> ComplexScalar {
    let [_, _, c2, _, c4, c5] = *c.coeffs();
    let c5_sq = c5 * c5;
    c2 - 2.0 * (3.0 * c4 - 9.0 * b0 - c5_sq) * (18.0 * b0 + c5_sq) / 27.0
        - b0 * (9.0 * b0 + c5_sq) / 3.0
}

pub fn recover_params(c: &MonicPolynomial, free_b0: ComplexScalar, tol: f64) -> Result<ModelTwoParams> {
    recover_params_with(c, free_b0, tol, A1Formula::DirectInversion)
}

/// Inverts the forward map on the constraint variety, with `b0 = free_b0`.
pub fn recover_params_with(
    c: &MonicPolynomial,
    free_b0: ComplexScalar,
    tol: f64,
    formula: A1Formula,
) -> Result<ModelTwoParams> {
    ensure_tolerance(tol)?;
    if !free_b0.is_finite() {
        return Err(Error::NonFinite { what: "free parameter" });
    }
    let sextic = MonicSextic::try_from(c)?;
    let report = constraint_report(&sextic, tol);
    if !report.satisfied {
        return Err(Error::ConstraintsUnsatisfied(Box::new(report)));
    }
    let [c0, _, c2, _, c4, c5] = *sextic.coeffs();
    let b0 = free_b0;
    let b1 = c5 / 3.0;
    let b1_sq = b1 * b1;
    let a2 = c4 - c5 * c5 / 3.0 - 3.0 * b0;
    let a1 = match formula {
        A1Formula::DirectInversion => c2 - a2 * (2.0 * b0 + b1_sq) - 3.0 * b0 * (b0 + b1_sq),
        A1Formula::Printed => printed_a1(&sextic, b0),
    };
    let a0 = c0 - a1 * b0 - a2 * b0 * b0 - b0 * b0 * b0;
    Ok(ModelTwoParams { a0, a1, a2, b0, b1 })
}
