//! First family: `P6(z) = Q(C(z))` with cubic inner `C(z) = z^3 + a2 z^2 + a1 z + a0`
//! and quadratic outer `Q(y) = y^2 + b1 y + b0`.
//!
//! The six roots are those of `C(z) = y_λ` for the two roots `y_λ` of `Q`.
//! Coefficient vectors in the image satisfy two polynomial constraints
//! expressing `c1` and `c2` through `c3, c4, c5`; on that variety the
//! parameters are recovered with `a0` left free.

use crate::error::{Error, Result};
use crate::poly::{evaluate, residual_scale, ComplexScalar, MonicPolynomial};
use crate::radical::{polish_root, solve_cubic, solve_quadratic};
use crate::sextic::{ensure_tolerance, ConstraintReport, LabeledRoot, MonicSextic, Resolvent, SexticRoots};

/// Newton steps applied to each radical root against the full sextic.
pub const POLISH_STEPS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelOneParams {
    pub a0: ComplexScalar,
    pub a1: ComplexScalar,
    pub a2: ComplexScalar,
    pub b0: ComplexScalar,
    pub b1: ComplexScalar,
}

impl ModelOneParams {
    /// Parameters in the order `(a0, a1, a2, b0, b1)`.
    pub fn from_array([a0, a1, a2, b0, b1]: [ComplexScalar; 5]) -> Result<Self> {
        let p = Self { a0, a1, a2, b0, b1 };
        if p.to_array().iter().all(|x| x.is_finite()) {
            Ok(p)
        } else {
            Err(Error::NonFinite {
                what: "model one parameters",
            })
        }
    }

    pub fn from_real(v: [f64; 5]) -> Result<Self> {
        Self::from_array(v.map(|x| ComplexScalar::new(x, 0.0)))
    }

    pub fn to_array(&self) -> [ComplexScalar; 5] {
        [self.a0, self.a1, self.a2, self.b0, self.b1]
    }

    pub fn inner_cubic(&self) -> MonicPolynomial {
        MonicPolynomial::new(vec![self.a0, self.a1, self.a2]).expect("finite parameters")
    }

    pub fn outer_quadratic(&self) -> MonicPolynomial {
        MonicPolynomial::new(vec![self.b0, self.b1]).expect("finite parameters")
    }
}

pub fn coefficients_from_params(p: &ModelOneParams) -> MonicSextic {
    let &ModelOneParams { a0, a1, a2, b0, b1 } = p;
    let s = 2.0 * a0 + b1;
    let c5 = 2.0 * a2;
    let c4 = 2.0 * a1 + a2 * a2;
    let c3 = 2.0 * a0 + 2.0 * a1 * a2 + b1;
    let c2 = a1 * a1 + s * a2;
    let c1 = s * a1;
    let c0 = a0 * a0 + a0 * b1 + b0;
    MonicSextic::new([c0, c1, c2, c3, c4, c5]).expect("finite parameters give finite coefficients")
}

/// Roots by radicals: the quadratic resolvent first, then one cubic per `y_λ`.
pub fn solve(p: &ModelOneParams) -> SexticRoots {
    let sextic = coefficients_from_params(p).to_polynomial();
    let ys = solve_quadratic(p.b1, p.b0).as_array();
    let mut roots = Vec::with_capacity(6);
    let mut resolvents = Vec::with_capacity(2);
    for (lambda, y) in (1u8..).zip(ys) {
        resolvents.push(Resolvent { label: lambda, value: y });
        let cubic = solve_cubic(p.a2, p.a1, p.a0 - y);
        for (mu, z) in (1u8..).zip(cubic.roots) {
            roots.push(LabeledRoot {
                lambda,
                mu,
                value: polish_root(&sextic, z, POLISH_STEPS),
            });
        }
    }
    SexticRoots { roots, resolvents }
}

/// Largest `|P6(z)| / residual_scale` over the roots.
pub fn max_scaled_residual(c: &MonicSextic, roots: &SexticRoots) -> f64 {
    let p = c.to_polynomial();
    roots
        .roots
        .iter()
        .map(|r| evaluate(&p, r.value).norm() / residual_scale(&p, r.value))
        .fold(0.0, f64::max)
}

pub fn constraint_report(c: &MonicSextic, tol: f64) -> ConstraintReport {
    let [_, c1, c2, c3, c4, c5] = *c.coeffs();
    let w = 4.0 * c4 - c5 * c5;
    let rhs_1 = w * (c3 - w * c5 / 8.0) / 8.0;
    let rhs_2 = c3 * c5 / 2.0 + w * (4.0 * c4 - 5.0 * c5 * c5) / 64.0;
    let scale = c.cubic_scale();
    ConstraintReport::new(c1 - rhs_1, c2 - rhs_2, scale, scale, tol)
}

/// Residuals of the two membership constraints, `c1 - RHS1` and `c2 - RHS2`.
pub fn constraint_residuals(c: &MonicPolynomial, tol: f64) -> Result<ConstraintReport> {
    ensure_tolerance(tol)?;
    Ok(constraint_report(&MonicSextic::try_from(c)?, tol))
}

/// Inverts the forward map on the constraint variety, with `a0 = free_a0`.
///
/// `s = 2 a0 + b1` is taken from `c3 - 2 a1 a2`. The two alternative
/// expressions `(c2 - a1^2) / a2` and `c1 / a1` are checked against it when
/// their denominators are not negligible.
pub fn recover_params(c: &MonicPolynomial, free_a0: ComplexScalar, tol: f64) -> Result<ModelOneParams> {
    ensure_tolerance(tol)?;
    if !free_a0.is_finite() {
        return Err(Error::NonFinite { what: "free parameter" });
    }
    let sextic = MonicSextic::try_from(c)?;
    let report = constraint_report(&sextic, tol);
    if !report.satisfied {
        return Err(Error::ConstraintsUnsatisfied(Box::new(report)));
    }
    let [c0, c1, c2, c3, c4, c5] = *sextic.coeffs();
    let scale = report.scale_1;
    let limit = 10.0 * tol * scale;

    let a2 = c5 / 2.0;
    let a1 = (4.0 * c4 - c5 * c5) / 8.0;
    let s = c3 - 2.0 * a1 * a2;

    if a2.norm() > tol * scale {
        let disagreement = ((c2 - a1 * a1) / a2 - s).norm();
        if disagreement > limit {
            return Err(Error::Inconsistent {
                what: "2 a0 + b1 from (c2 - a1^2) / a2",
                disagreement,
                limit,
            });
        }
    }
    if a1.norm() > tol * scale {
        let disagreement = (c1 / a1 - s).norm();
        if disagreement > limit {
            return Err(Error::Inconsistent {
                what: "2 a0 + b1 from c1 / a1",
                disagreement,
                limit,
            });
        }
    }

    let a0 = free_a0;
    let b1 = s - 2.0 * a0;
    let b0 = c0 - (a0 + b1) * a0;
    Ok(ModelOneParams { a0, a1, a2, b0, b1 })
}
