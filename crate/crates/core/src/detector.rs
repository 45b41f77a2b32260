//! Membership of a monic sextic in either solvable family.

use std::fmt;

use crate::error::Result;
use crate::poly::MonicPolynomial;
use crate::sextic::{ensure_tolerance, ConstraintReport, MonicSextic};
use crate::{model_one, model_two};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    ModelOne,
    ModelTwo,
    Both,
    Neither,
}

impl Verdict {
    fn from_flags(one: bool, two: bool) -> Self {
        match (one, two) {
            (true, true) => Verdict::Both,
            (true, false) => Verdict::ModelOne,
            (false, true) => Verdict::ModelTwo,
            (false, false) => Verdict::Neither,
        }
    }

    pub fn includes_model_one(self) -> bool {
        matches!(self, Verdict::ModelOne | Verdict::Both)
    }

    pub fn includes_model_two(self) -> bool {
        matches!(self, Verdict::ModelTwo | Verdict::Both)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ModelOne => "ModelOne",
            Verdict::ModelTwo => "ModelTwo",
            Verdict::Both => "Both",
            Verdict::Neither => "Neither",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub verdict: Verdict,
    pub report_one: ConstraintReport,
    pub report_two: ConstraintReport,
    pub tolerance_used: f64,
}

pub fn classify_sextic(c: &MonicSextic, tol: f64) -> Result<Classification> {
    ensure_tolerance(tol)?;
    let report_one = model_one::constraint_report(c, tol);
    let report_two = model_two::constraint_report(c, tol);
    Ok(Classification {
        verdict: Verdict::from_flags(report_one.satisfied, report_two.satisfied),
        report_one,
        report_two,
        tolerance_used: tol,
    })
}

/// Runs both families' constraint checks under the same relative tolerance.
pub fn classify(c: &MonicPolynomial, tol: f64) -> Result<Classification> {
    classify_sextic(&MonicSextic::try_from(c)?, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn classify_real(c: [f64; 6]) -> Verdict {
        classify(&MonicPolynomial::from_real(&c).unwrap(), 1e-9).unwrap().verdict
    }

    #[test]
    fn examples() {
        assert_eq!(classify_real([10.0, 14.0, 25.0, 19.0, 13.0, 6.0]), Verdict::ModelOne);
        assert_eq!(classify_real([7.0, 11.0, 17.0, 13.0, 9.0, 3.0]), Verdict::ModelTwo);
        assert_eq!(classify_real([-1.0, 0.0, 0.0, 0.0, 0.0, 0.0]), Verdict::Both);
        assert_eq!(classify_real([1.0; 6]), Verdict::Neither);
    }

    #[test]
    fn model_two_residual_of_model_one_vector() {
        let c = MonicPolynomial::from_real(&[10.0, 14.0, 25.0, 19.0, 13.0, 6.0]).unwrap();
        let r = classify(&c, 1e-9).unwrap();
        assert_eq!(r.report_two.residual_1.re, 189.0);
        assert_eq!(r.tolerance_used, 1e-9);
    }

    #[test]
    fn rejects_wrong_degree_and_bad_tolerance() {
        let quintic = MonicPolynomial::from_real(&[1.0; 5]).unwrap();
        assert!(matches!(classify(&quintic, 1e-9), Err(Error::DegreeMismatch { .. })));
        let sextic = MonicPolynomial::from_real(&[1.0; 6]).unwrap();
        assert!(classify(&sextic, -1.0).is_err());
        assert!(classify(&sextic, f64::NAN).is_err());
    }
}
