//! Two families of sextic polynomials whose roots are computable by radicals.
//!
//! A monic sextic either arises from composing a quadratic with a cubic
//! ([`model_one`]: `(cubic)^2 + b1*(cubic) + b0`) or a cubic with a quadratic
//! ([`model_two`]: `(quadratic)^3 + a2*(quadratic)^2 + a1*(quadratic) + a0`).
//! Each family has a forward coefficient map from five parameters, a radical
//! solver, two algebraic constraints on the six coefficients, and an inverse
//! map that recovers the parameters up to one free coordinate.
//!
//! [`detector`] tests membership in either family and [`oracle`] provides an
//! independent Aberth–Ehrlich root finder used to cross-check everything.

pub mod cli;
pub mod detector;
pub mod error;
pub mod model_one;
pub mod model_two;
pub mod oracle;
pub mod poly;
pub mod radical;
pub mod sextic;

pub use detector::{classify, Classification, Verdict};
pub use error::{Error, Result};
pub use oracle::{oracle_roots, OracleConfig, OracleOutput};
pub use poly::{
    compose, evaluate, match_roots, polynomial_from_roots, residual_scale, ComplexScalar,
    MatchReport, MonicPolynomial, RootMultiset,
};
pub use radical::{polish_root, solve_cubic, solve_quadratic, CubicRoots, QuadraticRoots};
pub use sextic::{ConstraintReport, LabeledRoot, MonicSextic, Resolvent, SexticRoots};

/// Default relative tolerance for constraint checks and parameter recovery.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
