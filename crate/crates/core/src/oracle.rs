//! Aberth–Ehrlich simultaneous iteration for all roots of a monic polynomial.
//!
//! This is the independent check on the radical solvers: it knows nothing
//! about either sextic family and works for any degree.

use std::f64::consts::PI;

use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::poly::{evaluate, residual_scale, ComplexScalar, MonicPolynomial, RootMultiset};

/// Phase of the first initial guess on the seeding circle.
const SEED_PHASE: f64 = 0.4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub max_iterations: usize,
    /// Convergence threshold on `|update| / (1 + |z|)`.
    pub convergence_tol: f64,
    pub seed_radius_factor: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            convergence_tol: 1e-13,
            seed_radius_factor: 1.0,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be at least 1".into()));
        }
        if !(self.convergence_tol.is_finite() && self.convergence_tol > 0.0) {
            return Err(Error::InvalidConfig("convergence_tol must be positive".into()));
        }
        if !(self.seed_radius_factor.is_finite() && self.seed_radius_factor > 0.0) {
            return Err(Error::InvalidConfig("seed_radius_factor must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleOutput {
    pub roots: RootMultiset,
    pub iterations: usize,
}

/// Initial guesses: equally spaced on a circle around the root centroid.
pub fn initial_guesses(p: &MonicPolynomial, cfg: &OracleConfig) -> Vec<ComplexScalar> {
    let d = p.degree();
    let coeffs = p.coeffs();
    let center = -coeffs[d - 1] / d as f64;
    let bound = coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| c.norm().powf(1.0 / (d - n) as f64))
        .fold(0.0, f64::max);
    let radius = cfg.seed_radius_factor * (1.0 + bound);
    (0..d)
        .map(|k| center + ComplexScalar::from_polar(radius, 2.0 * PI * k as f64 / d as f64 + SEED_PHASE))
        .collect()
}

/// Complex value with double-double components.
#[derive(Clone, Copy)]
struct WideComplex {
    re: TwoFloat,
    im: TwoFloat,
}

impl WideComplex {
    fn from_complex(z: ComplexScalar) -> Self {
        Self {
            re: TwoFloat::from(z.re),
            im: TwoFloat::from(z.im),
        }
    }

    fn mul(self, o: Self) -> Self {
        Self {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }

    fn add(self, o: Self) -> Self {
        Self {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }

    fn narrow(self) -> ComplexScalar {
        ComplexScalar::new(self.re.hi() + self.re.lo(), self.im.hi() + self.im.lo())
    }
}

/// Horner evaluation of `P` and `P'` in double-double arithmetic.
///
/// Near a k-fold root the attainable accuracy of a root is the k-th root of
/// the evaluation error, so the extra precision is what lets clustered
/// iterates settle as a set.
fn evaluate_wide(p: &MonicPolynomial, z: ComplexScalar) -> (ComplexScalar, ComplexScalar) {
    let zw = WideComplex::from_complex(z);
    let mut value = WideComplex::from_complex(ComplexScalar::new(1.0, 0.0));
    let mut deriv = WideComplex::from_complex(ComplexScalar::new(0.0, 0.0));
    for &c in p.coeffs().iter().rev() {
        deriv = deriv.mul(zw).add(value);
        value = value.mul(zw).add(WideComplex::from_complex(c));
    }
    (value.narrow(), deriv.narrow())
}

// Bound on the double-double evaluation error at z: residuals below it are noise.
fn evaluation_noise(p: &MonicPolynomial, z: ComplexScalar) -> f64 {
    let r = z.norm();
    let magnitude = p.coeffs().iter().rev().fold(1.0, |acc, c| acc * r + c.norm());
    let gamma = 4.0 * p.degree() as f64 * f64::EPSILON;
    gamma * gamma * magnitude
}

/// One guarded Newton step using the wide evaluation; kept only if it
/// lowers the residual.
fn polish_once(p: &MonicPolynomial, z: ComplexScalar) -> ComplexScalar {
    let (value, deriv) = evaluate_wide(p, z);
    if value.norm() == 0.0 || deriv.norm() < 1e-14 * residual_scale(p, z) {
        return z;
    }
    let candidate = z - value / deriv;
    if candidate.is_finite() && evaluate_wide(p, candidate).0.norm() < value.norm() {
        candidate
    } else {
        z
    }
}

/// All roots of `p`, or [`Error::NoConvergence`] with the last iterate.
pub fn oracle_roots(p: &MonicPolynomial, cfg: &OracleConfig) -> Result<RootMultiset> {
    oracle_solve(p, cfg).map(|out| out.roots)
}

pub fn oracle_solve(p: &MonicPolynomial, cfg: &OracleConfig) -> Result<OracleOutput> {
    cfg.validate()?;
    let mut z = initial_guesses(p, cfg);
    let n = z.len();
    let mut converged = vec![false; n];

    let mut iterations = 0;
    while iterations < cfg.max_iterations && !converged.iter().all(|&c| c) {
        iterations += 1;
        for i in 0..n {
            if converged[i] {
                continue;
            }
            let (value, deriv) = evaluate_wide(p, z[i]);
            if value.norm() <= evaluation_noise(p, z[i]) {
                converged[i] = true;
                continue;
            }
            let newton = value / deriv;
            let repulsion: ComplexScalar = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .filter(|t| t.is_finite())
                .sum();
            let mut step = newton / (1.0 - newton * repulsion);
            if !step.is_finite() {
                // zero derivative or a degenerate denominator; nudge off the spot
                step = ComplexScalar::new(1e-8, 1e-8) * (1.0 + z[i].norm());
            }
            z[i] -= step;
            if step.norm() <= cfg.convergence_tol * (1.0 + z[i].norm()) {
                converged[i] = true;
            }
        }
    }

    if !converged.iter().all(|&c| c) {
        let residuals = z.iter().map(|&zi| evaluate(p, zi).norm()).collect();
        return Err(Error::NoConvergence {
            iterations,
            best: z,
            residuals,
        });
    }

    let roots = z.into_iter().map(|zi| polish_once(p, zi)).collect();
    Ok(OracleOutput {
        roots: RootMultiset::new(roots),
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{match_roots, polynomial_from_roots};

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    #[test]
    fn sixth_roots_of_unity() {
        let p = MonicPolynomial::from_real(&[-1.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let roots = oracle_roots(&p, &OracleConfig::default()).unwrap();
        let expected: Vec<_> = (0..6)
            .map(|k| ComplexScalar::from_polar(1.0, PI * k as f64 / 3.0))
            .collect();
        let m = match_roots(&roots, &RootMultiset::new(expected)).unwrap();
        assert!(m.max_distance <= 1e-10, "{}", m.max_distance);
    }

    #[test]
    fn integer_roots() {
        let truth = RootMultiset::new((1..=6).map(|k| c(k as f64, 0.0)).collect());
        let p = polynomial_from_roots(&truth).unwrap();
        let roots = oracle_roots(&p, &OracleConfig::default()).unwrap();
        assert!(match_roots(&roots, &truth).unwrap().max_distance <= 1e-8);
    }

    #[test]
    fn sextuple_zero() {
        let p = MonicPolynomial::from_real(&[0.0; 6]).unwrap();
        let roots = oracle_roots(&p, &OracleConfig::default()).unwrap();
        assert!(roots.as_slice().iter().all(|z| z.norm() <= 1e-2));
    }

    #[test]
    fn linear_and_quadratic() {
        let p = MonicPolynomial::new(vec![c(-2.0, 1.0)]).unwrap();
        let roots = oracle_roots(&p, &OracleConfig::default()).unwrap();
        assert!((roots.as_slice()[0] - c(2.0, -1.0)).norm() < 1e-14);

        let p = MonicPolynomial::from_real(&[1.0, 0.0]).unwrap();
        let roots = oracle_roots(&p, &OracleConfig::default()).unwrap();
        let m = match_roots(&roots, &RootMultiset::new(vec![c(0.0, 1.0), c(0.0, -1.0)])).unwrap();
        assert!(m.max_distance < 1e-12);
    }

    #[test]
    fn seeds_lie_on_expected_circle() {
        // c = (-64, 0, 0, 0, 0, 6): center -1, radius 1 + max(64^(1/6), 6) = 7
        let p = MonicPolynomial::from_real(&[-64.0, 0.0, 0.0, 0.0, 0.0, 6.0]).unwrap();
        let seeds = initial_guesses(&p, &OracleConfig::default());
        for (k, s) in seeds.iter().enumerate() {
            assert!(((s - c(-1.0, 0.0)).norm() - 7.0).abs() < 1e-12);
            let phase = (s - c(-1.0, 0.0)).arg();
            let want = 2.0 * PI * k as f64 / 6.0 + SEED_PHASE;
            assert!((ComplexScalar::from_polar(1.0, phase) - ComplexScalar::from_polar(1.0, want)).norm() < 1e-12);
        }
    }

    #[test]
    fn non_convergence_reports_best_iterate() {
        let p = MonicPolynomial::from_real(&[1.0; 6]).unwrap();
        let cfg = OracleConfig {
            max_iterations: 1,
            ..OracleConfig::default()
        };
        match oracle_roots(&p, &cfg) {
            Err(Error::NoConvergence { iterations, best, residuals }) => {
                assert_eq!(iterations, 1);
                assert_eq!(best.len(), 6);
                assert_eq!(residuals.len(), 6);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn invalid_config() {
        let p = MonicPolynomial::from_real(&[1.0; 6]).unwrap();
        for cfg in [
            OracleConfig { max_iterations: 0, ..Default::default() },
            OracleConfig { convergence_tol: 0.0, ..Default::default() },
            OracleConfig { seed_radius_factor: -1.0, ..Default::default() },
        ] {
            assert!(matches!(oracle_roots(&p, &cfg), Err(Error::InvalidConfig(_))));
        }
    }

    #[test]
    fn deterministic() {
        let p = MonicPolynomial::new(vec![c(0.3, -1.2), c(1.0, 0.5), c(-0.4, 0.0), c(2.0, 1.0), c(0.0, 0.7), c(-1.1, 0.2)])
            .unwrap();
        let a = oracle_roots(&p, &OracleConfig::default()).unwrap();
        let b = oracle_roots(&p, &OracleConfig::default()).unwrap();
        let bits = |r: &RootMultiset| r.as_slice().iter().map(|z| (z.re.to_bits(), z.im.to_bits())).collect::<Vec<_>>();
        assert_eq!(bits(&a), bits(&b));
    }

    #[test]
    fn multiple_root_cluster_centroid() {
        let mut roots = vec![c(1.0, 0.0); 3];
        roots.extend([c(-2.0, 0.0), c(0.0, 3.0), c(-0.5, 0.0)]);
        let p = polynomial_from_roots(&RootMultiset::new(roots)).unwrap();
        let found = oracle_roots(&p, &OracleConfig::default()).unwrap();
        let mut near_one: Vec<_> = found.as_slice().iter().copied().filter(|z| (z - 1.0).norm() < 0.1).collect();
        assert_eq!(near_one.len(), 3);
        let centroid: ComplexScalar = near_one.drain(..).sum::<ComplexScalar>() / 3.0;
        assert!((centroid - 1.0).norm() <= 1e-8, "{centroid}");
    }
}
