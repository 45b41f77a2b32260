//! Complex polynomial primitives shared by the rest of the crate.
//!
//! Monic polynomials store their non-leading coefficients in ascending order,
//! `coeffs[n]` multiplying `z^n`, with the leading 1 implicit.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

/// Largest multiset size accepted by [`match_roots`].
pub const MAX_MATCH_SIZE: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct MonicPolynomial {
    coeffs: Vec<ComplexScalar>,
}

impl MonicPolynomial {
    /// Builds `z^d + coeffs[d-1] z^(d-1) + ... + coeffs[0]` with `d = coeffs.len()`.
    pub fn new(coeffs: Vec<ComplexScalar>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        if !coeffs.iter().all(|c| c.is_finite()) {
            return Err(Error::NonFinite {
                what: "polynomial coefficients",
            });
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| ComplexScalar::new(x, 0.0)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[ComplexScalar] {
        &self.coeffs
    }

    /// Largest coefficient magnitude, excluding the implicit leading 1.
    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Coefficients including the leading 1, ascending.
    pub fn dense(&self) -> Vec<ComplexScalar> {
        let mut d = self.coeffs.clone();
        d.push(ComplexScalar::new(1.0, 0.0));
        d
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootMultiset(pub Vec<ComplexScalar>);

impl RootMultiset {
    pub fn new(roots: Vec<ComplexScalar>) -> Self {
        Self(roots)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[ComplexScalar] {
        &self.0
    }
}

impl From<Vec<ComplexScalar>> for RootMultiset {
    fn from(v: Vec<ComplexScalar>) -> Self {
        Self(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchReport {
    /// `pairing[i]` is the index in `b` matched to `a[i]`.
    pub pairing: Vec<usize>,
    pub max_distance: f64,
    pub total_distance: f64,
}

/// Horner evaluation of `p` at `z`.
pub fn evaluate(p: &MonicPolynomial, z: ComplexScalar) -> ComplexScalar {
    p.coeffs
        .iter()
        .rev()
        .fold(ComplexScalar::new(1.0, 0.0), |acc, &c| acc * z + c)
}

/// Value and first derivative at `z`, both by Horner.
pub fn evaluate_with_derivative(
    p: &MonicPolynomial,
    z: ComplexScalar,
) -> (ComplexScalar, ComplexScalar) {
    let mut value = ComplexScalar::new(1.0, 0.0);
    let mut deriv = ComplexScalar::new(0.0, 0.0);
    for &c in p.coeffs.iter().rev() {
        deriv = deriv * z + value;
        value = value * z + c;
    }
    (value, deriv)
}

/// `(1 + max_n |c_n|) * (1 + |z|)^degree`, the magnitude against which
/// residuals `|P(z)|` are judged.
pub fn residual_scale(p: &MonicPolynomial, z: ComplexScalar) -> f64 {
    (1.0 + p.max_coeff_norm()) * (1.0 + z.norm()).powi(p.degree() as i32)
}

/// Expands `prod (z - r)` over the multiset.
pub fn polynomial_from_roots(roots: &RootMultiset) -> Result<MonicPolynomial> {
    if roots.is_empty() {
        return Err(Error::EmptyPolynomial);
    }
    // dense ascending, leading coefficient last
    let mut acc = vec![ComplexScalar::new(1.0, 0.0)];
    for &r in roots.as_slice() {
        let mut next = vec![ComplexScalar::new(0.0, 0.0); acc.len() + 1];
        for (k, &a) in acc.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= a * r;
        }
        acc = next;
    }
    acc.pop();
    MonicPolynomial::new(acc)
}

fn mul_dense(a: &[ComplexScalar], b: &[ComplexScalar]) -> Vec<ComplexScalar> {
    let mut out = vec![ComplexScalar::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Expands `outer(inner(z))`.
///
/// The result is monic of degree `outer.degree() * inner.degree()`. The
/// outer's non-leading coefficients act on powers of the inner polynomial.
pub fn compose(outer: &MonicPolynomial, inner: &MonicPolynomial) -> MonicPolynomial {
    let inner_dense = inner.dense();
    let mut acc = vec![ComplexScalar::new(1.0, 0.0)];
    for &c in outer.coeffs.iter().rev() {
        acc = mul_dense(&acc, &inner_dense);
        acc[0] += c;
    }
    debug_assert_eq!(acc.len(), outer.degree() * inner.degree() + 1);
    acc.pop();
    MonicPolynomial { coeffs: acc }
}

/// Minimum-total-distance bijection between two root multisets, found by
/// exhaustive search over permutations.
pub fn match_roots(a: &RootMultiset, b: &RootMultiset) -> Result<MatchReport> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let n = a.len();
    if n > MAX_MATCH_SIZE {
        return Err(Error::TooManyRoots {
            max: MAX_MATCH_SIZE,
            found: n,
        });
    }
    let dist: Vec<Vec<f64>> = a
        .as_slice()
        .iter()
        .map(|x| b.as_slice().iter().map(|y| (x - y).norm()).collect())
        .collect();

    let mut search = Search {
        dist: &dist,
        used: vec![false; n],
        current: Vec::with_capacity(n),
        best: (0..n).collect(),
        best_total: f64::INFINITY,
    };
    search.descend(0.0);

    let pairing = search.best;
    let (max_distance, total_distance) = pairing
        .iter()
        .enumerate()
        .map(|(i, &j)| dist[i][j])
        .fold((0.0_f64, 0.0_f64), |(m, t), d| (m.max(d), t + d));
    Ok(MatchReport {
        pairing,
        max_distance,
        total_distance,
    })
}

struct Search<'a> {
    dist: &'a [Vec<f64>],
    used: Vec<bool>,
    current: Vec<usize>,
    best: Vec<usize>,
    best_total: f64,
}

impl Search<'_> {
    // Lexicographic enumeration; the first minimum wins ties, so equal
    // multisets in equal order pair by identity.
    fn descend(&mut self, partial: f64) {
        if partial >= self.best_total {
            return;
        }
        let i = self.current.len();
        if i == self.dist.len() {
            self.best_total = partial;
            self.best.clone_from(&self.current);
            return;
        }
        for j in 0..self.dist.len() {
            if self.used[j] {
                continue;
            }
            self.used[j] = true;
            self.current.push(j);
            self.descend(partial + self.dist[i][j]);
            self.current.pop();
            self.used[j] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    fn unity_roots(n: usize) -> Vec<ComplexScalar> {
        (0..n)
            .map(|k| ComplexScalar::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64))
            .collect()
    }

    #[test]
    fn evaluate_examples() {
        let minus_one = MonicPolynomial::from_real(&[-1.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(evaluate(&minus_one, c(1.0, 0.0)), c(0.0, 0.0));

        let pure = MonicPolynomial::from_real(&[0.0; 6]).unwrap();
        assert_eq!(evaluate(&pure, c(2.0, 0.0)), c(64.0, 0.0));

        let p = MonicPolynomial::from_real(&[10.0, 14.0, 25.0, 19.0, 13.0, 6.0]).unwrap();
        assert_eq!(evaluate(&p, c(0.0, 0.0)), c(10.0, 0.0));
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let p = MonicPolynomial::new(vec![c(1.0, -2.0), c(0.5, 0.3), c(-1.0, 0.0), c(0.0, 2.0)])
            .unwrap();
        let z = c(0.7, -0.4);
        let h = 1e-6;
        let fd = (evaluate(&p, z + h) - evaluate(&p, z - h)) / (2.0 * h);
        let (_, d) = evaluate_with_derivative(&p, z);
        assert!((fd - d).norm() < 1e-8);
    }

    #[test]
    fn from_roots_examples() {
        let zeros = polynomial_from_roots(&RootMultiset::new(vec![c(0.0, 0.0); 6])).unwrap();
        assert!(zeros.coeffs().iter().all(|x| *x == c(0.0, 0.0)));

        let unity = polynomial_from_roots(&RootMultiset::new(unity_roots(6))).unwrap();
        assert!((unity.coeffs()[0] - c(-1.0, 0.0)).norm() < 1e-14);
        for k in 1..6 {
            assert!(unity.coeffs()[k].norm() < 1e-14);
        }

        // (z-1)(z-2)(z-3) = z^3 - 6z^2 + 11z - 6
        let roots = RootMultiset::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        let cubic = polynomial_from_roots(&roots).unwrap();
        assert_eq!(cubic.coeffs(), &[c(-6.0, 0.0), c(11.0, 0.0), c(-6.0, 0.0)]);
        for r in roots.as_slice() {
            assert_eq!(evaluate(&cubic, *r), c(0.0, 0.0));
        }
    }

    #[test]
    fn from_roots_rejects_empty() {
        assert!(matches!(
            polynomial_from_roots(&RootMultiset::new(vec![])),
            Err(Error::EmptyPolynomial)
        ));
    }

    #[test]
    fn new_rejects_non_finite() {
        assert!(MonicPolynomial::new(vec![c(f64::NAN, 0.0)]).is_err());
        assert!(MonicPolynomial::new(vec![c(0.0, f64::INFINITY)]).is_err());
        assert!(MonicPolynomial::new(vec![]).is_err());
    }

    #[test]
    fn compose_examples() {
        let y2 = MonicPolynomial::from_real(&[0.0, 0.0]).unwrap();
        let z3 = MonicPolynomial::from_real(&[0.0, 0.0, 0.0]).unwrap();
        assert_eq!(compose(&y2, &z3).coeffs(), &[c(0.0, 0.0); 6]);

        let y2m1 = MonicPolynomial::from_real(&[-1.0, 0.0]).unwrap();
        let mut expected = [c(0.0, 0.0); 6];
        expected[0] = c(-1.0, 0.0);
        assert_eq!(compose(&y2m1, &z3).coeffs(), &expected);

        let outer = MonicPolynomial::from_real(&[4.0, 5.0]).unwrap();
        let inner = MonicPolynomial::from_real(&[1.0, 2.0, 3.0]).unwrap();
        let expected = MonicPolynomial::from_real(&[10.0, 14.0, 25.0, 19.0, 13.0, 6.0]).unwrap();
        assert_eq!(compose(&outer, &inner), expected);
    }

    #[test]
    fn compose_agrees_with_nested_evaluation() {
        let outer = MonicPolynomial::new(vec![c(0.3, 1.0), c(-2.0, 0.5), c(1.0, 1.0)]).unwrap();
        let inner = MonicPolynomial::new(vec![c(1.5, 0.0), c(0.0, -1.0)]).unwrap();
        let composed = compose(&outer, &inner);
        assert_eq!(composed.degree(), 6);
        for z in [c(0.0, 0.0), c(1.0, 0.5), c(-0.7, 2.0)] {
            let nested = evaluate(&outer, evaluate(&inner, z));
            let direct = evaluate(&composed, z);
            assert!((nested - direct).norm() <= 1e-12 * residual_scale(&composed, z));
        }
    }

    #[test]
    fn match_identity() {
        let a = RootMultiset::new(vec![c(1.0, 0.0), c(-1.0, 0.0)]);
        let r = match_roots(&a, &a).unwrap();
        assert_eq!(r.pairing, vec![0, 1]);
        assert_eq!(r.max_distance, 0.0);
        assert_eq!(r.total_distance, 0.0);
    }

    #[test]
    fn match_swapped() {
        let a = RootMultiset::new(vec![c(1.0, 0.0), c(2.0, 0.0)]);
        let b = RootMultiset::new(vec![c(2.0000001, 0.0), c(1.0, 0.0)]);
        let r = match_roots(&a, &b).unwrap();
        assert_eq!(r.pairing, vec![1, 0]);
        assert!((r.max_distance - 1e-7).abs() < 1e-15);
        assert!(r.max_distance <= r.total_distance);
    }

    #[test]
    fn match_prefers_global_optimum_over_greedy() {
        // greedy from a[0] would take b[0] (distance 1) and force a[1] onto b[1] (distance 10)
        let a = RootMultiset::new(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        let b = RootMultiset::new(vec![c(1.0, 0.0), c(11.0, 0.0)]);
        let r = match_roots(&a, &b).unwrap();
        // both pairings total 11; lexicographic first kept
        assert!((r.total_distance - 11.0).abs() < 1e-12);

        let b = RootMultiset::new(vec![c(0.9, 0.0), c(-0.2, 0.0)]);
        let r = match_roots(&a, &b).unwrap();
        assert_eq!(r.pairing, vec![1, 0]);
    }

    #[test]
    fn match_errors() {
        let a = RootMultiset::new(vec![c(1.0, 0.0)]);
        let b = RootMultiset::new(vec![c(1.0, 0.0), c(2.0, 0.0)]);
        assert!(matches!(match_roots(&a, &b), Err(Error::LengthMismatch { .. })));

        let big = RootMultiset::new(vec![c(0.0, 0.0); MAX_MATCH_SIZE + 1]);
        assert!(matches!(match_roots(&big, &big), Err(Error::TooManyRoots { .. })));
    }
}
