//! Closed-form quadratic and cubic solvers over the complex numbers.

use std::cmp::Ordering;
use std::f64::consts::PI;

use crate::poly::{evaluate, evaluate_with_derivative, residual_scale, ComplexScalar, MonicPolynomial};

/// Roots of `y^2 + b1 y + b0`, labelled by branch: `y1` takes the minus sign
/// of the principal square root in `(-b1 ± sqrt(b1^2 - 4 b0)) / 2`, `y2` the plus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticRoots {
    pub y1: ComplexScalar,
    pub y2: ComplexScalar,
}

impl QuadraticRoots {
    pub fn as_array(&self) -> [ComplexScalar; 2] {
        [self.y1, self.y2]
    }
}

/// Roots of `z^3 + a2 z^2 + a1 z + a0`, sorted lexicographically by `(re, im)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicRoots {
    pub roots: [ComplexScalar; 3],
}

impl CubicRoots {
    pub fn z1(&self) -> ComplexScalar {
        self.roots[0]
    }
    pub fn z2(&self) -> ComplexScalar {
        self.roots[1]
    }
    pub fn z3(&self) -> ComplexScalar {
        self.roots[2]
    }
}

pub(crate) fn lexicographic(a: &ComplexScalar, b: &ComplexScalar) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

// Signed zeros would flip the branch of sqrt/cbrt on the negative real axis.
fn unsign_zero(z: ComplexScalar) -> ComplexScalar {
    ComplexScalar::new(z.re + 0.0, z.im + 0.0)
}

pub fn solve_quadratic(b1: ComplexScalar, b0: ComplexScalar) -> QuadraticRoots {
    let root_disc = unsign_zero(b1 * b1 - 4.0 * b0).sqrt();
    let minus = -b1 - root_disc;
    let plus = -b1 + root_disc;
    // The larger-magnitude branch is free of cancellation; the other follows
    // from the product y1 * y2 = b0.
    if minus.norm() >= plus.norm() {
        let y1 = minus / 2.0;
        let y2 = if y1.norm() > 0.0 { b0 / y1 } else { plus / 2.0 };
        QuadraticRoots { y1, y2 }
    } else {
        let y2 = plus / 2.0;
        let y1 = b0 / y2;
        QuadraticRoots { y1, y2 }
    }
}

/// Cardano's formula on the depressed cubic `t^3 + p t + q` with `z = t - a2/3`.
pub fn solve_cubic(a2: ComplexScalar, a1: ComplexScalar, a0: ComplexScalar) -> CubicRoots {
    let shift = a2 / 3.0;
    let p = a1 - a2 * shift;
    let q = 2.0 * shift * shift * shift - a1 * shift + a0;

    let half_q = q / 2.0;
    let root_d = unsign_zero(half_q * half_q + p * p * p / 27.0).sqrt();
    let u_cubed = {
        let plus = -half_q + root_d;
        let minus = -half_q - root_d;
        if plus.norm() >= minus.norm() {
            plus
        } else {
            minus
        }
    };

    let mut roots = if u_cubed.norm() == 0.0 {
        // p = q = 0
        [-shift; 3]
    } else {
        let u = unsign_zero(u_cubed).cbrt();
        let v = -p / (3.0 * u);
        let omega = ComplexScalar::from_polar(1.0, 2.0 * PI / 3.0);
        let omega_bar = omega.conj();
        [
            u + v - shift,
            omega * u + omega_bar * v - shift,
            omega_bar * u + omega * v - shift,
        ]
    };
    roots.sort_by(lexicographic);
    CubicRoots { roots }
}

/// At most `max_steps` Newton steps on `p` from `z0`.
///
/// A step is skipped when `|P'(z)|` is below `1e-14` of the residual scale,
/// and iteration stops at the first step that would not decrease `|P(z)|`.
pub fn polish_root(p: &MonicPolynomial, z0: ComplexScalar, max_steps: usize) -> ComplexScalar {
    let mut z = z0;
    let mut value = evaluate(p, z);
    for _ in 0..max_steps {
        if value.norm() == 0.0 {
            break;
        }
        let (_, deriv) = evaluate_with_derivative(p, z);
        if deriv.norm() < 1e-14 * residual_scale(p, z) {
            break;
        }
        let candidate = z - value / deriv;
        if !candidate.is_finite() {
            break;
        }
        let candidate_value = evaluate(p, candidate);
        if candidate_value.norm() >= value.norm() {
            break;
        }
        z = candidate;
        value = candidate_value;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{match_roots, polynomial_from_roots, RootMultiset};

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    fn close(a: ComplexScalar, b: ComplexScalar, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn quadratic_examples() {
        let r = solve_quadratic(c(0.0, 0.0), c(-1.0, 0.0));
        assert_eq!((r.y1, r.y2), (c(-1.0, 0.0), c(1.0, 0.0)));

        let r = solve_quadratic(c(-2.0, 0.0), c(1.0, 0.0));
        assert_eq!((r.y1, r.y2), (c(1.0, 0.0), c(1.0, 0.0)));

        let r = solve_quadratic(c(0.0, 0.0), c(1.0, 0.0));
        assert!(close(r.y1, c(0.0, -1.0), 1e-15));
        assert!(close(r.y2, c(0.0, 1.0), 1e-15));
    }

    #[test]
    fn quadratic_zero_and_cancellation() {
        let r = solve_quadratic(c(0.0, 0.0), c(0.0, 0.0));
        assert_eq!((r.y1, r.y2), (c(0.0, 0.0), c(0.0, 0.0)));

        // y^2 - 1e8 y + 1: small root 1e-8 would be lost by the naive formula
        let r = solve_quadratic(c(-1e8, 0.0), c(1.0, 0.0));
        assert!(close(r.y1, c(1e-8, 0.0), 1e-22));
        assert!(close(r.y2, c(1e8, 0.0), 1e-6));
    }

    #[test]
    fn cubic_roots_of_unity() {
        let r = solve_cubic(c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0));
        let w = ComplexScalar::from_polar(1.0, 2.0 * PI / 3.0);
        let expected = RootMultiset::new(vec![c(1.0, 0.0), w, w.conj()]);
        let m = match_roots(&RootMultiset::new(r.roots.to_vec()), &expected).unwrap();
        assert!(m.max_distance < 1e-15);
        assert!(r.z1().re <= r.z2().re && r.z2().re <= r.z3().re);
        assert!(close(r.z3(), c(1.0, 0.0), 1e-15));
    }

    #[test]
    fn cubic_one_two_three() {
        let cubic = polynomial_from_roots(&RootMultiset::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]))
            .unwrap();
        let k = cubic.coeffs();
        let r = solve_cubic(k[2], k[1], k[0]);
        for (z, want) in r.roots.iter().zip([1.0, 2.0, 3.0]) {
            assert!(close(*z, c(want, 0.0), 1e-12), "{z} vs {want}");
            assert!(evaluate(&cubic, *z).norm() < 1e-12 * residual_scale(&cubic, *z));
        }
    }

    #[test]
    fn cubic_triple_zero() {
        let r = solve_cubic(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        assert_eq!(r.roots, [c(0.0, 0.0); 3]);
    }

    #[test]
    fn cubic_shifted_triple_root() {
        // (z - 2)^3 = z^3 - 6z^2 + 12z - 8
        let r = solve_cubic(c(-6.0, 0.0), c(12.0, 0.0), c(-8.0, 0.0));
        for z in r.roots {
            assert!(close(z, c(2.0, 0.0), 1e-12), "{z}");
        }
    }

    #[test]
    fn cubic_casus_irreducibilis() {
        // three real roots -3, 1, 2: z^3 - 7z + 6
        let r = solve_cubic(c(0.0, 0.0), c(-7.0, 0.0), c(6.0, 0.0));
        for (z, want) in r.roots.iter().zip([-3.0, 1.0, 2.0]) {
            assert!(close(*z, c(want, 0.0), 1e-13), "{z} vs {want}");
        }
    }

    #[test]
    fn cubic_when_p_vanishes() {
        // z^3 + 8 with p = 0; v must not divide by a zero u
        let r = solve_cubic(c(0.0, 0.0), c(0.0, 0.0), c(8.0, 0.0));
        let poly = MonicPolynomial::from_real(&[8.0, 0.0, 0.0]).unwrap();
        for z in r.roots {
            assert!((z.norm() - 2.0).abs() < 1e-14);
            assert!(evaluate(&poly, z).norm() < 1e-13);
        }
    }

    #[test]
    fn polish_examples() {
        let p = MonicPolynomial::from_real(&[-1.0, 0.0]).unwrap();
        let z = polish_root(&p, c(1.001, 0.0), 3);
        assert!(close(z, c(1.0, 0.0), 1e-9));

        let p = MonicPolynomial::from_real(&[-1.0, 0.0, 0.0]).unwrap();
        assert_eq!(polish_root(&p, c(1.0, 0.0), 2), c(1.0, 0.0));

        let p = MonicPolynomial::from_real(&[0.0; 6]).unwrap();
        let z0 = c(0.1, 0.0);
        let z = polish_root(&p, z0, 2);
        assert!(z == z0 || z.norm() < z0.norm());
    }

    #[test]
    fn polish_guards_zero_derivative() {
        // P'(0) = 0 for z^2 + 1
        let p = MonicPolynomial::from_real(&[1.0, 0.0]).unwrap();
        assert_eq!(polish_root(&p, c(0.0, 0.0), 5), c(0.0, 0.0));
    }
}
