//! Forward and iterated difference operators acting on polynomials.

use crate::poly::Polynomial;
use crate::rational::Rational;

/// `Δ_y p(x) = p(x + y) - p(x)` as a polynomial.
pub fn step_diff(p: &Polynomial, y: &Rational) -> Polynomial {
    &p.shift(y) - p
}

/// The m-th forward difference `Δ^m p`. Vanishes once `m` exceeds the degree.
pub fn forward_diff(p: &Polynomial, m: usize) -> Polynomial {
    let one = Rational::one();
    let mut q = p.clone();
    for _ in 0..m {
        if q.is_zero() {
            break;
        }
        q = step_diff(&q, &one);
    }
    q
}

/// `Δ_{y_1} ∘ ... ∘ Δ_{y_m} p` evaluated at `x`. An empty `ys` returns `p(x)`.
pub fn iterated_diff(p: &Polynomial, ys: &[Rational], x: &Rational) -> Rational {
    let q = ys.iter().rev().fold(p.clone(), |q, y| step_diff(&q, y));
    q.eval(x)
}
