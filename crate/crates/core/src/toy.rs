//! The two-dimensional IIR filter used as the running example.
//!
//! `x_n = 1.8 x_{n-1} - 0.9 x_{n-2} + 0.047 (u_{n-2} + u_{n-1} + u_n)` with
//! `x_0 = 0`, `x_1 ∈ [1, 1.1]` and `u_n ∈ [9.95, 10.05]`, written in state
//! form `(x_{n-1}, x_n)' = A (x_{n-2}, x_{n-1})' + b`.

use crate::interval::{Interval, IntervalVector};
use crate::matrix::Matrix;
use crate::strategies::{IterationProblem, Rigor};

pub const INPUT_LO: f64 = 9.95;
pub const INPUT_HI: f64 = 10.05;
/// Gain applied to the sum of three inputs.
pub const INPUT_GAIN: f64 = 4.7e-2;

pub fn matrix() -> Matrix {
    Matrix::from_rows(&[[0.0, 1.0], [-0.9, 1.8]]).expect("2x2")
}

/// `([0, 0], [1, 1.1])`.
pub fn x0() -> IntervalVector {
    IntervalVector::from_bounds(&[(0.0, 0.0), (1.0, 1.1)]).expect("valid box")
}

/// `(0, 0.047 * 3 * [9.95, 10.05])`, the scalar product rounded to nearest
/// first and the interval product rounded outward.
pub fn b() -> IntervalVector {
    let u = Interval::new(INPUT_LO, INPUT_HI).expect("valid input range");
    IntervalVector::new(vec![Interval::ZERO, u.scale(INPUT_GAIN * 3.0)]).expect("non-empty")
}

pub fn problem(n: usize) -> IterationProblem {
    problem_with(n, Rigor::Fast)
}

pub fn problem_with(n: usize, rigor: Rigor) -> IterationProblem {
    IterationProblem::new(matrix(), b(), x0(), n, rigor).expect("toy problem is well formed")
}

/// Analytic eigenvalues `0.9 ± 0.3 i` of the toy matrix, as (re, im).
pub const EIGENVALUE: (f64, f64) = (0.9, 0.3);
