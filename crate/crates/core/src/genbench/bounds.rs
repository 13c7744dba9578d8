//! A priori bounds on the norm of the width vector after `n` steps.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::interval::round::{add_up, mul_up, sqrt_up};
use crate::linalg::{inverse, norm2_estimate, norm2_upper_nonneg};
use crate::matrix::{norm2, Matrix};
use crate::toy;

/// One bound family evaluated at iterations `0..=n`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundSeries {
    pub name: &'static str,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    /// Condition number of the basis (2-norm).
    pub kappa: f64,
    /// Growth factor of the width recurrence (2-norm).
    pub growth: f64,
    /// `‖|A|‖₂` (upper bound) or, for the eigen bound, `ρ(A)`.
    pub a_norm: f64,
    pub wid_y0_norm: f64,
    pub wid_b_norm: f64,
    pub series: Vec<BoundSeries>,
}

impl BoundReport {
    pub fn series(&self, name: &str) -> Option<&[f64]> {
        self.series
            .iter()
            .find(|s| s.name == name)
            .map(|s| s.values.as_slice())
    }

    /// Whether the first series grows without bound (`growth > 1`).
    pub fn grows(&self) -> bool {
        self.growth > 1.0
    }
}

/// `v_0 = w0`, `v_{k+1} = g v_k + c wb`, rounded upward: equal to
/// `g^k w0 + Σ_{i<k} g^i c wb` without dividing by `g - 1`.
fn geometric_up(g: f64, w0: f64, c_wb: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut v = w0;
    out.push(v);
    for _ in 0..n {
        v = add_up(mul_up(g, v), c_wb);
        out.push(v);
    }
    out
}

fn abs_norm_inf_up(m: &Matrix) -> f64 {
    (0..m.rows())
        .map(|i| m.row(i).iter().fold(0.0, |acc, v| add_up(acc, v.abs())))
        .fold(0.0, f64::max)
}

fn vec_norm_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Upward bound on the Euclidean norm of a vector.
fn vec_norm2_up(v: &[f64]) -> f64 {
    sqrt_up(v.iter().fold(0.0, |acc, x| add_up(acc, mul_up(*x, *x))))
}

/// Width bounds for the iteration in the basis `x = B y`.
///
/// Series:
/// - `general_2`: `α^n ‖w0‖₂ + Σ α^i ‖|B⁻¹|‖₂ ‖wb‖₂`, with
///   `α = ‖|B⁻¹|‖₂ ‖|A|‖₂ ‖|B|‖₂`, every norm of a non-negative matrix an
///   upper bound;
/// - `general_inf`: the same with exact ∞-norms;
/// - `orthogonal_2`: `‖|A|‖₂^n ‖w0‖₂ + Σ ‖|A|‖₂^i ‖wb‖₂`, the form for
///   orthogonal `B` with `κ₂(B) = 1`. It uses `‖|A|‖₂`, not `‖A‖₂`: widths
///   propagate through `|A|`, and the two norms differ in general.
pub fn bound_general(
    a: &Matrix,
    b: &Matrix,
    wid_y0: &[f64],
    wid_b: &[f64],
    n: usize,
) -> Result<BoundReport> {
    let d = a.ensure_square()?;
    if b.ensure_square()? != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: b.rows(),
        });
    }
    for len in [wid_y0.len(), wid_b.len()] {
        if len != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: len,
            });
        }
    }
    let identity = b == &Matrix::identity(d);
    let b_inv = if identity { b.clone() } else { inverse(b)? };
    let (abs_inv_2, abs_b_2) = if identity {
        (1.0, 1.0)
    } else {
        (
            norm2_upper_nonneg(&b_inv.abs())?,
            norm2_upper_nonneg(&b.abs())?,
        )
    };
    let abs_a_2 = norm2_upper_nonneg(&a.abs())?;
    let alpha_2 = mul_up(mul_up(abs_inv_2, abs_a_2), abs_b_2);
    let w0_2 = vec_norm2_up(wid_y0);
    let wb_2 = vec_norm2_up(wid_b);

    let abs_inv_inf = abs_norm_inf_up(&b_inv);
    let alpha_inf = mul_up(mul_up(abs_inv_inf, abs_norm_inf_up(a)), abs_norm_inf_up(b));

    let kappa = norm2_estimate(b) * norm2_estimate(&b_inv);
    Ok(BoundReport {
        kappa,
        growth: alpha_2,
        a_norm: abs_a_2,
        wid_y0_norm: w0_2,
        wid_b_norm: wb_2,
        series: vec![
            BoundSeries {
                name: "general_2",
                values: geometric_up(alpha_2, w0_2, mul_up(abs_inv_2, wb_2), n),
            },
            BoundSeries {
                name: "general_inf",
                values: geometric_up(
                    alpha_inf,
                    vec_norm_inf(wid_y0),
                    mul_up(abs_inv_inf, vec_norm_inf(wid_b)),
                    n,
                ),
            },
            BoundSeries {
                name: "orthogonal_2",
                values: geometric_up(abs_a_2, w0_2, wb_2, n),
            },
        ],
    })
}

/// 2-norm condition number of the toy's eigenvector matrix, whose columns
/// are `(1, λ)` and `(1, λ̄)`.
pub(crate) fn toy_eigenvector_condition() -> f64 {
    let (re, im) = toy::EIGENVALUE;
    let lambda = Complex64::new(re, im);
    let c1 = [Complex64::new(1.0, 0.0), lambda];
    let c2 = [Complex64::new(1.0, 0.0), lambda.conj()];
    // Gram matrix C^H C = [[g, h], [h̄, g]], eigenvalues g ± |h|
    let g = c1.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let h = c1
        .iter()
        .zip(&c2)
        .map(|(x, y)| x.conj() * y)
        .sum::<Complex64>();
    ((g + h.norm()) / (g - h.norm())).sqrt()
}

/// Eigen-decomposition bounds for the toy problem (`A = P⁻¹ΛP`).
///
/// Series:
/// - `eigen_2`: `(κ₂(P) ρ(A))^n ‖w0‖₂ + Σ (κ₂(P) ρ(A))^i ‖wb‖₂`;
/// - `nedialkov_jackson`: `κ₂(P) ρ^n ‖w0‖₂ + (κ₂(P) ρ^{n-1} - 1)/(κ₂(P) ρ - 1) ‖wb‖₂`,
///   evaluated as written but without the trailing `+ b` term, which does
///   not have the dimension of a width.
pub fn bound_toy_eigen(n: usize) -> BoundReport {
    let kappa = toy_eigenvector_condition();
    let (re, im) = toy::EIGENVALUE;
    let rho = (re * re + im * im).sqrt();
    let w0 = norm2(&toy::x0().wid());
    let wb = norm2(&toy::b().wid());
    let growth = kappa * rho;
    let nj = (0..=n)
        .map(|k| {
            let k = k as f64;
            kappa * rho.powf(k) * w0 + (kappa * rho.powf(k - 1.0) - 1.0) / (growth - 1.0) * wb
        })
        .collect();
    BoundReport {
        kappa,
        growth,
        a_norm: rho,
        wid_y0_norm: w0,
        wid_b_norm: wb,
        series: vec![
            BoundSeries {
                name: "eigen_2",
                values: geometric_up(growth, w0, wb, n),
            },
            BoundSeries {
                name: "nedialkov_jackson",
                values: nj,
            },
        ],
    }
}
