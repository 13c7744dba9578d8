use crate::error::{Error, Result};
use crate::interval::round::{add_up, div_up, mul_up, sqrt_up};
use crate::matrix::{norm2, Matrix};

const PERRON_TOL: f64 = 1e-6;
const PERRON_MAX_ITERS: usize = 100_000;
const GELFAND_MAX_SQUARINGS: usize = 40;
const GELFAND_AGREEMENT: f64 = 1e-4;

/// Power-iteration estimate of the Perron root of a non-negative matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerronEstimate {
    pub value: f64,
    pub converged: bool,
    pub iterations: usize,
    /// Collatz–Wielandt bracket of the last iterate; `None` when the iterate
    /// had zero components and no bracket applies.
    pub bracket: Option<(f64, f64)>,
}

/// Gelfand-formula estimate `‖A^(2^m)‖₂^(1/2^m)` of the spectral radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RhoEstimate {
    pub value: f64,
    /// Relative difference between the last two estimates.
    pub agreement: f64,
    pub squarings: usize,
}

/// Perron root of `m >= 0` by power iteration from the all-ones vector.
///
/// Stops when the Collatz–Wielandt bracket `[min (Mx)_i/x_i, max (Mx)_i/x_i]`
/// is narrower than `1e-6` relative, or when successive estimates settle
/// (including a geometric tail estimate) to that tolerance. After `1e5`
/// iterations the best estimate is returned with `converged = false`.
pub fn perron_root(m: &Matrix) -> Result<PerronEstimate> {
    let n = m.ensure_square()?;
    if m.as_slice().iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
        return Err(Error::InvalidArgument(
            "perron_root needs a finite non-negative matrix".into(),
        ));
    }
    if n == 0 {
        return Err(Error::Empty);
    }
    let mut x = vec![1.0; n];
    let mut prev: Option<f64> = None;
    let mut prev_delta: Option<f64> = None;
    let mut last = PerronEstimate {
        value: 0.0,
        converged: false,
        iterations: 0,
        bracket: None,
    };
    for it in 1..=PERRON_MAX_ITERS {
        let y = m.matvec(&x);
        let norm = y.iter().fold(0.0_f64, |a, v| a.max(*v));
        if norm == 0.0 {
            // M x = 0 for x >= 0 with ||x|| = 1 on the support
            return Ok(PerronEstimate {
                value: 0.0,
                converged: true,
                iterations: it,
                bracket: None,
            });
        }
        let bracket = if x.iter().all(|&v| v > 0.0) {
            let (lo, hi) = y
                .iter()
                .zip(&x)
                .map(|(a, b)| a / b)
                .fold((f64::INFINITY, 0.0_f64), |(lo, hi), r| {
                    (lo.min(r), hi.max(r))
                });
            Some((lo, hi))
        } else {
            None
        };
        // ||x||_inf = 1, so ||Mx||_inf is the ratio estimate
        let estimate = norm;
        last = PerronEstimate {
            value: estimate,
            converged: false,
            iterations: it,
            bracket,
        };
        if let Some((lo, hi)) = bracket {
            if hi - lo <= PERRON_TOL * hi {
                last.value = 0.5 * (lo + hi);
                last.converged = true;
                return Ok(last);
            }
        }
        if let Some(p) = prev {
            let delta = (estimate - p).abs();
            if delta == 0.0 {
                last.converged = true;
                return Ok(last);
            }
            if let Some(pd) = prev_delta {
                let q = delta / pd;
                if q < 1.0 && delta * q / (1.0 - q) + delta <= PERRON_TOL * estimate {
                    last.converged = true;
                    return Ok(last);
                }
            }
            prev_delta = Some(delta);
        }
        prev = Some(estimate);
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / norm;
        }
    }
    Ok(last)
}

/// Rigorous upper bound on `‖M‖₂` for a non-negative matrix, from the
/// Collatz–Wielandt bound applied to `M'M` with upward rounding.
pub fn norm2_upper_nonneg(m: &Matrix) -> Result<f64> {
    let n = m.ensure_square()?;
    if m.as_slice().iter().any(|v| !(*v >= 0.0)) {
        return Err(Error::InvalidArgument(
            "norm2_upper_nonneg needs a non-negative matrix".into(),
        ));
    }
    let gram = m.transpose().matmul(m);
    // a positive vector close to the Perron vector of M'M
    let mut x = vec![1.0; n];
    for _ in 0..200 {
        let y = gram.matvec(&x);
        let s = y.iter().fold(0.0_f64, |a, v| a.max(*v));
        if s == 0.0 {
            return Ok(0.0);
        }
        let next: Vec<f64> = y.iter().map(|v| (v / s).max(1e-300)).collect();
        let change = next
            .iter()
            .zip(&x)
            .fold(0.0_f64, |a, (p, q)| a.max((p - q).abs()));
        x = next;
        if change < 1e-15 {
            break;
        }
    }
    // upward (M'M) x with M'M itself enclosed from above: (M'(M x)) rounded up
    let mx: Vec<f64> = (0..n)
        .map(|i| {
            m.row(i)
                .iter()
                .zip(&x)
                .fold(0.0, |acc, (&a, &b)| add_up(acc, mul_up(a, b)))
        })
        .collect();
    let mut hi = 0.0_f64;
    for j in 0..n {
        let s = (0..n).fold(0.0, |acc, i| add_up(acc, mul_up(m[(i, j)], mx[i])));
        hi = hi.max(div_up(s, x[j]));
    }
    Ok(sqrt_up(hi))
}

/// Estimate of `‖B‖₂` by power iteration on `B'B`, started from the row of
/// `B` with the largest norm (never orthogonal to the top right singular
/// vector when `B ≠ 0`). The estimate approaches the norm from below.
pub fn norm2_estimate(b: &Matrix) -> f64 {
    let n = b.cols();
    if b.rows() == 0 || n == 0 {
        return 0.0;
    }
    let best_row = (0..b.rows())
        .map(|i| (i, b.row(i).iter().map(|v| v * v).sum::<f64>()))
        .fold((0, -1.0), |acc, r| if r.1 > acc.1 { r } else { acc });
    if best_row.1 <= 0.0 {
        return 0.0;
    }
    let bt = b.transpose();
    let mut x: Vec<f64> = b.row(best_row.0).to_vec();
    let mut est = 0.0_f64;
    for _ in 0..100 {
        let xn = norm2(&x);
        if xn == 0.0 {
            break;
        }
        x.iter_mut().for_each(|v| *v /= xn);
        let y = b.matvec(&x);
        let next = norm2(&y);
        let done = (next - est).abs() <= 1e-13 * next;
        est = est.max(next);
        if done {
            break;
        }
        x = bt.matvec(&y);
    }
    est
}

/// Spectral radius via Gelfand's formula with normalized repeated squaring.
///
/// Up to 40 squarings; stops once two successive estimates agree within
/// `1e-4` relative.
pub fn rho_estimate(a: &Matrix) -> Result<RhoEstimate> {
    a.ensure_square()?;
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let s0 = a.max_abs();
    if s0 == 0.0 {
        return Ok(RhoEstimate {
            value: 0.0,
            agreement: 0.0,
            squarings: 0,
        });
    }
    let mut b = a.scaled(1.0 / s0);
    let mut log_scale = s0.ln();
    let mut est = (norm2_estimate(&b).ln() + log_scale).exp();
    let mut agreement = f64::INFINITY;
    for m in 1..=GELFAND_MAX_SQUARINGS {
        b = b.matmul(&b);
        let s = b.max_abs();
        if s == 0.0 || !s.is_finite() {
            return Ok(RhoEstimate {
                value: 0.0,
                agreement: est,
                squarings: m,
            });
        }
        b = b.scaled(1.0 / s);
        log_scale = 2.0 * log_scale + s.ln();
        let exponent = 2f64.powi(m as i32);
        let next = ((norm2_estimate(&b).ln() + log_scale) / exponent).exp();
        agreement = (next - est).abs() / next.max(f64::MIN_POSITIVE);
        est = next;
        if agreement <= GELFAND_AGREEMENT {
            return Ok(RhoEstimate {
                value: est,
                agreement,
                squarings: m,
            });
        }
    }
    Ok(RhoEstimate {
        value: est,
        agreement,
        squarings: GELFAND_MAX_SQUARINGS,
    })
}

/// `A^k` by repeated multiplication in round-to-nearest; `A^0 = I`.
pub fn mat_power(a: &Matrix, k: usize) -> Result<Matrix> {
    let n = a.ensure_square()?;
    let mut p = Matrix::identity(n);
    for _ in 0..k {
        p = a.matmul(&p);
        if !p.is_finite() {
            return Err(Error::Overflow("matrix power"));
        }
    }
    Ok(p)
}
