use crate::error::{Error, Result};
use crate::interval::round::{add_up, div_up, mul_up, sub_down};
use crate::interval::{Interval, IntervalMatrix};
use crate::matrix::Matrix;

use super::qr::qr;

/// Rigorous upper bound on `‖I - Q'Q‖_inf`.
pub fn orthogonality_defect(q: &Matrix) -> Result<f64> {
    let n = q.ensure_square()?;
    let gram = IntervalMatrix::enclose_product(&q.transpose(), q)?;
    let defect: Vec<Interval> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let id = Interval::point(if i == j { 1.0 } else { 0.0 });
            id - gram[(i, j)]
        })
        .collect();
    Ok(IntervalMatrix::new(n, n, defect)?.mag_norm_inf())
}

/// Interval matrix `G = Q' + [-δ, δ]` guaranteed to contain `Q⁻¹`.
///
/// With `E = I - Q'Q` and `η ≥ ‖E‖_inf`, `Q⁻¹ = (I - E)⁻¹ Q'`, so every entry
/// of `Q⁻¹ - Q'` is bounded by `η ‖Q'‖_inf / (1 - η)`. All bounds are rounded
/// upward; `η ≥ 1` is rejected.
pub fn enclose_inverse_near_orthogonal(q: &Matrix) -> Result<IntervalMatrix> {
    q.ensure_square()?;
    if !q.is_finite() {
        return Err(Error::NonFinite);
    }
    let eta = orthogonality_defect(q)?;
    if !(eta < 1.0) {
        return Err(Error::NotNearOrthogonal { eta });
    }
    let qt = q.transpose();
    let qt_norm = (0..qt.rows())
        .map(|i| qt.row(i).iter().fold(0.0, |acc, v| add_up(acc, v.abs())))
        .fold(0.0, f64::max);
    let delta = if eta == 0.0 {
        0.0
    } else {
        div_up(mul_up(eta, qt_norm), sub_down(1.0, eta))
    };
    IntervalMatrix::inflated(&qt, delta)
}

/// Floating-point inverse via QR and back substitution.
pub fn inverse(b: &Matrix) -> Result<Matrix> {
    let n = b.ensure_square()?;
    let f = qr(b)?;
    let diag_max = (0..n).fold(0.0_f64, |m, i| m.max(f.r[(i, i)].abs()));
    let tiny = diag_max * f64::EPSILON * n as f64;
    if diag_max == 0.0 || (0..n).any(|i| f.r[(i, i)].abs() <= tiny) {
        return Err(Error::Singular);
    }
    // R X = Q'
    let rhs = f.q.transpose();
    let mut x = Matrix::zeros(n, n);
    for col in 0..n {
        for i in (0..n).rev() {
            let mut s = rhs[(i, col)];
            for k in i + 1..n {
                s -= f.r[(i, k)] * x[(k, col)];
            }
            x[(i, col)] = s / f.r[(i, i)];
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_is_exact() {
        let p = Matrix::from_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]).unwrap();
        let g = enclose_inverse_near_orthogonal(&p).unwrap();
        assert!(g.max_rad() <= 1e-15);
        assert!(g.contains_matrix(&p.transpose()));
    }

    #[test]
    fn toy_q_inverse_enclosed() {
        let a = Matrix::from_rows(&[[0.0, 1.0], [-0.9, 1.8]]).unwrap();
        let q = qr(&a).unwrap().q;
        let g = enclose_inverse_near_orthogonal(&q).unwrap();
        let gq = g.mul_point(&q).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!(gq[(i, j)].contains(if i == j { 1.0 } else { 0.0 }));
            }
        }
        assert!(g.max_rad() < 1e-14);
    }

    #[test]
    fn far_from_orthogonal_rejected() {
        let q = Matrix::identity(3).scaled(2.0);
        assert!(matches!(
            enclose_inverse_near_orthogonal(&q),
            Err(Error::NotNearOrthogonal { .. })
        ));
    }

    #[test]
    fn general_inverse() {
        let b = Matrix::from_rows(&[[4.0, 7.0], [2.0, 6.0]]).unwrap();
        let inv = inverse(&b).unwrap();
        let expected = Matrix::from_rows(&[[0.6, -0.7], [-0.2, 0.4]]).unwrap();
        assert!(inv.max_abs_diff(&expected) < 1e-14);
        let singular = Matrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
        assert_eq!(inverse(&singular).unwrap_err(), Error::Singular);
    }
}
