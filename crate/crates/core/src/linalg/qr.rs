use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// `A = Q R` with `Q` orthogonal and `R` upper triangular (exact zeros
/// below the diagonal).
#[derive(Clone, Debug)]
pub struct QrFactors {
    pub q: Matrix,
    pub r: Matrix,
}

/// Householder QR with an explicitly accumulated `Q`.
///
/// Each reflector takes the sign that avoids cancellation. A column that is
/// already zero below the diagonal gets no reflector, so triangular input
/// yields `Q = I` exactly.
pub fn qr(a: &Matrix) -> Result<QrFactors> {
    let n = a.ensure_square()?;
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let mut r = a.clone();
    // (v, beta) with H = I - beta v v', v supported on k..n
    let mut reflectors: Vec<(usize, Vec<f64>, f64)> = Vec::with_capacity(n);

    for k in 0..n.saturating_sub(1) {
        let scale = (k..n).fold(0.0_f64, |m, i| m.max(r[(i, k)].abs()));
        let below = (k + 1..n).fold(0.0_f64, |m, i| m.max(r[(i, k)].abs()));
        if below == 0.0 {
            continue;
        }
        let mut v: Vec<f64> = (k..n).map(|i| r[(i, k)] / scale).collect();
        let alpha = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let sign = if v[0] >= 0.0 { 1.0 } else { -1.0 };
        v[0] += sign * alpha;
        let vtv: f64 = v.iter().map(|x| x * x).sum();
        let beta = 2.0 / vtv;

        for j in k..n {
            let dot: f64 = (k..n).map(|i| v[i - k] * r[(i, j)]).sum();
            let f = beta * dot;
            for i in k..n {
                r[(i, j)] -= f * v[i - k];
            }
        }
        r[(k, k)] = -sign * alpha * scale;
        for i in k + 1..n {
            r[(i, k)] = 0.0;
        }
        reflectors.push((k, v, beta));
    }

    // Q = H_0 H_1 ... applied to I from the right-most reflector outward.
    let mut q = Matrix::identity(n);
    for (k, v, beta) in reflectors.iter().rev() {
        let k = *k;
        for j in 0..n {
            let dot: f64 = (k..n).map(|i| v[i - k] * q[(i, j)]).sum();
            if dot == 0.0 {
                continue;
            }
            let f = beta * dot;
            for i in k..n {
                q[(i, j)] -= f * v[i - k];
            }
        }
    }
    Ok(QrFactors { q, r })
}
