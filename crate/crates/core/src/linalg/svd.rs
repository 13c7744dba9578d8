use crate::error::{Error, Result};
use crate::matrix::Matrix;

const MAX_SWEEPS: usize = 80;

/// `A = U diag(sigma) V'` with `sigma` sorted descending.
#[derive(Clone, Debug)]
pub struct SvdFactors {
    pub u: Matrix,
    pub sigma: Vec<f64>,
    pub v: Matrix,
}

/// One-sided (Hestenes) Jacobi SVD.
///
/// Columns of a working copy of `A` are rotated pairwise until every pair is
/// orthogonal to `d * eps` relative accuracy; the rotations accumulate into
/// `V`, the column norms are the singular values and the normalized columns
/// form `U`. Columns with zero norm are completed to an orthonormal basis.
pub fn svd(a: &Matrix) -> Result<SvdFactors> {
    let n = a.ensure_square()?;
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    // column-major working storage
    let mut w: Vec<Vec<f64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let tol = f64::EPSILON * n as f64;

    let mut converged = n <= 1;
    let mut sweeps = 0;
    let mut off = 0.0_f64;
    while !converged && sweeps < MAX_SWEEPS {
        sweeps += 1;
        converged = true;
        off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = w[p].iter().map(|x| x * x).sum();
                let beta: f64 = w[q].iter().map(|x| x * x).sum();
                let gamma: f64 = w[p].iter().zip(&w[q]).map(|(x, y)| x * y).sum();
                if alpha == 0.0 || beta == 0.0 || gamma == 0.0 {
                    continue;
                }
                let rel = gamma.abs() / (alpha.sqrt() * beta.sqrt());
                off = off.max(rel);
                if rel <= tol {
                    continue;
                }
                converged = false;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut w, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
    }
    if !converged {
        return Err(Error::SvdNoConvergence { sweeps, off });
    }

    let norms: Vec<f64> = w
        .iter()
        .map(|col| {
            let scale = col.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
            if scale == 0.0 {
                0.0
            } else {
                scale * col.iter().map(|x| (x / scale).powi(2)).sum::<f64>().sqrt()
            }
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let mut u_cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut missing = Vec::new();
    for (k, &j) in order.iter().enumerate() {
        if norms[j] > 0.0 {
            u_cols.push(w[j].iter().map(|x| x / norms[j]).collect());
        } else {
            u_cols.push(vec![0.0; n]);
            missing.push(k);
        }
    }
    for k in missing {
        u_cols[k] = complete_basis(&u_cols, k, n);
    }

    let u = Matrix::from_fn(n, n, |i, k| u_cols[k][i]);
    let v = Matrix::from_fn(n, n, |i, k| v[order[k]][i]);
    Ok(SvdFactors { u, sigma, v })
}

fn rotate(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (left, right) = cols.split_at_mut(q);
    let (cp, cq) = (&mut left[p], &mut right[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let (xp, xq) = (*x, *y);
        *x = c * xp - s * xq;
        *y = s * xp + c * xq;
    }
}

/// A unit vector orthogonal to every nonzero column of `cols` except slot
/// `skip`, chosen among the canonical basis vectors (twice-projected
/// Gram-Schmidt).
fn complete_basis(cols: &[Vec<f64>], skip: usize, n: usize) -> Vec<f64> {
    let project = |mut x: Vec<f64>| {
        for _ in 0..2 {
            for (k, c) in cols.iter().enumerate() {
                if k == skip {
                    continue;
                }
                let d: f64 = c.iter().zip(&x).map(|(a, b)| a * b).sum();
                for (xi, ci) in x.iter_mut().zip(c) {
                    *xi -= d * ci;
                }
            }
        }
        x
    };
    let mut best = vec![0.0; n];
    let mut best_norm = -1.0;
    for e in 0..n {
        let mut x = vec![0.0; n];
        x[e] = 1.0;
        let x = project(x);
        let nrm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if nrm > best_norm {
            best_norm = nrm;
            best = x;
        }
    }
    best.iter().map(|v| v / best_norm).collect()
}
