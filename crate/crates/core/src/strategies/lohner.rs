//! Re-orthogonalised basis: `Q_{k+1}` comes from `qr(R_k Q_k)` every step.

use super::{record, IterationProblem, Rigor, StrategyKind, Trace, Visit};
use crate::error::Result;
use crate::interval::{mat_vec, IntervalVector};
use crate::linalg::{enclose_inverse_near_orthogonal, qr};
use crate::matrix::Matrix;

/// `y_{k+1} = Q_{k+1}' A Q_k y_k + Q_{k+1}' b`, `x_k = Q_k y_k`, `Q_0 = I`.
pub fn run_lohner(p: &IterationProblem) -> Result<Trace> {
    record(StrategyKind::Lohner, |visit| drive(p, visit))
}

pub(super) fn drive(p: &IterationProblem, visit: &mut Visit<'_>) -> Result<()> {
    if !visit(0, p.x0()) || p.n() == 0 {
        return Ok(());
    }
    let mut q_prev = Matrix::identity(p.dim());
    let mut y = p.x0().clone();
    let first = qr(p.a())?;
    let (mut q, mut r) = (first.q, first.r);
    for k in 1..=p.n() {
        y = step(p, &q, &q_prev, &y)?;
        let x = mat_vec(&q, &y)?;
        if !visit(k, &x) || k == p.n() {
            break;
        }
        let next = qr(&r.matmul(&q))?;
        q_prev = std::mem::replace(&mut q, next.q);
        r = next.r;
    }
    Ok(())
}

fn step(
    p: &IterationProblem,
    q: &Matrix,
    q_prev: &Matrix,
    y: &IntervalVector,
) -> Result<IntervalVector> {
    match p.rigor() {
        Rigor::Fast => {
            let qt = q.transpose();
            let t = qt.matmul(p.a()).matmul(q_prev);
            mat_vec(&t, y)?.add(&mat_vec(&qt, p.b())?)
        }
        Rigor::Verified => {
            let g = enclose_inverse_near_orthogonal(q)?;
            let t = g.mul_point(p.a())?.mul_point(q_prev)?;
            t.mul_vec(y)?.add(&g.mul_vec(p.b())?)
        }
    }
}
