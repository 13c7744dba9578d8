//! Fixed change of basis `x = B y`, with `B` orthogonal (or nearly so).

use super::{record, IterationProblem, Rigor, StrategyKind, Trace, Visit};
use crate::error::Result;
use crate::interval::{mat_vec, IntervalMatrix, IntervalVector};
use crate::linalg::{enclose_inverse_near_orthogonal, qr, svd};
use crate::matrix::Matrix;

/// `y_{k+1} = Q'AQ y_k + Q'b` with `A = QR`.
pub fn run_qr(p: &IterationProblem) -> Result<Trace> {
    record(StrategyKind::Qr, |visit| drive_qr(p, visit))
}

/// `y_{k+1} = U'AU y_k + U'b` with `A = UΣV'`.
pub fn run_svd_u(p: &IterationProblem) -> Result<Trace> {
    record(StrategyKind::SvdU, |visit| drive_svd_u(p, visit))
}

/// `y_{k+1} = VAV' y_k + Vb` with `A = UΣV'`.
pub fn run_svd_v(p: &IterationProblem) -> Result<Trace> {
    record(StrategyKind::SvdV, |visit| drive_svd_v(p, visit))
}

pub(super) fn drive_qr(p: &IterationProblem, visit: &mut Visit<'_>) -> Result<()> {
    let q = qr(p.a())?.q;
    drive_basis(p, &q, visit)
}

pub(super) fn drive_svd_u(p: &IterationProblem, visit: &mut Visit<'_>) -> Result<()> {
    let u = svd(p.a())?.u;
    drive_basis(p, &u, visit)
}

pub(super) fn drive_svd_v(p: &IterationProblem, visit: &mut Visit<'_>) -> Result<()> {
    let vt = svd(p.a())?.v.transpose();
    drive_basis(p, &vt, visit)
}

enum Transition {
    Point(Matrix),
    Interval(IntervalMatrix),
}

impl Transition {
    fn apply(&self, y: &IntervalVector) -> Result<IntervalVector> {
        match self {
            Transition::Point(m) => mat_vec(m, y),
            Transition::Interval(m) => m.mul_vec(y),
        }
    }
}

/// Iterates in the coordinates `y = B⁻¹ x`. Fast mode uses `B'` for the
/// inverse and point products; verified mode encloses `B⁻¹`.
pub(super) fn drive_basis(
    p: &IterationProblem,
    basis: &Matrix,
    visit: &mut Visit<'_>,
) -> Result<()> {
    if !visit(0, p.x0()) {
        return Ok(());
    }
    if p.n() == 0 {
        return Ok(());
    }
    let (m, c, mut y) = match p.rigor() {
        Rigor::Fast => {
            let bt = basis.transpose();
            let m = bt.matmul(p.a()).matmul(basis);
            (
                Transition::Point(m),
                mat_vec(&bt, p.b())?,
                mat_vec(&bt, p.x0())?,
            )
        }
        Rigor::Verified => {
            let g = enclose_inverse_near_orthogonal(basis)?;
            let m = g.mul_point(p.a())?.mul_point(basis)?;
            (
                Transition::Interval(m),
                g.mul_vec(p.b())?,
                g.mul_vec(p.x0())?,
            )
        }
    };
    for k in 1..=p.n() {
        y = m.apply(&y)?.add(&c)?;
        let x = mat_vec(basis, &y)?;
        if !visit(k, &x) {
            break;
        }
    }
    Ok(())
}
