//! Iterating the `k`-fold composition `x ← A^k x + Σ_{i<k} A^i b`.

use super::{record, IterationProblem, StrategyKind, Trace, Visit, K_THRESHOLD};
use crate::error::{Error, Result};
use crate::interval::IntervalMatrix;
use crate::linalg::perron_root;
use crate::matrix::Matrix;

/// The chosen `k` with the round-to-nearest power `A^k`.
#[derive(Clone, Debug)]
pub struct KPower {
    pub k: usize,
    pub power: Matrix,
}

/// Smallest `k ≤ kmax` with `perron_root(|A^k|) < 0.999`.
///
/// `k ↦ ρ(|A^k|)` is not monotone (it can dip below the threshold and rise
/// again), so the powers are scanned in order rather than bisected.
pub fn find_k(a: &Matrix, kmax: usize) -> Result<KPower> {
    a.ensure_square()?;
    let mut power = a.clone();
    for k in 1..=kmax {
        if !power.is_finite() {
            break;
        }
        if perron_root(&power.abs())?.value < K_THRESHOLD {
            return Ok(KPower { k, power });
        }
        power = a.matmul(&power);
    }
    Err(Error::KNotFound {
        kmax,
        threshold: K_THRESHOLD,
    })
}

/// k-step method with `k` from [`find_k`]; rows at iterations `j·k`.
pub fn run_kstep(p: &IterationProblem) -> Result<Trace> {
    record(StrategyKind::Kstep, |visit| drive(p, None, visit))
}

/// k-step method with a caller-chosen `k ≥ 1`.
pub fn run_kstep_with(p: &IterationProblem, k: usize) -> Result<Trace> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    record(StrategyKind::Kstep, |visit| drive(p, Some(k), visit))
}

pub(super) fn drive(p: &IterationProblem, k: Option<usize>, visit: &mut Visit<'_>) -> Result<()> {
    let k = match k {
        Some(k) => k,
        None => find_k(p.a(), p.kmax())?.k,
    };
    if !visit(0, p.x0()) || p.n() < k {
        return Ok(());
    }
    // A^k is enclosed in both modes: a round-to-nearest power would make the
    // macro-step a different map and lose containment.
    let mut power = IntervalMatrix::from_point(&Matrix::identity(p.dim()));
    let mut s = p.b().clone();
    for _ in 1..k {
        power = IntervalMatrix::point_mul(p.a(), &power)?;
        s = s.add(&power.mul_vec(p.b())?)?;
    }
    let power = IntervalMatrix::point_mul(p.a(), &power)?;
    let mut x = p.x0().clone();
    for j in 1..=p.n() / k {
        x = power.mul_vec(&x)?.add(&s)?;
        if !visit(j * k, &x) {
            break;
        }
    }
    Ok(())
}
