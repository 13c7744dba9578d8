use super::{record, IterationProblem, StrategyKind, Trace, Visit};
use crate::error::Result;
use crate::interval::mat_vec;

/// Plain interval iteration `x_{k+1} = A x_k + b`.
pub fn run_naive(p: &IterationProblem) -> Result<Trace> {
    record(StrategyKind::Naive, |visit| drive(p, visit))
}

pub(super) fn drive(p: &IterationProblem, visit: &mut Visit<'_>) -> Result<()> {
    let mut x = p.x0().clone();
    if !visit(0, &x) {
        return Ok(());
    }
    for k in 1..=p.n() {
        x = mat_vec(p.a(), &x)?.add(p.b())?;
        if !visit(k, &x) {
            break;
        }
    }
    Ok(())
}
