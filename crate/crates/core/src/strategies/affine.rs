use super::{record, IterationProblem, StrategyKind, Trace, Visit};
use crate::affine::{aff_mat_vec_add, AffineVector};
use crate::error::Result;

/// What happens to the accumulated rounding error between steps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AffineRounding {
    /// Each component's error becomes a fresh noise symbol after every step.
    #[default]
    FreshSymbols,
    /// Errors stay in the scalar error term and propagate through `|A|`.
    ErrorTerm,
}

/// Affine-arithmetic iteration. `b` is lifted once and its symbols are
/// shared by every step.
pub fn run_affine(p: &IterationProblem) -> Result<Trace> {
    record(StrategyKind::Affine, |visit| drive(p, visit))
}

pub(super) fn drive(p: &IterationProblem, visit: &mut Visit<'_>) -> Result<()> {
    let mut x = AffineVector::from_box(p.x0())?;
    let b = AffineVector::from_box_after(p.b(), x.next_symbol())?;
    if !visit(0, p.x0()) {
        return Ok(());
    }
    for k in 1..=p.n() {
        x = aff_mat_vec_add(p.a(), &x, &b)?;
        if p.affine_rounding() == AffineRounding::FreshSymbols {
            x = x.errors_to_symbols();
        }
        x = x.condense(p.condense());
        if !visit(k, &x.to_box()) {
            break;
        }
    }
    Ok(())
}
