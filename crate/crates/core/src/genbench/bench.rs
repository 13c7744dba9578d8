use std::fmt::Write as _;

use super::ExperimentConfig;
use crate::error::{Error, Result};
use crate::strategies::{run, StrategyKind};

#[derive(Clone, Debug, PartialEq)]
pub struct TimingRow {
    pub strategy: StrategyKind,
    pub class: String,
    pub dim: usize,
    pub reps: usize,
    /// Mean wall time of one full run (setup and all iterations).
    pub mean_ns: f64,
    /// Iterations actually performed, for per-iteration comparisons.
    pub iterations: usize,
}

impl TimingRow {
    pub fn per_iteration_ns(&self) -> f64 {
        self.mean_ns / self.iterations.max(1) as f64
    }
}

/// Mean wall time per strategy over `reps` runs. Problem generation happens
/// once, outside the timed region.
pub fn bench(cfg: &ExperimentConfig, reps: usize) -> Result<Vec<TimingRow>> {
    if reps == 0 {
        return Err(Error::InvalidArgument("reps must be at least 1".into()));
    }
    let p = cfg.problem()?;
    let mut kinds = cfg.strategies.clone();
    kinds.sort();
    kinds.dedup();
    let mut rows = Vec::with_capacity(kinds.len());
    for kind in kinds {
        let mut total = 0u128;
        let mut iterations = 0;
        for _ in 0..reps {
            let t = run(kind, &p)?;
            total += t.wall_ns as u128;
            iterations = t.rows.last().map_or(0, |r| r.iter);
        }
        rows.push(TimingRow {
            strategy: kind,
            class: cfg.class_label(),
            dim: cfg.dim(),
            reps,
            mean_ns: total as f64 / reps as f64,
            iterations,
        });
    }
    Ok(rows)
}

pub fn timing_csv(rows: &[TimingRow]) -> String {
    let mut out = String::from("strategy,class,dim,reps,mean_ns\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.strategy,
            r.class,
            r.dim,
            r.reps,
            r.mean_ns.round()
        );
    }
    out
}
