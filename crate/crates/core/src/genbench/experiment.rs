use std::fmt::Write as _;

use super::{ExperimentConfig, Workload, GENERATOR_VERSION};
use crate::error::{Error, Result};
use crate::strategies::{run, StrategyKind, Trace};

/// Traces of one configuration, one entry per selected strategy.
#[derive(Clone, Debug)]
pub struct Experiment {
    pub config: ExperimentConfig,
    pub outcomes: Vec<(StrategyKind, std::result::Result<Trace, Error>)>,
}

/// Builds the problem and runs every selected strategy in canonical order.
/// A failing strategy does not stop the others; it is reported as a
/// `# failed` line in the CSV.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Experiment> {
    let p = cfg.problem()?;
    let mut kinds = cfg.strategies.clone();
    kinds.sort();
    kinds.dedup();
    let outcomes = kinds.into_iter().map(|k| (k, run(k, &p))).collect();
    Ok(Experiment {
        config: cfg.clone(),
        outcomes,
    })
}

impl Experiment {
    pub fn trace(&self, kind: StrategyKind) -> Option<&Trace> {
        self.outcomes
            .iter()
            .find(|(k, _)| *k == kind)
            .and_then(|(_, t)| t.as_ref().ok())
    }

    pub fn failures(&self) -> impl Iterator<Item = (StrategyKind, &Error)> {
        self.outcomes
            .iter()
            .filter_map(|(k, t)| t.as_ref().err().map(|e| (*k, e)))
    }

    /// CSV with a `# key=value` preamble and one row per recorded iteration.
    pub fn to_csv(&self) -> String {
        let cfg = &self.config;
        let mut out = String::new();
        let seed = match cfg.workload {
            Workload::Toy => "none".to_string(),
            Workload::Generated { seed, .. } => seed.to_string(),
        };
        let _ = writeln!(out, "# dim={}", cfg.dim());
        let _ = writeln!(out, "# class={}", cfg.class_label());
        let _ = writeln!(out, "# seed={seed}");
        let _ = writeln!(out, "# n={}", cfg.n);
        let _ = writeln!(out, "# rigor={}", cfg.rigor);
        let _ = writeln!(out, "# generator={GENERATOR_VERSION}");
        for (kind, err) in self.failures() {
            let msg = err.to_string().replace(['\n', '\r'], " ");
            let _ = writeln!(out, "# failed strategy={kind} error={msg}");
        }
        out.push_str("strategy,iter,rad_inf,rad_2,wall_ns\n");
        for (kind, trace) in &self.outcomes {
            let Ok(trace) = trace else { continue };
            for row in &trace.rows {
                let _ = writeln!(
                    out,
                    "{kind},{},{},{},{}",
                    row.iter,
                    format_float(row.rad_inf),
                    format_float(row.rad_2),
                    row.elapsed_ns
                );
            }
        }
        out
    }
}

/// Shortest round-trip decimal; scientific notation outside `[1e-5, 1e16)`.
pub fn format_float(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let a = x.abs();
    if x == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}
