//! Test problems, theoretical width bounds and the experiment harness.
//!
//! Generated matrices are built from a seeded ChaCha8 generator; each use
//! (left factor, right factor, scaling) draws from its own stream, so the
//! matrix for a seed never depends on which strategies are run.

mod bench;
mod bounds;
mod experiment;
mod generate;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::interval::IntervalVector;
use crate::strategies::{IterationProblem, Rigor, StrategyKind};
use crate::toy;

pub use self::bench::{bench, timing_csv, TimingRow};
pub use self::bounds::{bound_general, bound_toy_eigen, BoundReport, BoundSeries};
pub use self::experiment::{format_float, run_experiment, Experiment};
pub use self::generate::{certify, gen_matrix, random_orthogonal, GeneratedMatrix};

/// Version tag written to CSV preambles; bump when generation changes.
pub const GENERATOR_VERSION: &str = "randsvd-geometric/chacha8/v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quality {
    Well,
    Ill,
}

impl Quality {
    pub fn name(self) -> &'static str {
        match self {
            Quality::Well => "well",
            Quality::Ill => "ill",
        }
    }
}

impl FromStr for Quality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "well" => Ok(Quality::Well),
            "ill" => Ok(Quality::Ill),
            _ => Err(Error::InvalidArgument(format!(
                "expected well or ill, got {s:?}"
            ))),
        }
    }
}

/// Conditioning (≈1e2 or ≈1e10) and scaling (coefficients of similar size
/// or spanning ten orders of magnitude).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixClass {
    pub cond: Quality,
    pub scale: Quality,
}

impl MatrixClass {
    pub const ALL: [MatrixClass; 4] = [
        MatrixClass::new(Quality::Well, Quality::Well),
        MatrixClass::new(Quality::Well, Quality::Ill),
        MatrixClass::new(Quality::Ill, Quality::Well),
        MatrixClass::new(Quality::Ill, Quality::Ill),
    ];

    pub const fn new(cond: Quality, scale: Quality) -> Self {
        Self { cond, scale }
    }

    /// Target 2-norm condition number of the unshifted factor product.
    pub fn condition(self) -> f64 {
        match self.cond {
            Quality::Well => 1e2,
            Quality::Ill => 1e10,
        }
    }
}

impl fmt::Display for MatrixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-cond/{}-scale", self.cond.name(), self.scale.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Workload {
    Toy,
    Generated {
        dim: usize,
        class: MatrixClass,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub workload: Workload,
    pub n: usize,
    pub strategies: Vec<StrategyKind>,
    pub rigor: Rigor,
    /// Radius of every component of `x0` (generated workloads only).
    pub x0_radius: f64,
    /// Radius of every component of `b` (generated workloads only).
    pub b_radius: f64,
    pub condense: Option<usize>,
}

impl ExperimentConfig {
    pub const DEFAULT_X0_RADIUS: f64 = 0.05;
    pub const DEFAULT_B_RADIUS: f64 = 0.00705;

    pub fn toy(n: usize) -> Self {
        Self::new(Workload::Toy, n)
    }

    pub fn generated(dim: usize, class: MatrixClass, seed: u64, n: usize) -> Self {
        Self::new(Workload::Generated { dim, class, seed }, n)
    }

    fn new(workload: Workload, n: usize) -> Self {
        Self {
            workload,
            n,
            strategies: StrategyKind::ALL.to_vec(),
            rigor: Rigor::Fast,
            x0_radius: Self::DEFAULT_X0_RADIUS,
            b_radius: Self::DEFAULT_B_RADIUS,
            condense: None,
        }
    }

    pub fn with_strategies(mut self, strategies: Vec<StrategyKind>) -> Self {
        self.strategies = strategies;
        self
    }

    pub fn with_rigor(mut self, rigor: Rigor) -> Self {
        self.rigor = rigor;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidArgument(
                "iterations must be at least 1".into(),
            ));
        }
        if let Workload::Generated { dim, .. } = self.workload {
            if dim < 2 {
                return Err(Error::InvalidArgument(format!(
                    "dimension must be at least 2, got {dim}"
                )));
            }
        }
        for (name, r) in [("x0", self.x0_radius), ("b", self.b_radius)] {
            if !(r >= 0.0 && r.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "{name} radius must be finite and non-negative, got {r}"
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        match self.workload {
            Workload::Toy => 2,
            Workload::Generated { dim, .. } => dim,
        }
    }

    pub fn class_label(&self) -> String {
        match self.workload {
            Workload::Toy => "toy".into(),
            Workload::Generated { class, .. } => class.to_string(),
        }
    }

    /// Builds the iteration problem: the toy, or a generated matrix with
    /// zero-centred boxes of the configured radii.
    pub fn problem(&self) -> Result<IterationProblem> {
        self.validate()?;
        let p = match self.workload {
            Workload::Toy => toy::problem_with(self.n, self.rigor),
            Workload::Generated { dim, class, seed } => {
                let g = gen_matrix(dim, class, seed)?;
                let zeros = vec![0.0; dim];
                IterationProblem::new(
                    g.a,
                    IntervalVector::centered(&zeros, self.b_radius)?,
                    IntervalVector::centered(&zeros, self.x0_radius)?,
                    self.n,
                    self.rigor,
                )?
            }
        };
        Ok(p.with_condense(self.condense))
    }
}
