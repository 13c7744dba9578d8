//! Enclosure strategies for `x_{n+1} = A x_n + b` with interval `x_0`, `b`.
//!
//! Every strategy reports the radii of its enclosure of `x_k` in the original
//! coordinates. [`run`] produces a [`Trace`]; [`enclosures`] returns the boxes
//! themselves, which is what containment checks need.

mod affine;
mod basis;
mod kstep;
mod lohner;
mod naive;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::interval::IntervalVector;
use crate::linalg::{perron_root, rho_estimate};
use crate::matrix::Matrix;

pub use self::affine::{run_affine, AffineRounding};
pub use self::basis::{run_qr, run_svd_u, run_svd_v};
pub use self::kstep::{find_k, run_kstep, run_kstep_with, KPower};
pub use self::lohner::run_lohner;
pub use self::naive::run_naive;

/// Iteration halts once `rad_inf` exceeds this (or is infinite).
pub const DIVERGENCE_CUTOFF: f64 = 1e300;
/// `find_k` accepts `k` once `perron_root(|A^k|)` drops below this.
pub const K_THRESHOLD: f64 = 0.999;
pub const DEFAULT_KMAX: usize = 4096;

/// Whether transition matrices are point products (`Fast`) or rigorous
/// interval enclosures (`Verified`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Rigor {
    #[default]
    Fast,
    Verified,
}

impl Rigor {
    pub fn name(self) -> &'static str {
        match self {
            Rigor::Fast => "fast",
            Rigor::Verified => "verified",
        }
    }
}

impl fmt::Display for Rigor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rigor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Rigor::Fast),
            "verified" => Ok(Rigor::Verified),
            _ => Err(Error::InvalidArgument(format!(
                "unknown rigor mode {s:?} (expected fast or verified)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StrategyKind {
    Naive,
    Qr,
    SvdU,
    SvdV,
    Lohner,
    Kstep,
    Affine,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 7] = [
        StrategyKind::Naive,
        StrategyKind::Qr,
        StrategyKind::SvdU,
        StrategyKind::SvdV,
        StrategyKind::Lohner,
        StrategyKind::Kstep,
        StrategyKind::Affine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::Naive => "naive",
            StrategyKind::Qr => "qr",
            StrategyKind::SvdU => "svd_u",
            StrategyKind::SvdV => "svd_v",
            StrategyKind::Lohner => "lohner",
            StrategyKind::Kstep => "kstep",
            StrategyKind::Affine => "affine",
        }
    }

    /// Parses a comma-separated list such as `naive,qr,affine`. Duplicates
    /// are dropped; the result is in canonical order.
    pub fn parse_list(s: &str) -> Result<Vec<StrategyKind>> {
        let mut kinds = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<StrategyKind>>>()?;
        kinds.sort();
        kinds.dedup();
        Ok(kinds)
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StrategyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown strategy {s:?} (expected one of naive, qr, svd_u, svd_v, lohner, kstep, affine)"
                ))
            })
    }
}

/// `x_{n+1} = A x_n + b`, iterated `n` times from the box `x0`.
#[derive(Clone, Debug)]
pub struct IterationProblem {
    a: Matrix,
    b: IntervalVector,
    x0: IntervalVector,
    n: usize,
    rigor: Rigor,
    condense: Option<usize>,
    affine_rounding: AffineRounding,
    kmax: usize,
}

/// Spectral quantities that decide whether a problem shows the wrapping
/// effect: `ρ(A) < 1 < ρ(|A|)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Regime {
    pub rho: f64,
    pub perron_abs: f64,
}

impl Regime {
    pub fn is_wrapping(&self) -> bool {
        self.rho < 1.0 && self.perron_abs > 1.0
    }
}

impl IterationProblem {
    pub fn new(
        a: Matrix,
        b: IntervalVector,
        x0: IntervalVector,
        n: usize,
        rigor: Rigor,
    ) -> Result<Self> {
        let d = a.ensure_square()?;
        if !a.is_finite() {
            return Err(Error::NonFinite);
        }
        for len in [b.len(), x0.len()] {
            if len != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: len,
                });
            }
        }
        Ok(Self {
            a,
            b,
            x0,
            n,
            rigor,
            condense: None,
            affine_rounding: AffineRounding::default(),
            kmax: DEFAULT_KMAX,
        })
    }

    /// Keep at most `keep` noise symbols per affine form (`None`: no limit).
    pub fn with_condense(mut self, keep: Option<usize>) -> Self {
        self.condense = keep;
        self
    }

    pub fn with_affine_rounding(mut self, mode: AffineRounding) -> Self {
        self.affine_rounding = mode;
        self
    }

    pub fn with_kmax(mut self, kmax: usize) -> Self {
        self.kmax = kmax;
        self
    }

    pub fn with_iterations(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn with_rigor(mut self, rigor: Rigor) -> Self {
        self.rigor = rigor;
        self
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &IntervalVector {
        &self.b
    }

    pub fn x0(&self) -> &IntervalVector {
        &self.x0
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn rigor(&self) -> Rigor {
        self.rigor
    }

    pub fn condense(&self) -> Option<usize> {
        self.condense
    }

    pub fn affine_rounding(&self) -> AffineRounding {
        self.affine_rounding
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    /// Estimates `ρ(A)` and `ρ(|A|)`. Problems outside the wrapping regime
    /// are still valid; callers decide whether to warn.
    pub fn regime(&self) -> Result<Regime> {
        Ok(Regime {
            rho: rho_estimate(&self.a)?.value,
            perron_abs: perron_root(&self.a.abs())?.value,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceRow {
    pub iter: usize,
    pub rad_inf: f64,
    pub rad_2: f64,
    /// Time since the strategy started, including setup.
    pub elapsed_ns: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub strategy: StrategyKind,
    pub rows: Vec<TraceRow>,
    pub wall_ns: u64,
    pub diverged_at: Option<usize>,
}

impl Trace {
    pub fn last(&self) -> Option<&TraceRow> {
        self.rows.last()
    }

    /// Row for iteration `iter`, if the strategy recorded one.
    pub fn at(&self, iter: usize) -> Option<&TraceRow> {
        self.rows
            .binary_search_by_key(&iter, |r| r.iter)
            .ok()
            .map(|i| &self.rows[i])
    }

    pub fn max_rad_inf(&self) -> f64 {
        self.rows.iter().map(|r| r.rad_inf).fold(0.0, f64::max)
    }
}

/// Callback receiving each enclosure; returning `false` stops the run.
pub(crate) type Visit<'a> = dyn FnMut(usize, &IntervalVector) -> bool + 'a;

pub(crate) fn diverged(x: &IntervalVector) -> bool {
    let r = x.rad_inf();
    !(r <= DIVERGENCE_CUTOFF)
}

fn drive(kind: StrategyKind, p: &IterationProblem, visit: &mut Visit<'_>) -> Result<()> {
    match kind {
        StrategyKind::Naive => naive::drive(p, visit),
        StrategyKind::Qr => basis::drive_qr(p, visit),
        StrategyKind::SvdU => basis::drive_svd_u(p, visit),
        StrategyKind::SvdV => basis::drive_svd_v(p, visit),
        StrategyKind::Lohner => lohner::drive(p, visit),
        StrategyKind::Kstep => kstep::drive(p, None, visit),
        StrategyKind::Affine => affine::drive(p, visit),
    }
}

pub(crate) fn record(
    kind: StrategyKind,
    f: impl FnOnce(&mut Visit<'_>) -> Result<()>,
) -> Result<Trace> {
    let start = Instant::now();
    let mut rows = Vec::new();
    let mut diverged_at = None;
    f(&mut |iter, x: &IntervalVector| {
        rows.push(TraceRow {
            iter,
            rad_inf: x.rad_inf(),
            rad_2: x.rad_2(),
            elapsed_ns: start.elapsed().as_nanos() as u64,
        });
        if diverged(x) {
            diverged_at = Some(iter);
            return false;
        }
        true
    })?;
    Ok(Trace {
        strategy: kind,
        rows,
        wall_ns: start.elapsed().as_nanos() as u64,
        diverged_at,
    })
}

/// Runs one strategy and records its radii.
pub fn run(kind: StrategyKind, p: &IterationProblem) -> Result<Trace> {
    record(kind, |visit| drive(kind, p, visit))
}

/// Enclosures `(iter, box)` of the iterates in original coordinates, in the
/// same rows as [`run`] would record.
pub fn enclosures(
    kind: StrategyKind,
    p: &IterationProblem,
) -> Result<Vec<(usize, IntervalVector)>> {
    let mut out = Vec::new();
    drive(kind, p, &mut |iter, x: &IntervalVector| {
        out.push((iter, x.clone()));
        !diverged(x)
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for k in StrategyKind::ALL {
            assert_eq!(k.name().parse::<StrategyKind>().unwrap(), k);
        }
        assert!("brute".parse::<StrategyKind>().is_err());
        assert_eq!("verified".parse::<Rigor>().unwrap(), Rigor::Verified);
    }

    #[test]
    fn list_is_canonical() {
        let l = StrategyKind::parse_list("affine, naive,affine").unwrap();
        assert_eq!(l, vec![StrategyKind::Naive, StrategyKind::Affine]);
        assert!(StrategyKind::parse_list("").unwrap().is_empty());
    }

    #[test]
    fn problem_validates_dimensions() {
        let a = Matrix::identity(2);
        let b = IntervalVector::from_points(&[0.0, 0.0, 0.0]).unwrap();
        let x0 = IntervalVector::from_points(&[0.0, 0.0]).unwrap();
        assert!(matches!(
            IterationProblem::new(a, b, x0, 3, Rigor::Fast),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
