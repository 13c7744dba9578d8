//! Interval enclosures of the affine iteration `x <- A x + b`.
//!
//! The crate bundles everything needed to study the wrapping effect on this
//! iteration: outward-rounded interval arithmetic, affine arithmetic, the
//! floating-point factorizations that drive the coordinate-change strategies,
//! seven enclosure strategies, and a small experiment harness (matrix
//! generator, theoretical width bounds, CSV traces and timings).
//!
//! ```
//! use wrapeffect::{strategies, toy};
//!
//! let problem = toy::problem(10);
//! let trace = strategies::run_naive(&problem).unwrap();
//! assert_eq!(trace.rows.len(), 11);
//! ```

pub mod affine;
pub mod error;
pub mod genbench;
pub mod interval;
pub mod linalg;
pub mod matrix;
pub mod strategies;
pub mod toy;

pub use affine::{AffineForm, AffineVector};
pub use error::{Error, Result};
pub use interval::{mat_vec, Interval, IntervalMatrix, IntervalVector};
pub use matrix::Matrix;
pub use strategies::{IterationProblem, Rigor, StrategyKind, Trace, TraceRow};
