use std::ops::Index;

use super::Interval;
use crate::error::{Error, Result};
use crate::matrix::{norm2, Matrix};

/// Interval vector (a box in R^d), `d >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalVector {
    elems: Vec<Interval>,
}

/// Per-component midpoint, radius and width of a box.
#[derive(Clone, Debug, PartialEq)]
pub struct Metrics {
    pub mid: Vec<f64>,
    pub rad: Vec<f64>,
    pub wid: Vec<f64>,
    /// False when some component is unbounded (its rad/wid are `+inf`).
    pub bounded: bool,
}

impl IntervalVector {
    pub fn new(elems: Vec<Interval>) -> Result<Self> {
        if elems.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Self { elems })
    }

    pub fn from_bounds(bounds: &[(f64, f64)]) -> Result<Self> {
        let elems = bounds
            .iter()
            .map(|&(lo, hi)| Interval::new(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        Self::new(elems)
    }

    pub fn from_points(points: &[f64]) -> Result<Self> {
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite);
        }
        Self::new(points.iter().map(|&p| Interval::point(p)).collect())
    }

    /// Box `[c_i - r, c_i + r]` with one radius for every component.
    pub fn centered(centers: &[f64], radius: f64) -> Result<Self> {
        let elems = centers
            .iter()
            .map(|&c| Interval::centered(c, radius))
            .collect::<Result<Vec<_>>>()?;
        Self::new(elems)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interval> {
        self.elems.iter()
    }

    pub fn as_slice(&self) -> &[Interval] {
        &self.elems
    }

    pub fn is_bounded(&self) -> bool {
        self.elems.iter().all(|x| x.is_bounded())
    }

    pub fn metrics(&self) -> Metrics {
        Metrics {
            mid: self.elems.iter().map(|x| x.mid()).collect(),
            rad: self.rad(),
            wid: self.wid(),
            bounded: self.is_bounded(),
        }
    }

    pub fn mid(&self) -> Vec<f64> {
        self.elems.iter().map(|x| x.mid()).collect()
    }

    pub fn rad(&self) -> Vec<f64> {
        self.elems.iter().map(|x| x.rad()).collect()
    }

    pub fn wid(&self) -> Vec<f64> {
        self.elems.iter().map(|x| x.wid()).collect()
    }

    /// Largest component radius.
    pub fn rad_inf(&self) -> f64 {
        self.elems.iter().map(|x| x.rad()).fold(0.0, f64::max)
    }

    /// Euclidean norm of the radius vector, scaled to avoid overflow of the
    /// squares (radii near 1e170 are routine).
    pub fn rad_2(&self) -> f64 {
        norm2(&self.rad())
    }

    /// Componentwise enclosure of `self + other`.
    pub fn add(&self, other: &IntervalVector) -> Result<IntervalVector> {
        check_len(self.len(), other.len())?;
        Ok(IntervalVector {
            elems: self
                .elems
                .iter()
                .zip(&other.elems)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    pub fn hull(&self, other: &IntervalVector) -> Result<IntervalVector> {
        check_len(self.len(), other.len())?;
        Ok(IntervalVector {
            elems: self
                .elems
                .iter()
                .zip(&other.elems)
                .map(|(&a, &b)| a.hull(b))
                .collect(),
        })
    }

    pub fn contains_point(&self, p: &[f64]) -> bool {
        p.len() == self.len() && self.elems.iter().zip(p).all(|(x, &v)| x.contains(v))
    }

    pub fn subset(&self, other: &IntervalVector) -> bool {
        self.len() == other.len()
            && self
                .elems
                .iter()
                .zip(&other.elems)
                .all(|(a, &b)| a.subset(b))
    }
}

impl Index<usize> for IntervalVector {
    type Output = Interval;

    fn index(&self, i: usize) -> &Interval {
        &self.elems[i]
    }
}

impl FromIterator<Interval> for IntervalVector {
    /// Panics on an empty iterator.
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> Self {
        IntervalVector::new(iter.into_iter().collect()).expect("empty interval vector")
    }
}

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// Enclosure of `{A ξ : ξ ∈ x}` for a point matrix `A`.
///
/// Row `i` is accumulated as `Σ_j scale(A[i,j], x_j)` with outward-rounded
/// additions.
pub fn mat_vec(a: &Matrix, x: &IntervalVector) -> Result<IntervalVector> {
    check_len(a.cols(), x.len())?;
    if a.rows() == 0 {
        return Err(Error::Empty);
    }
    let elems = (0..a.rows())
        .map(|i| {
            a.row(i)
                .iter()
                .zip(&x.elems)
                .fold(Interval::ZERO, |acc, (&aij, &xj)| acc + xj.scale(aij))
        })
        .collect();
    Ok(IntervalVector { elems })
}
