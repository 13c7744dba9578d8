//! Outward-rounded interval arithmetic over binary64.
//!
//! Endpoints are rounded outward by next-float adjustment of round-to-nearest
//! results; the global rounding mode is never touched, so every function is
//! safe to call from any thread.

mod matrix;
pub mod round;
mod vector;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use round::{add_down, add_up, mul_down, mul_up, sub_up};

pub use matrix::IntervalMatrix;
pub use round::{next_down, next_up};
pub use vector::{mat_vec, IntervalVector, Metrics};

/// Closed interval `[lo, hi]` with `lo <= hi`.
///
/// Endpoints may be infinite (`lo = -inf` or `hi = +inf`) once a computation
/// overflows; such intervals are still valid enclosures.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    /// Degenerate interval `[x, x]`. `x` must be finite.
    pub fn point(x: f64) -> Self {
        assert!(x.is_finite(), "point interval from non-finite value {x}");
        Self { lo: x, hi: x }
    }

    /// `[c - r, c + r]` with outward rounding.
    pub fn centered(c: f64, r: f64) -> Result<Self> {
        if !(r >= 0.0) {
            return Err(Error::InvalidArgument(format!("negative radius {r}")));
        }
        Self::new(round::sub_down(c, r), add_up(c, r))
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn is_bounded(self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn is_degenerate(self) -> bool {
        self.lo == self.hi
    }

    /// Width `hi - lo`, rounded up (`+inf` when unbounded).
    pub fn wid(self) -> f64 {
        sub_up(self.hi, self.lo)
    }

    /// Radius `wid / 2`, rounded up.
    pub fn rad(self) -> f64 {
        mul_up(self.wid(), 0.5)
    }

    /// A binary64 value inside the interval, close to the exact midpoint.
    pub fn mid(self) -> f64 {
        if self.lo == self.hi {
            return self.lo;
        }
        if !self.is_bounded() {
            return match (self.lo.is_finite(), self.hi.is_finite()) {
                (false, false) => 0.0,
                (true, false) => f64::MAX.max(self.lo),
                _ => (-f64::MAX).min(self.hi),
            };
        }
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    /// Magnitude `max |x|` over the interval.
    pub fn mag(self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn hull(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn contains(self, p: f64) -> bool {
        self.lo <= p && p <= self.hi
    }

    /// `self ⊆ other`.
    pub fn subset(self, other: Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Encloses `{c * x : x in self}`.
    #[inline]
    pub fn scale(self, c: f64) -> Interval {
        if c >= 0.0 {
            Interval {
                lo: mul_down(c, self.lo),
                hi: mul_up(c, self.hi),
            }
        } else {
            Interval {
                lo: mul_down(c, self.hi),
                hi: mul_up(c, self.lo),
            }
        }
    }
}

/// Encloses `{c * x : x in x}`; the free-function form of [`Interval::scale`].
pub fn scale(c: f64, x: Interval) -> Interval {
    x.scale(c)
}

impl Add for Interval {
    type Output = Interval;

    #[inline]
    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: add_down(self.lo, rhs.lo),
            hi: add_up(self.hi, rhs.hi),
        }
    }
}

impl Sub for Interval {
    type Output = Interval;

    #[inline]
    fn sub(self, rhs: Interval) -> Interval {
        self + (-rhs)
    }
}

impl Neg for Interval {
    type Output = Interval;

    #[inline]
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;

    /// Four-product min/max rule.
    fn mul(self, rhs: Interval) -> Interval {
        let (a, b, c, d) = (self.lo, self.hi, rhs.lo, rhs.hi);
        let lo = mul_down(a, c)
            .min(mul_down(a, d))
            .min(mul_down(b, c))
            .min(mul_down(b, d));
        let hi = mul_up(a, c)
            .max(mul_up(a, d))
            .max(mul_up(b, c))
            .max(mul_up(b, d));
        Interval { lo, hi }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    fn ulps_apart(a: f64, b: f64) -> u64 {
        (a.to_bits() as i64 - b.to_bits() as i64).unsigned_abs()
    }

    #[test]
    fn rejects_invalid() {
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(f64::NAN, 1.0).is_err());
        assert!(Interval::new(f64::INFINITY, f64::INFINITY).is_err());
        assert!(Interval::new(f64::NEG_INFINITY, f64::INFINITY).is_ok());
    }

    #[test]
    fn add_examples() {
        let s = iv(1.0, 2.0) + iv(3.0, 4.0);
        assert!(s.lo() <= 4.0 && s.hi() >= 6.0);
        assert!(ulps_apart(s.lo(), 4.0) <= 1 && ulps_apart(s.hi(), 6.0) <= 1);

        let b = iv(0.1, 0.7);
        let z = Interval::ZERO + b;
        assert!(b.subset(z));
        assert!(ulps_apart(z.lo(), 0.1) <= 1 && ulps_apart(z.hi(), 0.7) <= 1);
    }

    #[test]
    fn sub_is_not_inverse_of_add() {
        let a = iv(1.0, 1.1);
        let d = a - a;
        assert!(d.lo() <= -0.1 + 1e-16 && d.hi() >= 0.1 - 1e-16);
        assert!(d.contains(0.0));
        assert!(d.wid() > 0.19);
    }

    #[test]
    fn scale_examples() {
        let s = iv(1.0, 1.1).scale(-0.9);
        assert!(s.contains(-0.99) && s.contains(-0.9));
        assert!(s.lo() <= -0.99 && s.hi() >= -0.9);
        // -0.9 * 1.1 is inexact: the lower end is the product rounded down
        assert_eq!(s.lo(), round::mul_down(-0.9, 1.1));
        assert_eq!(s.hi(), -0.9);

        let z = iv(-3.0, 5.0).scale(0.0);
        assert_eq!(z, Interval::ZERO);
    }

    #[test]
    fn mul_four_products() {
        // endpoint products of [-1,2]*[-3,1]: 3, -1, -6, 2
        let p = iv(-1.0, 2.0) * iv(-3.0, 1.0);
        assert_eq!((p.lo(), p.hi()), (-6.0, 3.0));
    }

    #[test]
    fn metrics_of_toy_component() {
        let x = iv(1.0, 1.1);
        // 1.1 - 1.0 is exact, and a few ulps above 0.1
        assert_eq!(x.wid(), 1.1 - 1.0);
        assert!(x.wid() >= 1.1 - 1.0);
        assert!(x.contains(x.mid()));
        let c = Interval::point(2.5);
        assert_eq!((c.wid(), c.mid()), (0.0, 2.5));
    }

    #[test]
    fn hull_and_containment() {
        assert_eq!(iv(1.0, 2.0).hull(iv(3.0, 4.0)), iv(1.0, 4.0));
        assert!(iv(1.0, 1.1).contains(1.05));
        assert!(!iv(1.0, 1.1).contains(1.2));
        assert!(iv(1.0, 2.0).subset(iv(0.0, 2.0)));
        assert!(!iv(1.0, 2.0).subset(iv(1.5, 2.0)));
    }

    #[test]
    fn unbounded_metrics() {
        let u = iv(0.0, f64::INFINITY);
        assert_eq!(u.wid(), f64::INFINITY);
        assert_eq!(u.rad(), f64::INFINITY);
        assert!(u.contains(u.mid()));
    }
}
