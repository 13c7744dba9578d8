//! Directed rounding on top of round-to-nearest.
//!
//! Every helper computes the round-to-nearest result and then recovers the
//! exact rounding error with an error-free transformation (TwoSum, or an FMA
//! residual for products). The nearest result is moved by one float only
//! when it lies on the wrong side of the exact value, so the output equals
//! the correctly rounded directed result whenever the error term is exact.
//! When it may not be (products in the deep subnormal range) the result is
//! widened unconditionally by one step. Overflow saturates: rounding a
//! finite overflowing value toward zero yields `±f64::MAX`.

/// Below this magnitude an FMA product residual may itself be rounded.
const TINY_PRODUCT: f64 = 1.0e-288; // ~2^-956

/// Greatest binary64 strictly below `x`; `-inf` stays `-inf`.
#[inline]
pub fn next_down(x: f64) -> f64 {
    x.next_down()
}

/// Least binary64 strictly above `x`; `+inf` stays `+inf`.
#[inline]
pub fn next_up(x: f64) -> f64 {
    x.next_up()
}

#[inline]
fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

#[inline]
pub fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if s.is_finite() {
        if two_sum_err(a, b, s) < 0.0 {
            s.next_down()
        } else {
            s
        }
    } else if s == f64::INFINITY && a.is_finite() && b.is_finite() {
        f64::MAX
    } else {
        s
    }
}

#[inline]
pub fn add_up(a: f64, b: f64) -> f64 {
    -add_down(-a, -b)
}

#[inline]
pub fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

#[inline]
pub fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

#[inline]
pub fn mul_down(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if !p.is_finite() {
        return if p == f64::INFINITY && a.is_finite() && b.is_finite() {
            f64::MAX
        } else {
            p
        };
    }
    if p.abs() < TINY_PRODUCT {
        return p.next_down();
    }
    if a.mul_add(b, -p) < 0.0 {
        p.next_down()
    } else {
        p
    }
}

#[inline]
pub fn mul_up(a: f64, b: f64) -> f64 {
    -mul_down(-a, b)
}

/// Upward-rounded quotient. Rounding is by one unconditional step, which is
/// enough for the few scalar bounds that need it.
#[inline]
pub fn div_up(a: f64, b: f64) -> f64 {
    let q = a / b;
    if q.is_finite() {
        q.next_up()
    } else {
        q
    }
}

/// Upward-rounded sum of a sequence.
pub fn sum_up(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, add_up)
}

/// Upward-rounded square root of a non-negative value.
#[inline]
pub fn sqrt_up(x: f64) -> f64 {
    let r = x.sqrt();
    if !r.is_finite() || r == 0.0 {
        r
    } else if x < TINY_PRODUCT || r.mul_add(r, -x) < 0.0 {
        r.next_up()
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neighbours() {
        assert_eq!(next_up(0.0), f64::from_bits(1));
        assert_eq!(next_up(0.0), 2f64.powi(-1074));
        assert_eq!(next_down(1.0), 1.0 - 2f64.powi(-53));
        assert_eq!(next_down(f64::NEG_INFINITY), f64::NEG_INFINITY);
        assert_eq!(next_up(f64::INFINITY), f64::INFINITY);
        for x in [1.0, -3.5, 1e300, -1e-300, 0.1] {
            assert_eq!(next_up(next_down(x)), x);
        }
    }

    #[test]
    fn exact_sums_are_not_widened() {
        assert_eq!(add_down(1.0, 2.0), 3.0);
        assert_eq!(add_up(1.0, 2.0), 3.0);
        assert_eq!(mul_down(3.0, 0.5), 1.5);
        assert_eq!(mul_up(3.0, 0.5), 1.5);
    }

    #[test]
    fn inexact_sum_brackets() {
        let lo = add_down(0.1, 0.2);
        let hi = add_up(0.1, 0.2);
        assert!(lo < hi);
        assert_eq!(next_up(lo), hi);
    }

    #[test]
    fn overflow_saturates() {
        assert_eq!(add_down(f64::MAX, f64::MAX), f64::MAX);
        assert_eq!(add_up(f64::MAX, f64::MAX), f64::INFINITY);
        assert_eq!(mul_down(1e200, 1e200), f64::MAX);
        assert_eq!(mul_up(1e200, 1e200), f64::INFINITY);
        assert_eq!(mul_up(-1e200, 1e200), -f64::MAX);
        assert_eq!(mul_down(-1e200, 1e200), f64::NEG_INFINITY);
    }

    #[test]
    fn zero_times_infinity_is_zero() {
        assert_eq!(mul_down(0.0, f64::INFINITY), 0.0);
        assert_eq!(mul_up(f64::NEG_INFINITY, 0.0), 0.0);
    }

    #[test]
    fn tiny_products_are_widened() {
        let a = 1e-200;
        let lo = mul_down(a, a);
        let hi = mul_up(a, a);
        assert!(lo < hi);
        assert!(lo <= 0.0 && hi > 0.0);
    }
}
