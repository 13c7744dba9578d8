//! Shared test helpers: exact dyadic arithmetic and Monte-Carlo trajectories.
#![allow(dead_code)]

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wrapeffect::{IntervalVector, Matrix};

/// Width of component 1 of the toy iterate `x_n` from the filter example's
/// width table, as (n, width).
pub const TOY_WIDTHS: [(usize, f64); 25] = [
    (1, 0.1000),
    (2, 0.1941),
    (3, 0.4535),
    (4, 1.0051),
    (5, 2.2313),
    (6, 4.9350),
    (7, 10.905),
    (8, 24.085),
    (9, 53.182),
    (10, 117.42),
    (12, 572.31),
    (15, 6158.0),
    (20, 3.2293e5),
    (30, 8.8808e8),
    (40, 2.4423e12),
    (50, 6.7164e15),
    (60, 1.8470e19),
    (70, 5.0794e22),
    (80, 1.3969e26),
    (90, 3.8415e29),
    (100, 1.0564e33),
    (200, 2.6137e67),
    (300, 6.4663e101),
    (400, 1.5998e136),
    (500, 3.9580e170),
];

/// Exact binary rational `mant · 2^exp`.
#[derive(Clone, Debug)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite());
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Dyadic {
            mant: BigInt::from(m) * sign,
            exp: e,
        }
        .normalized()
    }

    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
        self
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.mant.is_zero() {
            return other.clone();
        }
        if other.mant.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        Dyadic {
            mant: a + b,
            exp: e,
        }
        .normalized()
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
        }
        .normalized()
    }

    pub fn cmp_f64(&self, x: f64) -> Ordering {
        if x == f64::INFINITY {
            return Ordering::Less;
        }
        if x == f64::NEG_INFINITY {
            return Ordering::Greater;
        }
        let diff = self.add(&Dyadic::from_f64(-x));
        if diff.mant.is_zero() {
            Ordering::Equal
        } else if diff.mant.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    pub fn to_f64(&self) -> f64 {
        // good enough for diagnostics
        let bits = self.mant.bits() as i64;
        let shift = (bits - 60).max(0);
        let m: f64 = (&self.mant >> shift as usize).to_string().parse().unwrap();
        m * 2f64.powi((self.exp + shift) as i32)
    }
}

/// Point of the box drawn uniformly, or a corner when `corner` is given
/// (bit i selects the upper end of component i).
pub fn sample_box(x: &IntervalVector, rng: &mut impl Rng, corner: Option<u64>) -> Vec<f64> {
    x.iter()
        .enumerate()
        .map(|(i, iv)| match corner {
            Some(c) => {
                if (c >> i) & 1 == 1 {
                    iv.hi()
                } else {
                    iv.lo()
                }
            }
            None => {
                let t: f64 = rng.random();
                (iv.lo() + t * (iv.hi() - iv.lo())).clamp(iv.lo(), iv.hi())
            }
        })
        .collect()
}

/// Exact trajectory `x_{k+1} = A x_k + b` for `k = 0..=n`.
pub fn exact_trajectory(a: &Matrix, x0: &[f64], b: &[f64], n: usize) -> Vec<Vec<Dyadic>> {
    let d = x0.len();
    let a: Vec<Vec<Dyadic>> = (0..d)
        .map(|i| (0..d).map(|j| Dyadic::from_f64(a[(i, j)])).collect())
        .collect();
    let b: Vec<Dyadic> = b.iter().map(|&v| Dyadic::from_f64(v)).collect();
    let mut x: Vec<Dyadic> = x0.iter().map(|&v| Dyadic::from_f64(v)).collect();
    let mut out = Vec::with_capacity(n + 1);
    out.push(x.clone());
    for _ in 0..n {
        x = (0..d)
            .map(|i| (0..d).fold(b[i].clone(), |acc, j| acc.add(&a[i][j].mul(&x[j]))))
            .collect();
        out.push(x.clone());
    }
    out
}

/// `count` exact trajectories: every corner combination of `x0` and `b`
/// first (as far as `count` allows), then uniform interior samples.
pub fn monte_carlo(
    a: &Matrix,
    x0: &IntervalVector,
    b: &IntervalVector,
    n: usize,
    count: usize,
    seed: u64,
) -> Vec<Vec<Vec<Dyadic>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = x0.len() as u32;
    let corners = if 2 * d < 12 { 1u64 << (2 * d) } else { 0 };
    (0..count)
        .map(|t| {
            let (xs, bs) = if (t as u64) < corners {
                let c = t as u64;
                (
                    sample_box(x0, &mut rng, Some(c & ((1 << d) - 1))),
                    sample_box(b, &mut rng, Some(c >> d)),
                )
            } else {
                (
                    sample_box(x0, &mut rng, None),
                    sample_box(b, &mut rng, None),
                )
            };
            exact_trajectory(a, &xs, &bs, n)
        })
        .collect()
}

/// Number of (trajectory, iteration) pairs that fall outside the boxes,
/// optionally allowing `slack · max(1, |endpoint|)` extra on each side.
pub fn violations(
    boxes: &[(usize, IntervalVector)],
    trajectories: &[Vec<Vec<Dyadic>>],
    slack: f64,
) -> usize {
    let mut bad = 0;
    for traj in trajectories {
        for (iter, bx) in boxes {
            let point = &traj[*iter];
            let outside = bx.iter().zip(point).any(|(iv, v)| {
                let lo = iv.lo() - slack * iv.lo().abs().max(1.0);
                let hi = iv.hi() + slack * iv.hi().abs().max(1.0);
                v.cmp_f64(lo) == Ordering::Less || v.cmp_f64(hi) == Ordering::Greater
            });
            if outside {
                bad += 1;
            }
        }
    }
    bad
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}
