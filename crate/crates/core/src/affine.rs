//! Affine arithmetic over vectors sharing one noise-symbol space.
//!
//! A form `c + Σ a_i ε_i ± e` represents every value reachable with
//! `ε_i ∈ [-1, 1]` and a deviation `|δ| ≤ e`. Forms are combined with the
//! usual scalar operations; every floating-point rounding committed on the
//! center or on a coefficient is recovered exactly (FMA residual or TwoSum)
//! and its magnitude is added, rounded up, to `e`. Rounding never creates
//! fresh symbols, so iterating an affine map keeps the symbol count fixed;
//! [`AffineVector::errors_to_symbols`] trades that for sign-aware error
//! propagation when called between steps.

use crate::error::{Error, Result};
use crate::interval::round::{add_up, mul_up, sub_down};
use crate::interval::{Interval, IntervalVector};
use crate::matrix::Matrix;

const TINY_PRODUCT: f64 = 1.0e-288;
const MIN_SUBNORMAL: f64 = f64::from_bits(1);

/// Noise-symbol identifier.
pub type Symbol = u32;

#[derive(Clone, Debug, PartialEq)]
pub struct AffineForm {
    center: f64,
    /// Sorted by symbol, no duplicates, no zero coefficients.
    terms: Vec<(Symbol, f64)>,
    err: f64,
}

/// Product `a * b` together with an upper bound on its rounding error.
#[inline]
fn mul_with_err(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    if !p.is_finite() {
        return (p, f64::INFINITY);
    }
    if p == 0.0 && (a == 0.0 || b == 0.0) {
        return (0.0, 0.0);
    }
    if p.abs() < TINY_PRODUCT {
        return (p, add_up(mul_up(p.abs(), f64::EPSILON), MIN_SUBNORMAL));
    }
    (p, a.mul_add(b, -p).abs())
}

/// Upper bound on the exact sum of `count` non-negative terms whose
/// round-to-nearest recursive sum is `computed`: `S ≤ Ŝ (1 + 2 count u)`.
#[inline]
fn bound_nonneg_sum(computed: f64, count: usize) -> f64 {
    let factor = add_up(1.0, mul_up(count as f64, f64::EPSILON));
    mul_up(computed, factor)
}

/// Sum `a + b` together with its exact rounding error magnitude.
#[inline]
fn add_with_err(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    if !s.is_finite() {
        return (s, f64::INFINITY);
    }
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e.abs())
}

impl AffineForm {
    pub fn constant(c: f64) -> Self {
        Self {
            center: c,
            terms: Vec::new(),
            err: 0.0,
        }
    }

    /// Builds a form; terms are sorted and merged, zero coefficients dropped.
    pub fn new(
        center: f64,
        terms: impl IntoIterator<Item = (Symbol, f64)>,
        err: f64,
    ) -> Result<Self> {
        if !(err >= 0.0) || center.is_nan() {
            return Err(Error::InvalidArgument(format!(
                "affine form with center {center} and error {err}"
            )));
        }
        let mut terms: Vec<(Symbol, f64)> = terms.into_iter().collect();
        if terms.iter().any(|(_, c)| c.is_nan()) {
            return Err(Error::InvalidArgument("NaN coefficient".into()));
        }
        terms.sort_by_key(|t| t.0);
        let mut merged: Vec<(Symbol, f64)> = Vec::with_capacity(terms.len());
        let mut err = err;
        for (s, c) in terms {
            match merged.last_mut() {
                Some(last) if last.0 == s => {
                    let (sum, e) = add_with_err(last.1, c);
                    last.1 = sum;
                    err = add_up(err, e);
                }
                _ => merged.push((s, c)),
            }
        }
        merged.retain(|t| t.1 != 0.0);
        Ok(Self {
            center,
            terms: merged,
            err,
        })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn terms(&self) -> &[(Symbol, f64)] {
        &self.terms
    }

    pub fn err(&self) -> f64 {
        self.err
    }

    /// Total deviation `Σ|a_i| + e`, rounded up.
    pub fn radius(&self) -> f64 {
        self.terms
            .iter()
            .fold(self.err, |acc, (_, c)| add_up(acc, c.abs()))
    }

    pub fn to_interval(&self) -> Interval {
        let r = self.radius();
        let lo = sub_down(self.center, r);
        let hi = add_up(self.center, r);
        Interval::new(lo, hi).unwrap_or_else(|_| {
            Interval::new(f64::NEG_INFINITY, f64::INFINITY).expect("entire line")
        })
    }

    /// Concrete value for one assignment of the noise symbols (missing
    /// symbols are taken as zero) and the error term.
    pub fn evaluate(&self, eps: impl Fn(Symbol) -> f64, delta: f64) -> f64 {
        self.center + self.terms.iter().map(|&(s, c)| c * eps(s)).sum::<f64>() + delta * self.err
    }

    /// `c * self`.
    pub fn scale(&self, c: f64) -> AffineForm {
        let (center, mut err) = mul_with_err(c, self.center);
        err = add_up(err, mul_up(c.abs(), self.err));
        let mut terms = Vec::with_capacity(self.terms.len());
        for &(s, a) in &self.terms {
            let (p, e) = mul_with_err(c, a);
            err = add_up(err, e);
            if p != 0.0 {
                terms.push((s, p));
            }
        }
        AffineForm { center, terms, err }
    }

    /// `self + other`, merging coefficients of shared symbols.
    pub fn add(&self, other: &AffineForm) -> AffineForm {
        let (center, mut err) = add_with_err(self.center, other.center);
        err = add_up(err, add_up(self.err, other.err));
        let mut terms = Vec::with_capacity(self.terms.len().max(other.terms.len()));
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let next = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                i += 1;
                a[i - 1]
            } else if i >= a.len() || b[j].0 < a[i].0 {
                j += 1;
                b[j - 1]
            } else {
                let (s, e) = add_with_err(a[i].1, b[j].1);
                err = add_up(err, e);
                i += 1;
                j += 1;
                (a[i - 1].0, s)
            };
            if next.1 != 0.0 {
                terms.push(next);
            }
        }
        AffineForm { center, terms, err }
    }

    /// Keeps the `keep` largest-magnitude coefficients and folds the others
    /// into the error term.
    pub fn condense(&self, keep: usize) -> AffineForm {
        if self.terms.len() <= keep {
            return self.clone();
        }
        let mut by_mag: Vec<(Symbol, f64)> = self.terms.clone();
        by_mag.sort_by(|x, y| y.1.abs().total_cmp(&x.1.abs()).then(x.0.cmp(&y.0)));
        let err = by_mag[keep..]
            .iter()
            .fold(self.err, |acc, (_, c)| add_up(acc, c.abs()));
        let mut terms: Vec<(Symbol, f64)> = by_mag[..keep].to_vec();
        terms.sort_by_key(|t| t.0);
        AffineForm {
            center: self.center,
            terms,
            err,
        }
    }
}

/// Vector of affine forms over a shared symbol space.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineVector {
    forms: Vec<AffineForm>,
    next_symbol: Symbol,
}

impl AffineVector {
    /// Lifts a bounded box, one fresh symbol per non-degenerate component.
    pub fn from_box(x: &IntervalVector) -> Result<Self> {
        Self::from_box_after(x, 0)
    }

    /// Like [`AffineVector::from_box`], numbering fresh symbols from `first`
    /// so the result can share a space with an existing vector.
    pub fn from_box_after(x: &IntervalVector, first: Symbol) -> Result<Self> {
        if !x.is_bounded() {
            return Err(Error::Unbounded);
        }
        let mut next = first;
        let forms = x
            .iter()
            .map(|iv| {
                let center = iv.mid();
                let coef = 0.5 * iv.hi() - 0.5 * iv.lo();
                let needed = (add_up(iv.hi(), -center)).max(add_up(center, -iv.lo()));
                let err = if needed > coef {
                    add_up(needed, -coef)
                } else {
                    0.0
                };
                let terms = if coef > 0.0 {
                    let s = next;
                    next += 1;
                    vec![(s, coef)]
                } else {
                    Vec::new()
                };
                AffineForm { center, terms, err }
            })
            .collect();
        Ok(Self {
            forms,
            next_symbol: next,
        })
    }

    pub fn from_forms(forms: Vec<AffineForm>) -> Result<Self> {
        if forms.is_empty() {
            return Err(Error::Empty);
        }
        let next_symbol = forms
            .iter()
            .flat_map(|f| f.terms.iter().map(|t| t.0 + 1))
            .max()
            .unwrap_or(0);
        Ok(Self { forms, next_symbol })
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn forms(&self) -> &[AffineForm] {
        &self.forms
    }

    pub fn next_symbol(&self) -> Symbol {
        self.next_symbol
    }

    /// Number of distinct symbols carrying a nonzero coefficient.
    pub fn symbol_count(&self) -> usize {
        let mut seen: Vec<Symbol> = self
            .forms
            .iter()
            .flat_map(|f| f.terms.iter().map(|t| t.0))
            .collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    pub fn to_box(&self) -> IntervalVector {
        self.forms.iter().map(|f| f.to_interval()).collect()
    }

    /// Moves each nonzero error term onto a fresh symbol of its own, so later
    /// linear maps propagate it with signs instead of through `|A|`.
    pub fn errors_to_symbols(&self) -> AffineVector {
        let mut next = self.next_symbol;
        let forms = self
            .forms
            .iter()
            .map(|f| {
                let mut g = f.clone();
                if g.err > 0.0 && g.err.is_finite() {
                    g.terms.push((next, g.err));
                    g.err = 0.0;
                    next += 1;
                }
                g
            })
            .collect();
        AffineVector {
            forms,
            next_symbol: next,
        }
    }

    /// `keep = None` leaves the vector untouched.
    pub fn condense(&self, keep: Option<usize>) -> AffineVector {
        match keep {
            None => self.clone(),
            Some(k) => AffineVector {
                forms: self.forms.iter().map(|f| f.condense(k)).collect(),
                next_symbol: self.next_symbol,
            },
        }
    }
}

/// `A x + b` evaluated form by form with affine scalar operations.
///
/// Output `i` is `(Σ_j A[i,j]·x_j) + b_i`; each product and each sum carries
/// its rounding error into the error term, so
/// `err_out ≥ |A|·err_x + err_b + rounding`.
pub fn aff_mat_vec_add(a: &Matrix, x: &AffineVector, b: &AffineVector) -> Result<AffineVector> {
    if a.cols() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: a.cols(),
            got: x.len(),
        });
    }
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            got: b.len(),
        });
    }
    // Dense accumulator over the symbol space; the rounding sequence is the
    // same as folding `acc.add(&x_j.scale(a_ij))` over j and adding b_i.
    let space = x.next_symbol.max(b.next_symbol) as usize;
    let mut dense = vec![0.0_f64; space];
    let mut used = vec![false; space];
    let mut touched: Vec<Symbol> = Vec::new();
    let mut forms = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let mut center = 0.0;
        // exact rounding errors, summed to nearest and bounded afterwards
        let mut rounding = 0.0;
        let mut count = 0usize;
        let mut propagated = 0.0;
        let mut accumulate =
            |center_in: f64, terms: &[(Symbol, f64)], err_in: f64, c: Option<f64>| {
                let (p, e) = match c {
                    Some(c) => mul_with_err(c, center_in),
                    None => (center_in, 0.0),
                };
                let (s, e2) = add_with_err(center, p);
                center = s;
                rounding += e + e2;
                count += 2;
                propagated = add_up(propagated, c.map_or(err_in, |c| mul_up(c.abs(), err_in)));
                for &(sym, coef) in terms {
                    let (p, e) = match c {
                        Some(c) => mul_with_err(c, coef),
                        None => (coef, 0.0),
                    };
                    let k = sym as usize;
                    let (s, e2) = add_with_err(dense[k], p);
                    dense[k] = s;
                    rounding += e + e2;
                    count += 2;
                    if !used[k] {
                        used[k] = true;
                        touched.push(sym);
                    }
                }
            };
        for (j, xj) in x.forms.iter().enumerate() {
            let aij = a[(i, j)];
            if aij == 0.0 {
                continue;
            }
            accumulate(xj.center, &xj.terms, xj.err, Some(aij));
        }
        let bi = &b.forms[i];
        accumulate(bi.center, &bi.terms, bi.err, None);
        let err = add_up(propagated, bound_nonneg_sum(rounding, count));
        touched.sort_unstable();
        let mut terms = Vec::with_capacity(touched.len());
        for &sym in &touched {
            let k = sym as usize;
            if dense[k] != 0.0 {
                terms.push((sym, dense[k]));
            }
            dense[k] = 0.0;
            used[k] = false;
        }
        touched.clear();
        forms.push(AffineForm { center, terms, err });
    }
    Ok(AffineVector {
        forms,
        next_symbol: x.next_symbol.max(b.next_symbol),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_x0() -> IntervalVector {
        IntervalVector::from_bounds(&[(0.0, 0.0), (1.0, 1.1)]).unwrap()
    }

    #[test]
    fn lift_toy_box() {
        let v = AffineVector::from_box(&toy_x0()).unwrap();
        let f0 = &v.forms()[0];
        assert_eq!((f0.center(), f0.terms().len(), f0.err()), (0.0, 0, 0.0));
        let f1 = &v.forms()[1];
        assert!((f1.center() - 1.05).abs() < 1e-15);
        assert_eq!(f1.terms().len(), 1);
        assert_eq!(f1.terms()[0].0, 0);
        assert!((f1.terms()[0].1 - 0.05).abs() < 1e-16);
        assert!(f1.err() <= 2.0 * f64::EPSILON);
        assert_eq!(v.next_symbol(), 1);
        assert!(toy_x0().subset(&v.to_box()));
    }

    #[test]
    fn degenerate_box_has_no_terms() {
        let x = IntervalVector::from_points(&[1.5, -2.0]).unwrap();
        let v = AffineVector::from_box(&x).unwrap();
        assert_eq!(v.symbol_count(), 0);
        assert_eq!(v.to_box(), x);
    }

    #[test]
    fn unbounded_box_rejected() {
        let x = IntervalVector::from_bounds(&[(0.0, f64::INFINITY)]).unwrap();
        assert_eq!(AffineVector::from_box(&x), Err(Error::Unbounded));
    }

    #[test]
    fn identity_step_preserves_forms() {
        let x = AffineVector::from_box(&toy_x0()).unwrap();
        let zero =
            AffineVector::from_box(&IntervalVector::from_points(&[0.0, 0.0]).unwrap()).unwrap();
        let y = aff_mat_vec_add(&Matrix::identity(2), &x, &zero).unwrap();
        for (a, b) in x.forms().iter().zip(y.forms()) {
            assert_eq!(a.center(), b.center());
            assert_eq!(a.terms(), b.terms());
            assert!(b.err() - a.err() <= 2.0 * f64::EPSILON);
        }
    }

    #[test]
    fn to_box_examples() {
        let f = AffineForm::new(14.1, [(0, 0.0705)], 0.0).unwrap();
        let i = f.to_interval();
        assert!(i.lo() <= 14.0295 && i.hi() >= 14.1705);
        assert_eq!(AffineForm::constant(0.0).to_interval(), Interval::ZERO);
        let g = AffineForm::new(14.1, [(0, 0.0705), (3, 1e-3)], 0.0).unwrap();
        assert!(i.subset(g.to_interval()));
    }

    #[test]
    fn condense_extremes() {
        let f = AffineForm::new(1.0, [(0, 0.5), (1, -0.25), (2, 0.125)], 0.01).unwrap();
        let v = AffineVector::from_forms(vec![f.clone()]).unwrap();
        assert_eq!(v.condense(None), v);
        let all = f.condense(10);
        assert_eq!(all, f);
        let none = f.condense(0);
        assert!(none.terms().is_empty());
        assert_eq!(none.err(), 0.01 + 0.5 + 0.25 + 0.125);
        let one = f.condense(1);
        assert_eq!(one.terms(), &[(0, 0.5)]);
    }

    #[test]
    fn shared_symbols_cancel() {
        // x - x = 0 exactly in affine arithmetic
        let f = AffineForm::new(1.0, [(0, 0.1)], 0.0).unwrap();
        let d = f.add(&f.scale(-1.0));
        assert_eq!(d.center(), 0.0);
        assert!(d.terms().is_empty());
        assert_eq!(d.err(), 0.0);
    }
}
