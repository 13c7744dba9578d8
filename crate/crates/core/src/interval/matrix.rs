use std::ops::Index;

use super::round::add_up;
use super::vector::check_len;
use super::{Interval, IntervalVector};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Rectangular grid of intervals, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Interval>,
}

impl IntervalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Interval>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_point(m: &Matrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.as_slice().iter().map(|&v| Interval::point(v)).collect(),
        }
    }

    /// `m + [-delta, delta]` in every entry.
    pub fn inflated(m: &Matrix, delta: f64) -> Result<Self> {
        let data = m
            .as_slice()
            .iter()
            .map(|&v| Interval::centered(v, delta))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            rows: m.rows(),
            cols: m.cols(),
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mid(&self) -> Matrix {
        Matrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(|x| x.mid()).collect(),
        )
        .expect("shape preserved")
    }

    /// Upward bound on `‖ |M| ‖_inf` (max row sum of magnitudes).
    pub fn mag_norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .fold(0.0, |acc, x| add_up(acc, x.mag()))
            })
            .fold(0.0, f64::max)
    }

    pub fn contains_matrix(&self, m: &Matrix) -> bool {
        m.rows() == self.rows
            && m.cols() == self.cols
            && self
                .data
                .iter()
                .zip(m.as_slice())
                .all(|(x, &v)| x.contains(v))
    }

    /// Enclosure of `{M ξ : M ∈ self, ξ ∈ x}`.
    pub fn mul_vec(&self, x: &IntervalVector) -> Result<IntervalVector> {
        check_len(self.cols, x.len())?;
        Ok((0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(x.iter())
                    .fold(Interval::ZERO, |acc, (&m, &xj)| acc + m * xj)
            })
            .collect())
    }

    /// Enclosure of `self · P` for a point matrix `P`.
    pub fn mul_point(&self, p: &Matrix) -> Result<IntervalMatrix> {
        check_len(self.cols, p.rows())?;
        let mut data = vec![Interval::ZERO; self.rows * p.cols()];
        for i in 0..self.rows {
            let out = &mut data[i * p.cols()..(i + 1) * p.cols()];
            for k in 0..self.cols {
                let m = self.data[i * self.cols + k];
                for (j, o) in out.iter_mut().enumerate() {
                    *o = *o + m.scale(p[(k, j)]);
                }
            }
        }
        IntervalMatrix::new(self.rows, p.cols(), data)
    }

    /// Enclosure of `P · self` for a point matrix `P`.
    pub fn point_mul(p: &Matrix, m: &IntervalMatrix) -> Result<IntervalMatrix> {
        check_len(p.cols(), m.rows)?;
        let mut data = vec![Interval::ZERO; p.rows() * m.cols];
        for i in 0..p.rows() {
            let out = &mut data[i * m.cols..(i + 1) * m.cols];
            for k in 0..p.cols() {
                let c = p[(i, k)];
                if c == 0.0 {
                    continue;
                }
                let row = &m.data[k * m.cols..(k + 1) * m.cols];
                for (o, &x) in out.iter_mut().zip(row) {
                    *o = *o + x.scale(c);
                }
            }
        }
        IntervalMatrix::new(p.rows(), m.cols, data)
    }

    /// Rigorous enclosure of the point product `a · b`.
    pub fn enclose_product(a: &Matrix, b: &Matrix) -> Result<IntervalMatrix> {
        Self::point_mul(a, &Self::from_point(b))
    }

    /// Largest entry radius.
    pub fn max_rad(&self) -> f64 {
        self.data.iter().map(|x| x.rad()).fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for IntervalMatrix {
    type Output = Interval;

    fn index(&self, (i, j): (usize, usize)) -> &Interval {
        &self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_enclosure_contains_float_product() {
        // dyadic entries: the float product is exact
        let a = Matrix::from_rows(&[[0.5, 0.25], [0.75, -1.5]]).unwrap();
        let b = Matrix::from_rows(&[[3.0, 2.0], [-0.5, 0.125]]).unwrap();
        let e = IntervalMatrix::enclose_product(&a, &b).unwrap();
        assert!(e.contains_matrix(&a.matmul(&b)));
        assert_eq!(e.max_rad(), 0.0);

        let a = Matrix::from_rows(&[[0.1, 0.2], [0.3, -0.7]]).unwrap();
        let e = IntervalMatrix::enclose_product(&a, &a).unwrap();
        assert!(e.max_rad() < 1e-15);
    }

    #[test]
    fn interval_matrix_vector() {
        let m = IntervalMatrix::inflated(&Matrix::identity(2), 0.1).unwrap();
        let x = IntervalVector::from_points(&[1.0, -2.0]).unwrap();
        let y = m.mul_vec(&x).unwrap();
        // row 0: [0.9,1.1]*1 + [-0.1,0.1]*(-2) = [0.7, 1.3]
        assert!(y[0].lo() <= 0.7 && y[0].hi() >= 1.3);
        assert!(y[0].lo() > 0.7 - 1e-12 && y[0].hi() < 1.3 + 1e-12);
        assert!(m.mag_norm_inf() >= 1.2);
    }
}
