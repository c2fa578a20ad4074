//! Dense Gaussian elimination over either exact rationals or `f64`.
//!
//! The same elimination code serves both arithmetics; a [`Scalar`] decides
//! what counts as zero. Rationals are exact, floats use a pivot threshold
//! relative to the largest entry of the matrix being reduced.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    fn from_u64(x: u64) -> Self;
    fn approx(&self) -> f64;
    fn magnitude(&self) -> f64 {
        self.approx().abs()
    }
    /// Whether `self` is zero given the largest magnitude in play.
    fn negligible(&self, scale: f64) -> bool;
    fn is_positive(&self, scale: f64) -> bool;
}

/// Relative pivot threshold for floating elimination.
pub const FLOAT_PIVOT_TOL: f64 = 1e-9;

impl Scalar for f64 {
    fn from_u64(x: u64) -> Self {
        x as f64
    }
    fn approx(&self) -> f64 {
        *self
    }
    fn negligible(&self, scale: f64) -> bool {
        self.abs() <= FLOAT_PIVOT_TOL * scale.max(1.0)
    }
    fn is_positive(&self, scale: f64) -> bool {
        *self > FLOAT_PIVOT_TOL * scale.max(1.0)
    }
}

impl Scalar for BigRational {
    fn from_u64(x: u64) -> Self {
        BigRational::from_integer(BigInt::from(x))
    }
    fn approx(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }
    fn is_positive(&self, _scale: f64) -> bool {
        Signed::is_positive(self)
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Scalar> Dense<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Dense {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data: Vec<T> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged rows");
        Dense {
            rows: r,
            cols: c,
            data,
        }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut T {
        &mut self.data[r * self.cols + c]
    }

    /// Columns `keep`, in the given order.
    pub fn select_columns(&self, keep: &[usize]) -> Self {
        let mut out = Dense::zeros(self.rows, keep.len());
        for r in 0..self.rows {
            for (k, &c) in keep.iter().enumerate() {
                *out.at_mut(r, k) = self.at(r, c).clone();
            }
        }
        out
    }

    fn scale(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let scale = self.scale();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // partial pivoting: largest magnitude below `row`
            let (best, mag) = (row..self.rows)
                .map(|r| (r, self.at(r, col).magnitude()))
                .fold((row, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if self.at(best, col).negligible(scale) || mag < 0.0 {
                for r in row..self.rows {
                    *self.at_mut(r, col) = T::zero();
                }
                continue;
            }
            if best != row {
                for c in 0..self.cols {
                    self.data.swap(row * self.cols + c, best * self.cols + c);
                }
            }
            let p = self.at(row, col).clone();
            for c in col..self.cols {
                let v = self.at(row, c).clone() / p.clone();
                *self.at_mut(row, c) = v;
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.at(r, col).clone();
                if factor == T::zero() {
                    continue;
                }
                for c in col..self.cols {
                    let v = self.at(r, c).clone() - factor.clone() * self.at(row, c).clone();
                    *self.at_mut(r, c) = v;
                }
                *self.at_mut(r, col) = T::zero();
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; m.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![T::zero(); m.cols];
            v[free] = T::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m.at(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }
}

/// Solves `a x = b` for square `a` by partial-pivot elimination. Returns
/// `None` when a pivot falls below `tol` relative to the matrix scale.
pub fn solve_f64(a: &Dense<f64>, b: &[f64], tol: f64) -> Option<Vec<f64>> {
    let n = a.rows;
    assert_eq!(a.cols, n);
    assert_eq!(b.len(), n);
    let scale = a.scale().max(1.0);
    let mut m = a.data.clone();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let best = (col..n)
            .max_by(|&x, &y| m[x * n + col].abs().total_cmp(&m[y * n + col].abs()))
            .expect("nonempty range");
        if m[best * n + col].abs() <= tol * scale {
            return None;
        }
        if best != col {
            for c in 0..n {
                m.swap(col * n + c, best * n + c);
            }
            rhs.swap(col, best);
        }
        let p = m[col * n + col];
        for r in col + 1..n {
            let f = m[r * n + col] / p;
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                m[r * n + c] -= f * m[col * n + c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| m[r * n + c] * x[c]).sum();
        x[r] = (rhs[r] - s) / m[r * n + r];
    }
    Some(x)
}

pub fn rational(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn exact_nullspace_of_shifted_triangular() {
        // Lambda^(1) of the first example minus 5 I.
        let m = Dense::from_rows(vec![
            vec![q(0, 1), q(0, 1), q(0, 1)],
            vec![q(0, 1), q(-1, 1), q(0, 1)],
            vec![q(3, 1), q(2, 1), q(-3, 1)],
        ]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![q(1, 1), q(0, 1), q(1, 1)]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn float_and_exact_agree_on_rank() {
        let rows = vec![vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0], vec![1.0, 0.0, 1.0]];
        let f = Dense::from_rows(rows.clone());
        let e = Dense::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x as i64, 1)).collect())
                .collect(),
        );
        assert_eq!(f.rank(), 2);
        assert_eq!(e.rank(), 2);
        let ns = f.nullspace();
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        for r in &rows {
            let dot: f64 = r.iter().zip(v).map(|(a, b)| a * b).sum();
            assert!(dot.abs() < 1e-12);
        }
    }

    #[test]
    fn lu_solve() {
        let a = Dense::from_rows(vec![vec![0.75, 0.0], vec![-0.375, 0.75]]);
        let x = solve_f64(&a, &[1.0, 0.0], 1e-12).unwrap();
        assert!((x[0] - 4.0 / 3.0).abs() < 1e-14);
        assert!((x[1] - 2.0 / 3.0).abs() < 1e-14);
        let singular = Dense::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(solve_f64(&singular, &[1.0, 1.0], 1e-12).is_none());
    }
}
