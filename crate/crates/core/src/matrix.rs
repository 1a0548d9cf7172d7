//! Dense numeric matrices used as members of pattern classes.
//!
//! The same type is used with exact rationals (membership and witnesses),
//! `f64` (sampling oracles) and `Complex64` (pencil oracles).

use std::fmt;
use std::ops::{Add, Div, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type RationalMatrix = Matrix<Rational>;

/// Field element usable in [`Matrix`] and [`numeric_rank`].
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
{
    /// Absolute value (modulus), as a float. Only used for pivot ordering and
    /// tolerance tests, never for exact zero tests.
    fn magnitude(&self) -> f64;
}

impl Scalar for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl Scalar for Rational {
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"3"`, `"-3/2"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Input(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Input(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone> Matrix<T> {
    /// Builds a matrix from nested rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            data.extend_from_slice(r.as_ref());
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Copy of the block with top-left corner `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        Matrix::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn hstack(blocks: &[&Matrix<T>]) -> Result<Self> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        for b in blocks {
            if b.rows != rows {
                return Err(Error::dimension("hstack", (rows, blocks[0].cols), b.shape()));
            }
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for b in blocks {
                data.extend_from_slice(b.row(i));
            }
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn vstack(blocks: &[&Matrix<T>]) -> Result<Self> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        for b in blocks {
            if b.cols != cols {
                return Err(Error::dimension("vstack", (blocks[0].rows, cols), b.shape()));
            }
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            data.extend_from_slice(&b.data);
        }
        Ok(Matrix { rows, cols, data })
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|x| x.clone() * k.clone())
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::dimension("add", self.shape(), rhs.shape()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: zip_with(&self.data, &rhs.data, |a, b| a.clone() + b.clone()),
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::dimension("sub", self.shape(), rhs.shape()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: zip_with(&self.data, &rhs.data, |a, b| a.clone() - b.clone()),
        })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::dimension("mul", self.shape(), rhs.shape()));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let prod = a.clone() * b.clone();
                        let slot: &mut T = &mut out[(i, j)];
                        *slot = slot.clone() + prod;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }
}

impl RationalMatrix {
    /// Integer matrix lifted to exact rationals.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| rat(x)).collect())
            .collect();
        Matrix::from_rows(&rows)
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(|x| x.to_f64().unwrap_or(f64::NAN))
    }

    pub fn to_complex(&self) -> Matrix<Complex64> {
        self.map(|x| Complex64::new(x.to_f64().unwrap_or(f64::NAN), 0.0))
    }
}

fn zip_with<T>(a: &[T], b: &[T], f: impl Fn(&T, &T) -> T) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch, like nalgebra's.
impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.checked_add(rhs).expect("matrix add")
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.checked_sub(rhs).expect("matrix sub")
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.checked_mul(rhs).expect("matrix mul")
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i)))
            .finish()
    }
}

/// Rank by row reduction with partial pivoting.
///
/// A pivot candidate whose magnitude is at most `tol` times the largest
/// initial entry magnitude counts as zero. With `tol = 0` only exact zeros are
/// skipped, so rational input yields the exact rank.
pub fn numeric_rank<T: Scalar>(m: &Matrix<T>, tol: f64) -> usize {
    let threshold = tol * m.max_magnitude();
    let negligible = |x: &T| x.is_zero() || (tol > 0.0 && x.magnitude() <= threshold);
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = (rank..rows)
            .filter(|&r| !negligible(&a[(r, c)]))
            .max_by(|&x, &y| a[(x, c)].magnitude().total_cmp(&a[(y, c)].magnitude()));
        let Some(p) = pivot else { continue };
        swap_rows(&mut a, rank, p);
        let pv = a[(rank, c)].clone();
        for r in rank + 1..rows {
            if a[(r, c)].is_zero() {
                continue;
            }
            let factor = a[(r, c)].clone() / pv.clone();
            a[(r, c)] = T::zero();
            for k in c + 1..cols {
                if !a[(rank, k)].is_zero() {
                    let d = factor.clone() * a[(rank, k)].clone();
                    a[(r, k)] = a[(r, k)].clone() - d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Exact rank of a rational matrix.
pub fn exact_rank(m: &RationalMatrix) -> usize {
    numeric_rank(m, 0.0)
}

/// Determinant by elimination. Returns `None` for non-square input.
pub fn determinant<T: Scalar>(m: &Matrix<T>) -> Option<T> {
    if m.rows != m.cols {
        return None;
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut det = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
            return Some(T::zero());
        };
        if p != c {
            swap_rows(&mut a, c, p);
            det = -det;
        }
        let pv = a[(c, c)].clone();
        det = det * pv.clone();
        for r in c + 1..n {
            if a[(r, c)].is_zero() {
                continue;
            }
            let factor = a[(r, c)].clone() / pv.clone();
            for k in c..n {
                let d = factor.clone() * a[(c, k)].clone();
                a[(r, k)] = a[(r, k)].clone() - d;
            }
        }
    }
    Some(det)
}

fn swap_rows<T>(a: &mut Matrix<T>, i: usize, j: usize) {
    if i == j {
        return;
    }
    let cols = a.cols;
    for k in 0..cols {
        a.data.swap(i * cols + k, j * cols + k);
    }
}
