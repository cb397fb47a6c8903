//! Dense matrices over exact rings: determinants, inverses, products.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::ratfunc::RationalFunction;
use crate::ring::{Domain, Field, Ring};
use crate::Rational;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type MatrixQ = Matrix<Rational>;
pub type MatrixZ = Matrix<BigInt>;
pub type MatrixLaurent = Matrix<Laurent>;
pub type MatrixRf = Matrix<RationalFunction>;

impl<T> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::invalid(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// From a list of rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::invalid("ragged matrix rows"));
        }
        Ok(Matrix { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() })
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

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(rows: usize, cols: &[Vec<T>]) -> Result<Self> {
        if cols.iter().any(|c| c.len() != rows) {
            return Err(Error::invalid("column length mismatch"));
        }
        Ok(Matrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone()))
    }

    /// Submatrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Contiguous block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(d: &[T]) -> Self {
        let n = d.len();
        Matrix::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { T::zero() })
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let v = out[(i, j)].clone() + a.clone() * b.clone();
                        out[(i, j)] = v;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Matrix::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self[(i, j)].clone(),
                (false, false) => other[(i - self.rows, j - self.cols)].clone(),
                _ => T::zero(),
            }
        })
    }

    /// `row[target] += c * row[source]`.
    pub fn add_row_multiple(&mut self, target: usize, source: usize, c: &T) {
        for j in 0..self.cols {
            let v = self[(target, j)].clone() + c.clone() * self[(source, j)].clone();
            self[(target, j)] = v;
        }
    }

    /// `col[target] += c * col[source]`.
    pub fn add_col_multiple(&mut self, target: usize, source: usize, c: &T) {
        for i in 0..self.rows {
            let v = self[(i, target)].clone() + c.clone() * self[(i, source)].clone();
            self[(i, target)] = v;
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &T) {
        for j in 0..self.cols {
            let v = self[(i, j)].clone() * c.clone();
            self[(i, j)] = v;
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &T) {
        for i in 0..self.rows {
            let v = self[(i, j)].clone() * c.clone();
            self[(i, j)] = v;
        }
    }
}

impl<T: Domain> Matrix<T> {
    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::invalid(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.clone();
        let mut sign_flip = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Ok(T::zero());
                };
                a.swap_rows(k, p);
                sign_flip = !sign_flip;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[(i, j)].clone() * a[(k, k)].clone()
                        - a[(i, k)].clone() * a[(k, j)].clone();
                    a[(i, j)] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[(i, k)] = T::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        Ok(if sign_flip { -d } else { d })
    }

    /// Fraction-free inverse: returns `(adj, d)` with `self * adj = d * I`,
    /// `d` the determinant. Errors on singular input.
    pub fn adjugate_pair(&self) -> Result<(Self, T)> {
        if !self.is_square() {
            return Err(Error::invalid("inverse of a non-square matrix"));
        }
        let n = self.rows;
        if n == 0 {
            return Ok((Self::identity(0), T::one()));
        }
        // Bareiss Gauss-Jordan on [A | I]
        let mut a = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let mut prev = T::one();
        let mut sign_flip = false;
        for k in 0..n {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Err(Error::SingularMatrix);
                };
                a.swap_rows(k, p);
                sign_flip = !sign_flip;
            }
            let pivot = a[(k, k)].clone();
            for i in 0..n {
                if i == k {
                    continue;
                }
                let factor = a[(i, k)].clone();
                for j in 0..2 * n {
                    if j == k {
                        continue;
                    }
                    let num = a[(i, j)].clone() * pivot.clone() - factor.clone() * a[(k, j)].clone();
                    a[(i, j)] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[(i, k)] = T::zero();
            }
            prev = pivot;
        }
        // every diagonal entry of the left block now equals det(A) up to the row-swap sign
        let d = prev;
        let adj = Matrix::from_fn(n, n, |i, j| a[(i, n + j)].clone());
        let det = if sign_flip { -d.clone() } else { d.clone() };
        // A * adj = d * I; report the signed determinant with a matching adjugate
        let adj = if sign_flip { adj.neg() } else { adj };
        Ok((adj, det))
    }
}

impl<T: Field> Matrix<T> {
    /// Inverse over a field by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::invalid("inverse of a non-square matrix"));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Err(Error::SingularMatrix);
            };
            a.swap_rows(k, p);
            inv.swap_rows(k, p);
            let piv_inv = a[(k, k)].inv().expect("nonzero pivot");
            a.scale_row(k, &piv_inv);
            inv.scale_row(k, &piv_inv);
            for i in 0..n {
                if i != k && !a[(i, k)].is_zero() {
                    let f = -a[(i, k)].clone();
                    a.add_row_multiple(i, k, &f);
                    inv.add_row_multiple(i, k, &f);
                }
            }
        }
        Ok(inv)
    }

    /// Rank by row reduction.
    pub fn rank(&self) -> usize {
        self.row_echelon().1.len()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn row_echelon(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let piv_inv = a[(r, c)].inv().unwrap();
            a.scale_row(r, &piv_inv);
            for i in 0..self.rows {
                if i != r && !a[(i, c)].is_zero() {
                    let f = -a[(i, c)].clone();
                    a.add_row_multiple(i, r, &f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    /// Basis of `{x : self * x = 0}` read off the reduced echelon form, one
    /// vector per free column in increasing order.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let (e, pivots) = self.row_echelon();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![T::zero(); self.cols];
                v[free] = T::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -e[(r, free)].clone();
                }
                v
            })
            .collect()
    }
}

impl MatrixQ {
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn to_integer(&self) -> Option<MatrixZ> {
        self.is_integral().then(|| self.map(|x| x.to_integer()))
    }

    pub fn from_integer(m: &MatrixZ) -> Self {
        m.map(|x| Rational::from_integer(x.clone()))
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| crate::int(x)).collect()).collect())
            .expect("rectangular literal")
    }

    /// Constant Laurent matrix.
    pub fn to_laurent(&self) -> MatrixLaurent {
        self.map(|x| Laurent::constant(x.clone()))
    }
}

impl MatrixZ {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
            .expect("rectangular literal")
    }
}

impl MatrixLaurent {
    /// Entrywise substitution `t = point`.
    pub fn eval(&self, point: &Rational) -> Result<MatrixQ> {
        let data = self.data.iter().map(|p| p.eval(point)).collect::<Result<Vec<_>>>()?;
        Matrix::new(self.rows, self.cols, data)
    }

    /// Entrywise `t -> t^-1`.
    pub fn invert_variable(&self) -> Self {
        self.map(Laurent::invert_variable)
    }

    pub fn to_rational_functions(&self) -> MatrixRf {
        self.map(|p| RationalFunction::from_laurent(p.clone()))
    }

    /// Inverse over `Q(t)`.
    pub fn inverse_rf(&self) -> Result<MatrixRf> {
        let (adj, d) = self.adjugate_pair()?;
        adj.map(|p| RationalFunction::new(p.clone(), d.clone())).data.into_iter().collect::<Result<Vec<_>>>()
            .and_then(|data| Matrix::new(self.rows, self.cols, data))
    }
}

impl MatrixRf {
    pub fn invert_variable(&self) -> Self {
        self.map(RationalFunction::invert_variable)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Ring> Mul<&Matrix<T>> for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        Matrix::mul(self, rhs)
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    /// Aligned rows, one per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[]");
        }
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| cells[i * self.cols + j].len()).max().unwrap_or(0))
            .collect();
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{:>w$}", cells[i * self.cols + j], w = widths[j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.cols.max(1)).take(self.rows)).finish()
    }
}
