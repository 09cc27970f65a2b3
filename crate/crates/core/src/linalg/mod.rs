//! Exact linear algebra over a [`Field`]: dense matrices, reduced row echelon
//! form, rank, kernels and linear solves.

mod feasibility;

pub use feasibility::in_cone_bruteforce;

use std::fmt;

use crate::scalar::Field;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix with `cols` columns from row vectors; zero rows are
    /// allowed. Panics if any row has the wrong length.
    pub fn from_rows<I>(cols: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = Vec<T>>,
    {
        let mut data = Vec::new();
        let mut count = 0;
        for row in rows {
            assert_eq!(row.len(), cols, "row {count} has length {}, expected {cols}", row.len());
            data.extend(row);
            count += 1;
        }
        Matrix { rows: count, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, column) in columns.iter().enumerate() {
            assert_eq!(column.len(), rows, "column {j} has length {}, expected {rows}", column.len());
            for (i, value) in column.iter().enumerate() {
                m[(i, j)] = value.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Matrix product; panics on a shape mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "cannot multiply {}x{} by {}x{}", self.rows, self.cols, other.rows, other.cols);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let term = a.clone() * other[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + term;
                }
            }
        }
        out
    }

    /// Matrix-vector product; panics on a shape mismatch.
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "cannot apply {}x{} matrix to vector of length {}", self.rows, self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub fn dot<T: Field>(a: &[T], b: &[T]) -> T {
    assert_eq!(a.len(), b.len(), "dot product of vectors with lengths {} and {}", a.len(), b.len());
    T::dot(a, b)
}

pub fn scale<T: Field>(v: &[T], s: &T) -> Vec<T> {
    v.iter().map(|x| x.clone() * s.clone()).collect()
}

pub fn add<T: Field>(a: &[T], b: &[T]) -> Vec<T> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn sub<T: Field>(a: &[T], b: &[T]) -> Vec<T> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn is_zero_vec<T: Field>(v: &[T]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: Field> Echelon<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero rows of the reduced form: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> Vec<Vec<T>> {
        (0..self.rank()).map(|i| self.reduced.row(i).to_vec()).collect()
    }
}

/// Gauss-Jordan elimination. In each column the nonzero candidate with the
/// smallest [`Field::pivot_cost`] becomes the pivot.
pub fn echelon<T: Field>(m: &Matrix<T>) -> Echelon<T> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..a.cols {
        if pivot_row == a.rows {
            break;
        }
        let best = (pivot_row..a.rows)
            .filter(|&r| !a[(r, col)].is_zero())
            .min_by_key(|&r| a[(r, col)].pivot_cost());
        let Some(best) = best else { continue };
        if best != pivot_row {
            for j in 0..a.cols {
                a.data.swap(best * a.cols + j, pivot_row * a.cols + j);
            }
        }
        let inv = T::one() / a[(pivot_row, col)].clone();
        if !inv.is_one() {
            for j in col..a.cols {
                if !a[(pivot_row, j)].is_zero() {
                    a[(pivot_row, j)] = a[(pivot_row, j)].clone() * inv.clone();
                }
            }
        }
        let support: Vec<usize> = (col..a.cols).filter(|&j| !a[(pivot_row, j)].is_zero()).collect();
        for r in 0..a.rows {
            if r == pivot_row || a[(r, col)].is_zero() {
                continue;
            }
            let factor = a[(r, col)].clone();
            for &j in &support {
                let delta = factor.clone() * a[(pivot_row, j)].clone();
                a[(r, j)] = a[(r, j)].clone() - delta;
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    Echelon { reduced: a, pivots }
}

pub fn rank<T: Field>(m: &Matrix<T>) -> usize {
    echelon(m).rank()
}

/// Basis of the right kernel `{x : M x = 0}`, one vector per free column.
/// Empty exactly when `M` has full column rank.
pub fn kernel_basis<T: Field>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let ech = echelon(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![T::zero(); m.cols];
            v[free] = T::one();
            for (row, &p) in ech.pivots.iter().enumerate() {
                v[p] = -ech.reduced[(row, free)].clone();
            }
            v
        })
        .collect()
}

/// Some exact solution of `M x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero. Panics if `b` does not match the row count.
pub fn solve<T: Field>(m: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    assert_eq!(m.rows, b.len(), "right-hand side has length {}, expected {}", b.len(), m.rows);
    let augmented =
        Matrix::from_rows(m.cols + 1, (0..m.rows).map(|i| {
            let mut row = m.row(i).to_vec();
            row.push(b[i].clone());
            row
        }));
    let ech = echelon(&augmented);
    if ech.pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![T::zero(); m.cols];
    for (row, &p) in ech.pivots.iter().enumerate() {
        x[p] = ech.reduced[(row, m.cols)].clone();
    }
    Some(x)
}

/// The inverse of a square matrix, or `None` when it is singular.
pub fn inverse<T: Field>(m: &Matrix<T>) -> Option<Matrix<T>> {
    assert!(m.is_square(), "inverse of a non-square {}x{} matrix", m.rows, m.cols);
    let n = m.rows;
    let augmented = Matrix::from_rows(2 * n, (0..n).map(|i| {
        let mut row = m.row(i).to_vec();
        row.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
        row
    }));
    let ech = echelon(&augmented);
    if ech.pivots.len() < n || (n > 0 && ech.pivots[n - 1] != n - 1) {
        return None;
    }
    Some(Matrix::from_rows(n, (0..n).map(|i| ech.reduced.row(i)[n..].to_vec())))
}
