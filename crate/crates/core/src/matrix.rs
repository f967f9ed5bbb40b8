//! Small dense matrices over exact rings.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Commutative ring operations needed by the exact algorithms.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
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

    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Block-diagonal sum of square blocks.
    pub fn block_diagonal(blocks: &[Matrix<T>]) -> Self {
        let n = blocks.iter().map(|b| b.rows).sum();
        let mut m = Self::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            assert!(b.is_square());
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(off + i, off + j)] = b[(i, j)].clone();
                }
            }
            off += b.rows;
        }
        m
    }
}

impl Matrix<i64> {
    pub fn to_rational(&self) -> Matrix<Rational> {
        self.map(|&x| crate::rational::int(x))
    }
}

impl Matrix<Rational> {
    /// Exact inverse by Gauss-Jordan elimination, `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] / &p;
                inv[(col, j)] = &inv[(col, j)] / &p;
            }
            for r in 0..n {
                if r != col && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    for j in 0..n {
                        let da = &f * &a[(col, j)];
                        let di = &f * &inv[(col, j)];
                        a[(r, j)] -= da;
                        inv[(r, j)] -= di;
                    }
                }
            }
        }
        Some(inv)
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..a.cols {
            let Some(pivot) = (rank..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(rank, pivot);
            for r in rank + 1..a.rows {
                if !a[(r, col)].is_zero() {
                    let f = &a[(r, col)] / &a[(rank, col)];
                    for j in col..a.cols {
                        let d = &f * &a[(rank, j)];
                        a[(r, j)] -= d;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of the right null space.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            let Some(p) = (row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(row, p);
            let pv = a[(row, col)].clone();
            for j in 0..a.cols {
                a[(row, j)] = &a[(row, j)] / &pv;
            }
            for r in 0..a.rows {
                if r != row && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    for j in 0..a.cols {
                        let d = &f * &a[(row, j)];
                        a[(r, j)] -= d;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (0..a.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); a.cols];
                v[free] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a[(r, free)].clone();
                }
                v
            })
            .collect()
    }

    /// Integer entries, if every entry is integral.
    pub fn to_integer(&self) -> Option<Matrix<i64>> {
        use num_traits::ToPrimitive;
        let data = self
            .data
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer().to_i64()).flatten())
            .collect::<Option<Vec<_>>>()?;
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

impl<T> Matrix<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Ring> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut out = Matrix::<T>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }
}

impl<T: Ring> Mul for Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: Matrix<T>) -> Matrix<T> {
        &self * &rhs
    }
}

impl<T: Ring> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let w = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>w$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = self.data.chunks(self.cols.max(1)).collect();
        f.debug_list().entries(rows).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(vec![vec![2, 1], vec![7, 4]]).to_rational();
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
        assert_eq!(inv[(0, 1)], int(-1));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = Matrix::from_rows(vec![vec![1, 2], vec![2, 4]]).to_rational();
        assert!(m.inverse().is_none());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = Matrix::from_rows(vec![vec![1, 2, 3]]).to_rational();
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            assert_eq!(m.mul_vec(&v), vec![int(0)]);
        }
    }

    #[test]
    fn pow_matches_repeated_product() {
        let m = Matrix::from_rows(vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(m.pow(5), Matrix::from_rows(vec![vec![1, 5], vec![0, 1]]));
        assert_eq!(m.pow(0), Matrix::identity(2));
    }

    #[test]
    fn to_integer_rejects_fractions() {
        let m = Matrix::from_rows(vec![vec![ratio(1, 2)]]);
        assert!(m.to_integer().is_none());
    }
}
