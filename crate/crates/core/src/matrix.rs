//! Small dense matrices and the generic elimination routines the oracles need.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
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

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// An `rows × cols` matrix with `cols` known even when `rows == 0`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
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

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                acc + self[(i, k)].clone() * other[(k, j)].clone()
            })
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(
            self.cols,
            v.len(),
            "vector length differs from column count"
        );
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Top-left `k × k` block.
    pub fn leading(&self, k: usize) -> Self {
        Self::from_fn(k, k, |i, j| self[(i, j)].clone())
    }

    /// `‖self - I‖_F` for a square matrix.
    pub fn identity_defect(&self) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let target = if i == j { T::one() } else { T::zero() };
                let d = (self[(i, j)].clone() - target).magnitude();
                sum += d * d;
            }
        }
        sum.sqrt()
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(Field::magnitude).fold(0.0, f64::max)
    }

    /// Largest nonzero offset `|i - j|` among the entries.
    pub fn bandwidth(&self) -> usize {
        let mut w = 0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self[(i, j)].is_zero() {
                    w = w.max(i.abs_diff(j));
                }
            }
        }
        w
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// One row per line, entries right-aligned in columns. Precision and other
/// flags are forwarded to each entry.
impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self
            .data
            .iter()
            .map(|x| match f.precision() {
                Some(p) => format!("{x:.p$}"),
                None => x.to_string(),
            })
            .collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(0);
        for i in 0..self.rows {
            let row = &cells[i * self.cols..(i + 1) * self.cols];
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "{}", line.join("  "))?;
        }
        Ok(())
    }
}

/// Relative pivot threshold for inexact fields.
pub const FLOAT_PIVOT_TOL: f64 = 1e-10;

/// Reduced row echelon form. Inexact fields pivot on the largest remaining
/// entry and treat anything below `tol` times the row's scale as zero; rows are
/// equilibrated first so that wildly scaled equations do not mask rank.
/// Returns the reduced matrix and the pivot columns.
pub fn rref<T: Field>(a: &Matrix<T>, tol: f64) -> (Matrix<T>, Vec<usize>) {
    let mut m = a.clone();
    if !T::EXACT {
        for i in 0..m.rows {
            let scale = m.row(i).iter().map(Field::magnitude).fold(0.0, f64::max);
            if scale > 0.0 {
                let inv = T::from_f64(1.0 / scale);
                for j in 0..m.cols {
                    m[(i, j)] = m[(i, j)].clone() * inv.clone();
                }
            }
        }
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let pick = if T::EXACT {
            (r..m.rows).find(|&i| !m[(i, c)].is_zero())
        } else {
            (r..m.rows)
                .max_by(|&i, &k| m[(i, c)].magnitude().total_cmp(&m[(k, c)].magnitude()))
                .filter(|&i| m[(i, c)].magnitude() > tol)
        };
        let Some(p) = pick else { continue };
        swap_rows(&mut m, r, p);
        let inv = T::one() / m[(r, c)].clone();
        for j in 0..m.cols {
            m[(r, j)] = m[(r, j)].clone() * inv.clone();
        }
        for i in 0..m.rows {
            if i != r && !m[(i, c)].is_zero() {
                let f = m[(i, c)].clone();
                for j in 0..m.cols {
                    m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

fn swap_rows<T>(m: &mut Matrix<T>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols {
        m.data.swap(a * m.cols + j, b * m.cols + j);
    }
}

/// Nullspace basis by row reduction: one vector per free column.
pub fn nullspace<T: Field>(a: &Matrix<T>, tol: f64) -> Vec<Vec<T>> {
    let (r, pivots) = rref(a, tol);
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); a.cols];
            v[f] = T::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(row, f)].clone();
            }
            v
        })
        .collect()
}

pub fn rank<T: Field>(a: &Matrix<T>, tol: f64) -> usize {
    rref(a, tol).1.len()
}

/// Determinant plus the smallest pivot magnitude seen.
///
/// Exact fields use fraction-free (Bareiss) elimination; inexact fields use LU
/// with partial pivoting.
pub fn determinant<T: Field>(a: &Matrix<T>) -> (T, f64) {
    assert_eq!(a.rows, a.cols, "determinant of a non-square matrix");
    let n = a.rows;
    if n == 0 {
        return (T::one(), f64::INFINITY);
    }
    let mut m = a.clone();
    let mut sign_flip = false;
    let mut min_pivot = f64::INFINITY;
    if T::EXACT {
        let mut prev = T::one();
        for k in 0..n {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(p) => {
                        swap_rows(&mut m, k, p);
                        sign_flip = !sign_flip;
                    }
                    None => return (T::zero(), 0.0),
                }
            }
            min_pivot = min_pivot.min(m[(k, k)].magnitude());
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m[(i, j)].clone() * m[(k, k)].clone()
                        - m[(i, k)].clone() * m[(k, j)].clone())
                        / prev.clone();
                    m[(i, j)] = v;
                }
                m[(i, k)] = T::zero();
            }
            prev = m[(k, k)].clone();
        }
        let det = m[(n - 1, n - 1)].clone();
        (if sign_flip { -det } else { det }, min_pivot)
    } else {
        let mut det = T::one();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| m[(i, k)].magnitude().total_cmp(&m[(j, k)].magnitude()))
                .expect("nonempty pivot range");
            if p != k {
                swap_rows(&mut m, k, p);
                sign_flip = !sign_flip;
            }
            let pivot = m[(k, k)].clone();
            min_pivot = min_pivot.min(pivot.magnitude());
            det = det * pivot.clone();
            if pivot.is_zero() {
                return (T::zero(), 0.0);
            }
            for i in k + 1..n {
                let f = m[(i, k)].clone() / pivot.clone();
                for j in k..n {
                    m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(k, j)].clone();
                }
            }
        }
        (if sign_flip { -det } else { det }, min_pivot)
    }
}

/// Pivot magnitudes of LU with partial pivoting, in elimination order.
pub fn lu_pivots<T: Field>(a: &Matrix<T>) -> Vec<f64> {
    let n = a.rows;
    let mut m = a.clone();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[(i, k)].magnitude().total_cmp(&m[(j, k)].magnitude()))
            .expect("nonempty pivot range");
        swap_rows(&mut m, k, p);
        let pivot = m[(k, k)].clone();
        out.push(pivot.magnitude());
        if pivot.is_zero() {
            continue;
        }
        for i in k + 1..n {
            let f = m[(i, k)].clone() / pivot.clone();
            for j in k..n {
                m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(k, j)].clone();
            }
        }
    }
    out
}
