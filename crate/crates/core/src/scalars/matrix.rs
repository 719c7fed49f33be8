use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::{Scalar, ScalarDomain, ScalarMap};
use crate::error::{ensure, Error, Result};

/// Dense matrix over a single [`ScalarDomain`], stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    domain: ScalarDomain,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form of a matrix together with its pivot columns.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    /// Nonzero rows of the reduced form; row `i` has a leading one in
    /// column `pivots[i]`.
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns without a pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.reduced.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.reduced.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Reduces `v` modulo the row space: the result vanishes on every pivot
    /// column and differs from `v` by an element of the row space.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (c, x) in self.reduced.row(i).iter().enumerate() {
                if !x.is_zero() {
                    out[c] = &out[c] - &(&f * x);
                }
            }
        }
        out
    }

    /// Basis of the null space `{x : A x = 0}` of the original matrix.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let d = &self.reduced.domain;
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![d.zero(); self.reduced.cols];
                v[f] = d.one();
                for (i, &p) in self.pivots.iter().enumerate() {
                    v[p] = -self.reduced.get(i, f);
                }
                v
            })
            .collect()
    }
}

impl Matrix {
    pub fn zeros(domain: &ScalarDomain, rows: usize, cols: usize) -> Self {
        Matrix { domain: domain.clone(), rows, cols, data: vec![domain.zero(); rows * cols] }
    }

    pub fn identity(domain: &ScalarDomain, n: usize) -> Self {
        let mut m = Self::zeros(domain, n, n);
        for i in 0..n {
            m.data[i * n + i] = domain.one();
        }
        m
    }

    pub fn from_fn(domain: &ScalarDomain, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = f(r, c);
                debug_assert!(domain.contains(&v), "entry {v} outside {domain}");
                data.push(v);
            }
        }
        Matrix { domain: domain.clone(), rows, cols, data }
    }

    pub fn from_rows(domain: &ScalarDomain, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        ensure!(rows.iter().all(|r| r.len() == cols), Shape, "ragged rows");
        ensure!(
            rows.iter().flatten().all(|s| domain.contains(s)),
            Shape,
            "entries outside {domain}"
        );
        let n = rows.len();
        Ok(Matrix { domain: domain.clone(), rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(domain: &ScalarDomain, rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        ensure!(columns.iter().all(|c| c.len() == rows), Shape, "column length mismatch");
        Ok(Self::from_fn(domain, rows, columns.len(), |r, c| columns[c][r].clone()))
    }

    pub fn from_ints(domain: &ScalarDomain, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(domain, rows.len(), cols, |r, c| domain.from_int(rows[r][c]))
    }

    pub fn diagonal(domain: &ScalarDomain, entries: &[Scalar]) -> Self {
        let n = entries.len();
        Self::from_fn(domain, n, n, |r, c| if r == c { entries[r].clone() } else { domain.zero() })
    }

    pub fn domain(&self) -> &ScalarDomain {
        &self.domain
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

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert!(self.domain.contains(&v));
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..self.cols).all(|c| if r == c { self.get(r, c).is_one() } else { self.get(r, c).is_zero() }))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.domain, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { domain: self.domain.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(self.domain.zero(), |acc, i| &acc + self.get(i, i))
    }

    /// `A v` for a column vector `v`.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length {} vs {} columns", v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = self.domain.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        ensure!(self.cols == rhs.rows, Shape, "cannot multiply {}x{} by {}x{}", self.rows, self.cols, rhs.rows, rhs.cols);
        ensure!(self.domain == rhs.domain, Shape, "domains differ: {} vs {}", self.domain, rhs.domain);
        let mut out = Matrix::zeros(&self.domain, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        let idx = r * rhs.cols + c;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        Matrix {
            domain: self.domain.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Kronecker product; the row index of `A ⊗ B` is `i * rows(B) + k`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        Matrix::from_fn(&self.domain, self.rows * rhs.rows, self.cols * rhs.cols, |r, c| {
            let a = self.get(r / rhs.rows, c / rhs.cols);
            if a.is_zero() {
                return self.domain.zero();
            }
            a * rhs.get(r % rhs.rows, c % rhs.cols)
        })
    }

    pub fn hstack(&self, rhs: &Matrix) -> Result<Matrix> {
        ensure!(self.rows == rhs.rows, Shape, "row counts differ");
        Ok(Matrix::from_fn(&self.domain, self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                rhs.get(r, c - self.cols).clone()
            }
        }))
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(&self.domain, self.rows, cols.len(), |r, c| self.get(r, cols[c]).clone())
    }

    pub fn map(&self, f: &ScalarMap) -> Result<Matrix> {
        ensure!(
            f.source() == &self.domain,
            Shape,
            "map from {} applied to a matrix over {}",
            f.source(),
            self.domain
        );
        let data = self.data.iter().map(|x| f.apply(x)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { domain: f.target().clone(), rows: self.rows, cols: self.cols, data })
    }

    /// Reduced row echelon form (fields only).
    pub fn row_echelon(&self) -> Result<RowEchelon> {
        self.domain.require_field("row reduction")?;
        let mut rows: Vec<Vec<Scalar>> = self.to_rows();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == rows.len() {
                break;
            }
            let Some(p) = (next..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
                continue;
            };
            rows.swap(next, p);
            let inv = rows[next][c].inv().expect("nonzero pivot in a field");
            if !inv.is_one() {
                for x in rows[next][c..].iter_mut() {
                    if !x.is_zero() {
                        *x = &*x * &inv;
                    }
                }
            }
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == next || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for k in c..self.cols {
                    if !pivot_row[k].is_zero() {
                        row[k] = &row[k] - &(&f * &pivot_row[k]);
                    }
                }
            }
            pivots.push(c);
            next += 1;
        }
        rows.truncate(next);
        let reduced = Matrix::from_fn(&self.domain, next, self.cols, |r, c| rows[r][c].clone());
        Ok(RowEchelon { reduced, pivots })
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.row_echelon()?.rank())
    }

    /// Rank and a basis of `{x : A x = 0}`.
    pub fn rank_and_kernel(&self) -> Result<(usize, Vec<Vec<Scalar>>)> {
        let ech = self.row_echelon()?;
        Ok((ech.rank(), ech.kernel()))
    }

    /// Exact determinant; Gaussian elimination over fields, fraction-free
    /// Bareiss elimination over the integers.
    pub fn det(&self) -> Result<Scalar> {
        ensure!(self.is_square(), Shape, "determinant of a {}x{} matrix", self.rows, self.cols);
        let n = self.rows;
        let mut a = self.to_rows();
        let mut sign = false;
        if self.domain.is_field() {
            let mut det = self.domain.one();
            for c in 0..n {
                let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                    return Ok(self.domain.zero());
                };
                if p != c {
                    a.swap(p, c);
                    sign = !sign;
                }
                det = &det * &a[c][c];
                let inv = a[c][c].inv().unwrap();
                let pivot_row = a[c].clone();
                for row in a.iter_mut().skip(c + 1) {
                    if row[c].is_zero() {
                        continue;
                    }
                    let f = &row[c] * &inv;
                    for k in c..n {
                        if !pivot_row[k].is_zero() {
                            row[k] = &row[k] - &(&f * &pivot_row[k]);
                        }
                    }
                }
            }
            return Ok(if sign { -det } else { det });
        }
        let mut prev = self.domain.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Ok(self.domain.zero());
            };
            if p != c {
                a.swap(p, c);
                sign = !sign;
            }
            for r in c + 1..n {
                for k in c + 1..n {
                    let num = &(&a[r][k] * &a[c][c]) - &(&a[r][c] * &a[c][k]);
                    a[r][k] = num.checked_div(&prev).ok_or_else(|| Error::Internal("Bareiss division not exact".into()))?;
                }
                a[r][c] = self.domain.zero();
            }
            prev = a[c][c].clone();
        }
        let det = if n == 0 { self.domain.one() } else { a[n - 1][n - 1].clone() };
        Ok(if sign { -det } else { det })
    }

    /// Inverse over a field; `None` when singular.
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        ensure!(self.is_square(), Shape, "inverse of a {}x{} matrix", self.rows, self.cols);
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(&self.domain, n))?;
        let ech = aug.row_echelon()?;
        if ech.rank() < n || ech.pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        Ok(Some(Matrix::from_fn(&self.domain, n, n, |r, c| ech.reduced.get(r, n + c).clone())))
    }

    /// Some solution of `A x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        ensure!(b.len() == self.rows, Shape, "right-hand side has length {} for {} rows", b.len(), self.rows);
        let col = Matrix::from_columns(&self.domain, self.rows, &[b.to_vec()])?;
        let ech = self.hstack(&col)?.row_echelon()?;
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.domain.zero(); self.cols];
        for (i, &p) in ech.pivots.iter().enumerate() {
            x[p] = ech.reduced.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.domain)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ScalarDomain {
        ScalarDomain::Rationals
    }

    #[test]
    fn rank_and_kernel_examples() {
        let (r, k) = Matrix::identity(&q(), 3).rank_and_kernel().unwrap();
        assert_eq!((r, k.len()), (3, 0));

        let m = Matrix::from_ints(&q(), &[&[1, 2], &[2, 4]]);
        let (r, k) = m.rank_and_kernel().unwrap();
        assert_eq!(r, 1);
        assert_eq!(k, vec![vec![q().from_int(-2), q().from_int(1)]]);

        let (r, k) = Matrix::zeros(&q(), 2, 2).rank_and_kernel().unwrap();
        assert_eq!(r, 0);
        assert_eq!(k, Matrix::identity(&q(), 2).to_rows());
    }

    #[test]
    fn kernel_needs_a_field() {
        let m = Matrix::identity(&ScalarDomain::Integers, 2);
        assert!(matches!(m.rank_and_kernel(), Err(Error::UnsupportedDomain(_))));
    }

    #[test]
    fn determinant_examples() {
        assert!(Matrix::identity(&q(), 4).det().unwrap().is_one());
        // [[a, 2b], [b, a]] at a = 3, b = 1
        assert_eq!(Matrix::from_ints(&q(), &[&[3, 2], &[1, 3]]).det().unwrap(), q().from_int(7));
        assert_eq!(Matrix::from_ints(&q(), &[&[0, -1], &[1, 0]]).det().unwrap(), q().from_int(1));
        assert!(matches!(Matrix::zeros(&q(), 2, 3).det(), Err(Error::Shape(_))));
    }

    #[test]
    fn integer_determinant_is_fraction_free() {
        let z = ScalarDomain::Integers;
        let m = Matrix::from_ints(&z, &[&[2, 3, 1], &[4, 1, -2], &[0, 5, 7]]);
        // cofactor expansion: 2*(7+10) - 3*(28-0) + 1*(20-0) = 34 - 84 + 20
        assert_eq!(m.det().unwrap(), z.from_int(-30));
        let swap = Matrix::from_ints(&z, &[&[0, 1], &[1, 0]]);
        assert_eq!(swap.det().unwrap(), z.from_int(-1));
    }

    #[test]
    fn kron_layout() {
        let a = Matrix::from_ints(&q(), &[&[1, 2], &[3, 4]]);
        let expected = Matrix::from_ints(&q(), &[&[1, 0, 2, 0], &[0, 1, 0, 2], &[3, 0, 4, 0], &[0, 3, 0, 4]]);
        assert_eq!(a.kron(&Matrix::identity(&q(), 2)), expected);
        assert!(Matrix::identity(&q(), 2).kron(&Matrix::identity(&q(), 2)).is_identity());
    }

    #[test]
    fn inverse_and_solve() {
        let m = Matrix::from_ints(&q(), &[&[2, 1], &[5, 3]]);
        let inv = m.inverse().unwrap().unwrap();
        assert!((&m * &inv).is_identity());
        assert!(Matrix::from_ints(&q(), &[&[1, 2], &[2, 4]]).inverse().unwrap().is_none());
        let x = m.solve(&[q().from_int(3), q().from_int(8)]).unwrap().unwrap();
        assert_eq!(x, vec![q().from_int(1), q().from_int(1)]);
        let sing = Matrix::from_ints(&q(), &[&[1, 2], &[2, 4]]);
        assert!(sing.solve(&[q().from_int(1), q().from_int(0)]).unwrap().is_none());
    }

    #[test]
    fn prime_field_rank() {
        let f2 = ScalarDomain::prime_field(2).unwrap();
        let m = Matrix::from_ints(&f2, &[&[1, 1], &[1, 1]]);
        assert_eq!(m.rank().unwrap(), 1);
        let f3 = ScalarDomain::prime_field(3).unwrap();
        let m = Matrix::from_ints(&f3, &[&[1, 1], &[1, -2]]);
        assert_eq!(m.rank().unwrap(), 1);
    }
}
