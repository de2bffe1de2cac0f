//! Dense matrices and fraction-free determinants.

use std::fmt;

use super::ring::{FractionField, Ring};

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = R::one();
        }
        m
    }

    pub fn diagonal(entries: &[R]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
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

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<S: Ring, E>(&self, f: impl Fn(&R) -> Result<S, E>) -> Result<Matrix<S>, E> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = &R> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(R::zero(), |acc, k| acc.add(&self[(i, k)].mul(&other[(k, j)])))
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Submatrix on the given row and column index sets.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Determinant by Bareiss fraction-free elimination over an integral
    /// domain. Every intermediate division is exact. The empty matrix has
    /// determinant one.
    pub fn det_bareiss(&self) -> R {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return R::one();
        }
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = R::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return R::zero();
                };
                a.swap_rows(k, p);
                negate = !negate;
            }
            let pivot = a[(k, k)].clone();
            for i in k + 1..n {
                let aik = a[(i, k)].clone();
                for j in k + 1..n {
                    let num = a[(i, j)].mul(&pivot).sub(&aik.mul(&a[(k, j)]));
                    a[(i, j)] = num
                        .exact_div(&prev)
                        .expect("Bareiss step must divide exactly");
                }
                a[(i, k)] = R::zero();
            }
            prev = pivot;
        }
        let d = a[(n - 1, n - 1)].clone();
        if negate {
            d.neg()
        } else {
            d
        }
    }

    /// Plain cofactor expansion; exponential, used only as a test oracle.
    pub fn det_cofactor(&self) -> R {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return R::one();
        }
        if n == 1 {
            return self[(0, 0)].clone();
        }
        let mut acc = R::zero();
        for j in 0..n {
            if self[(0, j)].is_zero() {
                continue;
            }
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = self.select(&rows, &cols).det_cofactor();
            let term = self[(0, j)].mul(&minor);
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }
}

impl<F: FractionField> Matrix<F> {
    /// Exact determinant over a fraction field: each row is scaled by a common
    /// denominator, Bareiss runs over the base domain, and the scale is divided
    /// back out. The result lies in the base domain whenever the entries do.
    pub fn det_fraction_free(&self) -> F {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut scale = F::Base::one();
        let mut base = Matrix::<F::Base>::zeros(n, n);
        for i in 0..n {
            let dens: Vec<F::Base> = self.row(i).iter().map(|x| x.denom()).collect();
            let d = F::common_denominator(&dens);
            for j in 0..n {
                let x = &self[(i, j)];
                let factor = d
                    .exact_div(&x.denom())
                    .expect("common denominator must be a multiple");
                base[(i, j)] = x.numer().mul(&factor);
            }
            scale = scale.mul(&d);
        }
        F::from_parts(&base.det_bareiss(), &scale)
    }
}

impl<R> std::ops::Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.data[i * self.cols + j]
    }
}

impl<R> std::ops::IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.data[i * self.cols + j]
    }
}

impl<R: Ring> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac::RatFunc;
    use crate::arith::rational::{int, rat, Rational};

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn small_determinants() {
        assert_eq!(q(&[&[0, 2], &[1, 0]]).det_fraction_free(), int(-2));
        assert_eq!(Matrix::<Rational>::identity(3).det_fraction_free(), int(1));
        assert_eq!(Matrix::<Rational>::zeros(0, 0).det_fraction_free(), int(1));
    }

    #[test]
    fn polynomial_entries() {
        let t = RatFunc::t();
        let one = RatFunc::one();
        let m = Matrix::from_rows(vec![vec![t.clone(), one.clone()], vec![one.clone(), t.clone()]]);
        assert_eq!(m.det_fraction_free().to_string(), "-1 + t^2");
    }

    #[test]
    fn fractional_entries_match_cofactor() {
        let m = Matrix::from_rows(vec![
            vec![rat(1, 2), int(3), rat(-2, 7)],
            vec![int(0), rat(5, 3), int(1)],
            vec![rat(4, 5), int(-1), rat(1, 9)],
        ]);
        assert_eq!(m.det_fraction_free(), m.det_cofactor());
    }

    #[test]
    fn singular_needs_pivoting() {
        let m = q(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        assert_eq!(m.det_fraction_free(), int(-1));
        let s = q(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.det_fraction_free(), int(0));
    }
}
