//! Dense matrices of arbitrary shape and the elimination kernels behind
//! [`Scalar::determinant`](super::Scalar::determinant) and
//! [`Scalar::rank`](super::Scalar::rank).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
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

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let data = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        Self {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn determinant(&self) -> S {
        S::determinant(self)
    }

    pub fn rank(&self) -> usize {
        S::rank(self)
    }

    /// Product of the Euclidean row norms (Hadamard's bound on |det|).
    pub fn hadamard_scale(&self) -> f64 {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.magnitude().powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .product()
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub(crate) fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = exact_div(num, &prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Fraction-free row echelon reduction; returns the number of pivots.
pub(crate) fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let num = &m[i][j] * &m[rank][c] - &m[i][c] * &m[rank][j];
                m[i][j] = exact_div(num, &prev);
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

fn exact_div(num: BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    debug_assert!(r.is_zero(), "inexact Bareiss division");
    q
}

/// Gaussian elimination with partial pivoting.
pub(crate) fn pivoted_determinant(m: &DenseMatrix<Complex64>) -> Complex64 {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a: Vec<Vec<Complex64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| a[x][k].norm().total_cmp(&a[y][k].norm()))
            .unwrap();
        if a[p][k].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k];
        det *= pivot;
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            let f = row[k] / pivot;
            for (x, &t) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                *x -= f * t;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn exact(rows: &[&[(i64, i64)]]) -> DenseMatrix<BigRational> {
        DenseMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(n, d)| q(n, d)).collect())
                .collect(),
        )
    }

    /// Laplace expansion along the first row.
    fn cofactor_det(m: &DenseMatrix<BigRational>) -> BigRational {
        let n = m.rows();
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = BigRational::zero();
        for j in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = cofactor_det(&m.submatrix(&rows, &cols));
            let term = m.get(0, j).clone() * minor;
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn bareiss_matches_laplace() {
        let m = exact(&[
            &[(1, 2), (3, 1), (0, 1), (-2, 3)],
            &[(5, 1), (-1, 7), (2, 1), (1, 1)],
            &[(0, 1), (4, 9), (-3, 2), (6, 1)],
            &[(7, 5), (1, 1), (1, 3), (0, 1)],
        ]);
        assert_eq!(m.determinant(), cofactor_det(&m));
    }

    #[test]
    fn singular_and_pivoting_cases() {
        let m = exact(&[&[(0, 1), (1, 1)], &[(1, 1), (0, 1)]]);
        assert_eq!(m.determinant(), q(-1, 1));
        let s = exact(&[&[(1, 2), (1, 1)], &[(1, 1), (2, 1)]]);
        assert_eq!(s.determinant(), q(0, 1));
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn rank_with_skipped_columns() {
        let m = exact(&[
            &[(0, 1), (1, 1), (2, 1), (3, 1)],
            &[(0, 1), (2, 1), (4, 1), (6, 1)],
            &[(0, 1), (0, 1), (1, 3), (1, 1)],
        ]);
        assert_eq!(m.rank(), 2);
        let z = DenseMatrix::<BigRational>::zeros(3, 4);
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn float_paths_agree_with_exact() {
        let m = exact(&[
            &[(2, 1), (-1, 3), (5, 4)],
            &[(1, 1), (0, 1), (-2, 1)],
            &[(3, 7), (1, 1), (1, 1)],
        ]);
        let f = DenseMatrix::from_rows(
            (0..3)
                .map(|i| m.row(i).iter().map(Complex64::from_rational).collect())
                .collect(),
        );
        let exact_det = m.determinant().to_complex();
        assert!((f.determinant() - exact_det).norm() < 1e-12);
        assert_eq!(f.rank(), 3);
    }
}
