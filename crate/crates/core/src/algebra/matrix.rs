use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use super::Scalar;

/// A 3×3 matrix over a [`Scalar`] field. Indices are zero-based.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix3<S> {
    entries: [[S; 3]; 3],
}

impl<S: Scalar> Matrix3<S> {
    pub fn from_rows(entries: [[S; 3]; 3]) -> Self {
        Self { entries }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> S) -> Self {
        Self {
            entries: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| S::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn diagonal(d: [S; 3]) -> Self {
        let [a, b, c] = d;
        let z = S::zero;
        Self::from_rows([[a, z(), z()], [z(), b, z()], [z(), z(), c]])
    }

    /// Builds a matrix from small integer entries; handy in tests.
    pub fn from_ints(rows: [[i64; 3]; 3]) -> Self {
        Self::from_fn(|i, j| S::from_int(rows[i][j]))
    }

    pub fn rows(&self) -> &[[S; 3]; 3] {
        &self.entries
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix3<T> {
        Matrix3::from_fn(|i, j| f(&self.entries[i][j]))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.entries[j][i].clone())
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::from_fn(|i, j| self.entries[i][j].clone() * k.clone())
    }

    pub fn trace(&self) -> S {
        self.entries[0][0].clone() + self.entries[1][1].clone() + self.entries[2][2].clone()
    }

    /// Signed minor: the partial derivative of the determinant with respect
    /// to entry `(i, j)`.
    pub fn cofactor(&self, i: usize, j: usize) -> S {
        let r = [(i + 1) % 3, (i + 2) % 3];
        let c = [(j + 1) % 3, (j + 2) % 3];
        // cyclic index choice makes the sign come out right automatically
        let e = &self.entries;
        e[r[0]][c[0]].clone() * e[r[1]][c[1]].clone()
            - e[r[0]][c[1]].clone() * e[r[1]][c[0]].clone()
    }

    pub fn cofactor_matrix(&self) -> Self {
        Self::from_fn(|i, j| self.cofactor(i, j))
    }

    pub fn adjugate(&self) -> Self {
        Self::from_fn(|i, j| self.cofactor(j, i))
    }

    pub fn det(&self) -> S {
        (0..3).fold(S::zero(), |acc, j| {
            acc + self.entries[0][j].clone() * self.cofactor(0, j)
        })
    }

    /// Adjugate over determinant. `None` when the determinant is exactly zero.
    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        if !S::MODE.eq(&super::ScalarMode::ExactRational) {
            let scale = self.max_magnitude().powi(3);
            if det.magnitude() < 1e-12 * scale {
                log::warn!(
                    "ill-conditioned inverse: |det| = {:e}, max entry cubed = {:e}",
                    det.magnitude(),
                    scale
                );
            }
        }
        let adj = self.adjugate();
        Some(Self::from_fn(|i, j| {
            adj.entries[i][j].clone() / det.clone()
        }))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| i == j || self.entries[i][j].is_zero()))
    }

    pub fn max_magnitude(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(Scalar::magnitude)
            .fold(0.0, f64::max)
    }

    /// Largest entrywise distance to `other`.
    pub fn distance(&self, other: &Self) -> f64 {
        (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| (self.entries[i][j].clone() - other.entries[i][j].clone()).magnitude())
            .fold(0.0, f64::max)
    }

    /// `g * self * g^-1`, given `g` and its inverse.
    pub fn conjugated(&self, g: &Self, g_inv: &Self) -> Self {
        &(g * self) * g_inv
    }
}

impl<S> Index<(usize, usize)> for Matrix3<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.entries[i][j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix3<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.entries[i][j]
    }
}

impl<S: Scalar> Mul for &Matrix3<S> {
    type Output = Matrix3<S>;

    fn mul(self, rhs: &Matrix3<S>) -> Matrix3<S> {
        Matrix3::from_fn(|i, j| {
            (0..3).fold(S::zero(), |acc, k| {
                acc + self.entries[i][k].clone() * rhs.entries[k][j].clone()
            })
        })
    }
}

impl<S: Scalar> Mul for Matrix3<S> {
    type Output = Matrix3<S>;

    fn mul(self, rhs: Matrix3<S>) -> Matrix3<S> {
        &self * &rhs
    }
}

impl<S: Scalar> Add for &Matrix3<S> {
    type Output = Matrix3<S>;

    fn add(self, rhs: &Matrix3<S>) -> Matrix3<S> {
        Matrix3::from_fn(|i, j| self.entries[i][j].clone() + rhs.entries[i][j].clone())
    }
}

impl<S: Scalar> Sub for &Matrix3<S> {
    type Output = Matrix3<S>;

    fn sub(self, rhs: &Matrix3<S>) -> Matrix3<S> {
        Matrix3::from_fn(|i, j| self.entries[i][j].clone() - rhs.entries[i][j].clone())
    }
}

impl<S: Scalar> Neg for &Matrix3<S> {
    type Output = Matrix3<S>;

    fn neg(self) -> Matrix3<S> {
        Matrix3::from_fn(|i, j| -self.entries[i][j].clone())
    }
}
