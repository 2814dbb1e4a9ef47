use super::{GroupWord, Matrix3, Scalar};
use crate::error::{Error, Result};

/// Whether a tuple lives on `SL(3)^r` or on all of `gl(3)^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constraint {
    SpecialLinear,
    GeneralLinear,
}

impl Constraint {
    pub fn tag(self) -> &'static str {
        match self {
            Constraint::SpecialLinear => "sl",
            Constraint::GeneralLinear => "gl",
        }
    }
}

impl std::str::FromStr for Constraint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sl" => Ok(Constraint::SpecialLinear),
            "gl" => Ok(Constraint::GeneralLinear),
            other => Err(Error::Parse(format!("unknown constraint `{other}`"))),
        }
    }
}

/// A point `(X_1, ..., X_r)` of the representation variety.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixTuple<S> {
    matrices: Vec<Matrix3<S>>,
    constraint: Constraint,
}

/// Relative tolerance for `det = 1` in floating-point mode.
pub const UNIMODULAR_TOLERANCE: f64 = 1e-9;

impl<S: Scalar> MatrixTuple<S> {
    /// Validates the tuple: at least one matrix, and unit determinants in
    /// special-linear mode (exactly, or within [`UNIMODULAR_TOLERANCE`]).
    pub fn new(matrices: Vec<Matrix3<S>>, constraint: Constraint) -> Result<Self> {
        if matrices.is_empty() {
            return Err(Error::EmptyTuple);
        }
        if constraint == Constraint::SpecialLinear {
            for (k, m) in matrices.iter().enumerate() {
                let defect = m.det() - S::one();
                if !defect.is_negligible(UNIMODULAR_TOLERANCE, 1.0) {
                    return Err(Error::NotUnimodular(k + 1));
                }
            }
        }
        Ok(Self {
            matrices,
            constraint,
        })
    }

    pub fn special(matrices: Vec<Matrix3<S>>) -> Result<Self> {
        Self::new(matrices, Constraint::SpecialLinear)
    }

    pub fn general(matrices: Vec<Matrix3<S>>) -> Result<Self> {
        Self::new(matrices, Constraint::GeneralLinear)
    }

    /// Skips validation; callers guarantee the constraint still holds.
    pub(crate) fn from_parts(matrices: Vec<Matrix3<S>>, constraint: Constraint) -> Self {
        Self {
            matrices,
            constraint,
        }
    }

    pub fn rank(&self) -> usize {
        self.matrices.len()
    }

    pub fn constraint(&self) -> Constraint {
        self.constraint
    }

    pub fn matrices(&self) -> &[Matrix3<S>] {
        &self.matrices
    }

    /// `X_k`, 1-based.
    pub fn matrix(&self, k: usize) -> Result<&Matrix3<S>> {
        k.checked_sub(1)
            .and_then(|i| self.matrices.get(i))
            .ok_or(Error::RankMismatch {
                index: k,
                rank: self.rank(),
            })
    }

    /// Same tuple with `X_k` replaced. Keeps the constraint tag unchecked.
    pub fn with_matrix(&self, k: usize, m: Matrix3<S>) -> Result<Self> {
        self.matrix(k)?;
        let mut matrices = self.matrices.clone();
        matrices[k - 1] = m;
        Ok(Self::from_parts(matrices, self.constraint))
    }

    pub fn with_constraint(&self, constraint: Constraint) -> Result<Self> {
        Self::new(self.matrices.clone(), constraint)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> MatrixTuple<T> {
        MatrixTuple::from_parts(
            self.matrices.iter().map(|m| m.map(&f)).collect(),
            self.constraint,
        )
    }

    pub fn to_complex(&self) -> MatrixTuple<num_complex::Complex64> {
        self.map(Scalar::to_complex)
    }

    /// `X_k^-1`, failing on a singular matrix.
    pub fn inverse_of(&self, k: usize) -> Result<Matrix3<S>> {
        self.matrix(k)?.inverse().ok_or(Error::SingularMatrix(k))
    }

    fn check_word(&self, word: &GroupWord) -> Result<()> {
        let max = word.max_generator();
        if max > self.rank() {
            return Err(Error::RankMismatch {
                index: max,
                rank: self.rank(),
            });
        }
        Ok(())
    }
}

/// The matrix a word evaluates to: the product of the tuple's matrices and
/// their inverses in word order. The empty word gives the identity.
pub fn word_eval<S: Scalar>(word: &GroupWord, tuple: &MatrixTuple<S>) -> Result<Matrix3<S>> {
    tuple.check_word(word)?;
    let mut inverses: Vec<Option<Matrix3<S>>> = vec![None; tuple.rank()];
    let mut acc: Option<Matrix3<S>> = None;
    for letter in word.letters() {
        let k = letter.generator;
        let factor = if letter.exponent > 0 {
            tuple.matrix(k)?.clone()
        } else {
            match &inverses[k - 1] {
                Some(inv) => inv.clone(),
                None => {
                    let inv = tuple.inverse_of(k)?;
                    inverses[k - 1] = Some(inv.clone());
                    inv
                }
            }
        };
        for _ in 0..letter.exponent.unsigned_abs() {
            acc = Some(match acc {
                None => factor.clone(),
                Some(m) => &m * &factor,
            });
        }
    }
    Ok(acc.unwrap_or_else(Matrix3::identity))
}

/// Simultaneous conjugation `(g X_1 g^-1, ..., g X_r g^-1)`.
pub fn conjugate_tuple<S: Scalar>(
    g: &Matrix3<S>,
    tuple: &MatrixTuple<S>,
) -> Result<MatrixTuple<S>> {
    let g_inv = g.inverse().ok_or(Error::SingularConjugator)?;
    Ok(MatrixTuple::from_parts(
        tuple
            .matrices
            .iter()
            .map(|x| x.conjugated(g, &g_inv))
            .collect(),
        tuple.constraint,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = Matrix3<BigRational>;

    fn cyclic() -> Q {
        Q::from_ints([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    }

    #[test]
    fn empty_word_is_identity() {
        let t = MatrixTuple::special(vec![cyclic()]).unwrap();
        assert_eq!(word_eval(&GroupWord::empty(), &t).unwrap(), Q::identity());
        let cancelled = GroupWord::from_signed(&[1, -1]);
        assert_eq!(word_eval(&cancelled, &t).unwrap(), Q::identity());
    }

    #[test]
    fn square_of_cyclic_permutation() {
        let t = MatrixTuple::special(vec![cyclic()]).unwrap();
        let w = GroupWord::from_pairs(&[(1, 2)]);
        assert_eq!(
            word_eval(&w, &t).unwrap(),
            Q::from_ints([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
        );
    }

    #[test]
    fn errors() {
        let t = MatrixTuple::special(vec![cyclic()]).unwrap();
        let w = GroupWord::from_signed(&[2]);
        assert_eq!(
            word_eval(&w, &t),
            Err(Error::RankMismatch { index: 2, rank: 1 })
        );
        let singular = Q::from_ints([[1, 0, 0], [0, 0, 0], [0, 0, 1]]);
        let g = MatrixTuple::general(vec![singular.clone()]).unwrap();
        assert_eq!(
            word_eval(&GroupWord::from_signed(&[-1]), &g),
            Err(Error::SingularMatrix(1))
        );
        assert!(word_eval(&GroupWord::from_signed(&[1]), &g).is_ok());
        assert_eq!(
            MatrixTuple::special(vec![singular.clone()]),
            Err(Error::NotUnimodular(1))
        );
        assert_eq!(
            conjugate_tuple(&singular, &t),
            Err(Error::SingularConjugator)
        );
        assert_eq!(
            MatrixTuple::<BigRational>::special(vec![]),
            Err(Error::EmptyTuple)
        );
    }

    #[test]
    fn conjugation_fixes_commuting_tuples() {
        let d = |a: i64, b: i64| {
            Q::diagonal([
                BigRational::from_integer(a.into()),
                BigRational::new(1.into(), (a * b).into()),
                BigRational::from_integer(b.into()),
            ])
        };
        let t = MatrixTuple::special(vec![d(2, 3), d(-1, 5)]).unwrap();
        assert_eq!(conjugate_tuple(&Q::identity(), &t).unwrap(), t);
        assert_eq!(conjugate_tuple(&d(7, 11), &t).unwrap(), t);
    }
}
