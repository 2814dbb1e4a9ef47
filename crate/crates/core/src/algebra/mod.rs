//! Scalars, 3×3 matrices, free-group words and unimodular sampling.

mod linalg;
mod matrix;
mod sample;
mod scalar;
mod tuple;
mod word;

pub use linalg::DenseMatrix;
pub use matrix::Matrix3;
pub use sample::{
    random_transvections, sample_sl3, sample_tuple, transvection_product, Transvection,
};
pub use scalar::{Scalar, ScalarMode};
pub use tuple::{conjugate_tuple, word_eval, Constraint, MatrixTuple, UNIMODULAR_TOLERANCE};
pub use word::{GroupWord, Letter};
