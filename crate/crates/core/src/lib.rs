//! Trace coordinates on the SL(3,C) character variety of a free group.
//!
//! The crate evaluates trace invariants `tr(W)` of words `W` in tuples of
//! 3×3 matrices, enumerates the minimal generator catalog of the invariant
//! ring, and certifies algebraic independence of distinguished sets of
//! `8r - 8` traces by evaluating Jacobian determinants at random unimodular
//! points. Every computation runs over two interchangeable scalar fields:
//! exact rationals ([`BigRational`]) for proofs and double-precision complex
//! numbers ([`Complex64`]) for quick numerical checks.
//!
//! A nonzero determinant computed in exact arithmetic at a single rational
//! point proves that the determinant polynomial is not identically zero, and
//! hence that the parameter set admits no polynomial relation.

pub mod algebra;
pub mod calculus;
pub mod certify;
mod error;
pub mod invariants;
pub mod magnus;

pub use algebra::{
    conjugate_tuple, sample_sl3, sample_tuple, word_eval, Constraint, DenseMatrix, GroupWord,
    Letter, Matrix3, MatrixTuple, Scalar, ScalarMode, Transvection,
};
pub use calculus::{
    d_trace, fd_trace, jacobian, jacobian_on_constraint, trace_gradient, JacobianMatrix,
    VariableIndex,
};
pub use certify::{
    block_structure_check, certify_independence, certify_parameter_set, is_nonzero_determinant,
    normalize_pair, BlockReport, CertifyOptions, IndependenceCertificate, ParameterSet,
    SampleOutcome, VariableSet, Variant, Verdict,
};
pub use error::{Error, Result};
pub use invariants::{
    count_generators, eval_trace, generator_catalog, nilpotency_degree, second_coefficient,
    GeneratorCatalog, GeneratorForm, TraceInvariant,
};
pub use magnus::{gl_dim, is_irreducible, krull_dim, span_dimension, submersivity_rank, MagnusMap};

pub use num_complex::Complex64;
pub use num_rational::BigRational;
