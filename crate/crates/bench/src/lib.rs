//! Shared fixtures for the benchmarks.

use sl3chars_core::{sample_tuple, BigRational, MatrixTuple};

pub const SEED: u64 = 42;

pub fn exact_tuple(rank: usize) -> MatrixTuple<BigRational> {
    sample_tuple(SEED, 0, rank, 10)
}
