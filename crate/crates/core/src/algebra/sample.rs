//! Deterministic unimodular sampling from products of transvections.
//!
//! Every sample is drawn from a ChaCha8 stream keyed by `(seed, stream)`;
//! sample `s` of a certification run reads stream `s`, so samples can be
//! generated independently and in any order.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Constraint, Matrix3, MatrixTuple, Scalar};

/// The elementary matrix `E_ij(λ)`: identity plus `λ` at row `i`, column
/// `j` (1-based, `i != j`). Its determinant is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transvection {
    pub row: usize,
    pub col: usize,
    pub value: BigRational,
}

const OFF_DIAGONAL: [(usize, usize); 6] = [(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)];

impl Transvection {
    pub fn new(row: usize, col: usize, value: BigRational) -> Self {
        assert!(
            (1..=3).contains(&row) && (1..=3).contains(&col) && row != col,
            "transvection position must be off-diagonal"
        );
        Self { row, col, value }
    }

    pub fn matrix(&self) -> Matrix3<BigRational> {
        let mut m = Matrix3::identity();
        m[(self.row - 1, self.col - 1)] = self.value.clone();
        m
    }
}

/// Product of transvections in order; the empty product is the identity.
pub fn transvection_product(factors: &[Transvection]) -> Matrix3<BigRational> {
    factors
        .iter()
        .fold(Matrix3::identity(), |acc, t| &acc * &t.matrix())
}

pub(crate) fn sampler_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn random_value(rng: &mut impl Rng, height: u32) -> BigRational {
    let h = height as i64;
    let mut num = 0;
    while num == 0 {
        num = rng.random_range(-h..=h);
    }
    let den = rng.random_range(1..=h);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Draws 6 to 12 transvections. The first six visit every off-diagonal
/// position once, in random order; the rest are placed uniformly. Values
/// are nonzero rationals `p/q` with `|p|, q <= height`.
pub fn random_transvections(rng: &mut impl Rng, height: u32) -> Vec<Transvection> {
    assert!(height >= 1, "height must be at least 1");
    let mut positions = OFF_DIAGONAL.to_vec();
    positions.shuffle(rng);
    let extra = rng.random_range(0..=6);
    for _ in 0..extra {
        positions.push(OFF_DIAGONAL[rng.random_range(0..OFF_DIAGONAL.len())]);
    }
    positions
        .into_iter()
        .map(|(i, j)| Transvection::new(i, j, random_value(rng, height)))
        .collect()
}

fn draw<S: Scalar>(rng: &mut ChaCha8Rng, height: u32) -> Matrix3<S> {
    let exact = transvection_product(&random_transvections(rng, height));
    debug_assert!((exact.det() - BigRational::one()).is_zero());
    exact.map(S::from_rational)
}

/// A random matrix of determinant 1, deterministic in `seed`.
///
/// The product is formed exactly and then converted, so exact-mode output
/// has determinant exactly 1 and float-mode output is the correctly rounded
/// image of that matrix.
pub fn sample_sl3<S: Scalar>(seed: u64, height: u32) -> Matrix3<S> {
    draw(&mut sampler_rng(seed, 0), height)
}

/// Sample number `index` of a run: `rank` matrices drawn in order from
/// stream `index`.
pub fn sample_tuple<S: Scalar>(seed: u64, index: u64, rank: usize, height: u32) -> MatrixTuple<S> {
    let mut rng = sampler_rng(seed, index);
    let matrices = (0..rank).map(|_| draw(&mut rng, height)).collect();
    MatrixTuple::from_parts(matrices, Constraint::SpecialLinear)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn empty_product_is_identity() {
        assert_eq!(transvection_product(&[]), Matrix3::identity());
    }

    #[test]
    fn two_transvections() {
        let m =
            transvection_product(&[Transvection::new(1, 2, q(1)), Transvection::new(2, 1, q(1))]);
        assert_eq!(m, Matrix3::from_ints([[2, 1, 0], [1, 1, 0], [0, 0, 1]]));
        assert_eq!(m.det(), q(1));
    }

    #[test]
    fn deterministic_in_seed() {
        let a: Matrix3<BigRational> = sample_sl3(17, 10);
        let b: Matrix3<BigRational> = sample_sl3(17, 10);
        let c: Matrix3<BigRational> = sample_sl3(18, 10);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn float_sample_is_rounded_exact_sample() {
        let exact: Matrix3<BigRational> = sample_sl3(5, 10);
        let float: Matrix3<Complex64> = sample_sl3(5, 10);
        assert_eq!(exact.map(Complex64::from_rational), float);
        assert!(
            (float.det() - Complex64::new(1.0, 0.0)).norm() < 1e-9 * float.max_magnitude().powi(3)
        );
    }

    #[test]
    fn transvection_counts_and_values() {
        let mut rng = sampler_rng(3, 0);
        for _ in 0..200 {
            let ts = random_transvections(&mut rng, 4);
            assert!((6..=12).contains(&ts.len()));
            let mut first: Vec<_> = ts[..6].iter().map(|t| (t.row, t.col)).collect();
            first.sort();
            assert_eq!(first, OFF_DIAGONAL.to_vec());
            for t in &ts {
                assert!(!t.value.is_zero());
                assert!(t.value.numer().magnitude() <= &4u32.into());
                assert!(t.value.denom() <= &BigInt::from(4));
            }
        }
    }

    #[test]
    fn tuple_streams_are_independent_of_rank() {
        let t2: MatrixTuple<BigRational> = sample_tuple(9, 3, 2, 10);
        let t3: MatrixTuple<BigRational> = sample_tuple(9, 3, 3, 10);
        assert_eq!(t2.matrices(), &t3.matrices()[..2]);
    }
}
