use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::Neg;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use super::linalg::{self, DenseMatrix};
use crate::error::{Error, Result};

/// Which scalar field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarMode {
    ExactRational,
    ComplexFloat,
}

impl ScalarMode {
    pub fn tag(self) -> &'static str {
        match self {
            ScalarMode::ExactRational => "exact",
            ScalarMode::ComplexFloat => "float",
        }
    }
}

impl std::str::FromStr for ScalarMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(ScalarMode::ExactRational),
            "float" => Ok(ScalarMode::ComplexFloat),
            other => Err(Error::Parse(format!("unknown scalar mode `{other}`"))),
        }
    }
}

impl std::fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// A field the toolkit can compute over.
///
/// Exact rationals answer every zero test exactly; complex floats answer
/// them against a caller-supplied relative tolerance. Linear algebra that
/// depends on the field (determinants, ranks, splitting the characteristic
/// polynomial) is dispatched through this trait.
pub trait Scalar: Num + Neg<Output = Self> + Clone + Debug + Send + Sync + 'static {
    const MODE: ScalarMode;

    fn from_rational(q: &BigRational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn to_complex(&self) -> Complex64;

    fn magnitude(&self) -> f64;

    /// Zero test. Exact scalars ignore `tol` and `scale`; floats compare
    /// `|self| <= tol * scale`.
    fn is_negligible(&self, tol: f64, scale: f64) -> bool;

    /// Total order used for canonical sorting (numeric for rationals,
    /// lexicographic on (re, im) for complex numbers).
    fn canonical_cmp(&self, other: &Self) -> Ordering;

    fn determinant(m: &DenseMatrix<Self>) -> Self;

    fn rank(m: &DenseMatrix<Self>) -> usize;

    /// Roots of the monic cubic `z^3 + c[2] z^2 + c[1] z + c[0]`, in no
    /// particular order. Exact scalars fail with [`Error::NotSplit`] unless
    /// all three roots are rational.
    fn cubic_roots(c: [Self; 3]) -> Result<[Self; 3]>;
}

impl Scalar for BigRational {
    const MODE: ScalarMode = ScalarMode::ExactRational;

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn is_negligible(&self, _tol: f64, _scale: f64) -> bool {
        self.is_zero()
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn determinant(m: &DenseMatrix<Self>) -> Self {
        assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
        if m.rows() == 0 {
            return BigRational::one();
        }
        let (ints, scale) = clear_denominators(m);
        BigRational::new(linalg::bareiss_determinant(ints), scale)
    }

    fn rank(m: &DenseMatrix<Self>) -> usize {
        let (ints, _) = clear_denominators(m);
        linalg::bareiss_rank(ints)
    }

    fn cubic_roots(c: [Self; 3]) -> Result<[Self; 3]> {
        rational_cubic_roots(&c)
    }
}

impl Scalar for Complex64 {
    const MODE: ScalarMode = ScalarMode::ComplexFloat;

    fn from_rational(q: &BigRational) -> Self {
        Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn is_negligible(&self, tol: f64, scale: f64) -> bool {
        self.norm() <= tol * scale
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.re
            .total_cmp(&other.re)
            .then_with(|| self.im.total_cmp(&other.im))
    }

    fn determinant(m: &DenseMatrix<Self>) -> Self {
        linalg::pivoted_determinant(m)
    }

    /// Singular values below `1e-8` of the largest count as zero.
    fn rank(m: &DenseMatrix<Self>) -> usize {
        if m.rows() == 0 || m.cols() == 0 {
            return 0;
        }
        let dm = DMatrix::from_row_slice(m.rows(), m.cols(), m.as_slice());
        let sv = dm.singular_values();
        let largest = sv.iter().cloned().fold(0.0, f64::max);
        if largest == 0.0 {
            return 0;
        }
        sv.iter().filter(|&&s| s > 1e-8 * largest).count()
    }

    fn cubic_roots(c: [Self; 3]) -> Result<[Self; 3]> {
        Ok(complex_cubic_roots(c))
    }
}

/// Multiplies every row by the lcm of its denominators. Returns the integer
/// matrix and the product of the multipliers.
fn clear_denominators(m: &DenseMatrix<BigRational>) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let rows = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            let ints = row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
            scale *= &lcm;
            ints
        })
        .collect();
    (rows, scale)
}

fn eval_cubic<S: Scalar>(c: &[S; 3], z: &S) -> S {
    ((z.clone() + c[2].clone()) * z.clone() + c[1].clone()) * z.clone() + c[0].clone()
}

fn complex_cubic_roots(c: [Complex64; 3]) -> [Complex64; 3] {
    let bound = 1.0 + c.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z = [
        seed * bound,
        seed * seed * bound,
        seed * seed * seed * bound,
    ];
    // Durand-Kerner
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..3 {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..3 {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(1e-300, 0.0);
            }
            let step = eval_cubic(&c, &z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta <= 1e-16 * bound {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let p = eval_cubic(&c, zi);
            let dp = (*zi * 3.0 + c[2] * 2.0) * *zi + c[1];
            if dp.norm() == 0.0 {
                break;
            }
            *zi -= p / dp;
        }
    }
    z
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

/// Locates one rational root from floating-point estimates (any rational
/// root of the monic cubic has the form `m / L` with `L` the lcm of the
/// coefficient denominators), verifies it exactly, then finishes with the
/// exact quadratic formula.
fn rational_cubic_roots(c: &[BigRational; 3]) -> Result<[BigRational; 3]> {
    let lcm = c.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let lcm_f = lcm.to_f64().ok_or(Error::NotSplit)?;
    let approx = complex_cubic_roots([c[0].to_complex(), c[1].to_complex(), c[2].to_complex()]);

    let mut found = None;
    'search: for z in approx {
        if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
            continue;
        }
        let centre = (z.re * lcm_f).round();
        if !centre.is_finite() {
            continue;
        }
        let centre = BigInt::from(centre as i128);
        for offset in -1..=1 {
            let cand = BigRational::new(&centre + offset, lcm.clone());
            if eval_cubic(c, &cand).is_zero() {
                found = Some(cand);
                break 'search;
            }
        }
    }
    let root = found.ok_or(Error::NotSplit)?;

    // z^3 + a z^2 + b z + c0 = (z - root)(z^2 + p z + q)
    let p = &c[2] + &root;
    let q = &c[1] + &root * &p;
    let two = BigRational::from_integer(BigInt::from(2));
    let four = BigRational::from_integer(BigInt::from(4));
    let disc = &p * &p - four * &q;
    let s = rational_sqrt(&disc).ok_or(Error::NotSplit)?;
    let r1 = (-&p + &s) / &two;
    let r2 = (-&p - &s) / &two;
    Ok([root, r1, r2])
}
