//! Distinguished parameter sets, their coordinate charts, and exact
//! independence certificates.
//!
//! A parameter set of `n` trace functions is certified by sampling a
//! unimodular tuple and evaluating an `n × n` Jacobian determinant in local
//! coordinates. Over the rationals a single nonzero value proves the
//! determinant polynomial is nonzero, hence the functions are algebraically
//! independent.
//!
//! On `SL(3)^r` the chart solves `det X_k = 1` for `x^k_31`, so derivatives are
//! taken along the constraint surface (see
//! [`jacobian_on_constraint`](crate::calculus::jacobian_on_constraint)). The
//! affine lift lives on `gl(3)^r` and uses ambient derivatives.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::algebra::{
    sample_tuple, Constraint, DenseMatrix, Matrix3, MatrixTuple, Scalar, ScalarMode,
};
use crate::calculus::{jacobian, jacobian_on_constraint, JacobianMatrix, VariableIndex};
use crate::error::{Error, Result};
use crate::invariants::TraceInvariant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    C1,
    C2,
    C3,
    C4,
    C5,
    Gl3Lift,
}

impl Variant {
    pub const ALL: [Variant; 6] = [
        Variant::C1,
        Variant::C2,
        Variant::C3,
        Variant::C4,
        Variant::C5,
        Variant::Gl3Lift,
    ];
    pub const SPECIAL: [Variant; 5] = [
        Variant::C1,
        Variant::C2,
        Variant::C3,
        Variant::C4,
        Variant::C5,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Variant::C1 => "c1",
            Variant::C2 => "c2",
            Variant::C3 => "c3",
            Variant::C4 => "c4",
            Variant::C5 => "c5",
            Variant::Gl3Lift => "gl3",
        }
    }

    pub fn constraint(self) -> Constraint {
        match self {
            Variant::Gl3Lift => Constraint::GeneralLinear,
            _ => Constraint::SpecialLinear,
        }
    }

    /// Signed words of the three `𝒞` functions attached to generator `k`.
    fn c_block(self, k: i64) -> [[i64; 2]; 3] {
        match self {
            Variant::C1 => [[-1, -k], [-1, k], [-2, -k]],
            Variant::C2 => [[-1, -k], [-1, k], [-2, k]],
            Variant::C3 => [[-1, -k], [-1, k], [2, -k]],
            Variant::C4 => [[-1, k], [-2, k], [2, -k]],
            Variant::C5 => [[-1, -k], [2, -k], [-2, -k]],
            Variant::Gl3Lift => unreachable!("the affine lift has no C block"),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.tag().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown variant `{s}` (expected c1..c5 or gl3)")))
    }
}

/// An ordered list of trace functions to be tested for independence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterSet {
    rank: usize,
    variant: Option<Variant>,
    constraint: Constraint,
    invariants: Vec<TraceInvariant>,
}

fn words(list: &[&[i64]]) -> Vec<TraceInvariant> {
    list.iter()
        .map(|w| TraceInvariant::from_signed(w))
        .collect()
}

impl ParameterSet {
    pub fn new(rank: usize, variant: Variant) -> Result<Self> {
        if rank == 0 {
            return Err(Error::RankTooSmall { rank, min: 1 });
        }
        let mut inv: Vec<TraceInvariant> = Vec::new();
        match (variant, rank) {
            (Variant::Gl3Lift, 1) => inv.extend(words(&[&[1], &[1, 1], &[1, 1, 1]])),
            (_, 1) => inv.extend(words(&[&[1], &[-1]])),
            (Variant::Gl3Lift, _) => {
                inv.extend(words(&[
                    &[1],
                    &[2],
                    &[1, 1],
                    &[2, 2],
                    &[1, 1, 1],
                    &[2, 2, 2],
                    &[1, 2],
                    &[1, 1, 2],
                    &[2, 2, 1],
                    &[1, 1, 2, 2],
                ]));
                for k in 3..=rank as i64 {
                    inv.extend(words(&[
                        &[k],
                        &[k, k],
                        &[k, k, k],
                        &[1, k],
                        &[2, k],
                        &[1, k, k],
                        &[1, 1, k, k],
                        &[1, 1, k],
                        &[2, 2, k, k],
                    ]));
                }
            }
            (_, _) => {
                inv.extend(words(&[
                    &[1],
                    &[2],
                    &[-1],
                    &[-2],
                    &[1, 2],
                    &[-1, 2],
                    &[-2, 1],
                    &[-1, -2],
                ]));
                for k in 3..=rank as i64 {
                    inv.extend(words(&[&[k], &[-k], &[1, k], &[2, k], &[1, -k]]));
                    for w in variant.c_block(k) {
                        inv.push(TraceInvariant::from_signed(&w));
                    }
                }
            }
        }
        Ok(Self {
            rank,
            variant: Some(variant),
            constraint: variant.constraint(),
            invariants: inv,
        })
    }

    /// An arbitrary list of functions, certified in the chart for `constraint`.
    pub fn custom(rank: usize, constraint: Constraint, invariants: Vec<TraceInvariant>) -> Self {
        Self {
            rank,
            variant: None,
            constraint,
            invariants,
        }
    }

    /// A copy with entry `index` replaced. The result no longer carries a variant.
    pub fn with_replaced(&self, index: usize, inv: TraceInvariant) -> Self {
        let mut invariants = self.invariants.clone();
        invariants[index] = inv;
        Self::custom(self.rank, self.constraint, invariants)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn variant(&self) -> Option<Variant> {
        self.variant
    }

    pub fn constraint(&self) -> Constraint {
        self.constraint
    }

    pub fn invariants(&self) -> &[TraceInvariant] {
        &self.invariants
    }

    pub fn len(&self) -> usize {
        self.invariants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.invariants.is_empty()
    }

    /// Jacobian in the coordinates of [`VariableSet::for_set`].
    pub fn jacobian_at<S: Scalar>(&self, tuple: &MatrixTuple<S>) -> Result<JacobianMatrix<S>> {
        let vars = VariableSet::for_set(self)?;
        chart_jacobian(&self.invariants, &vars, tuple)
    }

    /// Determinant of [`jacobian_at`](Self::jacobian_at); the Jacobian must be square.
    pub fn jacobian_determinant<S: Scalar>(&self, tuple: &MatrixTuple<S>) -> Result<S> {
        let j = self.jacobian_at(tuple)?;
        if !j.is_square() {
            return Err(Error::NotSquare {
                rows: j.rows.len(),
                cols: j.cols.len(),
            });
        }
        Ok(j.determinant())
    }
}

pub(crate) fn chart_jacobian<S: Scalar>(
    funcs: &[TraceInvariant],
    vars: &VariableSet,
    tuple: &MatrixTuple<S>,
) -> Result<JacobianMatrix<S>> {
    if tuple.rank() != vars.rank {
        return Err(Error::RankMismatch {
            index: vars.rank,
            rank: tuple.rank(),
        });
    }
    match vars.constraint {
        Constraint::SpecialLinear => jacobian_on_constraint(funcs, &vars.vars, tuple),
        Constraint::GeneralLinear => jacobian(funcs, &vars.vars, tuple),
    }
}

/// Local coordinates on `SL(3)^r` (size `8r - 8`) or `gl(3)^r` (size `9r - 8`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableSet {
    pub rank: usize,
    pub constraint: Constraint,
    pub vars: Vec<VariableIndex>,
}

const HEAD_SL: [(usize, usize, usize); 8] = [
    (1, 1, 1),
    (1, 2, 2),
    (2, 1, 1),
    (2, 2, 1),
    (2, 1, 3),
    (2, 2, 2),
    (2, 2, 3),
    (2, 3, 3),
];

impl VariableSet {
    pub fn new(rank: usize) -> Result<Self> {
        if rank < 2 {
            return Err(Error::RankTooSmall { rank, min: 2 });
        }
        let mut vars: Vec<_> = HEAD_SL
            .iter()
            .map(|&(k, i, j)| VariableIndex::new(k, i, j))
            .collect();
        for k in 3..=rank {
            for i in 1..=3 {
                for j in 1..=3 {
                    if (i, j) != (3, 1) {
                        vars.push(VariableIndex::new(k, i, j));
                    }
                }
            }
        }
        Ok(Self {
            rank,
            constraint: Constraint::SpecialLinear,
            vars,
        })
    }

    /// Coordinates for the affine lift: the `SL` list with each `(k,3,1)`
    /// added back, so all nine entries of `X_k` for `k >= 3`.
    pub fn extended(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::RankTooSmall { rank, min: 1 });
        }
        let mut vars = vec![
            VariableIndex::new(1, 1, 1),
            VariableIndex::new(1, 2, 2),
            VariableIndex::new(1, 3, 1),
        ];
        if rank >= 2 {
            vars.extend(
                HEAD_SL[2..]
                    .iter()
                    .map(|&(k, i, j)| VariableIndex::new(k, i, j)),
            );
            vars.push(VariableIndex::new(2, 3, 1));
        }
        for k in 3..=rank {
            for i in 1..=3 {
                for j in 1..=3 {
                    vars.push(VariableIndex::new(k, i, j));
                }
            }
        }
        Ok(Self {
            rank,
            constraint: Constraint::GeneralLinear,
            vars,
        })
    }

    pub fn for_set(set: &ParameterSet) -> Result<Self> {
        match set.constraint {
            Constraint::SpecialLinear => Self::new(set.rank),
            Constraint::GeneralLinear => Self::extended(set.rank),
        }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyOptions {
    pub num_samples: u64,
    pub seed: u64,
    pub height: u32,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            num_samples: 5,
            seed: 0,
            height: 10,
        }
    }
}

impl CertifyOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Independent,
    NotCertified,
}

impl Verdict {
    pub fn tag(self) -> &'static str {
        match self {
            Verdict::Independent => "independent",
            Verdict::NotCertified => "not-certified",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "independent" => Ok(Verdict::Independent),
            "not-certified" => Ok(Verdict::NotCertified),
            other => Err(Error::Parse(format!("unknown verdict `{other}`"))),
        }
    }
}

/// What happened at one sample index.
#[derive(Debug, Clone, PartialEq)]
pub enum SampleOutcome<S> {
    Nonzero(S),
    Vanished(S),
    /// The chart could not be built at this sample.
    Skipped(Error),
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndependenceCertificate<S> {
    pub parameter_set: ParameterSet,
    pub variable_set: VariableSet,
    pub options: CertifyOptions,
    /// Index of the certifying sample, if any.
    pub sample_index: Option<u64>,
    /// The certifying tuple, or the last evaluated one when not certified.
    pub sample: Option<MatrixTuple<S>>,
    pub determinant: S,
    pub verdict: Verdict,
    pub outcomes: Vec<SampleOutcome<S>>,
}

impl<S: Scalar> IndependenceCertificate<S> {
    pub fn mode(&self) -> ScalarMode {
        S::MODE
    }

    pub fn is_independent(&self) -> bool {
        self.verdict == Verdict::Independent
    }
}

/// Nonzero test for a square Jacobian's determinant.
///
/// Exact mode compares with zero. In float mode the raw determinant of these
/// Jacobians is many orders of magnitude below any entrywise bound even when
/// it is far from zero, so instead rows and columns are alternately scaled to
/// unit norm and the scaled matrix must have full numerical rank (smallest
/// singular value above `1e-8` of the largest).
pub fn is_nonzero_determinant<S: Scalar>(det: &S, jac: &JacobianMatrix<S>) -> bool {
    if det.is_zero() {
        return false;
    }
    match S::MODE {
        ScalarMode::ExactRational => true,
        ScalarMode::ComplexFloat => {
            let n = jac.entries.rows();
            let mut m: Vec<Vec<Complex64>> = (0..n)
                .map(|i| jac.entries.row(i).iter().map(Scalar::to_complex).collect())
                .collect();
            for _ in 0..8 {
                for row in m.iter_mut() {
                    let s = row.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                    if s > 0.0 {
                        row.iter_mut().for_each(|z| *z /= s);
                    }
                }
                for c in 0..jac.entries.cols() {
                    let s = m.iter().map(|row| row[c].norm_sqr()).sum::<f64>().sqrt();
                    if s > 0.0 {
                        m.iter_mut().for_each(|row| row[c] /= s);
                    }
                }
            }
            DenseMatrix::from_rows(m).rank() == n
        }
    }
}

/// Evaluates the Jacobian determinant of `set` at successive samples and
/// stops at the first nonzero one.
pub fn certify_parameter_set<S: Scalar>(
    set: &ParameterSet,
    options: &CertifyOptions,
) -> Result<IndependenceCertificate<S>> {
    let vars = VariableSet::for_set(set)?;
    if set.len() != vars.len() {
        return Err(Error::NotSquare {
            rows: set.len(),
            cols: vars.len(),
        });
    }
    let mut outcomes = Vec::new();
    let mut last = None;
    for index in 0..options.num_samples {
        let tuple = sample_tuple::<S>(options.seed, index, set.rank, options.height)
            .with_constraint(set.constraint)?;
        let jac = match chart_jacobian(&set.invariants, &vars, &tuple) {
            Ok(j) => j,
            Err(e @ Error::DegenerateConstraint(_)) => {
                log::debug!("sample {index} skipped: {e}");
                outcomes.push(SampleOutcome::Skipped(e));
                continue;
            }
            Err(e) => return Err(e),
        };
        let det = jac.determinant();
        if is_nonzero_determinant(&det, &jac) {
            outcomes.push(SampleOutcome::Nonzero(det.clone()));
            return Ok(IndependenceCertificate {
                parameter_set: set.clone(),
                variable_set: vars,
                options: *options,
                sample_index: Some(index),
                sample: Some(tuple),
                determinant: det,
                verdict: Verdict::Independent,
                outcomes,
            });
        }
        log::debug!("sample {index}: determinant vanishes");
        outcomes.push(SampleOutcome::Vanished(det.clone()));
        last = Some((tuple, det));
    }
    let (sample, determinant) = match last {
        Some((t, d)) => (Some(t), d),
        None => (None, S::zero()),
    };
    Ok(IndependenceCertificate {
        parameter_set: set.clone(),
        variable_set: vars,
        options: *options,
        sample_index: None,
        sample,
        determinant,
        verdict: Verdict::NotCertified,
        outcomes,
    })
}

/// Certifies the distinguished parameter set of the given rank and variant.
/// Rank 1 is settled by dimension count and is rejected here.
pub fn certify_independence<S: Scalar>(
    rank: usize,
    variant: Variant,
    options: &CertifyOptions,
) -> Result<IndependenceCertificate<S>> {
    if rank < 2 {
        return Err(Error::RankTooSmall { rank, min: 2 });
    }
    certify_parameter_set(&ParameterSet::new(rank, variant)?, options)
}

fn eigen_order<S: Scalar>(a: &S, b: &S) -> Ordering {
    match S::MODE {
        ScalarMode::ExactRational => a.canonical_cmp(b),
        ScalarMode::ComplexFloat => {
            // Conjugate pairs share a real part up to rounding.
            let (x, y) = (a.to_complex(), b.to_complex());
            let scale = x.norm().max(y.norm()).max(1.0);
            if (x.re - y.re).abs() <= 1e-9 * scale {
                x.im.total_cmp(&y.im)
            } else {
                x.re.total_cmp(&y.re)
            }
        }
    }
}

fn kernel_vector<S: Scalar>(m: &Matrix3<S>) -> [S; 3] {
    let rows = m.rows();
    let cross = |a: &[S; 3], b: &[S; 3]| -> [S; 3] {
        [
            a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
            a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
            a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
        ]
    };
    let size = |v: &[S; 3]| v.iter().map(Scalar::magnitude).fold(0.0, f64::max);
    [
        cross(&rows[0], &rows[1]),
        cross(&rows[0], &rows[2]),
        cross(&rows[1], &rows[2]),
    ]
    .into_iter()
    .max_by(|a, b| size(a).total_cmp(&size(b)))
    .unwrap()
}

/// Conjugates the tuple so that `X_1` is diagonal and the subdiagonal entries
/// `(2,1)` and `(3,2)` of `X_2` equal 1.
///
/// Eigenvalues are sorted by (real, imaginary) part, except that an `X_1`
/// which is already diagonal keeps its order. In exact mode the eigenvalues
/// must be rational.
pub fn normalize_pair<S: Scalar>(tuple: &MatrixTuple<S>) -> Result<MatrixTuple<S>> {
    if tuple.rank() < 2 {
        return Err(Error::RankTooSmall {
            rank: tuple.rank(),
            min: 2,
        });
    }
    let x1 = tuple.matrix(1)?;
    let scale = x1.max_magnitude().max(1.0);
    let distinct = |l: &[S; 3]| {
        (0..3)
            .all(|a| (a + 1..3).all(|b| !(l[a].clone() - l[b].clone()).is_negligible(1e-9, scale)))
    };

    let (lambda, p) = if x1.is_diagonal() {
        let l = [x1[(0, 0)].clone(), x1[(1, 1)].clone(), x1[(2, 2)].clone()];
        (l, Matrix3::identity())
    } else {
        let c = [
            -x1.det(),
            crate::invariants::second_coefficient(x1),
            -x1.trace(),
        ];
        let mut l = S::cubic_roots(c)?;
        l.sort_by(eigen_order);
        let mut p = Matrix3::zero();
        if distinct(&l) {
            for (col, lam) in l.iter().enumerate() {
                let v = kernel_vector(&(x1 - &Matrix3::identity().scale(lam)));
                for (row, e) in v.into_iter().enumerate() {
                    p[(row, col)] = e;
                }
            }
        }
        (l, p)
    };
    if !distinct(&lambda) {
        return Err(Error::RepeatedEigenvalues);
    }

    let p_inv = p.inverse().ok_or(Error::RepeatedEigenvalues)?;
    let y = &(&p_inv * tuple.matrix(2)?) * &p;
    let y_scale = y.max_magnitude().max(f64::MIN_POSITIVE);
    let a = y[(1, 0)].clone();
    let b = y[(2, 1)].clone();
    if a.is_negligible(1e-12, y_scale) {
        return Err(Error::ZeroLowerDiagonal { row: 2, col: 1 });
    }
    if b.is_negligible(1e-12, y_scale) {
        return Err(Error::ZeroLowerDiagonal { row: 3, col: 2 });
    }
    let d = Matrix3::diagonal([S::one(), a.clone(), a * b]);
    let d_inv = d.inverse().expect("diagonal entries are nonzero");
    let q = &p * &d;
    let q_inv = &d_inv * &p_inv;

    let mut out: Vec<Matrix3<S>> = tuple
        .matrices()
        .iter()
        .map(|x| &(&q_inv * x) * &q)
        .collect();
    out[0] = Matrix3::diagonal(lambda);
    out[1][(1, 0)] = S::one();
    out[1][(2, 1)] = S::one();
    Ok(MatrixTuple::from_parts(out, tuple.constraint()))
}

/// Outcome of the block-triangular decomposition check at one tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockReport<S> {
    pub rank: usize,
    /// Size of each diagonal block attached to a generator `k >= 3`.
    pub block_size: usize,
    /// Every function not mentioning `X_k` has zero derivative along `X_k`.
    pub zero_block: bool,
    /// Each `N_k` equals `N_3` computed on `(X_1, X_2, X_k)`.
    pub blocks_match: bool,
    /// `det(J) = det(M) * prod det(N_k)`.
    pub determinant_factors: bool,
    pub full_determinant: S,
    pub head_determinant: S,
    pub block_determinants: Vec<S>,
}

impl<S> BlockReport<S> {
    pub fn holds(&self) -> bool {
        self.zero_block && self.blocks_match && self.determinant_factors
    }
}

fn close<S: Scalar>(a: &S, b: &S, scale: f64) -> bool {
    (a.clone() - b.clone()).is_negligible(1e-9, scale.max(1.0))
}

/// Checks the block structure of the Jacobian of `variant` at `tuple`
/// (rank at least 3).
pub fn block_structure_check<S: Scalar>(
    variant: Variant,
    tuple: &MatrixTuple<S>,
) -> Result<BlockReport<S>> {
    let r = tuple.rank();
    if r < 3 {
        return Err(Error::RankTooSmall { rank: r, min: 3 });
    }
    let tuple = tuple.with_constraint(variant.constraint())?;
    let set = ParameterSet::new(r, variant)?;
    let jac = set.jacobian_at(&tuple)?;
    let head = ParameterSet::new(2, variant)?.len();
    let block = (set.len() - head) / (r - 2);
    let range = |k: usize| head + (k - 3) * block..head + (k - 2) * block;
    let scale = jac.entries.max_magnitude();

    let mut zero_block = true;
    for (a, f) in set.invariants().iter().enumerate() {
        for (b, v) in jac.cols.iter().enumerate() {
            if v.k >= 3 && !f.mentions(v.k) && !jac.get(a, b).is_zero() {
                zero_block = false;
            }
        }
    }

    let rows_of = |k: usize| -> Vec<usize> { range(k).collect() };
    let head_idx: Vec<usize> = (0..head).collect();
    let head_det = jac.block(&head_idx, &head_idx).determinant();
    let mut blocks_match = true;
    let mut block_dets = Vec::new();
    let set3 = ParameterSet::new(3, variant)?;
    for k in 3..=r {
        let idx = rows_of(k);
        let n_k = jac.block(&idx, &idx);
        let sub = MatrixTuple::from_parts(
            vec![
                tuple.matrices()[0].clone(),
                tuple.matrices()[1].clone(),
                tuple.matrices()[k - 1].clone(),
            ],
            tuple.constraint(),
        );
        let j3 = set3.jacobian_at(&sub)?;
        let idx3 = rows_of(3);
        let n_3 = j3.block(&idx3, &idx3);
        let same =
            (0..block).all(|a| (0..block).all(|b| close(n_k.get(a, b), n_3.get(a, b), scale)));
        blocks_match &= same;
        block_dets.push(n_k.determinant());
    }

    let full = jac.determinant();
    let product = block_dets
        .iter()
        .fold(head_det.clone(), |acc, d| acc * d.clone());
    let det_scale = full.magnitude().max(product.magnitude());
    Ok(BlockReport {
        rank: r,
        block_size: block,
        zero_block,
        blocks_match,
        determinant_factors: close(&full, &product, det_scale),
        full_determinant: full,
        head_determinant: head_det,
        block_determinants: block_dets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn sizes_match_dimensions() {
        for r in 1..=8 {
            let sl = if r == 1 { 2 } else { 8 * r - 8 };
            let gl = if r == 1 { 3 } else { 9 * r - 8 };
            for v in Variant::SPECIAL {
                assert_eq!(ParameterSet::new(r, v).unwrap().len(), sl);
            }
            assert_eq!(ParameterSet::new(r, Variant::Gl3Lift).unwrap().len(), gl);
            assert_eq!(VariableSet::extended(r).unwrap().len(), gl);
            if r >= 2 {
                assert_eq!(VariableSet::new(r).unwrap().len(), sl);
            }
        }
        assert!(VariableSet::new(1).is_err());
    }

    #[test]
    fn rank_three_c1_list() {
        let set = ParameterSet::new(3, Variant::C1).unwrap();
        let tail: Vec<String> = set.invariants()[8..]
            .iter()
            .map(|t| t.word().to_signed_string())
            .collect();
        let expect: Vec<String> = [
            vec![3],
            vec![-3],
            vec![1, 3],
            vec![2, 3],
            vec![1, -3],
            vec![-1, -3],
            vec![-1, 3],
            vec![-2, -3],
        ]
        .iter()
        .map(|w| TraceInvariant::from_signed(w).word().to_signed_string())
        .collect();
        assert_eq!(tail, expect);
    }

    #[test]
    fn variable_block_skips_solved_entry() {
        let v = VariableSet::new(3).unwrap();
        assert!(!v.vars.contains(&VariableIndex::new(3, 3, 1)));
        assert_eq!(v.vars[8], VariableIndex::new(3, 1, 1));
        assert_eq!(v.vars[15], VariableIndex::new(3, 3, 3));
    }

    #[test]
    fn variant_tags_round_trip() {
        for v in Variant::ALL {
            assert_eq!(v.tag().parse::<Variant>().unwrap(), v);
        }
        assert!("c6".parse::<Variant>().is_err());
    }

    #[test]
    fn rank_two_certifies() {
        let cert =
            certify_independence::<Q>(2, Variant::C1, &CertifyOptions::with_seed(1)).unwrap();
        assert!(cert.is_independent());
        assert!(!cert.determinant.is_zero());
    }

    #[test]
    fn duplicate_row_never_certifies() {
        let set = ParameterSet::new(2, Variant::C1).unwrap();
        let dup = set.with_replaced(3, TraceInvariant::from_signed(&[2]));
        let cert = certify_parameter_set::<Q>(&dup, &CertifyOptions::with_seed(3)).unwrap();
        assert_eq!(cert.verdict, Verdict::NotCertified);
        assert!(cert.determinant.is_zero());
    }

    #[test]
    fn normal_form_is_fixed_point() {
        let x1 = Matrix3::diagonal([q(1, 1), q(2, 1), q(1, 2)]);
        let x2 = Matrix3::from_ints([[2, 1, 0], [1, 1, 0], [0, 1, 1]]);
        let t = MatrixTuple::special(vec![x1, x2]).unwrap();
        assert_eq!(normalize_pair(&t).unwrap(), t);
    }

    #[test]
    fn float_certification_tracks_exact() {
        for (r, v) in [
            (2, Variant::C3),
            (3, Variant::C1),
            (3, Variant::Gl3Lift),
            (4, Variant::C5),
        ] {
            let opts = CertifyOptions::with_seed(9);
            let exact = certify_independence::<Q>(r, v, &opts).unwrap();
            let float = certify_independence::<Complex64>(r, v, &opts).unwrap();
            assert_eq!(exact.sample_index, float.sample_index, "r = {r} {v}");
            let (a, b) = (exact.determinant.to_complex(), float.determinant);
            assert!((a - b).norm() <= 1e-6 * a.norm(), "{a} vs {b}");
        }
        let dup = ParameterSet::new(3, Variant::C1)
            .unwrap()
            .with_replaced(3, TraceInvariant::from_signed(&[2]));
        let cert = certify_parameter_set::<Complex64>(&dup, &CertifyOptions::with_seed(9)).unwrap();
        assert_eq!(cert.verdict, Verdict::NotCertified);
    }

    #[test]
    fn identity_has_repeated_eigenvalues() {
        let t = MatrixTuple::special(vec![Matrix3::<Q>::identity(); 2]).unwrap();
        assert_eq!(normalize_pair(&t), Err(Error::RepeatedEigenvalues));
    }

    #[test]
    fn three_cycle_diagonalizes_to_cube_roots() {
        let c = Matrix3::<Complex64>::from_ints([[0, 1, 0], [0, 0, 1], [1, 0, 0]]);
        let x2: Matrix3<Complex64> = crate::algebra::sample_sl3(5, 10);
        let t = MatrixTuple::special(vec![c, x2]).unwrap();
        let n = normalize_pair(&t).unwrap();
        let d = n.matrix(1).unwrap();
        assert!(d.is_diagonal());
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let expect = [w.conj(), w, Complex64::new(1.0, 0.0)];
        for i in 0..3 {
            assert!((d[(i, i)] - expect[i]).norm() < 1e-12);
        }
        let y = n.matrix(2).unwrap();
        assert_eq!(
            (y[(1, 0)], y[(2, 1)]),
            (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))
        );
    }

    #[test]
    fn block_check_at_rank_three() {
        let t: MatrixTuple<Q> = sample_tuple(42, 0, 3, 10);
        let rep = block_structure_check(Variant::C2, &t).unwrap();
        assert!(rep.holds(), "{rep:?}");
        assert_eq!(rep.block_size, 8);
    }
}
