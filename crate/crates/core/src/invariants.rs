//! Trace invariants, the minimal generator catalog of the SL(3) invariant
//! ring of `r` generic matrices, and the matching closed-form count.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::algebra::{word_eval, GroupWord, Letter, Matrix3, MatrixTuple, Scalar};
use crate::error::{Error, Result};

/// The function `tr(W)` on matrix tuples, stored with `W` in cyclic normal
/// form so that cyclically conjugate words give the same invariant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceInvariant {
    word: GroupWord,
}

impl TraceInvariant {
    pub fn new(word: &GroupWord) -> Self {
        Self {
            word: word.cyclic_normal_form(),
        }
    }

    pub fn from_pairs(pairs: &[(usize, i32)]) -> Self {
        Self::new(&GroupWord::from_pairs(pairs))
    }

    pub fn from_signed(tokens: &[i64]) -> Self {
        Self::new(&GroupWord::from_signed(tokens))
    }

    pub fn word(&self) -> &GroupWord {
        &self.word
    }

    pub fn mentions(&self, generator: usize) -> bool {
        self.word.mentions(generator)
    }

    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::new(&self.word.relabel(f))
    }
}

impl fmt::Display for TraceInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tr({})", self.word)
    }
}

/// `tr(W)` at a tuple.
pub fn eval_trace<S: Scalar>(inv: &TraceInvariant, tuple: &MatrixTuple<S>) -> Result<S> {
    Ok(word_eval(&inv.word, tuple)?.trace())
}

/// `c_2(X) = (tr(X)^2 - tr(X^2)) / 2`, the sum of the principal 2×2 minors.
/// Equals `tr(X^-1)` when `det X = 1`.
pub fn second_coefficient<S: Scalar>(x: &Matrix3<S>) -> S {
    let t = x.trace();
    let t2 = (x * x).trace();
    (t.clone() * t - t2) / S::from_int(2)
}

/// Degree of nilpotency `d(m)`: traces of words of length at most `d(m)`
/// generate the invariants of `m×m` matrices. Known only for `m <= 4`.
pub fn nilpotency_degree(m: usize) -> Option<usize> {
    match m {
        2 => Some(3),
        3 => Some(6),
        4 => Some(10),
        _ => None,
    }
}

/// One row of the minimal generator list: a word shape in distinct letters,
/// and how many invariants of that shape each `arity`-subset of the
/// generators contributes.
#[derive(Debug, PartialEq, Eq)]
pub struct GeneratorForm {
    pub label: &'static str,
    /// `(slot, exponent)`; slot `s` is the `s`-th distinct letter.
    pub pattern: &'static [(usize, i32)],
    pub multiplicity: u64,
    pub arity: usize,
}

macro_rules! form {
    ($label:expr, [$($p:expr),*], $mult:expr, $arity:expr) => {
        GeneratorForm { label: $label, pattern: &[$($p),*], multiplicity: $mult, arity: $arity }
    };
}

pub static GENERATOR_FORMS: [GeneratorForm; 19] = [
    form!("tr(X)", [(0, 1)], 1, 1),
    form!("tr(X^-1)", [(0, -1)], 1, 1),
    form!("tr(XY)", [(0, 1), (1, 1)], 1, 2),
    form!("tr(XY^-1)", [(0, 1), (1, -1)], 2, 2),
    form!("tr(X^-1Y^-1)", [(0, -1), (1, -1)], 1, 2),
    form!("tr(XYX^-1Y^-1)", [(0, 1), (1, 1), (0, -1), (1, -1)], 1, 2),
    form!("tr(XYZ)", [(0, 1), (1, 1), (2, 1)], 2, 3),
    form!("tr(XYZ^-1)", [(0, 1), (1, 1), (2, -1)], 6, 3),
    form!("tr(XYZY^-1)", [(0, 1), (1, 1), (2, 1), (1, -1)], 3, 3),
    form!("tr(XY^-1Z^-1)", [(0, 1), (1, -1), (2, -1)], 6, 3),
    form!("tr(XYZ^-1Y^-1)", [(0, 1), (1, 1), (2, -1), (1, -1)], 6, 3),
    form!("tr(X^-1Y^-1Z^-1)", [(0, -1), (1, -1), (2, -1)], 1, 3),
    form!("tr(WXYZ)", [(0, 1), (1, 1), (2, 1), (3, 1)], 5, 4),
    form!("tr(WXYZ^-1)", [(0, 1), (1, 1), (2, 1), (3, -1)], 20, 4),
    form!("tr(WXY^-1Z^-1)", [(0, 1), (1, 1), (2, -1), (3, -1)], 18, 4),
    form!(
        "tr(WXYZY^-1)",
        [(0, 1), (1, 1), (2, 1), (3, 1), (2, -1)],
        8,
        4
    ),
    form!("tr(UVWXY)", [(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)], 12, 5),
    form!(
        "tr(VWXYZ^-1)",
        [(0, 1), (1, 1), (2, 1), (3, 1), (4, -1)],
        35,
        5
    ),
    form!(
        "tr(UVWXYZ)",
        [(0, 1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1)],
        15,
        6
    ),
];

impl GeneratorForm {
    /// The shape with slot `s` filled by `generators[s]`.
    pub fn instantiate(&self, generators: &[usize]) -> TraceInvariant {
        TraceInvariant::new(&GroupWord::new(
            self.pattern
                .iter()
                .map(|&(slot, e)| Letter::new(generators[slot], e)),
        ))
    }

    /// All distinct invariants of this shape on exactly the given
    /// generators, sorted.
    pub fn classes_on(&self, subset: &[usize]) -> Vec<TraceInvariant> {
        let classes: BTreeSet<_> = subset
            .iter()
            .copied()
            .permutations(subset.len())
            .map(|assignment| self.instantiate(&assignment))
            .collect();
        classes.into_iter().collect()
    }

    /// Representative invariants for one subset: the first `multiplicity`
    /// classes in sorted order. This selection is a fixed convention; its
    /// minimality as a generating set is not certified here.
    pub fn representatives_on(&self, subset: &[usize]) -> Vec<TraceInvariant> {
        let mut classes = self.classes_on(subset);
        classes.truncate(self.multiplicity as usize);
        classes
    }

    pub fn matches(&self, inv: &TraceInvariant) -> bool {
        let mut gens: Vec<usize> = inv.word().letters().iter().map(|l| l.generator).collect();
        gens.sort_unstable();
        gens.dedup();
        gens.len() == self.arity
            && inv.word().length() == self.pattern.len()
            && self.classes_on(&gens).contains(inv)
    }
}

/// The catalog form an invariant belongs to, if any.
pub fn form_of(inv: &TraceInvariant) -> Option<&'static GeneratorForm> {
    GENERATOR_FORMS.iter().find(|f| f.matches(inv))
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

#[derive(Debug, Clone)]
pub struct CatalogRow {
    pub form: &'static GeneratorForm,
    /// `multiplicity * C(r, arity)`.
    pub count: u128,
}

#[derive(Debug, Clone)]
pub struct GeneratorCatalog {
    pub rank: usize,
    pub rows: Vec<CatalogRow>,
    pub total: u128,
}

impl GeneratorCatalog {
    /// Rows that contribute at least one generator.
    pub fn surviving(&self) -> impl Iterator<Item = &CatalogRow> {
        self.rows.iter().filter(|row| row.count > 0)
    }

    /// Materializes representative invariants, row by row, subsets in
    /// lexicographic order.
    pub fn representatives(&self) -> Vec<TraceInvariant> {
        self.surviving()
            .flat_map(|row| {
                (1..=self.rank)
                    .combinations(row.form.arity)
                    .flat_map(|subset| row.form.representatives_on(&subset))
                    .collect::<Vec<_>>()
            })
            .collect()
    }
}

/// The 19 generator forms with their counts at rank `r`.
pub fn generator_catalog(r: usize) -> GeneratorCatalog {
    let rows: Vec<CatalogRow> = GENERATOR_FORMS
        .iter()
        .map(|form| CatalogRow {
            form,
            count: form.multiplicity as u128 * binomial(r, form.arity),
        })
        .collect();
    let total = rows.iter().map(|row| row.count).sum();
    GeneratorCatalog {
        rank: r,
        rows,
        total,
    }
}

/// `N_r = r (396 + 65 r^2 - 5 r^3 + 19 r^4 + 5 r^5) / 240`, in exact integer
/// arithmetic.
pub fn count_generators(r: usize) -> Result<u128> {
    let overflow = || Error::Overflow(r);
    let x = i128::try_from(r).map_err(|_| overflow())?;
    let pow = |e: u32| x.checked_pow(e).ok_or_else(overflow);
    let terms = [
        396,
        pow(2)?.checked_mul(65).ok_or_else(overflow)?,
        pow(3)?.checked_mul(-5).ok_or_else(overflow)?,
        pow(4)?.checked_mul(19).ok_or_else(overflow)?,
        pow(5)?.checked_mul(5).ok_or_else(overflow)?,
    ];
    let inner = terms
        .iter()
        .try_fold(0i128, |acc, &t| acc.checked_add(t))
        .ok_or_else(overflow)?;
    let numerator = inner.checked_mul(x).ok_or_else(overflow)?;
    if numerator % 240 != 0 {
        return Err(Error::NonIntegral(r));
    }
    u128::try_from(numerator / 240).map_err(|_| Error::NonIntegral(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Matrix3;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn counts_from_the_formula() {
        assert_eq!(count_generators(1).unwrap(), 2);
        assert_eq!(count_generators(2).unwrap(), 9);
        assert_eq!(count_generators(3).unwrap(), 45);
        assert_eq!(count_generators(4).unwrap(), 185);
        assert_eq!(2 * 4 + 5 * 6 + 24 * 4 + 51, 185);
    }

    #[test]
    fn catalog_rows_at_small_rank() {
        let c1 = generator_catalog(1);
        let labels: Vec<_> = c1.surviving().map(|r| r.form.label).collect();
        assert_eq!(labels, ["tr(X)", "tr(X^-1)"]);
        assert_eq!(c1.total, 2);

        let c2 = generator_catalog(2);
        assert_eq!(c2.surviving().count(), 6);
        assert_eq!(c2.total, 2 * 2 + (1 + 2 + 1 + 1));
        assert_eq!(generator_catalog(3).total, 45);
    }

    #[test]
    fn per_arity_multiplicities() {
        let by_arity = |a: usize| -> u64 {
            GENERATOR_FORMS
                .iter()
                .filter(|f| f.arity == a)
                .map(|f| f.multiplicity)
                .sum()
        };
        assert_eq!(
            (1..=6).map(by_arity).collect::<Vec<_>>(),
            [2, 5, 24, 51, 47, 15]
        );
    }

    #[test]
    fn enough_classes_for_every_form() {
        for form in &GENERATOR_FORMS {
            let subset: Vec<usize> = (1..=form.arity).collect();
            let classes = form.classes_on(&subset);
            assert!(
                classes.len() as u64 >= form.multiplicity,
                "{}: {} classes",
                form.label,
                classes.len()
            );
            for c in &classes {
                assert_eq!(form_of(c).map(|f| f.label), Some(form.label));
            }
        }
    }

    #[test]
    fn rank_two_representatives_are_the_nine_coordinates() {
        let reps = generator_catalog(2).representatives();
        assert_eq!(reps.len(), 9);
        let expected: BTreeSet<_> = [
            vec![1],
            vec![2],
            vec![-1],
            vec![-2],
            vec![1, 2],
            vec![1, -2],
            vec![2, -1],
            vec![-1, -2],
            vec![1, 2, -1, -2],
        ]
        .iter()
        .map(|w| TraceInvariant::from_signed(w))
        .collect();
        assert_eq!(reps.into_iter().collect::<BTreeSet<_>>(), expected);
    }

    #[test]
    fn inverse_trace_of_diagonal() {
        let x = Matrix3::diagonal([q(1, 1), q(2, 1), q(1, 2)]);
        let t = MatrixTuple::special(vec![x.clone()]).unwrap();
        assert_eq!(
            eval_trace(&TraceInvariant::from_signed(&[-1]), &t).unwrap(),
            q(7, 2)
        );
        assert_eq!(second_coefficient(&x), q(7, 2));
        assert_eq!(
            second_coefficient(&Matrix3::<BigRational>::identity()),
            q(3, 1)
        );
    }

    #[test]
    fn product_of_cyclic_permutations_is_traceless() {
        let p = Matrix3::<BigRational>::from_ints([[0, 1, 0], [0, 0, 1], [1, 0, 0]]);
        let t = MatrixTuple::special(vec![p.clone(), p]).unwrap();
        assert_eq!(
            eval_trace(&TraceInvariant::from_signed(&[1, 2]), &t).unwrap(),
            q(0, 1)
        );
    }

    #[test]
    fn identity_tuple_gives_three() {
        let t = MatrixTuple::special(vec![Matrix3::<BigRational>::identity(); 3]).unwrap();
        for w in [vec![1], vec![1, -2, 3], vec![3, 3, -1, 2, -2, -3]] {
            assert_eq!(
                eval_trace(&TraceInvariant::from_signed(&w), &t).unwrap(),
                q(3, 1)
            );
        }
    }

    #[test]
    fn nilpotency_constants() {
        assert_eq!(nilpotency_degree(2), Some(3));
        assert_eq!(nilpotency_degree(3), Some(6));
        assert_eq!(nilpotency_degree(4), Some(10));
        assert_eq!(nilpotency_degree(5), None);
    }
}
