//! The Magnus trace map, its generic rank, and the Burnside irreducibility
//! test.

use crate::algebra::{Constraint, Matrix3, MatrixTuple, Scalar};
use crate::certify::{chart_jacobian, ParameterSet, VariableSet};
use crate::error::{Error, Result};
use crate::invariants::{eval_trace, TraceInvariant};

/// Evaluation of an ordered list of trace functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnusMap {
    pub invariants: Vec<TraceInvariant>,
}

impl MagnusMap {
    pub fn new(invariants: Vec<TraceInvariant>) -> Self {
        Self { invariants }
    }

    pub fn len(&self) -> usize {
        self.invariants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.invariants.is_empty()
    }

    pub fn eval<S: Scalar>(&self, tuple: &MatrixTuple<S>) -> Result<Vec<S>> {
        self.invariants
            .iter()
            .map(|f| eval_trace(f, tuple))
            .collect()
    }
}

impl From<&ParameterSet> for MagnusMap {
    fn from(set: &ParameterSet) -> Self {
        Self::new(set.invariants().to_vec())
    }
}

/// Rank of the Jacobian of the map in local coordinates at `tuple`: the
/// `8r - 8` chart coordinates on `SL(3)^r`, or the `9r - 8` affine ones for a
/// general-linear tuple.
pub fn submersivity_rank<S: Scalar>(map: &MagnusMap, tuple: &MatrixTuple<S>) -> Result<usize> {
    let r = tuple.rank();
    if r < 2 {
        return Err(Error::RankTooSmall { rank: r, min: 2 });
    }
    let vars = match tuple.constraint() {
        Constraint::SpecialLinear => VariableSet::new(r)?,
        Constraint::GeneralLinear => VariableSet::extended(r)?,
    };
    Ok(chart_jacobian(&map.invariants, &vars, tuple)?.rank())
}

/// Word length bound for the span test.
pub const BURNSIDE_LENGTH: usize = 6;

struct Echelon<S> {
    basis: Vec<(usize, [S; 9])>,
}

impl<S: Scalar> Echelon<S> {
    /// Adds `m` to the span, returning whether the dimension grew.
    fn insert(&mut self, m: &Matrix3<S>) -> bool {
        let mut v: [S; 9] = std::array::from_fn(|n| m[(n / 3, n % 3)].clone());
        let scale = m.max_magnitude().max(f64::MIN_POSITIVE);
        for (p, b) in &self.basis {
            let c = v[*p].clone();
            if !c.is_zero() {
                for n in 0..9 {
                    v[n] = v[n].clone() - c.clone() * b[n].clone();
                }
            }
        }
        let (pivot, size) = (0..9)
            .map(|n| (n, v[n].magnitude()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if v[pivot].is_negligible(1e-9, scale) || size == 0.0 {
            return false;
        }
        let lead = v[pivot].clone();
        for e in v.iter_mut() {
            *e = e.clone() / lead.clone();
        }
        self.basis.push((pivot, v));
        true
    }
}

/// Dimension of the span of all products of at most [`BURNSIDE_LENGTH`]
/// tuple matrices, the empty product included.
pub fn span_dimension<S: Scalar>(tuple: &MatrixTuple<S>) -> usize {
    let mut span = Echelon { basis: Vec::new() };
    let id = Matrix3::<S>::identity();
    span.insert(&id);
    let mut frontier = vec![id];
    for _ in 0..BURNSIDE_LENGTH {
        let mut next = Vec::new();
        for w in &frontier {
            for x in tuple.matrices() {
                let p = w * x;
                if span.insert(&p) {
                    next.push(p);
                    if span.basis.len() == 9 {
                        return 9;
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    span.basis.len()
}

/// Burnside's criterion: the tuple generates all of `M_3`.
pub fn is_irreducible<S: Scalar>(tuple: &MatrixTuple<S>) -> bool {
    span_dimension(tuple) == 9
}

/// Dimension of `SL(3)^r // SL(3)`.
pub fn krull_dim(r: usize) -> usize {
    match r {
        0 => 0,
        1 => 2,
        _ => 8 * r - 8,
    }
}

/// Dimension of `gl(3)^r // SL(3)`.
pub fn gl_dim(r: usize) -> usize {
    match r {
        0 => 0,
        1 => 3,
        _ => 9 * r - 8,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{sample_sl3, sample_tuple};
    use crate::certify::Variant;
    use num_complex::Complex64;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn identity_tuple_maps_to_threes() {
        let map = MagnusMap::from(&ParameterSet::new(2, Variant::C1).unwrap());
        let t = MatrixTuple::special(vec![Matrix3::<Q>::identity(); 2]).unwrap();
        assert_eq!(map.eval(&t).unwrap(), vec![q(3, 1); 8]);
    }

    #[test]
    fn single_function_has_rank_one() {
        let map = MagnusMap::new(vec![TraceInvariant::from_signed(&[1])]);
        let t: MatrixTuple<Q> = sample_tuple(6, 0, 2, 10);
        assert_eq!(submersivity_rank(&map, &t).unwrap(), 1);
    }

    #[test]
    fn reducible_examples() {
        let t = MatrixTuple::special(vec![Matrix3::<Q>::identity(); 3]).unwrap();
        assert_eq!(span_dimension(&t), 1);
        let d1 = Matrix3::diagonal([q(1, 1), q(2, 1), q(1, 2)]);
        let d2 = Matrix3::diagonal([q(3, 1), q(1, 3), q(1, 1)]);
        let t = MatrixTuple::special(vec![d1, d2]).unwrap();
        assert_eq!(span_dimension(&t), 3);
        assert!(!is_irreducible(&t));
    }

    #[test]
    fn cycle_with_sample_is_irreducible() {
        let c = Matrix3::<Q>::from_ints([[0, 1, 0], [0, 0, 1], [1, 0, 0]]);
        let t = MatrixTuple::special(vec![c.clone(), sample_sl3(11, 10)]).unwrap();
        assert!(is_irreducible(&t));
        let c = c.map(|e| e.to_complex());
        let t = MatrixTuple::special(vec![c, sample_sl3::<Complex64>(11, 10)]).unwrap();
        assert!(is_irreducible(&t));
    }

    #[test]
    fn dimensions() {
        assert_eq!((krull_dim(1), krull_dim(2), krull_dim(5)), (2, 8, 32));
        assert_eq!((gl_dim(1), gl_dim(2), gl_dim(3)), (3, 10, 19));
    }
}
