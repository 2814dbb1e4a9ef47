use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

use sl3chars_core::{
    d_trace, fd_trace, jacobian, sample_tuple, GroupWord, MatrixTuple, Scalar, TraceInvariant,
    VariableIndex,
};

type Q = BigRational;

fn invariant(rank: usize) -> impl Strategy<Value = TraceInvariant> {
    prop::collection::vec((1..=rank, prop_oneof![Just(-1i32), Just(1)]), 1..7)
        .prop_map(|pairs| TraceInvariant::new(&GroupWord::from_pairs(&pairs)))
}

fn variable(rank: usize) -> impl Strategy<Value = VariableIndex> {
    (1..=rank, 1usize..=3, 1usize..=3).prop_map(|(k, i, j)| VariableIndex::new(k, i, j))
}

/// Largest `|X| * |X^-1|` over the tuple, entrywise max norms.
fn conditioning<S: Scalar>(t: &MatrixTuple<S>) -> f64 {
    (1..=t.rank())
        .map(|k| {
            let m = t.matrix(k).unwrap().max_magnitude();
            m * t.inverse_of(k).unwrap().max_magnitude()
        })
        .fold(1.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn analytic_matches_difference(seed in any::<u64>(), f in invariant(3), v in variable(3)) {
        let t: MatrixTuple<Complex64> = sample_tuple(seed, 0, 3, 2);
        let a = d_trace(&f, v, &t).unwrap();
        // Richardson step: fourth order, so high powers of X^-1 stay within tolerance
        let (h, h2) = (fd_trace(&f, v, &t, 2e-4).unwrap(), fd_trace(&f, v, &t, 1e-4).unwrap());
        let b = (h2 * 4.0 - h) / 3.0;
        let scale = a.norm().max(b.norm()).max(1.0);
        prop_assert!((a - b).norm() <= 1e-6 * scale, "{f} {v}: {a} vs {b}");
    }

    #[test]
    fn exact_and_float_jacobians_agree(seed in any::<u64>(), f in invariant(2)) {
        let exact: MatrixTuple<Q> = sample_tuple(seed, 0, 2, 5);
        let float = exact.to_complex();
        let vars: Vec<_> = (1..=2)
            .flat_map(|k| (1..=3).flat_map(move |i| (1..=3).map(move |j| VariableIndex::new(k, i, j))))
            .collect();
        let je = jacobian(std::slice::from_ref(&f), &vars, &exact).unwrap();
        let jf = jacobian(std::slice::from_ref(&f), &vars, &float).unwrap();
        let scale = (0..vars.len())
            .map(|b| je.get(0, b).to_complex().norm())
            .fold(1.0, f64::max)
            * conditioning(&float);
        for b in 0..vars.len() {
            let (x, y) = (je.get(0, b).to_complex(), *jf.get(0, b));
            prop_assert!((x - y).norm() <= 1e-10 * scale, "{x} vs {y}");
        }
    }

    // d tr(X^2) = 2 X^T and d tr(X Y) = Y^T along X.
    #[test]
    fn product_rule_on_short_words(seed in any::<u64>(), v in variable(1)) {
        let t: MatrixTuple<Q> = sample_tuple(seed, 0, 2, 10);
        let x = t.matrix(1).unwrap();
        let y = t.matrix(2).unwrap();
        let sq = TraceInvariant::from_signed(&[1, 1]);
        let prod = TraceInvariant::from_signed(&[1, 2]);
        let two = Q::from_integer(2.into());
        prop_assert_eq!(d_trace(&sq, v, &t).unwrap(), two * x[(v.j - 1, v.i - 1)].clone());
        prop_assert_eq!(d_trace(&prod, v, &t).unwrap(), y[(v.j - 1, v.i - 1)].clone());
    }
}
