use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use sl3chars_core::{
    conjugate_tuple, count_generators, eval_trace, generator_catalog, sample_sl3, sample_tuple,
    second_coefficient, word_eval, GroupWord, Matrix3, MatrixTuple, TraceInvariant,
};

type Q = BigRational;

fn rational() -> impl Strategy<Value = Q> {
    (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn word(rank: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec(
        (
            1..=rank,
            prop_oneof![Just(-1i32), Just(1), Just(2), Just(-2)],
        ),
        0..7,
    )
    .prop_map(|pairs| GroupWord::from_pairs(&pairs))
}

fn invertible() -> impl Strategy<Value = Matrix3<Q>> {
    prop::array::uniform9(-5i64..=5).prop_filter_map("singular", |e| {
        let m =
            Matrix3::<Q>::from_ints([[e[0], e[1], e[2]], [e[3], e[4], e[5]], [e[6], e[7], e[8]]]);
        (!m.det().is_zero()).then_some(m)
    })
}

proptest! {
    #[test]
    fn exact_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        let s = &a + &b;
        prop_assert!(s.denom() > &0.into());
        prop_assert!(num_integer::Integer::gcd(s.numer(), s.denom()).is_one() || s.is_zero());
    }

    #[test]
    fn inverse_is_two_sided(m in invertible()) {
        let inv = m.inverse().unwrap();
        prop_assert_eq!(&inv * &m, Matrix3::identity());
        prop_assert_eq!(&m * &inv, Matrix3::identity());
    }

    #[test]
    fn evaluation_is_multiplicative(seed in any::<u64>(), u in word(3), v in word(3)) {
        let t: MatrixTuple<Q> = sample_tuple(seed, 0, 3, 5);
        let lhs = word_eval(&u.concat(&v), &t).unwrap();
        let rhs = &word_eval(&u, &t).unwrap() * &word_eval(&v, &t).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_word_inverts(seed in any::<u64>(), w in word(3)) {
        let t: MatrixTuple<Q> = sample_tuple(seed, 1, 3, 5);
        let p = &word_eval(&w.inverse(), &t).unwrap() * &word_eval(&w, &t).unwrap();
        prop_assert_eq!(p, Matrix3::identity());
    }

    #[test]
    fn rotations_share_trace(seed in any::<u64>(), w in word(3), k in 0usize..12) {
        let t: MatrixTuple<Q> = sample_tuple(seed, 2, 3, 5);
        let rotated = w.rotate(k);
        prop_assert_eq!(rotated.cyclic_normal_form(), w.cyclic_normal_form());
        prop_assert_eq!(word_eval(&rotated, &t).unwrap().trace(), word_eval(&w, &t).unwrap().trace());
        let inv = TraceInvariant::new(&w);
        prop_assert_eq!(eval_trace(&inv, &t).unwrap(), word_eval(&w, &t).unwrap().trace());
    }

    #[test]
    fn normal_form_is_reduced(w in word(4)) {
        let n = w.cyclic_normal_form();
        let l = n.letters();
        prop_assert!(l.iter().all(|x| x.exponent != 0));
        prop_assert!(l.windows(2).all(|p| p[0].generator != p[1].generator));
        if l.len() > 1 {
            prop_assert!(l[0].generator != l[l.len() - 1].generator);
        }
    }

    #[test]
    fn traces_are_conjugation_invariant(seed in any::<u64>(), g in invertible(), w in word(3)) {
        let t: MatrixTuple<Q> = sample_tuple(seed, 3, 3, 5);
        let moved = conjugate_tuple(&g, &t).unwrap();
        let inv = TraceInvariant::new(&w);
        prop_assert_eq!(eval_trace(&inv, &moved).unwrap(), eval_trace(&inv, &t).unwrap());
    }

    #[test]
    fn second_coefficient_is_inverse_trace(seed in any::<u64>()) {
        let x: Matrix3<Q> = sample_sl3(seed, 10);
        prop_assert_eq!(second_coefficient(&x), x.inverse().unwrap().trace());
    }
}

#[test]
fn thousand_samples_are_unimodular() {
    for seed in 0..1000 {
        assert!(sample_sl3::<Q>(seed, 10).det().is_one(), "seed {seed}");
    }
}

#[test]
fn catalog_agrees_with_formula() {
    for r in 1..=10 {
        assert_eq!(
            Ok(generator_catalog(r).total),
            count_generators(r),
            "r = {r}"
        );
    }
}

#[test]
fn tuple_examples() {
    let c = Matrix3::<Q>::from_ints([[0, 1, 0], [0, 0, 1], [1, 0, 0]]);
    let t = MatrixTuple::special(vec![c.clone()]).unwrap();
    assert_eq!(
        word_eval(&GroupWord::from_signed(&[1, 1]), &t).unwrap(),
        Matrix3::from_ints([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    );
    assert_eq!(
        word_eval(&GroupWord::from_signed(&[1, -1]), &t).unwrap(),
        Matrix3::identity()
    );
    let d = Matrix3::diagonal([
        Q::from_integer(2.into()),
        Q::from_integer(3.into()),
        Q::new(1.into(), 6.into()),
    ]);
    let diag = MatrixTuple::special(vec![d.clone(), d]).unwrap();
    assert_eq!(
        conjugate_tuple(
            &Matrix3::diagonal([Q::one(), Q::from_integer(5.into()), Q::one()]),
            &diag
        )
        .unwrap(),
        diag
    );
}
