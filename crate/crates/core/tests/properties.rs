use grassmann_core::cubics::{p0_eval, p0_eval3};
use grassmann_core::lie::{bracket, su_basis};
use grassmann_core::{CMat, PForm, Rational};
use proptest::prelude::*;

type Q = Rational;

fn rational() -> impl Strategy<Value = Q> {
    prop_oneof![
        (-50i64..=50, 1i64..=50).prop_map(|(n, d)| Q::new(n, d)),
        (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Q::new(n, d)),
    ]
}

fn form(dim: u32, degree: usize) -> impl Strategy<Value = PForm<Q>> {
    let masks: Vec<u32> = (0u32..1 << dim).filter(|m| m.count_ones() as usize == degree).collect();
    proptest::collection::vec((proptest::sample::select(masks), -4i64..=4), 0..6).prop_map(move |raw| {
        PForm::from_terms(degree, raw.into_iter().map(|(m, c)| (m, Q::from(c))).collect()).unwrap()
    })
}

fn su(n: usize) -> impl Strategy<Value = CMat<Q>> {
    let b = su_basis::<Q>(n).unwrap();
    proptest::collection::vec(-3i64..=3, b.dim())
        .prop_map(move |c| b.combine(&c.into_iter().map(Q::from).collect::<Vec<_>>()))
}

proptest! {
    #[test]
    fn rational_matches_big_arithmetic(a in rational(), b in rational()) {
        prop_assert_eq!((a.clone() + b.clone()).to_big(), a.to_big() + b.to_big());
        prop_assert_eq!((a.clone() - b.clone()).to_big(), a.to_big() - b.to_big());
        prop_assert_eq!((a.clone() * b.clone()).to_big(), a.to_big() * b.to_big());
        if b != Q::from(0) {
            prop_assert_eq!((a.clone() / b.clone()).to_big(), a.to_big() / b.to_big());
        }
        prop_assert_eq!(a.cmp(&b), a.to_big().cmp(&b.to_big()));
    }

    #[test]
    fn rational_round_trips_through_text(a in rational()) {
        prop_assert_eq!(a.to_string().parse::<Q>().unwrap(), a);
    }

    #[test]
    fn wedge_is_graded_commutative(a in form(7, 2), b in form(7, 1), c in form(7, 3)) {
        prop_assert_eq!(a.wedge(&c).unwrap(), c.wedge(&a).unwrap());
        prop_assert_eq!(b.wedge(&c).unwrap(), c.wedge(&b).unwrap().scale(&Q::from(-1)));
        prop_assert_eq!(b.wedge(&b).unwrap(), PForm::zero(2));
    }

    #[test]
    fn wedge_is_associative(a in form(8, 1), b in form(8, 2), c in form(8, 2)) {
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn p0_is_symmetric_and_ad_invariant(x in su(3), y in su(3), z in su(3)) {
        let v = p0_eval3(&x, &y, &z).unwrap();
        prop_assert_eq!(&v, &p0_eval3(&y, &z, &x).unwrap());
        prop_assert_eq!(&v, &p0_eval3(&z, &x, &y).unwrap());
        prop_assert_eq!(&v, &p0_eval3(&y, &x, &z).unwrap());
        prop_assert_eq!(p0_eval(&x).unwrap(), p0_eval3(&x, &x, &x).unwrap());
        let ad = |w: &CMat<Q>| bracket(&z, w).unwrap();
        let inf = p0_eval3(&ad(&x), &x, &y).unwrap() + p0_eval3(&x, &ad(&x), &y).unwrap() + p0_eval3(&x, &x, &ad(&y)).unwrap();
        prop_assert_eq!(inf, Q::from(0));
    }
}
