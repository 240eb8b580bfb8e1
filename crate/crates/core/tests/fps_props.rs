use proptest::prelude::*;
use riordan_core::series_lang::{evaluate, parse, SeriesAst};
use riordan_core::{rat, ratio, Rational, Series, StridedSeries};

const N: usize = 8;

fn rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
}

fn nonzero() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |q| *q != rat(0))
}

fn series() -> impl Strategy<Value = Series> {
    prop::collection::vec(rational(), N + 1).prop_map(Series::new)
}

fn unit() -> impl Strategy<Value = Series> {
    (nonzero(), prop::collection::vec(rational(), N)).prop_map(|(c0, rest)| {
        let mut c = vec![c0];
        c.extend(rest);
        Series::new(c)
    })
}

/// Series of order exactly one.
fn delta() -> impl Strategy<Value = Series> {
    unit().prop_map(|u| u.shift(1).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_an_abelian_group(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a + &Series::zero(N), a.clone());
        prop_assert!((&a + &-&a).is_zero());
    }

    #[test]
    fn multiplication_is_commutative_ring(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &Series::one(N), a.clone());
    }

    #[test]
    fn division_inverts_multiplication(a in series(), u in unit()) {
        let q = a.div(&u).unwrap();
        prop_assert_eq!(q.precision(), N);
        prop_assert_eq!(&q * &u, a);
        prop_assert_eq!(&u.recip().unwrap() * &u, Series::one(N));
    }

    #[test]
    fn division_by_order_k_divisor_drops_precision(a in unit(), u in unit(), k in 1usize..3) {
        let num = &a.shift(k as i64).unwrap() * &u;
        let den = u.shift(k as i64).unwrap();
        let q = num.div(&den).unwrap();
        prop_assert_eq!(q.precision(), N - k);
        prop_assert_eq!(q, a);
    }

    #[test]
    fn compose_and_comp_inverse_round_trip(f in delta()) {
        let g = f.comp_inverse().unwrap();
        let t = Series::var(N);
        prop_assert_eq!(f.compose(&g).unwrap(), t.clone());
        prop_assert_eq!(g.compose(&f).unwrap(), t);
        prop_assert_eq!(g.comp_inverse().unwrap(), f);
    }

    #[test]
    fn compose_is_associative_and_multiplicative(a in series(), b in series(), f in delta(), g in delta()) {
        let fg = f.compose(&g).unwrap();
        prop_assert_eq!(a.compose(&fg).unwrap(), a.compose(&f).unwrap().compose(&g).unwrap());
        prop_assert_eq!((&a * &b).compose(&f).unwrap(), &a.compose(&f).unwrap() * &b.compose(&f).unwrap());
    }

    #[test]
    fn nth_root_powers_back(u in unit(), r in nonzero(), n in 1u32..5) {
        let mut c = u.coeffs().to_vec();
        let r = if r < rat(0) { -r } else { r };
        c[0] = r.pow(n as i32);
        let u = Series::new(c);
        let v = u.nth_root_unit(n).unwrap();
        prop_assert_eq!(v.pow(n), u);
        prop_assert!(*v.coeff(0) > rat(0));
    }

    #[test]
    fn shift_round_trip(a in series(), k in 0usize..4) {
        let up = a.shift(k as i64).unwrap();
        prop_assert_eq!(up.precision(), N);
        let down = up.shift(-(k as i64)).unwrap();
        prop_assert_eq!(down.precision(), N - k);
        prop_assert_eq!(down, a);
    }

    #[test]
    fn decimate_inflate_round_trip(a in series(), (ell, offset) in (1usize..4).prop_flat_map(|l| (Just(l), 0..l))) {
        let x = a.inflate(ell, offset);
        prop_assert!(x.check_stride(ell, offset).is_ok());
        let back = x.decimate(ell, offset).unwrap();
        prop_assert_eq!(back.precision(), a.precision());
        prop_assert_eq!(&back, &a);
        let s = StridedSeries::new(x, ell, offset).unwrap();
        prop_assert_eq!(s.decimated(), a);
    }

    #[test]
    fn derivative_is_a_derivation(a in series(), b in series()) {
        let lhs = (&a * &b).derivative().unwrap();
        let rhs = &(&a.derivative().unwrap() * &b) + &(&a * &b.derivative().unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

fn ast() -> impl Strategy<Value = SeriesAst> {
    let leaf = prop_oneof![
        (0i64..5, 1i64..4).prop_map(|(p, q)| SeriesAst::Rational(ratio(p, q))),
        Just(SeriesAst::Var),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| SeriesAst::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| SeriesAst::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| SeriesAst::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| SeriesAst::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| SeriesAst::Div(Box::new(a), Box::new(b))),
            (inner, -2i64..4).prop_map(|(a, e)| SeriesAst::Pow(Box::new(a), e)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn display_parses_back(a in ast()) {
        prop_assert_eq!(parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in ast(), b in ast()) {
        let (Ok(x), Ok(y)) = (evaluate(&a, N), evaluate(&b, N)) else {
            return Ok(());
        };
        let sum = evaluate(&SeriesAst::Add(Box::new(a.clone()), Box::new(b.clone())), N).unwrap();
        prop_assert_eq!(sum, &x + &y);
        let prod = evaluate(&SeriesAst::Mul(Box::new(a), Box::new(b)), N).unwrap();
        prop_assert_eq!(prod, &x * &y);
    }

    #[test]
    fn evaluation_respects_precision(a in ast()) {
        if let Ok(x) = evaluate(&a, N) {
            prop_assert_eq!(x.precision(), N);
            if let Ok(y) = evaluate(&a, N + 3) {
                prop_assert_eq!(y.precision(), N + 3);
                prop_assert!(y.agrees_to(&x, N + 1));
            }
        }
    }
}

#[test]
fn offset_must_be_below_stride() {
    assert!(Series::one(4).check_stride(2, 2).is_err());
    assert!(Series::one(4).decimate(0, 0).is_err());
}

#[test]
fn parsed_generating_functions() {
    let s = riordan_core::series_lang::evaluate_str("1/(1-t-t^2)", 10).unwrap();
    let fib: Vec<Rational> = [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89].iter().map(|&x| rat(x)).collect();
    assert_eq!(s.coeffs(), &fib[..]);
}
