use motivic::powerstruct::{failed_axioms, one_minus_t_pow, series_pow, sym_powers, AxiomInstance};
use motivic::ring::{LaurentPoly, TSeries};
use num_bigint::BigInt;
use proptest::prelude::*;

const ORDER: usize = 10;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i64..=3, -5i64..=5), 0..4).prop_map(|terms| {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, BigInt::from(c));
        }
        p
    })
}

fn one_plus_t_series() -> impl Strategy<Value = TSeries> {
    prop::collection::vec(poly(), ORDER).prop_map(|tail| {
        let mut c = vec![LaurentPoly::one()];
        c.extend(tail);
        TSeries::from_coeffs(c, ORDER)
    })
}

fn instance() -> impl Strategy<Value = AxiomInstance> {
    (one_plus_t_series(), one_plus_t_series(), poly(), poly(), 2usize..=3)
        .prop_map(|(a, b, m, n, k)| AxiomInstance { a, b, m, n, k })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn all_seven_axioms_hold(inst in instance()) {
        prop_assert_eq!(failed_axioms(&inst).unwrap(), Vec::<u8>::new());
    }
}

proptest! {
    #[test]
    fn exponent_is_additive_on_one_minus_t(m in poly(), n in poly()) {
        let lhs = one_minus_t_pow(&(&m + &n), ORDER);
        prop_assert_eq!(lhs, &one_minus_t_pow(&m, ORDER) * &one_minus_t_pow(&n, ORDER));
    }

    #[test]
    fn negated_exponent_inverts(m in poly()) {
        let p = one_minus_t_pow(&m, ORDER);
        prop_assert_eq!(&p * &one_minus_t_pow(&-&m, ORDER), TSeries::one(ORDER));
    }

    #[test]
    fn integer_exponents_are_ordinary_powers(a in one_plus_t_series(), n in 0u32..=4) {
        prop_assert_eq!(series_pow(&a, &LaurentPoly::from_int(n)).unwrap(), a.pow(n));
    }
}

#[test]
fn geometric_series_of_l_powers() {
    for j in -5i64..=5 {
        let got = one_minus_t_pow(&LaurentPoly::l_pow(j), 20);
        let want = TSeries::from_coeffs((0..=20).map(|k| LaurentPoly::l_pow(k * j)).collect(), 20);
        assert_eq!(got, want, "j = {j}");
    }
}

#[test]
fn symmetric_square_of_l_plus_one() {
    let s = sym_powers(&"L + 1".parse().unwrap(), 3);
    assert_eq!(s[2], "L^2 + L + 1".parse().unwrap());
}
