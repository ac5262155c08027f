use motivic::ring::{Bound, LaurentPoly, MonomialMap, MultiSeries, TSeries};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -6i64..=6), 0..5).prop_map(|terms| {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, BigInt::from(c));
        }
        p
    })
}

fn nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

const ORDER: usize = 8;

fn series() -> impl Strategy<Value = TSeries> {
    prop::collection::vec(poly(), ORDER + 1).prop_map(|c| TSeries::from_coeffs(c, ORDER))
}

/// Constant term a signed power of 𝕃, so the series is invertible.
fn unit_series() -> impl Strategy<Value = TSeries> {
    (series(), -3i64..=3, any::<bool>()).prop_map(|(s, e, neg)| {
        let mut s = s;
        let c = LaurentPoly::l_pow(e);
        s.set_coeff(0, if neg { -c } else { c });
        s
    })
}

fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    (-7i64..=7, 1i64..=5)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn xy_bound(max: u64) -> Bound {
    Bound::t_graded(2, 0, max)
}

/// Two variables `t, x`, graded by the power of `t`.
fn xy_series(max: u64) -> impl Strategy<Value = MultiSeries> {
    prop::collection::vec(((0u32..=6, 0u32..=4), poly()), 0..10).prop_map(move |terms| {
        let mut s = MultiSeries::new(&["t", "x"], xy_bound(max));
        for ((i, j), c) in terms {
            s.add_term(vec![i, j], c);
        }
        s
    })
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &LaurentPoly::zero(), a.clone());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert_eq!(&a - &b, &a + &(-&b));
    }

    #[test]
    fn laurent_text_and_json_round_trip(a in poly()) {
        let back: LaurentPoly = a.to_string().parse().unwrap();
        prop_assert_eq!(&back, &a);
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<LaurentPoly>(&json).unwrap(), a);
    }

    #[test]
    fn exact_division_undoes_multiplication(a in poly(), b in nonzero_poly()) {
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn specialization_is_a_homomorphism(a in poly(), b in poly(), v in nonzero_rational()) {
        let (sa, sb) = (a.specialize(&v).unwrap(), b.specialize(&v).unwrap());
        prop_assert_eq!((&a + &b).specialize(&v).unwrap(), &sa + &sb);
        prop_assert_eq!((&a * &b).specialize(&v).unwrap(), sa * sb);
    }

    #[test]
    fn series_ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &TSeries::one(ORDER), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn inverse_is_two_sided(a in unit_series(), b in series()) {
        let inv = a.invert().unwrap();
        prop_assert_eq!(&a * &inv, TSeries::one(ORDER));
        // dividing then multiplying back
        prop_assert_eq!(&(&b * &inv) * &a, b);
    }

    #[test]
    fn power_substitution_is_a_ring_map(a in series(), b in series(), k in 1usize..=4) {
        prop_assert_eq!((&a * &b).substitute_power(k), &a.substitute_power(k) * &b.substitute_power(k));
        prop_assert_eq!((&a + &b).substitute_power(k), &a.substitute_power(k) + &b.substitute_power(k));
    }

    #[test]
    fn shift_is_multiplication_by_t_power(a in series(), k in 0usize..=ORDER + 2) {
        let tk = TSeries::monomial(LaurentPoly::one(), k, ORDER);
        prop_assert_eq!(a.shift_t(k), &a * &tk);
    }

    /// Coefficients up to `t^m` never depend on anything above `t^m`.
    #[test]
    fn truncation_commutes_with_arithmetic(a in series(), b in unit_series(), m in 0usize..=ORDER) {
        prop_assert_eq!((&a * &b).truncate(m), &a.truncate(m) * &b.truncate(m));
        prop_assert_eq!(b.invert().unwrap().truncate(m), b.truncate(m).invert().unwrap());
    }

    #[test]
    fn multi_series_truncation_commutes(a in xy_series(8), b in xy_series(8), m in 0u64..=8) {
        let low = |s: &MultiSeries| s.filter(|e| e[0] as u64 <= m).with_bound(xy_bound(m));
        prop_assert_eq!(low(&a.mul(&b)), low(&a).mul(&low(&b)));
        prop_assert_eq!(low(&a.add(&b)), low(&a).add(&low(&b)));
    }

    /// `x ↦ t·x·𝕃⁻¹` raises the grading and respects products.
    #[test]
    fn monomial_maps_are_ring_maps(a in xy_series(8), b in xy_series(8)) {
        let map = MonomialMap::from_spec(&["t", "x"], &[("x", "t*x", -1)]);
        let bound = xy_bound(8);
        let img = |s: &MultiSeries| map.apply(s, &bound).unwrap().0;
        prop_assert_eq!(img(&a.mul(&b)), img(&a).mul(&img(&b)));
        prop_assert_eq!(img(&a.add(&b)), img(&a).add(&img(&b)));
    }

    #[test]
    fn multi_series_json_round_trip(a in xy_series(8)) {
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<MultiSeries>(&json).unwrap(), a);
    }
}
