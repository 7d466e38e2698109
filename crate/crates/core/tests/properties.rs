use num_traits::Signed;
use proptest::prelude::*;

use strata_core::bigfloat::BigFloat;
use strata_core::exact::{rat, Rational};
use strata_core::series::{s_series, sinc_half_series};
use strata_core::{EvenSeries, ExactRing, GPoly, GRatFunc};

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..30).prop_map(|(n, d)| rat(n, d))
}

fn series(order: usize) -> impl Strategy<Value = EvenSeries<Rational>> {
    prop::collection::vec(rational(), order + 1).prop_map(EvenSeries::new)
}

fn unit_series(order: usize) -> impl Strategy<Value = EvenSeries<Rational>> {
    prop::collection::vec(rational(), order).prop_map(|mut c| {
        c.insert(0, rat(1, 1));
        EvenSeries::new(c)
    })
}

fn poly() -> impl Strategy<Value = GPoly> {
    prop::collection::vec(rational(), 0..5).prop_map(GPoly::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mul_is_commutative_associative_distributive(a in series(5), b in series(5), c in series(5)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn power_paths_agree(f in unit_series(5), n in 0u64..12) {
        let binary = f.pow(n);
        prop_assert_eq!(&f.pow_exp_log(n as i64).unwrap(), &binary);
        prop_assert_eq!(&f.pow_recurrence(n as i64).unwrap(), &binary);
    }

    #[test]
    fn exp_log_round_trip(f in unit_series(6)) {
        prop_assert_eq!(f.log().unwrap().exp().unwrap(), f);
    }

    #[test]
    fn rational_function_field_laws(p in poly(), q in poly(), r in poly()) {
        prop_assume!(!q.is_zero() && !r.is_zero());
        let x = GRatFunc::new(p.clone(), q.clone()).unwrap();
        let y = GRatFunc::new(q.clone(), r.clone()).unwrap();
        prop_assert_eq!(x.mul_ref(&y), GRatFunc::new(p.mul_ref(&q), q.mul_ref(&r)).unwrap());
        prop_assert_eq!(x.add_ref(&y).sub_ref(&y), x.clone());
        // Denominators are always monic.
        prop_assert_eq!(x.denom().leading(), Some(&rat(1, 1)));
    }

    #[test]
    fn polynomial_division_identity(p in poly(), q in poly()) {
        prop_assume!(!q.is_zero());
        let (quot, rem) = p.div_rem(&q);
        prop_assert_eq!(quot.mul_ref(&q).add_ref(&rem), p);
        prop_assert!(rem.degree().is_none_or(|d| d < q.degree().unwrap()));
    }

    #[test]
    fn conversion_is_correctly_rounded(n in -1_000_000i64..1_000_000, d in 1i64..1_000_000, prec in 8u32..80) {
        let q = rat(n, d);
        let x = BigFloat::from_rational(&q, prec);
        let err = (x.to_rational() - &q).abs();
        // Half an ulp of |x| bounds the error.
        if !q.abs().eq(&rat(0, 1)) {
            let half_ulp_bound = x.to_rational().abs() / Rational::from_integer(num_bigint::BigInt::from(1) << prec as usize);
            prop_assert!(err <= half_ulp_bound);
        }
    }
}

#[test]
fn s_series_times_sinc_is_one_to_order_50() {
    assert_eq!(s_series(50).mul(&sinc_half_series(50)), EvenSeries::one(50));
}
