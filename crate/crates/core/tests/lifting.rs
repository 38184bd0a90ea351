use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use superdirac::lifting::*;
use superdirac::rootdata::{make_dominant, weyl_iter, Weight, WeylElement};
use superdirac::Error;

fn w(s: &str) -> Weight {
    s.parse().unwrap()
}

fn p(s: &str) -> HarishChandraParameter {
    classify(&w(s)).unwrap()
}

/// The closed form: a_i − ½ on positive coordinates, b_j + ½ on negative ones.
fn closed_form(lam: &Weight) -> Weight {
    Weight::from_doubled(lam.doubled().iter().map(|&d| if d > 0 { d - 1 } else { d + 1 }).collect())
}

#[test]
fn worked_examples() {
    assert_eq!(lift_ds_parameter(&p("2,1")).unwrap().lambda(), &w("3/2,1/2"));
    assert_eq!(lift_ds_parameter(&p("3,1,-2")).unwrap().lambda(), &w("5/2,1/2,-3/2"));
    assert_eq!(lift_ds_parameter(&p("-2,3")).unwrap().lambda(), &w("-3/2,5/2"));
}

#[test]
fn chamber_witness_example() {
    // w(x₁,x₂) = (x₂,−x₁) sends (−2,3) to (3,2)
    let lam = w("-2,3");
    let (g, dom) = make_dominant(&lam).unwrap();
    assert_eq!(dom, w("3,2"));
    assert_eq!(g.inverse().act(&omega_n(2)), w("-1/2,1/2"));
    let lifted = lift_ds_parameter(&p("-2,3")).unwrap();
    assert_eq!(g.act(lifted.lambda()), &dom - &omega_n(2));
}

#[test]
fn closed_form_agrees_with_witness_formula() {
    for lam in integral_regular_parameters(3, 4) {
        assert_eq!(lift_ds_parameter(&classify(&lam).unwrap()).unwrap().lambda(), &closed_form(&lam));
    }
}

#[test]
fn classification_errors() {
    assert!(matches!(classify(&w("1,1/2")), Err(Error::MixedParity(_))));
    assert!(matches!(classify(&w("0,1")), Err(Error::NonRegular(_))));
    assert!(matches!(classify(&w("3/2,-3/2")), Err(Error::NonRegular(_))));
    assert!(matches!(lift_ds_parameter(&p("3/2,1/2")), Err(Error::WrongParity { .. })));
}

#[test]
fn packet_sizes_rank_two() {
    let r = bijection_suite(2, 3).unwrap();
    // three dominant (a > b > 0) pairs, eight chambers each
    assert_eq!(r.dominant, 3);
    assert_eq!(r.parameters, 24);
    assert!(r.pass, "{r:?}");
}

#[test]
fn transfer_examples() {
    let c = verify_adams_transfer(&w("1/2"), 1, 12).unwrap();
    assert!(c.pass && c.orbit_sign == 1 && c.lambda_prime == w("1/2"));
    let c = verify_adams_transfer(&w("3/2,1/2"), 1, 12).unwrap();
    assert_eq!((c.lambda_prime.to_string(), c.orbit_sign, c.pass), ("3/2,-1/2".into(), -1, true));
    let json = serde_json::to_value(c.to_json()).unwrap();
    assert_eq!(json["lambda_prime"], "3/2,-1/2");
    assert!(verify_adams_transfer(&w("2,1"), 1, 12).is_err());
}

#[test]
fn transfer_small_enumeration() {
    for n in 1..=2 {
        for (lam, k) in adams_parameters(n, 5) {
            let c = verify_adams_transfer(&lam, k, 8).unwrap();
            assert!(c.numerator_ok && c.series_ok, "{lam} k={k}");
        }
    }
}

fn dominant_integral(n: usize) -> impl Strategy<Value = Weight> {
    prop::collection::btree_set(1i64..15, n).prop_map(|s| Weight::from_integers(&s.into_iter().rev().collect::<Vec<_>>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_round_trip_and_dominance(lam in dominant_integral(3), k in 0usize..48, c in -5i64..6) {
        let param = classify(&lam).unwrap();
        let coeffs = BTreeMap::from([
            (WeylElement::identity(3), BigRational::from_integer(BigInt::from(1))),
            (weyl_iter(3).unwrap().nth(k).unwrap().0, BigRational::new(BigInt::from(c), BigInt::from(3))),
        ]);
        let theta = VirtualCharacter::new(param, coeffs).unwrap();
        let fwd = lift_gamma(&theta, Direction::Forward).unwrap();
        prop_assert!(fwd.lambda_dom().lambda().is_strictly_dominant());
        prop_assert_eq!(fwd.lambda_dom().parity(), ParameterParity::Genuine);
        prop_assert_eq!(fwd.lambda_dom().lambda(), &(&lam - &omega_n(3)));
        prop_assert_eq!(&lift_gamma(&fwd, Direction::Inverse).unwrap(), &theta);
    }

    #[test]
    fn reorganized_numerator_is_unchanged(lam in dominant_integral(2), k in 0usize..8) {
        let (g, _) = weyl_iter(2).unwrap().nth(k).unwrap();
        let moved = g.act(&lam);
        let theta = VirtualCharacter::basic(&classify(&moved).unwrap()).unwrap();
        prop_assert_eq!(theta.lambda_dom().lambda(), &lam);
        prop_assert_eq!(theta.numerator().unwrap(), superdirac::charring::FormalCharacter::exp(moved));
    }

    #[test]
    fn stable_numerator_alternates(d in prop::collection::vec(-7i64..8, 2), k in 0usize..8) {
        let lam = Weight::from_doubled(d.iter().map(|x| 2 * x + 1).collect());
        prop_assume!(lam.is_regular());
        let (g, s) = weyl_iter(2).unwrap().nth(k).unwrap();
        let a = stable_numerator(&classify(&lam).unwrap()).unwrap();
        let b = stable_numerator(&classify(&g.act(&lam)).unwrap()).unwrap();
        prop_assert_eq!(b, a.scale(&BigInt::from(s)));
    }
}
