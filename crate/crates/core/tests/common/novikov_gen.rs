//! Strategies for Novikov ring elements.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use torus_floer::novikov::{FiltrationParam, NovikovElement, Term};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn term() -> impl Strategy<Value = Term> {
    (-5i64..=5, 1i64..=3, -6i64..=24, 1i64..=4, -3i64..=3)
        .prop_map(|(a, ad, l, ld, n)| Term::new(rat(a, ad), rat(l, ld), n))
}

pub fn element() -> impl Strategy<Value = NovikovElement> {
    proptest::collection::vec(term(), 0..6).prop_map(NovikovElement::from_terms)
}

pub fn nonzero() -> impl Strategy<Value = NovikovElement> {
    element().prop_filter("nonzero", |x| !x.is_zero())
}

pub fn homogeneous() -> impl Strategy<Value = NovikovElement> {
    (-3i64..=3, proptest::collection::vec(term(), 1..5)).prop_filter_map("nonzero", |(n, ts)| {
        let x = NovikovElement::from_terms(
            ts.into_iter()
                .map(|t| Term::new(t.coefficient, t.energy, n))
                .collect(),
        );
        (!x.is_zero()).then_some(x)
    })
}

pub fn step() -> impl Strategy<Value = FiltrationParam> {
    (1i64..=6, 1i64..=4).prop_map(|(n, d)| FiltrationParam::from_ratio(n, d).unwrap())
}
