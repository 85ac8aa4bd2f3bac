mod common;

use common::{cat, fermat, random_lines, random_points};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use unexpected_core::arrangement::{delete_line, dualize, inverse, standard_entries, Arrangement, Mat3};
use unexpected_core::exact::Scalar;
use unexpected_core::syzygy::{
    ar_dimension, explicit_syzygy, mdr, mdr_arrangement, mdr_of, numeric_invariants, van_lower_bound, MdrOptions,
};

const PLAIN: MdrOptions = MdrOptions {
    shortcut: false,
    prefilter: false,
};

fn m(k: u32) -> String {
    k.to_string()
}

#[test]
fn golden_mdr_values() {
    for k in 3..=6 {
        assert_eq!(mdr_of(&fermat(k)).unwrap(), k + 1, "fermat {k}");
    }
    for k in 4..=6 {
        assert_eq!(mdr_of(&cat("full_monomial", &[("m", &m(k))])).unwrap(), k - 1, "M {k}");
    }
    assert_eq!(mdr_of(&cat("B3", &[])).unwrap(), 3);
    assert_eq!(mdr_of(&cat("hessian", &[])).unwrap(), 4);
    for line in 0..12 {
        let h = cat("hessian_minus", &[("line", &line.to_string())]);
        assert_eq!(mdr_of(&h).unwrap(), 4);
    }
}

#[test]
fn witnesses_verify_and_are_minimal() {
    for a in standard_entries().into_iter().filter(|a| a.len() <= 13) {
        let f = a.defining_polynomial();
        let (r, w) = mdr_arrangement(&a, MdrOptions::default()).unwrap();
        assert_eq!(w.degree(), r);
        assert!(w.verify(&f), "{}", a.label());
        if r > 0 {
            assert_eq!(ar_dimension(&f, r - 1), 0, "{}", a.label());
        }
        assert!(ar_dimension(&f, r) >= 1);
    }
}

#[test]
fn search_options_agree() {
    for a in standard_entries().into_iter().filter(|a| a.len() <= 12) {
        let fast = mdr_arrangement(&a, MdrOptions::default()).unwrap().0;
        let slow = mdr_arrangement(&a, PLAIN).unwrap().0;
        let general = mdr(&a.defining_polynomial()).unwrap().0;
        assert_eq!((fast, slow), (general, general), "{}", a.label());
    }
}

#[test]
fn relation_space_grows() {
    for a in [fermat(3), cat("B3", &[]), cat("full_monomial", &[("m", "5")])] {
        let f = a.defining_polynomial();
        let r = mdr_of(&a).unwrap();
        let dims: Vec<usize> = (r..=r + 2).map(|k| ar_dimension(&f, k)).collect();
        assert!(dims.windows(2).all(|w| w[0] <= w[1]), "{}: {dims:?}", a.label());
    }
}

#[test]
fn explicit_relation_degrees() {
    for a in [cat("B3", &[]), fermat(3), cat("hessian", &[])] {
        let f = a.defining_polynomial();
        let lat = a.lattice().unwrap();
        for p in lat.points() {
            let w = explicit_syzygy(&a, &p.point).unwrap();
            assert_eq!(w.degree() as usize, a.len() - p.multiplicity());
            assert!(w.verify(&f));
        }
    }
}

#[test]
fn freeness_and_exponents() {
    let cases: [(Arrangement, Option<(u64, u64)>); 6] = [
        (cat("B3", &[]), Some((3, 5))),
        (fermat(3), Some((4, 4))),
        (fermat(5), Some((6, 8))),
        (cat("full_monomial", &[("m", "5")]), Some((4, 7))),
        (cat("hessian", &[]), Some((4, 7))),
        (cat("A1", &[("m", "4")]), Some((5, 7))),
    ];
    for (a, exps) in cases {
        let inv = numeric_invariants(&a).unwrap();
        assert_eq!(inv.exponents, exps, "{}", a.label());
        assert_eq!(inv.tau as i64, inv.dpw_bound);
    }
    let a1 = numeric_invariants(&cat("A1", &[("m", "5")])).unwrap();
    assert_eq!(a1.exponents, Some((6, 9)));
    let h11 = numeric_invariants(&cat("hessian_minus", &[])).unwrap();
    assert_eq!(h11.exponents, Some((4, 6)));
    // a generic line on top of a free arrangement is not free
    let g = numeric_invariants(&unexpected_core::arrangement::add_generic_line(&fermat(3), 1).unwrap()).unwrap();
    assert!(!g.is_free);
}

#[test]
fn tau_bounds_on_catalog() {
    for a in standard_entries() {
        let inv = numeric_invariants(&a).unwrap();
        let tau = inv.tau as i64;
        assert!(tau <= inv.dpw_bound, "{}", a.label());
        assert_eq!(tau == inv.dpw_bound, inv.is_free);
        if let Some(s) = inv.dpw_bound_strong {
            assert!(tau <= s, "{}", a.label());
        }
        let r = BigRational::from_integer(BigInt::from(inv.mdr));
        assert!(r >= van_lower_bound(&a).unwrap(), "{}", a.label());
    }
}

#[test]
fn van_lower_bound_example() {
    // d = 8, m = 3: 16/3 - 2
    let z = random_points(&mut common::rng(3), 8, 50);
    let a = dualize(&z);
    if a.max_multiplicity().unwrap() == 3 {
        assert_eq!(van_lower_bound(&a).unwrap(), BigRational::new(10.into(), 3.into()));
    }
    let b3 = cat("B3", &[]);
    assert_eq!(van_lower_bound(&b3).unwrap(), BigRational::new(5.into(), 2.into()));
}

#[test]
fn deletion_lowers_mdr_by_at_most_one() {
    for a in [cat("B3", &[]), cat("full_monomial", &[("m", "5")]), cat("hessian", &[])] {
        let r = mdr_of(&a).unwrap();
        for i in 0..a.len() {
            let s = mdr_of(&delete_line(&a, i).unwrap()).unwrap();
            assert!(s == r || s + 1 == r, "{} minus {i}: {s} vs {r}", a.label());
        }
    }
}

fn random_transform(seed: u64) -> Mat3 {
    use rand::Rng;
    let mut rng = common::rng(seed);
    loop {
        let m: Mat3 = std::array::from_fn(|_| std::array::from_fn(|_| Scalar::from_int(rng.gen_range(-3..=3))));
        if inverse(&m).is_ok() {
            return m;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mdr_matches_unfiltered_search(seed in any::<u64>(), d in 2usize..8) {
        let a = random_lines(&mut common::rng(seed), d, 2);
        let fast = mdr_arrangement(&a, MdrOptions::default()).unwrap();
        let slow = mdr_arrangement(&a, PLAIN).unwrap();
        prop_assert_eq!(fast.0, slow.0);
        prop_assert!(fast.1.verify(&a.defining_polynomial()));
        prop_assert!(fast.0 as usize <= d - a.max_multiplicity().unwrap());
    }

    #[test]
    fn mdr_is_projectively_invariant(seed in any::<u64>(), d in 3usize..8) {
        let z = random_points(&mut common::rng(seed), d, 3);
        let t = random_transform(seed.wrapping_add(1));
        let r0 = mdr_of(&dualize(&z)).unwrap();
        let r1 = mdr_of(&dualize(&z.transform(&t).unwrap())).unwrap();
        prop_assert_eq!(r0, r1);
    }

    #[test]
    fn tau_bound_on_random(seed in any::<u64>(), d in 3usize..10) {
        let a = random_lines(&mut common::rng(seed), d, 2);
        let inv = numeric_invariants(&a).unwrap();
        prop_assert!(inv.tau as i64 <= inv.dpw_bound);
        if let Some(s) = inv.dpw_bound_strong {
            prop_assert!(inv.tau as i64 <= s);
        }
        let r = BigRational::from_integer(BigInt::from(inv.mdr));
        prop_assert!(r >= van_lower_bound(&a).unwrap());
    }
}
