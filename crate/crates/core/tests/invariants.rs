//! Cross-module invariants checked over the whole catalog, plus randomized
//! algebraic laws via proptest.

use num_complex::Complex64;
use proptest::prelude::*;

use aconv::arith::{convolve, distance, inverse, standard, Standard};
use aconv::catalog::{canonical_names, resolve};
use aconv::decomp::{check_complete, check_paradigmatic, decomposition, derive, DeriveWhich};
use aconv::properties::{check, check_in_class, is_ab_split, Predicate};
use aconv::system::{build, Family};
use aconv::{ArithFunc, MetricValue, Side};

const BOUND: u64 = 96;

fn catalog() -> Vec<aconv::DivisorSystem> {
    canonical_names()
        .into_iter()
        .map(|name| resolve(name, BOUND).unwrap())
        .collect()
}

#[test]
fn derived_systems_have_their_defining_property() {
    for sys in catalog() {
        if !check_complete(&sys).unwrap().pass {
            continue;
        }
        let p = derive(&sys, DeriveWhich::PerfectP).unwrap();
        assert!(check(&p, Predicate::Perfect).pass, "P({}) not perfect", sys.name());
        let f = derive(&sys, DeriveWhich::ParadigmaticF).unwrap();
        assert!(check_paradigmatic(&f).unwrap().pass, "F({}) not paradigmatic", sys.name());
        let m = derive(&sys, DeriveWhich::Minimal).unwrap();
        for n in 1..=BOUND {
            assert_eq!(
                decomposition(&m, n).unwrap().parts,
                decomposition(&sys, n).unwrap().parts,
                "minimal({}) changed the decomposition of {n}",
                sys.name()
            );
        }
    }
}

#[test]
fn paradigmatic_iff_self_class_membership() {
    for sys in catalog() {
        if !check_complete(&sys).unwrap().pass {
            continue;
        }
        let paradigmatic = check_paradigmatic(&sys).unwrap().pass;
        let in_own_class = check_in_class(&sys, &sys).unwrap().pass;
        assert_eq!(paradigmatic, in_own_class, "mismatch for {}", sys.name());
    }
}

#[test]
fn paradigmatic_systems_are_symmetric_associative_split() {
    for sys in catalog() {
        if !check_complete(&sys).unwrap().pass || !check_paradigmatic(&sys).unwrap().pass {
            continue;
        }
        assert!(check(&sys, Predicate::Symmetric).pass, "{}", sys.name());
        assert!(check(&sys, Predicate::Associative).pass, "{}", sys.name());
        assert!(check(&sys, Predicate::Split).pass, "{}", sys.name());
    }
}

#[test]
fn dirichlet_unitary_split_relation() {
    let d = build(&Family::Dirichlet, BOUND).unwrap();
    let d1 = build(&Family::Unitary, BOUND).unwrap();
    assert!(is_ab_split(&d, &d, &d1).unwrap().pass);
}

fn func_strategy() -> impl Strategy<Value = ArithFunc> {
    prop::collection::vec(-5i64..=5, 16)
        .prop_map(|raw| {
            let mut values: Vec<Complex64> =
                raw.into_iter().map(|v| Complex64::new(v as f64, 0.0)).collect();
            // keep the function invertible so inverse laws are testable
            values[0] = Complex64::new(1.0, 0.0);
            ArithFunc::new(values, true).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convolution_is_associative_for_regular_systems(
        f in func_strategy(), g in func_strategy(), h in func_strategy()
    ) {
        for fam in [Family::Dirichlet, Family::Unitary, Family::Ternary] {
            let sys = build(&fam, 16).unwrap();
            let left = convolve(&sys, &convolve(&sys, &f, &g).unwrap(), &h).unwrap();
            let right = convolve(&sys, &f, &convolve(&sys, &g, &h).unwrap()).unwrap();
            for n in 1..=16 {
                prop_assert!(left.values_eq(&right, n, 1e-9));
            }
        }
    }

    #[test]
    fn right_inverse_cancels(f in func_strategy()) {
        let sys = build(&Family::Dirichlet, 16).unwrap();
        let inv = inverse(&sys, &f, Side::Right).unwrap();
        let prod = convolve(&sys, &f, &inv).unwrap();
        let iota = standard(Standard::Iota, 16).unwrap();
        for n in 1..=16 {
            prop_assert!(prod.values_eq(&iota, n, 1e-9));
        }
    }

    #[test]
    fn distance_is_an_ultrametric(
        f in func_strategy(), g in func_strategy(), h in func_strategy()
    ) {
        let as_f64 = |m: MetricValue| m.as_f64(16);
        let fg = as_f64(distance(&f, &g, 1e-9).unwrap());
        let fh = as_f64(distance(&f, &h, 1e-9).unwrap());
        let gh = as_f64(distance(&g, &h, 1e-9).unwrap());
        prop_assert!(fg <= fh.max(gh) + 1e-15);
    }
}
