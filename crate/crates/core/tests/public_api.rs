use squares_core::catalog::{cross_check, eval_family, list_families, FamilyParams};
use squares_core::derive::{closed_form_pairs, pipeline, projectively_equal, rederive};
use squares_core::evolve::method1;
use squares_core::verify::{chain_from_system, system_from_chain, validate_chain, validate_system};
use squares_core::{BigInt, Error};

fn b(v: i64) -> BigInt {
    BigInt::from(v)
}

#[test]
fn both_methods_give_distinct_systems() {
    for n in 3..=9 {
        let out = method1(n, &b(3)).unwrap();
        assert!(validate_system(&out.system, true).is_valid(), "method 1, n = {n}");
    }
    for n in 5..=8 {
        let sys = pipeline(n, &b(2), &b(3)).unwrap();
        assert!(validate_system(&sys, true).is_valid(), "method 2, n = {n}");
    }
}

#[test]
fn system_and_chain_convert_both_ways() {
    let sys = pipeline(7, &b(2), &b(1)).unwrap();
    let chain = chain_from_system(&sys).unwrap();
    assert!(validate_chain(&chain).is_valid());
    assert_eq!(system_from_chain(&chain).unwrap(), sys);
}

#[test]
fn every_family_cross_checks() {
    let ids = list_families();
    assert!(!ids.is_empty());
    for id in ids {
        let report = cross_check(id).unwrap();
        assert!(report.is_ok(), "{id}: {report}");
    }
}

#[test]
fn unknown_family_is_an_error() {
    assert!(matches!(
        eval_family("missing", &FamilyParams::T(b(2))),
        Err(Error::UnknownFamily(_))
    ));
}

#[test]
fn derivation_recovers_stored_closed_forms() {
    for n in 5..=8 {
        let derived = rederive(n).unwrap();
        for (name, form) in closed_form_pairs(n) {
            let target = form.dehomogenized();
            assert!(
                derived.candidates(name).iter().any(|c| projectively_equal(c, &target)),
                "n = {n}, pair {name}"
            );
        }
    }
}

#[test]
fn unsupported_sizes_are_rejected() {
    assert!(pipeline(9, &b(1), &b(2)).is_err());
    assert!(rederive(4).is_err());
    assert!(method1(2, &b(2)).is_err());
}
