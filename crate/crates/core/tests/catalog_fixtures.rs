use ncstab_core::catalog::{self, find_fixture, load_fixture, Predicate, SearchSpace};
use ncstab_core::field::{Field, PrimeField, Rationals};
use ncstab_core::pointscheme::analyze;
use ncstab_core::Error;

#[test]
fn committed_fixtures_reverify() {
    for name in catalog::fixture_names() {
        let fx = load_fixture(name).unwrap();
        assert!(fx.certificate.regular, "{name}");
    }
}

#[test]
fn searches_reproduce_committed_fixtures() {
    for name in ["triangle-cyclic", "fixed-singular-point"] {
        let fx = load_fixture(name).unwrap();
        let rec = fx.certificate.search.clone().unwrap();
        let again = find_fixture(rec.predicate, rec.space, rec.seed).unwrap();
        assert_eq!(again.algebra.coeffs(), fx.algebra.coeffs(), "{name}");
    }
}

#[test]
fn false_predicate_is_not_found() {
    let r = find_fixture(Predicate::Never, SearchSpace::SklyaninGrid { p: 7, range: 6, budget: 5 }, 1);
    assert!(matches!(r, Err(Error::NotFound(_))));
}

#[test]
fn tampered_certificate_is_rejected() {
    let fx = load_fixture("sklyanin").unwrap();
    let mut doc = fx.to_json();
    doc["certificate"]["verdict"] = "Exceptional".into();
    assert!(matches!(catalog::Fixture::from_json(&doc), Err(Error::Schema { .. })));
}

#[test]
fn family_examples() {
    let q = Rationals;
    let comm = catalog::sklyanin(&q, &q.one(), &q.from_i64(-1), &q.zero()).unwrap();
    assert_eq!(analyze(&comm).unwrap().verdict.name(), "Linear");
    let qp = catalog::quantum_plane(&q, &q.one(), &q.one(), &q.one()).unwrap();
    assert_eq!(analyze(&qp).unwrap().verdict.name(), "Linear");
    let f = PrimeField::new(10007).unwrap();
    let qp = catalog::quantum_plane(&f, &2, &3, &5).unwrap();
    assert_eq!(analyze(&qp).unwrap().verdict.name(), "Unstable");
}

#[test]
fn nodal_translation_over_rationals_fixes_node() {
    let q = Rationals;
    let a = catalog::nodal_translation(&q, &q.from_i64(2)).unwrap();
    assert!(a.hilbert(4).unwrap().regular);
    let geo = analyze(&a).unwrap();
    assert!(geo.lines.is_empty());
    assert_eq!(geo.singular.len(), 1);
    assert_eq!(geo.singular[0].fixed, Some(true));
}
