//! Every fixture builds, reloads, and matches its manifest.

use hopfstar::coideal::{galois_roundtrip, invariants, quotient_coalgebra};
use hopfstar::corpus::{build_fixture, load_fixture, Fixture, FIXTURE_NAMES};
use hopfstar::cqgtools::peter_weyl;
use hopfstar::hopfcore::io;

#[test]
fn every_fixture_round_trips_through_disk() {
    let tmp = tempfile::tempdir().unwrap();
    for name in FIXTURE_NAMES {
        let dir = tmp.path().join(name);
        let manifest = build_fixture(name, &dir).unwrap();
        assert_eq!(manifest.name, *name);
        assert!(!manifest.checksums.contains_key("manifest.json"));
        match load_fixture(&dir, None).unwrap() {
            Fixture::Finite { hopf, coideals, .. } => {
                assert_eq!(manifest.kind, "finite");
                assert_eq!(manifest.expected["dim"], hopf.dim());
                let blocks = peter_weyl(hopf.coalgebra(), 0).unwrap().sizes();
                assert_eq!(manifest.expected["blocks"], serde_json::json!(blocks), "{name}");
                for (cname, a) in &coideals {
                    assert_eq!(manifest.expected["coideal_dims"][cname], a.dim(), "{name}/{cname}");
                }
                let text = std::fs::read_to_string(dir.join("hopf.json")).unwrap();
                assert_eq!(io::to_json(&io::from_json(&text, "hopf.json").unwrap()), text);
            }
            Fixture::Presented { presented, coideals, .. } => {
                assert_eq!(manifest.kind, "presented");
                assert_eq!(manifest.expected["cutoff"], presented.cutoff);
                assert_eq!(coideals.len(), 2);
            }
        }
    }
}

#[test]
fn correspondence_holds_on_every_finite_fixture() {
    let tmp = tempfile::tempdir().unwrap();
    for name in ["d4", "group-algebra-s3", "kac-paljutkin"] {
        let dir = tmp.path().join(name);
        build_fixture(name, &dir).unwrap();
        let Fixture::Finite { hopf, coideals, .. } = load_fixture(&dir, None).unwrap() else {
            panic!("{name} should be finite");
        };
        for (cname, a) in &coideals {
            let q = quotient_coalgebra(a).unwrap();
            assert_eq!(a.dim() * q.dim(), hopf.dim(), "{name}/{cname}");
            assert!(invariants(&q).unwrap().compare(&a.space).unwrap().equal, "{name}/{cname}");
            assert!(galois_roundtrip(a).unwrap().pass, "{name}/{cname}");
        }
    }
}

#[test]
fn tolerance_override_applies_to_loaded_fixtures() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("z3");
    build_fixture("z3", &dir).unwrap();
    let Fixture::Finite { hopf, .. } = load_fixture(&dir, Some(1e-7)).unwrap() else {
        panic!("z3 should be finite");
    };
    assert_eq!(hopf.tol(), 1e-7);
}
