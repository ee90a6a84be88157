use cubic_contact::chevalley::chevalley;
use cubic_contact::error::Error;
use cubic_contact::extraction::{extract_cubic, verify_embedding};
use cubic_contact::jordan::{build, catalog_list, signature, ProbeConfig};
use cubic_contact::roots::{parse_type_label, RootSystem};
use cubic_contact::verify::{extraction_report, verify_cubic, RunConfig, Status, Suite};

fn algebra(label: &str) -> cubic_contact::chevalley::ChevalleyAlgebra {
    let (kind, rank) = parse_type_label(label).unwrap();
    chevalley(&RootSystem::new(kind, rank).unwrap())
}

#[test]
fn classical_types_embed() {
    for label in ["B3", "B5", "D4", "D6"] {
        let alg = algebra(label);
        let ex = extract_cubic(&alg).unwrap();
        let e = verify_embedding(&alg).unwrap();
        assert!(e.pass, "{label}: {:?}", e.first_mismatch);
        assert_eq!(e.p, ex.p());
    }
}

#[test]
fn symplectic_and_b2_are_degenerate() {
    for label in ["C3", "C4", "B2"] {
        let err = extract_cubic(&algebra(label)).unwrap_err();
        assert!(matches!(err, Error::DegeneratePairing(_)), "{label}: {err}");
    }
}

#[test]
fn type_a_rejected_everywhere() {
    for label in ["A1", "A2", "A5"] {
        let err = extraction_report(label, &RunConfig::default(), None).unwrap_err();
        assert!(matches!(err, Error::AlphaNotUnique { .. }), "{label}: {err}");
    }
}

#[test]
fn catalog_signatures_match_expectations() {
    let cfg = ProbeConfig::default();
    for e in catalog_list() {
        let s = signature(&build(&e.name).unwrap(), &cfg).unwrap();
        assert_eq!((s.p, s.b_rank, s.probe), (e.expected.p, e.expected.b_rank, e.expected.probe), "{}", e.name);
    }
}

#[test]
fn smaller_catalog_cubics_verify() {
    let cfg = RunConfig { samples: 10, ..RunConfig::default() };
    for name in ["xq:4", "xyz", "xq:2"] {
        let r = verify_cubic(&build(name).unwrap(), Suite::All, &cfg, false).unwrap();
        assert!(r.passed(), "{name}: {}", r.to_json());
        assert_eq!(r.check("boundary").unwrap().status, Status::Inapplicable, "{name}");
    }
}

#[test]
fn timings_only_when_requested() {
    let cfg = RunConfig { samples: 2, ..RunConfig::default() };
    let t = build("x3").unwrap();
    let r = verify_cubic(&t, Suite::Jacobi, &cfg, true).unwrap();
    assert!(r.timings_ms.as_ref().is_some_and(|m| m.contains_key("jacobi")));
    assert!(r.to_markdown().contains("## Timings"));
}

#[test]
fn different_seeds_change_samples_not_verdicts() {
    let t = build("fermat3").unwrap();
    let a = verify_cubic(&t, Suite::Contact, &RunConfig { samples: 5, seed: 1, ..RunConfig::default() }, false).unwrap();
    let b = verify_cubic(&t, Suite::Contact, &RunConfig { samples: 5, seed: 2, ..RunConfig::default() }, false).unwrap();
    assert!(a.passed() && b.passed());
    assert_ne!(a.to_json(), b.to_json());
}
