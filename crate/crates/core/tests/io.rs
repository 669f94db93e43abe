use std::path::PathBuf;

use tauglue::io::report::{self, CheckReport, GlueReport, SttReport, Tabular, TauReport, VerifyReport};
use tauglue::io::{parse_algebra_file, parse_module_literal, recollement_from_json, recollement_to_json, AlgebraFile};
use tauglue::recollement::{default_samples, glue_table, verify_recollement, Recollement, VerificationReport};
use tauglue::taumod::{enumerate_stt, DEFAULT_CAP};
use tauglue::Error;

fn load(name: &str) -> AlgebraFile {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    parse_algebra_file(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn recollement(name: &str) -> Recollement {
    let f = load(name);
    Recollement::new(&f.build(64).unwrap(), &f.idempotent_vertices().unwrap()).unwrap()
}

fn round_trip<T: Tabular + PartialEq + std::fmt::Debug>(r: &T) {
    let back: T = report::from_csv(&report::to_csv(r)).unwrap();
    assert_eq!(&back, r);
    let back: T = serde_json::from_str(&report::to_json(r)).unwrap();
    assert_eq!(&back, r);
}

#[test]
fn fixtures_build() {
    for (name, dim, vertices, idempotent) in [
        ("a3.alg", 6, 3, vec![0, 1]),
        ("preproj_a3.alg", 10, 3, vec![0, 2]),
        ("a2.alg", 3, 2, vec![0]),
        ("preproj_a2.alg", 4, 2, vec![0]),
        ("kronecker.alg", 4, 2, vec![0]),
    ] {
        let f = load(name);
        let a = f.build(64).unwrap();
        assert_eq!((a.dim(), a.vertex_count()), (dim, vertices), "{name}");
        assert_eq!(f.idempotent_vertices(), Some(idempotent));
    }
}

#[test]
fn check_reports_round_trip() {
    for name in ["a3.alg", "preproj_a3.alg", "kronecker.alg"] {
        let f = load(name);
        let r: CheckReport = report::check_report(&f, &f.build(64).unwrap()).unwrap();
        round_trip(&r);
    }
    let f = parse_algebra_file("algebra x\nvertices 1\n").unwrap();
    let r = report::check_report(&f, &f.build(64).unwrap()).unwrap();
    assert_eq!((r.dim, r.radical_dim, r.corner_dim), (1, 0, None));
    round_trip(&r);
}

#[test]
fn stt_and_glue_reports_round_trip() {
    for name in ["a3.alg", "preproj_a2.alg"] {
        let rec = recollement(name);
        let g = enumerate_stt(rec.middle(), DEFAULT_CAP).unwrap();
        let r: SttReport = report::stt_report(&g, DEFAULT_CAP).unwrap();
        assert_eq!(r.nodes.iter().map(|n| n.exchanges.len()).sum::<usize>(), r.edge_count);
        round_trip(&r);
        let table = glue_table(&rec, DEFAULT_CAP, false).unwrap();
        let r: GlueReport = report::glue_report(&rec, &table, DEFAULT_CAP).unwrap();
        round_trip(&r);
    }
}

#[test]
fn verify_and_tau_reports_round_trip() {
    let rec = recollement("preproj_a2.alg");
    let samples = default_samples(&rec, DEFAULT_CAP).unwrap();
    let r: VerifyReport = report::verify_report(&rec, &verify_recollement(&rec, &samples), DEFAULT_CAP);
    assert!(r.passed);
    round_trip(&r);
    let empty = report::verify_report(&rec, &VerificationReport::default(), DEFAULT_CAP);
    assert!(empty.checks.is_empty());
    round_trip(&empty);
    for lit in ["P1", "S2", "I1"] {
        let m = parse_module_literal(rec.middle(), lit).unwrap();
        let r: TauReport = report::tau_report(lit, &m).unwrap();
        round_trip(&r);
    }
}

#[test]
fn json_like_strings_survive_csv() {
    let mut r = report::tau_report("P1", &parse_module_literal(recollement("a2.alg").middle(), "P1").unwrap()).unwrap();
    for s in ["0", "null", "true", "[1]", "\"quoted\"", "", "a,b\nc"] {
        r.module = s.to_string();
        round_trip(&r);
    }
}

#[test]
fn recollement_dumps_round_trip() {
    for name in ["a3.alg", "preproj_a3.alg", "kronecker.alg"] {
        let rec = recollement(name);
        let text = recollement_to_json(&rec);
        let back = recollement_from_json(&text).unwrap();
        assert_eq!(recollement_to_json(&back), text);
    }
    let rec = recollement_from_json(&recollement_to_json(&recollement("a3.alg"))).unwrap();
    let samples = default_samples(&rec, DEFAULT_CAP).unwrap();
    assert!(verify_recollement(&rec, &samples).passed());
}

#[test]
fn corrupted_fixture_fails_verification() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/a3_corrupted.json");
    let rec = recollement_from_json(&std::fs::read_to_string(path).unwrap()).unwrap();
    let samples = default_samples(&rec, DEFAULT_CAP).unwrap();
    let r = verify_recollement(&rec, &samples);
    assert!(!r.passed());
    assert!(r.failures().all(|c| c.witness.is_some()));
}

#[test]
fn malformed_inputs() {
    assert!(matches!(recollement_from_json("{}"), Err(Error::Parse(_))));
    assert!(matches!(report::from_csv::<TauReport>(""), Err(Error::Parse(_))));
    assert!(matches!(report::from_csv::<TauReport>("algebra\nx\n"), Err(Error::Parse(_))));
}
