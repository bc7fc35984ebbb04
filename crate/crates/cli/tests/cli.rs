use std::process::Command;

use gfd::doc::{self, Object, RingDoc};
use gfd::run::{fixture_documents, FixtureKind};
use serde_json::Value;

const KINDS: [FixtureKind; 5] =
    [FixtureKind::Module, FixtureKind::Complex, FixtureKind::ExactComplex, FixtureKind::ChainMap, FixtureKind::ShortExact];

const D: &str = r#"{"version":1,"ring":{"kind":"Z"},"data":{"type":"complex","lo":0,
  "modules":[{"gens":1,"relations":[]},{"gens":1,"relations":[]}],"differentials":[[[2]]]}}"#;

fn gfd(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gfd")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v, stdout)
}

fn objects(ring: &RingDoc, kind: FixtureKind, seed: u64) -> Vec<Object> {
    fixture_documents(ring, seed, 3, kind)
        .unwrap()
        .iter()
        .flat_map(|d| doc::resolve(d).unwrap().parts)
        .collect()
}

#[test]
fn documents_round_trip() {
    for flag in ["Z", "Zmod4", "Zmod(12)", "TruncPoly(2,3)", "Z*TruncPoly(3,2)"] {
        let ring = RingDoc::parse_flag(flag).unwrap();
        let handle = ring.handle().unwrap();
        for kind in KINDS {
            for seed in 1..4 {
                for d in fixture_documents(&ring, seed, 3, kind).unwrap() {
                    let text = doc::to_json(&d);
                    let back = doc::parse_document(&text, "test").unwrap();
                    assert_eq!(back, d, "{flag} {kind:?}");
                    let parts = doc::resolve(&back).unwrap().parts;
                    assert_eq!(parts.len(), handle.factors().len());
                    assert_eq!(doc::emit(&ring, &parts), d, "{flag} {kind:?}");
                }
            }
        }
    }
}

#[test]
fn products_split_into_local_components() {
    let ring = RingDoc::parse_flag("Zmod(12)").unwrap();
    let h = ring.handle().unwrap();
    assert_eq!(h.factors().len(), 2);
    let parts = objects(&ring, FixtureKind::Complex, 5);
    assert!(parts.iter().all(|o| o.kind() == "complex"));
}

#[test]
fn ring_flags() {
    for (flag, n) in [("Z", 1), ("Integers", 1), ("Zmod4", 1), ("Z/9", 1), ("Zmod(36)", 2), ("Z*Zmod4*TruncPoly(2,2)", 3)] {
        let ring = RingDoc::parse_flag(flag).unwrap();
        assert_eq!(ring.handle().unwrap().factors().len(), n, "{flag}");
    }
    assert!(RingDoc::parse_flag("Q").is_err());
}

#[test]
fn unknown_fields_are_rejected() {
    let text = r#"{"version":1,"ring":{"kind":"Z"},"data":{"type":"module","gens":1,"relations":[],"extra":0}}"#;
    assert!(matches!(doc::parse_document(text, "t"), Err(gfd::error::CliError::Parse { .. })));
    let text = r#"{"version":1,"ring":{"kind":"Z","n":3},"data":{"type":"module","gens":1,"relations":[]}}"#;
    assert!(doc::parse_document(text, "t").is_err());
    let (code, v, _) = gfd(&["homology", "--in", text]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["name"], "ParseError");
}

#[test]
fn malformed_differential_is_a_validation_error() {
    let bad = r#"{"version":1,"ring":{"kind":"Zmod","n":4},"data":{"type":"complex","lo":-1,
      "modules":[{"gens":1,"relations":[]},{"gens":1,"relations":[]},{"gens":1,"relations":[]}],
      "differentials":[[[1]],[[1]]]}}"#;
    let (code, v, _) = gfd(&["dims", "--in", bad]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["name"], "NotAComplex");
    assert_eq!(v["error"]["message"], "NotAComplex at degree 1");
}

#[test]
fn dims_of_d_over_the_integers() {
    let (code, v, _) = gfd(&["dims", "--in", D]);
    assert_eq!(code, 0);
    let reports = v["components"][0]["reports"].as_array().unwrap();
    let value = |k: &str| reports.iter().find(|r| r["kind"] == k).unwrap()["value"].clone();
    assert_eq!(value("fd"), 1);
    assert_eq!(value("gfd"), 1);
    assert_eq!(value("gpd"), 1);
    let (code, _, table) = gfd(&["dims", "--in", D, "--format", "table"]);
    assert_eq!(code, 0);
    assert!(table.lines().any(|l| l.starts_with("components[0].reports[1].kind") && l.ends_with("gfd")));
}

#[test]
fn verify_am_passes_and_is_deterministic() {
    let args = ["verify", "--ring", "Zmod4", "--seed", "7", "--suite", "am"];
    let (code, v, first) = gfd(&args);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "pass");
    let (_, _, second) = gfd(&args);
    assert_eq!(first, second);
}

#[test]
fn missing_complete_resolution_is_a_computational_error() {
    let c = r#"{"version":1,"ring":{"kind":"Z"},"data":{"type":"complex","lo":6,
      "modules":[{"gens":1,"relations":[[2]]}],"differentials":[]}}"#;
    let m = r#"{"version":1,"ring":{"kind":"Z"},"data":{"type":"module","gens":1,"relations":[[2]]}}"#;
    let (code, v, _) = gfd(&["ext", "--in", c, "--in", m, "--theory", "tate", "--range", "0:2"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["name"], "NoCompleteResolution");
}

#[test]
fn bad_requests_exit_with_two() {
    assert_eq!(gfd(&["ext", "--in", D]).0, 2);
    assert_eq!(gfd(&["ext", "--in", D, "--in", D, "--range", "3:1"]).0, 2);
    assert_eq!(gfd(&["ext", "--in", D, "--in", D, "--range", "x"]).0, 2);
    assert_eq!(gfd(&["verify", "--ring", "Zmod4"]).0, 2);
    assert_eq!(gfd(&["verify", "--ring", "Zmod4", "--suite", "nope"]).0, 2);
    assert_eq!(gfd(&["homology", "--in", "/nonexistent/file.json"]).0, 2);
}

#[test]
fn ext_of_z2_over_z4_is_periodic() {
    let k = r#"{"version":1,"ring":{"kind":"Zmod","n":4},"data":{"type":"module","gens":1,"relations":[[2]]}}"#;
    let (code, v, _) = gfd(&["ext", "--in", k, "--in", k, "--theory", "tate", "--range", "-2:3"]);
    assert_eq!(code, 0);
    for g in v["components"][0]["groups"].as_array().unwrap() {
        assert_eq!(g, &serde_json::json!([2]));
    }
}

#[test]
fn les_and_compare_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(gfd(&["fixtures", "--ring", "Zmod4", "--kind", "short-exact", "--count", "1", "--out", out]).0, 0);
    assert_eq!(gfd(&["fixtures", "--ring", "Zmod4", "--kind", "module", "--count", "1", "--out", out]).0, 0);
    let ses = dir.path().join("short-exact-000.json");
    let m = dir.path().join("module-000.json");
    let (ses, m) = (ses.to_str().unwrap(), m.to_str().unwrap());
    let (code, v, _) = gfd(&["les", "--in", ses, "--in", m, "--range", "0:3"]);
    assert_eq!(code, 0, "{v}");
    assert!(!v["components"][0]["verdicts"].as_array().unwrap().is_empty());
    let (code, v, _) = gfd(&["les", "--in", m, "--in", m]);
    assert_eq!(code, 0, "{v}");
    let (code, v, _) = gfd(&["compare", "--in", m, "--in", m, "--range", "1:4"]);
    assert_eq!(code, 0, "{v}");
    assert!(v["components"][0]["verdicts"].as_array().unwrap().iter().all(|x| x["isomorphic"] == true));
}

#[test]
fn fixtures_are_byte_stable() {
    for kind in ["module", "complex", "exact-complex", "chain-map", "short-exact"] {
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        for dir in [&a, &b] {
            let (code, v, _) = gfd(&["fixtures", "--ring", "Z*Zmod4", "--seed", "3", "--kind", kind, "--out", dir.path().to_str().unwrap()]);
            assert_eq!(code, 0);
            assert_eq!(v["files"].as_array().unwrap().len(), 5);
        }
        for i in 0..5 {
            let name = format!("{kind}-{i:03}.json");
            let x = std::fs::read(a.path().join(&name)).unwrap();
            assert_eq!(x, std::fs::read(b.path().join(&name)).unwrap(), "{name}");
            let d = doc::parse_document(std::str::from_utf8(&x).unwrap(), &name).unwrap();
            doc::resolve(&d).unwrap();
        }
    }
}

#[test]
fn integer_fixtures_stay_within_bounds() {
    let ring = RingDoc::parse_flag("Z").unwrap();
    for o in objects(&ring, FixtureKind::Complex, 2) {
        let Object::Complex(c) = o else { unreachable!() };
        for n in c.degrees() {
            assert!(c.module(n).num_gens() <= 12);
        }
    }
}

#[test]
fn homology_report_over_a_product() {
    let text = doc::to_json(&fixture_documents(&RingDoc::parse_flag("Z*Zmod9").unwrap(), 4, 1, FixtureKind::Complex).unwrap()[0]);
    let (code, v, first) = gfd(&["homology", "--in", &text]);
    assert_eq!(code, 0);
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 2);
    assert_eq!(comps[0]["factor"], "Z");
    assert_eq!(gfd(&["homology", "--in", &text]).2, first);
}
