//! The command-line interface: document round trips, exit codes and the
//! documented example invocations.

use std::path::PathBuf;
use std::process::{Command, Output};

use absalg::cli::{corpus, parse_definition, serialize_definition};
use serde_json::Value;

fn absalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_absalg")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("absalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn every_corpus_document_round_trips() {
    for (name, text) in corpus::FILES {
        let doc = parse_definition(text).unwrap();
        let s = serialize_definition(&doc);
        let again = parse_definition(&s).unwrap();
        assert_eq!(doc, again, "{name}");
        assert_eq!(s, serialize_definition(&again), "{name}");
    }
}

#[test]
fn corpus_files_on_disk_match_bundled_copies() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    for (name, text) in corpus::FILES {
        let disk = std::fs::read_to_string(dir.join(format!("{name}.json"))).unwrap();
        assert_eq!(&disk, text, "{name}");
    }
}

#[test]
fn every_corpus_document_validates() {
    for (name, _) in corpus::FILES {
        let out = absalg(&["validate", name]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn grouplike_mate_square_has_one_word_per_weight() {
    let out = absalg(&["square-check", "mate", "grouplike", "--max-weight", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["passed"], true);
    for side in ["left_dims", "right_dims"] {
        let dims = r["result"][side].as_object().unwrap();
        assert_eq!(dims.len(), 5);
        for by_degree in dims.values() {
            let total: u64 = by_degree.as_object().unwrap().values().map(|v| v.as_u64().unwrap()).sum();
            assert_eq!(total, 1);
        }
    }
}

#[test]
fn envelopes_then_invariants() {
    let h = report(&absalg(&["envelope", "heisenberg", "--max-weight", "3"]));
    let a = report(&absalg(&["envelope", "abelian3", "--max-weight", "3"]));
    assert_eq!(h["result"]["layer_dims"][0], 2);
    assert_eq!(a["result"]["layer_dims"][0], 3);
    let out = absalg(&["invariants", "heisenberg", "abelian3", "--max-weight", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["distinguished"], true);
    assert_eq!(r["result"]["first_difference"], "layer 1 dimension 2 vs 3");
}

#[test]
fn law_violation_exits_one_with_witness() {
    let bad = r#"{
  "kind": "dg_algebra",
  "name": "bad",
  "basis": [{"label": "a", "degree": 0}, {"label": "b", "degree": 0}],
  "structure": [
    {"inputs": ["a", "a"], "output": [["b", "1"]]},
    {"inputs": ["b", "a"], "output": [["a", "1"]]}
  ]
}"#;
    let p = scratch("bad.json", bad);
    let out = absalg(&["validate", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["passed"], false);
    let checks = r["result"]["checks"].as_array().unwrap();
    let assoc = checks.iter().find(|c| c["law"] == "associativity").unwrap();
    assert_eq!(assoc["passed"], false);
    assert!(assoc["witness"]["inputs"].is_array());
}

#[test]
fn mathematical_refusals_exit_one() {
    for args in [["res", "idempotent"], ["cobar", "grouplike"]] {
        let out = absalg(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let r = report(&out);
        assert_eq!(r["passed"], false);
    }
    let r = report(&absalg(&["cobar", "grouplike"]));
    assert!(r["error"].as_str().unwrap().contains("conilpotent"), "{r}");
}

#[test]
fn usage_errors_exit_two() {
    let malformed = scratch("malformed.json", "{ \"kind\": \"dg_algebra\", ");
    let unknown_field = scratch("field.json", r#"{"kind": "dg_algebra", "name": "x", "basis": [], "structure": [], "extra": 1}"#);
    let cases: Vec<Vec<&str>> = vec![
        vec!["no-such-command", "kt"],
        vec!["validate", "no_such_file"],
        vec!["validate", malformed.to_str().unwrap()],
        vec!["validate", unknown_field.to_str().unwrap()],
        vec!["square-check", "sideways", "kt"],
        vec!["bar", "kt"],
        vec!["invariants", "heisenberg"],
        vec!["validate", "kt", "--out", "xml"],
    ];
    for args in cases {
        let out = absalg(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn table_output_flattens_the_report() {
    let out = absalg(&["bar", "dual_numbers", "--max-weight", "3", "--out", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "passed: true"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("result.betti.")), "{text}");
}

#[test]
fn output_does_not_depend_on_threads() {
    for args in [
        vec!["complete-cobar", "xy_coalgebra", "--max-weight", "4"],
        vec!["contra-check", "path"],
        vec!["convolution", "xy_coalgebra", "dual_numbers"],
    ] {
        let base = absalg(&args).stdout;
        for t in ["1", "3"] {
            let mut with = args.clone();
            with.extend(["--threads", t]);
            assert_eq!(absalg(&with).stdout, base, "{args:?} --threads {t}");
        }
    }
}

#[test]
fn twisting_check_reads_a_map() {
    let nu = scratch("nu.json", "{}");
    let out = absalg(&["twisting-check", "xy_coalgebra", "dual_numbers", "--nu", nu.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
