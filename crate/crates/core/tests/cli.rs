use std::path::PathBuf;
use std::process::Command;

use ecj::cli::{run_with, OutputRecord, EXIT_OK, EXIT_PROGRAM, EXIT_RESOURCE, EXIT_USAGE};
use serde_json::Value;

fn corpus(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/corpus");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn ecj(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["ecj"];
    full.extend_from_slice(args);
    let code = run_with(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn schema() -> jsonschema::JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/output.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&schema).unwrap()
}

#[test]
fn bond_negation_tags_enabler() {
    let (code, out, _) = ecj(&["why", &corpus("p1_bond.lp"), "-l", "not a"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("not a = ~~h + ~r2\n"), "{out}");
    let line = out.lines().find(|l| l.trim_start().starts_with("~~h")).unwrap();
    assert!(line.contains("enablers: h"), "{line}");
}

#[test]
fn empty_program_gives_empty_table() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("empty.lp");
    std::fs::write(&f, "").unwrap();
    let (code, out, err) = ecj(&["wfm", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out, "");
}

#[test]
fn stable_program_has_two_graphs_for_c() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("c.dot");
    let (code, out, _) = ecj(&[
        "cg-just",
        &corpus("p6_stable.lp"),
        "-a",
        "c",
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("{c} []"), "{out}");
    assert!(out.contains("{r1, r3} [r1 -> r3]"), "{out}");
    let text = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(text.matches("digraph G {").count(), 2);
    assert!(text.contains("\"r1\" -> \"r3\";"));
    let (_, dot_out, _) = ecj(&["cg-just", &corpus("p6_stable.lp"), "-a", "c", "--format", "dot"]);
    assert_eq!(dot_out, text);
}

#[test]
fn exit_codes() {
    assert_eq!(ecj(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(ecj(&["why", &corpus("p1_bond.lp")]).0, EXIT_USAGE);
    assert_eq!(ecj(&["why", &corpus("p1_bond.lp"), "-l", "not"]).0, EXIT_USAGE);
    assert_eq!(ecj(&["wfm", &corpus("p1_bond.lp"), "--format", "dot"]).0, EXIT_USAGE);
    assert_eq!(ecj(&["why", &corpus("p1_bond.lp"), "-l", "zz"]).0, EXIT_PROGRAM);
    assert_eq!(ecj(&["wfm", "/nonexistent/x.lp"]).0, EXIT_PROGRAM);
    let (code, _, err) = ecj(&["--max-addends", "3", "wfm", &corpus("p4_yale.lp")]);
    assert_eq!(code, EXIT_RESOURCE);
    assert!(err.contains("resource"), "{err}");
    let (code, out, _) = ecj(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("cg-just"));
}

#[test]
fn bad_program_is_reported_on_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.lp");
    std::fs::write(&f, "r1: p :- .\n").unwrap();
    let (code, out, err) = ecj(&["wfm", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_PROGRAM);
    assert!(out.is_empty());
    assert!(err.starts_with("error: syntax error at 1:"), "{err}");

    std::fs::write(&f, "r1: p :- q.\nr1: q.\n").unwrap();
    let (code, out, err) = ecj(&["check", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_PROGRAM);
    assert!(out.contains("label `r1` is used by rules 1, 2"), "{out}");
    assert_eq!(err, "error: 1 diagnostic(s)\n");
    assert_eq!(ecj(&["check", &corpus("p1_bond.lp")]).0, EXIT_OK);
}

#[test]
fn json_output_validates_against_schema() {
    let schema = schema();
    let calls: Vec<Vec<String>> = vec![
        vec!["why".into(), corpus("p1_bond.lp"), "-l".into(), "p".into()],
        vec!["why".into(), corpus("p2_cycle.lp"), "-l".into(), "undef a".into()],
        vec!["wfm".into(), corpus("p10_short_circuit.lp")],
        vec!["wnp".into(), corpus("p2_cycle.lp"), "-l".into(), "not a".into()],
        vec!["cg-models".into(), corpus("p6_stable.lp")],
        vec!["cg-just".into(), corpus("p6_stable.lp"), "-a".into(), "c".into()],
        vec!["check".into(), corpus("p1_bond.lp")],
    ];
    for call in calls {
        let mut args: Vec<&str> = call.iter().map(String::as_str).collect();
        args.extend(["--format", "json"]);
        let (code, out, err) = ecj(&args);
        assert_eq!(code, EXIT_OK, "{call:?}: {err}");
        let v: Value = serde_json::from_str(&out).unwrap();
        let msgs: Vec<String> = match schema.validate(&v) {
            Ok(()) => Vec::new(),
            Err(errors) => errors.map(|e| e.to_string()).collect(),
        };
        assert!(msgs.is_empty(), "{call:?} does not validate: {msgs:?}");
    }
    let (code, out, _) = ecj(&["check", &corpus("p11_throwers.lp"), "--format", "json"]);
    assert_eq!(code, EXIT_PROGRAM);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(schema.is_valid(&v));
    assert_eq!(v["diagnostics"].as_array().unwrap().len(), 3);
    assert!(!schema.is_valid(&serde_json::json!({"literal": "p", "addends": []})));
}

#[test]
fn json_record_round_trips_and_matches_text() {
    for (file, lit) in [
        ("p1_bond.lp", "p"),
        ("p1_bond.lp", "not a"),
        ("p10_short_circuit.lp", "p"),
        ("p11_throwers.lp", "shattered_2"),
        ("p6_stable.lp", "c"),
    ] {
        let (_, json, _) = ecj(&["why", &corpus(file), "-l", lit, "--format", "json"]);
        let record: OutputRecord = serde_json::from_str(&json).unwrap();
        let again = serde_json::to_string_pretty(&record).unwrap() + "\n";
        assert_eq!(again, json);

        let (_, text, _) = ecj(&["why", &corpus(file), "-l", lit]);
        let from_text: Vec<&str> = text
            .lines()
            .skip(1)
            .map(|l| l.trim_start().split("    [").next().unwrap())
            .collect();
        let from_json: Vec<&str> = record.addends.iter().map(|a| a.term_text.as_str()).collect();
        assert_eq!(from_text, from_json, "{file} {lit}");
    }
}

#[test]
fn binary_reports_exit_status() {
    let bin = env!("CARGO_BIN_EXE_ecj");
    let ok = Command::new(bin)
        .args(["why", &corpus("p2_cycle.lp"), "-l", "not a"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).lines().next(), Some("not a = ~r1"));
    let bad = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());
}
