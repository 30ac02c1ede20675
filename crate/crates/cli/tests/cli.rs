//! End-to-end checks of the binary: exit codes, output stability, and the
//! published JSON schema.

use std::path::PathBuf;
use std::process::{Command, Output};

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_tsaudit")
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join(format!("../../fixtures/{name}"))
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(binary())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn validate_accepts_the_fixture_corpus() {
    for name in [
        "ex_pl2.tsjson",
        "pl4.tsjson",
        "ex_pl1.tsjson",
        "ex_plbet4.tsjson",
        "pl.tsjson",
    ] {
        let output = run(&["validate", &fixture(name)]);
        assert_eq!(output.status.code(), Some(0), "{name}: {output:?}");
    }
}

#[test]
fn validate_flags_a_corrupted_row_sum() {
    let dir = std::env::temp_dir().join("tsaudit-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken_row.tsjson");
    std::fs::write(
        &path,
        r#"{
            "states": ["a", "b"],
            "players": [{
                "name": "P",
                "partition": [["a", "b"]],
                "beliefs": {"a": ["1/2", "1/3"]}
            }]
        }"#,
    )
    .unwrap();
    let output = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout(&output).contains("row sum"), "{output:?}");
}

#[test]
fn missing_file_is_an_io_error() {
    let output = run(&["validate", "/nonexistent/nowhere.tsjson"]);
    assert_eq!(output.status.code(), Some(2));
    let output = run(&["classify", "/nonexistent/nowhere.tsjson"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn malformed_json_is_a_parse_error() {
    let dir = std::env::temp_dir().join("tsaudit-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("garbage.tsjson");
    std::fs::write(&path, "{ not json").unwrap();
    let output = run(&["classify", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn classify_json_is_byte_identical_between_runs() {
    let path = fixture("pl4.tsjson");
    let first = run(&["classify", &path, "--json"]);
    let second = run(&["classify", &path, "--json"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn classify_json_carries_the_published_schema() {
    let cases = [
        ("ex_pl2.tsjson", "None"),
        ("pl4.tsjson", "Consistent"),
        ("ex_pl1.tsjson", "UniversallyConsistent"),
        ("ex_plbet4.tsjson", "StronglyConsistent"),
    ];
    for (name, level) in cases {
        let output = run(&["classify", &fixture(name), "--json"]);
        assert_eq!(output.status.code(), Some(0), "{name}");
        let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
        assert_eq!(doc["schema"], "report.v1", "{name}");
        assert_eq!(doc["verdict"]["level"], level, "{name}");
        assert_eq!(doc["validation"]["valid"], true, "{name}");
        assert_eq!(doc["input"]["sha256"].as_str().unwrap().len(), 64);
        for certificate in doc["certificates"].as_array().unwrap() {
            assert_eq!(certificate["verified"], true, "{name}: {certificate}");
        }
    }
}

#[test]
fn classify_reports_expected_witnesses() {
    let output = run(&["classify", &fixture("pl4.tsjson"), "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(
        doc["verdict"]["witness"],
        serde_json::json!(["1/2", "1/2", "0", "0"])
    );
    assert_eq!(doc["verdict"]["witness_unique"], true);
    assert_eq!(doc["money_pumps"]["weak"]["exists"], false);
    assert_eq!(doc["money_pumps"]["universal"]["exists"], true);
    assert_eq!(
        doc["money_pumps"]["universal"]["component"],
        serde_json::json!(["w3", "w4"])
    );

    let output = run(&["classify", &fixture("ex_pl1.tsjson"), "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(doc["verdict"]["refuting_bet"]["kind"], "Acceptable");
    assert_eq!(doc["verdict"]["refuting_bet"]["verified"], true);

    let output = run(&["classify", &fixture("ex_plbet4.tsjson"), "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(
        doc["verdict"]["strong_witness"],
        serde_json::json!(["1/4", "1/4", "1/4", "1/4"])
    );
    assert_eq!(doc["verdict"]["refuting_bet"], serde_json::Value::Null);
}

#[test]
fn components_lists_minimal_sets_and_closures() {
    let output = run(&["components", &fixture("ex_pl1.tsjson")]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("minimal components: {w1} {w4}"), "{text}");
    assert!(text.contains("closure(w2) = {w1, w2, w3, w4}"), "{text}");
}

#[test]
fn bet_search_covers_both_outcomes() {
    let output = run(&["bet", &fixture("ex_pl2.tsjson"), "--kind", "agreeable"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("Agreeable"));

    let output = run(&["bet", &fixture("ex_plbet4.tsjson"), "--kind", "acceptable"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("no Acceptable bet"));

    let output = run(&["bet", &fixture("pl4.tsjson"), "--kind", "weak", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(doc["found"], true);
    assert_eq!(doc["kind"], "WeaklyAgreeable");
}

#[test]
fn pump_answers_and_refuses_correctly() {
    // Weak pump against the inconsistent fixture answers the uniform prior.
    let output = run(&[
        "pump",
        &fixture("ex_pl2.tsjson"),
        "--level",
        "weak",
        "--prior",
        "1/4,1/4,1/4,1/4",
        "--json",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let aggregate: String = doc["aggregate_expectation"].as_str().unwrap().into();
    assert!(aggregate.starts_with('-'), "{aggregate}");

    // No weak pump exists on a consistent space.
    let output = run(&["pump", &fixture("pl4.tsjson"), "--level", "weak"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("no Weak money pump"));

    // Universal pump refuses a prior with no mass on the failing component.
    let output = run(&[
        "pump",
        &fixture("pl4.tsjson"),
        "--level",
        "universal",
        "--prior",
        "1/2,1/2,0,0",
    ]);
    assert_eq!(output.status.code(), Some(1));

    // ... and answers one that charges it.
    let output = run(&[
        "pump",
        &fixture("pl4.tsjson"),
        "--level",
        "universal",
        "--prior",
        "0,0,1/2,1/2",
        "--json",
    ]);
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn single_audit_matches_the_known_example() {
    let output = run(&[
        "single",
        &fixture("pl.tsjson"),
        "--prior",
        "1/10,0,9/10",
        "--json",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(doc["conglomerable"], true);
    assert_eq!(doc["disintegrable"], false);
    let target: String = doc["pump"]["target_expectation"].as_str().unwrap().into();
    assert!(target.starts_with('-'));

    // Bad prior text is an input error.
    let output = run(&["single", &fixture("pl.tsjson"), "--prior", "1/0,0,1"]);
    assert_eq!(output.status.code(), Some(2));

    // Wrong prior length is an input error too.
    let output = run(&["single", &fixture("pl.tsjson"), "--prior", "1/2,1/2"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn classify_many_files_in_parallel_keeps_input_order() {
    let output = run(&[
        "classify",
        &fixture("ex_pl2.tsjson"),
        &fixture("pl4.tsjson"),
        &fixture("ex_pl1.tsjson"),
        "--jobs",
        "3",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    let pos_crossed = text.find("ex_pl2").unwrap();
    let pos_split = text.find("pl4").unwrap();
    let pos_anchors = text.find("ex_pl1").unwrap();
    assert!(pos_crossed < pos_split && pos_split < pos_anchors, "{text}");
}

#[test]
fn state_limit_env_is_honored() {
    let dir = std::env::temp_dir().join("tsaudit-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("wide.tsjson");
    let states: Vec<String> = (0..30).map(|i| format!("\"s{i}\"")).collect();
    let cell = states.join(", ");
    let mut row: Vec<&str> = vec!["\"0\""; 30];
    row[0] = "\"1\"";
    std::fs::write(
        &path,
        format!(
            r#"{{"states": [{cell}],
                "players": [{{"name": "P", "partition": [[{cell}]],
                              "beliefs": {{"s0": [{row}]}}}}]}}"#,
            row = row.join(", ")
        ),
    )
    .unwrap();
    let refused = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(refused.status.code(), Some(2));
    let allowed = Command::new(binary())
        .args(["validate", path.to_str().unwrap()])
        .env("TSAUDIT_MAX_STATES", "40")
        .output()
        .unwrap();
    assert_eq!(allowed.status.code(), Some(0), "{allowed:?}");
}
