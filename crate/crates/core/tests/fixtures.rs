//! Fixture-driven checks: every shipped space file parses, validates, and
//! classifies exactly as its expected-verdict sidecar says.

use serde::Deserialize;
use std::path::PathBuf;
use tsaudit_core::{
    classify, common_prior_is_unique, minimal_components, money_pump_responder, witness_vertices,
    ProbVector, PumpLevel, Rational, TypeSpace,
};

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn load_space(name: &str) -> TypeSpace {
    let path = fixture_dir().join(format!("{name}.tsjson"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("read {path:?}: {e}"));
    let ts = TypeSpace::parse(&text).unwrap_or_else(|e| panic!("parse {name}: {e}"));
    assert!(ts.validate().is_empty(), "{name} must validate cleanly");
    ts
}

#[derive(Deserialize)]
struct Expected {
    level: String,
    witness_unique: Option<bool>,
    witness: Option<Vec<Rational>>,
    witness_vertices: Vec<Vec<Rational>>,
    minimal_components: Vec<Vec<String>>,
    pumps: ExpectedPumps,
}

#[derive(Deserialize)]
struct ExpectedPumps {
    weak: bool,
    universal: bool,
    strong: bool,
}

fn load_expected(name: &str) -> Expected {
    let path = fixture_dir().join(format!("{name}.expected.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("read {path:?}: {e}"));
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("parse sidecar {name}: {e}"))
}

fn assert_fixture(name: &str) {
    let ts = load_space(name);
    let expected = load_expected(name);

    let verdict = classify(&ts).unwrap();
    assert_eq!(verdict.level.to_string(), expected.level, "{name}: level");
    assert_eq!(
        verdict.witness_unique, expected.witness_unique,
        "{name}: uniqueness"
    );
    if let Some(w) = &expected.witness {
        let got = verdict.witness.as_ref().expect("witness present");
        assert_eq!(got.entries(), &w[..], "{name}: witness");
        assert!(common_prior_is_unique(&ts).unwrap());
    }

    let vertices = witness_vertices(&ts).unwrap();
    let got: Vec<Vec<Rational>> = vertices.iter().map(|v| v.entries().to_vec()).collect();
    assert_eq!(got, expected.witness_vertices, "{name}: witness vertices");

    let report = minimal_components(&ts, &ts.all_players()).unwrap();
    let labels: Vec<Vec<String>> = report.minimal.iter().map(|c| ts.labels_of(c)).collect();
    assert_eq!(labels, expected.minimal_components, "{name}: components");

    for (level, expected_exists) in [
        (PumpLevel::Weak, expected.pumps.weak),
        (PumpLevel::Universal, expected.pumps.universal),
        (PumpLevel::Strong, expected.pumps.strong),
    ] {
        let responder = money_pump_responder(&ts, level).unwrap();
        assert_eq!(
            responder.is_some(),
            expected_exists,
            "{name}: {level:?} pump existence"
        );
    }

    // Round-trip through the canonical form.
    let canonical = ts.serialize();
    assert_eq!(TypeSpace::parse(&canonical).unwrap(), ts);
}

#[test]
fn ex_pl2_matches_sidecar() {
    assert_fixture("ex_pl2");
}

#[test]
fn pl4_matches_sidecar() {
    assert_fixture("pl4");
}

#[test]
fn ex_pl1_matches_sidecar() {
    assert_fixture("ex_pl1");
}

#[test]
fn ex_plbet4_matches_sidecar() {
    assert_fixture("ex_plbet4");
}

#[test]
fn pl_matches_sidecar() {
    assert_fixture("pl");
}

/// Responders built from fixtures answer sampled distributions correctly.
#[test]
fn fixture_responders_answer_sampled_targets() {
    use tsaudit_core::sampler::{sample_prob_vector, Rng};

    let crossed = load_space("ex_pl2");
    let weak = money_pump_responder(&crossed, PumpLevel::Weak)
        .unwrap()
        .unwrap();
    let mut rng = Rng::new(41);
    for _ in 0..1000 {
        let p = sample_prob_vector(&mut rng, 4, 12);
        let response = weak.respond(&p).unwrap();
        assert!(response.aggregate_expectation(&p).is_negative());
    }

    let split = load_space("pl4");
    let universal = money_pump_responder(&split, PumpLevel::Universal)
        .unwrap()
        .unwrap();
    let mut answered = 0;
    for _ in 0..1000 {
        let p = sample_prob_vector(&mut rng, 4, 12);
        let has_mass = (&p.entries()[2] + &p.entries()[3]).is_positive();
        match universal.respond(&p) {
            Ok(response) => {
                assert!(has_mass);
                assert!(response.aggregate_expectation(&p).is_negative());
                answered += 1;
            }
            Err(tsaudit_core::Error::Precondition(_)) => assert!(!has_mass),
            Err(other) => panic!("unexpected error: {other}"),
        }
    }
    assert!(answered > 400);

    let anchors = load_space("ex_pl1");
    let strong = money_pump_responder(&anchors, PumpLevel::Strong)
        .unwrap()
        .unwrap();
    for _ in 0..1000 {
        let p = sample_prob_vector(&mut rng, 4, 12);
        let response = strong.respond(&p).unwrap();
        let aggregate = response.aggregate_expectation(&p);
        assert!(!aggregate.is_positive());
    }
    // The extreme witnesses themselves are answered with flat-zero semi-bets
    // that are nonzero against some belief row.
    for witness in ["1,0,0,0", "0,0,0,1", "1/2,0,0,1/2"] {
        let p = ProbVector::parse_list(witness).unwrap();
        let response = strong.respond(&p).unwrap();
        assert!(response.aggregate_expectation(&p).is_zero());
    }
}
