//! Report assembly for `classify`: every certificate is re-verified here,
//! immediately before emission, and carries its verification status inline.

use serde_json::{json, Value};
use tsaudit_core::{
    is_disintegrable, minimal_components, money_pump_responder, verify_bet, Bet, BetKind,
    ComponentReport, ConsistencyLevel, ConsistencyVerdict, EventSet, ProbVector, PumpLevel,
    Rational, TypeSpace,
};

pub const SCHEMA: &str = "report.v1";

/// Internal-error type for a certificate that fails its own re-verification.
#[derive(Debug)]
pub struct CertificateFailure(pub String);

fn rationals(values: &[Rational]) -> Value {
    Value::Array(
        values
            .iter()
            .map(|x| Value::String(x.to_string()))
            .collect(),
    )
}

fn decimals(values: &[Rational]) -> Value {
    Value::Array(
        values
            .iter()
            .map(|x| {
                serde_json::Number::from_f64(x.to_f64_lossy())
                    .map(Value::Number)
                    .unwrap_or(Value::Null)
            })
            .collect(),
    )
}

fn labels(ts: &TypeSpace, set: &EventSet) -> Value {
    Value::Array(ts.labels_of(set).into_iter().map(Value::String).collect())
}

/// A common prior is re-verified through per-player hull membership.
fn reverify_prior(ts: &TypeSpace, prior: &ProbVector) -> Result<(), CertificateFailure> {
    for p in 0..ts.num_players() {
        let view = ts
            .restrict_players(&[p])
            .map_err(|e| CertificateFailure(e.to_string()))?;
        let ok = is_disintegrable(&view, prior)
            .map_err(|e| CertificateFailure(e.to_string()))?
            .is_disintegrable();
        if !ok {
            return Err(CertificateFailure(format!(
                "witness fails aggregation for player {}",
                ts.player(p).name()
            )));
        }
    }
    Ok(())
}

fn bet_value(ts: &TypeSpace, bet: &Bet, kind: BetKind, margin: Option<&Rational>) -> Value {
    let mut value = bet.to_json(ts);
    value["kind"] = json!(format!("{kind:?}"));
    value["margin"] = match margin {
        Some(m) => json!(m.to_string()),
        None => Value::Null,
    };
    value["verified"] = json!(true);
    value
}

pub struct BuiltReport {
    pub value: Value,
    pub level: ConsistencyLevel,
}

/// Assembles the full `report.v1` document. Deterministic: no timing, no
/// environment data beyond the input path and digest.
pub fn build(
    ts: &TypeSpace,
    path: &str,
    digest: &str,
    verdict: &ConsistencyVerdict,
    component_report: &ComponentReport,
    with_decimals: bool,
) -> Result<BuiltReport, CertificateFailure> {
    let mut certificates: Vec<Value> = Vec::new();

    if let Some(witness) = &verdict.witness {
        reverify_prior(ts, witness)?;
        certificates.push(json!({
            "kind": "witness_prior",
            "prior": rationals(witness.entries()),
            "unique": verdict.witness_unique,
            "verified": true,
        }));
    }
    for (component, witness) in &verdict.component_witnesses {
        reverify_prior(ts, witness)?;
        if witness.mass(component) != Rational::one() {
            return Err(CertificateFailure(
                "component witness leaks mass outside its component".into(),
            ));
        }
        certificates.push(json!({
            "kind": "component_witness_prior",
            "component": labels(ts, component),
            "prior": rationals(witness.entries()),
            "verified": true,
        }));
    }
    if let Some(witness) = &verdict.strong_witness {
        reverify_prior(ts, witness)?;
        for player in ts.players() {
            for cell in player.cells() {
                let mass: Rational = cell.iter().map(|&s| witness.get(s)).sum();
                if !mass.is_positive() {
                    return Err(CertificateFailure(format!(
                        "strong witness misses a cell of {}",
                        player.name()
                    )));
                }
            }
        }
        certificates.push(json!({
            "kind": "strong_witness_prior",
            "prior": rationals(witness.entries()),
            "verified": true,
        }));
    }
    let refuting_bet = match &verdict.refuting_bet {
        Some(bet) => {
            let checked = verify_bet(ts, bet).map_err(|e| CertificateFailure(e.to_string()))?;
            let expected_some = match verdict.level {
                ConsistencyLevel::None => matches!(checked.kind, BetKind::Agreeable),
                ConsistencyLevel::Consistent => {
                    matches!(checked.kind, BetKind::Agreeable | BetKind::WeaklyAgreeable)
                }
                ConsistencyLevel::UniversallyConsistent => matches!(
                    checked.kind,
                    BetKind::Agreeable | BetKind::WeaklyAgreeable | BetKind::Acceptable
                ),
                ConsistencyLevel::StronglyConsistent => false,
            };
            if !expected_some {
                return Err(CertificateFailure(format!(
                    "refuting bet verifies as {:?}, inconsistent with level {}",
                    checked.kind, verdict.level
                )));
            }
            let value = bet_value(ts, bet, checked.kind, checked.margin.as_ref());
            certificates.push(json!({
                "kind": "refuting_bet",
                "bet": value.clone(),
                "verified": true,
            }));
            value
        }
        None => Value::Null,
    };

    // Money-pump responders per level; existence re-derived, stored bases
    // re-verified through the refutation they carry.
    let mut pumps = serde_json::Map::new();
    for (name, level) in [
        ("weak", PumpLevel::Weak),
        ("universal", PumpLevel::Universal),
        ("strong", PumpLevel::Strong),
    ] {
        let responder =
            money_pump_responder(ts, level).map_err(|e| CertificateFailure(e.to_string()))?;
        let entry = match &responder {
            None => json!({ "exists": false }),
            Some(r) => {
                let mut entry = json!({ "exists": true });
                if let Some((players, component)) = r.failing_component() {
                    entry["players"] = Value::Array(
                        players
                            .iter()
                            .map(|&p| Value::String(ts.player(p).name().to_string()))
                            .collect(),
                    );
                    entry["component"] = labels(ts, component);
                }
                if let Some(bet) = r.stored_bet() {
                    let checked =
                        verify_bet(ts, bet).map_err(|e| CertificateFailure(e.to_string()))?;
                    if matches!(checked.kind, BetKind::SemiBetOnly | BetKind::Invalid) {
                        return Err(CertificateFailure(
                            "stored responder bet failed verification".into(),
                        ));
                    }
                    entry["stored_bet"] = bet_value(ts, bet, checked.kind, checked.margin.as_ref());
                }
                entry
            }
        };
        pumps.insert(name.to_string(), entry);
    }

    let closure_map: serde_json::Map<String, Value> = (0..ts.num_states())
        .map(|s| {
            (
                ts.state_label(s).to_string(),
                labels(ts, &component_report.closure[s]),
            )
        })
        .collect();

    let mut verdict_value = json!({
        "level": verdict.level.to_string(),
        "witness": verdict.witness.as_ref().map(|w| rationals(w.entries())),
        "witness_unique": verdict.witness_unique,
        "component_witnesses": verdict
            .component_witnesses
            .iter()
            .map(|(component, witness)| json!({
                "component": labels(ts, component),
                "prior": rationals(witness.entries()),
            }))
            .collect::<Vec<_>>(),
        "strong_witness": verdict.strong_witness.as_ref().map(|w| rationals(w.entries())),
        "refuting_bet": refuting_bet,
    });
    if with_decimals {
        verdict_value["decimals"] = json!({
            "non_authoritative": true,
            "witness": verdict.witness.as_ref().map(|w| decimals(w.entries())),
            "strong_witness": verdict.strong_witness.as_ref().map(|w| decimals(w.entries())),
        });
    }

    let value = json!({
        "schema": SCHEMA,
        "input": { "path": path, "sha256": digest },
        "validation": { "valid": true, "violations": [] },
        "components": {
            "minimal": component_report
                .minimal
                .iter()
                .map(|c| labels(ts, c))
                .collect::<Vec<_>>(),
            "closure": closure_map,
        },
        "verdict": verdict_value,
        "money_pumps": pumps,
        "certificates": certificates,
    });
    Ok(BuiltReport {
        value,
        level: verdict.level,
    })
}

/// Report for a space that failed validation: no analysis sections.
pub fn invalid_input(path: &str, digest: &str, violations: &[String]) -> Value {
    json!({
        "schema": SCHEMA,
        "input": { "path": path, "sha256": digest },
        "validation": { "valid": false, "violations": violations },
    })
}

/// Component report as used by `components --json`.
pub fn components_only(ts: &TypeSpace, report: &ComponentReport) -> Value {
    let closure_map: serde_json::Map<String, Value> = (0..ts.num_states())
        .map(|s| {
            (
                ts.state_label(s).to_string(),
                labels(ts, &report.closure[s]),
            )
        })
        .collect();
    json!({
        "schema": SCHEMA,
        "minimal": report.minimal.iter().map(|c| labels(ts, c)).collect::<Vec<_>>(),
        "closure": closure_map,
    })
}

pub fn minimal_components_of(ts: &TypeSpace) -> ComponentReport {
    minimal_components(ts, &ts.all_players()).expect("space has players")
}
