//! Single-player analysis: conglomerability, disintegrability, the
//! aggregation polytope, and Dutch-book construction.
//!
//! For one player with belief rows `t(ω,·)`, a candidate distribution `P` is
//!
//! - *conglomerable* when `min_ω t(ω,E) ≤ P(E) ≤ max_ω t(ω,E)` for every
//!   event `E`;
//! - *disintegrable* when `P(E ∩ F) = Σ_F t(·,E) dP` for every event `E` and
//!   knowledge event `F` — equivalently, when `P` is a convex combination of
//!   the belief rows.
//!
//! Disintegrability implies conglomerability; the converse fails. A
//! distribution outside the row hull is exactly one that admits a Dutch book:
//! a payoff vector with nonnegative expectation under every row and strictly
//! negative expectation under `P`. [`build_money_pump`] constructs it from
//! the separating functional of the hull-membership program, shifted so the
//! smallest row expectation is exactly zero.

use crate::lp::{solve, Constraint, LinearProgram, LpOutcome, Relation, VarBounds};
use crate::model::{EventSet, ProbVector, TypeSpace};
use crate::rational::{min_max, Rational};
use serde::Serialize;

/// Conglomerability checks enumerate every event by default; beyond this many
/// states the caller must supply an explicit event list.
pub const DEFAULT_EVENT_ENUMERATION_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SinglePlayerError {
    #[error("expected a single-player space, found {found} players")]
    NotSinglePlayer { found: usize },
    #[error("distribution has {found} entries, expected {expected}")]
    WrongPriorLength { found: usize, expected: usize },
    #[error(
        "default event enumeration refuses {states} states (limit {limit}); pass an explicit event list"
    )]
    TooManyStatesForDefaultEvents { states: usize, limit: usize },
    #[error("the distribution is disintegrable; no money pump exists")]
    PriorIsDisintegrable,
    #[error("internal error: {0}")]
    Internal(String),
}

fn the_player(ts: &TypeSpace) -> Result<&crate::model::Player, SinglePlayerError> {
    if ts.num_players() != 1 {
        return Err(SinglePlayerError::NotSinglePlayer {
            found: ts.num_players(),
        });
    }
    Ok(ts.player(0))
}

fn check_prior(ts: &TypeSpace, p: &ProbVector) -> Result<(), SinglePlayerError> {
    if p.len() != ts.num_states() {
        return Err(SinglePlayerError::WrongPriorLength {
            found: p.len(),
            expected: ts.num_states(),
        });
    }
    Ok(())
}

/// Outcome of a conglomerability sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConglomerabilityReport {
    pub conglomerable: bool,
    /// First event (in enumeration order) where `P` escapes the belief range.
    pub violating_event: Option<EventSet>,
}

/// Checks conglomerability over every subset of states (ascending bitmask
/// order). Refuses more than [`DEFAULT_EVENT_ENUMERATION_LIMIT`] states.
pub fn is_conglomerable(
    ts: &TypeSpace,
    p: &ProbVector,
) -> Result<ConglomerabilityReport, SinglePlayerError> {
    let n = ts.num_states();
    if n > DEFAULT_EVENT_ENUMERATION_LIMIT {
        return Err(SinglePlayerError::TooManyStatesForDefaultEvents {
            states: n,
            limit: DEFAULT_EVENT_ENUMERATION_LIMIT,
        });
    }
    is_conglomerable_over(ts, p, EventSet::power_set(n))
}

/// Checks conglomerability over a caller-supplied event list, reporting the
/// first violation in iteration order.
pub fn is_conglomerable_over<I: IntoIterator<Item = EventSet>>(
    ts: &TypeSpace,
    p: &ProbVector,
    events: I,
) -> Result<ConglomerabilityReport, SinglePlayerError> {
    let player = the_player(ts)?;
    check_prior(ts, p)?;
    let n = ts.num_states();
    for event in events {
        let values: Vec<Rational> = (0..n).map(|s| player.belief(s, &event)).collect();
        let (lo, hi) = min_max(values.iter()).expect("at least one state");
        let mass = p.mass(&event);
        if mass < lo || mass > hi {
            return Ok(ConglomerabilityReport {
                conglomerable: false,
                violating_event: Some(event),
            });
        }
    }
    Ok(ConglomerabilityReport {
        conglomerable: true,
        violating_event: None,
    })
}

/// Either convex weights over the belief rows, or a separating functional
/// proving the distribution lies outside their hull.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DisintegrabilityOutcome {
    /// `Σ_ω weights[ω] · t(ω,·) = P`, weights ≥ 0 summing to 1.
    Disintegrable { weights: Vec<Rational> },
    /// `∫ separator dt(ω,·) ≥ threshold` for every ω while
    /// `∫ separator dP < threshold`.
    NotDisintegrable {
        separator: Vec<Rational>,
        threshold: Rational,
    },
}

impl DisintegrabilityOutcome {
    pub fn is_disintegrable(&self) -> bool {
        matches!(self, DisintegrabilityOutcome::Disintegrable { .. })
    }
}

/// Decides hull membership by exact LP feasibility and certifies the answer
/// either way.
pub fn is_disintegrable(
    ts: &TypeSpace,
    p: &ProbVector,
) -> Result<DisintegrabilityOutcome, SinglePlayerError> {
    let player = the_player(ts)?;
    check_prior(ts, p)?;
    let n = ts.num_states();
    // Variables: one convex weight per state.
    let mut constraints = vec![Constraint::new(
        vec![Rational::one(); n],
        Relation::Eq,
        Rational::one(),
    )];
    for coord in 0..n {
        let coeffs: Vec<Rational> = (0..n).map(|s| player.row(s)[coord].clone()).collect();
        constraints.push(Constraint::new(coeffs, Relation::Eq, p.get(coord).clone()));
    }
    let lp = LinearProgram::new(
        vec![Rational::zero(); n],
        constraints,
        vec![VarBounds::nonnegative(); n],
    );
    match solve(&lp).map_err(|e| SinglePlayerError::Internal(e.to_string()))? {
        LpOutcome::Optimal { solution, .. } => {
            Ok(DisintegrabilityOutcome::Disintegrable { weights: solution })
        }
        LpOutcome::Infeasible { farkas } => {
            // Farkas rows: [Σλ = 1] then one row per coordinate, then the
            // λ ≥ 0 bound rows. The coordinate multipliers, negated, separate
            // the rows from P: column feasibility gives
            // μ₀ + Σ_j μ_j t(ω,j) ≤ 0, so ⟨-μ, t(ω,·)⟩ ≥ μ₀, while
            // μ₀ + ⟨μ, P⟩ > 0 gives ⟨-μ, P⟩ < μ₀.
            let threshold = farkas[0].clone();
            let separator: Vec<Rational> = (0..n).map(|j| -&farkas[1 + j]).collect();
            for s in 0..n {
                let e = player.expectation(s, &separator);
                if e < threshold {
                    return Err(SinglePlayerError::Internal(
                        "separating functional fails on a belief row".into(),
                    ));
                }
            }
            let target = crate::model::expectation(p.entries(), &separator);
            if target >= threshold {
                return Err(SinglePlayerError::Internal(
                    "separating functional fails on the target distribution".into(),
                ));
            }
            Ok(DisintegrabilityOutcome::NotDisintegrable {
                separator,
                threshold,
            })
        }
        LpOutcome::Unbounded { .. } => Err(SinglePlayerError::Internal(
            "hull-membership program cannot be unbounded".into(),
        )),
    }
}

/// A payoff vector the player expects to gain (weakly) at every state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonNegativeBet {
    pub payoff: Vec<Rational>,
    /// `∫ payoff dt(ω,·)` per state; all ≥ 0.
    pub state_expectations: Vec<Rational>,
    /// `∫ payoff dP` for the distribution the bet was built against; < 0.
    pub target_expectation: Rational,
}

impl NonNegativeBet {
    /// Re-derives the expectations and checks both sign conditions.
    pub fn verify(&self, ts: &TypeSpace, p: &ProbVector) -> bool {
        let Ok(player) = the_player(ts) else {
            return false;
        };
        if self.payoff.len() != ts.num_states() || p.len() != ts.num_states() {
            return false;
        }
        let expectations: Vec<Rational> = (0..ts.num_states())
            .map(|s| player.expectation(s, &self.payoff))
            .collect();
        expectations == self.state_expectations
            && expectations.iter().all(|e| !e.is_negative())
            && crate::model::expectation(p.entries(), &self.payoff) == self.target_expectation
            && self.target_expectation.is_negative()
    }
}

/// Builds a Dutch book against a non-disintegrable distribution: the
/// separating functional shifted so the smallest row expectation is exactly
/// zero. Errors when the distribution is disintegrable.
pub fn build_money_pump(
    ts: &TypeSpace,
    p: &ProbVector,
) -> Result<NonNegativeBet, SinglePlayerError> {
    let (separator, _) = match is_disintegrable(ts, p)? {
        DisintegrabilityOutcome::Disintegrable { .. } => {
            return Err(SinglePlayerError::PriorIsDisintegrable)
        }
        DisintegrabilityOutcome::NotDisintegrable {
            separator,
            threshold,
        } => (separator, threshold),
    };
    let player = the_player(ts)?;
    let n = ts.num_states();
    let row_values: Vec<Rational> = (0..n).map(|s| player.expectation(s, &separator)).collect();
    let (shift, _) = min_max(row_values.iter()).expect("at least one state");
    let payoff: Vec<Rational> = separator.iter().map(|f| f - &shift).collect();
    let state_expectations: Vec<Rational> = row_values.iter().map(|v| v - &shift).collect();
    let target_expectation = crate::model::expectation(p.entries(), &payoff);
    let bet = NonNegativeBet {
        payoff,
        state_expectations,
        target_expectation,
    };
    if !bet.verify(ts, p) {
        return Err(SinglePlayerError::Internal(
            "constructed money pump failed verification".into(),
        ));
    }
    Ok(bet)
}

/// Deduplicated belief rows, in first-occurrence order: a V-representation of
/// the polytope of adequate aggregations (the rows' convex hull).
pub fn adequate_aggregations(ts: &TypeSpace) -> Result<Vec<ProbVector>, SinglePlayerError> {
    let player = the_player(ts)?;
    let mut seen: Vec<Vec<Rational>> = Vec::new();
    for s in 0..ts.num_states() {
        let row = player.row(s).to_vec();
        if !seen.contains(&row) {
            seen.push(row);
        }
    }
    seen.into_iter()
        .map(|row| {
            ProbVector::new(row)
                .map_err(|e| SinglePlayerError::Internal(format!("invalid belief row: {e}")))
        })
        .collect()
}

/// Certificate attached to a [`SinglePlayerAudit`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditCertificate {
    /// Convex weights over states reproducing the target.
    Weights(Vec<Rational>),
    /// Dutch book against the target.
    Pump(NonNegativeBet),
}

/// Full audit of one candidate distribution against one player's beliefs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SinglePlayerAudit {
    pub target: ProbVector,
    pub conglomerable: bool,
    pub violating_event: Option<EventSet>,
    pub disintegrable: bool,
    pub certificate: AuditCertificate,
}

/// Runs the conglomerability sweep, the hull-membership test, and builds the
/// matching certificate.
pub fn audit_single_player(
    ts: &TypeSpace,
    p: &ProbVector,
) -> Result<SinglePlayerAudit, SinglePlayerError> {
    let conglomerability = is_conglomerable(ts, p)?;
    let outcome = is_disintegrable(ts, p)?;
    let (disintegrable, certificate) = match outcome {
        DisintegrabilityOutcome::Disintegrable { weights } => {
            (true, AuditCertificate::Weights(weights))
        }
        DisintegrabilityOutcome::NotDisintegrable { .. } => {
            (false, AuditCertificate::Pump(build_money_pump(ts, p)?))
        }
    };
    Ok(SinglePlayerAudit {
        target: p.clone(),
        conglomerable: conglomerability.conglomerable,
        violating_event: conglomerability.violating_event,
        disintegrable,
        certificate,
    })
}
