//! Bets, semi-bets, and money-pump responders.
//!
//! A *bet* is a zero-sum family of payoff vectors, one per participating
//! player. Writing `E_i(ω)` for player `i`'s expectation of her own payoff at
//! state `ω`, the three graded notions are:
//!
//! - **agreeable** — `E_i(ω) > 0` everywhere: everyone always expects to win;
//! - **weakly agreeable** — the nonnegative locus is commonly certain at
//!   every state, and on some common certainty component every expectation is
//!   strictly positive;
//! - **acceptable** — the nonnegative locus is commonly certain at every
//!   state and at least one `E_i(ω)` is strictly positive.
//!
//! A *semi-bet* drops the zero-sum requirement and keeps only the
//! commonly-certain nonnegative locus: no participant ever expects to lose.
//! Semi-bets are the ammunition of money pumps: a responder maps any
//! candidate distribution `P` to a semi-bet whose summed payoff has negative
//! (weak/universal level) or nonpositive-and-somewhere-nonzero (strong level)
//! expectation under `P`, exhibiting the arbitrage.
//!
//! Searches are exact LPs with payoffs boxed to [-1, 1]; bets are
//! scale-invariant, so the box costs no generality and keeps certificates
//! small. Each finder's outcome is cross-checked against the matching
//! consistency route: the pairs (agreeable bet ↔ common prior), (weakly
//! agreeable bet ↔ component witnesses), (acceptable bet ↔ full-support
//! prior) are mutually exclusive and exhaustive, and any disagreement
//! surfaces as an internal error.

use crate::components;
use crate::consistency;
use crate::lp::{solve, Constraint, LinearProgram, LpOutcome, Relation, VarBounds};
use crate::model::{expectation, EventSet, ProbVector, TypeSpace};
use crate::rational::{min_max, Rational};
use crate::single_player;
use crate::Error;
use serde::Serialize;

/// Zero-sum payoff family over a player subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bet {
    /// Participating players, ascending indices into the space.
    pub players: Vec<usize>,
    /// One payoff vector per participant, parallel to `players`.
    pub payoffs: Vec<Vec<Rational>>,
}

/// Payoff family without the zero-sum requirement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiBet {
    pub players: Vec<usize>,
    pub payoffs: Vec<Vec<Rational>>,
}

impl SemiBet {
    /// Pointwise sum of all payoffs.
    pub fn aggregate_payoff(&self) -> Vec<Rational> {
        let n = self.payoffs.first().map_or(0, Vec::len);
        (0..n)
            .map(|j| self.payoffs.iter().map(|f| &f[j]).sum())
            .collect()
    }

    /// Expectation of the aggregate payoff under a distribution.
    pub fn aggregate_expectation(&self, p: &ProbVector) -> Rational {
        expectation(p.entries(), &self.aggregate_payoff())
    }
}

/// Classification of a payoff family, strongest applicable kind first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BetKind {
    Agreeable,
    WeaklyAgreeable,
    Acceptable,
    /// Valid semi-bet only: nobody expects to lose, but the family is not a
    /// zero-sum bet with a strict gain.
    SemiBetOnly,
    Invalid,
}

/// Verdict for one payoff family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetVerdict {
    pub kind: BetKind,
    /// Agreeable: least expectation overall. Weakly agreeable: least
    /// expectation over the certifying component.
    pub margin: Option<Rational>,
    /// All (player, state) pairs with strictly positive expectation.
    pub strict_locus: Vec<(usize, usize)>,
}

/// Structural errors for payoff families.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BetsError {
    #[error("bet names no players")]
    EmptyPlayers,
    #[error("player index {0} out of range")]
    PlayerOutOfRange(usize),
    #[error("players must be distinct and ascending")]
    PlayersNotSorted,
    #[error("expected {expected} payoff vectors, found {found}")]
    PayoffCount { found: usize, expected: usize },
    #[error("payoff vector has length {found}, expected {expected}")]
    PayoffDimension { found: usize, expected: usize },
}

fn check_family(
    ts: &TypeSpace,
    players: &[usize],
    payoffs: &[Vec<Rational>],
) -> Result<(), BetsError> {
    if players.is_empty() {
        return Err(BetsError::EmptyPlayers);
    }
    if !players.windows(2).all(|w| w[0] < w[1]) {
        return Err(BetsError::PlayersNotSorted);
    }
    for &p in players {
        if p >= ts.num_players() {
            return Err(BetsError::PlayerOutOfRange(p));
        }
    }
    if payoffs.len() != players.len() {
        return Err(BetsError::PayoffCount {
            found: payoffs.len(),
            expected: players.len(),
        });
    }
    for f in payoffs {
        if f.len() != ts.num_states() {
            return Err(BetsError::PayoffDimension {
                found: f.len(),
                expected: ts.num_states(),
            });
        }
    }
    Ok(())
}

/// Per-participant, per-state own-payoff expectations.
fn expectations(
    ts: &TypeSpace,
    players: &[usize],
    payoffs: &[Vec<Rational>],
) -> Vec<Vec<Rational>> {
    players
        .iter()
        .zip(payoffs)
        .map(|(&p, f)| {
            (0..ts.num_states())
                .map(|s| ts.player(p).expectation(s, f))
                .collect()
        })
        .collect()
}

/// States where every participant's expectation is nonnegative.
fn nonnegative_locus(ts: &TypeSpace, exps: &[Vec<Rational>]) -> EventSet {
    EventSet::from_indices(
        (0..ts.num_states()).filter(|&s| exps.iter().all(|per_state| !per_state[s].is_negative())),
    )
}

/// Whether `event` is commonly certain (for `players`) at every state: each
/// state's closure must fit inside the event.
fn commonly_certain_everywhere(
    ts: &TypeSpace,
    players: &[usize],
    event: &EventSet,
) -> Result<bool, Error> {
    let graph =
        components::build_graph(ts, players).map_err(|e| Error::InvalidInput(e.to_string()))?;
    Ok((0..ts.num_states()).all(|s| graph.reachable_from(s).is_subset_of(event)))
}

/// Classifies a payoff family exactly. The kinds are tried strongest-first;
/// by the containment chain (agreeable ⊂ weakly agreeable ⊂ acceptable) the
/// reported kind is the best the family attains.
pub fn verify_bet(ts: &TypeSpace, bet: &Bet) -> Result<BetVerdict, BetsError> {
    check_family(ts, &bet.players, &bet.payoffs)?;
    let n = ts.num_states();
    let exps = expectations(ts, &bet.players, &bet.payoffs);
    let strict_locus: Vec<(usize, usize)> = bet
        .players
        .iter()
        .zip(&exps)
        .flat_map(|(&p, per_state)| {
            per_state
                .iter()
                .enumerate()
                .filter(|(_, e)| e.is_positive())
                .map(move |(s, _)| (p, s))
        })
        .collect();
    let zero_sum = (0..n).all(|j| {
        bet.payoffs
            .iter()
            .map(|f| &f[j])
            .sum::<Rational>()
            .is_zero()
    });
    let locus = nonnegative_locus(ts, &exps);
    let locus_certain_everywhere = commonly_certain_everywhere(ts, &bet.players, &locus)
        .map_err(|_| BetsError::EmptyPlayers)?;

    if !zero_sum {
        let kind = if locus_certain_everywhere {
            BetKind::SemiBetOnly
        } else {
            BetKind::Invalid
        };
        return Ok(BetVerdict {
            kind,
            margin: None,
            strict_locus,
        });
    }

    let (global_min, _) =
        min_max(exps.iter().flat_map(|per_state| per_state.iter())).expect("nonempty family");
    if global_min.is_positive() {
        return Ok(BetVerdict {
            kind: BetKind::Agreeable,
            margin: Some(global_min),
            strict_locus,
        });
    }
    if locus_certain_everywhere {
        // Weakly agreeable: some component keeps every participant strictly
        // positive. Minimal components suffice, since any certifying
        // component contains a minimal one with the same property.
        let report = components::minimal_components(ts, &bet.players)
            .map_err(|_| BetsError::EmptyPlayers)?;
        for component in &report.minimal {
            let over_component = exps
                .iter()
                .flat_map(|per_state| component.iter().map(move |s| &per_state[s]));
            if let Some((lo, _)) = min_max(over_component) {
                if lo.is_positive() {
                    return Ok(BetVerdict {
                        kind: BetKind::WeaklyAgreeable,
                        margin: Some(lo),
                        strict_locus,
                    });
                }
            }
        }
        if !strict_locus.is_empty() {
            return Ok(BetVerdict {
                kind: BetKind::Acceptable,
                margin: None,
                strict_locus,
            });
        }
        return Ok(BetVerdict {
            kind: BetKind::SemiBetOnly,
            margin: None,
            strict_locus,
        });
    }
    Ok(BetVerdict {
        kind: BetKind::Invalid,
        margin: None,
        strict_locus,
    })
}

/// Whether the family is a semi-bet: at every state, the closure of the
/// state sits inside the nonnegative-expectation locus.
pub fn verify_semi_bet(ts: &TypeSpace, semi_bet: &SemiBet) -> Result<bool, BetsError> {
    check_family(ts, &semi_bet.players, &semi_bet.payoffs)?;
    let exps = expectations(ts, &semi_bet.players, &semi_bet.payoffs);
    let locus = nonnegative_locus(ts, &exps);
    commonly_certain_everywhere(ts, &semi_bet.players, &locus).map_err(|_| BetsError::EmptyPlayers)
}

// ---------------------------------------------------------------------------
// Searches
// ---------------------------------------------------------------------------

/// Maximizes the least expectation over zero-sum boxed families of all
/// players; a strictly positive optimum yields an agreeable bet.
pub(crate) fn agreeable_search(ts: &TypeSpace) -> Result<Option<Bet>, Error> {
    let n = ts.num_states();
    let k = ts.num_players();
    let floor_var = k * n;
    let var = |player: usize, state: usize| player * n + state;
    let mut constraints = Vec::new();
    for state in 0..n {
        let mut coeffs = vec![Rational::zero(); floor_var + 1];
        for player in 0..k {
            coeffs[var(player, state)] = Rational::one();
        }
        constraints.push(Constraint::new(coeffs, Relation::Eq, Rational::zero()));
    }
    for player in 0..k {
        for state in 0..n {
            let mut coeffs = vec![Rational::zero(); floor_var + 1];
            for (j, weight) in ts.player(player).row(state).iter().enumerate() {
                coeffs[var(player, j)] = weight.clone();
            }
            coeffs[floor_var] = -Rational::one();
            constraints.push(Constraint::new(coeffs, Relation::Ge, Rational::zero()));
        }
    }
    let mut objective = vec![Rational::zero(); floor_var + 1];
    objective[floor_var] = Rational::one();
    let mut bounds = vec![VarBounds::boxed(-Rational::one(), Rational::one()); floor_var];
    bounds.push(VarBounds::free());
    let lp = LinearProgram::new(objective, constraints, bounds);
    match solve(&lp).map_err(|e| Error::Internal(e.to_string()))? {
        LpOutcome::Optimal { value, solution } => {
            if value.is_positive() {
                let payoffs = (0..k)
                    .map(|p| solution[var(p, 0)..=var(p, n - 1)].to_vec())
                    .collect();
                Ok(Some(Bet {
                    players: (0..k).collect(),
                    payoffs,
                }))
            } else if value.is_zero() {
                Ok(None)
            } else {
                Err(Error::Internal(
                    "zero family is feasible, optimum cannot be negative".into(),
                ))
            }
        }
        other => Err(Error::Internal(format!(
            "agreeable-bet search ended as {other:?}"
        ))),
    }
}

/// Maximizes the total of all expectations over zero-sum boxed nonnegative
/// families; a strictly positive optimum yields an acceptable bet.
pub(crate) fn acceptable_search(ts: &TypeSpace) -> Result<Option<Bet>, Error> {
    let n = ts.num_states();
    let k = ts.num_players();
    let var = |player: usize, state: usize| player * n + state;
    let mut constraints = Vec::new();
    for state in 0..n {
        let mut coeffs = vec![Rational::zero(); k * n];
        for player in 0..k {
            coeffs[var(player, state)] = Rational::one();
        }
        constraints.push(Constraint::new(coeffs, Relation::Eq, Rational::zero()));
    }
    let mut objective = vec![Rational::zero(); k * n];
    for player in 0..k {
        for state in 0..n {
            let mut coeffs = vec![Rational::zero(); k * n];
            for (j, weight) in ts.player(player).row(state).iter().enumerate() {
                coeffs[var(player, j)] = weight.clone();
                objective[var(player, j)] += weight;
            }
            constraints.push(Constraint::new(coeffs, Relation::Ge, Rational::zero()));
        }
    }
    let bounds = vec![VarBounds::boxed(-Rational::one(), Rational::one()); k * n];
    let lp = LinearProgram::new(objective, constraints, bounds);
    match solve(&lp).map_err(|e| Error::Internal(e.to_string()))? {
        LpOutcome::Optimal { value, solution } => {
            if value.is_positive() {
                let payoffs = (0..k)
                    .map(|p| solution[var(p, 0)..=var(p, n - 1)].to_vec())
                    .collect();
                Ok(Some(Bet {
                    players: (0..k).collect(),
                    payoffs,
                }))
            } else if value.is_zero() {
                Ok(None)
            } else {
                Err(Error::Internal(
                    "zero family is feasible, optimum cannot be negative".into(),
                ))
            }
        }
        other => Err(Error::Internal(format!(
            "acceptable-bet search ended as {other:?}"
        ))),
    }
}

/// Agreeable bet of the failing induced space, zero-extended to the full
/// space. Expectations stay nonnegative everywhere: a cell either misses the
/// component (its row puts no mass there, expectation 0) or meets it (its
/// row coincides with a member state's row, expectation strictly positive).
pub(crate) fn weakly_agreeable_from_failure(
    ts: &TypeSpace,
    players: &[usize],
    component: &EventSet,
) -> Result<Bet, Error> {
    let induced = ts
        .restrict_players(players)
        .and_then(|sub| sub.induced_subspace(component))
        .map_err(|e| Error::Internal(e.to_string()))?;
    let inner = agreeable_search(&induced)?.ok_or_else(|| {
        Error::Internal("failing component has no agreeable bet on its induced space".into())
    })?;
    let kept: Vec<usize> = component.iter().collect();
    let payoffs = inner
        .payoffs
        .iter()
        .map(|f| {
            let mut extended = vec![Rational::zero(); ts.num_states()];
            for (j, &state) in kept.iter().enumerate() {
                extended[state] = f[j].clone();
            }
            extended
        })
        .collect();
    Ok(Bet {
        players: players.to_vec(),
        payoffs,
    })
}

// ---------------------------------------------------------------------------
// Public finders (dichotomies enforced in the consistency module)
// ---------------------------------------------------------------------------

/// An agreeable bet, or `None` exactly when a common prior exists.
pub fn find_agreeable_bet(ts: &TypeSpace) -> Result<Option<Bet>, Error> {
    Ok(consistency::check_consistent(ts)?.refutation)
}

/// A weakly agreeable bet, or `None` exactly when the space is universally
/// consistent.
pub fn find_weakly_agreeable_bet(ts: &TypeSpace) -> Result<Option<Bet>, Error> {
    Ok(consistency::check_universally_consistent(ts)?.refutation)
}

/// An acceptable bet, or `None` exactly when the space is strongly
/// consistent.
pub fn find_acceptable_bet(ts: &TypeSpace) -> Result<Option<Bet>, Error> {
    Ok(consistency::check_strongly_consistent(ts)?.refutation)
}

// ---------------------------------------------------------------------------
// Money-pump responders
// ---------------------------------------------------------------------------

/// Arbitrage level a responder certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PumpLevel {
    Weak,
    Universal,
    Strong,
}

#[derive(Debug, Clone)]
enum ResponderBasis {
    Weak,
    Universal {
        players: Vec<usize>,
        component: EventSet,
        induced: TypeSpace,
    },
    Strong {
        bet: Bet,
        /// Position (within `bet.players`) of a participant with a strictly
        /// positive expectation somewhere.
        strict_position: usize,
    },
}

/// Maps any candidate distribution to a semi-bet that exhibits arbitrage
/// against it. Immutable; safe to call from multiple threads.
#[derive(Debug, Clone)]
pub struct MoneyPumpResponder {
    level: PumpLevel,
    space: TypeSpace,
    basis: ResponderBasis,
}

/// Builds the responder for a level, or `None` exactly when the matching
/// consistency level holds.
pub fn money_pump_responder(
    ts: &TypeSpace,
    level: PumpLevel,
) -> Result<Option<MoneyPumpResponder>, Error> {
    let basis = match level {
        PumpLevel::Weak => {
            if consistency::check_consistent(ts)?.holds {
                return Ok(None);
            }
            ResponderBasis::Weak
        }
        PumpLevel::Universal => {
            let check = consistency::check_universally_consistent(ts)?;
            let Some((players, component)) = check.failing else {
                return Ok(None);
            };
            let induced = ts
                .restrict_players(&players)
                .and_then(|sub| sub.induced_subspace(&component))
                .map_err(|e| Error::Internal(e.to_string()))?;
            ResponderBasis::Universal {
                players,
                component,
                induced,
            }
        }
        PumpLevel::Strong => {
            let check = consistency::check_strongly_consistent(ts)?;
            let Some(bet) = check.refutation else {
                return Ok(None);
            };
            let verdict = verify_bet(ts, &bet).map_err(|e| Error::Internal(e.to_string()))?;
            let &(strict_player, _) = verdict.strict_locus.first().ok_or_else(|| {
                Error::Internal("acceptable bet carries no strict expectation".into())
            })?;
            let strict_position = bet
                .players
                .iter()
                .position(|&p| p == strict_player)
                .ok_or_else(|| Error::Internal("strict player missing from bet".into()))?;
            ResponderBasis::Strong {
                bet,
                strict_position,
            }
        }
    };
    Ok(Some(MoneyPumpResponder {
        level,
        space: ts.clone(),
        basis,
    }))
}

/// Single-participant semi-bet against a distribution outside some player's
/// aggregation hull: the player's Dutch book, which every other participant
/// ignores.
fn hull_escape_response(space: &TypeSpace, p: &ProbVector) -> Result<Option<SemiBet>, Error> {
    for player in 0..space.num_players() {
        let view = space
            .restrict_players(&[player])
            .map_err(|e| Error::Internal(e.to_string()))?;
        let outcome = single_player::is_disintegrable(&view, p)
            .map_err(|e| Error::InvalidInput(e.to_string()))?;
        if !outcome.is_disintegrable() {
            let pump = single_player::build_money_pump(&view, p)
                .map_err(|e| Error::Internal(e.to_string()))?;
            return Ok(Some(SemiBet {
                players: vec![player],
                payoffs: vec![pump.payoff],
            }));
        }
    }
    Ok(None)
}

impl MoneyPumpResponder {
    pub fn level(&self) -> PumpLevel {
        self.level
    }

    /// For the universal level: the failing (players, component) pair.
    pub fn failing_component(&self) -> Option<(&[usize], &EventSet)> {
        match &self.basis {
            ResponderBasis::Universal {
                players, component, ..
            } => Some((players, component)),
            _ => None,
        }
    }

    /// For the strong level: the stored acceptable bet.
    pub fn stored_bet(&self) -> Option<&Bet> {
        match &self.basis {
            ResponderBasis::Strong { bet, .. } => Some(bet),
            _ => None,
        }
    }

    /// Produces a verified semi-bet against `p`. Weak and universal responses
    /// have strictly negative aggregate expectation under `p`; strong
    /// responses are nonpositive under `p` and nonzero against some
    /// distribution among `p` and the participants' belief rows.
    pub fn respond(&self, p: &ProbVector) -> Result<SemiBet, Error> {
        if p.len() != self.space.num_states() {
            return Err(Error::Precondition(format!(
                "distribution has {} entries, expected {}",
                p.len(),
                self.space.num_states()
            )));
        }
        let response = match &self.basis {
            ResponderBasis::Weak => hull_escape_response(&self.space, p)?.ok_or_else(|| {
                Error::Internal("weak responder found the target inside every hull".into())
            })?,
            ResponderBasis::Universal {
                players,
                component,
                induced,
            } => {
                let mass = p.mass(component);
                if !mass.is_positive() {
                    return Err(Error::Precondition(
                        "distribution puts no mass on the failing component".into(),
                    ));
                }
                let kept: Vec<usize> = component.iter().collect();
                let restricted = ProbVector::new(
                    kept.iter()
                        .map(|&s| p.get(s).checked_div(&mass).expect("mass is positive"))
                        .collect(),
                )
                .map_err(|e| Error::Internal(e.to_string()))?;
                let inner = hull_escape_response(induced, &restricted)?.ok_or_else(|| {
                    Error::Internal("failing component accepted the restricted target".into())
                })?;
                let payoffs = inner
                    .payoffs
                    .iter()
                    .map(|f| {
                        let mut extended = vec![Rational::zero(); self.space.num_states()];
                        for (j, &state) in kept.iter().enumerate() {
                            extended[state] = f[j].clone();
                        }
                        extended
                    })
                    .collect();
                SemiBet {
                    players: inner.players.iter().map(|&j| players[j]).collect(),
                    payoffs,
                }
            }
            ResponderBasis::Strong {
                bet,
                strict_position,
            } => match hull_escape_response(&self.space, p)? {
                Some(response) => response,
                None => self.strong_prior_response(bet, *strict_position, p)?,
            },
        };
        self.verify_response(&response, p)?;
        Ok(response)
    }

    /// `p` aggregates every player's beliefs, so every participant's
    /// expectation of the stored acceptable bet integrates to zero under it.
    /// Silencing one participant leaves a semi-bet whose aggregate is the
    /// negated silenced payoff: nonpositive under `p`, and nonzero against
    /// some belief row (otherwise the strict participant's payoff would
    /// vanish against every row too).
    fn strong_prior_response(
        &self,
        bet: &Bet,
        strict_position: usize,
        p: &ProbVector,
    ) -> Result<SemiBet, Error> {
        for silenced in 0..bet.players.len() {
            if silenced == strict_position {
                continue;
            }
            let mut payoffs = bet.payoffs.clone();
            payoffs[silenced] = vec![Rational::zero(); self.space.num_states()];
            let candidate = SemiBet {
                players: bet.players.clone(),
                payoffs,
            };
            let aggregate = candidate.aggregate_payoff();
            if !expectation(p.entries(), &aggregate).is_positive()
                && self.nonzero_against_some_row(&candidate, &aggregate, p)
            {
                return Ok(candidate);
            }
        }
        Err(Error::Internal(
            "no silenced variant of the acceptable bet qualifies".into(),
        ))
    }

    fn nonzero_against_some_row(
        &self,
        candidate: &SemiBet,
        aggregate: &[Rational],
        p: &ProbVector,
    ) -> bool {
        if !expectation(p.entries(), aggregate).is_zero() {
            return true;
        }
        candidate.players.iter().any(|&player| {
            (0..self.space.num_states())
                .any(|s| !expectation(self.space.player(player).row(s), aggregate).is_zero())
        })
    }

    fn verify_response(&self, response: &SemiBet, p: &ProbVector) -> Result<(), Error> {
        let ok =
            verify_semi_bet(&self.space, response).map_err(|e| Error::Internal(e.to_string()))?;
        if !ok {
            return Err(Error::Internal("response is not a semi-bet".into()));
        }
        let aggregate = response.aggregate_expectation(p);
        let sign_ok = match self.level {
            PumpLevel::Weak | PumpLevel::Universal => aggregate.is_negative(),
            PumpLevel::Strong => {
                !aggregate.is_positive()
                    && self.nonzero_against_some_row(response, &response.aggregate_payoff(), p)
            }
        };
        if !sign_ok {
            return Err(Error::Internal(
                "response fails the aggregate sign condition".into(),
            ));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Wire form
// ---------------------------------------------------------------------------

fn payoffs_to_json(
    ts: &TypeSpace,
    players: &[usize],
    payoffs: &[Vec<Rational>],
) -> serde_json::Value {
    let names: Vec<&str> = players.iter().map(|&p| ts.player(p).name()).collect();
    let mut map = serde_json::Map::new();
    for (name, payoff) in names.iter().zip(payoffs) {
        map.insert(
            name.to_string(),
            serde_json::Value::Array(
                payoff
                    .iter()
                    .map(|x| serde_json::Value::String(x.to_string()))
                    .collect(),
            ),
        );
    }
    serde_json::json!({ "players": names, "payoffs": map })
}

impl Bet {
    /// JSON wire form with player names and rational strings.
    pub fn to_json(&self, ts: &TypeSpace) -> serde_json::Value {
        payoffs_to_json(ts, &self.players, &self.payoffs)
    }
}

impl SemiBet {
    pub fn to_json(&self, ts: &TypeSpace) -> serde_json::Value {
        payoffs_to_json(ts, &self.players, &self.payoffs)
    }
}
