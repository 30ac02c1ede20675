//! The three-level belief-consistency hierarchy, decided by exact LPs.
//!
//! Writing `Π_i` for the convex hull of player `i`'s belief rows:
//!
//! - **Consistent** — `∩_i Π_i ≠ ∅`. Decided by a feasibility program: a
//!   common prior must make each cell's conditional equal the cell's row,
//!   i.e. `P(ω) = t_i(C, ω) · P(C)` for every player `i`, cell `C`, `ω ∈ C`.
//! - **Universally consistent** — for every player subset `I` and every
//!   `I`-common certainty component `S`, the induced space over `S` is
//!   consistent for the players in `I`. Minimal components suffice: any
//!   witness on a smaller component zero-extends to every closed superset.
//! - **Strongly consistent** — some common prior puts positive mass on every
//!   cell of every player. Decided by maximizing the smallest cell mass, and
//!   cross-validated against the independent acceptable-bet search; the two
//!   routes disagreeing is an internal error, never a property of the input.
//!
//! Failures carry the refuting bet of the matching flavor (see [`crate::bets`]);
//! successes carry witnesses that are re-verified through per-player
//! disintegrability before being returned.

use crate::bets::{self, Bet, BetKind};
use crate::components;
use crate::lp::{self, solve, Constraint, LinearProgram, LpOutcome, Relation, VarBounds};
use crate::model::{EventSet, ProbVector, TypeSpace};
use crate::rational::Rational;
use crate::single_player;
use crate::Error;
use std::fmt;

/// Highest consistency level a space attains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub enum ConsistencyLevel {
    None,
    Consistent,
    UniversallyConsistent,
    StronglyConsistent,
}

impl fmt::Display for ConsistencyLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ConsistencyLevel::None => "None",
            ConsistencyLevel::Consistent => "Consistent",
            ConsistencyLevel::UniversallyConsistent => "UniversallyConsistent",
            ConsistencyLevel::StronglyConsistent => "StronglyConsistent",
        };
        f.write_str(name)
    }
}

/// Outcome of the base consistency check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyCheck {
    pub holds: bool,
    pub witness: Option<ProbVector>,
    pub refutation: Option<Bet>,
}

/// Outcome of the universal consistency check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalCheck {
    pub holds: bool,
    /// Per minimal component (full player set): a witness of the induced
    /// space's consistency, zero-extended to the whole state space.
    pub component_witnesses: Vec<(EventSet, ProbVector)>,
    /// First failing pair (player subset, component) in canonical order.
    pub failing: Option<(Vec<usize>, EventSet)>,
    pub refutation: Option<Bet>,
}

/// Outcome of the strong consistency check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongCheck {
    pub holds: bool,
    /// Common prior with positive mass on every cell of every player.
    pub witness: Option<ProbVector>,
    pub refutation: Option<Bet>,
}

/// Aggregated verdict for one space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyVerdict {
    pub level: ConsistencyLevel,
    pub witness: Option<ProbVector>,
    /// Whether the witness is the only common prior (decided by coordinate
    /// extremum programs). `None` when there is no witness.
    pub witness_unique: Option<bool>,
    pub component_witnesses: Vec<(EventSet, ProbVector)>,
    pub strong_witness: Option<ProbVector>,
    /// Bet refuting the first level above the attained one, when any.
    pub refuting_bet: Option<Bet>,
}

// ---------------------------------------------------------------------------
// LP encodings
// ---------------------------------------------------------------------------

/// Feasibility program for a common prior of the listed players: variables
/// are the state masses, constrained to the simplex and to per-cell
/// proportionality with each player's rows.
pub(crate) fn common_prior_program(ts: &TypeSpace, players: &[usize]) -> LinearProgram {
    let n = ts.num_states();
    let mut constraints = vec![Constraint::new(
        vec![Rational::one(); n],
        Relation::Eq,
        Rational::one(),
    )];
    for &p in players {
        let player = ts.player(p);
        for cell in player.cells() {
            let representative = cell[0];
            for &target in cell {
                // P(target) - t(cell, target) · P(cell) = 0
                let mut coeffs = vec![Rational::zero(); n];
                let weight = player.row(representative)[target].clone();
                for &member in cell {
                    coeffs[member] = -&weight;
                }
                coeffs[target] += &Rational::one();
                constraints.push(Constraint::new(coeffs, Relation::Eq, Rational::zero()));
            }
        }
    }
    LinearProgram::new(
        vec![Rational::zero(); n],
        constraints,
        vec![VarBounds::nonnegative(); n],
    )
}

/// Solves the common-prior feasibility program. `None` means provably none
/// exists.
pub(crate) fn solve_common_prior(
    ts: &TypeSpace,
    players: &[usize],
) -> Result<Option<ProbVector>, Error> {
    let lp = common_prior_program(ts, players);
    match solve(&lp).map_err(|e| Error::InvalidInput(e.to_string()))? {
        LpOutcome::Optimal { solution, .. } => {
            let witness = ProbVector::new(solution)
                .map_err(|e| Error::Internal(format!("prior program returned a non-prior: {e}")))?;
            Ok(Some(witness))
        }
        LpOutcome::Infeasible { .. } => Ok(None),
        LpOutcome::Unbounded { .. } => Err(Error::Internal(
            "prior feasibility program cannot be unbounded".into(),
        )),
    }
}

/// Maximizes the smallest cell mass over the common priors. Returns the
/// optimizing prior when the optimum is strictly positive.
pub(crate) fn solve_strong_prior(ts: &TypeSpace) -> Result<Option<ProbVector>, Error> {
    let n = ts.num_states();
    let everyone = ts.all_players();
    let mut lp = common_prior_program(ts, &everyone);
    // Append the floor variable: every constraint row gains a zero
    // coefficient, every cell gains a mass - floor ≥ 0 row.
    lp.objective = vec![Rational::zero(); n + 1];
    lp.objective[n] = Rational::one();
    for c in lp.constraints.iter_mut() {
        c.coeffs.push(Rational::zero());
    }
    lp.bounds.push(VarBounds::nonnegative());
    for player in ts.players() {
        for cell in player.cells() {
            let mut coeffs = vec![Rational::zero(); n + 1];
            for &member in cell {
                coeffs[member] = Rational::one();
            }
            coeffs[n] = -Rational::one();
            lp.constraints
                .push(Constraint::new(coeffs, Relation::Ge, Rational::zero()));
        }
    }
    match solve(&lp).map_err(|e| Error::InvalidInput(e.to_string()))? {
        LpOutcome::Optimal { value, solution } => {
            if value.is_positive() {
                let witness = ProbVector::new(solution[..n].to_vec()).map_err(|e| {
                    Error::Internal(format!("strong program returned a non-prior: {e}"))
                })?;
                Ok(Some(witness))
            } else {
                Ok(None)
            }
        }
        LpOutcome::Infeasible { .. } => Ok(None),
        LpOutcome::Unbounded { .. } => Err(Error::Internal(
            "cell-floor program cannot be unbounded".into(),
        )),
    }
}

/// Re-derives that `witness` aggregates every listed player's beliefs, via
/// the single-player hull test. Used before any witness leaves this module.
fn verify_common_prior(
    ts: &TypeSpace,
    players: &[usize],
    witness: &ProbVector,
) -> Result<(), Error> {
    for &p in players {
        let view = ts
            .restrict_players(&[p])
            .map_err(|e| Error::Internal(e.to_string()))?;
        let outcome = single_player::is_disintegrable(&view, witness)
            .map_err(|e| Error::Internal(e.to_string()))?;
        if !outcome.is_disintegrable() {
            return Err(Error::Internal(format!(
                "witness fails disintegrability for player {}",
                ts.player(p).name()
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Universal analysis
// ---------------------------------------------------------------------------

/// Zero-extension of a distribution on `kept` states to the full space.
pub(crate) fn zero_extend(n: usize, kept: &[usize], q: &ProbVector) -> ProbVector {
    let mut entries = vec![Rational::zero(); n];
    for (k, &state) in kept.iter().enumerate() {
        entries[state] = q.get(k).clone();
    }
    ProbVector::new(entries).expect("zero-extension preserves total mass")
}

/// Searches every player subset of size ≥ 2 and every minimal component of
/// it for an induced space with no common prior. Singleton subsets are
/// skipped: a single player's row hull is never empty. Deterministic order:
/// subsets by ascending bitmask, components by least state.
pub(crate) fn first_universal_failure(
    ts: &TypeSpace,
) -> Result<Option<(Vec<usize>, EventSet)>, Error> {
    let k = ts.num_players();
    if k > 16 {
        return Err(Error::Precondition(format!(
            "universal analysis sweeps player subsets; {k} players exceed the supported 16"
        )));
    }
    for mask in 1u32..(1u32 << k) {
        if mask.count_ones() < 2 {
            continue;
        }
        let players: Vec<usize> = (0..k).filter(|&p| mask & (1 << p) != 0).collect();
        let report = components::minimal_components(ts, &players)
            .map_err(|e| Error::InvalidInput(e.to_string()))?;
        for component in &report.minimal {
            let induced = ts
                .restrict_players(&players)
                .and_then(|sub| sub.induced_subspace(component))
                .map_err(|e| Error::Internal(e.to_string()))?;
            if solve_common_prior(&induced, &induced.all_players())?.is_none() {
                return Ok(Some((players, *component)));
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Public checks
// ---------------------------------------------------------------------------

/// Consistency: a common prior exists, or an agreeable bet refutes one. The
/// two routes are independent; their disagreement is an internal error.
pub fn check_consistent(ts: &TypeSpace) -> Result<ConsistencyCheck, Error> {
    let witness = solve_common_prior(ts, &ts.all_players())?;
    let refutation = bets::agreeable_search(ts)?;
    match (&witness, &refutation) {
        (Some(_), Some(_)) => {
            return Err(Error::Internal(
                "both a common prior and an agreeable bet were found".into(),
            ))
        }
        (None, None) => {
            return Err(Error::Internal(
                "neither a common prior nor an agreeable bet was found".into(),
            ))
        }
        _ => {}
    }
    if let Some(w) = &witness {
        verify_common_prior(ts, &ts.all_players(), w)?;
    }
    if let Some(bet) = &refutation {
        let verdict = bets::verify_bet(ts, bet).map_err(|e| Error::Internal(e.to_string()))?;
        if verdict.kind != BetKind::Agreeable {
            return Err(Error::Internal(format!(
                "agreeable-bet search returned a {:?} bet",
                verdict.kind
            )));
        }
    }
    Ok(ConsistencyCheck {
        holds: witness.is_some(),
        witness,
        refutation,
    })
}

/// Universal consistency: every minimal component of every player subset
/// induces a consistent space. On failure, the refutation is the agreeable
/// bet of the failing induced space, zero-extended.
pub fn check_universally_consistent(ts: &TypeSpace) -> Result<UniversalCheck, Error> {
    match first_universal_failure(ts)? {
        Some((players, component)) => {
            let bet = bets::weakly_agreeable_from_failure(ts, &players, &component)?;
            let verdict = bets::verify_bet(ts, &bet).map_err(|e| Error::Internal(e.to_string()))?;
            if !matches!(verdict.kind, BetKind::Agreeable | BetKind::WeaklyAgreeable) {
                return Err(Error::Internal(format!(
                    "component refutation verified as {:?}",
                    verdict.kind
                )));
            }
            Ok(UniversalCheck {
                holds: false,
                component_witnesses: Vec::new(),
                failing: Some((players, component)),
                refutation: Some(bet),
            })
        }
        None => {
            let everyone = ts.all_players();
            let report = components::minimal_components(ts, &everyone)
                .map_err(|e| Error::InvalidInput(e.to_string()))?;
            let mut component_witnesses = Vec::with_capacity(report.minimal.len());
            for component in &report.minimal {
                let induced = ts
                    .induced_subspace(component)
                    .map_err(|e| Error::Internal(e.to_string()))?;
                let q = solve_common_prior(&induced, &induced.all_players())?.ok_or_else(|| {
                    Error::Internal("minimal component lost its witness on re-solve".into())
                })?;
                let kept: Vec<usize> = component.iter().collect();
                let extended = zero_extend(ts.num_states(), &kept, &q);
                verify_common_prior(ts, &everyone, &extended)?;
                component_witnesses.push((*component, extended));
            }
            Ok(UniversalCheck {
                holds: true,
                component_witnesses,
                failing: None,
                refutation: None,
            })
        }
    }
}

/// Strong consistency: the cell-floor program and the acceptable-bet search
/// must agree; the optimum is positive exactly when no acceptable bet exists.
pub fn check_strongly_consistent(ts: &TypeSpace) -> Result<StrongCheck, Error> {
    let witness = solve_strong_prior(ts)?;
    let refutation = bets::acceptable_search(ts)?;
    match (&witness, &refutation) {
        (Some(_), Some(_)) => {
            return Err(Error::Internal(
                "positive cell floor and acceptable bet found together".into(),
            ))
        }
        (None, None) => {
            return Err(Error::Internal(
                "neither a full-support prior nor an acceptable bet was found".into(),
            ))
        }
        _ => {}
    }
    if let Some(w) = &witness {
        verify_common_prior(ts, &ts.all_players(), w)?;
        for player in ts.players() {
            for cell in player.cells() {
                let mass = cell.iter().map(|&s| w.get(s)).sum::<Rational>();
                if !mass.is_positive() {
                    return Err(Error::Internal(format!(
                        "strong witness puts zero mass on a cell of {}",
                        player.name()
                    )));
                }
            }
        }
    }
    if let Some(bet) = &refutation {
        let verdict = bets::verify_bet(ts, bet).map_err(|e| Error::Internal(e.to_string()))?;
        if !matches!(
            verdict.kind,
            BetKind::Agreeable | BetKind::WeaklyAgreeable | BetKind::Acceptable
        ) {
            return Err(Error::Internal(format!(
                "acceptable-bet search returned a {:?} bet",
                verdict.kind
            )));
        }
    }
    Ok(StrongCheck {
        holds: witness.is_some(),
        witness,
        refutation,
    })
}

/// Runs the three checks, enforces the hierarchy (strong ⊆ universal ⊆
/// consistent), and reports the highest level with all certificates.
pub fn classify(ts: &TypeSpace) -> Result<ConsistencyVerdict, Error> {
    let base = check_consistent(ts)?;
    let universal = check_universally_consistent(ts)?;
    let strong = check_strongly_consistent(ts)?;
    if (strong.holds && !universal.holds) || (universal.holds && !base.holds) {
        return Err(Error::Internal(format!(
            "hierarchy violated: consistent={}, universal={}, strong={}",
            base.holds, universal.holds, strong.holds
        )));
    }
    let level = if strong.holds {
        ConsistencyLevel::StronglyConsistent
    } else if universal.holds {
        ConsistencyLevel::UniversallyConsistent
    } else if base.holds {
        ConsistencyLevel::Consistent
    } else {
        ConsistencyLevel::None
    };
    let refuting_bet = match level {
        ConsistencyLevel::None => base.refutation,
        ConsistencyLevel::Consistent => universal.refutation,
        ConsistencyLevel::UniversallyConsistent => strong.refutation,
        ConsistencyLevel::StronglyConsistent => None,
    };
    let witness_unique = if base.holds {
        Some(common_prior_is_unique(ts)?)
    } else {
        None
    };
    Ok(ConsistencyVerdict {
        level,
        witness: base.witness,
        witness_unique,
        component_witnesses: universal.component_witnesses,
        strong_witness: strong.witness,
        refuting_bet,
    })
}

/// Whether the common-prior polytope is a single point: every coordinate's
/// maximum equals its minimum.
pub fn common_prior_is_unique(ts: &TypeSpace) -> Result<bool, Error> {
    let base = common_prior_program(ts, &ts.all_players());
    let n = ts.num_states();
    for coord in 0..n {
        let mut extremes = Vec::with_capacity(2);
        for sign in [Rational::one(), -Rational::one()] {
            let mut lp = base.clone();
            lp.objective = vec![Rational::zero(); n];
            lp.objective[coord] = sign.clone();
            match solve(&lp).map_err(|e| Error::InvalidInput(e.to_string()))? {
                LpOutcome::Optimal { value, .. } => extremes.push(&value * &sign),
                LpOutcome::Infeasible { .. } => {
                    return Err(Error::Precondition(
                        "uniqueness asked for an inconsistent space".into(),
                    ))
                }
                LpOutcome::Unbounded { .. } => {
                    return Err(Error::Internal("prior polytope is bounded".into()))
                }
            }
        }
        if extremes[0] != extremes[1] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest state count for exact vertex enumeration of the witness polytope.
pub const VERTEX_ENUMERATION_LIMIT: usize = 12;

/// All vertices of the common-prior polytope, by support enumeration: a
/// vertex is the unique solution of the equality system restricted to its
/// support. Sorted lexicographically by entries. Errors above
/// [`VERTEX_ENUMERATION_LIMIT`] states.
pub fn witness_vertices(ts: &TypeSpace) -> Result<Vec<ProbVector>, Error> {
    let n = ts.num_states();
    if n > VERTEX_ENUMERATION_LIMIT {
        return Err(Error::Precondition(format!(
            "vertex enumeration supports at most {VERTEX_ENUMERATION_LIMIT} states, got {n}"
        )));
    }
    let program = common_prior_program(ts, &ts.all_players());
    let rows: Vec<Vec<Rational>> = program
        .constraints
        .iter()
        .map(|c| c.coeffs.clone())
        .collect();
    let rhs: Vec<Rational> = program.constraints.iter().map(|c| c.rhs.clone()).collect();
    let mut vertices: Vec<ProbVector> = Vec::new();
    for support in EventSet::power_set(n) {
        if support.is_empty() {
            continue;
        }
        let kept: Vec<usize> = support.iter().collect();
        let restricted: Vec<Vec<Rational>> = rows
            .iter()
            .map(|row| kept.iter().map(|&j| row[j].clone()).collect())
            .collect();
        let Some(solution) = lp::solve_unique(&restricted, &rhs) else {
            continue;
        };
        if solution.iter().any(Rational::is_negative) {
            continue;
        }
        let point = zero_extend(
            n,
            &kept,
            &ProbVector::new(solution.clone())
                .map_err(|_| Error::Internal("support solution does not sum to one".into()))?,
        );
        if !vertices.contains(&point) {
            vertices.push(point);
        }
    }
    for vertex in &vertices {
        verify_common_prior(ts, &ts.all_players(), vertex)?;
    }
    vertices.sort_by(|a, b| a.entries().cmp(b.entries()));
    Ok(vertices)
}
