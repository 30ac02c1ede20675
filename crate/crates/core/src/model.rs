//! The finite type-space data model, its validator, induced subspaces, and
//! the canonical `.tsjson` text format.
//!
//! A [`TypeSpace`] holds an ordered list of states, and per player a
//! partition of the states (the player's knowledge) plus one belief row per
//! state. Three axioms make the data a type space:
//!
//! 1. every belief row is a probability vector (entries ≥ 0, sum exactly 1);
//! 2. rows are constant on partition cells — a player knows her own belief;
//! 3. the support of a row lies inside the state's own cell — a player
//!    believes with probability 1 what she knows.
//!
//! [`TypeSpace::validate`] reports violations as data rather than failing, so
//! a caller can surface all problems at once. Everything downstream requires
//! a space that validates cleanly.
//!
//! The event field is fixed to the full power set of the states, which closes
//! every "for every event" quantifier to a finite enumeration; [`EventSet`]
//! is the bitmask implementation. State counts beyond
//! [`DEFAULT_MAX_STATES`] are refused unless the caller raises the limit.

use crate::rational::Rational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Soft limit on the number of states; power-set sweeps appear downstream.
pub const DEFAULT_MAX_STATES: usize = 24;

/// Hard limit imposed by the bitmask event representation.
pub const HARD_MAX_STATES: usize = 64;

/// A subset of states, as a bitmask over state indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct EventSet {
    bits: u64,
}

impl EventSet {
    pub fn empty() -> Self {
        EventSet { bits: 0 }
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= HARD_MAX_STATES);
        if n == 64 {
            EventSet { bits: u64::MAX }
        } else {
            EventSet {
                bits: (1u64 << n) - 1,
            }
        }
    }

    pub fn singleton(state: usize) -> Self {
        EventSet {
            bits: 1u64 << state,
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut bits = 0u64;
        for i in indices {
            bits |= 1u64 << i;
        }
        EventSet { bits }
    }

    pub fn from_bits(bits: u64) -> Self {
        EventSet { bits }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, state: usize) -> bool {
        self.bits & (1u64 << state) != 0
    }

    pub fn insert(&mut self, state: usize) {
        self.bits |= 1u64 << state;
    }

    pub fn union(&self, other: &EventSet) -> EventSet {
        EventSet {
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(&self, other: &EventSet) -> EventSet {
        EventSet {
            bits: self.bits & other.bits,
        }
    }

    pub fn complement(&self, n: usize) -> EventSet {
        EventSet {
            bits: !self.bits & EventSet::full(n).bits,
        }
    }

    pub fn is_subset_of(&self, other: &EventSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..64).filter(move |&i| self.contains(i))
    }

    /// All 2^n subsets of an n-state universe in ascending bitmask order.
    pub fn power_set(n: usize) -> impl Iterator<Item = EventSet> {
        debug_assert!(n < 64);
        (0u64..(1u64 << n)).map(EventSet::from_bits)
    }
}

/// A probability vector over the states: entries ≥ 0 summing to exactly 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct ProbVector(Vec<Rational>);

impl ProbVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self, ModelError> {
        if entries.iter().any(Rational::is_negative) {
            return Err(ModelError::NotAProbability(
                "negative entry in probability vector".into(),
            ));
        }
        let total: Rational = entries.iter().sum();
        if total != Rational::one() {
            return Err(ModelError::NotAProbability(format!(
                "probability vector sums to {total}, expected 1"
            )));
        }
        Ok(ProbVector(entries))
    }

    /// Point mass on one state.
    pub fn dirac(n: usize, state: usize) -> Self {
        let mut entries = vec![Rational::zero(); n];
        entries[state] = Rational::one();
        ProbVector(entries)
    }

    pub fn uniform(n: usize) -> Self {
        let w = Rational::new(1, n as i64).expect("n > 0");
        ProbVector(vec![w; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn get(&self, state: usize) -> &Rational {
        &self.0[state]
    }

    /// Total probability of an event.
    pub fn mass(&self, event: &EventSet) -> Rational {
        event.iter().map(|i| &self.0[i]).sum()
    }

    /// States with positive probability.
    pub fn support(&self) -> EventSet {
        EventSet::from_indices(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, x)| x.is_positive())
                .map(|(i, _)| i),
        )
    }

    /// Parses a comma-separated list such as `1/10,0,9/10`.
    pub fn parse_list(text: &str) -> Result<Self, ModelError> {
        let entries = text
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<Rational>()
                    .map_err(|e| ModelError::NotAProbability(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        ProbVector::new(entries)
    }
}

impl TryFrom<Vec<Rational>> for ProbVector {
    type Error = ModelError;
    fn try_from(v: Vec<Rational>) -> Result<Self, Self::Error> {
        ProbVector::new(v)
    }
}

impl From<ProbVector> for Vec<Rational> {
    fn from(p: ProbVector) -> Vec<Rational> {
        p.0
    }
}

impl fmt::Display for ProbVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// One player: a name, a knowledge partition, and one belief row per state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Player {
    name: String,
    /// Partition cells as sorted state-index lists, ordered by least element.
    cells: Vec<Vec<usize>>,
    /// State index → cell index.
    cell_of: Vec<usize>,
    /// Belief row per state. Rows may violate the axioms until validated.
    rows: Vec<Vec<Rational>>,
}

impl Player {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_index_of(&self, state: usize) -> usize {
        self.cell_of[state]
    }

    pub fn cell_of(&self, state: usize) -> EventSet {
        EventSet::from_indices(self.cells[self.cell_of[state]].iter().copied())
    }

    pub fn row(&self, state: usize) -> &[Rational] {
        &self.rows[state]
    }

    /// Belief in an event at a state: `t(state, event)`.
    pub fn belief(&self, state: usize, event: &EventSet) -> Rational {
        event.iter().map(|j| &self.rows[state][j]).sum()
    }

    /// Expected value of a payoff vector under the belief at `state`.
    pub fn expectation(&self, state: usize, payoff: &[Rational]) -> Rational {
        crate::model::expectation(&self.rows[state], payoff)
    }

    /// Support of the belief row at `state`.
    pub fn support(&self, state: usize) -> EventSet {
        EventSet::from_indices(
            self.rows[state]
                .iter()
                .enumerate()
                .filter(|(_, x)| x.is_positive())
                .map(|(j, _)| j),
        )
    }
}

pub(crate) fn expectation(row: &[Rational], payoff: &[Rational]) -> Rational {
    debug_assert_eq!(row.len(), payoff.len());
    let mut acc = Rational::zero();
    for (p, f) in row.iter().zip(payoff) {
        if !p.is_zero() && !f.is_zero() {
            acc += &(p * f);
        }
    }
    acc
}

/// A finite multi-player type space. Immutable once constructed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeSpace {
    states: Vec<String>,
    players: Vec<Player>,
}

/// Construction input for one player: name, partition cells over state
/// indices, and one belief row per state.
pub type PlayerSpec = (String, Vec<Vec<usize>>, Vec<Vec<Rational>>);

/// Structural errors: the input is not even a candidate type space.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("{0}")]
    Structure(String),
    #[error("{0}")]
    NotAProbability(String),
    #[error(
        "state count {found} exceeds the limit of {limit} (set TSAUDIT_MAX_STATES to raise it)"
    )]
    TooManyStates { found: usize, limit: usize },
    #[error(
        "restriction set is not a common certainty component: edge leaves the set at state {state}"
    )]
    NotClosed { state: String },
}

/// One violated type-space axiom, reported with labels rather than indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// A belief entry is negative.
    NegativeEntry { player: String, state: String },
    /// A belief row does not sum to 1.
    RowSum {
        player: String,
        state: String,
        sum: Rational,
    },
    /// Two states in one cell carry different rows.
    Measurability {
        player: String,
        state_a: String,
        state_b: String,
    },
    /// A row puts positive probability outside its own cell.
    TruthAxiom {
        player: String,
        state: String,
        outside: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NegativeEntry { player, state } => {
                write!(f, "player {player}: negative belief entry at state {state}")
            }
            Violation::RowSum { player, state, sum } => {
                write!(f, "player {player}: row sum ≠ 1 at state {state} (got {sum})")
            }
            Violation::Measurability { player, state_a, state_b } => write!(
                f,
                "player {player}: states {state_a} and {state_b} share a cell but carry different beliefs"
            ),
            Violation::TruthAxiom { player, state, outside } => write!(
                f,
                "player {player}: belief at state {state} puts mass on {outside} outside the state's cell"
            ),
        }
    }
}

impl TypeSpace {
    /// Builds a space from parts, with per-state rows. Structural checks only;
    /// the three axioms are the validator's business.
    pub fn from_parts(states: Vec<String>, players: Vec<PlayerSpec>) -> Result<Self, ModelError> {
        Self::from_parts_with_limit(states, players, DEFAULT_MAX_STATES)
    }

    pub fn from_parts_with_limit(
        states: Vec<String>,
        players: Vec<PlayerSpec>,
        max_states: usize,
    ) -> Result<Self, ModelError> {
        let n = states.len();
        if n == 0 {
            return Err(ModelError::Structure("state list is empty".into()));
        }
        let limit = max_states.min(HARD_MAX_STATES);
        if n > limit {
            return Err(ModelError::TooManyStates { found: n, limit });
        }
        {
            let mut seen = states.clone();
            seen.sort();
            seen.dedup();
            if seen.len() != n {
                return Err(ModelError::Structure("duplicate state label".into()));
            }
        }
        if players.is_empty() {
            return Err(ModelError::Structure("player list is empty".into()));
        }
        {
            let mut names: Vec<&str> = players.iter().map(|(n, _, _)| n.as_str()).collect();
            names.sort();
            names.dedup();
            if names.len() != players.len() {
                return Err(ModelError::Structure("duplicate player name".into()));
            }
        }
        let mut built = Vec::with_capacity(players.len());
        for (name, raw_cells, rows) in players {
            let mut cell_of = vec![usize::MAX; n];
            let mut cells: Vec<Vec<usize>> = Vec::with_capacity(raw_cells.len());
            for cell in &raw_cells {
                if cell.is_empty() {
                    return Err(ModelError::Structure(format!(
                        "player {name}: empty partition cell"
                    )));
                }
                let mut sorted = cell.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != cell.len() {
                    return Err(ModelError::Structure(format!(
                        "player {name}: repeated state in a cell"
                    )));
                }
                for &s in &sorted {
                    if s >= n {
                        return Err(ModelError::Structure(format!(
                            "player {name}: cell references state index {s} out of range"
                        )));
                    }
                    if cell_of[s] != usize::MAX {
                        return Err(ModelError::Structure(format!(
                            "player {name}: state {} appears in two cells",
                            states[s]
                        )));
                    }
                    cell_of[s] = cells.len();
                }
                cells.push(sorted);
            }
            if cell_of.contains(&usize::MAX) {
                return Err(ModelError::Structure(format!(
                    "player {name}: partition does not cover all states"
                )));
            }
            // Canonical cell order: by least element; remap cell_of.
            let mut order: Vec<usize> = (0..cells.len()).collect();
            order.sort_by_key(|&c| cells[c][0]);
            let mut remap = vec![0usize; cells.len()];
            for (new_idx, &old_idx) in order.iter().enumerate() {
                remap[old_idx] = new_idx;
            }
            let cells: Vec<Vec<usize>> = order.iter().map(|&c| cells[c].clone()).collect();
            let cell_of: Vec<usize> = cell_of.into_iter().map(|c| remap[c]).collect();

            if rows.len() != n {
                return Err(ModelError::Structure(format!(
                    "player {name}: expected {n} belief rows, found {}",
                    rows.len()
                )));
            }
            for row in &rows {
                if row.len() != n {
                    return Err(ModelError::Structure(format!(
                        "player {name}: belief row has length {}, expected {n}",
                        row.len()
                    )));
                }
            }
            built.push(Player {
                name,
                cells,
                cell_of,
                rows,
            });
        }
        Ok(TypeSpace {
            states,
            players: built,
        })
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_players(&self) -> usize {
        self.players.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_label(&self, index: usize) -> &str {
        &self.states[index]
    }

    pub fn players(&self) -> &[Player] {
        &self.players
    }

    pub fn player(&self, index: usize) -> &Player {
        &self.players[index]
    }

    pub fn player_index(&self, name: &str) -> Option<usize> {
        self.players.iter().position(|p| p.name == name)
    }

    pub fn all_states(&self) -> EventSet {
        EventSet::full(self.num_states())
    }

    pub fn all_players(&self) -> Vec<usize> {
        (0..self.players.len()).collect()
    }

    /// Labels of an event's members, in state order.
    pub fn labels_of(&self, event: &EventSet) -> Vec<String> {
        event
            .iter()
            .filter(|&i| i < self.num_states())
            .map(|i| self.states[i].clone())
            .collect()
    }

    /// Checks the three axioms and reports every violation found.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        let n = self.num_states();
        for player in &self.players {
            for state in 0..n {
                let row = &player.rows[state];
                if row.iter().any(Rational::is_negative) {
                    violations.push(Violation::NegativeEntry {
                        player: player.name.clone(),
                        state: self.states[state].clone(),
                    });
                }
                let sum: Rational = row.iter().sum();
                if sum != Rational::one() {
                    violations.push(Violation::RowSum {
                        player: player.name.clone(),
                        state: self.states[state].clone(),
                        sum,
                    });
                }
            }
            for cell in &player.cells {
                let head = cell[0];
                for &other in &cell[1..] {
                    if player.rows[other] != player.rows[head] {
                        violations.push(Violation::Measurability {
                            player: player.name.clone(),
                            state_a: self.states[head].clone(),
                            state_b: self.states[other].clone(),
                        });
                    }
                }
            }
            for state in 0..n {
                let cell = player.cell_of(state);
                for j in 0..n {
                    if player.rows[state][j].is_positive() && !cell.contains(j) {
                        violations.push(Violation::TruthAxiom {
                            player: player.name.clone(),
                            state: self.states[state].clone(),
                            outside: self.states[j].clone(),
                        });
                        break;
                    }
                }
            }
        }
        violations
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Keeps only the listed players (indices into this space), in the given
    /// order. States are untouched.
    pub fn restrict_players(&self, players: &[usize]) -> Result<TypeSpace, ModelError> {
        if players.is_empty() {
            return Err(ModelError::Structure("player subset is empty".into()));
        }
        let mut kept = Vec::with_capacity(players.len());
        for &i in players {
            if i >= self.players.len() {
                return Err(ModelError::Structure(format!(
                    "player index {i} out of range"
                )));
            }
            kept.push(self.players[i].clone());
        }
        Ok(TypeSpace {
            states: self.states.clone(),
            players: kept,
        })
    }

    /// Restricts the space to a common certainty component. Belief rows are
    /// restrictions of the originals; no renormalization happens because the
    /// supports already lie inside the component. Errors when some belief
    /// leaves the set.
    pub fn induced_subspace(&self, component: &EventSet) -> Result<TypeSpace, ModelError> {
        if component.is_empty() {
            return Err(ModelError::Structure("restriction set is empty".into()));
        }
        let kept: Vec<usize> = component
            .iter()
            .filter(|&i| i < self.num_states())
            .collect();
        for player in &self.players {
            for &s in &kept {
                if !player.support(s).is_subset_of(component) {
                    return Err(ModelError::NotClosed {
                        state: self.states[s].clone(),
                    });
                }
            }
        }
        let mut new_index = vec![usize::MAX; self.num_states()];
        for (new, &old) in kept.iter().enumerate() {
            new_index[old] = new;
        }
        let states: Vec<String> = kept.iter().map(|&i| self.states[i].clone()).collect();
        let players = self
            .players
            .iter()
            .map(|p| {
                let cells: Vec<Vec<usize>> = p
                    .cells
                    .iter()
                    .filter_map(|cell| {
                        let reduced: Vec<usize> = cell
                            .iter()
                            .filter(|&&s| component.contains(s))
                            .map(|&s| new_index[s])
                            .collect();
                        (!reduced.is_empty()).then_some(reduced)
                    })
                    .collect();
                let rows: Vec<Vec<Rational>> = kept
                    .iter()
                    .map(|&old| kept.iter().map(|&j| p.rows[old][j].clone()).collect())
                    .collect();
                (p.name.clone(), cells, rows)
            })
            .collect();
        TypeSpace::from_parts_with_limit(states, players, HARD_MAX_STATES)
    }
}

// ---------------------------------------------------------------------------
// Canonical text format (`.tsjson`)
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct RawTypeSpace {
    states: Vec<String>,
    players: Vec<RawPlayer>,
}

#[derive(Serialize, Deserialize)]
struct RawPlayer {
    name: String,
    partition: Vec<Vec<String>>,
    beliefs: BTreeMap<String, Vec<String>>,
}

impl TypeSpace {
    /// Parses the canonical text format. Rationals must be strings such as
    /// `"1/3"` or `"2"`; floats are rejected by construction. Belief rows are
    /// keyed by any one member state of each cell and apply to the whole cell.
    pub fn parse(text: &str) -> Result<TypeSpace, ModelError> {
        Self::parse_with_limit(text, DEFAULT_MAX_STATES)
    }

    pub fn parse_with_limit(text: &str, max_states: usize) -> Result<TypeSpace, ModelError> {
        let raw: RawTypeSpace = serde_json::from_str(text).map_err(|e| {
            ModelError::Syntax(format!("line {}, column {}: {e}", e.line(), e.column()))
        })?;
        let n = raw.states.len();
        let index_of = |label: &str| -> Result<usize, ModelError> {
            raw.states
                .iter()
                .position(|s| s == label)
                .ok_or_else(|| ModelError::Structure(format!("unknown state label {label:?}")))
        };
        let mut players = Vec::with_capacity(raw.players.len());
        for p in &raw.players {
            let mut cells = Vec::with_capacity(p.partition.len());
            for cell in &p.partition {
                let mut indices = Vec::with_capacity(cell.len());
                for label in cell {
                    indices.push(index_of(label)?);
                }
                cells.push(indices);
            }
            // Resolve per-cell rows from their representative keys.
            let mut cell_rows: Vec<Option<Vec<Rational>>> = vec![None; cells.len()];
            for (key, row_text) in &p.beliefs {
                let key_state = index_of(key)?;
                let cell_idx = cells
                    .iter()
                    .position(|c| c.contains(&key_state))
                    .ok_or_else(|| {
                        ModelError::Structure(format!(
                            "player {}: belief key {key:?} is not in any cell",
                            p.name
                        ))
                    })?;
                if cell_rows[cell_idx].is_some() {
                    return Err(ModelError::Structure(format!(
                        "player {}: two belief rows for the cell containing {key:?}",
                        p.name
                    )));
                }
                if row_text.len() != n {
                    return Err(ModelError::Structure(format!(
                        "player {}: belief row for {key:?} has {} entries, expected {n}",
                        p.name,
                        row_text.len()
                    )));
                }
                let row = row_text
                    .iter()
                    .map(|s| {
                        s.parse::<Rational>().map_err(|e| {
                            ModelError::Structure(format!(
                                "player {}: bad rational {s:?}: {e}",
                                p.name
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                cell_rows[cell_idx] = Some(row);
            }
            let mut rows = vec![Vec::new(); n];
            for (cell, row) in cells.iter().zip(cell_rows) {
                let row = row.ok_or_else(|| {
                    ModelError::Structure(format!(
                        "player {}: no belief row for a partition cell",
                        p.name
                    ))
                })?;
                for &s in cell {
                    rows[s] = row.clone();
                }
            }
            players.push((p.name.clone(), cells, rows));
        }
        TypeSpace::from_parts_with_limit(raw.states, players, max_states)
    }

    /// Canonical serialization: deterministic bytes, rationals in lowest
    /// terms, belief rows keyed by the first state of each cell.
    pub fn serialize(&self) -> String {
        let raw = RawTypeSpace {
            states: self.states.clone(),
            players: self
                .players
                .iter()
                .map(|p| RawPlayer {
                    name: p.name.clone(),
                    partition: p
                        .cells
                        .iter()
                        .map(|cell| cell.iter().map(|&s| self.states[s].clone()).collect())
                        .collect(),
                    beliefs: p
                        .cells
                        .iter()
                        .map(|cell| {
                            let rep = cell[0];
                            (
                                self.states[rep].clone(),
                                p.rows[rep].iter().map(|x| x.to_string()).collect(),
                            )
                        })
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("serialization cannot fail") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn row(items: &[&str]) -> Vec<Rational> {
        items.iter().map(|s| r(s)).collect()
    }

    /// Four states, two players, crossed partitions; valid but admits no
    /// common aggregation of beliefs.
    pub(crate) fn crossed_space() -> TypeSpace {
        TypeSpace::from_parts(
            vec!["w1".into(), "w2".into(), "w3".into(), "w4".into()],
            vec![
                (
                    "P1".into(),
                    vec![vec![0, 1], vec![2, 3]],
                    vec![
                        row(&["1/2", "1/2", "0", "0"]),
                        row(&["1/2", "1/2", "0", "0"]),
                        row(&["0", "0", "1/2", "1/2"]),
                        row(&["0", "0", "1/2", "1/2"]),
                    ],
                ),
                (
                    "P2".into(),
                    vec![vec![0, 3], vec![1, 2]],
                    vec![
                        row(&["1/2", "0", "0", "1/2"]),
                        row(&["0", "1", "0", "0"]),
                        row(&["0", "1", "0", "0"]),
                        row(&["1/2", "0", "0", "1/2"]),
                    ],
                ),
            ],
        )
        .unwrap()
    }

    #[test]
    fn crossed_space_is_valid() {
        assert_eq!(crossed_space().validate(), vec![]);
    }

    #[test]
    fn truth_axiom_violation_is_reported() {
        let ts = TypeSpace::from_parts(
            vec!["w1".into(), "w2".into(), "w3".into(), "w4".into()],
            vec![(
                "P1".into(),
                vec![vec![0, 1], vec![2, 3]],
                vec![
                    row(&["1", "0", "0", "0"]),
                    row(&["1", "0", "0", "0"]),
                    // support {w1, w2} lies outside the cell {w3, w4}
                    row(&["1/2", "1/2", "0", "0"]),
                    row(&["1/2", "1/2", "0", "0"]),
                ],
            )],
        )
        .unwrap();
        let violations = ts.validate();
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::TruthAxiom { .. })));
    }

    #[test]
    fn measurability_violation_is_reported() {
        let ts = TypeSpace::from_parts(
            vec!["w1".into(), "w2".into()],
            vec![(
                "P1".into(),
                vec![vec![0, 1]],
                vec![row(&["1", "0"]), row(&["0", "1"])],
            )],
        )
        .unwrap();
        let violations = ts.validate();
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::Measurability { .. })));
    }

    #[test]
    fn row_sum_violation_is_reported() {
        let ts = TypeSpace::from_parts(
            vec!["w1".into(), "w2".into()],
            vec![(
                "P1".into(),
                vec![vec![0], vec![1]],
                vec![row(&["1/2", "0"]), row(&["0", "1"])],
            )],
        )
        .unwrap();
        assert!(ts
            .validate()
            .iter()
            .any(|v| matches!(v, Violation::RowSum { .. })));
    }

    #[test]
    fn parse_round_trips_exactly() {
        let ts = crossed_space();
        let text = ts.serialize();
        let back = TypeSpace::parse(&text).unwrap();
        assert_eq!(back, ts);
        // Canonical form is a fixed point of parse ∘ serialize.
        assert_eq!(back.serialize(), text);
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        let text = r#"{
            "states": ["a"],
            "players": [{"name": "P", "partition": [["a"]], "beliefs": {"a": ["1/0"]}}]
        }"#;
        let err = TypeSpace::parse(text).unwrap_err();
        assert!(matches!(err, ModelError::Structure(_)), "{err}");
    }

    #[test]
    fn parse_reports_syntax_position() {
        let err = TypeSpace::parse("{ not json").unwrap_err();
        assert!(matches!(err, ModelError::Syntax(_)));
        assert!(err.to_string().contains("line"));
    }

    #[test]
    fn exact_thirds_sum_to_one() {
        let text = r#"{
            "states": ["a", "b", "c"],
            "players": [{"name": "P", "partition": [["a", "b", "c"]],
                         "beliefs": {"a": ["1/3", "1/3", "1/3"]}}]
        }"#;
        let ts = TypeSpace::parse(text).unwrap();
        assert_eq!(ts.validate(), vec![]);
        let total: Rational = ts.player(0).row(0).iter().sum();
        assert_eq!(total, Rational::one());
    }

    #[test]
    fn state_limit_is_enforced() {
        let states: Vec<String> = (0..30).map(|i| format!("s{i}")).collect();
        let cells = vec![(0..30).collect::<Vec<_>>()];
        let mut row = vec![Rational::zero(); 30];
        row[0] = Rational::one();
        let rows = vec![row; 30];
        let err = TypeSpace::from_parts(
            states.clone(),
            vec![("P".into(), cells.clone(), rows.clone())],
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::TooManyStates { .. }));
        assert!(
            TypeSpace::from_parts_with_limit(states, vec![("P".into(), cells, rows)], 32).is_ok()
        );
    }

    #[test]
    fn induced_subspace_restricts_rows_without_renormalizing() {
        // Same partition for both players; component {w3, w4} keeps rows
        // (1/2, 1/2) and (1, 0).
        let ts = TypeSpace::from_parts(
            vec!["w1".into(), "w2".into(), "w3".into(), "w4".into()],
            vec![
                (
                    "P1".into(),
                    vec![vec![0, 1], vec![2, 3]],
                    vec![
                        row(&["1/2", "1/2", "0", "0"]),
                        row(&["1/2", "1/2", "0", "0"]),
                        row(&["0", "0", "1/2", "1/2"]),
                        row(&["0", "0", "1/2", "1/2"]),
                    ],
                ),
                (
                    "P2".into(),
                    vec![vec![0, 1], vec![2, 3]],
                    vec![
                        row(&["1/2", "1/2", "0", "0"]),
                        row(&["1/2", "1/2", "0", "0"]),
                        row(&["0", "0", "1", "0"]),
                        row(&["0", "0", "1", "0"]),
                    ],
                ),
            ],
        )
        .unwrap();
        let sub = ts
            .induced_subspace(&EventSet::from_indices([2, 3]))
            .unwrap();
        assert_eq!(sub.states(), &["w3".to_string(), "w4".to_string()]);
        assert_eq!(sub.player(0).row(0), &row(&["1/2", "1/2"])[..]);
        assert_eq!(sub.player(1).row(0), &row(&["1", "0"])[..]);
        assert_eq!(sub.validate(), vec![]);
    }

    #[test]
    fn induced_subspace_of_anchor_pair_is_point_concentrated() {
        let ts = TypeSpace::from_parts(
            vec!["w1".into(), "w2".into(), "w3".into(), "w4".into()],
            vec![
                (
                    "Anne".into(),
                    vec![vec![0], vec![1, 2], vec![3]],
                    vec![
                        row(&["1", "0", "0", "0"]),
                        row(&["0", "1/2", "1/2", "0"]),
                        row(&["0", "1/2", "1/2", "0"]),
                        row(&["0", "0", "0", "1"]),
                    ],
                ),
                (
                    "Ben".into(),
                    vec![vec![0, 1], vec![2, 3]],
                    vec![
                        row(&["1", "0", "0", "0"]),
                        row(&["1", "0", "0", "0"]),
                        row(&["0", "0", "0", "1"]),
                        row(&["0", "0", "0", "1"]),
                    ],
                ),
            ],
        )
        .unwrap();
        let sub = ts
            .induced_subspace(&EventSet::from_indices([0, 3]))
            .unwrap();
        assert_eq!(sub.num_states(), 2);
        for player in sub.players() {
            assert_eq!(player.row(0), &row(&["1", "0"])[..]);
            assert_eq!(player.row(1), &row(&["0", "1"])[..]);
        }
        assert_eq!(sub.validate(), vec![]);
    }

    #[test]
    fn induced_subspace_of_everything_is_identity() {
        let ts = crossed_space();
        let sub = ts.induced_subspace(&ts.all_states()).unwrap();
        assert_eq!(sub, ts);
    }

    #[test]
    fn induced_subspace_rejects_open_sets() {
        let ts = crossed_space();
        let err = ts
            .induced_subspace(&EventSet::from_indices([0]))
            .unwrap_err();
        assert!(matches!(err, ModelError::NotClosed { .. }));
    }

    proptest! {
        #[test]
        fn serialize_parse_identity_on_sampled_spaces(seed in 0u64..400) {
            let ts = crate::sampler::sample_space(&mut crate::sampler::Rng::new(seed),
                                                  &crate::sampler::SpaceConfig::default());
            prop_assert!(ts.is_valid());
            let text = ts.serialize();
            let back = TypeSpace::parse(&text).unwrap();
            prop_assert_eq!(&back, &ts);
            prop_assert_eq!(back.serialize(), text);
        }
    }
}
