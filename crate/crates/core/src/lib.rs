//! Analysis of finite multi-player type spaces with exact rational arithmetic.
//!
//! A type space is a finite set of states together with, for every player, a
//! knowledge partition and a belief (a probability vector over states) attached
//! to each partition cell. This crate answers, with machine-checkable
//! certificates, the question of how compatible the players' beliefs are:
//!
//! - **Consistent** — some probability vector aggregates every player's
//!   beliefs at once (a common prior). Refuted by an *agreeable bet*.
//! - **Universally consistent** — consistency also holds on every common
//!   certainty component (a set of states no player's belief ever leaves).
//!   Refuted by a *weakly agreeable bet*.
//! - **Strongly consistent** — some common prior puts positive probability on
//!   every cell of every player. Refuted by an *acceptable bet*.
//!
//! Every verdict is decided by exact rational linear programming and comes
//! with a witness on success or an explicit bet / money-pump responder on
//! failure. There is no floating point anywhere in the math core.
//!
//! Module map:
//!
//! - [`rational`] — arbitrary-precision rational numbers, the only number type.
//! - [`lp`] — certificate-producing simplex kernel (optimum, Farkas
//!   infeasibility certificate, unbounded ray).
//! - [`model`] — the type-space data model, validator, induced subspaces, and
//!   the `.tsjson` text format.
//! - [`components`] — common certainty components as closed sets of a
//!   belief-support reachability graph.
//! - [`single_player`] — conglomerability, disintegrability, aggregation
//!   polytopes, and Dutch-book construction for a single player.
//! - [`consistency`] — the three-level classification with witnesses.
//! - [`bets`] — bet verification and search, semi-bets, and money-pump
//!   responders at all three levels.
//! - [`sampler`] — deterministic random type-space generation for fuzzing.

pub mod bets;
pub mod components;
pub mod consistency;
pub mod lp;
pub mod model;
pub mod rational;
pub mod sampler;
pub mod single_player;
#[cfg(test)]
pub(crate) mod test_spaces;

pub use bets::{
    find_acceptable_bet, find_agreeable_bet, find_weakly_agreeable_bet, money_pump_responder,
    verify_bet, verify_semi_bet, Bet, BetKind, BetVerdict, MoneyPumpResponder, PumpLevel, SemiBet,
};
pub use components::{
    build_graph, commonly_certain_at, is_component, minimal_components, ComponentReport,
    ReachabilityGraph,
};
pub use consistency::{
    check_consistent, check_strongly_consistent, check_universally_consistent, classify,
    common_prior_is_unique, witness_vertices, ConsistencyCheck, ConsistencyLevel,
    ConsistencyVerdict, StrongCheck, UniversalCheck,
};
pub use lp::{
    solve, verify_certificate, Constraint, LinearProgram, LpOutcome, Relation, VarBounds,
};
pub use model::{EventSet, Player, ProbVector, TypeSpace, Violation};
pub use rational::Rational;
pub use single_player::{
    adequate_aggregations, audit_single_player, build_money_pump, is_conglomerable,
    is_conglomerable_over, is_disintegrable, DisintegrabilityOutcome, NonNegativeBet,
    SinglePlayerAudit,
};

/// Errors shared across analysis entry points.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Structural problem in an input (dimensions, labels, malformed data).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A precondition of the requested operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Two independent decision routes disagreed. This signals an
    /// implementation bug, never a property of the input.
    #[error("internal dichotomy failure: {0}")]
    Internal(String),
}
