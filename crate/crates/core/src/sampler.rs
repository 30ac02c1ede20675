//! Deterministic random generation of valid type spaces, for fuzz suites.
//!
//! The generator is self-contained (splitmix64) so the same seed produces the
//! same space on every platform and run. Rows are random rationals with a
//! bounded denominator, constant on cells and supported inside them, so every
//! sampled space passes validation by construction.

use crate::model::TypeSpace;
use crate::rational::Rational;

/// Splitmix64. Deterministic across platforms; not cryptographic.
#[derive(Debug, Clone)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw from `0..bound`.
    pub fn below(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        (self.next_u64() % bound as u64) as usize
    }
}

/// Shape of the sampled spaces.
#[derive(Debug, Clone)]
pub struct SpaceConfig {
    pub max_states: usize,
    pub max_players: usize,
    /// Largest denominator of any belief entry.
    pub max_denominator: usize,
}

impl Default for SpaceConfig {
    fn default() -> Self {
        SpaceConfig {
            max_states: 6,
            max_players: 3,
            max_denominator: 12,
        }
    }
}

/// Random partition of `0..n` into nonempty cells.
fn sample_partition(rng: &mut Rng, n: usize) -> Vec<Vec<usize>> {
    let num_cells = rng.below(n) + 1;
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); num_cells];
    // Guarantee nonemptiness, then scatter the rest.
    for (c, cell) in cells.iter_mut().enumerate() {
        cell.push(c);
    }
    for s in num_cells..n {
        cells[rng.below(num_cells)].push(s);
    }
    cells
}

/// Random probability row over `cell` with denominator ≤ `max_denominator`.
/// Zero entries are common on purpose: partial supports exercise the
/// reachability structure.
fn sample_row(rng: &mut Rng, n: usize, cell: &[usize], max_denominator: usize) -> Vec<Rational> {
    let mut row = vec![Rational::zero(); n];
    if cell.len() == 1 || rng.below(4) == 0 {
        // Point mass.
        let target = cell[rng.below(cell.len())];
        row[target] = Rational::one();
        return row;
    }
    let denominator = rng.below(max_denominator) + 1;
    let mut remaining = denominator;
    let mut weights = vec![0usize; cell.len()];
    // Sequential cuts concentrate mass early, so assign them in a shuffled
    // order to keep every coordinate equally likely to be charged.
    let mut order: Vec<usize> = (0..cell.len()).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, rng.below(i + 1));
    }
    for (round, &slot) in order.iter().enumerate() {
        if round + 1 == order.len() {
            weights[slot] = remaining;
        } else {
            let take = rng.below(remaining + 1);
            weights[slot] = take;
            remaining -= take;
        }
    }
    for (&state, &w) in cell.iter().zip(&weights) {
        row[state] = Rational::new(w as i64, denominator as i64).expect("denominator > 0");
    }
    row
}

/// Samples a valid type space: random state count, players, partitions, and
/// cell-constant rows supported inside their cells.
pub fn sample_space(rng: &mut Rng, config: &SpaceConfig) -> TypeSpace {
    let n = rng.below(config.max_states) + 1;
    let num_players = rng.below(config.max_players) + 1;
    let states: Vec<String> = (0..n).map(|i| format!("w{}", i + 1)).collect();
    let players = (0..num_players)
        .map(|p| {
            let cells = sample_partition(rng, n);
            let mut rows = vec![Vec::new(); n];
            for cell in &cells {
                let row = sample_row(rng, n, cell, config.max_denominator);
                for &s in cell {
                    rows[s] = row.clone();
                }
            }
            (format!("p{}", p + 1), cells, rows)
        })
        .collect();
    TypeSpace::from_parts(states, players).expect("sampled space is structurally sound")
}

/// Samples an arbitrary probability vector over `n` states with denominator
/// ≤ `max_denominator`.
pub fn sample_prob_vector(
    rng: &mut Rng,
    n: usize,
    max_denominator: usize,
) -> crate::model::ProbVector {
    let all: Vec<usize> = (0..n).collect();
    let row = sample_row(rng, n, &all, max_denominator);
    crate::model::ProbVector::new(row).expect("sampled row is a probability vector")
}

/// Samples a zero-sum payoff family for `players` over `n` states, with
/// small integer payoffs. Not guaranteed to verify as any bet kind.
pub fn sample_zero_sum_payoffs(rng: &mut Rng, players: usize, n: usize) -> Vec<Vec<Rational>> {
    let mut payoffs: Vec<Vec<Rational>> = Vec::with_capacity(players);
    for _ in 0..players.saturating_sub(1) {
        payoffs.push(
            (0..n)
                .map(|_| Rational::from_integer(rng.below(9) as i64 - 4))
                .collect(),
        );
    }
    let last: Vec<Rational> = (0..n)
        .map(|j| {
            let mut acc = Rational::zero();
            for row in &payoffs {
                acc += &row[j];
            }
            -acc
        })
        .collect();
    payoffs.push(last);
    payoffs
}
