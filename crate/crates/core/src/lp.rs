//! Certificate-producing linear programming over exact rationals.
//!
//! Every consistency and bet question in this crate is decided here. The
//! solver is a dense two-phase simplex with Bland's pivot rule, so it
//! terminates on every input and is fully deterministic. Outcomes carry
//! machine-checkable evidence:
//!
//! - `Optimal` — a solution vector satisfying every constraint exactly;
//! - `Infeasible` — a Farkas vector `y` with the correct sign per relation,
//!   `yᵀA = 0` componentwise and `yᵀb > 0`, which no feasible point can admit;
//! - `Unbounded` — a ray that preserves feasibility and strictly improves the
//!   objective.
//!
//! [`verify_certificate`] checks any outcome against its program from scratch;
//! downstream modules call it before trusting a result. Speed is a non-goal:
//! reproducible certificates beat pivoting heuristics at the problem sizes
//! this crate targets.

use crate::rational::Rational;
use serde::{Deserialize, Serialize};

/// Constraint relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// One linear constraint `coeffs · x REL rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
        }
    }
}

/// Optional lower/upper bounds for one variable. Variables are free unless
/// bounded here; nonnegativity must be stated explicitly.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarBounds {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl VarBounds {
    pub fn free() -> Self {
        VarBounds::default()
    }

    pub fn nonnegative() -> Self {
        VarBounds {
            lower: Some(Rational::zero()),
            upper: None,
        }
    }

    pub fn boxed(lower: Rational, upper: Rational) -> Self {
        VarBounds {
            lower: Some(lower),
            upper: Some(upper),
        }
    }
}

/// A maximization program `max c·x` subject to constraint rows and variable
/// bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<VarBounds>,
}

/// Structural error in a [`LinearProgram`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("program has no variables")]
    NoVariables,
    #[error("constraint {index} has {found} coefficients, expected {expected}")]
    RowDimension {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("bounds vector has length {found}, expected {expected}")]
    BoundsDimension { found: usize, expected: usize },
}

/// Result of [`solve`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        solution: Vec<Rational>,
    },
    /// `farkas` indexes the rows of [`LinearProgram::expanded_constraints`].
    Infeasible {
        farkas: Vec<Rational>,
    },
    Unbounded {
        ray: Vec<Rational>,
    },
}

impl LinearProgram {
    pub fn new(
        objective: Vec<Rational>,
        constraints: Vec<Constraint>,
        bounds: Vec<VarBounds>,
    ) -> Self {
        LinearProgram {
            objective,
            constraints,
            bounds,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    fn check_shape(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        if n == 0 {
            return Err(LpError::NoVariables);
        }
        for (index, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(LpError::RowDimension {
                    index,
                    found: c.coeffs.len(),
                    expected: n,
                });
            }
        }
        if self.bounds.len() != n {
            return Err(LpError::BoundsDimension {
                found: self.bounds.len(),
                expected: n,
            });
        }
        Ok(())
    }

    /// The constraint list with variable bounds materialized as rows: first
    /// every user constraint in order, then for each variable its lower-bound
    /// row (`x_j ≥ l_j`) followed by its upper-bound row (`x_j ≤ u_j`), when
    /// present. Farkas certificates index this list.
    pub fn expanded_constraints(&self) -> Vec<Constraint> {
        let n = self.num_vars();
        let mut rows = self.constraints.clone();
        for (j, b) in self.bounds.iter().enumerate() {
            let unit = |j: usize| {
                let mut coeffs = vec![Rational::zero(); n];
                coeffs[j] = Rational::one();
                coeffs
            };
            if let Some(lower) = &b.lower {
                rows.push(Constraint::new(unit(j), Relation::Ge, lower.clone()));
            }
            if let Some(upper) = &b.upper {
                rows.push(Constraint::new(unit(j), Relation::Le, upper.clone()));
            }
        }
        rows
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// Checks an outcome against its program from scratch, in exact arithmetic.
/// Returns `false` on any mismatch, including structural ones.
pub fn verify_certificate(lp: &LinearProgram, outcome: &LpOutcome) -> bool {
    if lp.check_shape().is_err() {
        return false;
    }
    let n = lp.num_vars();
    match outcome {
        LpOutcome::Optimal { value, solution } => {
            if solution.len() != n {
                return false;
            }
            for c in &lp.constraints {
                let lhs = dot(&c.coeffs, solution);
                let ok = match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                };
                if !ok {
                    return false;
                }
            }
            for (x, b) in solution.iter().zip(&lp.bounds) {
                if b.lower.as_ref().is_some_and(|l| x < l) {
                    return false;
                }
                if b.upper.as_ref().is_some_and(|u| x > u) {
                    return false;
                }
            }
            dot(&lp.objective, solution) == *value
        }
        LpOutcome::Infeasible { farkas } => {
            let rows = lp.expanded_constraints();
            if farkas.len() != rows.len() {
                return false;
            }
            let mut combination = vec![Rational::zero(); n];
            let mut rhs_combination = Rational::zero();
            for (mu, row) in farkas.iter().zip(&rows) {
                let sign_ok = match row.relation {
                    Relation::Le => !mu.is_positive(),
                    Relation::Eq => true,
                    Relation::Ge => !mu.is_negative(),
                };
                if !sign_ok {
                    return false;
                }
                if mu.is_zero() {
                    continue;
                }
                for (acc, a) in combination.iter_mut().zip(&row.coeffs) {
                    *acc += &(mu * a);
                }
                rhs_combination += &(mu * &row.rhs);
            }
            combination.iter().all(Rational::is_zero) && rhs_combination.is_positive()
        }
        LpOutcome::Unbounded { ray } => {
            if ray.len() != n {
                return false;
            }
            for c in &lp.constraints {
                let along = dot(&c.coeffs, ray);
                let ok = match c.relation {
                    Relation::Le => !along.is_positive(),
                    Relation::Eq => along.is_zero(),
                    Relation::Ge => !along.is_negative(),
                };
                if !ok {
                    return false;
                }
            }
            for (d, b) in ray.iter().zip(&lp.bounds) {
                if b.lower.is_some() && d.is_negative() {
                    return false;
                }
                if b.upper.is_some() && d.is_positive() {
                    return false;
                }
            }
            dot(&lp.objective, ray).is_positive()
        }
    }
}

/// Dense simplex tableau over the split standard form
/// `max c·x  s.t.  Ax = b, x ≥ 0, b ≥ 0`.
struct Tableau {
    /// `rows × (cols + 1)`; the last column is the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// Basic variable (column index) per row.
    basis: Vec<usize>,
    /// Reduced cost per column.
    reduced: Vec<Rational>,
    /// Current objective value.
    objective_value: Rational,
    cols: usize,
}

enum PivotStep {
    Optimal,
    Unbounded { entering: usize },
    Pivoted,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.cols]
    }

    /// One Bland step: entering = lowest-index column with positive reduced
    /// cost, leaving = lowest basic-variable index among minimum-ratio rows.
    fn step(&mut self) -> PivotStep {
        let Some(entering) = (0..self.cols).find(|&j| self.reduced[j].is_positive()) else {
            return PivotStep::Optimal;
        };
        let mut leaving: Option<(usize, Rational)> = None;
        for r in 0..self.rows.len() {
            let coeff = &self.rows[r][entering];
            if !coeff.is_positive() {
                continue;
            }
            let ratio = self.rhs(r) / coeff;
            let better = match &leaving {
                None => true,
                Some((best_row, best_ratio)) => {
                    ratio < *best_ratio
                        || (ratio == *best_ratio && self.basis[r] < self.basis[*best_row])
                }
            };
            if better {
                leaving = Some((r, ratio));
            }
        }
        match leaving {
            None => PivotStep::Unbounded { entering },
            Some((r, _)) => {
                self.pivot(r, entering);
                PivotStep::Pivoted
            }
        }
    }

    fn pivot(&mut self, pivot_row: usize, entering: usize) {
        let inverse = self.rows[pivot_row][entering]
            .recip()
            .expect("pivot element is nonzero");
        for cell in self.rows[pivot_row].iter_mut() {
            if !cell.is_zero() {
                *cell = &*cell * &inverse;
            }
        }
        let source = self.rows[pivot_row].clone();
        for (r, row) in self.rows.iter_mut().enumerate() {
            if r == pivot_row || row[entering].is_zero() {
                continue;
            }
            let factor = row[entering].clone();
            for (cell, src) in row.iter_mut().zip(&source) {
                if !src.is_zero() {
                    *cell -= &(&factor * src);
                }
            }
        }
        let delta = self.reduced[entering].clone();
        if !delta.is_zero() {
            self.objective_value += &(&delta * &source[self.cols]);
            for (cell, src) in self.reduced.iter_mut().zip(&source) {
                if !src.is_zero() {
                    *cell -= &(&delta * src);
                }
            }
        }
        self.basis[pivot_row] = entering;
    }

    fn run(&mut self) -> Option<usize> {
        loop {
            match self.step() {
                PivotStep::Optimal => return None,
                PivotStep::Unbounded { entering } => return Some(entering),
                PivotStep::Pivoted => {}
            }
        }
    }
}

/// Solves the program. Deterministic: identical inputs produce identical
/// outcomes. The returned certificate always passes [`verify_certificate`].
pub fn solve(lp: &LinearProgram) -> Result<LpOutcome, LpError> {
    lp.check_shape()?;
    let n = lp.num_vars();
    let rows = lp.expanded_constraints();
    let m = rows.len();

    // Split columns: x_j = pos_j - neg_j with pos, neg ≥ 0, then one slack
    // per inequality row, then one artificial per row.
    let num_slacks = rows.iter().filter(|c| c.relation != Relation::Eq).count();
    let slack_start = 2 * n;
    let art_start = slack_start + num_slacks;
    let cols = art_start + m;

    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut row_sign = Vec::with_capacity(m);
    let mut next_slack = slack_start;
    for (r, c) in rows.iter().enumerate() {
        let mut row = vec![Rational::zero(); cols + 1];
        for (j, a) in c.coeffs.iter().enumerate() {
            row[j] = a.clone();
            row[n + j] = -a;
        }
        match c.relation {
            Relation::Le => {
                row[next_slack] = Rational::one();
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -Rational::one();
                next_slack += 1;
            }
            Relation::Eq => {}
        }
        row[cols] = c.rhs.clone();
        let flip = row[cols].is_negative();
        if flip {
            for cell in row.iter_mut() {
                *cell = -&*cell;
            }
        }
        row_sign.push(if flip {
            -Rational::one()
        } else {
            Rational::one()
        });
        row[art_start + r] = Rational::one();
        tab.push(row);
    }

    // Phase 1: maximize -Σ artificials starting from the artificial basis.
    let mut reduced = vec![Rational::zero(); cols];
    let mut objective_value = Rational::zero();
    for row in &tab {
        for (j, item) in reduced.iter_mut().enumerate().take(art_start) {
            *item += &row[j];
        }
        objective_value -= &row[cols];
    }
    let mut tableau = Tableau {
        rows: tab,
        basis: (art_start..art_start + m).collect(),
        reduced,
        objective_value,
        cols,
    };
    let unbounded = tableau.run();
    assert!(
        unbounded.is_none(),
        "phase-1 objective is bounded above by zero"
    );

    if tableau.objective_value.is_negative() {
        // Infeasible. The simplex multipliers of the artificial columns form
        // the Farkas combination once mapped back through the row signs.
        let mut farkas = Vec::with_capacity(m);
        for (r, sign) in row_sign.iter().enumerate() {
            // reduced cost of artificial r is -1 - y_r, so -y_r = 1 + reduced.
            let minus_y = Rational::one() + &tableau.reduced[art_start + r];
            farkas.push(&minus_y * sign);
        }
        let outcome = LpOutcome::Infeasible { farkas };
        assert!(
            verify_certificate(lp, &outcome),
            "solver produced an invalid infeasibility certificate"
        );
        return Ok(outcome);
    }

    // Drive basic artificials out of the basis (their values are zero), then
    // drop the artificial columns and redundant rows.
    let mut r = 0;
    while r < tableau.rows.len() {
        if tableau.basis[r] >= art_start {
            let entering = (0..art_start).find(|&j| !tableau.rows[r][j].is_zero());
            match entering {
                Some(j) => tableau.pivot(r, j),
                None => {
                    tableau.rows.remove(r);
                    tableau.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }
    for row in tableau.rows.iter_mut() {
        let rhs = row.pop().expect("row has rhs");
        row.truncate(art_start);
        row.push(rhs);
    }
    tableau.cols = art_start;

    // Phase 2: install the real objective (over split columns) and re-derive
    // reduced costs against the current basis.
    let mut cost = vec![Rational::zero(); art_start];
    for j in 0..n {
        cost[j] = lp.objective[j].clone();
        cost[n + j] = -&lp.objective[j];
    }
    let mut reduced = cost.clone();
    let mut objective_value = Rational::zero();
    for (r, row) in tableau.rows.iter().enumerate() {
        let basic_cost = cost[tableau.basis[r]].clone();
        if basic_cost.is_zero() {
            continue;
        }
        objective_value += &(&basic_cost * &row[tableau.cols]);
        for (cell, a) in reduced.iter_mut().zip(row.iter()) {
            if !a.is_zero() {
                *cell -= &(&basic_cost * a);
            }
        }
    }
    tableau.reduced = reduced;
    tableau.objective_value = objective_value;

    if let Some(entering) = tableau.run() {
        let mut direction = vec![Rational::zero(); art_start];
        direction[entering] = Rational::one();
        for (r, &b) in tableau.basis.iter().enumerate() {
            direction[b] = -&tableau.rows[r][entering];
        }
        let ray: Vec<Rational> = (0..n).map(|j| &direction[j] - &direction[n + j]).collect();
        let outcome = LpOutcome::Unbounded { ray };
        assert!(
            verify_certificate(lp, &outcome),
            "solver produced an invalid unboundedness certificate"
        );
        return Ok(outcome);
    }

    let mut split = vec![Rational::zero(); art_start];
    for (r, &b) in tableau.basis.iter().enumerate() {
        split[b] = tableau.rows[r][tableau.cols].clone();
    }
    let solution: Vec<Rational> = (0..n).map(|j| &split[j] - &split[n + j]).collect();
    let outcome = LpOutcome::Optimal {
        value: tableau.objective_value.clone(),
        solution,
    };
    assert!(
        verify_certificate(lp, &outcome),
        "solver produced an invalid optimal certificate"
    );
    Ok(outcome)
}

/// Exact Gaussian elimination: solves `A x = b` when the solution is unique,
/// returning `None` when the system is inconsistent or underdetermined.
pub(crate) fn solve_unique(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    if m == 0 {
        return None;
    }
    let n = a[0].len();
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut v = row.clone();
            v.push(rhs.clone());
            v
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivot_cols = Vec::new();
    for col in 0..n {
        let Some(r) = (pivot_row..m).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(pivot_row, r);
        let inv = aug[pivot_row][col].recip().expect("nonzero pivot");
        for cell in aug[pivot_row].iter_mut() {
            if !cell.is_zero() {
                *cell = &*cell * &inv;
            }
        }
        let source = aug[pivot_row].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (cell, src) in row.iter_mut().zip(&source) {
                if !src.is_zero() {
                    *cell -= &(&factor * src);
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == m {
            break;
        }
    }
    // Inconsistent if a zero row has nonzero rhs.
    for row in aug.iter().skip(pivot_row) {
        if row[..n].iter().all(Rational::is_zero) && !row[n].is_zero() {
            return None;
        }
    }
    if pivot_cols.len() < n {
        return None; // underdetermined
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &col) in pivot_cols.iter().enumerate() {
        x[col] = aug[r][n].clone();
    }
    Some(x)
}
