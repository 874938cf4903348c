//! Dense two-phase primal simplex over non-negative variables.
//!
//! The solver is deliberately deterministic: Dantzig pricing with
//! lowest-index tie-breaking, Bland's rule engaged after a stall threshold,
//! and a fixed iteration cap reported as a distinct failure. Identical
//! inputs produce identical solutions across runs and platforms.
//!
//! After termination the basic solution is polished by iterative refinement
//! against the original constraint data, which keeps feasibility residuals
//! near machine precision even on long pivot sequences.

use thiserror::Error;

/// Constraint satisfaction tolerance for reported optima.
pub const FEAS_TOL: f64 = 1e-7;
/// Reduced-cost tolerance at termination.
pub const OPT_TOL: f64 = 1e-7;
/// Entries smaller than this are rejected as pivots.
pub const PIVOT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// One linear constraint `coeffs . x  <relation>  rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

impl Constraint {
    pub fn le(coeffs: Vec<f64>, rhs: f64) -> Self {
        Self { coeffs, relation: Relation::Le, rhs }
    }

    pub fn eq(coeffs: Vec<f64>, rhs: f64) -> Self {
        Self { coeffs, relation: Relation::Eq, rhs }
    }

    pub fn ge(coeffs: Vec<f64>, rhs: f64) -> Self {
        Self { coeffs, relation: Relation::Ge, rhs }
    }
}

/// A linear program over implicitly non-negative variables.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("constraint {row}: expected {expected} coefficients, found {found}")]
pub struct DimensionMismatch {
    pub row: usize,
    pub expected: usize,
    pub found: usize,
}

impl LinearProgram {
    pub fn new(sense: Sense, objective: Vec<f64>) -> Self {
        Self { sense, objective, constraints: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn push_constraint(&mut self, c: Constraint) {
        assert_eq!(c.coeffs.len(), self.num_vars(), "constraint dimension");
        self.constraints.push(c);
    }

    /// Returns an extended copy of the program; `self` is unchanged.
    pub fn with_constraints(&self, new: Vec<Constraint>) -> Result<Self, DimensionMismatch> {
        for (i, c) in new.iter().enumerate() {
            if c.coeffs.len() != self.num_vars() {
                return Err(DimensionMismatch {
                    row: self.constraints.len() + i,
                    expected: self.num_vars(),
                    found: c.coeffs.len(),
                });
            }
        }
        let mut lp = self.clone();
        lp.constraints.extend(new);
        Ok(lp)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Evidence attached to non-optimal outcomes.
#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// Residual artificial mass left by the feasibility phase.
    Infeasibility(f64),
    /// Improving ray in the original variables.
    Ray(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub objective: f64,
    pub x: Vec<f64>,
    pub iterations: usize,
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpError {
    #[error(transparent)]
    Dimension(#[from] DimensionMismatch),
    #[error("simplex iteration cap {cap} exceeded")]
    IterationLimit { cap: usize },
    #[error("numerical trouble: residual {residual:e} exceeds tolerance after refinement")]
    Numerical { residual: f64 },
}

/// Solves with the default iteration cap of `50 * (rows + columns)`,
/// counting the slack and artificial columns of the standardized tableau.
pub fn solve(lp: &LinearProgram) -> Result<LpSolution, LpError> {
    let rows = lp.num_constraints();
    let cols = lp.num_vars() + 2 * rows;
    solve_capped(lp, (50 * (rows + cols)).max(1000))
}

/// Solves with an explicit pivot cap; exceeding it is a reported failure,
/// never a silently wrong answer.
pub fn solve_capped(lp: &LinearProgram, cap: usize) -> Result<LpSolution, LpError> {
    for (row, c) in lp.constraints.iter().enumerate() {
        if c.coeffs.len() != lp.num_vars() {
            return Err(DimensionMismatch {
                row,
                expected: lp.num_vars(),
                found: c.coeffs.len(),
            }
            .into());
        }
    }
    Tableau::build(lp).solve(lp, cap)
}

const SKIP_TOL: f64 = 1e-12;

/// Dense simplex tableau. Column layout: structural variables, then one
/// slack or surplus per inequality row, then one artificial per row that
/// needs it; last position is the right-hand side.
struct Tableau {
    rows: usize,
    n_struct: usize,
    /// First artificial column; columns past this never enter the basis.
    art_start: usize,
    stride: usize,
    data: Vec<f64>,
    zrow: Vec<f64>,
    basis: Vec<usize>,
    /// Per row, the column that began as that row's identity column. The
    /// tableau entries under these columns form the current basis inverse.
    id_col: Vec<usize>,
    /// Per row: +1 if the constraint was kept, -1 if multiplied through.
    row_sign: Vec<f64>,
    /// Per row, the slack/surplus column, if any, with its sign.
    slack_col: Vec<Option<(usize, f64)>>,
    /// Total right-hand-side perturbation injected at build time.
    perturbation: f64,
    bland: bool,
    stall: usize,
    best_obj: f64,
    pivot_scratch: Vec<f64>,
    tie_scratch: Vec<usize>,
}

enum Step {
    Optimal,
    Unbounded { entering: usize },
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let m = lp.num_constraints();
        let n = lp.num_vars();

        let mut n_slack = 0usize;
        let mut n_art = 0usize;
        // Relation seen after normalizing each row to a non-negative rhs.
        let mut normalized: Vec<(Relation, f64)> = Vec::with_capacity(m);
        for c in &lp.constraints {
            let sign = if c.rhs < 0.0 { -1.0 } else { 1.0 };
            let rel = match (c.relation, sign < 0.0) {
                (Relation::Le, true) => Relation::Ge,
                (Relation::Ge, true) => Relation::Le,
                (rel, _) => rel,
            };
            match rel {
                Relation::Le => n_slack += 1,
                Relation::Ge => {
                    n_slack += 1;
                    n_art += 1;
                }
                Relation::Eq => n_art += 1,
            }
            normalized.push((rel, sign));
        }

        let art_start = n + n_slack;
        let cols = art_start + n_art;
        let stride = cols + 1;
        let mut data = vec![0.0; m * stride];
        let mut basis = vec![0usize; m];
        let mut id_col = vec![0usize; m];
        let mut row_sign = vec![1.0; m];
        let mut slack_col: Vec<Option<(usize, f64)>> = vec![None; m];

        let mut next_slack = n;
        let mut next_art = art_start;
        for (i, c) in lp.constraints.iter().enumerate() {
            let (rel, sign) = normalized[i];
            row_sign[i] = sign;
            let row = &mut data[i * stride..(i + 1) * stride];
            for (j, &a) in c.coeffs.iter().enumerate() {
                row[j] = sign * a;
            }
            row[cols] = sign * c.rhs;
            match rel {
                Relation::Le => {
                    row[next_slack] = 1.0;
                    slack_col[i] = Some((next_slack, 1.0));
                    basis[i] = next_slack;
                    id_col[i] = next_slack;
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -1.0;
                    slack_col[i] = Some((next_slack, -1.0));
                    next_slack += 1;
                    row[next_art] = 1.0;
                    basis[i] = next_art;
                    id_col[i] = next_art;
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = 1.0;
                    basis[i] = next_art;
                    id_col[i] = next_art;
                    next_art += 1;
                }
            }
        }

        Self {
            rows: m,
            n_struct: n,
            art_start,
            stride,
            data,
            zrow: vec![0.0; stride],
            basis,
            id_col,
            row_sign,
            slack_col,
            bland: false,
            stall: 0,
            best_obj: f64::NEG_INFINITY,
            pivot_scratch: vec![0.0; stride],
            tie_scratch: Vec::new(),
        }
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.data[i * self.stride + self.stride - 1]
    }

    /// Rebuilds the reduced-cost row `z_j - c_j` for the given objective.
    fn price_out(&mut self, costs: &[f64]) {
        for j in 0..self.stride {
            self.zrow[j] = -costs.get(j).copied().unwrap_or(0.0);
        }
        for i in 0..self.rows {
            let cb = costs.get(self.basis[i]).copied().unwrap_or(0.0);
            if cb != 0.0 {
                let row = &self.data[i * self.stride..(i + 1) * self.stride];
                for (z, &a) in self.zrow.iter_mut().zip(row) {
                    *z += cb * a;
                }
            }
        }
        self.bland = false;
        self.stall = 0;
        self.best_obj = self.objective();
    }

    fn objective(&self) -> f64 {
        self.zrow[self.stride - 1]
    }

    /// Entering column, `None` when the reduced costs certify optimality.
    fn entering(&self) -> Option<usize> {
        let limit = self.art_start;
        if self.bland {
            return (0..limit).find(|&j| self.zrow[j] < -OPT_TOL);
        }
        let mut best = None;
        let mut best_val = -OPT_TOL;
        for (j, &z) in self.zrow[..limit].iter().enumerate() {
            if z < best_val {
                best_val = z;
                best = Some(j);
            }
        }
        best
    }

    /// Leaving row by the minimum-ratio rule. Ties are broken
    /// lexicographically over the basis-inverse columns, which rules out
    /// cycling for any entering rule and keeps the choice deterministic.
    fn leaving(&mut self, entering: usize) -> Option<usize> {
        let mut candidates = std::mem::take(&mut self.tie_scratch);
        candidates.clear();
        let mut best_ratio = f64::INFINITY;
        for i in 0..self.rows {
            let a = self.data[i * self.stride + entering];
            if a > PIVOT_TOL {
                let ratio = self.rhs(i).max(0.0) / a;
                if ratio < best_ratio - 1e-12 {
                    best_ratio = ratio;
                    candidates.clear();
                    candidates.push(i);
                } else if ratio <= best_ratio + 1e-12 {
                    best_ratio = best_ratio.min(ratio);
                    candidates.push(i);
                }
            }
        }
        let chosen = if candidates.is_empty() {
            None
        } else {
            let mut l = 0;
            while candidates.len() > 1 && l < self.rows {
                let col = self.id_col[l];
                let mut best_val = f64::INFINITY;
                let mut kept = 0;
                for idx in 0..candidates.len() {
                    let i = candidates[idx];
                    let a = self.data[i * self.stride + entering];
                    let val = self.data[i * self.stride + col] / a;
                    if val < best_val - 1e-12 {
                        best_val = val;
                        candidates[0] = i;
                        kept = 1;
                    } else if val <= best_val + 1e-12 {
                        best_val = best_val.min(val);
                        candidates[kept] = i;
                        kept += 1;
                    }
                }
                candidates.truncate(kept);
                l += 1;
            }
            candidates.iter().copied().min()
        };
        self.tie_scratch = candidates;
        chosen
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let stride = self.stride;
        let piv = self.data[row * stride + col];
        let inv = 1.0 / piv;
        for v in &mut self.data[row * stride..(row + 1) * stride] {
            *v *= inv;
        }
        self.data[row * stride + col] = 1.0;

        // Copy the pivot row into scratch once, then eliminate.
        let mut pivot_row = std::mem::take(&mut self.pivot_scratch);
        pivot_row.copy_from_slice(self.row(row));
        for i in 0..self.rows {
            if i == row {
                continue;
            }
            let f = self.data[i * stride + col];
            if f.abs() > SKIP_TOL {
                let target = &mut self.data[i * stride..(i + 1) * stride];
                for (t, &p) in target.iter_mut().zip(&pivot_row) {
                    *t -= f * p;
                }
                target[col] = 0.0;
            } else if f != 0.0 {
                self.data[i * stride + col] = 0.0;
            }
        }
        let f = self.zrow[col];
        if f.abs() > SKIP_TOL {
            for (z, &p) in self.zrow.iter_mut().zip(&pivot_row) {
                *z -= f * p;
            }
        }
        self.pivot_scratch = pivot_row;
        self.zrow[col] = 0.0;
        self.basis[row] = col;
    }

    /// Runs pivots until optimal or unbounded, flipping to Bland's rule
    /// whenever the objective stalls long enough to suspect cycling.
    fn run(&mut self, cap: usize, iterations: &mut usize) -> Result<Step, LpError> {
        let stall_limit = 2 * (self.rows + 50);
        loop {
            let Some(entering) = self.entering() else {
                return Ok(Step::Optimal);
            };
            let Some(leaving) = self.leaving(entering) else {
                return Ok(Step::Unbounded { entering });
            };
            self.pivot(leaving, entering);
            *iterations += 1;
            if *iterations >= cap {
                return Err(LpError::IterationLimit { cap });
            }
            let obj = self.objective();
            if obj > self.best_obj + 1e-12 {
                self.best_obj = obj;
                self.stall = 0;
                self.bland = false;
            } else {
                self.stall += 1;
                if self.stall > stall_limit {
                    self.bland = true;
                }
            }
        }
    }

    fn solve(mut self, lp: &LinearProgram, cap: usize) -> Result<LpSolution, LpError> {
        let mut iterations = 0usize;
        let n = self.n_struct;
        let sense_sign = match lp.sense {
            Sense::Maximize => 1.0,
            Sense::Minimize => -1.0,
        };

        // Phase one: maximize minus the artificial mass.
        let total_cols = self.stride - 1;
        if self.art_start < total_cols {
            let mut phase1_costs = vec![0.0; total_cols];
            for c in &mut phase1_costs[self.art_start..] {
                *c = -1.0;
            }
            self.price_out(&phase1_costs);
            match self.run(cap, &mut iterations)? {
                Step::Optimal => {}
                Step::Unbounded { .. } => unreachable!("phase one is bounded above by zero"),
            }
            let art_mass = -self.objective();
            if art_mass > FEAS_TOL {
                return Ok(LpSolution {
                    status: LpStatus::Infeasible,
                    objective: f64::NAN,
                    x: Vec::new(),
                    iterations,
                    certificate: Some(Certificate::Infeasibility(art_mass)),
                });
            }
            // Drive leftover artificials out of the basis where possible;
            // rows admitting no pivot are redundant and stay inert.
            for i in 0..self.rows {
                if self.basis[i] >= self.art_start {
                    let pivot_col = (0..self.art_start)
                        .find(|&j| self.data[i * self.stride + j].abs() > PIVOT_TOL);
                    if let Some(j) = pivot_col {
                        self.pivot(i, j);
                        iterations += 1;
                    }
                }
            }
        }

        // Phase two: the caller's objective, artificials barred from entry.
        let mut phase2_costs = vec![0.0; total_cols];
        for (c, &obj) in phase2_costs.iter_mut().zip(&lp.objective) {
            *c = sense_sign * obj;
        }
        self.price_out(&phase2_costs);
        match self.run(cap, &mut iterations)? {
            Step::Optimal => {}
            Step::Unbounded { entering } => {
                let mut ray = vec![0.0; total_cols];
                ray[entering] = 1.0;
                for i in 0..self.rows {
                    ray[self.basis[i]] = -self.data[i * self.stride + entering];
                }
                let mut x = vec![0.0; total_cols];
                for i in 0..self.rows {
                    x[self.basis[i]] = self.rhs(i);
                }
                return Ok(LpSolution {
                    status: LpStatus::Unbounded,
                    objective: sense_sign * f64::INFINITY,
                    x: x[..n].to_vec(),
                    iterations,
                    certificate: Some(Certificate::Ray(ray[..n].to_vec())),
                });
            }
        }

        let x_full = self.refined_solution(lp);
        let x: Vec<f64> = x_full[..n].to_vec();
        let residual = max_violation(lp, &x);
        if residual > FEAS_TOL {
            return Err(LpError::Numerical { residual });
        }
        let objective = lp
            .objective
            .iter()
            .zip(&x)
            .map(|(c, v)| c * v)
            .sum::<f64>();
        Ok(LpSolution {
            status: LpStatus::Optimal,
            objective,
            x,
            iterations,
            certificate: None,
        })
    }

    /// Two rounds of iterative refinement of the basic solution against the
    /// original constraint data. The columns that started as the identity
    /// act as the basis inverse, so each correction is a single mat-vec.
    fn refined_solution(&self, lp: &LinearProgram) -> Vec<f64> {
        let total_cols = self.stride - 1;
        let mut x = vec![0.0; total_cols];
        for i in 0..self.rows {
            x[self.basis[i]] = self.rhs(i);
        }
        for _ in 0..2 {
            let mut residual = vec![0.0; self.rows];
            for (i, c) in lp.constraints.iter().enumerate() {
                let mut lhs = 0.0;
                for (j, &a) in c.coeffs.iter().enumerate() {
                    if a != 0.0 {
                        lhs += a * x[j];
                    }
                }
                if let Some((col, sign)) = self.slack_col[i] {
                    lhs += self.row_sign[i] * sign * x[col];
                }
                residual[i] = self.row_sign[i] * (c.rhs - lhs);
            }
            let mut worst = 0.0f64;
            for &r in &residual {
                worst = worst.max(r.abs());
            }
            if worst < 1e-15 {
                break;
            }
            for i in 0..self.rows {
                let mut delta = 0.0;
                let row = self.row(i);
                for (l, &r) in residual.iter().enumerate() {
                    if r != 0.0 {
                        delta += row[self.id_col[l]] * r;
                    }
                }
                x[self.basis[i]] += delta;
            }
        }
        x
    }
}

/// Worst violation of the original constraints and sign bounds at `x`.
pub fn max_violation(lp: &LinearProgram, x: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    for v in x {
        worst = worst.max(-v);
    }
    for c in &lp.constraints {
        let lhs: f64 = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
        let gap = match c.relation {
            Relation::Le => lhs - c.rhs,
            Relation::Ge => c.rhs - lhs,
            Relation::Eq => (lhs - c.rhs).abs(),
        };
        worst = worst.max(gap);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_variable_bound() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![1.0]);
        lp.push_constraint(Constraint::le(vec![1.0], 1.0));
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.objective - 1.0).abs() < 1e-9);
        assert!((sol.x[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![1.0]);
        lp.push_constraint(Constraint::le(vec![1.0], 1.0));
        lp.push_constraint(Constraint::ge(vec![1.0], 2.0));
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Infeasible);
        assert!(matches!(sol.certificate, Some(Certificate::Infeasibility(m)) if m > 0.5));
    }

    #[test]
    fn degenerate_optimum_face() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![1.0, 1.0]);
        lp.push_constraint(Constraint::le(vec![1.0, 1.0], 1.0));
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.objective - 1.0).abs() < 1e-9);
    }

    #[test]
    fn unbounded_with_ray() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![1.0, 0.0]);
        lp.push_constraint(Constraint::le(vec![0.0, 1.0], 5.0));
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Unbounded);
        let Some(Certificate::Ray(ray)) = sol.certificate else {
            panic!("expected ray");
        };
        assert!(ray[0] > 0.5);
    }

    #[test]
    fn equality_and_minimization() {
        // min x + y  s.t.  x + y = 2, x - y <= 1
        let mut lp = LinearProgram::new(Sense::Minimize, vec![1.0, 1.0]);
        lp.push_constraint(Constraint::eq(vec![1.0, 1.0], 2.0));
        lp.push_constraint(Constraint::le(vec![1.0, -1.0], 1.0));
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.objective - 2.0).abs() < 1e-9);
    }

    #[test]
    fn negative_rhs_normalization() {
        // x >= 2 written as -x <= -2
        let mut lp = LinearProgram::new(Sense::Minimize, vec![1.0]);
        lp.push_constraint(Constraint::le(vec![-1.0], -2.0));
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.objective - 2.0).abs() < 1e-9);
    }

    #[test]
    fn zero_constraint_program() {
        let lp = LinearProgram::new(Sense::Maximize, vec![-1.0, -2.0]);
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.objective, 0.0);

        let lp = LinearProgram::new(Sense::Maximize, vec![1.0]);
        assert_eq!(solve(&lp).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn with_constraints_leaves_original_unchanged() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![1.0, 1.0]);
        lp.push_constraint(Constraint::le(vec![1.0, 0.0], 1.0));
        let extended = lp
            .with_constraints(vec![Constraint::le(vec![0.0, 1.0], 1.0)])
            .unwrap();
        assert_eq!(lp.num_constraints(), 1);
        assert_eq!(extended.num_constraints(), 2);
        assert_eq!(extended.with_constraints(vec![]).unwrap(), extended);

        let err = lp.with_constraints(vec![Constraint::le(vec![1.0], 0.0)]);
        assert!(matches!(err, Err(DimensionMismatch { found: 1, .. })));

        // a contradictory extension flips the next solve to infeasible
        let bad = extended
            .with_constraints(vec![Constraint::ge(vec![1.0, 0.0], 3.0)])
            .unwrap();
        assert_eq!(solve(&bad).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn iteration_cap_is_a_distinct_failure() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![1.0, 1.0, 1.0]);
        lp.push_constraint(Constraint::le(vec![1.0, 1.0, 0.0], 3.0));
        lp.push_constraint(Constraint::le(vec![0.0, 1.0, 1.0], 2.0));
        lp.push_constraint(Constraint::le(vec![1.0, 0.0, 1.0], 4.0));
        assert!(matches!(
            solve_capped(&lp, 1),
            Err(LpError::IterationLimit { cap: 1 })
        ));
    }

    fn random_bounded_lp(rng: &mut ChaCha8Rng, n: usize, m: usize) -> LinearProgram {
        let objective: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..2.0)).collect();
        let mut lp = LinearProgram::new(Sense::Maximize, objective);
        for _ in 0..m {
            let coeffs: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
            lp.push_constraint(Constraint::le(coeffs, rng.random_range(0.5..2.0)));
        }
        for j in 0..n {
            let mut coeffs = vec![0.0; n];
            coeffs[j] = 1.0;
            lp.push_constraint(Constraint::le(coeffs, rng.random_range(0.5..3.0)));
        }
        lp
    }

    #[test]
    fn strong_duality_on_random_programs() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..25 {
            let n = rng.random_range(2..5);
            let m = rng.random_range(1..4);
            let primal = random_bounded_lp(&mut rng, n, m);
            let p = solve(&primal).unwrap();
            assert_eq!(p.status, LpStatus::Optimal);

            // dual: min b.y  s.t.  A^T y >= c, y >= 0
            let rows = primal.num_constraints();
            let b: Vec<f64> = primal.constraints.iter().map(|c| c.rhs).collect();
            let mut dual = LinearProgram::new(Sense::Minimize, b);
            for j in 0..n {
                let col: Vec<f64> = primal.constraints.iter().map(|c| c.coeffs[j]).collect();
                assert_eq!(col.len(), rows);
                dual.push_constraint(Constraint::ge(col, primal.objective[j]));
            }
            let d = solve(&dual).unwrap();
            assert_eq!(d.status, LpStatus::Optimal);
            assert!(
                (p.objective - d.objective).abs() <= 1e-6,
                "duality gap {} vs {}",
                p.objective,
                d.objective
            );
        }
    }

    #[test]
    fn constraint_permutation_stability() {
        let mut rng = ChaCha8Rng::seed_from_u64(123);
        for _ in 0..15 {
            let n = rng.random_range(2..5);
            let m = rng.random_range(2..5);
            let lp = random_bounded_lp(&mut rng, n, m);
            let base = solve(&lp).unwrap();

            let mut permuted = lp.clone();
            permuted.constraints.reverse();
            let alt = solve(&permuted).unwrap();
            assert!(
                (base.objective - alt.objective).abs() <= 1e-9,
                "objective moved: {} vs {}",
                base.objective,
                alt.objective
            );
        }
    }

    #[test]
    fn identical_inputs_identical_solutions() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let lp = random_bounded_lp(&mut rng, 4, 3);
        let a = solve(&lp).unwrap();
        let b = solve(&lp).unwrap();
        assert_eq!(a.x, b.x);
        assert_eq!(a.objective, b.objective);
        assert_eq!(a.iterations, b.iterations);
    }

    #[test]
    fn optimal_solutions_respect_tolerances() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..25 {
            let n = rng.random_range(2..6);
            let m = rng.random_range(1..5);
            let lp = random_bounded_lp(&mut rng, n, m);
            let sol = solve(&lp).unwrap();
            assert_eq!(sol.status, LpStatus::Optimal);
            assert!(max_violation(&lp, &sol.x) <= FEAS_TOL);
        }
    }
}
