//! Max-k-Ordering: the label-pair LP relaxation, randomized rounding with a
//! per-edge factor-2 guarantee, exact expectations, and a deterministic
//! derandomization by conditional expectations.
//!
//! The LP has a marginal `x[v][i]` for assigning label `i+1` to vertex `v`
//! and a pair weight `y[e][i][j]` for the endpoints of edge `e` receiving
//! labels `i+1, j+1`. Rows of `y[e]` marginalize to the tail's `x`, columns
//! to the head's, and the objective collects the strictly-upper-triangular
//! mass of every edge.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Labeling, WeightedDigraph};
use crate::lp::{self, Constraint, LinearProgram, LpError, LpSolution, LpStatus, Sense};

/// Slack allowed when checking the rounding guarantees.
pub const GUARANTEE_TOL: f64 = 1e-9;
/// The per-edge rounding guarantee: forward probability >= factor * lp share.
pub const GUARANTEE_FACTOR: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BuildError {
    #[error("label count k must be at least 2, got {0}")]
    KTooSmall(usize),
    #[error("instance has no vertices")]
    EmptyGraph,
}

/// Variable layout of the ordering LP: `n*k` vertex marginals followed by
/// `m*k*k` per-edge pair weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarMap {
    pub n: usize,
    pub m: usize,
    pub k: usize,
}

impl VarMap {
    /// Column of `x[v][label i]`, `i` zero-based.
    pub fn x(&self, v: usize, i: usize) -> usize {
        v * self.k + i
    }

    /// Column of `y[e][i][j]`, labels zero-based.
    pub fn y(&self, e: usize, i: usize, j: usize) -> usize {
        self.n * self.k + e * self.k * self.k + i * self.k + j
    }

    pub fn num_vars(&self) -> usize {
        self.n * self.k + self.m * self.k * self.k
    }
}

/// Builds the relaxation: maximize the forward pair mass subject to the
/// vertex normalization and row/column marginalization equalities.
pub fn build_maxk_lp(
    g: &WeightedDigraph,
    k: usize,
) -> Result<(LinearProgram, VarMap), BuildError> {
    if k < 2 {
        return Err(BuildError::KTooSmall(k));
    }
    if g.vertex_count() == 0 {
        return Err(BuildError::EmptyGraph);
    }
    let map = VarMap { n: g.vertex_count(), m: g.edge_count(), k };
    let nv = map.num_vars();

    let mut objective = vec![0.0; nv];
    for (e, edge) in g.edges().iter().enumerate() {
        for i in 0..k {
            for j in (i + 1)..k {
                objective[map.y(e, i, j)] = edge.weight;
            }
        }
    }
    let mut lp = LinearProgram::new(Sense::Maximize, objective);

    for v in 0..map.n {
        let mut row = vec![0.0; nv];
        for i in 0..k {
            row[map.x(v, i)] = 1.0;
        }
        lp.push_constraint(Constraint::eq(row, 1.0));
    }
    for (e, edge) in g.edges().iter().enumerate() {
        for i in 0..k {
            let mut row = vec![0.0; nv];
            for l in 0..k {
                row[map.y(e, i, l)] = 1.0;
            }
            row[map.x(edge.tail, i)] = -1.0;
            lp.push_constraint(Constraint::eq(row, 0.0));
        }
        for j in 0..k {
            let mut row = vec![0.0; nv];
            for l in 0..k {
                row[map.y(e, l, j)] = 1.0;
            }
            row[map.x(edge.head, j)] = -1.0;
            lp.push_constraint(Constraint::eq(row, 0.0));
        }
    }
    Ok((lp, map))
}

/// An optimal fractional solution of the ordering LP.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalOrderingSolution {
    pub k: usize,
    /// `x[v][i]`: marginal probability of label `i+1` at vertex `v`.
    pub x: Vec<Vec<f64>>,
    /// `y[e][i * k + j]`: pair weight for edge `e` and labels `i+1, j+1`.
    pub y: Vec<Vec<f64>>,
    pub objective: f64,
}

impl FractionalOrderingSolution {
    pub fn from_lp(map: &VarMap, sol: &LpSolution) -> Self {
        let k = map.k;
        let x = (0..map.n)
            .map(|v| (0..k).map(|i| sol.x[map.x(v, i)]).collect())
            .collect();
        let y = (0..map.m)
            .map(|e| {
                let mut grid = vec![0.0; k * k];
                for i in 0..k {
                    for j in 0..k {
                        grid[i * k + j] = sol.x[map.y(e, i, j)];
                    }
                }
                grid
            })
            .collect();
        Self { k, x, y, objective: sol.objective }
    }

    /// Edge `e`'s contribution to the LP objective: its strictly-upper
    /// triangular pair mass.
    pub fn lp_share(&self, e: usize) -> f64 {
        let k = self.k;
        let grid = &self.y[e];
        let mut z = 0.0;
        for i in 0..k {
            for j in (i + 1)..k {
                z += grid[i * k + j];
            }
        }
        z
    }

    /// Checks the marginalization identities this type promises: unit
    /// vertex sums, row sums matching the tail marginals, column sums
    /// matching the head marginals, and near-non-negative entries.
    pub fn validate(&self, g: &WeightedDigraph) -> Result<(), InvariantViolation> {
        let k = self.k;
        for (v, xv) in self.x.iter().enumerate() {
            let sum: f64 = xv.iter().sum();
            if (sum - 1.0).abs() > 1e-6 {
                return Err(InvariantViolation::VertexSum { v, sum });
            }
            if let Some(&bad) = xv.iter().find(|&&p| p < -1e-9) {
                return Err(InvariantViolation::Negative { value: bad });
            }
        }
        for (e, grid) in self.y.iter().enumerate() {
            if let Some(&bad) = grid.iter().find(|&&p| p < -1e-9) {
                return Err(InvariantViolation::Negative { value: bad });
            }
            let edge = g.edge(e);
            for i in 0..k {
                let row: f64 = (0..k).map(|j| grid[i * k + j]).sum();
                if (row - self.x[edge.tail][i]).abs() > 1e-6 {
                    return Err(InvariantViolation::RowSum {
                        e,
                        i,
                        gap: row - self.x[edge.tail][i],
                    });
                }
                let col: f64 = (0..k).map(|j| grid[j * k + i]).sum();
                if (col - self.x[edge.head][i]).abs() > 1e-6 {
                    return Err(InvariantViolation::ColSum {
                        e,
                        i,
                        gap: col - self.x[edge.head][i],
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvariantViolation {
    #[error("vertex {v}: label marginals sum to {sum}, expected 1")]
    VertexSum { v: usize, sum: f64 },
    #[error("edge {e}, label {i}: row sum off by {gap:e}")]
    RowSum { e: usize, i: usize, gap: f64 },
    #[error("edge {e}, label {i}: column sum off by {gap:e}")]
    ColSum { e: usize, i: usize, gap: f64 },
    #[error("negative entry {value:e}")]
    Negative { value: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("relaxation reported {0:?}, which cannot happen on a well-formed instance")]
    UnexpectedStatus(LpStatus),
}

/// Builds and solves the relaxation, returning the extracted solution.
pub fn solve_maxk(
    g: &WeightedDigraph,
    k: usize,
) -> Result<FractionalOrderingSolution, SolveError> {
    let (lp, map) = build_maxk_lp(g, k)?;
    let sol = lp::solve(&lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(SolveError::UnexpectedStatus(sol.status));
    }
    Ok(FractionalOrderingSolution::from_lp(&map, &sol))
}

/// The rounding distribution: vertex `v` takes label `i+1` with probability
/// `1/(2k) + x[v][i]/2`, independently of all other vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundingDistribution {
    probs: Vec<Vec<f64>>,
}

impl RoundingDistribution {
    pub fn from_solution(sol: &FractionalOrderingSolution) -> Self {
        let k = sol.k;
        let probs = sol
            .x
            .iter()
            .map(|xv| {
                let clean = sanitize_marginals(xv);
                clean
                    .iter()
                    .map(|&p| 1.0 / (2.0 * k as f64) + p / 2.0)
                    .collect()
            })
            .collect();
        Self { probs }
    }

    pub fn probabilities(&self) -> &[Vec<f64>] {
        &self.probs
    }

    /// Independent per-vertex draw; a fixed seed reproduces the labeling.
    pub fn sample(&self, seed: u64) -> Labeling {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        sample_labelling(&self.probs, &mut rng)
    }
}

/// Clamps stray negatives and renormalizes to an exact unit sum, so the
/// rounding probabilities form a genuine distribution.
fn sanitize_marginals(x: &[f64]) -> Vec<f64> {
    let mut clean: Vec<f64> = x.iter().map(|&p| p.max(0.0)).collect();
    let sum: f64 = clean.iter().sum();
    if sum > 0.0 {
        for p in &mut clean {
            *p /= sum;
        }
    } else {
        let k = clean.len();
        clean = vec![1.0 / k as f64; k];
    }
    clean
}

fn sample_labelling(probs: &[Vec<f64>], rng: &mut ChaCha8Rng) -> Labeling {
    let labels = probs
        .iter()
        .map(|pv| {
            let u: f64 = rng.random();
            let mut acc = 0.0;
            for (i, &p) in pv.iter().enumerate() {
                acc += p;
                if u < acc {
                    return (i + 1) as u32;
                }
            }
            pv.len() as u32
        })
        .collect();
    Labeling::new(labels).expect("labels start at 1")
}

/// Samples the rounding distribution of `sol` once.
pub fn round_labeling(sol: &FractionalOrderingSolution, seed: u64) -> Labeling {
    RoundingDistribution::from_solution(sol).sample(seed)
}

/// Exact expected forward weight when each vertex draws independently from
/// `probs`. For edge `(u, v)`: sum over `i < j` of `p_u(i) p_v(j)`.
pub fn expected_forward_weight(g: &WeightedDigraph, probs: &[Vec<f64>]) -> f64 {
    g.edges()
        .iter()
        .map(|e| e.weight * forward_probability(&probs[e.tail], &probs[e.head], 1))
        .sum()
}

/// `Pr[label(u) + offset <= label(v)]` for independent draws; labels are
/// the positions `1..=len`.
fn forward_probability(pu: &[f64], pv: &[f64], offset: usize) -> f64 {
    // prefix[i] = Pr[label(u) <= i], labels 1-based
    let mut acc = 0.0;
    let mut prefix = vec![0.0; pu.len() + 1];
    for (i, &p) in pu.iter().enumerate() {
        acc += p;
        prefix[i + 1] = acc;
    }
    let mut total = 0.0;
    for (j, &q) in pv.iter().enumerate() {
        let label_v = j + 1;
        if label_v >= offset + 1 {
            let max_u = (label_v - offset).min(pu.len());
            total += q * prefix[max_u];
        }
    }
    total
}

/// Exact expectation of the rounded value, no sampling involved.
pub fn expected_rounded_value(g: &WeightedDigraph, sol: &FractionalOrderingSolution) -> f64 {
    let dist = RoundingDistribution::from_solution(sol);
    expected_forward_weight(g, dist.probabilities())
}

/// One edge's exact forward probability under the rounding, next to its LP
/// share; `holds` records `probability >= share/2 - tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeGuarantee {
    pub edge: usize,
    pub forward_probability: f64,
    pub lp_share: f64,
    pub holds: bool,
}

pub fn per_edge_guarantee(
    g: &WeightedDigraph,
    sol: &FractionalOrderingSolution,
) -> Vec<EdgeGuarantee> {
    let dist = RoundingDistribution::from_solution(sol);
    let probs = dist.probabilities();
    g.edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| {
            let p = forward_probability(&probs[edge.tail], &probs[edge.head], 1);
            let z = sol.lp_share(e);
            EdgeGuarantee {
                edge: e,
                forward_probability: p,
                lp_share: z,
                holds: p >= GUARANTEE_FACTOR * z - GUARANTEE_TOL,
            }
        })
        .collect()
}

/// Fixes vertices one at a time to the label maximizing the conditional
/// expectation of the rounded value; the result is never below the
/// unconditioned expectation. Vertices are processed in topological order
/// on DAGs and index order otherwise; label ties break low.
pub fn derandomize(g: &WeightedDigraph, sol: &FractionalOrderingSolution) -> Labeling {
    let dist = RoundingDistribution::from_solution(sol);
    let probs = dist.probabilities();
    let k = sol.k;
    let order = g
        .topological_order()
        .unwrap_or_else(|_| (0..g.vertex_count()).collect());

    let mut fixed: Vec<Option<usize>> = vec![None; g.vertex_count()];
    for &v in &order {
        let mut best_label = 0usize;
        let mut best_gain = f64::NEG_INFINITY;
        for c in 0..k {
            let mut gain = 0.0;
            for &eid in g.out_edges(v) {
                let edge = g.edge(eid);
                gain += edge.weight
                    * match fixed[edge.head] {
                        Some(d) => {
                            if c < d {
                                1.0
                            } else {
                                0.0
                            }
                        }
                        None => probs[edge.head][c + 1..].iter().sum::<f64>(),
                    };
            }
            for &eid in g.in_edges(v) {
                let edge = g.edge(eid);
                gain += edge.weight
                    * match fixed[edge.tail] {
                        Some(d) => {
                            if d < c {
                                1.0
                            } else {
                                0.0
                            }
                        }
                        None => probs[edge.tail][..c].iter().sum::<f64>(),
                    };
            }
            if gain > best_gain + 1e-15 {
                best_gain = gain;
                best_label = c;
            }
        }
        fixed[v] = Some(best_label);
    }
    let labels = fixed
        .into_iter()
        .map(|c| c.expect("all vertices fixed") as u32 + 1)
        .collect();
    Labeling::new(labels).expect("labels start at 1")
}

/// The uniform baseline: every vertex draws a label from `1..=k` uniformly.
/// Each edge goes forward with probability `(k-1)/(2k)`.
pub fn random_k_ordering(g: &WeightedDigraph, k: usize, seed: u64) -> Labeling {
    assert!(k >= 2, "label count k must be at least 2");
    let probs = vec![vec![1.0 / k as f64; k]; g.vertex_count()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_labelling(&probs, &mut rng)
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("offset {theta} out of range 1..={max} for a {k}x{k} matrix")]
pub struct ThetaOutOfRange {
    pub theta: usize,
    pub k: usize,
    pub max: usize,
}

/// Both sides of the row/column product inequality that drives the rounding
/// analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductBound {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// For a non-negative `k x k` matrix `a` and an integer offset `theta`,
/// checks that the products of row and column sums taken over the pairs
/// `i + theta <= j` dominate `(k-theta+1)/(2(k-theta))` times the squared
/// mass of `a` over the same pairs.
pub fn rowcol_product_bound(
    a: &[Vec<f64>],
    theta: usize,
) -> Result<ProductBound, ThetaOutOfRange> {
    let k = a.len();
    assert!(a.iter().all(|row| row.len() == k), "matrix must be square");
    if theta < 1 || theta > k.saturating_sub(1) {
        return Err(ThetaOutOfRange { theta, k, max: k.saturating_sub(1) });
    }
    let row_sum: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let col_sum: Vec<f64> = (0..k).map(|j| a.iter().map(|row| row[j]).sum()).collect();

    let mut lhs = 0.0;
    let mut mass = 0.0;
    // 1-based labels: admissible pairs have (i+1) + theta <= (j+1)
    for i in 0..k {
        for j in 0..k {
            if i + theta <= j {
                lhs += row_sum[i] * col_sum[j];
                mass += a[i][j];
            }
        }
    }
    let factor = (k - theta + 1) as f64 / (2.0 * (k - theta) as f64);
    let rhs = factor * mass * mass;
    Ok(ProductBound { lhs, rhs, holds: lhs >= rhs - GUARANTEE_TOL })
}
