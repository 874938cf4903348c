//! LP-rounding approximation algorithms for digraph ordering problems.
//!
//! Three related problems over weighted digraphs share this crate:
//!
//! - **Max-k-Ordering** — label vertices from `1..=k` to maximize the weight
//!   of edges whose head gets a strictly larger label than its tail. Solved
//!   by rounding a label-pair LP relaxation with a per-edge factor-2
//!   guarantee, plus an exact derandomization.
//! - **OffsetRMAS** — each vertex carries its own finite set of allowed
//!   labels and each edge an integer offset that the label gap must cover.
//!   A biased variant of the same rounding gives a ~2.344 approximation.
//! - **DAG edge deletion** — remove minimum-weight edges from a DAG so no
//!   directed path of `k` edges survives. Both a local-ratio scheme and
//!   LP row generation with threshold rounding give k-approximations.
//!
//! Exact brute-force oracles, instance generators, text formats, and a
//! benchmark/verification CLI round out the toolkit. Every randomized
//! routine takes an explicit seed and is reproducible bit for bit.
//!
//! Start with the runnable examples: `cargo run --example maxk_rounding`,
//! `cargo run --example dag_edge_deletion`, and friends.

pub mod cli;
pub mod ded;
pub mod exact;
pub mod graph;
pub mod instances;
pub mod lp;
pub mod ordering;
pub mod rmas;

pub use graph::{Labeling, WeightedDigraph};
pub use lp::{LinearProgram, LpSolution, LpStatus};
