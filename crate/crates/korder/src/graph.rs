//! Weighted digraphs and the structural primitives behind every solver:
//! acyclicity, longest paths, k-orderability, and forward-edge scoring.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use thiserror::Error;

/// A directed edge with a non-negative weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub weight: f64,
}

/// Directed graph on vertices `0..n` with weighted edges.
///
/// Parallel and antiparallel edges are allowed and kept distinct; self-loops
/// and negative weights are rejected at construction. Immutable afterwards,
/// so values can be shared freely across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph {
    n: usize,
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("edge {index}: self-loop at vertex {vertex}")]
    SelfLoop { index: usize, vertex: usize },
    #[error("edge {index}: negative weight {weight}")]
    NegativeWeight { index: usize, weight: f64 },
    #[error("edge {index}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { index: usize, vertex: usize, n: usize },
}

/// Error for operations that require a DAG; carries one witnessing cycle.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("graph contains a directed cycle through vertices {0:?}")]
pub struct CyclicGraph(pub Vec<usize>);

/// Why no k-ordering with every edge forward exists.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum KOrderError {
    #[error("graph contains a directed cycle through vertices {cycle:?}")]
    Cyclic { cycle: Vec<usize> },
    #[error("graph contains a directed path of length {k} through vertices {path:?}")]
    PathTooLong { k: usize, path: Vec<usize> },
}

impl WeightedDigraph {
    /// Builds a graph from `(tail, head, weight)` triples.
    pub fn new(n: usize, edge_list: Vec<(usize, usize, f64)>) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(edge_list.len());
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (index, (tail, head, weight)) in edge_list.into_iter().enumerate() {
            for &vertex in &[tail, head] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { index, vertex, n });
                }
            }
            if tail == head {
                return Err(GraphError::SelfLoop { index, vertex: tail });
            }
            if !(weight >= 0.0) {
                return Err(GraphError::NegativeWeight { index, weight });
            }
            out[tail].push(index);
            inc[head].push(index);
            edges.push(Edge { tail, head, weight });
        }
        Ok(Self { n, edges, out, inc })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    /// Edge ids leaving `v`.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// Edge ids entering `v`.
    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    /// Returns a copy of this graph with the weights replaced.
    pub fn with_weights(&self, weights: &[f64]) -> Result<Self, GraphError> {
        assert_eq!(weights.len(), self.edges.len());
        Self::new(
            self.n,
            self.edges
                .iter()
                .zip(weights)
                .map(|(e, &w)| (e.tail, e.head, w))
                .collect(),
        )
    }

    /// Kahn's algorithm with smallest-index tie-breaking, so the order is
    /// deterministic. Returns the witnessing cycle on failure.
    pub fn topological_order(&self) -> Result<Vec<usize>, CyclicGraph> {
        let mut indegree = vec![0usize; self.n];
        for e in &self.edges {
            indegree[e.head] += 1;
        }
        let mut ready: BinaryHeap<Reverse<usize>> = indegree
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 0)
            .map(|(v, _)| Reverse(v))
            .collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(Reverse(v)) = ready.pop() {
            order.push(v);
            for &eid in &self.out[v] {
                let h = self.edges[eid].head;
                indegree[h] -= 1;
                if indegree[h] == 0 {
                    ready.push(Reverse(h));
                }
            }
        }
        if order.len() == self.n {
            Ok(order)
        } else {
            Err(CyclicGraph(self.find_cycle().expect("cycle must exist")))
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_ok()
    }

    /// Finds some directed cycle, returned as its vertex sequence.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        // Iterative DFS with colors; on a back edge, unwind the stack.
        const WHITE: u8 = 0;
        const GRAY: u8 = 1;
        const BLACK: u8 = 2;
        let mut color = vec![WHITE; self.n];
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for start in 0..self.n {
            if color[start] != WHITE {
                continue;
            }
            stack.push((start, 0));
            color[start] = GRAY;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next < self.out[v].len() {
                    let eid = self.out[v][*next];
                    *next += 1;
                    let h = self.edges[eid].head;
                    match color[h] {
                        WHITE => {
                            color[h] = GRAY;
                            stack.push((h, 0));
                        }
                        GRAY => {
                            let pos = stack.iter().position(|&(u, _)| u == h).unwrap();
                            return Some(stack[pos..].iter().map(|&(u, _)| u).collect());
                        }
                        _ => {}
                    }
                } else {
                    color[v] = BLACK;
                    stack.pop();
                }
            }
        }
        None
    }

    /// For each vertex `v`, the edge count of the longest directed path
    /// ending at `v`, with a parent edge per vertex for path recovery.
    fn path_length_table(&self) -> Result<(Vec<usize>, Vec<Option<usize>>), CyclicGraph> {
        let order = self.topological_order()?;
        let mut len = vec![0usize; self.n];
        let mut parent: Vec<Option<usize>> = vec![None; self.n];
        for &v in &order {
            for &eid in &self.inc[v] {
                let t = self.edges[eid].tail;
                if len[t] + 1 > len[v] {
                    len[v] = len[t] + 1;
                    parent[v] = Some(eid);
                }
            }
        }
        Ok((len, parent))
    }

    /// Length (edge count) of the longest directed path. Rejects cyclic input.
    pub fn longest_path_length(&self) -> Result<usize, CyclicGraph> {
        let (len, _) = self.path_length_table()?;
        Ok(len.into_iter().max().unwrap_or(0))
    }

    /// True iff some labeling from `1..=k` sends every edge forward, i.e.
    /// the graph is acyclic with no directed path of `k` edges.
    pub fn is_k_orderable(&self, k: usize) -> bool {
        match self.longest_path_length() {
            Ok(len) => len <= k - 1,
            Err(_) => false,
        }
    }

    /// Labels each vertex with one plus the length of the longest path into
    /// it. When the graph is k-orderable this makes every edge forward; the
    /// error carries the offending cycle or a path of exactly `k` edges.
    pub fn greedy_k_labeling(&self, k: usize) -> Result<Labeling, KOrderError> {
        let (len, parent) = self
            .path_length_table()
            .map_err(|CyclicGraph(cycle)| KOrderError::Cyclic { cycle })?;
        let longest = len.iter().copied().max().unwrap_or(0);
        if longest > k - 1 {
            let v = (0..self.n).find(|&v| len[v] >= k).unwrap();
            return Err(KOrderError::PathTooLong {
                k,
                path: self.walk_parents(v, k, &parent),
            });
        }
        let labels = len.iter().map(|&t| t as u32 + 1).collect();
        Ok(Labeling::new(labels).expect("labels start at 1"))
    }

    /// Walks `steps` parent edges back from `v`; returns the path vertices.
    fn walk_parents(&self, v: usize, steps: usize, parent: &[Option<usize>]) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        for _ in 0..steps {
            let eid = parent[cur].expect("parent chain at least `steps` long");
            cur = self.edges[eid].tail;
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// Total weight of satisfied edges: `label(tail) + offset <= label(head)`,
    /// with unit offsets when `offsets` is `None`.
    pub fn forward_weight(&self, labeling: &Labeling, offsets: Option<&[u32]>) -> f64 {
        if let Some(o) = offsets {
            assert_eq!(o.len(), self.edges.len());
        }
        self.edges
            .iter()
            .enumerate()
            .filter(|(id, e)| {
                let o = offsets.map_or(1, |o| o[*id]);
                labeling.get(e.tail) + o <= labeling.get(e.head)
            })
            .map(|(_, e)| e.weight)
            .sum()
    }
}

/// An assignment of a positive integer label to every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    labels: Vec<u32>,
}

impl Labeling {
    pub fn new(labels: Vec<u32>) -> Result<Self, InvalidLabel> {
        match labels.iter().position(|&l| l == 0) {
            Some(vertex) => Err(InvalidLabel { vertex }),
            None => Ok(Self { labels }),
        }
    }

    pub fn get(&self, v: usize) -> u32 {
        self.labels[v]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.labels
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("vertex {vertex}: labels must be positive")]
pub struct InvalidLabel {
    pub vertex: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, f64)]) -> WeightedDigraph {
        WeightedDigraph::new(n, edges.to_vec()).unwrap()
    }

    fn unit(n: usize, pairs: &[(usize, usize)]) -> WeightedDigraph {
        graph(n, &pairs.iter().map(|&(u, v)| (u, v, 1.0)).collect::<Vec<_>>())
    }

    #[test]
    fn rejects_self_loops_and_negative_weights() {
        assert!(matches!(
            WeightedDigraph::new(2, vec![(0, 0, 1.0)]),
            Err(GraphError::SelfLoop { vertex: 0, .. })
        ));
        assert!(matches!(
            WeightedDigraph::new(2, vec![(0, 1, -0.5)]),
            Err(GraphError::NegativeWeight { .. })
        ));
        assert!(matches!(
            WeightedDigraph::new(2, vec![(0, 3, 1.0)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, .. })
        ));
    }

    #[test]
    fn acyclicity() {
        assert!(unit(2, &[(0, 1)]).is_acyclic());
        assert!(!unit(2, &[(0, 1), (1, 0)]).is_acyclic());
        // complete digraph on 3 vertices contains 2-cycles
        let k3 = unit(3, &[(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)]);
        assert!(!k3.is_acyclic());
        let cycle = k3.find_cycle().unwrap();
        assert!(cycle.len() >= 2);
    }

    #[test]
    fn longest_path() {
        let path = unit(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(path.longest_path_length().unwrap(), 3);

        let lonely = unit(1, &[]);
        assert_eq!(lonely.longest_path_length().unwrap(), 0);

        // diamond: two routes 0->3, both of length 2
        let diamond = unit(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(diamond.longest_path_length().unwrap(), 2);

        assert!(unit(2, &[(0, 1), (1, 0)]).longest_path_length().is_err());
    }

    // Exhaustive path enumeration oracle: longest directed path by DFS
    // over all simple paths (weights ignored, every edge usable once).
    fn longest_path_bruteforce(g: &WeightedDigraph) -> usize {
        fn dfs(g: &WeightedDigraph, v: usize, used: &mut Vec<bool>) -> usize {
            let mut best = 0;
            for &eid in g.out_edges(v) {
                if !used[eid] {
                    used[eid] = true;
                    best = best.max(1 + dfs(g, g.edge(eid).head, used));
                    used[eid] = false;
                }
            }
            best
        }
        let mut used = vec![false; g.edge_count()];
        (0..g.vertex_count())
            .map(|v| dfs(g, v, &mut used))
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn longest_path_matches_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.random_range(2..7);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.5) && edges.len() < 12 {
                        edges.push((u, v, 1.0));
                    }
                }
            }
            let g = graph(n, &edges);
            assert_eq!(
                g.longest_path_length().unwrap(),
                longest_path_bruteforce(&g)
            );
        }
    }

    #[test]
    fn k_orderability() {
        // path of exactly k edges is not k-orderable, k-1 edges is
        let k = 4;
        let path_k = unit(k + 1, &(0..k).map(|i| (i, i + 1)).collect::<Vec<_>>());
        assert!(!path_k.is_k_orderable(k));
        let path_km1 = unit(k, &(0..k - 1).map(|i| (i, i + 1)).collect::<Vec<_>>());
        assert!(path_km1.is_k_orderable(k));
        assert!(!unit(2, &[(0, 1), (1, 0)]).is_k_orderable(5));
    }

    #[test]
    fn greedy_labeling_saturates_weight() {
        let path = unit(3, &[(0, 1), (1, 2)]);
        let l = path.greedy_k_labeling(3).unwrap();
        assert_eq!(l.as_slice(), &[1, 2, 3]);
        assert_eq!(path.forward_weight(&l, None), 2.0);

        let diamond = unit(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        let l = diamond.greedy_k_labeling(3).unwrap();
        assert_eq!(l.as_slice(), &[1, 2, 2, 3]);
        assert_eq!(diamond.forward_weight(&l, None), diamond.total_weight());

        let single = unit(1, &[]);
        assert_eq!(single.greedy_k_labeling(2).unwrap().as_slice(), &[1]);
    }

    #[test]
    fn greedy_labeling_certificates() {
        let cyc = unit(3, &[(0, 1), (1, 2), (2, 0)]);
        match cyc.greedy_k_labeling(3) {
            Err(KOrderError::Cyclic { cycle }) => assert_eq!(cycle.len(), 3),
            other => panic!("expected cycle certificate, got {other:?}"),
        }
        let path = unit(4, &[(0, 1), (1, 2), (2, 3)]);
        match path.greedy_k_labeling(2) {
            Err(KOrderError::PathTooLong { k, path }) => {
                assert_eq!(k, 2);
                assert_eq!(path.len(), 3); // exactly k edges
            }
            other => panic!("expected path certificate, got {other:?}"),
        }
    }

    #[test]
    fn forward_weight_with_offsets() {
        let two_cycle = unit(2, &[(0, 1), (1, 0)]);
        let l = Labeling::new(vec![1, 2]).unwrap();
        assert_eq!(two_cycle.forward_weight(&l, None), 1.0);

        let path = unit(3, &[(0, 1), (1, 2)]);
        let l = Labeling::new(vec![1, 2, 3]).unwrap();
        assert_eq!(path.forward_weight(&l, None), 2.0);

        let single = unit(2, &[(0, 1)]);
        let l12 = Labeling::new(vec![1, 2]).unwrap();
        let l13 = Labeling::new(vec![1, 3]).unwrap();
        assert_eq!(single.forward_weight(&l12, Some(&[2])), 0.0);
        assert_eq!(single.forward_weight(&l13, Some(&[2])), 1.0);
    }

    // k-orderability agrees with brute-force labeling search on small graphs.
    #[test]
    fn k_orderable_iff_some_labeling_all_forward() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for trial in 0..40 {
            let n = rng.random_range(2..5usize);
            let k = rng.random_range(2..4usize);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.random_bool(0.35) {
                        edges.push((u, v, 1.0));
                    }
                }
            }
            let g = graph(n, &edges);
            let mut exists = false;
            let total = (k as u64).pow(n as u32);
            for code in 0..total {
                let mut c = code;
                let labels: Vec<u32> = (0..n)
                    .map(|_| {
                        let l = (c % k as u64) as u32 + 1;
                        c /= k as u64;
                        l
                    })
                    .collect();
                let l = Labeling::new(labels).unwrap();
                if g.forward_weight(&l, None) == g.total_weight() && g.edge_count() > 0 {
                    exists = true;
                    break;
                }
            }
            if g.edge_count() == 0 {
                assert!(g.is_k_orderable(k), "trial {trial}");
            } else {
                assert_eq!(g.is_k_orderable(k), exists, "trial {trial}");
            }
        }
    }
}
