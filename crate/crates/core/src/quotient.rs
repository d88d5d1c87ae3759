//! Weighted quotient graphs and deconstruction.
//!
//! A [`WeightedGraph`] is an undirected graph with optional loops and a
//! positive weight on each vertex. The quotient of a simple graph by `~`
//! has one vertex per class (weight = class size, loop iff the class is
//! complete with at least two vertices). Deconstruction goes the other way:
//! vertex `i` becomes a block of `wt(i)` vertices, complete if `i` has a loop
//! and edgeless otherwise, and blocks `i != j` are joined completely when
//! `ij` is an edge.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::canon::{self, CanonConfig, CanonicalCode};
use crate::equivalence::{decompose, ClassKind};
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexSet, MAX_VERTICES};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightedGraph {
    weights: Vec<u32>,
    /// Adjacency rows; bit `i` of row `i` is the loop at `i`.
    adj: Vec<u64>,
}

impl WeightedGraph {
    /// `edges` may contain loops `(i, i)`; duplicates are merged.
    pub fn new(weights: Vec<u32>, edges: &[(usize, usize)]) -> Result<Self> {
        let k = weights.len();
        if k > MAX_VERTICES {
            return Err(Error::capability(format!(
                "weighted graphs are limited to {MAX_VERTICES} vertices, got {k}"
            )));
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(Error::input(format!("vertex {i} has weight 0")));
        }
        let mut adj = vec![0u64; k];
        for &(i, j) in edges {
            for v in [i, j] {
                if v >= k {
                    return Err(Error::VertexOutOfRange { vertex: v, n: k });
                }
            }
            adj[i] |= 1u64 << j;
            adj[j] |= 1u64 << i;
        }
        Ok(WeightedGraph { weights, adj })
    }

    /// Trusted constructor for enumerators: rows symmetric, weights positive.
    pub(crate) fn from_parts(weights: Vec<u32>, adj: Vec<u64>) -> Self {
        debug_assert_eq!(weights.len(), adj.len());
        WeightedGraph { weights, adj }
    }

    pub fn k(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn total_weight(&self) -> usize {
        self.weights.iter().map(|&w| w as usize).sum()
    }

    pub fn has_loop(&self, i: usize) -> bool {
        self.adj[i] >> i & 1 == 1
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.k() && j < self.k() && self.adj[i] >> j & 1 == 1
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    /// Edges `(i, j)` with `i <= j`, loops included, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.k() {
            for j in VertexSet(self.adj[i] >> i << i).iter() {
                out.push((i, j));
            }
        }
        out
    }

    /// Open neighborhood in the weighted graph; contains `i` iff `i` has a loop.
    pub fn open_neighborhood(&self, i: usize) -> VertexSet {
        VertexSet(self.adj[i])
    }

    pub fn closed_neighborhood(&self, i: usize) -> VertexSet {
        VertexSet(self.adj[i] | 1u64 << i)
    }

    /// Connectivity ignoring loops. The graph on zero vertices is not connected.
    pub fn is_connected(&self) -> bool {
        let k = self.k();
        if k == 0 {
            return false;
        }
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0u64;
            for v in VertexSet(frontier).iter() {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == VertexSet::full(k).0
    }

    /// Relabel: vertex `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let k = self.k();
        if perm.len() != k || perm.iter().collect::<std::collections::BTreeSet<_>>().len() != k || perm.iter().any(|&p| p >= k) {
            return Err(Error::input("not a permutation of the weighted graph's vertices"));
        }
        let mut weights = vec![0; k];
        let mut adj = vec![0u64; k];
        for i in 0..k {
            weights[perm[i]] = self.weights[i];
            for j in VertexSet(self.adj[i]).iter() {
                adj[perm[i]] |= 1u64 << perm[j];
            }
        }
        Ok(WeightedGraph { weights, adj })
    }

    pub fn to_json_value(&self) -> WeightedGraphJson {
        WeightedGraphJson {
            k: self.k(),
            weights: self.weights.clone(),
            edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("weighted graph JSON serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: WeightedGraphJson = serde_json::from_str(text)
            .map_err(|e| Error::input(format!("weighted graph JSON: {e}")))?;
        raw.try_into()
    }

    /// Weights become labels; loops are drawn as self-edges.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph Q {\n");
        for i in 0..self.k() {
            let shape = if self.has_loop(i) { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  {i} [label=\"{}\", shape={shape}];", self.weights[i]);
        }
        for (i, j) in self.edges() {
            let _ = writeln!(s, "  {i} -- {j};");
        }
        s.push_str("}\n");
        s
    }
}

impl std::fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "WeightedGraph(weights={:?}, edges={:?})", self.weights, self.edges())
    }
}

/// `{"k": int, "weights": [...], "edges": [[i, j], ...]}`, loops as `[i, i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedGraphJson {
    pub k: usize,
    pub weights: Vec<u32>,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<WeightedGraphJson> for WeightedGraph {
    type Error = Error;

    fn try_from(raw: WeightedGraphJson) -> Result<Self> {
        if raw.weights.len() != raw.k {
            return Err(Error::input(format!(
                "k = {} but {} weights given",
                raw.k,
                raw.weights.len()
            )));
        }
        let edges: Vec<_> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
        WeightedGraph::new(raw.weights, &edges)
    }
}

/// The quotient `G/~` with class sizes as weights, classes ordered as in
/// [`decompose`].
pub fn quotient(g: &SimpleGraph) -> Result<WeightedGraph> {
    let d = decompose(g)?;
    let k = d.classes.len();
    let mut adj = vec![0u64; k];
    let reps: Vec<usize> = d.classes.iter().map(|c| c.vertices.min().expect("nonempty class")).collect();
    for i in 0..k {
        if d.classes[i].kind == ClassKind::Complete {
            adj[i] |= 1u64 << i;
        }
        for j in 0..k {
            if i != j && g.has_edge(reps[i], reps[j]) {
                adj[i] |= 1u64 << j;
            }
        }
    }
    let weights = d.classes.iter().map(|c| c.size() as u32).collect();
    Ok(WeightedGraph { weights, adj })
}

/// Vertex ranges of the blocks `D_i` in a deconstruction.
pub fn block_ranges(w: &WeightedGraph) -> Vec<std::ops::Range<usize>> {
    let mut start = 0;
    w.weights
        .iter()
        .map(|&wt| {
            let r = start..start + wt as usize;
            start = r.end;
            r
        })
        .collect()
}

/// Blow each weighted vertex up into a block; blocks occupy consecutive
/// labels in vertex order.
pub fn deconstruct(w: &WeightedGraph) -> Result<SimpleGraph> {
    if let Some(i) = w.weights.iter().position(|&wt| wt == 0) {
        return Err(Error::input(format!("vertex {i} has weight 0")));
    }
    let n = w.total_weight();
    if n > MAX_VERTICES {
        return Err(Error::capability(format!(
            "deconstruction has {n} vertices, above the {MAX_VERTICES}-vertex limit"
        )));
    }
    let blocks = block_ranges(w);
    let masks: Vec<u64> = blocks
        .iter()
        .map(|r| VertexSet::full(r.end).0 & !VertexSet::full(r.start).0)
        .collect();
    let mut rows = vec![0u64; n];
    for i in 0..w.k() {
        let mut row = 0u64;
        for j in VertexSet(w.adj[i]).iter() {
            row |= masks[j];
        }
        for x in blocks[i].clone() {
            rows[x] = row & !(1u64 << x);
        }
    }
    Ok(SimpleGraph::from_rows_unchecked(rows))
}

/// Sufficient conditions for the deconstruction to be Anosov: connected,
/// every weight at least 2, no loop on a weight-2 vertex, and a lone vertex
/// must carry a loop (otherwise its block is an edgeless, disconnected
/// graph).
pub fn check_anosov_criteria(w: &WeightedGraph) -> bool {
    if !w.is_connected() {
        return false;
    }
    if w.k() == 1 && !w.has_loop(0) {
        return false;
    }
    (0..w.k()).all(|i| w.weights[i] >= 2 && !(w.weights[i] == 2 && w.has_loop(i)))
}

/// Distinct vertices with the same loop status have distinct neighborhoods
/// (closed ones when looped, open ones otherwise).
pub fn distinct_neighborhoods(w: &WeightedGraph) -> bool {
    for i in 0..w.k() {
        for j in i + 1..w.k() {
            match (w.has_loop(i), w.has_loop(j)) {
                (true, true) if w.closed_neighborhood(i) == w.closed_neighborhood(j) => return false,
                (false, false) if w.open_neighborhood(i) == w.open_neighborhood(j) => return false,
                _ => {}
            }
        }
    }
    true
}

/// No two rows of the adjacency matrix (loop indicator on the diagonal) are
/// equal.
pub fn distinct_rows(w: &WeightedGraph) -> bool {
    let k = w.k();
    let matrix: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..k).map(|j| w.has_edge(i, j)).collect())
        .collect();
    for i in 0..k {
        for j in i + 1..k {
            if matrix[i] == matrix[j] {
                return false;
            }
        }
    }
    true
}

/// Anosov criteria plus neighborhood distinctness: the deconstruction is
/// Anosov and its quotient is `w` again. Checks the row formulation of
/// distinctness against the neighborhood formulation in debug builds.
pub fn check_brick_conditions(w: &WeightedGraph) -> bool {
    let by_neighborhoods = distinct_neighborhoods(w);
    debug_assert_eq!(by_neighborhoods, distinct_rows(w), "{w:?}");
    check_anosov_criteria(w) && by_neighborhoods
}

/// Weighted-isomorphism invariant: equal codes iff a bijection preserves
/// edges, loops, and weights.
pub fn weighted_canonical_code(w: &WeightedGraph) -> Result<CanonicalCode> {
    weighted_canonical_code_with(w, &CanonConfig::default())
}

pub fn weighted_canonical_code_with(w: &WeightedGraph, config: &CanonConfig) -> Result<CanonicalCode> {
    canon::weighted_code(&w.weights, &w.adj, config)
}
