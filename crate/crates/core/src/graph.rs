//! Simple (loop-free, undirected) graphs stored as one adjacency bitset per
//! vertex.
//!
//! Rows are `u64` words, so a graph has at most [`MAX_VERTICES`] vertices.
//! Two vertices have equal open neighborhoods exactly when their rows are
//! equal, which makes the twin relation a word comparison.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// A set of vertices of a graph on at most 64 vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_char('{')?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_char(',')?;
            }
            write!(f, "{v}")?;
        }
        f.write_char('}')
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// Loop-free undirected graph on the vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u64>,
}

impl SimpleGraph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::capability(format!(
                "graphs are limited to {MAX_VERTICES} vertices, got {n}"
            )));
        }
        Ok(SimpleGraph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = SimpleGraph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = SimpleGraph::new(n)?;
        for v in 0..n {
            g.adj[v] = VertexSet::full(n).0 & !(1u64 << v);
        }
        Ok(g)
    }

    /// Build from raw adjacency rows. Rows must be symmetric, loop-free and
    /// confined to `0..n`.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(Error::capability(format!(
                "graphs are limited to {MAX_VERTICES} vertices, got {n}"
            )));
        }
        let full = VertexSet::full(n).0;
        for (v, &row) in rows.iter().enumerate() {
            if row & !full != 0 {
                return Err(Error::input(format!("row {v} has bits outside 0..{n}")));
            }
            if row >> v & 1 == 1 {
                return Err(Error::input(format!("self-loop at vertex {v}")));
            }
            for u in VertexSet(row).iter() {
                if rows[u] >> v & 1 == 0 {
                    return Err(Error::input(format!("asymmetric adjacency between {v} and {u}")));
                }
            }
        }
        Ok(SimpleGraph { n, adj: rows })
    }

    /// Rows are trusted; used by enumerators that maintain symmetry themselves.
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        SimpleGraph { n: rows.len(), adj: rows }
    }

    pub(crate) fn rows_mut(&mut self) -> &mut [u64] {
        &mut self.adj
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::input(format!("self-loop at vertex {u} in a simple graph")));
        }
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in VertexSet(self.adj[u] >> u >> 1 << u << 1).iter() {
                out.push((u, v));
            }
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Open neighborhood `N(v)`, or closed neighborhood `N(v) ∪ {v}`.
    pub fn neighborhood(&self, v: usize, closed: bool) -> Result<VertexSet> {
        self.check_vertex(v)?;
        let mut row = self.adj[v];
        if closed {
            row |= 1u64 << v;
        }
        Ok(VertexSet(row))
    }

    pub(crate) fn open_row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub(crate) fn closed_row(&self, v: usize) -> u64 {
        self.adj[v] | 1u64 << v
    }

    /// True iff every vertex is reachable from vertex 0. Undefined (an input
    /// error) for the graph on zero vertices.
    pub fn is_connected(&self) -> Result<bool> {
        if self.n == 0 {
            return Err(Error::input("connectivity is undefined for the empty graph"));
        }
        Ok(reachable_from_zero(&self.adj) == VertexSet::full(self.n).0)
    }

    pub(crate) fn is_connected_fast(&self) -> bool {
        self.n > 0 && reachable_from_zero(&self.adj) == VertexSet::full(self.n).0
    }

    /// Relabel: vertex `v` of `self` becomes vertex `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::input("permutation length does not match vertex count"));
        }
        let mut seen = VertexSet::EMPTY;
        for &p in perm {
            if p >= self.n || seen.contains(p) {
                return Err(Error::input("not a permutation"));
            }
            seen.insert(p);
        }
        let mut rows = vec![0u64; self.n];
        for u in 0..self.n {
            for v in VertexSet(self.adj[u]).iter() {
                rows[perm[u]] |= 1u64 << perm[v];
            }
        }
        Ok(SimpleGraph { n: self.n, adj: rows })
    }

    /// Subgraph induced on `vertices`, relabelled in increasing order.
    pub fn induced(&self, vertices: VertexSet) -> SimpleGraph {
        let order = vertices.to_vec();
        let mut rows = vec![0u64; order.len()];
        for (i, &u) in order.iter().enumerate() {
            for (j, &v) in order.iter().enumerate() {
                if self.adj[u] >> v & 1 == 1 {
                    rows[i] |= 1u64 << j;
                }
            }
        }
        SimpleGraph::from_rows_unchecked(rows)
    }

    /// Disjoint union, `other` relabelled after `self`.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> Result<Self> {
        let mut g = SimpleGraph::new(self.n + other.n)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v)?;
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n)?;
        }
        Ok(g)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for v in 0..self.n {
            let _ = writeln!(s, "  {v} [label=\"{v}\"];");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(s, "  {u} -- {v};");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json_value(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("graph JSON serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GraphJson =
            serde_json::from_str(text).map_err(|e| Error::input(format!("graph JSON: {e}")))?;
        raw.try_into()
    }

    /// Parse a plain edge list: the vertex count followed by pairs of
    /// endpoints, separated by whitespace, commas, or `-`.
    /// `"3\n0 1\n1 2"` is a path on three vertices.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut numbers = Vec::new();
        let mut offset = 0;
        for token in text.split(|c: char| c.is_whitespace() || c == ',' || c == '-') {
            if !token.is_empty() {
                let value = token
                    .parse::<usize>()
                    .map_err(|_| Error::parse(offset, format!("expected an integer, got {token:?}")))?;
                numbers.push(value);
            }
            offset += token.len() + 1;
        }
        let (&n, rest) = numbers
            .split_first()
            .ok_or_else(|| Error::parse(0, "empty edge list"))?;
        if rest.len() % 2 != 0 {
            return Err(Error::input("edge list has an unpaired endpoint"));
        }
        let edges: Vec<_> = rest.chunks(2).map(|c| (c[0], c[1])).collect();
        SimpleGraph::from_edges(n, &edges)
    }
}

fn reachable_from_zero(adj: &[u64]) -> u64 {
    if adj.is_empty() {
        return 0;
    }
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0u64;
        for v in VertexSet(frontier).iter() {
            next |= adj[v];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// `{"n": int, "edges": [[u, v], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for SimpleGraph {
    type Error = Error;

    fn try_from(raw: GraphJson) -> Result<Self> {
        let edges: Vec<_> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
        SimpleGraph::from_edges(raw.n, &edges)
    }
}
