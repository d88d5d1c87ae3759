//! Canonical codes: the lexicographically least adjacency encoding over all
//! vertex orderings.
//!
//! For a simple graph the encoding is the upper triangle of the adjacency
//! matrix read column by column, `(0,1), (0,2), (1,2), (0,3), ...`, the same
//! bit order graph6 uses. For a weighted graph each position contributes
//! `(weight, loop flag, column)` in turn.
//!
//! Two backends compute the same minimum:
//! * `Exhaustive` scans all `n!` orderings (bounded by `exhaustive_cutoff`);
//! * the pruned search fills positions left to right, keeping only vertices
//!   whose column is minimal at that position, skips all but one vertex of
//!   each twin class (swapping twins is an automorphism fixing every other
//!   vertex), and abandons prefixes already larger than the best code found.

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexSet};

/// Format revision of the canonical encoding. Bumped whenever the byte layout
/// changes; cached censuses are keyed by it.
pub const CODE_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CodeKind {
    Simple,
    Weighted,
}

/// Isomorphism-invariant key. Equal codes (of the same kind and order) mean
/// isomorphic objects; codes are totally ordered bytewise.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    kind: CodeKind,
    order: usize,
    bytes: Vec<u8>,
}

impl CanonicalCode {
    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    /// Vertex count of the encoded object.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn to_hex(&self) -> String {
        self.bytes.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The canonical representative of a simple-graph code.
    pub fn to_graph(&self) -> Result<SimpleGraph> {
        if self.kind != CodeKind::Simple {
            return Err(Error::input("not a simple-graph code"));
        }
        let n = self.order;
        let mut g = SimpleGraph::new(n)?;
        let mut bit = 0usize;
        for j in 1..n {
            for i in 0..j {
                if self.bytes[bit / 8] >> (7 - bit % 8) & 1 == 1 {
                    g.add_edge(i, j)?;
                }
                bit += 1;
            }
        }
        Ok(g)
    }

    /// Rebuild a simple-graph code from a graph already in canonical form
    /// (e.g. one read back from a cache).
    pub fn from_canonical_graph(g: &SimpleGraph) -> Self {
        let identity: Vec<usize> = (0..g.n()).collect();
        simple_code_from_columns(g.n(), &columns_for_order(g.rows(), &identity))
    }
}

impl std::fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}[{}]:{}", self.kind, self.order, self.to_hex())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CanonConfig {
    /// Largest vertex count the exhaustive `n!` scan accepts.
    pub exhaustive_cutoff: usize,
    /// Use the pruned search. When disabled, only the exhaustive scan runs.
    pub refinement: bool,
    /// Largest weighted-graph order accepted by the weighted canonicalizer.
    pub weighted_cutoff: usize,
}

impl Default for CanonConfig {
    fn default() -> Self {
        CanonConfig {
            exhaustive_cutoff: 10,
            refinement: true,
            weighted_cutoff: 10,
        }
    }
}

/// Canonical code with the default configuration.
pub fn canonical_code(g: &SimpleGraph) -> Result<CanonicalCode> {
    canonical_code_with(g, &CanonConfig::default())
}

pub fn canonical_code_with(g: &SimpleGraph, config: &CanonConfig) -> Result<CanonicalCode> {
    if config.refinement {
        Ok(simple_code_from_columns(g.n(), &search_simple(g).1))
    } else if g.n() <= config.exhaustive_cutoff {
        Ok(exhaustive_code(g))
    } else {
        Err(Error::capability(format!(
            "canonical code for n = {} exceeds the exhaustive cutoff {} and refinement is disabled",
            g.n(),
            config.exhaustive_cutoff
        )))
    }
}

/// Relabelled copy of `g` whose identity ordering realizes its canonical code.
pub fn canonical_form(g: &SimpleGraph) -> SimpleGraph {
    let (order, _) = search_simple(g);
    let mut position = vec![0; g.n()];
    for (pos, &v) in order.iter().enumerate() {
        position[v] = pos;
    }
    g.permuted(&position).expect("search returns a permutation")
}

/// Minimum over all `n!` orderings by brute force.
pub fn exhaustive_code(g: &SimpleGraph) -> CanonicalCode {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = columns_for_order(g.rows(), &order);
    for_each_permutation(&mut order, |perm| {
        let cols = columns_for_order(g.rows(), perm);
        if cols < best {
            best = cols;
        }
    });
    simple_code_from_columns(n, &best)
}

/// Calls `f` on every permutation of `items` (Heap's algorithm), starting with
/// the given arrangement.
pub fn for_each_permutation<T, F: FnMut(&[T])>(items: &mut [T], mut f: F) {
    let n = items.len();
    f(items);
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            f(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Column `j` of the relabelled matrix as a `j`-bit integer whose most
/// significant bit is the entry at row 0.
fn columns_for_order(rows: &[u64], order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let mut cols = vec![0u64; n];
    for j in 1..n {
        let vj = order[j];
        let mut c = 0u64;
        for &vi in &order[..j] {
            c = c << 1 | (rows[vi] >> vj & 1);
        }
        cols[j] = c;
    }
    cols
}

fn simple_code_from_columns(n: usize, cols: &[u64]) -> CanonicalCode {
    let total = n * n.saturating_sub(1) / 2;
    let mut bytes = vec![0u8; total.div_ceil(8)];
    let mut bit = 0usize;
    for (j, &c) in cols.iter().enumerate().skip(1) {
        for i in 0..j {
            if c >> (j - 1 - i) & 1 == 1 {
                bytes[bit / 8] |= 0x80 >> (bit % 8);
            }
            bit += 1;
        }
    }
    CanonicalCode {
        kind: CodeKind::Simple,
        order: n,
        bytes,
    }
}

/// Twin class id per vertex: equal ids iff equal open or equal closed rows.
fn twin_classes(n: usize, open: impl Fn(usize) -> u64, closed: impl Fn(usize) -> u64) -> Vec<usize> {
    let mut class = vec![usize::MAX; n];
    for v in 0..n {
        if class[v] != usize::MAX {
            continue;
        }
        class[v] = v;
        for u in v + 1..n {
            if class[u] == usize::MAX && (open(u) == open(v) || closed(u) == closed(v)) {
                class[u] = v;
            }
        }
    }
    class
}

/// Generic left-to-right search. `Key` is the per-position record being
/// minimized; `key_of(v, column)` builds it for candidate `v`.
struct Search<'a, K: Ord + Copy> {
    n: usize,
    rows: &'a [u64],
    interchangeable: Vec<usize>,
    key_of: &'a dyn Fn(usize, u64) -> K,
    order: Vec<usize>,
    keys: Vec<K>,
    best: Option<(Vec<usize>, Vec<K>)>,
}

impl<K: Ord + Copy> Search<'_, K> {
    fn run(&mut self, depth: usize, used: u64, colv: &[u64]) {
        if depth == self.n {
            let better = match &self.best {
                None => true,
                Some((_, best)) => self.keys[..] < best[..],
            };
            if better {
                self.best = Some((self.order.clone(), self.keys.clone()));
            }
            return;
        }
        let free = VertexSet(!used & VertexSet::full(self.n).0);
        let min_key = free
            .iter()
            .map(|v| (self.key_of)(v, colv[v]))
            .min()
            .expect("free vertices remain");
        if let Some((_, best)) = &self.best {
            match self.keys[..depth].cmp(&best[..depth]).then(min_key.cmp(&best[depth])) {
                std::cmp::Ordering::Greater => return,
                std::cmp::Ordering::Less | std::cmp::Ordering::Equal => {}
            }
        }
        let mut tried = VertexSet::EMPTY;
        for v in free.iter() {
            if (self.key_of)(v, colv[v]) != min_key || tried.contains(self.interchangeable[v]) {
                continue;
            }
            tried.insert(self.interchangeable[v]);
            let child: Vec<u64> = (0..self.n)
                .map(|u| colv[u] << 1 | (self.rows[v] >> u & 1))
                .collect();
            self.order[depth] = v;
            self.keys[depth] = min_key;
            self.run(depth + 1, used | 1u64 << v, &child);
        }
    }
}

/// Returns (ordering, columns) achieving the minimal simple code.
fn search_simple(g: &SimpleGraph) -> (Vec<usize>, Vec<u64>) {
    let n = g.n();
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let interchangeable = twin_classes(n, |v| g.open_row(v), |v| g.closed_row(v));
    let key_of = |_v: usize, col: u64| col;
    let mut search = Search {
        n,
        rows: g.rows(),
        interchangeable,
        key_of: &key_of,
        order: vec![0; n],
        keys: vec![0; n],
        best: None,
    };
    search.run(0, 0, &vec![0u64; n]);
    search.best.expect("at least one ordering")
}

/// Canonical code of a graph with loops and positive vertex weights. `rows`
/// carries loops on the diagonal.
pub(crate) fn weighted_code(weights: &[u32], rows: &[u64], config: &CanonConfig) -> Result<CanonicalCode> {
    let k = weights.len();
    if k > config.weighted_cutoff {
        return Err(Error::capability(format!(
            "weighted canonical code for k = {k} exceeds the cutoff {}",
            config.weighted_cutoff
        )));
    }
    let keys = if config.refinement {
        weighted_search(weights, rows)
    } else {
        weighted_exhaustive(weights, rows)
    };
    Ok(weighted_code_from_keys(&keys))
}

type WeightedKey = (u32, bool, u64);

fn weighted_search(weights: &[u32], rows: &[u64]) -> Vec<WeightedKey> {
    let k = weights.len();
    if k == 0 {
        return Vec::new();
    }
    let has_loop = |v: usize| rows[v] >> v & 1 == 1;
    let mut interchangeable: Vec<usize> = (0..k).collect();
    for v in 0..k {
        if interchangeable[v] != v {
            continue;
        }
        for u in v + 1..k {
            let others = !(1u64 << u | 1u64 << v);
            if interchangeable[u] == u
                && weights[u] == weights[v]
                && has_loop(u) == has_loop(v)
                && rows[u] & others == rows[v] & others
            {
                interchangeable[u] = v;
            }
        }
    }
    let key_of = |v: usize, col: u64| (weights[v], has_loop(v), col);
    let mut search = Search {
        n: k,
        rows,
        interchangeable,
        key_of: &key_of,
        order: vec![0; k],
        keys: vec![(0, false, 0); k],
        best: None,
    };
    search.run(0, 0, &vec![0u64; k]);
    search.best.expect("at least one ordering").1
}

fn weighted_keys_for_order(weights: &[u32], rows: &[u64], order: &[usize]) -> Vec<WeightedKey> {
    let cols = columns_for_order(rows, order);
    order
        .iter()
        .zip(cols)
        .map(|(&v, c)| (weights[v], rows[v] >> v & 1 == 1, c))
        .collect()
}

fn weighted_exhaustive(weights: &[u32], rows: &[u64]) -> Vec<WeightedKey> {
    let mut order: Vec<usize> = (0..weights.len()).collect();
    let mut best = weighted_keys_for_order(weights, rows, &order);
    for_each_permutation(&mut order, |perm| {
        let keys = weighted_keys_for_order(weights, rows, perm);
        if keys < best {
            best = keys;
        }
    });
    best
}

fn weighted_code_from_keys(keys: &[WeightedKey]) -> CanonicalCode {
    let mut bytes = Vec::new();
    for (j, &(w, looped, col)) in keys.iter().enumerate() {
        bytes.extend_from_slice(&w.to_be_bytes());
        bytes.push(looped as u8);
        let nbytes = j.div_ceil(8);
        if nbytes > 0 {
            let aligned = (col as u128) << (nbytes * 8 - j);
            bytes.extend_from_slice(&aligned.to_be_bytes()[16 - nbytes..]);
        }
    }
    CanonicalCode {
        kind: CodeKind::Weighted,
        order: keys.len(),
        bytes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn all_labeled(n: usize) -> impl Iterator<Item = SimpleGraph> {
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        (0u64..1 << pairs.len()).map(move |mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            SimpleGraph::from_edges(n, &edges).unwrap()
        })
    }

    #[test]
    fn cycle_relabelings_agree() {
        let a = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let b = SimpleGraph::from_edges(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(canonical_code(&a).unwrap(), canonical_code(&b).unwrap());
    }

    #[test]
    fn triangle_and_path_differ() {
        let k3 = SimpleGraph::complete(3).unwrap();
        let p3 = SimpleGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_ne!(canonical_code(&k3).unwrap(), canonical_code(&p3).unwrap());
    }

    #[test]
    fn eleven_classes_on_four_vertices() {
        let codes: BTreeSet<_> = all_labeled(4).map(|g| canonical_code(&g).unwrap()).collect();
        assert_eq!(codes.len(), 11);
    }

    #[test]
    fn search_matches_exhaustive_scan() {
        for n in 0..=5 {
            for g in all_labeled(n) {
                assert_eq!(canonical_code(&g).unwrap(), exhaustive_code(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn canonical_form_realizes_code() {
        for g in all_labeled(5) {
            let code = canonical_code(&g).unwrap();
            assert_eq!(CanonicalCode::from_canonical_graph(&canonical_form(&g)), code);
            assert_eq!(code.to_graph().unwrap(), canonical_form(&g));
        }
    }

    #[test]
    fn exhaustive_cutoff_enforced() {
        let config = CanonConfig {
            refinement: false,
            ..CanonConfig::default()
        };
        let g = SimpleGraph::new(11).unwrap();
        assert!(matches!(canonical_code_with(&g, &config), Err(Error::Capability(_))));
        assert!(canonical_code_with(&SimpleGraph::new(6).unwrap(), &config).is_ok());
    }

    #[test]
    fn heap_visits_every_permutation_once() {
        let mut items = [0, 1, 2, 3];
        let mut seen = BTreeSet::new();
        for_each_permutation(&mut items, |p| {
            seen.insert(p.to_vec());
        });
        assert_eq!(seen.len(), 24);
    }

    #[test]
    fn weighted_search_matches_exhaustive() {
        let weights = [3u32, 2, 3, 2];
        for mask in 0u64..1 << 10 {
            let mut rows = vec![0u64; 4];
            let mut bit = 0;
            for j in 0..4 {
                for i in 0..=j {
                    if mask >> bit & 1 == 1 {
                        rows[i] |= 1 << j;
                        rows[j] |= 1 << i;
                    }
                    bit += 1;
                }
            }
            assert_eq!(weighted_search(&weights, &rows), weighted_exhaustive(&weights, &rows));
        }
    }
}
