//! Isomorph-free censuses.
//!
//! Anosov graphs on `n` vertices are enumerated two independent ways:
//! filtering every labeled graph by the predicate (`BruteForce`), and
//! building every weighted quotient that satisfies the brick conditions and
//! blowing it up (`QuotientSynthesis`). Both produce sorted canonical codes,
//! so the two results can be compared byte for byte.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_code, CanonicalCode, CODE_VERSION};
use crate::equivalence::is_anosov;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::graph6;
use crate::partition::{partitions, Partition};
use crate::quotient::{check_brick_conditions, deconstruct, weighted_canonical_code, WeightedGraph};

/// Largest `n` for labeled brute force (`2^28` candidates at `n = 8`).
pub const BRUTE_FORCE_MAX_N: usize = 8;
/// Largest `n` for quotient synthesis; `(2^7)` needs `2^21` quotient edge sets.
pub const QUOTIENT_SYNTHESIS_MAX_N: usize = 14;
/// Largest matrix size for `X(t)` without opting in.
pub const X_DEFAULT_MAX_T: usize = 6;
pub const X_OPT_IN_MAX_T: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "brute")]
    BruteForce,
    #[serde(rename = "quotient")]
    QuotientSynthesis,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::BruteForce => "brute",
            Method::QuotientSynthesis => "quotient",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusResult {
    pub n: usize,
    pub method: Method,
    /// Sorted, pairwise distinct.
    pub graphs: Vec<CanonicalCode>,
    pub count: usize,
}

impl CensusResult {
    fn new(n: usize, method: Method, graphs: BTreeSet<CanonicalCode>) -> Self {
        let graphs: Vec<_> = graphs.into_iter().collect();
        CensusResult {
            n,
            method,
            count: graphs.len(),
            graphs,
        }
    }

    /// graph6 of each canonical representative, in code order.
    pub fn graph6_lines(&self) -> Vec<String> {
        self.graphs
            .iter()
            .map(|c| graph6::encode(&c.to_graph().expect("census holds simple codes")))
            .collect()
    }
}

pub fn enumerate_anosov(n: usize, method: Method) -> Result<CensusResult> {
    match method {
        Method::BruteForce => {
            let codes = labeled_census(n, |g| is_anosov(g, false))?;
            Ok(CensusResult::new(n, method, codes))
        }
        Method::QuotientSynthesis => {
            let codes = synthesize(n)?.into_iter().map(|s| s.graph_code).collect();
            Ok(CensusResult::new(n, method, codes))
        }
    }
}

/// Isomorphism classes of labeled graphs on `n` vertices satisfying `keep`.
///
/// Edge masks enumerate the upper triangle in column order; the outer loop
/// fixes the first `n - 1` vertices and the inner loop runs over the last
/// vertex's neighborhood. Outer masks are split across rayon workers and the
/// per-worker sets are merged, so the result does not depend on scheduling.
pub fn labeled_census<F>(n: usize, keep: F) -> Result<BTreeSet<CanonicalCode>>
where
    F: Fn(&SimpleGraph) -> bool + Sync,
{
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::capability(format!(
            "brute-force enumeration is limited to n <= {BRUTE_FORCE_MAX_N}, got {n}"
        )));
    }
    if n == 0 {
        let g = SimpleGraph::new(0)?;
        return Ok(if keep(&g) {
            BTreeSet::from([canonical_code(&g)?])
        } else {
            BTreeSet::new()
        });
    }
    let last = n - 1;
    let outer_bits = last * last.saturating_sub(1) / 2;
    let codes = (0u64..1 << outer_bits)
        .into_par_iter()
        .fold(BTreeSet::new, |mut found, outer| {
            let mut base = vec![0u64; n];
            let mut bit = 0;
            for j in 1..last {
                for i in 0..j {
                    if outer >> bit & 1 == 1 {
                        base[i] |= 1 << j;
                        base[j] |= 1 << i;
                    }
                    bit += 1;
                }
            }
            let mut g = SimpleGraph::from_rows_unchecked(base.clone());
            for column in 0u64..1 << last {
                let rows = g.rows_mut();
                for i in 0..last {
                    rows[i] = base[i] | (column >> i & 1) << last;
                }
                rows[last] = column;
                if keep(&g) {
                    found.insert(canonical_code(&g).expect("n within limits"));
                }
            }
            found
        })
        .reduce(BTreeSet::new, merge_sets);
    Ok(codes)
}

fn merge_sets<T: Ord>(mut a: BTreeSet<T>, mut b: BTreeSet<T>) -> BTreeSet<T> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    a.append(&mut b);
    a
}

/// Every class of `~` has at least `min` vertices. Allocation-free.
fn classes_at_least(g: &SimpleGraph, min: u32) -> bool {
    let mut seen = 0u64;
    for v in 0..g.n() {
        if seen >> v & 1 == 1 {
            continue;
        }
        let (open, closed) = (g.open_row(v), g.closed_row(v));
        let mut members = 0u64;
        for u in 0..g.n() {
            if g.open_row(u) == open || g.closed_row(u) == closed {
                members |= 1 << u;
            }
        }
        if members.count_ones() < min {
            return false;
        }
        seen |= members;
    }
    true
}

/// `U(n)`: graphs (not necessarily connected) whose type has every part at
/// least 2. `U(0) = 0`.
pub fn count_u(n: usize) -> Result<usize> {
    if n == 0 {
        return Ok(0);
    }
    Ok(labeled_census(n, |g| classes_at_least(g, 2))?.len())
}

/// `L(n)`: connected graphs whose type has every part at least 3.
pub fn count_l(n: usize) -> Result<usize> {
    if n == 0 {
        return Ok(0);
    }
    Ok(labeled_census(n, |g| classes_at_least(g, 3) && g.is_connected_fast())?.len())
}

/// Number of isomorphism classes of simple graphs on `n` vertices.
pub fn count_all_graphs(n: usize) -> Result<usize> {
    Ok(labeled_census(n, |_| true)?.len())
}

/// One Anosov graph produced by quotient synthesis, with the weighted graph
/// it came from.
#[derive(Clone, Debug)]
pub struct SynthesizedGraph {
    pub quotient: WeightedGraph,
    pub quotient_code: CanonicalCode,
    pub graph_code: CanonicalCode,
}

/// Distinct orderings of a multiset, in lexicographic order.
pub fn multiset_permutations(items: &[usize]) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = items.to_vec();
    current.sort_unstable();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (0..current.len().saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            return out;
        };
        let j = (i + 1..current.len()).rev().find(|&j| current[j] > current[i]).expect("successor exists");
        current.swap(i, j);
        current[i + 1..].reverse();
        out.push(current.clone());
    }
}

/// Every weighted graph whose weight multiset is `lambda` and which meets
/// the brick conditions, one per weighted-isomorphism class, ordered by code.
pub fn brick_quotients(lambda: &Partition) -> Result<BTreeMap<CanonicalCode, WeightedGraph>> {
    let k = lambda.len();
    if k == 0 {
        return Ok(BTreeMap::new());
    }
    let pairs: Vec<(usize, usize)> = (1..k).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut found = BTreeMap::new();
    for arrangement in multiset_permutations(lambda.parts()) {
        let weights: Vec<u32> = arrangement.iter().map(|&w| w as u32).collect();
        // Loops are only allowed on vertices of weight at least 3.
        let loopable: Vec<usize> = (0..k).filter(|&i| weights[i] >= 3).collect();
        let candidates: Vec<(CanonicalCode, WeightedGraph)> = (0u64..1 << loopable.len())
            .into_par_iter()
            .flat_map_iter(|loops| (0u64..1 << pairs.len()).map(move |edges| (loops, edges)))
            .filter_map(|(loops, edges)| {
                let mut adj = vec![0u64; k];
                for (b, &i) in loopable.iter().enumerate() {
                    if loops >> b & 1 == 1 {
                        adj[i] |= 1 << i;
                    }
                }
                for (b, &(i, j)) in pairs.iter().enumerate() {
                    if edges >> b & 1 == 1 {
                        adj[i] |= 1 << j;
                        adj[j] |= 1 << i;
                    }
                }
                let w = WeightedGraph::from_parts(weights.clone(), adj);
                check_brick_conditions(&w).then(|| {
                    let code = weighted_canonical_code(&w).expect("k within cutoff");
                    (code, w)
                })
            })
            .collect();
        for (code, w) in candidates {
            found.entry(code).or_insert(w);
        }
    }
    Ok(found)
}

/// Quotient synthesis: every Anosov graph on `n` vertices, via its quotient.
pub fn synthesize(n: usize) -> Result<Vec<SynthesizedGraph>> {
    let cutoff = crate::canon::CanonConfig::default().weighted_cutoff;
    if n > QUOTIENT_SYNTHESIS_MAX_N || n / 2 > cutoff {
        return Err(Error::capability(format!(
            "quotient synthesis is limited to n <= {QUOTIENT_SYNTHESIS_MAX_N} (weighted cutoff {cutoff}), got {n}"
        )));
    }
    let mut out = Vec::new();
    for lambda in partitions(n, 2) {
        for (quotient_code, quotient) in brick_quotients(&lambda)? {
            let graph_code = canonical_code(&deconstruct(&quotient)?)?;
            out.push(SynthesizedGraph {
                quotient,
                quotient_code,
                graph_code,
            });
        }
    }
    out.sort_by(|a, b| a.graph_code.cmp(&b.graph_code));
    Ok(out)
}

/// Symmetric 0/1 matrix; bit `j` of `rows[i]` is entry `(i, j)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymmetricMatrix {
    rows: Vec<u64>,
}

impl SymmetricMatrix {
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let t = rows.len();
        for i in 0..t {
            for j in 0..t {
                if rows[i] >> j & 1 != rows[j] >> i & 1 {
                    return Err(Error::input(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
            }
            if t < 64 && rows[i] >> t != 0 {
                return Err(Error::input(format!("row {i} has entries beyond column {t}")));
            }
        }
        Ok(SymmetricMatrix { rows })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn has_distinct_rows(&self) -> bool {
        let mut sorted = self.rows.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// The matrix read as a graph with loops on the diagonal and unit weights.
    pub fn as_weighted_graph(&self) -> WeightedGraph {
        WeightedGraph::from_parts(vec![1; self.size()], self.rows.clone())
    }
}

impl std::fmt::Debug for SymmetricMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let t = self.size();
        let lines: Vec<String> = (0..t)
            .map(|i| (0..t).map(|j| if self.get(i, j) { '1' } else { '0' }).collect())
            .collect();
        write!(f, "[{}]", lines.join(" "))
    }
}

/// Matrix built from a binary string: above the diagonal column `j` repeats
/// `alpha[j]`, below it row `i` repeats `alpha[i]`, and the diagonal holds
/// the complement of `alpha[i]`. Row `i` and row `j > i` differ in column `j`.
pub fn string_to_matrix(alpha: &[bool]) -> Result<SymmetricMatrix> {
    let t = alpha.len();
    if t == 0 || t > 64 {
        return Err(Error::input(format!("string length must be in 1..=64, got {t}")));
    }
    let mut rows = vec![0u64; t];
    for i in 0..t {
        for j in 0..t {
            let entry = match j.cmp(&i) {
                std::cmp::Ordering::Greater => alpha[j],
                std::cmp::Ordering::Less => alpha[i],
                std::cmp::Ordering::Equal => !alpha[i],
            };
            if entry {
                rows[i] |= 1 << j;
            }
        }
    }
    Ok(SymmetricMatrix { rows })
}

/// `X(t)`: symmetric `t x t` binary matrices with pairwise distinct rows, up
/// to simultaneous row and column permutation. Each admissible matrix is
/// reduced to its canonical minimal form and the distinct forms are counted.
/// `t = 7` needs `allow_large`.
pub fn compute_x(t: usize, allow_large: bool) -> Result<u64> {
    if t == 0 {
        return Err(Error::input("X(t) needs t >= 1"));
    }
    let limit = if allow_large { X_OPT_IN_MAX_T } else { X_DEFAULT_MAX_T };
    if t > limit {
        return Err(Error::capability(format!(
            "X(t) is limited to t <= {limit}{}, got {t}",
            if allow_large { "" } else { " without the opt-in flag" }
        )));
    }
    let pairs: Vec<(usize, usize)> = (1..t).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let classes = (0u64..1 << t)
        .into_par_iter()
        .flat_map_iter(|diag| (0u64..1 << pairs.len()).map(move |edges| (diag, edges)))
        .fold(BTreeSet::new, |mut found, (diag, edges)| {
            let mut rows: Vec<u64> = (0..t).map(|i| diag & 1 << i).collect();
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if edges >> b & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
            let m = SymmetricMatrix { rows };
            if m.has_distinct_rows() {
                found.insert(weighted_canonical_code(&m.as_weighted_graph()).expect("t within cutoff"));
            }
            found
        })
        .reduce(BTreeSet::new, merge_sets);
    Ok(classes.len() as u64)
}

/// On-disk cache of censuses keyed by `(n, method, code version)`.
#[derive(Clone, Debug)]
pub struct CensusCache {
    dir: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct CachedCensus {
    n: usize,
    method: Method,
    code_version: u32,
    count: usize,
    graph6: Vec<String>,
}

impl CensusCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        CensusCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, n: usize, method: Method) -> PathBuf {
        self.dir
            .join(format!("anosov-n{n}-{}-v{CODE_VERSION}.json", method.as_str()))
    }

    /// `Ok(None)` when nothing is cached for the key.
    pub fn load(&self, n: usize, method: Method) -> Result<Option<CensusResult>> {
        let path = self.path(n, method);
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(Error::input(format!("{}: {e}", path.display()))),
        };
        let cached: CachedCensus = serde_json::from_str(&text)
            .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
        if cached.n != n || cached.method != method || cached.code_version != CODE_VERSION {
            return Ok(None);
        }
        let mut codes = BTreeSet::new();
        for line in &cached.graph6 {
            codes.insert(CanonicalCode::from_canonical_graph(&graph6::decode(line)?));
        }
        let result = CensusResult::new(n, method, codes);
        if result.count != cached.count {
            return Err(Error::input(format!("{}: count does not match listing", path.display())));
        }
        Ok(Some(result))
    }

    pub fn store(&self, census: &CensusResult) -> Result<()> {
        std::fs::create_dir_all(&self.dir)
            .map_err(|e| Error::input(format!("{}: {e}", self.dir.display())))?;
        let cached = CachedCensus {
            n: census.n,
            method: census.method,
            code_version: CODE_VERSION,
            count: census.count,
            graph6: census.graph6_lines(),
        };
        let path = self.path(census.n, census.method);
        let text = serde_json::to_string_pretty(&cached).expect("census JSON serialization");
        std::fs::write(&path, text).map_err(|e| Error::input(format!("{}: {e}", path.display())))
    }

    pub fn get_or_compute(&self, n: usize, method: Method) -> Result<CensusResult> {
        if let Some(hit) = self.load(n, method)? {
            return Ok(hit);
        }
        let census = enumerate_anosov(n, method)?;
        self.store(&census)?;
        Ok(census)
    }
}
