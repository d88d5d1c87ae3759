//! The two-step nilpotent Lie algebra of a graph: one generator per vertex,
//! one per edge, and `[v_i, v_j] = e_ij` for every edge `ij` with `i < j`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Sparse vector over the basis: `(index, coefficient)` pairs sorted by index
/// with no zero coefficients.
pub type SparseVector = Vec<(usize, i64)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphLieAlgebra {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// `[b_i, b_j]` for `i < j`; absent pairs bracket to zero.
    brackets: BTreeMap<(usize, usize), SparseVector>,
}

/// Basis `v_0..v_{n-1}` followed by one `e_ij` per edge in sorted order.
pub fn build_lie_algebra(g: &SimpleGraph) -> Result<GraphLieAlgebra> {
    if g.n() == 0 {
        return Err(Error::input("the Lie algebra needs at least one vertex"));
    }
    let edges = g.edges();
    let brackets = edges
        .iter()
        .enumerate()
        .map(|(idx, &(i, j))| ((i, j), vec![(g.n() + idx, 1)]))
        .collect();
    Ok(GraphLieAlgebra { n: g.n(), edges, brackets })
}

impl GraphLieAlgebra {
    pub fn dim(&self) -> usize {
        self.n + self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Basis index of the generator for edge `ij`.
    pub fn edge_generator(&self, i: usize, j: usize) -> Option<usize> {
        let key = (i.min(j), i.max(j));
        self.edges.binary_search(&key).ok().map(|idx| self.n + idx)
    }

    /// `[b_x, b_y]` on basis elements.
    pub fn bracket(&self, x: usize, y: usize) -> SparseVector {
        match x.cmp(&y) {
            std::cmp::Ordering::Equal => Vec::new(),
            std::cmp::Ordering::Less => self.brackets.get(&(x, y)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => negate(self.brackets.get(&(y, x)).cloned().unwrap_or_default()),
        }
    }

    /// `[b_x, v]` extended linearly in `v`.
    pub fn bracket_with(&self, x: usize, v: &[(usize, i64)]) -> SparseVector {
        let mut acc = BTreeMap::new();
        for &(y, c) in v {
            for (z, d) in self.bracket(x, y) {
                *acc.entry(z).or_insert(0) += c * d;
            }
        }
        acc.into_iter().filter(|&(_, c)| c != 0).collect()
    }

    /// Overrides one structure constant, keeping antisymmetry. Used to build
    /// algebras that are not two-step.
    pub fn set_bracket(&mut self, x: usize, y: usize, value: SparseVector) -> Result<()> {
        let dim = self.dim();
        if x >= dim || y >= dim || value.iter().any(|&(z, _)| z >= dim) {
            return Err(Error::input(format!("basis index out of range for dimension {dim}")));
        }
        if x == y {
            return Err(Error::input("[x, x] is always zero"));
        }
        let value: SparseVector = value.into_iter().filter(|&(_, c)| c != 0).collect();
        let (key, value) = if x < y { ((x, y), value) } else { ((y, x), negate(value)) };
        if value.is_empty() {
            self.brackets.remove(&key);
        } else {
            self.brackets.insert(key, value);
        }
        Ok(())
    }

    /// Every `[x, [y, z]]` vanishes and the Jacobi identity holds, over all
    /// basis triples.
    pub fn verify_two_step(&self) -> bool {
        let dim = self.dim();
        (0..dim).into_par_iter().all(|x| {
            (0..dim).all(|y| {
                (0..dim).all(|z| {
                    let xyz = self.bracket_with(x, &self.bracket(y, z));
                    if !xyz.is_empty() {
                        return false;
                    }
                    let yzx = self.bracket_with(y, &self.bracket(z, x));
                    let zxy = self.bracket_with(z, &self.bracket(x, y));
                    add(&add(&xyz, &yzx), &zxy).is_empty()
                })
            })
        })
    }

    pub fn to_json_value(&self) -> LieJson {
        LieJson {
            dim: self.dim(),
            vertices: self.n,
            edges: self.edges.iter().map(|&(i, j)| [i, j]).collect(),
            brackets: self
                .brackets
                .iter()
                .map(|(&(x, y), v)| BracketJson { left: x, right: y, result: v.clone() })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("Lie JSON serialization")
    }
}

fn negate(v: SparseVector) -> SparseVector {
    v.into_iter().map(|(i, c)| (i, -c)).collect()
}

fn add(a: &[(usize, i64)], b: &[(usize, i64)]) -> SparseVector {
    let mut acc: BTreeMap<usize, i64> = a.iter().copied().collect();
    for &(i, c) in b {
        *acc.entry(i).or_insert(0) += c;
    }
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

/// Nonzero structure constants `[b_left, b_right] = sum c * b_k`, `left < right`.
#[derive(Clone, Debug, Serialize)]
pub struct LieJson {
    pub dim: usize,
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    pub brackets: Vec<BracketJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketJson {
    pub left: usize,
    pub right: usize,
    pub result: SparseVector,
}
