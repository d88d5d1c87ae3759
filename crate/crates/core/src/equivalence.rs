//! The twin relation: `x ~ y` when `N(x) = N(y)` or `N[x] = N[y]`.
//!
//! Classes of `~` are internally edgeless or internally complete, and the
//! sorted class sizes form the graph's type. A graph is Anosov when it is
//! connected, has no singleton class, and every class of size two is
//! edgeless.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexSet};
use crate::partition::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    /// Also used for singleton classes, where the distinction is vacuous.
    Edgeless,
    Complete,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClass {
    pub vertices: VertexSet,
    pub kind: ClassKind,
}

impl EquivalenceClass {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// Classes sorted by decreasing size, ties broken by least vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceDecomposition {
    pub classes: Vec<EquivalenceClass>,
    pub graph_type: Partition,
}

impl EquivalenceDecomposition {
    /// Index of the class containing `v`.
    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.vertices.contains(v))
    }

    pub fn to_json_value(&self) -> DecompositionJson {
        DecompositionJson {
            graph_type: self.graph_type.parts().to_vec(),
            classes: self
                .classes
                .iter()
                .map(|c| ClassJson {
                    vertices: c.vertices.to_vec(),
                    kind: c.kind,
                })
                .collect(),
        }
    }
}

/// `{"type": [...], "classes": [{"vertices": [...], "kind": "edgeless|complete"}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    #[serde(rename = "type")]
    pub graph_type: Vec<usize>,
    pub classes: Vec<ClassJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub vertices: Vec<usize>,
    pub kind: ClassKind,
}

pub fn similar(g: &SimpleGraph, x: usize, y: usize) -> Result<bool> {
    let nx = g.neighborhood(x, false)?;
    let ny = g.neighborhood(y, false)?;
    Ok(nx == ny || g.closed_row(x) == g.closed_row(y))
}

fn class_mask(g: &SimpleGraph, v: usize) -> u64 {
    let (open, closed) = (g.open_row(v), g.closed_row(v));
    let mut mask = 0u64;
    for u in 0..g.n() {
        if g.open_row(u) == open || g.closed_row(u) == closed {
            mask |= 1u64 << u;
        }
    }
    mask
}

pub fn decompose(g: &SimpleGraph) -> Result<EquivalenceDecomposition> {
    if g.n() == 0 {
        return Err(Error::input("decomposition needs at least one vertex"));
    }
    let mut seen = 0u64;
    let mut classes = Vec::new();
    for v in 0..g.n() {
        if seen >> v & 1 == 1 {
            continue;
        }
        let members = VertexSet(class_mask(g, v));
        seen |= members.0;
        // One internal edge makes the class complete.
        let kind = if members.len() >= 2 && g.open_row(v) & members.0 != 0 {
            ClassKind::Complete
        } else {
            ClassKind::Edgeless
        };
        classes.push(EquivalenceClass { vertices: members, kind });
    }
    classes.sort_by_key(|c| (std::cmp::Reverse(c.size()), c.vertices.min()));
    let graph_type = Partition::new(classes.iter().map(|c| c.size()).collect())?;
    Ok(EquivalenceDecomposition { classes, graph_type })
}

/// Why a graph fails to be Anosov, naming a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnosovViolation {
    Empty,
    Disconnected { component: VertexSet },
    SingletonClass { class: VertexSet },
    CompletePair { class: VertexSet },
}

impl fmt::Display for AnosovViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnosovViolation::Empty => write!(f, "graph has no vertices"),
            AnosovViolation::Disconnected { component } => {
                write!(f, "graph is disconnected: component {component} does not reach every vertex")
            }
            AnosovViolation::SingletonClass { class } => write!(f, "class {class} has size 1"),
            AnosovViolation::CompletePair { class } => {
                write!(f, "class {class} has size 2 and is complete")
            }
        }
    }
}

/// First violated condition in the order: empty, disconnected, singleton
/// class, complete pair. Classes are visited in decomposition order.
pub fn anosov_violation(g: &SimpleGraph, allow_disconnected: bool) -> Option<AnosovViolation> {
    if g.n() == 0 {
        return Some(AnosovViolation::Empty);
    }
    if !allow_disconnected && !g.is_connected_fast() {
        let mut component = VertexSet::singleton(0);
        loop {
            let grown: VertexSet = component
                .iter()
                .flat_map(|v| VertexSet(g.closed_row(v)).iter())
                .collect();
            if grown == component {
                break;
            }
            component = grown;
        }
        return Some(AnosovViolation::Disconnected { component });
    }
    let decomposition = decompose(g).expect("n >= 1");
    for class in &decomposition.classes {
        match (class.size(), class.kind) {
            (1, _) => return Some(AnosovViolation::SingletonClass { class: class.vertices }),
            (2, ClassKind::Complete) => {
                return Some(AnosovViolation::CompletePair { class: class.vertices })
            }
            _ => {}
        }
    }
    None
}

/// The Anosov predicate. Allocation-free; this is the inner loop of the
/// brute-force census.
pub fn is_anosov(g: &SimpleGraph, allow_disconnected: bool) -> bool {
    let n = g.n();
    if n == 0 {
        return false;
    }
    let mut seen = 0u64;
    for v in 0..n {
        if seen >> v & 1 == 1 {
            continue;
        }
        let members = class_mask(g, v);
        seen |= members;
        match members.count_ones() {
            1 => return false,
            2 if g.open_row(v) & members != 0 => return false,
            _ => {}
        }
    }
    allow_disconnected || g.is_connected_fast()
}

/// Number of graphs in the stream whose type is `lambda`. Every graph must
/// have `lambda.n()` vertices.
pub fn count_by_type<'a, I>(graphs: I, lambda: &Partition) -> Result<usize>
where
    I: IntoIterator<Item = &'a SimpleGraph>,
{
    let mut count = 0;
    for g in graphs {
        if g.n() != lambda.n() {
            return Err(Error::input(format!(
                "graph on {} vertices does not match a partition of {}",
                g.n(),
                lambda.n()
            )));
        }
        if g.n() > 0 && decompose(g)?.graph_type == *lambda {
            count += 1;
        }
    }
    Ok(count)
}
