//! Anosov graphs: the twin relation, weighted quotients, isomorph-free
//! censuses, counting bounds, the partition injection, and the two-step
//! nilpotent Lie algebra of a graph.
//!
//! A connected simple graph is *Anosov* when every class of the relation
//! "same open or same closed neighborhood" has at least two vertices and
//! every two-vertex class is edgeless.

pub mod bounds;
pub mod canon;
pub mod census;
pub mod cli;
pub mod equivalence;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod injection;
pub mod lie;
pub mod partition;
pub mod quotient;

pub use canon::{canonical_code, CanonConfig, CanonicalCode};
pub use census::{enumerate_anosov, CensusResult, Method};
pub use equivalence::{decompose, is_anosov, similar, EquivalenceDecomposition};
pub use error::{Error, Result};
pub use graph::{SimpleGraph, VertexSet};
pub use partition::{partitions, Partition};
pub use quotient::{deconstruct, quotient, WeightedGraph};
