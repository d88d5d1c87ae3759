//! Integer partitions.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Weakly decreasing tuple of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Accepts parts in any order; they are sorted into decreasing order.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::input("partition parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn smallest_part(&self) -> Option<usize> {
        self.parts.last().copied()
    }

    /// How many parts equal `value`.
    pub fn multiplicity(&self, value: usize) -> usize {
        self.parts.iter().filter(|&&p| p == value).count()
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// `"3,3,2"`, `"(3, 3, 2)"` or `"3 3 2"`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::input(format!("bad partition part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n` whose parts are at least `min_part`, in reverse
/// lexicographic order: `(9), (7,2), (6,3), (5,4), (5,2,2), ...`.
pub fn partitions(n: usize, min_part: usize) -> Vec<Partition> {
    let min_part = min_part.max(1);
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, min_part, &mut current, &mut out);
    out
}

fn fill(remaining: usize, max_part: usize, min_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    for part in (min_part..=max_part.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, min_part, current, out);
        current.pop();
    }
}

/// `p(n)`.
pub fn partition_count(n: usize) -> usize {
    partitions(n, 1).len()
}
