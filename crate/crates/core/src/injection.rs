//! The map `B` from partitions of `n >= 9` to quotient graphs of Anosov
//! graphs on `n` vertices, built case by case, and a verifier for its
//! injectivity.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::CanonicalCode;
use crate::equivalence::{decompose, is_anosov};
use crate::error::{Error, Result};
use crate::partition::{partitions, Partition};
use crate::quotient::{check_brick_conditions, deconstruct, weighted_canonical_code, WeightedGraph};

pub const MIN_N: usize = 9;
pub const DEFAULT_VERIFY_LIMIT: usize = 14;

/// Which construction applies. With `t` trailing ones and `k` parts of size
/// at least 2:
///
/// | `t` | shape | case |
/// |-----|-------|------|
/// | 0 | `k = 1, 2, 3, >= 4` | 1, 2, 3, 4 |
/// | 1 | `k = 1, 2, 3, 4, >= 5` | 5, 6, 7, 8, 9 |
/// | >= 2 | `lambda_1 >= 3` | 10 |
/// | >= 2 | one, two, or at least three 2s | 11, 12, 13 |
/// | >= 2 | `k = 0` | 14 |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct InjectionCase(u8);

impl InjectionCase {
    pub fn id(self) -> u8 {
        self.0
    }
}

pub fn classify(lambda: &Partition) -> Result<InjectionCase> {
    let n = lambda.n();
    if n < MIN_N {
        return Err(Error::Domain(format!("the injection is defined for n >= {MIN_N}, got n = {n}")));
    }
    let t = lambda.multiplicity(1);
    let body = &lambda.parts()[..lambda.len() - t];
    let k = body.len();
    let id = match t {
        0 => match k {
            1..=3 => k as u8,
            _ => 4,
        },
        1 => match k {
            1..=4 => 4 + k as u8,
            _ => 9,
        },
        _ if k == 0 => 14,
        _ if body[0] >= 3 => 10,
        _ => match k {
            1 => 11,
            2 => 12,
            _ => 13,
        },
    };
    Ok(InjectionCase(id))
}

pub fn inject(lambda: &Partition) -> Result<WeightedGraph> {
    inject_with_case(lambda).map(|(_, w)| w)
}

pub fn inject_with_case(lambda: &Partition) -> Result<(InjectionCase, WeightedGraph)> {
    let case = classify(lambda)?;
    let t = lambda.multiplicity(1) as u32;
    let b: Vec<u32> = lambda.parts()[..lambda.len() - t as usize].iter().map(|&p| p as u32).collect();
    let k = b.len();
    // Each arm gives weights and edges; `(i, i)` is a loop.
    let (weights, edges): (Vec<u32>, Vec<(usize, usize)>) = match case.0 {
        1 => (vec![b[0]], vec![(0, 0)]),
        2 => (b.clone(), vec![(0, 1)]),
        3 => (b.clone(), vec![(0, 1), (1, 2), (0, 2)]),
        4 => (b.clone(), path(0, k)),
        5 => (
            vec![2, b[0] - 5, 2, 2],
            vec![(1, 1), (0, 1), (0, 2), (1, 2), (2, 3), (1, 3), (0, 3)],
        ),
        6 => (vec![b[0] - 1, b[1], 2], vec![(0, 0), (0, 1), (0, 2), (1, 2)]),
        7 => (vec![b[0], b[2], b[1] + 1], vec![(0, 0), (2, 2), (0, 1), (1, 2)]),
        8 => (
            vec![b[0] + 1, b[1], b[2], b[3]],
            vec![(0, 0), (0, 1), (0, 2), (1, 3), (2, 3), (1, 2)],
        ),
        9 => {
            // lambda_k - (lambda_1 + 1, looped) - lambda_2 - ... - lambda_{k-1},
            // closed into a cycle through lambda_k, with the chord lambda_k - lambda_2.
            let mut weights = vec![b[k - 1], b[0] + 1];
            weights.extend_from_slice(&b[1..k - 1]);
            let mut edges = vec![(1, 1), (0, 2)];
            edges.extend(path(0, k));
            edges.push((0, k - 1));
            (weights, edges)
        }
        10 => {
            let mut weights = b.clone();
            weights.push(t);
            let mut edges = vec![(0, 0)];
            edges.extend(path(0, k + 1));
            (weights, edges)
        }
        11 => (vec![2, t - 4, 2, 2], vec![(1, 1), (0, 1), (1, 2), (2, 3)]),
        12 => (vec![2, t - 2, 2, 2], vec![(1, 1), (0, 1), (0, 2), (1, 2), (2, 3)]),
        13 => {
            let mut weights = vec![2; k];
            weights.push(t);
            let edges = (1..=k).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
            (weights, edges)
        }
        14 => (vec![3, t - 6, 3], vec![(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]),
        _ => unreachable!("classify returns 1..=14"),
    };
    let w = WeightedGraph::new(weights, &edges)?;
    assert!(
        check_brick_conditions(&w) && w.total_weight() == lambda.n(),
        "case {} image of {lambda} is not a valid quotient",
        case.0
    );
    Ok((case, w))
}

/// Path edges `start - start+1 - ... - end-1`.
fn path(start: usize, end: usize) -> Vec<(usize, usize)> {
    (start + 1..end).map(|v| (v - 1, v)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct InjectionReport {
    pub n: usize,
    /// `p(n)`.
    pub partitions: usize,
    pub distinct_images: usize,
    pub case_counts: BTreeMap<u8, usize>,
    pub violations: Vec<String>,
}

impl InjectionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.distinct_images == self.partitions
    }
}

pub fn verify_injection(n: usize) -> Result<InjectionReport> {
    verify_injection_with_limit(n, DEFAULT_VERIFY_LIMIT)
}

/// Checks every image: brick conditions, total weight, an Anosov
/// deconstruction of the right type, and pairwise distinct weighted codes.
pub fn verify_injection_with_limit(n: usize, limit: usize) -> Result<InjectionReport> {
    if n < MIN_N {
        return Err(Error::Domain(format!("the injection is defined for n >= {MIN_N}, got n = {n}")));
    }
    if n > limit {
        return Err(Error::capability(format!("injection verification is limited to n <= {limit}, got {n}")));
    }
    let checked: Vec<(Partition, ImageCheck)> = partitions(n, 1)
        .into_par_iter()
        .map(|lambda| {
            let outcome = check_image(&lambda);
            (lambda, outcome)
        })
        .collect();
    let mut report = InjectionReport {
        n,
        partitions: checked.len(),
        distinct_images: 0,
        case_counts: BTreeMap::new(),
        violations: Vec::new(),
    };
    let mut owners: BTreeMap<CanonicalCode, Partition> = BTreeMap::new();
    for (lambda, outcome) in checked {
        match outcome {
            Ok((case, code)) => {
                *report.case_counts.entry(case.0).or_default() += 1;
                if let Some(other) = owners.get(&code) {
                    report.violations.push(format!("{lambda} and {other} have isomorphic images"));
                } else {
                    owners.insert(code, lambda);
                }
            }
            Err(reason) => report.violations.push(format!("{lambda}: {reason}")),
        }
    }
    report.distinct_images = owners.len();
    Ok(report)
}

type ImageCheck = std::result::Result<(InjectionCase, CanonicalCode), String>;

fn check_image(lambda: &Partition) -> ImageCheck {
    let (case, w) = inject_with_case(lambda).map_err(|e| e.to_string())?;
    if !check_brick_conditions(&w) {
        return Err(format!("case {} image fails the brick conditions", case.0));
    }
    if w.total_weight() != lambda.n() {
        return Err(format!("case {} image has total weight {}", case.0, w.total_weight()));
    }
    let g = deconstruct(&w).map_err(|e| e.to_string())?;
    if !is_anosov(&g, false) {
        return Err(format!("case {} deconstruction is not Anosov", case.0));
    }
    let mut weights: Vec<usize> = w.weights().iter().map(|&x| x as usize).collect();
    weights.sort_unstable_by(|a, b| b.cmp(a));
    if decompose(&g).map_err(|e| e.to_string())?.graph_type.parts() != weights.as_slice() {
        return Err(format!("case {} deconstruction has the wrong type", case.0));
    }
    let code = weighted_canonical_code(&w).map_err(|e| e.to_string())?;
    Ok((case, code))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn figure_examples() {
        let w = inject(&lam(&[3, 3, 3])).unwrap();
        assert_eq!(w.weights(), &[3, 3, 3]);
        assert_eq!(w.edges(), vec![(0, 1), (0, 2), (1, 2)]);

        let w = inject(&lam(&[8, 1])).unwrap();
        assert_eq!(w.weights(), &[2, 3, 2, 2]);
        assert_eq!(w.edges().len(), 7);
        assert!(w.has_loop(1));

        let w = inject(&lam(&[1; 9])).unwrap();
        assert_eq!(w.weights(), &[3, 3, 3]);
        assert!((0..3).all(|i| w.has_loop(i)));
    }

    #[test]
    fn below_nine_is_a_domain_error() {
        assert!(matches!(inject(&lam(&[8])), Err(Error::Domain(_))));
        assert!(matches!(verify_injection(8), Err(Error::Domain(_))));
    }

    #[test]
    fn every_partition_gets_one_case() {
        for n in 9..=14 {
            let mut seen = BTreeMap::new();
            for lambda in partitions(n, 1) {
                let case = classify(&lambda).unwrap();
                assert!((1..=14).contains(&case.id()));
                *seen.entry(case.id()).or_insert(0) += 1;
            }
            assert_eq!(seen.values().sum::<usize>(), crate::partition::partition_count(n));
        }
    }

    #[test]
    fn case_dispatch() {
        let cases = [
            (&[9][..], 1),
            (&[5, 4], 2),
            (&[3, 3, 3], 3),
            (&[3, 2, 2, 2], 4),
            (&[8, 1], 5),
            (&[4, 4, 1], 6),
            (&[3, 3, 2, 1], 7),
            (&[2, 2, 2, 2, 1], 8),
            (&[2, 2, 2, 2, 2, 1], 9),
            (&[3, 2, 1, 1, 1, 1], 10),
            (&[2, 1, 1, 1, 1, 1, 1, 1], 11),
            (&[2, 2, 1, 1, 1, 1, 1], 12),
            (&[2, 2, 2, 1, 1, 1], 13),
            (&[1; 9], 14),
        ];
        for (parts, id) in cases {
            assert_eq!(classify(&lam(parts)).unwrap().id(), id, "{parts:?}");
            inject(&lam(parts)).unwrap();
        }
    }

    /// Pairs `(a, a, c, 1)` and `(a + 1, a - 1, c, 1)` with `2 <= c <= a - 1`
    /// both map to the looped path `a - c - (a + 1)`.
    fn expected_collisions(n: usize) -> Vec<String> {
        let mut out = Vec::new();
        for a in 2..n {
            for c in 2..a {
                if 2 * a + c + 1 == n {
                    out.push(format!("{} and {} have isomorphic images", lam(&[a, a, c, 1]), lam(&[a + 1, a - 1, c, 1])));
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn nine() {
        let report = verify_injection(9).unwrap();
        assert_eq!(report.partitions, 30);
        assert_eq!(report.distinct_images, 29);
        assert_eq!(report.violations, vec!["(3,3,2,1) and (4,2,2,1) have isomorphic images".to_string()]);
        assert!(!report.passed());
        // Case 9 needs five parts of size at least 2 plus a one.
        assert_eq!(report.case_counts.len(), 13);
        assert!(!report.case_counts.contains_key(&9));
    }

    #[test]
    fn only_case_seven_collides() {
        for n in 9..=14 {
            let report = verify_injection(n).unwrap();
            let mut violations = report.violations.clone();
            violations.sort();
            let expected = expected_collisions(n);
            assert_eq!(violations, expected, "n = {n}");
            assert_eq!(report.distinct_images, report.partitions - expected.len());
        }
        assert!(matches!(verify_injection(15), Err(Error::Capability(_))));
    }
}
