//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use anosov::bounds::{big_one_bounds, nu_family_count, nu_family_members, nu_lower_bound, product_lower_bound, NuFormula};
use anosov::census::{compute_x, count_l, count_u, enumerate_anosov, labeled_census, Method};
use anosov::injection::verify_injection;
use anosov::lie::build_lie_algebra;
use anosov::partition::partition_count;
use anosov::quotient::{check_anosov_criteria, check_brick_conditions, deconstruct, quotient, weighted_canonical_code};
use anosov::{is_anosov, SimpleGraph, WeightedGraph};
use num_bigint::BigUint;
use num_rational::Ratio;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn golden_censuses() -> Outcome {
    let expected = [(3, 1), (4, 2), (5, 3), (6, 6), (7, 9)];
    for (n, count) in expected {
        let brute = enumerate_anosov(n, Method::BruteForce).map_err(err)?;
        let synth = enumerate_anosov(n, Method::QuotientSynthesis).map_err(err)?;
        ensure(brute.graphs == synth.graphs, || format!("n = {n}: code sets differ"))?;
        ensure(brute.count == count, || format!("n = {n}: a(n) = {}, expected {count}", brute.count))?;
    }
    Ok("a(3..7) = 1, 2, 3, 6, 9 by both methods".into())
}

fn cross_validation_at_eight() -> Outcome {
    let brute = enumerate_anosov(8, Method::BruteForce).map_err(err)?;
    let synth = enumerate_anosov(8, Method::QuotientSynthesis).map_err(err)?;
    ensure(brute.count == synth.count && brute.graphs == synth.graphs, || {
        format!("brute {} vs synthesis {}", brute.count, synth.count)
    })?;
    Ok(format!("a(8) = {} by both methods", brute.count))
}

fn sandwich() -> Outcome {
    let mut rows = Vec::new();
    for n in 3..=7 {
        let l = count_l(n).map_err(err)?;
        let a = enumerate_anosov(n, Method::BruteForce).map_err(err)?.count;
        let u = count_u(n).map_err(err)?;
        ensure(l <= a && a <= u, || format!("n = {n}: L = {l}, a = {a}, U = {u}"))?;
        rows.push(format!("{l}<={a}<={u}"));
    }
    Ok(rows.join(", "))
}

fn partition_sum_bounds() -> Outcome {
    let x: BTreeMap<usize, u64> = (1..=3).map(|t| (t, compute_x(t, false).unwrap())).collect();
    let mut rows = Vec::new();
    for n in 3..=7 {
        let a = enumerate_anosov(n, Method::QuotientSynthesis).map_err(err)?.count as u64;
        let report = big_one_bounds(n, &x).map_err(err)?;
        ensure(report.contains(a), || format!("n = {n}: {} <= {a} <= {} fails", report.lower, report.upper))?;
        rows.push(format!("{}<={a}<={}", report.lower, report.upper));
    }
    Ok(rows.join(", "))
}

fn x_sanity() -> Outcome {
    let x: Vec<u64> = (1..=5).map(|t| compute_x(t, false)).collect::<Result<_, _>>().map_err(err)?;
    ensure(x[0] == 2 && x[1] == 4, || format!("X(1), X(2) = {}, {}", x[0], x[1]))?;
    for t in 1..=5u32 {
        let xt = BigUint::from(x[t as usize - 1]);
        let scaled = &xt * (1..=t).product::<u32>();
        ensure(xt <= BigUint::from(1u64) << (t * (t + 1) / 2), || format!("X({t}) above 2^(t(t+1)/2)"))?;
        if t >= 2 {
            ensure(BigUint::from(1u64) << t <= scaled, || format!("2^{t} > X({t}) * {t}!"))?;
            let product = product_lower_bound(t).map_err(err)?;
            ensure(product <= scaled, || format!("product bound {product} > X({t}) * {t}!"))?;
        }
    }
    Ok(format!("X(1..5) = {x:?}"))
}

fn round_trips() -> Outcome {
    let mut checked = 0u64;
    let mut criteria = 0u64;
    let mut bricks = 0u64;
    for k in 1..=4usize {
        let cells: Vec<(usize, usize)> = (0..k).flat_map(|j| (0..=j).map(move |i| (i, j))).collect();
        for wmask in 0..4usize.pow(k as u32) {
            let weights: Vec<u32> = (0..k).map(|i| (wmask / 4usize.pow(i as u32) % 4 + 1) as u32).collect();
            for emask in 0u32..1 << cells.len() {
                let edges: Vec<_> = cells.iter().enumerate().filter(|(b, _)| emask >> b & 1 == 1).map(|(_, &c)| c).collect();
                let w = WeightedGraph::new(weights.clone(), &edges).map_err(err)?;
                checked += 1;
                if check_anosov_criteria(&w) {
                    criteria += 1;
                    let g = deconstruct(&w).map_err(err)?;
                    ensure(is_anosov(&g, false), || format!("criteria hold but deconstruction is not Anosov: {}", w.to_json()))?;
                }
                if check_brick_conditions(&w) {
                    bricks += 1;
                    let back = quotient(&deconstruct(&w).map_err(err)?).map_err(err)?;
                    ensure(
                        weighted_canonical_code(&back).map_err(err)? == weighted_canonical_code(&w).map_err(err)?,
                        || format!("quotient round trip changed {}", w.to_json()),
                    )?;
                }
            }
        }
    }
    Ok(format!("{checked} weighted graphs, {criteria} meet the criteria, {bricks} brick graphs, no counterexample"))
}

fn nu_families() -> Outcome {
    let mut rows = Vec::new();
    for w in (20..=40).step_by(4) {
        let members = nu_family_members(w).map_err(err)?;
        for m in &members {
            let g = deconstruct(&m.quotient).map_err(err)?;
            ensure(is_anosov(&g, false), || format!("w = {w}: member k={} p={} not Anosov", m.k, m.p))?;
            ensure(g.n() + g.edge_count() == w as usize, || format!("w = {w}: member has n + m = {}", g.n() + g.edge_count()))?;
        }
        let count = nu_family_count(w);
        let bound = nu_lower_bound(w, NuFormula::Improved).map_err(err)?;
        ensure(bound.cmp_rational(Ratio::from_integer(count as i128)) == Ordering::Less, || {
            format!("w = {w}: count {count} not above {bound}")
        })?;
        rows.push(format!("w={w}: {count} > {:.3} ({} members)", bound.to_f64(), members.len()));
    }
    Ok(rows.join("; "))
}

fn injection() -> Outcome {
    let mut problems = Vec::new();
    let mut rows = Vec::new();
    for n in 9..=12 {
        let report = verify_injection(n).map_err(err)?;
        let p = partition_count(n);
        let a = enumerate_anosov(n, Method::QuotientSynthesis).map_err(err)?.count;
        if p > a {
            problems.push(format!("n = {n}: p(n) = {p} > a(n) = {a}"));
        }
        if !report.passed() {
            problems.push(format!("n = {n}: {} distinct images of {p}: {}", report.distinct_images, report.violations.join("; ")));
        }
        rows.push(format!("p({n})={p}<=a({n})={a}"));
    }
    if problems.is_empty() {
        Ok(rows.join(", "))
    } else {
        Err(problems.join(" | "))
    }
}

/// Graphs on 1-indexed vertices and their quotients, written as
/// `(weights, edges with (i, i) a loop)`.
fn quotient_tables() -> Vec<(usize, Vec<(usize, usize)>, Vec<u32>, Vec<(usize, usize)>)> {
    fn complete_minus(n: usize, missing: &[(usize, usize)]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                if !missing.contains(&(u, v)) {
                    out.push((u, v));
                }
            }
        }
        out
    }
    fn join(a: &[usize], b: &[usize]) -> Vec<(usize, usize)> {
        a.iter().flat_map(|&u| b.iter().map(move |&v| (u, v))).collect()
    }
    fn clique(a: &[usize]) -> Vec<(usize, usize)> {
        a.iter().enumerate().flat_map(|(i, &u)| a[i + 1..].iter().map(move |&v| (u, v))).collect()
    }
    let cat = |parts: &[Vec<(usize, usize)>]| parts.concat();
    vec![
        (3, complete_minus(3, &[]), vec![3], vec![(0, 0)]),
        (4, complete_minus(4, &[]), vec![4], vec![(0, 0)]),
        (4, vec![(1, 2), (1, 4), (2, 3), (3, 4)], vec![2, 2], vec![(0, 1)]),
        (5, complete_minus(5, &[]), vec![5], vec![(0, 0)]),
        (5, complete_minus(5, &[(4, 5)]), vec![3, 2], vec![(0, 0), (0, 1)]),
        (5, join(&[1, 2, 3], &[4, 5]), vec![3, 2], vec![(0, 1)]),
        (6, complete_minus(6, &[]), vec![6], vec![(0, 0)]),
        (6, complete_minus(6, &[(5, 6)]), vec![4, 2], vec![(0, 0), (0, 1)]),
        (6, join(&[1, 2, 3, 4], &[5, 6]), vec![4, 2], vec![(0, 1)]),
        (6, cat(&[join(&[1, 2, 3], &[4, 5, 6]), clique(&[4, 5, 6])]), vec![3, 3], vec![(1, 1), (0, 1)]),
        (6, join(&[1, 2, 3], &[4, 5, 6]), vec![3, 3], vec![(0, 1)]),
        (6, complete_minus(6, &[(1, 2), (3, 6), (4, 5)]), vec![2, 2, 2], vec![(0, 1), (1, 2), (0, 2)]),
        (7, complete_minus(7, &[]), vec![7], vec![(0, 0)]),
        (7, complete_minus(7, &[(2, 3)]), vec![5, 2], vec![(0, 0), (0, 1)]),
        (7, join(&[1, 2], &[3, 4, 5, 6, 7]), vec![5, 2], vec![(0, 1)]),
        (7, complete_minus(7, &[(5, 6), (5, 7), (6, 7)]), vec![4, 3], vec![(0, 0), (0, 1)]),
        (7, cat(&[join(&[1, 2, 3, 4], &[5, 6, 7]), clique(&[5, 6, 7])]), vec![4, 3], vec![(1, 1), (0, 1)]),
        (7, join(&[1, 2, 3, 4], &[5, 6, 7]), vec![4, 3], vec![(0, 1)]),
        (7, complete_minus(7, &[(1, 2), (3, 4)]), vec![2, 3, 2], vec![(1, 1), (0, 1), (1, 2), (0, 2)]),
        (
            7,
            complete_minus(7, &[(1, 2), (3, 4), (5, 6), (5, 7), (6, 7)]),
            vec![2, 3, 2],
            vec![(0, 1), (1, 2), (0, 2)],
        ),
        (
            7,
            cat(&[join(&[1, 2], &[3, 4, 5, 6, 7]), clique(&[5, 6, 7])]),
            vec![3, 2, 2],
            vec![(0, 0), (0, 1), (1, 2)],
        ),
    ]
}

fn quotient_table_matches() -> Outcome {
    let table = quotient_tables();
    for (idx, (n, edges, weights, qedges)) in table.iter().enumerate() {
        let zero: Vec<_> = edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
        let g = SimpleGraph::from_edges(*n, &zero).map_err(err)?;
        ensure(is_anosov(&g, false), || format!("row {} is not Anosov", idx + 1))?;
        let expected = WeightedGraph::new(weights.clone(), qedges).map_err(err)?;
        let got = quotient(&g).map_err(err)?;
        ensure(
            weighted_canonical_code(&got).map_err(err)? == weighted_canonical_code(&expected).map_err(err)?,
            || format!("row {}: quotient {} expected {}", idx + 1, got.to_json(), expected.to_json()),
        )?;
    }
    Ok(format!("{} graphs", table.len()))
}

/// Direct transcription of the reference twin-class test on adjacency
/// lists.
fn reference_is_anosov(g: &SimpleGraph, allow_disconnected: bool) -> bool {
    let n = g.n();
    let neighbors = |v: usize| -> Vec<usize> { (0..n).filter(|&u| g.has_edge(u, v)).collect() };
    let connected = g.is_connected().unwrap_or(true);
    if !connected && !allow_disconnected {
        return false;
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let n_v = neighbors(v);
        let mut cn_v = n_v.clone();
        cn_v.push(v);
        cn_v.sort();
        let mut class = vec![v];
        for u in 0..n {
            let n_u = neighbors(u);
            let mut cn_u = n_u.clone();
            cn_u.push(u);
            cn_u.sort();
            if (n_v == n_u || cn_v == cn_u) && v != u {
                class.push(u);
                class.sort();
            }
        }
        if !classes.contains(&class) {
            classes.push(class);
        }
    }
    for class in &classes {
        if class.len() == 1 {
            return false;
        }
        if class.len() == 2 {
            for &j in class {
                for &k in class {
                    if neighbors(j) != neighbors(k) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn reference_oracle() -> Outcome {
    let mut total = 0;
    for n in 1..=6 {
        for code in labeled_census(n, |_| true).map_err(err)? {
            let g = code.to_graph().map_err(err)?;
            for allow in [false, true] {
                total += 1;
                ensure(is_anosov(&g, allow) == reference_is_anosov(&g, allow), || {
                    format!("disagreement on {g:?} with allow_disconnected = {allow}")
                })?;
            }
        }
    }
    Ok(format!("{total} comparisons over all graphs with 1..=6 vertices"))
}

fn lie_layer() -> Outcome {
    let mut total = 0;
    for n in 1..=5usize {
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect();
            let g = SimpleGraph::from_edges(n, &edges).map_err(err)?;
            let l = build_lie_algebra(&g).map_err(err)?;
            ensure(l.dim() == n + edges.len(), || format!("dim {} for {g:?}", l.dim()))?;
            ensure(l.verify_two_step(), || format!("not two-step nilpotent: {g:?}"))?;
            total += 1;
        }
    }
    Ok(format!("{total} labeled graphs"))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("golden censuses n = 3..7", golden_censuses),
        ("brute force equals synthesis at n = 8", cross_validation_at_eight),
        ("L(n) <= a(n) <= U(n), n = 3..7", sandwich),
        ("partition-sum bounds on a(n), n = 3..7", partition_sum_bounds),
        ("X(t) sanity, t = 1..5", x_sanity),
        ("criteria and brick round trips, k <= 4, weights <= 4", round_trips),
        ("nu(w) families, w = 20, 24, ..., 40", nu_families),
        ("partition injection, n = 9..12", injection),
        ("quotient tables, n = 3..7", quotient_table_matches),
        ("reference Anosov test, n <= 6", reference_oracle),
        ("Lie algebra dimension and nilpotency, n <= 5", lie_layer),
    ];
    let mut failed = BTreeSet::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = check();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} [{secs:.1}s]: {detail}", i + 1),
            Err(reason) => {
                println!("criterion {:>2} FAIL  {name} [{secs:.1}s]: {reason}", i + 1);
                failed.insert(i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed.len(), criteria.len());
    if !failed.is_empty() {
        println!("failed: {failed:?}");
        std::process::exit(1);
    }
}
