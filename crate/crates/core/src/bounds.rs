//! Counting bounds: the partition-sum sandwich for `a(n)`, the lower bounds
//! on `nu(w)` with their explicit families, and the product lower bound for
//! `X(t) * t!`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::partition::{partitions, Partition};
use crate::quotient::WeightedGraph;

pub use crate::partition::partition_count;

/// Distinct orderings of the parts of `lambda`: `l! / prod_i k_i!` where
/// `k_i` is the multiplicity of the value `i`.
pub fn arrangements(lambda: &Partition) -> BigUint {
    let mut result = factorial(lambda.len());
    let mut parts = lambda.parts().to_vec();
    parts.dedup();
    for value in parts {
        result /= factorial(lambda.multiplicity(value));
    }
    result
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// One partition's contribution to the sandwich.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundTerm {
    pub partition: String,
    pub parts: usize,
    pub x: u64,
    pub arrangements: String,
    /// Smallest part at least 3.
    pub in_lower: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub n: usize,
    /// Half the sum of `X(l(lambda))` over partitions with smallest part >= 3.
    pub lower: Ratio<BigUint>,
    /// Sum of `arrangements(lambda) * X(l(lambda))` over partitions with
    /// smallest part >= 2.
    pub upper: BigUint,
    pub witness: Vec<BoundTerm>,
}

impl BoundReport {
    pub fn contains(&self, count: u64) -> bool {
        let c = BigUint::from(count);
        self.lower <= Ratio::from_integer(c.clone()) && c <= self.upper
    }
}

/// `X` must hold every `t = l(lambda)` for `lambda` a partition of `n` with
/// smallest part at least 2.
pub fn big_one_bounds(n: usize, x: &BTreeMap<usize, u64>) -> Result<BoundReport> {
    if n == 0 {
        return Err(Error::input("bounds need n >= 1"));
    }
    let mut lower = BigUint::zero();
    let mut upper = BigUint::zero();
    let mut witness = Vec::new();
    for lambda in partitions(n, 2) {
        let t = lambda.len();
        let xt = *x
            .get(&t)
            .ok_or_else(|| Error::input(format!("missing X({t}), needed for partition {lambda}")))?;
        let arr = arrangements(&lambda);
        let in_lower = lambda.smallest_part().is_some_and(|s| s >= 3);
        if in_lower {
            lower += xt;
        }
        upper += &arr * xt;
        witness.push(BoundTerm {
            partition: lambda.to_string(),
            parts: t,
            x: xt,
            arrangements: arr.to_string(),
            in_lower,
        });
    }
    Ok(BoundReport {
        n,
        lower: Ratio::new(lower, BigUint::from(2u8)),
        upper,
        witness,
    })
}

type Q = Ratio<i128>;

/// `a + b * sqrt(r)` with rational `a`, `b` and square-free `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadraticSurd {
    a: Q,
    b: Q,
    r: u64,
}

impl QuadraticSurd {
    pub fn new(a: Q, b: Q, r: u64) -> Self {
        // Pull square factors out of the radicand.
        let (mut b, mut rest, mut f) = (b, r, 2u64);
        while f * f <= rest {
            while rest % (f * f) == 0 {
                rest /= f * f;
                b *= Q::from_integer(f as i128);
            }
            f += 1;
        }
        if rest <= 1 || b.is_zero() {
            let root = if rest == 0 { Q::zero() } else { Q::one() };
            return QuadraticSurd { a: a + b * root, b: Q::zero(), r: 0 };
        }
        QuadraticSurd { a, b, r: rest }
    }

    pub fn rational_part(&self) -> Q {
        self.a
    }

    pub fn irrational_coefficient(&self) -> Q {
        self.b
    }

    pub fn radicand(&self) -> u64 {
        self.r
    }

    pub fn as_rational(&self) -> Option<Q> {
        self.b.is_zero().then_some(self.a)
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        let (x, y) = (self.a, self.b);
        let zero = Q::zero();
        match (x.cmp(&zero), y.cmp(&zero)) {
            (sx, Ordering::Equal) => sx,
            (Ordering::Equal, sy) => sy,
            (sx, sy) if sx == sy => sx,
            (sx, _) => {
                // Opposite signs: compare x^2 with y^2 r.
                let lhs = x * x;
                let rhs = y * y * Q::from_integer(self.r as i128);
                match lhs.cmp(&rhs) {
                    Ordering::Equal => Ordering::Equal,
                    Ordering::Greater => sx,
                    Ordering::Less => sx.reverse(),
                }
            }
        }
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, c: Q) -> Ordering {
        QuadraticSurd { a: self.a - c, ..*self }.signum()
    }

    /// Exact comparison; `None` when the radicands differ and neither side
    /// is rational.
    pub fn partial_cmp_surd(&self, other: &QuadraticSurd) -> Option<Ordering> {
        if other.b.is_zero() {
            return Some(self.cmp_rational(other.a));
        }
        if self.b.is_zero() {
            return Some(other.cmp_rational(self.a).reverse());
        }
        (self.r == other.r).then(|| {
            QuadraticSurd { a: self.a - other.a, b: self.b - other.b, r: self.r }.signum()
        })
    }

    /// Rational `[lo, hi]` containing the value with `hi - lo <= 1e-9`.
    pub fn enclosure(&self) -> (Q, Q) {
        if self.b.is_zero() {
            return (self.a, self.a);
        }
        const SCALE: u128 = 10_000_000_000;
        let s = (self.r as u128 * SCALE * SCALE).isqrt();
        let lo_root = Q::new(s as i128, SCALE as i128);
        let hi_root = Q::new(s as i128 + 1, SCALE as i128);
        let (p, q) = (self.a + self.b * lo_root, self.a + self.b * hi_root);
        // Width is |b| * 1e-10; coefficients here stay below 10.
        if p <= q {
            (p, q)
        } else {
            (q, p)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclosure();
        (ratio_f64(lo) + ratio_f64(hi)) / 2.0
    }
}

fn ratio_f64(q: Q) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{} {sign} {}*sqrt({})", self.a, self.b.abs(), self.r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NuFormula {
    /// `w/3 - sqrt(2w) - 9/2`.
    Improved,
    /// `(w - 3 sqrt(2w) - 17) / 12`.
    DaniMainkar,
}

/// Lower bound on the number of Anosov graphs with `n + m = w`.
pub fn nu_lower_bound(w: u64, formula: NuFormula) -> Result<QuadraticSurd> {
    if w == 0 {
        return Err(Error::input("nu bound needs w >= 1"));
    }
    let w = w as i128;
    Ok(match formula {
        NuFormula::Improved => QuadraticSurd::new(Q::new(w, 3) - Q::new(9, 2), -Q::one(), 2 * w as u64),
        NuFormula::DaniMainkar => QuadraticSurd::new(Q::new(w - 17, 12), Q::new(-1, 4), 2 * w as u64),
    })
}

/// Weighted graph from the `nu(w)` construction: vertex 0 of weight `q`
/// (looped iff `loop0`), vertices `1..=k` of weight 2 carrying the edges of
/// `h`, and the single edge `0-1`.
pub fn family_quotient(k: usize, p: usize, q: u32, loop0: bool, h: &SimpleGraph) -> Result<WeightedGraph> {
    let min_q = if loop0 { 3 } else { 2 };
    if q < min_q {
        return Err(Error::input(format!(
            "q must be at least {min_q}{}, got {q}",
            if loop0 { " with a loop" } else { "" }
        )));
    }
    if k == 0 || h.n() != k {
        return Err(Error::input(format!("H must have k = {k} >= 1 vertices, has {}", h.n())));
    }
    if h.edge_count() != p {
        return Err(Error::input(format!("H has {} edges, expected p = {p}", h.edge_count())));
    }
    if p + 1 < k || p > k * (k - 1) / 2 {
        return Err(Error::input(format!("p = {p} outside [k-1, k(k-1)/2] for k = {k}")));
    }
    if !h.is_connected()? {
        return Err(Error::input("H must be connected"));
    }
    let mut edges = vec![(0, 1)];
    if loop0 {
        edges.push((0, 0));
    }
    edges.extend(h.edges().into_iter().map(|(u, v)| (u + 1, v + 1)));
    let mut weights = vec![q];
    weights.extend(std::iter::repeat_n(2, k));
    WeightedGraph::new(weights, &edges)
}

/// Vertex and edge counts of the deconstruction of `family_quotient`.
pub fn family_dimensions(k: usize, p: usize, q: u32, loop0: bool) -> (usize, usize) {
    let q = q as usize;
    let n = 2 * k + q;
    let m = if loop0 { (q * q + 3 * q + 8 * p) / 2 } else { 4 * p + 2 * q };
    (n, m)
}

/// The two families used for `nu(w)`, with `alpha = k + 2p` chosen by the
/// parity of `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyParameters {
    pub loop0: bool,
    pub q: u32,
    /// `2 * alpha`, so that odd values record a non-integer `alpha`.
    pub twice_alpha: i64,
}

pub fn family_parameters(w: u64) -> Vec<FamilyParameters> {
    let w = w as i64;
    let mut out = Vec::new();
    if w > 9 {
        let (q, offset) = if w % 2 == 0 { (2, 6) } else { (3, 9) };
        out.push(FamilyParameters { loop0: false, q, twice_alpha: w - offset });
    }
    if w > 18 {
        let (q, offset) = if w % 2 == 0 { (4, 18) } else { (3, 12) };
        out.push(FamilyParameters { loop0: true, q, twice_alpha: w - offset });
    }
    out
}

/// `floor((alpha + 2) / 3) - ceil(sqrt(alpha)) + 1`, clamped at 0, for
/// `alpha = twice_alpha / 2`.
pub fn interval_count(twice_alpha: i64) -> u64 {
    if twice_alpha < 0 {
        return 0;
    }
    let hi = (twice_alpha + 4).div_euclid(6);
    let mut lo = 0i64;
    while 2 * lo * lo < twice_alpha {
        lo += 1;
    }
    (hi - lo + 1).max(0) as u64
}

/// Number of `k` values counted by the construction, summed over the
/// applicable families. `w <= 9` gives 0.
pub fn nu_family_count(w: u64) -> u64 {
    family_parameters(w).iter().map(|f| interval_count(f.twice_alpha)).sum()
}

#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub loop0: bool,
    pub q: u32,
    pub k: usize,
    pub p: usize,
    pub n: usize,
    pub m: usize,
    pub quotient: WeightedGraph,
}

/// Connected graph on `k` vertices with `p` edges: a path plus the
/// remaining pairs in column order.
pub fn connected_with_edges(k: usize, p: usize) -> Result<SimpleGraph> {
    if k == 0 || p + 1 < k || p > k * (k - 1) / 2 {
        return Err(Error::input(format!("no connected graph on {k} vertices with {p} edges")));
    }
    let mut g = SimpleGraph::new(k)?;
    for v in 1..k {
        g.add_edge(v - 1, v)?;
    }
    let extra = (1..k).flat_map(|j| (0..j).map(move |i| (i, j))).filter(|&(i, j)| j > i + 1);
    for (i, j) in extra.take(p - (k - 1)) {
        g.add_edge(i, j)?;
    }
    Ok(g)
}

/// Every member the construction actually produces for `w`: integer
/// `alpha`, `k` in the interval, and `p = (alpha - k) / 2` an integer in
/// `[k-1, k(k-1)/2]`.
pub fn nu_family_members(w: u64) -> Result<Vec<FamilyMember>> {
    let mut out = Vec::new();
    for f in family_parameters(w) {
        if f.twice_alpha % 2 != 0 {
            continue;
        }
        let alpha = (f.twice_alpha / 2) as usize;
        for k in 1..=alpha {
            if !(alpha - k).is_multiple_of(2) {
                continue;
            }
            let p = (alpha - k) / 2;
            if p + 1 < k || p > k * (k - 1) / 2 {
                continue;
            }
            let h = connected_with_edges(k, p)?;
            let quotient = family_quotient(k, p, f.q, f.loop0, &h)?;
            let (n, m) = family_dimensions(k, p, f.q, f.loop0);
            out.push(FamilyMember { loop0: f.loop0, q: f.q, k, p, n, m, quotient });
        }
    }
    Ok(out)
}

/// `2^(t-1) (2^t - 1) prod_{i=2}^{t-1} max(2^(t-i) - i, 1)`, a lower bound
/// on `X(t) * t!`.
pub fn product_lower_bound(t: u32) -> Result<BigUint> {
    if t < 2 {
        return Err(Error::input("product bound needs t >= 2"));
    }
    let pow = |e: u32| BigInt::one() << e as usize;
    let mut result: BigInt = pow(t - 1) * (pow(t) - 1);
    for i in 2..t {
        result *= (pow(t - i) - i).max(BigInt::one());
    }
    Ok(result.to_biguint().expect("positive"))
}
