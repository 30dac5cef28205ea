//! Compatibility graphs and clique tabulation by factorization partition.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exact::{is_prime_u64, PrimeSet};
use crate::poly::{resultant, NormalizedPoly};
use crate::vertex::VertexSet;

/// Largest vertex degree the packed partition keys support.
pub const MAX_VERTEX_DEGREE: usize = 8;

/// A factorization partition, stored as multiplicities of each degree (index 0 is degree 1).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Kappa(Vec<usize>);

impl Kappa {
    pub fn new(mut mult: Vec<usize>) -> Kappa {
        while mult.last() == Some(&0) {
            mult.pop();
        }
        Kappa(mult)
    }

    /// From the degrees of the parts.
    pub fn from_parts(parts: &[usize]) -> Kappa {
        let mut m = vec![0; parts.iter().copied().max().unwrap_or(0)];
        for &d in parts {
            if d > 0 {
                m[d - 1] += 1;
            }
        }
        Kappa::new(m)
    }

    pub fn mult(&self, degree: usize) -> usize {
        degree.checked_sub(1).and_then(|i| self.0.get(i)).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.0
    }

    pub fn total_degree(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &m)| (i + 1) * m).sum()
    }

    pub fn parts(&self) -> usize {
        self.0.iter().sum()
    }

    fn pack(&self) -> Option<u64> {
        if self.0.len() > MAX_VERTEX_DEGREE || self.0.iter().any(|&m| m > 255) {
            return None;
        }
        Some(self.0.iter().enumerate().fold(0, |k, (i, &m)| k | ((m as u64) << (8 * i))))
    }

    fn unpack(key: u64) -> Kappa {
        Kappa::new((0..MAX_VERTEX_DEGREE).map(|i| ((key >> (8 * i)) & 0xff) as usize).collect())
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &m) in self.0.iter().enumerate().rev() {
            if m == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if m == 1 {
                write!(f, "{}", i + 1)?;
            } else {
                write!(f, "{}^{}", i + 1, m)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Kappa {
    type Err = Error;

    /// Accepts `3^4 1`, `2^15,1` or `0` for the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("cannot parse partition '{s}'"));
        let mut parts = Vec::new();
        for tok in s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let (d, m) = match tok.split_once('^') {
                Some((d, m)) => (d.parse::<usize>().map_err(|_| bad())?, m.parse::<usize>().map_err(|_| bad())?),
                None => (tok.parse::<usize>().map_err(|_| bad())?, 1),
            };
            if d == 0 && m == 1 && s.trim() == "0" {
                return Ok(Kappa::default());
            }
            if d == 0 {
                return Err(bad());
            }
            parts.extend(std::iter::repeat_n(d, m));
        }
        if parts.is_empty() {
            return Err(bad());
        }
        Ok(Kappa::from_parts(&parts))
    }
}

impl Serialize for Kappa {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `|⋃_{d ≤ f} P¹(F_{p^d})| − 3`.
pub fn reduction_bound(p: u64, f: usize) -> Result<u128> {
    if !is_prime_u64(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    if f == 0 {
        return Err(Error::Invalid("f must be positive".into()));
    }
    let pow = |k: usize| -> Result<i128> {
        (p as i128).checked_pow(k as u32).ok_or_else(|| Error::Unsupported(format!("{p}^{k} overflows")))
    };
    // 1 + Σ_{e ≤ f} #(elements of exact degree e over F_p)
    let mut total: i128 = 1;
    for e in 1..=f {
        for k in 1..=e {
            if e % k == 0 {
                total += mobius(e / k) as i128 * pow(k)?;
            }
        }
    }
    Ok((total - 3).max(0) as u128)
}

fn mobius(mut n: usize) -> i32 {
    let mut mu = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

#[derive(Clone, Debug)]
pub struct CompatGraph {
    pub primes: PrimeSet,
    pub polys: Vec<NormalizedPoly>,
    pub degrees: Vec<usize>,
    /// Sorted indices `j < i` adjacent to `i`.
    pub lesser: Vec<Vec<u32>>,
    bits: Vec<Vec<u64>>,
    degree_sorted: bool,
}

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

impl CompatGraph {
    /// The graph on a vertex set in its canonical order (degree, then polynomial order).
    pub fn build(vs: &VertexSet) -> Result<CompatGraph> {
        let polys: Vec<NormalizedPoly> = vs.iter().map(|v| v.poly.clone()).collect();
        CompatGraph::from_polys(polys, &vs.primes)
    }

    /// The graph on polynomials in the given order.
    pub fn from_polys(polys: Vec<NormalizedPoly>, primes: &PrimeSet) -> Result<CompatGraph> {
        let degrees: Vec<usize> = polys.iter().map(|p| p.degree()).collect();
        let lesser: Vec<Vec<u32>> = (0..polys.len())
            .into_par_iter()
            .map(|i| {
                (0..i)
                    .filter(|&j| primes.is_smooth(&resultant(polys[i].poly(), polys[j].poly())))
                    .map(|j| j as u32)
                    .collect()
            })
            .collect();
        let bits = lesser
            .iter()
            .enumerate()
            .map(|(i, ns)| {
                let mut b = vec![0u64; words(i)];
                for &j in ns {
                    b[j as usize / 64] |= 1 << (j % 64);
                }
                b
            })
            .collect();
        let degree_sorted = degrees.windows(2).all(|w| w[0] <= w[1]);
        Ok(CompatGraph { primes: primes.clone(), polys, degrees, lesser, bits, degree_sorted })
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn index_of(&self, s: &NormalizedPoly) -> Option<usize> {
        self.polys.iter().position(|p| p == s)
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let (hi, lo) = if i > j { (i, j) } else { (j, i) };
        hi != lo && self.bits[hi][lo / 64] >> (lo % 64) & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.lesser.iter().map(|l| l.len()).sum()
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.adjacent(i, j)).collect()
    }

    /// Number of neighbors of each degree.
    pub fn neighbor_degree_counts(&self, i: usize) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for j in self.neighbors(i) {
            *out.entry(self.degrees[j]).or_insert(0) += 1;
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    fn check_degrees(&self) -> Result<()> {
        if self.max_degree() > MAX_VERTEX_DEGREE {
            return Err(Error::Unsupported(format!("vertex degree above {MAX_VERTEX_DEGREE}")));
        }
        Ok(())
    }

    /// Degree bound on any clique from the first prime outside P.
    pub fn degree_bound(&self) -> Result<u128> {
        let f = self.max_degree().max(1);
        reduction_bound(self.primes.first_good_prime(), f)
    }
}

/// Restrictions applied while walking cliques.
#[derive(Clone, Debug, Default)]
pub struct CliqueFilter {
    /// Only cliques of exactly this partition.
    pub kappa: Option<Kappa>,
    pub max_total_degree: Option<usize>,
    pub max_parts: Option<usize>,
}

impl CliqueFilter {
    pub fn kappa(k: Kappa) -> Self {
        CliqueFilter { kappa: Some(k), ..Default::default() }
    }
}

struct Walker<'a> {
    g: &'a CompatGraph,
    filter: &'a CliqueFilter,
    target: Vec<usize>,
    bound: usize,
    budget: &'a Budget,
    steps: u64,
}

impl Walker<'_> {
    /// Whether a partial clique whose next vertices all have degree ≤ `d` can still reach the target.
    fn feasible(&self, cur: &[usize; MAX_VERTEX_DEGREE + 1], d: usize) -> bool {
        if self.filter.kappa.is_none() {
            return true;
        }
        let sorted = self.g.degree_sorted;
        (1..=MAX_VERTEX_DEGREE).all(|e| {
            let want = self.target.get(e - 1).copied().unwrap_or(0);
            cur[e] <= want && (!sorted || e <= d || cur[e] == want)
        })
    }

    fn accept(&self, cur: &[usize; MAX_VERTEX_DEGREE + 1]) -> bool {
        match &self.filter.kappa {
            Some(_) => (1..=MAX_VERTEX_DEGREE).all(|e| cur[e] == self.target.get(e - 1).copied().unwrap_or(0)),
            None => true,
        }
    }

    fn walk(
        &mut self,
        cand: &[u64],
        cur: &mut [usize; MAX_VERTEX_DEGREE + 1],
        total: usize,
        parts: usize,
        stack: &mut Vec<usize>,
        sink: &mut dyn FnMut(&[usize], &[usize; MAX_VERTEX_DEGREE + 1]) -> Result<()>,
    ) -> Result<()> {
        self.steps += 1;
        if self.steps.is_multiple_of(1 << 20) {
            self.budget.check_time("clique tabulation")?;
        }
        if self.filter.max_parts.is_some_and(|m| parts >= m) {
            return Ok(());
        }
        for (w, &word) in cand.iter().enumerate().rev() {
            let mut word = word;
            while word != 0 {
                let b = 63 - word.leading_zeros() as usize;
                word &= !(1u64 << b);
                let u = w * 64 + b;
                let d = self.g.degrees[u];
                if self.filter.max_total_degree.is_some_and(|m| total + d > m) {
                    continue;
                }
                cur[d] += 1;
                if total + d > self.bound {
                    return Err(Error::Verification(format!(
                        "a clique of degree {} exceeds the reduction bound {}",
                        total + d,
                        self.bound
                    )));
                }
                if self.feasible(cur, d) {
                    stack.push(u);
                    if self.accept(cur) {
                        sink(stack, cur)?;
                    }
                    let lb = &self.g.bits[u];
                    let next: Vec<u64> = if parts == 0 {
                        lb.clone()
                    } else {
                        let n = lb.len().min(cand.len());
                        (0..n).map(|i| cand[i] & lb[i]).collect()
                    };
                    if next.iter().any(|&x| x != 0) {
                        self.walk(&next, cur, total + d, parts + 1, stack, sink)?;
                    }
                    stack.pop();
                }
                cur[d] -= 1;
            }
        }
        Ok(())
    }
}

/// Walks every nonempty clique whose largest index is `top`.
fn walk_from(
    g: &CompatGraph,
    filter: &CliqueFilter,
    budget: &Budget,
    top: usize,
    sink: &mut dyn FnMut(&[usize], &[usize; MAX_VERTEX_DEGREE + 1]) -> Result<()>,
) -> Result<()> {
    let bound = g.degree_bound()?.min(usize::MAX as u128) as usize;
    let target = filter.kappa.as_ref().map(|k| k.multiplicities().to_vec()).unwrap_or_default();
    let mut w = Walker { g, filter, target, bound, budget, steps: 0 };
    let mut cur = [0usize; MAX_VERTEX_DEGREE + 1];
    let mut stack = Vec::new();
    let mut cand = vec![0u64; words(top + 1)];
    cand[top / 64] |= 1 << (top % 64);
    w.walk(&cand, &mut cur, 0, 0, &mut stack, sink)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PartitionTable {
    pub counts: BTreeMap<Kappa, u64>,
}

impl PartitionTable {
    pub fn get(&self, k: &Kappa) -> u64 {
        self.counts.get(k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Count by multiplicities `[a, b, c, …]`.
    pub fn at(&self, mult: &[usize]) -> u64 {
        self.get(&Kappa::new(mult.to_vec()))
    }
}

fn add_count(map: &mut HashMap<u64, u64>, key: u64, by: u64) -> Result<()> {
    let slot = map.entry(key).or_insert(0);
    *slot = slot.checked_add(by).ok_or_else(|| Error::Unsupported("clique count exceeds 2^64".into()))?;
    Ok(())
}

/// Counts cliques by partition without materializing them. The empty clique is included
/// unless a nonempty κ filter excludes it.
pub fn tabulate(g: &CompatGraph, filter: &CliqueFilter, budget: &Budget) -> Result<PartitionTable> {
    g.check_degrees()?;
    let maps: Vec<HashMap<u64, u64>> = (0..g.len())
        .into_par_iter()
        .map(|top| -> Result<HashMap<u64, u64>> {
            let mut local = HashMap::new();
            let mut err = None;
            walk_from(g, filter, budget, top, &mut |_, cur| {
                let key = cur[1..].iter().enumerate().fold(0u64, |k, (i, &m)| k | ((m as u64) << (8 * i)));
                if cur.iter().any(|&m| m > 255) {
                    err = Some(Error::Unsupported("more than 255 factors of one degree".into()));
                }
                add_count(&mut local, key, 1)
            })?;
            match err {
                Some(e) => Err(e),
                None => Ok(local),
            }
        })
        .collect::<Result<_>>()?;
    let mut total: HashMap<u64, u64> = HashMap::new();
    for m in maps {
        for (k, v) in m {
            add_count(&mut total, k, v)?;
        }
    }
    let empty = Kappa::default();
    let include_empty = filter.kappa.as_ref().is_none_or(|k| *k == empty);
    if include_empty {
        add_count(&mut total, empty.pack().unwrap_or(0), 1)?;
    }
    Ok(PartitionTable { counts: total.into_iter().map(|(k, v)| (Kappa::unpack(k), v)).collect() })
}

/// Calls `f` with the vertex indices of every clique passing the filter, in a fixed order:
/// by largest index, then depth first from larger to smaller indices.
pub fn enumerate(
    g: &CompatGraph,
    filter: &CliqueFilter,
    budget: &Budget,
    mut f: impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    g.check_degrees()?;
    for top in 0..g.len() {
        walk_from(g, filter, budget, top, &mut |stack, _| f(stack))?;
    }
    Ok(())
}

/// The cliques passing the filter, as products of their vertices.
pub fn clique_polys(g: &CompatGraph, filter: &CliqueFilter, budget: &Budget) -> Result<Vec<NormalizedPoly>> {
    let mut out = Vec::new();
    enumerate(g, filter, budget, |c| {
        out.push(NormalizedPoly::product(c.iter().map(|&i| &g.polys[i])));
        Ok(())
    })?;
    out.sort();
    Ok(out)
}

/// Number of ordered ways to split items of the given degrees into blocks with the given
/// degree sums.
fn ordered_splittings(degrees: &[usize], blocks: &[usize]) -> u64 {
    fn go(degrees: &[usize], remaining: &mut [usize]) -> u64 {
        let Some((&d, rest)) = degrees.split_first() else {
            return remaining.iter().all(|&r| r == 0) as u64;
        };
        let mut total = 0;
        for i in 0..remaining.len() {
            if remaining[i] >= d {
                remaining[i] -= d;
                total += go(rest, remaining);
                remaining[i] += d;
            }
        }
        total
    }
    let mut rem = blocks.to_vec();
    go(degrees, &mut rem)
}

/// `|U_ν(Z^P)|` for `ν = (ν₁, …, ν_{r−3}, 1, 1, 1)`.
pub fn count_u_nu(g: &CompatGraph, nu: &[usize], budget: &Budget) -> Result<u64> {
    let n = nu.len();
    if n < 3 || nu[n - 3..] != [1, 1, 1] {
        return Err(Error::Invalid("ν must end with 1,1,1".into()));
    }
    let blocks = &nu[..n - 3];
    if blocks.contains(&0) {
        return Err(Error::Invalid("parts of ν must be positive".into()));
    }
    let total: usize = blocks.iter().sum();
    if blocks.is_empty() {
        return Ok(1);
    }
    let max_block = *blocks.iter().max().unwrap_or(&0);
    if max_block > g.max_degree() {
        return Err(Error::Unsupported(format!("ν needs vertices of degree {max_block}, graph has at most {}", g.max_degree())));
    }
    let filter = CliqueFilter { max_total_degree: Some(total), ..Default::default() };
    g.check_degrees()?;
    let sums: Vec<u64> = (0..g.len())
        .into_par_iter()
        .map(|top| -> Result<u64> {
            let mut acc = 0u64;
            walk_from(g, &filter, budget, top, &mut |stack, _| {
                let degs: Vec<usize> = stack.iter().map(|&i| g.degrees[i]).collect();
                if degs.iter().sum::<usize>() == total {
                    acc = acc
                        .checked_add(ordered_splittings(&degs, blocks))
                        .ok_or_else(|| Error::Unsupported("count exceeds 2^64".into()))?;
                }
                Ok(())
            })?;
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    sums.into_iter()
        .try_fold(0u64, |a, b| a.checked_add(b))
        .ok_or_else(|| Error::Unsupported("count exceeds 2^64".into()))
}
