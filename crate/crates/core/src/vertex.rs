//! Irreducible vertex sets by degree.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abc::{AbcPoint, ClassDatum, CubicClass, SearchCertificate, Variant};
use crate::error::{Error, Result};
use crate::exact::{is_square, squarefree_part, PrimeSet};
use crate::jinv::{indexed_cubic, roots_of_f, ProjPoint};
use crate::poly::{
    canonical_representative, check_membership, factor_small, is_irreducible, rational_roots, s3_orbit, IntPoly,
    MembershipReport, NormalizedPoly,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Built,
    Ingested,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexClass {
    Delta(#[serde(with = "crate::io::bigint_str")] BigInt),
    Cubic(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct Vertex {
    pub poly: NormalizedPoly,
    pub degree: usize,
    pub class: Option<VertexClass>,
    pub provenance: Provenance,
    #[serde(skip)]
    pub report: MembershipReport,
}

impl Vertex {
    /// Verifies membership and irreducibility.
    pub fn new(poly: NormalizedPoly, primes: &PrimeSet, class: Option<VertexClass>, provenance: Provenance) -> Result<Vertex> {
        let report = check_membership(&poly, primes);
        if !report.ok {
            return Err(Error::Verification(format!("{poly} fails {:?} for {primes}", report.failures)));
        }
        if !is_irreducible(&poly)? {
            return Err(Error::Verification(format!("{poly} is reducible")));
        }
        Ok(Vertex { degree: poly.degree(), poly, class, provenance, report })
    }
}

/// How much of a degree slice is known to be present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Completeness {
    Complete,
    /// Complete under a stated assumption.
    Conditional(String),
    /// Complete only up to the given search height.
    SearchBounded(u64),
}

impl Completeness {
    pub fn from_certificate(c: &SearchCertificate) -> Completeness {
        if c.complete {
            Completeness::Complete
        } else {
            Completeness::SearchBounded(c.height_bound)
        }
    }
}

#[derive(Clone, Debug)]
pub struct VertexSet {
    pub primes: PrimeSet,
    slices: BTreeMap<usize, BTreeMap<NormalizedPoly, Vertex>>,
    pub certificates: BTreeMap<usize, Completeness>,
}

impl VertexSet {
    pub fn new(primes: PrimeSet) -> Self {
        VertexSet { primes, slices: BTreeMap::new(), certificates: BTreeMap::new() }
    }

    /// Adds vertices, keeping the first copy of duplicates.
    pub fn extend(&mut self, vertices: impl IntoIterator<Item = Vertex>) {
        for v in vertices {
            self.slices.entry(v.degree).or_default().entry(v.poly.clone()).or_insert(v);
        }
    }

    pub fn set_certificate(&mut self, degree: usize, c: Completeness) {
        self.certificates.insert(degree, c);
    }

    pub fn degree(&self, d: usize) -> Vec<&Vertex> {
        self.slices.get(&d).map(|m| m.values().collect()).unwrap_or_default()
    }

    pub fn count(&self, d: usize) -> usize {
        self.slices.get(&d).map_or(0, |m| m.len())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.slices.iter().filter(|(_, m)| !m.is_empty()).map(|(&d, _)| d).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().last().copied().unwrap_or(0)
    }

    /// All vertices ordered by degree, then by the polynomial order.
    pub fn iter(&self) -> impl Iterator<Item = &Vertex> {
        self.slices.values().flat_map(|m| m.values())
    }

    pub fn len(&self) -> usize {
        self.slices.values().map(|m| m.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, s: &NormalizedPoly) -> bool {
        self.slices.get(&s.degree()).is_some_and(|m| m.contains_key(s))
    }

    /// Keeps only the slices of degree at most `f`.
    pub fn truncated(&self, f: usize) -> VertexSet {
        VertexSet {
            primes: self.primes.clone(),
            slices: self.slices.range(..=f).map(|(&d, m)| (d, m.clone())).collect(),
            certificates: self.certificates.range(..=f).map(|(&d, c)| (d, c.clone())).collect(),
        }
    }

    /// Polynomials whose S₃-orbit is not contained in the set.
    pub fn s3_defects(&self) -> Vec<NormalizedPoly> {
        self.iter()
            .flat_map(|v| s3_orbit(&v.poly))
            .filter(|s| !self.contains(s))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Histogram of S₃-orbit sizes in a degree slice.
    pub fn orbit_sizes(&self, d: usize) -> BTreeMap<usize, usize> {
        let mut seen = BTreeSet::new();
        let mut out = BTreeMap::new();
        for v in self.degree(d) {
            let rep = canonical_representative(&v.poly);
            if seen.insert(rep) {
                *out.entry(s3_orbit(&v.poly).len()).or_insert(0) += 1;
            }
        }
        out
    }
}

fn rational(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// The linear vertices `q·t − p` for `u = p/q`.
pub fn build_degree1(points: &[AbcPoint], primes: &PrimeSet) -> Result<Vec<Vertex>> {
    points
        .iter()
        .map(|pt| {
            let s = NormalizedPoly::new(IntPoly::new(vec![-pt.u.numer().clone(), pt.u.denom().clone()]))?;
            Vertex::new(s, primes, None, Provenance::Built)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct SplitQuadratic {
    pub poly: NormalizedPoly,
    pub factors: [NormalizedPoly; 2],
    /// Class of the generating triple.
    pub delta: BigInt,
}

#[derive(Clone, Debug, Default)]
pub struct Degree2 {
    pub irreducible: Vec<Vertex>,
    /// Products of two compatible linear polynomials, with their factors.
    pub split: Vec<SplitQuadratic>,
    /// Candidate triples whose polynomial failed separability or membership.
    pub discarded: usize,
}

impl Degree2 {
    pub fn total(&self) -> usize {
        self.irreducible.len() + self.split.len()
    }
}

fn delta_poly(w0: &BigRational, w1: &BigRational, winf: &BigRational) -> BigRational {
    let b = w1 - w0 - winf;
    &b * &b - w0 * winf * BigRational::from_integer(4.into())
}

/// `w_∞ t² + (w₁ − w₀ − w_∞) t + w₀`, scaled to a normalized polynomial.
pub fn quadratic_from_w(w0: &BigRational, w1: &BigRational, winf: &BigRational) -> Result<NormalizedPoly> {
    let c = [w0.clone(), w1 - w0 - winf, winf.clone()];
    Ok(crate::poly::normalize(&c)?.0)
}

/// Recovers `(w₀, w₁, w_∞) = −Δ(u)/(4u₀u₁u_∞)·(u₀, u₁, u_∞)` from a quadratic.
pub fn w_triple(s: &NormalizedPoly) -> Option<[BigRational; 3]> {
    if s.degree() != 2 {
        return None;
    }
    let c: Vec<BigRational> = s.coeffs().iter().map(rational).collect();
    let (u0, uinf) = (c[0].clone(), c[2].clone());
    let u1 = &c[1] + &u0 + &uinf;
    let prod = &u0 * &u1 * &uinf;
    if prod.is_zero() {
        return None;
    }
    let k = -delta_poly(&u0, &u1, &uinf) / (prod * BigRational::from_integer(4.into()));
    Some([&k * &u0, &k * &u1, &k * &uinf])
}

/// The quadratic members obtained from `∞2∞` points, split into irreducible vertices and
/// products of two linear factors.
pub fn build_degree2(primes: &PrimeSet, points: &[AbcPoint]) -> Result<Degree2> {
    if !primes.contains(2) {
        return Err(Error::Invalid("the quadratic construction needs 2 ∈ P".into()));
    }
    let mut classes: BTreeMap<BigInt, Vec<BigRational>> = BTreeMap::new();
    for pt in points {
        if pt.variant != Variant::InfTwoInf {
            return Err(Error::Invalid(format!("expected inf-2-inf points, got {}", pt.variant)));
        }
        let delta = match &pt.class {
            ClassDatum::Delta(d) => d.clone(),
            _ => squarefree_part(&(pt.u.numer() * (pt.u.denom() - pt.u.numer())))?,
        };
        classes.entry(delta).or_default().push(pt.u.clone());
    }
    let four = BigRational::from_integer(4.into());
    let per_class: Vec<(BigInt, Vec<[BigRational; 3]>)> = classes
        .into_iter()
        .map(|(delta, mut ws)| {
            ws.push(BigRational::one());
            let mut triples = Vec::new();
            for w0 in &ws {
                for w1 in &ws {
                    for winf in &ws {
                        if delta_poly(w0, w1, winf) == -(w0 * w1 * winf * &four) {
                            triples.push([w0.clone(), w1.clone(), winf.clone()]);
                        }
                    }
                }
            }
            (delta, triples)
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Degree2::default();
    for (delta, triples) in per_class {
        for [w0, w1, winf] in triples {
            let s = quadratic_from_w(&w0, &w1, &winf)?;
            if seen.contains(&s) {
                continue;
            }
            let report = check_membership(&s, primes);
            if !report.ok {
                out.discarded += 1;
                continue;
            }
            seen.insert(s.clone());
            if is_square(&report.disc_value) {
                let roots = rational_roots(s.poly());
                let [(r0, _), (r1, _)] = <[_; 2]>::try_from(roots)
                    .map_err(|_| Error::Verification(format!("{s} has square discriminant but no two roots")))?;
                let lin = |r: &BigRational| NormalizedPoly::new(IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]));
                out.split.push(SplitQuadratic { poly: s, factors: [lin(&r0)?, lin(&r1)?], delta: delta.clone() });
            } else {
                out.irreducible.push(Vertex::new(s, primes, Some(VertexClass::Delta(delta.clone())), Provenance::Built)?);
            }
        }
    }
    out.irreducible.sort_by(|a, b| a.poly.cmp(&b.poly));
    out.split.sort_by(|a, b| a.poly.cmp(&b.poly));
    Ok(out)
}

impl Degree2 {
    /// Number of quadratics of each generating class, split ones included.
    pub fn counts_by_delta(&self) -> BTreeMap<BigInt, usize> {
        let mut out = BTreeMap::new();
        for v in &self.irreducible {
            if let Some(VertexClass::Delta(d)) = &v.class {
                *out.entry(d.clone()).or_insert(0) += 1;
            }
        }
        for s in &self.split {
            *out.entry(s.delta.clone()).or_insert(0) += 1;
        }
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct Degree3 {
    pub vertices: Vec<Vertex>,
    /// Candidates built directly from the indexed family, before S₃ closure.
    pub direct: usize,
    pub discarded: usize,
}

/// Candidates `s^{m,n}` for one class before verification.
pub fn degree3_candidates(class: &CubicClass) -> Result<Vec<IntPoly>> {
    let js: Vec<BigRational> = class.members.iter().map(|p| p.u.clone()).collect();
    let mut ks = js.clone();
    ks.push(BigRational::zero());
    let mut out = Vec::new();
    for j in &js {
        let roots: Vec<Vec<ProjPoint>> = ks
            .iter()
            .map(|k| Ok(roots_of_f(j, k)?.into_iter().map(|r| r.0).collect()))
            .collect::<Result<_>>()?;
        for ms in &roots {
            for ns in &roots {
                for m in ms {
                    for n in ns {
                        if let Some(s) = indexed_cubic(j, m, n) {
                            out.push(s);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The cubic vertices attached to each class of irreducible `32∞` points.
pub fn build_degree3(primes: &PrimeSet, classes: &[CubicClass]) -> Result<Degree3> {
    if !(primes.contains(2) && primes.contains(3)) {
        return Err(Error::Invalid("the cubic construction needs 2, 3 ∈ P".into()));
    }
    let per_class: Vec<(usize, usize, BTreeSet<NormalizedPoly>)> = classes
        .par_iter()
        .map(|class| -> Result<_> {
            let mut direct = BTreeSet::new();
            let mut discarded = 0;
            for s in degree3_candidates(class)? {
                let s = NormalizedPoly::new(s)?;
                if direct.contains(&s) {
                    continue;
                }
                if check_membership(&s, primes).ok && rational_roots(s.poly()).is_empty() {
                    direct.insert(s);
                } else {
                    discarded += 1;
                }
            }
            let n = direct.len();
            let closed: BTreeSet<NormalizedPoly> = direct.iter().flat_map(s3_orbit).collect();
            Ok((n, discarded, closed))
        })
        .collect::<Result<_>>()?;
    let mut out = Degree3::default();
    let mut seen = BTreeSet::new();
    for (class, (direct, discarded, polys)) in classes.iter().zip(per_class) {
        out.direct += direct;
        out.discarded += discarded;
        for s in polys {
            if seen.insert(s.clone()) {
                out.vertices.push(Vertex::new(s, primes, Some(VertexClass::Cubic(class.id)), Provenance::Built)?);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default)]
pub struct IngestReport {
    pub vertices: Vec<Vertex>,
    pub rejected: Vec<(IntPoly, String)>,
}

/// Verifies candidate polynomials and expands them to full S₃-orbits.
pub fn ingest_units(candidates: &[IntPoly], primes: &PrimeSet) -> Result<IngestReport> {
    let mut out = IngestReport::default();
    let mut seen = BTreeSet::new();
    for c in candidates {
        let s = match NormalizedPoly::new(c.clone()) {
            Ok(s) => s,
            Err(e) => {
                out.rejected.push((c.clone(), e.to_string()));
                continue;
            }
        };
        let report = check_membership(&s, primes);
        if !report.ok {
            out.rejected.push((c.clone(), format!("fails {:?}", report.failures)));
            continue;
        }
        let factors = factor_small(&s)?;
        if factors.len() != 1 || factors[0].1 != 1 {
            out.rejected.push((c.clone(), "reducible".into()));
            continue;
        }
        for t in s3_orbit(&s) {
            if seen.insert(t.clone()) {
                out.vertices.push(Vertex::new(t, primes, None, Provenance::Ingested)?);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VertexDiff {
    pub degree: usize,
    pub only_left: Vec<NormalizedPoly>,
    pub only_right: Vec<NormalizedPoly>,
}

impl VertexDiff {
    pub fn is_empty(&self) -> bool {
        self.only_left.is_empty() && self.only_right.is_empty()
    }

    pub fn len(&self) -> usize {
        self.only_left.len() + self.only_right.len()
    }
}

/// Symmetric difference of the degree-`d` slices.
pub fn cross_validate(a: &VertexSet, b: &VertexSet, degree: usize) -> Result<VertexDiff> {
    if a.primes != b.primes {
        return Err(Error::Invalid(format!("prime sets differ: {} vs {}", a.primes, b.primes)));
    }
    let sa: BTreeSet<_> = a.degree(degree).into_iter().map(|v| v.poly.clone()).collect();
    let sb: BTreeSet<_> = b.degree(degree).into_iter().map(|v| v.poly.clone()).collect();
    Ok(VertexDiff {
        degree,
        only_left: sa.difference(&sb).cloned().collect(),
        only_right: sb.difference(&sa).cloned().collect(),
    })
}
