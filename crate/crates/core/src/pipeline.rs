//! End-to-end assembly of vertex sets from searches and candidate lists.

use std::collections::BTreeMap;

use crate::abc::{cubic_classes, cubic_shape, search_abc, AbcPoint, CubicShape, SearchCertificate, Variant};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exact::PrimeSet;
use crate::poly::IntPoly;
use crate::vertex::{
    build_degree1, build_degree2, build_degree3, ingest_units, Completeness, Provenance, Vertex, VertexSet,
};

/// Which search feeds which vertex degree.
pub fn variant_for_degree(d: usize) -> Option<Variant> {
    match d {
        1 => Some(Variant::InfInfInf),
        2 => Some(Variant::InfTwoInf),
        3 => Some(Variant::ThreeTwoInf),
        _ => None,
    }
}

pub fn default_height(variant: Variant) -> u64 {
    match variant {
        Variant::InfInfInf | Variant::InfTwoInf => 1_000_000_000,
        Variant::ThreeTwoInf => 100_000_000_000,
    }
}

/// The prime set searched for `variant`: the cubic construction runs over `P ∪ {2, 3}`
/// and its output is filtered back to `P`.
pub fn search_primes(primes: &PrimeSet, variant: Variant) -> PrimeSet {
    if variant == Variant::ThreeTwoInf {
        PrimeSet::new(primes.primes().iter().copied().chain([2, 3]).collect::<std::collections::BTreeSet<_>>())
            .expect("adding 2 and 3 keeps the set valid")
    } else {
        primes.clone()
    }
}

pub type PointSets = BTreeMap<Variant, (Vec<AbcPoint>, SearchCertificate)>;

/// Runs the searches needed for degrees `1..=max_degree` that are not already in `have`.
pub fn run_searches(
    primes: &PrimeSet,
    max_degree: usize,
    heights: &BTreeMap<Variant, u64>,
    mut have: PointSets,
    budget: &Budget,
) -> Result<PointSets> {
    for d in 1..=max_degree.min(3) {
        let v = variant_for_degree(d).expect("degrees 1..=3 have a search");
        if have.contains_key(&v) {
            continue;
        }
        let h = heights.get(&v).copied().unwrap_or_else(|| default_height(v));
        have.insert(v, search_abc(&search_primes(primes, v), v, h, budget)?);
    }
    Ok(have)
}

/// Builds slices `1..=max_degree`: degrees up to 3 from point sets, anything else from
/// `candidates`. Ingested candidates of degree ≤ 3 must already be present.
pub fn build_vertex_set(
    primes: &PrimeSet,
    max_degree: usize,
    points: &PointSets,
    candidates: &[IntPoly],
) -> Result<VertexSet> {
    if max_degree == 0 {
        return Err(Error::Invalid("max degree must be at least 1".into()));
    }
    let mut vs = VertexSet::new(primes.clone());
    let need = |v: Variant| -> Result<&(Vec<AbcPoint>, SearchCertificate)> {
        let entry = points.get(&v).ok_or_else(|| Error::Invalid(format!("missing {v} points")))?;
        let want = search_primes(primes, v);
        if entry.1.primes != want {
            return Err(Error::Invalid(format!("{v} points are for {}, not {want}", entry.1.primes)));
        }
        Ok(entry)
    };
    for d in 1..=max_degree.min(3) {
        let (pts, cert) = need(variant_for_degree(d).expect("degrees 1..=3 have a search"))?;
        let built = match d {
            1 => build_degree1(pts, primes)?,
            2 => build_degree2(primes, pts)?.irreducible,
            _ => {
                let irr: Vec<AbcPoint> =
                    pts.iter().filter(|p| cubic_shape(&p.u) == CubicShape::Irreducible).cloned().collect();
                let wide = search_primes(primes, Variant::ThreeTwoInf);
                let all = build_degree3(&wide, &cubic_classes(&irr, &wide)?)?.vertices;
                if wide == *primes {
                    all
                } else {
                    all.into_iter()
                        .filter_map(|v| Vertex::new(v.poly, primes, v.class, Provenance::Built).ok())
                        .collect()
                }
            }
        };
        vs.extend(built);
        vs.set_certificate(d, Completeness::from_certificate(cert));
    }
    if !candidates.is_empty() {
        let report = ingest_units(candidates, primes)?;
        for v in &report.vertices {
            if v.degree <= max_degree.min(3) && !vs.contains(&v.poly) {
                return Err(Error::Verification(format!("candidate {} is missing from the built degree-{} slice", v.poly, v.degree)));
            }
        }
        let ingested: Vec<_> = report.vertices.into_iter().filter(|v| v.degree > 3 && v.degree <= max_degree).collect();
        let degrees: Vec<usize> = ingested.iter().map(|v| v.degree).collect();
        vs.extend(ingested);
        for d in degrees {
            vs.set_certificate(d, Completeness::Conditional(format!("assuming the candidate list covers degree {d}")));
        }
    }
    for d in 4..=max_degree {
        if vs.count(d) == 0 {
            vs.set_certificate(d, Completeness::Conditional(format!("no degree-{d} candidates supplied")));
        }
    }
    Ok(vs)
}

/// Searches with default heights and builds degrees `1..=max_degree`.
pub fn vertex_set(primes: &PrimeSet, max_degree: usize, candidates: &[IntPoly], budget: &Budget) -> Result<VertexSet> {
    let points = run_searches(primes, max_degree, &BTreeMap::new(), BTreeMap::new(), budget)?;
    build_vertex_set(primes, max_degree, &points, candidates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::table5_candidates;

    #[test]
    fn little_sets() {
        let p2 = PrimeSet::new([2]).unwrap();
        let vs = vertex_set(&p2, 4, &table5_candidates(), &Budget::default()).unwrap();
        assert_eq!((vs.count(1), vs.count(2), vs.count(3), vs.count(4)), (3, 15, 0, 108));
        assert_eq!(vs.certificates[&1], Completeness::Complete);
        assert!(matches!(vs.certificates[&4], Completeness::Conditional(_)));
    }

    #[test]
    fn missing_points() {
        let p2 = PrimeSet::new([2]).unwrap();
        assert!(build_vertex_set(&p2, 1, &BTreeMap::new(), &[]).is_err());
    }
}
