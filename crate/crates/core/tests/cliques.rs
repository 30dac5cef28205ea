use std::collections::BTreeSet;

use polytab::clique::{clique_polys, enumerate, tabulate, CliqueFilter, CompatGraph, Kappa};
use polytab::data::{published_table, table5_candidates};
use polytab::io::{read_table_csv, write_table_csv, TableFile, VertexSetFile};
use polytab::pipeline::vertex_set;
use polytab::poly::{check_membership, NormalizedPoly};
use polytab::vertex::VertexSet;
use polytab::{Budget, PrimeSet};

fn v2() -> VertexSet {
    vertex_set(&PrimeSet::new([2]).unwrap(), 4, &table5_candidates(), &Budget::default()).unwrap()
}

fn v23_quadratic() -> VertexSet {
    vertex_set(&PrimeSet::new([2, 3]).unwrap(), 2, &[], &Budget::default()).unwrap()
}

#[test]
fn little_table() {
    let vs = v2().truncated(2);
    let tab = tabulate(&CompatGraph::build(&vs).unwrap(), &CliqueFilter::default(), &Budget::default()).unwrap();
    assert!(published_table("little2").unwrap().compare(&tab).ok());
}

#[test]
fn vertex_order_does_not_matter() {
    let vs = v23_quadratic();
    let p = vs.primes.clone();
    let polys: Vec<NormalizedPoly> = vs.iter().map(|v| v.poly.clone()).collect();
    let mut rev = polys.clone();
    rev.reverse();
    let mut shuffled = polys.clone();
    shuffled.rotate_left(polys.len() / 3);
    let tab = |ps: Vec<NormalizedPoly>| {
        tabulate(&CompatGraph::from_polys(ps, &p).unwrap(), &CliqueFilter::default(), &Budget::default()).unwrap()
    };
    let a = tab(polys);
    assert_eq!(a, tab(rev));
    assert_eq!(a, tab(shuffled));
}

#[test]
fn counting_matches_enumeration() {
    let vs = v23_quadratic();
    let g = CompatGraph::build(&vs).unwrap();
    let tab = tabulate(&g, &CliqueFilter::default(), &Budget::default()).unwrap();
    let mut listed = 0u64;
    enumerate(&g, &CliqueFilter::default(), &Budget::default(), |_| {
        listed += 1;
        Ok(())
    })
    .unwrap();
    // the walk does not report the empty clique
    assert_eq!(listed + 1, tab.total());
    for (k, &n) in tab.counts.iter().filter(|(k, _)| k.total_degree() > 0) {
        let polys = clique_polys(&g, &CliqueFilter::kappa(k.clone()), &Budget::default()).unwrap();
        assert_eq!(polys.len() as u64, n, "{k}");
        if k.total_degree() <= 6 {
            for s in &polys {
                assert!(check_membership(s, &vs.primes).ok, "{s}");
            }
        }
    }
}

#[test]
fn products_are_distinct() {
    let vs = v2();
    let g = CompatGraph::build(&vs).unwrap();
    let k: Kappa = "4^2 2^3 1".parse().unwrap();
    let polys = clique_polys(&g, &CliqueFilter::kappa(k), &Budget::default()).unwrap();
    let set: BTreeSet<_> = polys.iter().cloned().collect();
    assert_eq!(set.len(), 3);
}

#[test]
fn truncation_is_a_restriction() {
    let vs = v2();
    let full = tabulate(&CompatGraph::build(&vs).unwrap(), &CliqueFilter::default(), &Budget::default()).unwrap();
    let low = tabulate(&CompatGraph::build(&vs.truncated(2)).unwrap(), &CliqueFilter::default(), &Budget::default()).unwrap();
    for (k, n) in &low.counts {
        assert_eq!(full.get(k), *n, "{k}");
    }
}

#[test]
fn table_round_trips() {
    let vs = v2();
    let tab = tabulate(&CompatGraph::build(&vs).unwrap(), &CliqueFilter::default(), &Budget::default()).unwrap();
    let mut csv = Vec::new();
    write_table_csv(&tab, 4, &mut csv).unwrap();
    assert_eq!(read_table_csv(csv.as_slice()).unwrap(), tab);
    let json = serde_json::to_string(&TableFile::new(&tab, &vs.primes, 4)).unwrap();
    let back: TableFile = serde_json::from_str(&json).unwrap();
    assert_eq!(back.into_table().unwrap(), tab);
}

#[test]
fn vertex_file_round_trips() {
    let vs = v2();
    let json = serde_json::to_string(&VertexSetFile::new(&vs)).unwrap();
    let back: VertexSetFile = serde_json::from_str(&json).unwrap();
    let vs2 = back.into_vertex_set().unwrap();
    assert_eq!(vs2.len(), vs.len());
    assert!(vs.iter().all(|v| vs2.contains(&v.poly)));
}

#[test]
fn tampered_vertex_file_is_rejected() {
    let vs = v2().truncated(1);
    let json = serde_json::to_string(&VertexSetFile::new(&vs)).unwrap();
    let bad = json.replacen("\"-2\"", "\"-3\"", 1);
    assert_ne!(bad, json);
    let back: VertexSetFile = serde_json::from_str(&bad).unwrap();
    assert!(back.into_vertex_set().is_err());
}
