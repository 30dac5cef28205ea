//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Known deviations recorded in the decisions ledger print FAIL but do not fail the run;
//! anything else that fails makes the process exit nonzero.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use polytab::abc::{cubic_classes, cubic_shape, search_abc, CubicShape, Variant};
use polytab::clique::{clique_polys, count_u_nu, tabulate, CliqueFilter, CompatGraph, Kappa};
use polytab::data::{named, published_table, table5_candidates, DEGREE1_ROW_2357, TABLE3};
use polytab::generators::{cyclo_series, fractal_family, fractal_products, verify_named};
use polytab::jinv::{indexed_cubic, roots_of_f};
use polytab::packets::pgl2_packets;
use polytab::pipeline::vertex_set;
use polytab::poly::{
    check_membership, discriminant, is_irreducible, resultant, s3_transform, IntPoly, NormalizedPoly, S3,
};
use polytab::vertex::{build_degree1, build_degree2, build_degree3, quadratic_from_w, VertexClass, VertexSet};
use polytab::{Budget, PrimeSet};

enum Outcome {
    Pass(String),
    Fail(String),
    /// Fails as stated; the reason is recorded as a deviation.
    Known(String),
}

type Check = Result<Outcome, String>;

fn ps(p: &[u64]) -> PrimeSet {
    PrimeSet::new(p.iter().copied()).unwrap()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn np(c: &[i64]) -> NormalizedPoly {
    NormalizedPoly::from_i64(c).unwrap()
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let el = t.elapsed();
    if el > limit {
        return Err(format!("{what} took {el:.1?}, limit {limit:?}"));
    }
    Ok(())
}

fn pass_if(ok: bool, msg: String) -> Check {
    Ok(if ok { Outcome::Pass(msg) } else { Outcome::Fail(msg) })
}

struct Sets {
    v2: VertexSet,
    v23: VertexSet,
    v235: VertexSet,
}

fn c1_searches() -> Check {
    let b = Budget::unlimited();
    let t = Instant::now();
    let (p1, c1) = e(search_abc(&ps(&[2, 3, 5, 7]), Variant::InfInfInf, 1_000_000_000, &b))?;
    within(t, Duration::from_secs(300), "∞∞∞ search")?;
    let t = Instant::now();
    let (p2, _) = e(search_abc(&ps(&[2, 3, 5]), Variant::InfTwoInf, 1_000_000_000, &b))?;
    within(t, Duration::from_secs(120), "∞2∞ search")?;
    let t = Instant::now();
    let (p3, _) = e(search_abc(&ps(&[2, 3]), Variant::ThreeTwoInf, 100_000_000_000, &b))?;
    within(t, Duration::from_secs(900), "32∞ search")?;
    let max_h = p1.iter().map(|p| p.height).max().unwrap_or(0);
    let shapes = |s: CubicShape| p3.iter().filter(|p| cubic_shape(&p.u) == s).count();
    let split = (shapes(CubicShape::Irreducible), shapes(CubicShape::LinearQuadratic), shapes(CubicShape::Split));
    let ok = p1.len() == 375 && max_h == 4375 && c1.complete && p2.len() == 183 && p3.len() == 81 && split == (54, 24, 3);
    pass_if(ok, format!("|T∞∞∞({{2,3,5,7}})| = {} (max height {max_h}), |T∞2∞({{2,3,5}})| = {}, |T32∞({{2,3}})| = {} split {split:?}", p1.len(), p2.len(), p3.len()))
}

fn c2_degree1_row() -> Check {
    let t = Instant::now();
    let p = ps(&[2, 3, 5, 7]);
    let (pts, _) = e(search_abc(&p, Variant::InfInfInf, 1_000_000_000, &Budget::unlimited()))?;
    let mut vs = VertexSet::new(p.clone());
    vs.extend(e(build_degree1(&pts, &p))?);
    let g = e(CompatGraph::build(&vs))?;
    let tab = e(tabulate(&g, &CliqueFilter::default(), &Budget::unlimited()))?;
    within(t, Duration::from_secs(600), "degree-1 tabulation")?;
    let row: Vec<u64> = (0..DEGREE1_ROW_2357.len()).map(|a| tab.at(&[a])).collect();
    pass_if(row == DEGREE1_ROW_2357 && tab.counts.len() == row.len(), format!("row {row:?}"))
}

fn c3_degree2() -> Check {
    let p = ps(&[2, 3, 5]);
    let (pts, _) = e(search_abc(&p, Variant::InfTwoInf, 1_000_000_000, &Budget::unlimited()))?;
    let d2 = e(build_degree2(&p, &pts))?;
    let irr: BTreeSet<_> = d2.irreducible.iter().map(|v| v.poly.clone()).collect();
    let split: BTreeSet<_> = d2.split.iter().map(|s| s.poly.clone()).collect();
    let a = np(&[-2187, -810, 3125]);
    let b = NormalizedPoly::product([&np(&[-9, 25]), &np(&[3, 125])]);
    let c = NormalizedPoly::product([&np(&[-1, 25]), &np(&[3, 125])]);
    let from_w = [
        (e(quadratic_from_w(&q(-2187, 125), &q(128, 125), &q(3125, 125)))?, &a),
        (e(quadratic_from_w(&q(-27, 480), &q(2048, 480), &q(3125, 480)))?, &b),
        (e(quadratic_from_w(&q(-3, 2880), &q(3072, 2880), &q(3125, 2880)))?, &c),
    ];
    let w_ok = from_w.iter().all(|(s, want)| s == *want);
    let present = irr.contains(&a) && split.contains(&b) && split.contains(&c);
    let ok = d2.total() == 2947 && irr.len() == 1927 && split.len() == 1020 && present && w_ok;
    pass_if(ok, format!("{} = {} irreducible + {} split; height-3125 orbits present: {present}, rebuilt from w: {w_ok}", d2.total(), irr.len(), split.len()))
}

fn compare_table(name: &str, vs: &VertexSet, limit: Duration) -> Check {
    let t = Instant::now();
    let p = e(published_table(name))?;
    let g = e(CompatGraph::build(vs))?;
    let tab = e(tabulate(&g, &CliqueFilter::default(), &Budget::unlimited()))?;
    within(t, limit, name)?;
    let cmp = p.compare(&tab);
    let mut msg = format!("{} published cells, {} mismatches, {} extra, {:.1?}", cmp.cells, cmp.mismatches.len(), cmp.extra.len(), t.elapsed());
    if let Some((m, got, want)) = cmp.mismatches.first() {
        msg += &format!("; first mismatch {m:?}: {got} vs {want}");
    }
    pass_if(cmp.ok(), msg)
}

fn c4_table1(s: &Sets) -> Check {
    let out = compare_table("v235", &s.v235, Duration::from_secs(7200))?;
    let g = e(CompatGraph::build(&s.v235.truncated(2)))?;
    let tab = e(tabulate(&g, &CliqueFilter::default(), &Budget::unlimited()))?;
    let extras = tab.at(&[0, 1]) == 1927 && tab.at(&[1, 15]) == 3 && tab.at(&[0, 15]) == 3;
    Ok(match out {
        Outcome::Pass(m) if extras => Outcome::Pass(format!("{m}; |Polys_2| = 1927, bottom row 3/3 (the table has 75 nonempty cells)")),
        Outcome::Pass(m) | Outcome::Fail(m) | Outcome::Known(m) => Outcome::Fail(m),
    })
}

fn c5_degree3() -> Check {
    let p = ps(&[2, 3]);
    let (pts, _) = e(search_abc(&p, Variant::ThreeTwoInf, 100_000_000_000, &Budget::unlimited()))?;
    let irr: Vec<_> = pts.into_iter().filter(|x| cubic_shape(&x.u) == CubicShape::Irreducible).collect();
    let classes = e(cubic_classes(&irr, &p))?;
    let d3 = e(build_degree3(&p, &classes))?;
    let mut per: BTreeMap<usize, usize> = BTreeMap::new();
    for v in &d3.vertices {
        if let Some(VertexClass::Cubic(c)) = v.class {
            *per.entry(c).or_default() += 1;
        }
    }
    let mut got: Vec<(i64, usize, usize)> = classes
        .iter()
        .map(|c| (i64::try_from(&c.d).unwrap_or(0), c.members.len(), per.get(&c.id).copied().unwrap_or(0)))
        .collect();
    let mut want: Vec<(i64, usize, usize)> = TABLE3.iter().map(|r| (r.d, r.points, r.vertices)).collect();
    got.sort();
    want.sort();
    // (0, 0, −24): the two separable candidates and their S₃ images
    let j = q(-24, 1);
    let roots: Vec<_> = e(roots_of_f(&j, &q(0, 1)))?.into_iter().map(|r| r.0).collect();
    let mut orbit = BTreeSet::new();
    for m in &roots {
        for n in &roots {
            if let Some(c) = indexed_cubic(&j, m, n) {
                let s = e(NormalizedPoly::new(c))?;
                orbit.extend(S3::ALL.iter().map(|&g| s3_transform(&s, g)));
            }
        }
    }
    let want_orbit: BTreeSet<_> =
        [[2, -6, 6, 1], [-3, 9, -9, 1], [-3, 0, 0, 2], [1, 6, -6, 2], [-2, 0, 0, 3], [-1, 9, -9, 3]].iter().map(|c| np(c)).collect();
    // (1372/3, 4, 4/3): nine candidates, six accepted
    let j = q(4, 3);
    let ms: Vec<_> = e(roots_of_f(&j, &q(1372, 3)))?.into_iter().map(|r| r.0).collect();
    let ns: Vec<_> = e(roots_of_f(&j, &q(4, 1)))?.into_iter().map(|r| r.0).collect();
    let mut cands = BTreeSet::new();
    let mut accepted = BTreeSet::new();
    for m in &ms {
        for n in &ns {
            let s = e(NormalizedPoly::new(indexed_cubic(&j, m, n).ok_or("m = n in the grid")?))?;
            if check_membership(&s, &p).ok && e(is_irreducible(&s))? {
                accepted.insert(s.clone());
            }
            cands.insert(s);
        }
    }
    let grid_want: BTreeSet<_> = [
        [1, 30, -36, 8],
        [-1, 15, 9, 1],
        [-1, 9, -6, 1],
        [-1, 36, -96, 64],
        [8, -96, 6, 1],
        [-1, -96, -48, 64],
    ]
    .iter()
    .map(|c| np(c))
    .collect();
    let rejected_want: BTreeSet<_> = [[1, 75, -225, 125], [-8, 180, -300, 125], [1, -120, 75, 125]].iter().map(|c| np(c)).collect();
    let grid_ok = cands.len() == 9 && accepted == grid_want && cands.difference(&accepted).cloned().collect::<BTreeSet<_>>() == rejected_want;
    let ok = d3.vertices.len() == 1498 && got == want && orbit == want_orbit && grid_ok;
    let sizes: Vec<usize> = got.iter().map(|g| g.2).collect();
    pass_if(ok, format!("{} cubic vertices, per-class {sizes:?} (matched by d and class size), (0,0,-24) orbit {}, grid {}/{} accepted", d3.vertices.len(), orbit.len(), accepted.len(), cands.len()))
}

fn c7_degree4(s: &Sets) -> Check {
    let t = Instant::now();
    let vs = e(vertex_set(&ps(&[2]), 4, &table5_candidates(), &Budget::unlimited()))?;
    let counts = (vs.count(1), vs.count(2), vs.count(3), vs.count(4));
    let out = compare_table("v2", &s.v2, Duration::from_secs(60))?;
    within(t, Duration::from_secs(60), "degree-4 path")?;
    Ok(match out {
        Outcome::Pass(m) if counts == (3, 15, 0, 108) => Outcome::Pass(format!("vertices {counts:?}; {m}; conditional on |Polys_4({{2}})| = 108")),
        Outcome::Pass(m) | Outcome::Fail(m) | Outcome::Known(m) => Outcome::Fail(format!("vertices {counts:?}; {m}")),
    })
}

fn c8_little(s: &Sets) -> Check {
    compare_table("little2", &s.v2.truncated(2), Duration::from_secs(1))
}

fn c9_named(s: &Sets) -> Check {
    let mut msgs = Vec::new();
    let mut ok = true;
    for (name, vs) in [("big23", &s.v23), ("big235", &s.v235), ("quartic-extremal", &s.v2)] {
        let r = e(verify_named(name))?;
        let entry = e(named(name))?;
        let kappa = Kappa::new(entry.multiplicities());
        let g = e(CompatGraph::build(vs))?;
        let found = e(clique_polys(&g, &CliqueFilter::kappa(kappa.clone()), &Budget::unlimited()))?;
        let this_ok = r.pass
            && r.disc_matches == Some(true)
            && Some(found.len() as u64) == entry.class_size
            && found.contains(&r.poly);
        ok &= this_ok;
        msgs.push(format!("{name}: disc {}, |Polys_{{{kappa}}}| = {}", if r.disc_matches == Some(true) { "ok" } else { "MISMATCH" }, found.len()));
    }
    pass_if(ok, msgs.join("; "))
}

fn c10_series() -> Check {
    let t = Instant::now();
    let s2 = cyclo_series(&ps(&[2]), 10_000);
    let ones = s2.coefficients.iter().all(|c| *c == 1u32.into());
    let s235 = cyclo_series(&ps(&[2, 3, 5]), 1000);
    let c1000 = s235.coefficients[1000].to_string();
    let low: Vec<String> = s235.coefficients[..5].iter().map(|c| c.to_string()).collect();
    within(t, Duration::from_secs(10), "series")?;
    pass_if(ones && c1000 == "3361607445659519" && low == ["1", "1", "3", "3", "7"], format!("{{2}} all ones through 10^4: {ones}; {{2,3,5}} starts {low:?}, c_1000 = {c1000}"))
}

fn c11_fractal() -> Check {
    let t = Instant::now();
    let fam = e(fractal_family(4, true, &Budget::unlimited()))?;
    let all_ok = fam.len() == 12 && fam.iter().all(|m| m.report.as_ref().is_some_and(|r| r.ok));
    let mut shape = Vec::new();
    for w in 1..=3 {
        let prods = e(fractal_products(&fam, w))?;
        let degs: BTreeSet<usize> = prods.iter().map(|p| p.degree()).collect();
        shape.push((prods.len(), degs.into_iter().collect::<Vec<_>>()));
    }
    within(t, Duration::from_secs(120), "fractal family")?;
    let want = vec![(3, vec![2]), (9, vec![10]), (27, vec![42])];
    pass_if(all_ok && shape == want, format!("{} members through degree 128 verified: {all_ok}; products {shape:?}", fam.len()))
}

fn c12_unu(s: &Sets) -> Check {
    let nu = [2, 1, 1, 1];
    let b = Budget::unlimited();
    let v23 = e(count_u_nu(&e(CompatGraph::build(&s.v23.truncated(2)))?, &nu, &b))?;
    let v235 = e(count_u_nu(&e(CompatGraph::build(&s.v235))?, &nu, &b))?;
    let v2 = e(count_u_nu(&e(CompatGraph::build(&s.v2.truncated(2)))?, &nu, &b))?;
    pass_if((v23, v235, v2) == (229, 2947, 15), format!("U_{{21^3}}: {{2,3}} {v23}, {{2,3,5}} {v235}, {{2}} {v2}"))
}

fn c13_packets() -> Check {
    let p = ps(&[2, 3, 5, 7]);
    let (pts, _) = e(search_abc(&p, Variant::InfInfInf, 1_000_000_000, &Budget::unlimited()))?;
    let mut vs = VertexSet::new(p.clone());
    vs.extend(e(build_degree1(&pts, &p))?);
    let g = e(CompatGraph::build(&vs))?;
    let polys = e(clique_polys(&g, &CliqueFilter::kappa(Kappa::new(vec![9])), &Budget::unlimited()))?;
    let r = e(pgl2_packets(&polys))?;
    let mut groups: BTreeMap<String, usize> = BTreeMap::new();
    for pk in &r.packets {
        *groups.entry(pk.stabilizer.clone()).or_default() += 1;
    }
    let want: BTreeMap<String, usize> =
        [("C1", 1), ("C2", 8), ("V", 1), ("S3", 1), ("D4", 1), ("D6", 1)].iter().map(|&(k, v)| (k.to_string(), v)).collect();
    let structure = r.packets.len() == 13 && groups == want && r.mass_ok && r.packets.iter().all(|p| p.missing == 0);
    let msg = format!("{} packets, stabilizers {groups:?}, mass {} = 7425/1320", r.packets.len(), r.mass);
    Ok(if !structure {
        Outcome::Fail(msg)
    } else if r.mass == "45/8" {
        Outcome::Known(format!("{msg}; the stated mass 5.875 is not attainable, 7425/1320 and the stabilizer sum are both 5.625"))
    } else {
        Outcome::Fail(msg)
    })
}

fn rand_poly() -> impl Strategy<Value = IntPoly> {
    (1usize..=5).prop_flat_map(|d| {
        (prop::collection::vec(-20i64..=20, d), prop_oneof![-20i64..=-1, 1i64..=20]).prop_map(|(mut c, lead)| {
            c.push(lead);
            IntPoly::from_i64(&c)
        })
    })
}

fn brute_force_box(p: &PrimeSet, degree: usize, bound: i64) -> BTreeSet<NormalizedPoly> {
    let mut out = BTreeSet::new();
    let n = degree + 1;
    let mut c = vec![-bound; n];
    c[degree] = 1;
    let smooth = |v: i64| v != 0 && p.is_smooth_u64(v.unsigned_abs());
    loop {
        let s1: i64 = c.iter().sum();
        if smooth(c[0]) && smooth(s1) && smooth(c[degree]) {
            if let Ok(s) = NormalizedPoly::from_normalized(IntPoly::from_i64(&c)) {
                if check_membership(&s, p).ok && is_irreducible(&s).unwrap_or(false) {
                    out.insert(s);
                }
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if c[i] < bound {
                c[i] += 1;
                break;
            }
            c[i] = if i == degree { 1 } else { -bound };
            i += 1;
        }
    }
}

fn in_box(s: &NormalizedPoly, bound: i64) -> bool {
    s.coeffs().iter().all(|c| c.magnitude() <= &num_bigint::BigUint::from(bound.unsigned_abs()))
}

fn c14_properties(s: &Sets) -> Check {
    let mut notes = Vec::new();
    // disc(fg) = disc(f)·disc(g)·Res(f,g)²
    let mut runner = TestRunner::new_with_rng(Config { cases: 1000, failure_persistence: None, ..Config::default() }, proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha));
    let res = runner.run(&(rand_poly(), rand_poly()), |(f, g)| {
        let fg = &f * &g;
        let r = resultant(&f, &g);
        prop_assert_eq!(discriminant(&fg), discriminant(&f) * discriminant(&g) * &r * &r);
        Ok(())
    });
    let disc_ok = res.is_ok();
    notes.push(format!("disc/res identity on 1000 pairs: {disc_ok}"));
    // S₃ group law and membership invariance on every vertex set
    let mut s3_ok = true;
    let mut checked = 0;
    for vs in [&s.v2, &s.v23, &s.v235] {
        s3_ok &= vs.s3_defects().is_empty();
        for v in vs.iter() {
            for g in S3::ALL {
                let gv = s3_transform(&v.poly, g);
                s3_ok &= check_membership(&gv, &vs.primes).ok;
                for h in S3::ALL {
                    s3_ok &= s3_transform(&gv, h) == s3_transform(&v.poly, h.compose(g));
                }
            }
            checked += 1;
        }
    }
    notes.push(format!("S3 law and membership on {checked} vertices: {s3_ok}"));
    // brute force over coefficient boxes for P = {2}
    let p2 = ps(&[2]);
    let mut box_ok = true;
    for (d, bound) in [(1usize, 64i64), (2, 64), (3, 16), (4, 6)] {
        let bf = brute_force_box(&p2, d, bound);
        let built: BTreeSet<_> = s.v2.degree(d).into_iter().map(|v| v.poly.clone()).filter(|p| in_box(p, bound)).collect();
        box_ok &= bf == built;
        notes.push(format!("deg {d} |c|<={bound}: {}", bf.len()));
    }
    // determinism across worker counts
    let mut tables = Vec::new();
    for n in [1, 4, 16] {
        let pool = e(rayon::ThreadPoolBuilder::new().num_threads(n).build())?;
        let t = pool.install(|| -> Result<_, String> {
            let g = e(CompatGraph::build(&s.v23))?;
            e(tabulate(&g, &CliqueFilter::default(), &Budget::unlimited()))
        })?;
        tables.push(t);
    }
    let det_ok = tables.windows(2).all(|w| w[0] == w[1]);
    notes.push(format!("1/4/16 workers agree: {det_ok}"));
    pass_if(disc_ok && s3_ok && box_ok && det_ok, notes.join("; "))
}

fn main() {
    let started = Instant::now();
    let b = Budget::unlimited();
    let sets = Sets {
        v2: vertex_set(&ps(&[2]), 4, &table5_candidates(), &b).expect("P = {2} vertex set"),
        v23: vertex_set(&ps(&[2, 3]), 3, &[], &b).expect("P = {2,3} vertex set"),
        v235: vertex_set(&ps(&[2, 3, 5]), 2, &[], &b).expect("P = {2,3,5} vertex set"),
    };
    let criteria: Vec<(&str, Box<dyn Fn(&Sets) -> Check>)> = vec![
        ("ABC searches", Box::new(|_| c1_searches())),
        ("degree-1 tabulation", Box::new(|_| c2_degree1_row())),
        ("degree-2 vertices", Box::new(|_| c3_degree2())),
        ("table for {2,3,5}", Box::new(c4_table1)),
        ("degree-3 vertices", Box::new(|_| c5_degree3())),
        ("table for {2,3}", Box::new(|s| compare_table("v23", &s.v23, Duration::from_secs(3600)))),
        ("degree-4 conditional path", Box::new(c7_degree4)),
        ("small table for {2}", Box::new(c8_little)),
        ("named polynomials", Box::new(c9_named)),
        ("generating function", Box::new(|_| c10_series())),
        ("fractal family", Box::new(|_| c11_fractal())),
        ("U_nu counts", Box::new(c12_unu)),
        ("packet analysis", Box::new(|_| c13_packets())),
        ("property suites", Box::new(c14_properties)),
    ];
    let mut unexpected = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (tag, msg) = match f(&sets) {
            Ok(Outcome::Pass(m)) => ("PASS", m),
            Ok(Outcome::Known(m)) => ("FAIL", format!("{m} [recorded deviation]")),
            Ok(Outcome::Fail(m)) => {
                unexpected += 1;
                ("FAIL", m)
            }
            Err(m) => {
                unexpected += 1;
                ("FAIL", format!("error: {m}"))
            }
        };
        println!("{tag} {:>2} {name}: {msg} ({:.1?})", i + 1, t.elapsed());
    }
    println!("acceptance finished in {:.1?}", started.elapsed());
    if unexpected > 0 {
        std::process::exit(1);
    }
}
