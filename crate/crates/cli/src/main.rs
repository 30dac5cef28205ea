use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use polytab::abc::{search_abc, Variant};
use polytab::clique::{clique_polys, count_u_nu, enumerate, tabulate, CliqueFilter, CompatGraph, Kappa, PartitionTable};
use polytab::data::{published_table, table5_candidates, DEGREE1_ROW_2357};
use polytab::generators::{
    cyclo_series, fractal_family, fractal_products, pullback, verify_named, RationalCover, FRACTAL_DEFAULT_MAX_LEVEL,
};
use polytab::io::{
    format_factored, read_candidates, read_json, write_json, write_table_csv, PointSetFile, TableFile, VertexSetFile,
};
use polytab::packets::pgl2_packets;
use polytab::pipeline::{build_vertex_set, run_searches, PointSets};
use polytab::poly::{check_membership, factorization_partition};
use polytab::vertex::VertexSet;
use polytab::{Budget, Error, NormalizedPoly, PrimeSet, Result};

#[derive(Parser)]
#[command(name = "polytab", version, about = "Tabulate polynomials with bad reduction inside a prime set")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Wall-clock limit in seconds (overrides POLYTAB_BUDGET_SECS).
    #[arg(long, global = true)]
    budget_secs: Option<f64>,
    /// Refuse requests whose work estimate exceeds this many steps.
    #[arg(long, global = true)]
    max_work: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate ABC points of a variant up to a height bound.
    Search {
        #[arg(long)]
        primes: PrimeSet,
        #[arg(long)]
        variant: Variant,
        /// Height bound, e.g. 1e9.
        #[arg(long, value_parser = parse_count)]
        height: u64,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Build the irreducible vertex sets of degrees 1..=max-degree.
    Vertices {
        #[command(flatten)]
        build: BuildArgs,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Count cliques of the compatibility graph by factorization partition.
    Tabulate {
        #[command(flatten)]
        source: VertexSource,
        /// Restrict to one partition, e.g. `2^15,1` or `3^11 2`.
        #[arg(long)]
        kappa: Option<Kappa>,
        /// Print only the total count.
        #[arg(long)]
        count_only: bool,
        /// Stream the matching cliques as factored polynomials.
        #[arg(long)]
        enumerate: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Coefficients of the cyclotomic-product generating function.
    Series {
        #[arg(long)]
        primes: PrimeSet,
        #[arg(long)]
        kmax: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Pull a member polynomial back along a three-point cover.
    Pullback {
        /// identity, one-minus, reciprocal, quartic, power-N or trinomial-M.
        #[arg(long)]
        cover: String,
        /// Constant-first coefficients, e.g. `1,1`.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        primes: PrimeSet,
        /// Apply the cover this many times.
        #[arg(long, default_value_t = 1)]
        iterate: u32,
    },
    /// The iterated quartic-cover family over {2}.
    Fractal {
        #[arg(long, default_value_t = FRACTAL_DEFAULT_MAX_LEVEL)]
        levels: u32,
        /// Skip discriminants; only s(0), s(1), s(∞) are checked.
        #[arg(long)]
        no_disc: bool,
        /// Also form and verify all products over the first W levels.
        #[arg(long)]
        products: Option<u32>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Check a registered polynomial or an explicit one.
    Verify {
        #[arg(long, conflicts_with = "poly")]
        name: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "primes")]
        poly: Option<String>,
        #[arg(long)]
        primes: Option<PrimeSet>,
    },
    /// Count U_ν for ν ending in 1,1,1.
    Unu {
        #[command(flatten)]
        source: VertexSource,
        #[arg(long, value_delimiter = ',')]
        nu: Vec<usize>,
    },
    /// Group the split polynomials of degree a into PGL₂ packets.
    Packets {
        #[command(flatten)]
        source: VertexSource,
        #[arg(long)]
        degree: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Recompute every published table and compare cell by cell.
    SeedTables {
        /// Write each table as CSV into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Subset of little2, d1, v2, v235, v23.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    primes: Option<PrimeSet>,
    #[arg(long, default_value_t = 2)]
    max_degree: usize,
    /// Point-set files from `search`; missing variants are searched.
    #[arg(long)]
    points: Vec<PathBuf>,
    /// Candidate files, one polynomial per line.
    #[arg(long)]
    candidates: Vec<PathBuf>,
    /// Use the built-in degree-4 candidates for {2}.
    #[arg(long)]
    table5: bool,
    /// Search height override, `variant=H`.
    #[arg(long, value_parser = parse_height)]
    height: Vec<(Variant, u64)>,
}

#[derive(Args)]
struct VertexSource {
    /// Vertex-set file from `vertices`.
    #[arg(long, conflicts_with = "primes")]
    vertices: Option<PathBuf>,
    #[command(flatten)]
    build: BuildArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_count(s: &str) -> std::result::Result<u64, String> {
    let t = s.trim().replace('_', "");
    if let Ok(n) = t.parse::<u64>() {
        return Ok(n);
    }
    let (m, e) = t
        .split_once(['e', 'E'])
        .or_else(|| t.split_once("^").filter(|(b, _)| *b == "10").map(|(_, e)| ("1", e)))
        .ok_or_else(|| format!("cannot parse '{s}'"))?;
    let m: u64 = m.parse().map_err(|_| format!("cannot parse '{s}'"))?;
    let e: u32 = e.parse().map_err(|_| format!("cannot parse '{s}'"))?;
    10u64.checked_pow(e).and_then(|p| p.checked_mul(m)).ok_or_else(|| format!("'{s}' is too large"))
}

fn parse_height(s: &str) -> std::result::Result<(Variant, u64), String> {
    let (v, h) = s.split_once('=').ok_or_else(|| format!("expected variant=H, got '{s}'"))?;
    Ok((v.parse().map_err(|e: Error| e.to_string())?, parse_count(h)?))
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn parse_poly(s: &str) -> Result<NormalizedPoly> {
    let mut v = read_candidates(s.as_bytes())?;
    if v.len() != 1 {
        return Err(Error::Invalid(format!("expected one polynomial, got '{s}'")));
    }
    NormalizedPoly::new(v.remove(0))
}

fn build(args: &BuildArgs, budget: &Budget) -> Result<VertexSet> {
    let primes = args.primes.clone().ok_or_else(|| Error::Invalid("--primes or --vertices is required".into()))?;
    let mut have = PointSets::new();
    for p in &args.points {
        let file: PointSetFile = read_json(open(p)?)?;
        let (pts, cert) = file.into_points()?;
        have.insert(cert.variant, (pts, cert));
    }
    let heights: BTreeMap<Variant, u64> = args.height.iter().copied().collect();
    let points = run_searches(&primes, args.max_degree, &heights, have, budget)?;
    let mut candidates = Vec::new();
    for c in &args.candidates {
        candidates.extend(read_candidates(open(c)?)?);
    }
    if args.table5 {
        candidates.extend(table5_candidates());
    }
    build_vertex_set(&primes, args.max_degree, &points, &candidates)
}

fn load(source: &VertexSource, budget: &Budget) -> Result<VertexSet> {
    match &source.vertices {
        Some(p) => read_json::<VertexSetFile, _>(open(p)?)?.into_vertex_set(),
        None => build(&source.build, budget),
    }
}

#[derive(Serialize)]
struct PolyOut {
    degree: usize,
    coefficients: NormalizedPoly,
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    }
    let mut budget = Budget::from_env()?;
    if let Some(w) = cli.max_work {
        budget.max_work = w;
    }
    if let Some(s) = cli.budget_secs {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::Invalid("--budget-secs must be positive".into()));
        }
        budget = budget.with_seconds(s);
    }
    match cli.command {
        Command::Search { primes, variant, height, out } => {
            let t = Instant::now();
            let (pts, cert) = search_abc(&primes, variant, height, &budget)?;
            let max_h = pts.iter().map(|p| p.height).max().unwrap_or(0);
            eprintln!("{} points, max height {max_h}, complete: {}, {:.2?}", pts.len(), cert.complete, t.elapsed());
            if let Some(c) = &cert.citation {
                eprintln!("note: {c}");
            }
            write_json(&PointSetFile::new(&pts, &cert), output(&out)?)?;
        }
        Command::Vertices { build: args, out } => {
            let vs = build(&args, &budget)?;
            for d in vs.degrees() {
                eprintln!("degree {d}: {} vertices ({:?})", vs.count(d), vs.certificates.get(&d));
            }
            write_json(&VertexSetFile::new(&vs), output(&out)?)?;
        }
        Command::Tabulate { source, kappa, count_only, enumerate: stream, format, out } => {
            let vs = load(&source, &budget)?;
            let g = CompatGraph::build(&vs)?;
            eprintln!("graph: {} vertices, {} edges", g.len(), g.edge_count());
            let filter = match kappa {
                Some(k) => CliqueFilter::kappa(k),
                None => CliqueFilter::default(),
            };
            let mut w = output(&out)?;
            if stream {
                let mut n = 0u64;
                enumerate(&g, &filter, &budget, |c| {
                    let mut fs: Vec<&NormalizedPoly> = c.iter().map(|&i| &g.polys[i]).collect();
                    fs.sort();
                    writeln!(w, "{}", format_factored(&fs))?;
                    n += 1;
                    Ok(())
                })?;
                eprintln!("{n} cliques");
            } else {
                let table: PartitionTable = tabulate(&g, &filter, &budget)?;
                if count_only {
                    writeln!(w, "{}", table.total())?;
                } else {
                    match format {
                        Format::Csv => write_table_csv(&table, vs.max_degree().max(1), &mut w)?,
                        Format::Json => write_json(&TableFile::new(&table, &vs.primes, vs.max_degree()), &mut w)?,
                    }
                }
            }
            w.flush()?;
        }
        Command::Series { primes, kmax, out } => {
            let s = cyclo_series(&primes, kmax);
            let v: Vec<String> = s.coefficients.iter().map(|c| c.to_string()).collect();
            write_json(&v, output(&out)?)?;
        }
        Command::Pullback { cover, poly, primes, iterate } => {
            let cover = RationalCover::builtin(&cover)?;
            let mut s = parse_poly(&poly)?;
            for _ in 0..iterate {
                s = pullback(&cover, &s, &primes)?.poly;
            }
            write_json(&PolyOut { degree: s.degree(), coefficients: s }, output(&None)?)?;
        }
        Command::Fractal { levels, no_disc, products, out } => {
            let fam = fractal_family(levels, !no_disc, &budget)?;
            #[derive(Serialize)]
            struct Member {
                i: u32,
                j: i32,
                degree: usize,
                coefficients: NormalizedPoly,
                discriminant_checked: bool,
            }
            #[derive(Serialize)]
            struct FractalOut {
                members: Vec<Member>,
                products: Option<BTreeMap<u32, usize>>,
            }
            let prods = match products {
                Some(w) if w > levels => return Err(Error::Invalid(format!("--products {w} exceeds --levels {levels}"))),
                Some(w) => {
                    let mut m = BTreeMap::new();
                    for k in 1..=w {
                        let ps = fractal_products(&fam, k)?;
                        eprintln!("w = {k}: {} distinct products of degree {}", ps.len(), ps[0].degree());
                        m.insert(k, ps.len());
                    }
                    Some(m)
                }
                None => None,
            };
            let members = fam
                .into_iter()
                .map(|m| Member {
                    i: m.i,
                    j: m.j,
                    degree: m.poly.degree(),
                    discriminant_checked: m.report.is_some(),
                    coefficients: m.poly,
                })
                .collect();
            write_json(&FractalOut { members, products: prods }, output(&out)?)?;
        }
        Command::Verify { name, poly, primes } => {
            let pass = match (name, poly, primes) {
                (Some(name), _, _) => {
                    let r = verify_named(&name)?;
                    write_json(&r, output(&None)?)?;
                    r.pass
                }
                (None, Some(poly), Some(primes)) => {
                    let s = parse_poly(&poly)?;
                    let r = check_membership(&s, &primes);
                    #[derive(Serialize)]
                    struct Out {
                        poly: NormalizedPoly,
                        partition: Vec<usize>,
                        report: polytab::poly::MembershipReport,
                    }
                    let partition = factorization_partition(&s)?;
                    let ok = r.ok;
                    write_json(&Out { poly: s, partition, report: r }, output(&None)?)?;
                    ok
                }
                _ => return Err(Error::Invalid("give --name, or --poly with --primes".into())),
            };
            println!("{}", if pass { "PASS" } else { "FAIL" });
            if !pass {
                return Err(Error::Verification("check failed".into()));
            }
        }
        Command::Unu { source, nu } => {
            let vs = load(&source, &budget)?;
            let g = CompatGraph::build(&vs)?;
            println!("{}", count_u_nu(&g, &nu, &budget)?);
        }
        Command::Packets { source, degree, out } => {
            let vs = load(&source, &budget)?;
            let g = CompatGraph::build(&vs.truncated(1))?;
            let polys = clique_polys(&g, &CliqueFilter::kappa(Kappa::new(vec![degree])), &budget)?;
            let r = pgl2_packets(&polys)?;
            eprintln!("{} polynomials, {} packets, mass {}", polys.len(), r.packets.len(), r.mass);
            write_json(&r, output(&out)?)?;
        }
        Command::SeedTables { out_dir, only } => seed_tables(out_dir.as_deref(), &only, &budget)?,
    }
    Ok(())
}

fn seed_tables(out_dir: Option<&Path>, only: &[String], budget: &Budget) -> Result<()> {
    let want = |n: &str| only.is_empty() || only.iter().any(|o| o == n);
    let mut failed = Vec::new();
    if let Some(d) = out_dir {
        std::fs::create_dir_all(d)?;
    }
    let save = |name: &str, t: &PartitionTable, f: usize| -> Result<()> {
        if let Some(d) = out_dir {
            write_table_csv(t, f, File::create(d.join(format!("{name}.csv")))?)?;
        }
        Ok(())
    };
    if want("d1") {
        let t0 = Instant::now();
        let args = BuildArgs {
            primes: Some("2,3,5,7".parse()?),
            max_degree: 1,
            points: vec![],
            candidates: vec![],
            table5: false,
            height: vec![],
        };
        let g = CompatGraph::build(&build(&args, budget)?)?;
        let t = tabulate(&g, &CliqueFilter::default(), budget)?;
        let row: Vec<u64> = (0..DEGREE1_ROW_2357.len()).map(|a| t.at(&[a])).collect();
        let ok = row == DEGREE1_ROW_2357 && t.counts.len() == DEGREE1_ROW_2357.len();
        println!("d1: {} cells, {} ({:.2?})", row.len(), if ok { "match" } else { "MISMATCH" }, t0.elapsed());
        save("d1", &t, 1)?;
        if !ok {
            failed.push("d1");
        }
    }
    for name in ["little2", "v2", "v235", "v23"] {
        if !want(name) {
            continue;
        }
        let t0 = Instant::now();
        let p = published_table(name)?;
        let args = BuildArgs {
            primes: Some(p.prime_set()),
            max_degree: p.max_degree,
            points: vec![],
            candidates: vec![],
            table5: p.max_degree >= 4,
            height: vec![],
        };
        let vs = build(&args, budget)?;
        let g = CompatGraph::build(&vs)?;
        let t = tabulate(&g, &CliqueFilter::default(), budget)?;
        let cmp = p.compare(&t);
        println!(
            "{name}: {} cells, {} mismatches, {} extra{} ({:.2?})",
            cmp.cells,
            cmp.mismatches.len(),
            cmp.extra.len(),
            if p.conditional { ", conditional on the degree-4 list" } else { "" },
            t0.elapsed()
        );
        for (m, got, exp) in &cmp.mismatches {
            println!("  {m:?}: computed {got}, published {exp}");
        }
        save(name, &t, p.max_degree)?;
        if !cmp.ok() {
            failed.push(name);
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::Verification(format!("tables differ: {}", failed.join(", "))))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_budget() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
