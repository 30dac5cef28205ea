//! JSON and CSV file formats. All integers that may exceed 64 bits are decimal strings.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::abc::{AbcPoint, ClassDatum, SearchCertificate, Variant};
use crate::clique::{Kappa, PartitionTable};
use crate::error::{Error, Result};
use crate::exact::PrimeSet;
use crate::poly::{IntPoly, NormalizedPoly};
use crate::vertex::{Completeness, Provenance, Vertex, VertexClass, VertexSet};

pub const POINTS_SCHEMA: &str = "polytab.points/1";
pub const VERTICES_SCHEMA: &str = "polytab.vertices/1";
pub const TABLE_SCHEMA: &str = "polytab.table/1";

pub(crate) fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) mod bigint_str {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn check_schema(found: &str, want: &str) -> Result<()> {
    if found != want {
        return Err(Error::Invalid(format!("expected schema '{want}', found '{found}'")));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointRecord {
    #[serde(rename = "A", with = "bigint_str")]
    pub a: BigInt,
    #[serde(rename = "B", with = "bigint_str")]
    pub b: BigInt,
    #[serde(rename = "C", with = "bigint_str")]
    pub c: BigInt,
    /// `p/q`.
    pub u: String,
    pub class: ClassDatum,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointSetFile {
    pub schema: String,
    pub variant: Variant,
    pub primes: PrimeSet,
    pub height_bound: u64,
    pub complete: bool,
    pub citation: Option<String>,
    pub points: Vec<PointRecord>,
}

impl PointSetFile {
    pub fn new(points: &[AbcPoint], cert: &SearchCertificate) -> Self {
        PointSetFile {
            schema: POINTS_SCHEMA.into(),
            variant: cert.variant,
            primes: cert.primes.clone(),
            height_bound: cert.height_bound,
            complete: cert.complete,
            citation: cert.citation.clone(),
            points: points
                .iter()
                .map(|p| PointRecord {
                    a: p.a.clone(),
                    b: p.b.clone(),
                    c: p.c.clone(),
                    u: format!("{}/{}", p.u.numer(), p.u.denom()),
                    class: p.class.clone(),
                })
                .collect(),
        }
    }

    /// Rebuilds and re-verifies the points.
    pub fn into_points(self) -> Result<(Vec<AbcPoint>, SearchCertificate)> {
        check_schema(&self.schema, POINTS_SCHEMA)?;
        let mut out = Vec::with_capacity(self.points.len());
        for r in self.points {
            let u: BigRational = r.u.parse().map_err(|_| Error::Invalid(format!("bad u '{}'", r.u)))?;
            let (p, q) = (i128::try_from(u.numer()), u64::try_from(u.denom()));
            let (Ok(p), Ok(q)) = (p, q) else {
                return Err(Error::Invalid(format!("u = {u} outside the supported range")));
            };
            let mut pt = AbcPoint::from_u(self.variant, p, q);
            if pt.a != r.a || pt.b != r.b || pt.c != r.c {
                return Err(Error::Invalid(format!("triple ({}, {}, {}) does not match u = {u}", r.a, r.b, r.c)));
            }
            if !pt.verify(&self.primes) {
                return Err(Error::Verification(format!("point u = {u} is not in the {} set", self.variant)));
            }
            pt.class = r.class;
            out.push(pt);
        }
        let cert = SearchCertificate {
            primes: self.primes,
            variant: self.variant,
            height_bound: self.height_bound,
            complete: self.complete,
            citation: self.citation,
        };
        Ok((out, cert))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VertexRecord {
    pub poly: NormalizedPoly,
    pub class: Option<VertexClass>,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VertexSetFile {
    pub schema: String,
    pub primes: PrimeSet,
    pub certificates: BTreeMap<usize, Completeness>,
    pub counts: BTreeMap<usize, usize>,
    pub vertices: Vec<VertexRecord>,
}

impl VertexSetFile {
    pub fn new(vs: &VertexSet) -> Self {
        VertexSetFile {
            schema: VERTICES_SCHEMA.into(),
            primes: vs.primes.clone(),
            certificates: vs.certificates.clone(),
            counts: vs.degrees().into_iter().map(|d| (d, vs.count(d))).collect(),
            vertices: vs
                .iter()
                .map(|v| VertexRecord { poly: v.poly.clone(), class: v.class.clone(), provenance: v.provenance })
                .collect(),
        }
    }

    /// Rebuilds the set, re-verifying every vertex.
    pub fn into_vertex_set(self) -> Result<VertexSet> {
        check_schema(&self.schema, VERTICES_SCHEMA)?;
        let mut vs = VertexSet::new(self.primes.clone());
        let vertices = self
            .vertices
            .into_iter()
            .map(|r| Vertex::new(r.poly, &self.primes, r.class, r.provenance))
            .collect::<Result<Vec<_>>>()?;
        vs.extend(vertices);
        for (d, c) in self.certificates {
            vs.set_certificate(d, c);
        }
        for (&d, &n) in &self.counts {
            if vs.count(d) != n {
                return Err(Error::Invalid(format!("degree {d}: header says {n} vertices, found {}", vs.count(d))));
            }
        }
        Ok(vs)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableCell {
    pub kappa: String,
    pub multiplicities: Vec<usize>,
    pub count: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableFile {
    pub schema: String,
    pub primes: PrimeSet,
    pub max_degree: usize,
    pub total: String,
    pub cells: Vec<TableCell>,
}

impl TableFile {
    pub fn new(table: &PartitionTable, primes: &PrimeSet, max_degree: usize) -> Self {
        TableFile {
            schema: TABLE_SCHEMA.into(),
            primes: primes.clone(),
            max_degree,
            total: table.total().to_string(),
            cells: table
                .counts
                .iter()
                .map(|(k, &n)| TableCell {
                    kappa: k.to_string(),
                    multiplicities: (1..=max_degree).map(|d| k.mult(d)).collect(),
                    count: n.to_string(),
                })
                .collect(),
        }
    }

    pub fn into_table(self) -> Result<PartitionTable> {
        check_schema(&self.schema, TABLE_SCHEMA)?;
        let mut t = PartitionTable::default();
        for c in self.cells {
            let n = c.count.parse().map_err(|_| Error::Invalid(format!("bad count '{}'", c.count)))?;
            t.counts.insert(Kappa::new(c.multiplicities), n);
        }
        Ok(t)
    }
}

/// CSV with one row per partition: `kappa,m1,…,m_f,count`, rows in partition order.
pub fn write_table_csv<W: Write>(table: &PartitionTable, max_degree: usize, w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec!["kappa".to_string()];
    header.extend((1..=max_degree).map(|d| format!("m{d}")));
    header.push("count".into());
    out.write_record(&header).map_err(csv_err)?;
    for (k, n) in &table.counts {
        let mut row = vec![k.to_string()];
        row.extend((1..=max_degree).map(|d| k.mult(d).to_string()));
        row.push(n.to_string());
        out.write_record(&row).map_err(csv_err)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_table_csv<R: std::io::Read>(r: R) -> Result<PartitionTable> {
    let mut rd = csv::Reader::from_reader(r);
    let mut t = PartitionTable::default();
    for rec in rd.records() {
        let rec = rec.map_err(csv_err)?;
        if rec.len() < 2 {
            return Err(Error::Invalid("short CSV row".into()));
        }
        let parse = |s: &str| s.parse::<u64>().map_err(|_| Error::Invalid(format!("bad CSV field '{s}'")));
        let mult = (1..rec.len() - 1).map(|i| parse(&rec[i]).map(|m| m as usize)).collect::<Result<Vec<_>>>()?;
        t.counts.insert(Kappa::new(mult), parse(&rec[rec.len() - 1])?);
    }
    Ok(t)
}

fn csv_err(e: csv::Error) -> Error {
    Error::Invalid(format!("CSV: {e}"))
}

/// One polynomial per line as constant-first integer coefficients separated by commas or
/// whitespace. Blank lines and `#` comments are skipped.
pub fn read_candidates<R: BufRead>(r: R) -> Result<Vec<IntPoly>> {
    let mut out = Vec::new();
    for (n, line) in r.lines().enumerate() {
        let line = line?;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let coeffs = body
            .trim_matches(|c| c == '[' || c == ']')
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<BigInt>().map_err(|_| Error::Invalid(format!("line {}: bad coefficient '{t}'", n + 1))))
            .collect::<Result<Vec<_>>>()?;
        let p = IntPoly::new(coeffs);
        if p.is_zero() {
            return Err(Error::Invalid(format!("line {}: zero polynomial", n + 1)));
        }
        out.push(p);
    }
    Ok(out)
}

pub fn write_candidates<W: Write>(polys: &[NormalizedPoly], mut w: W) -> Result<()> {
    for p in polys {
        writeln!(w, "{}", p.to_strings().join(" "))?;
    }
    Ok(())
}

/// `(f₁)(f₂)…` in the given order.
pub fn format_factored(factors: &[&NormalizedPoly]) -> String {
    factors.iter().map(|f| format!("({f})")).collect()
}

pub fn write_json<T: Serialize, W: Write>(value: &T, mut w: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    Ok(())
}

pub fn read_json<T: serde::de::DeserializeOwned, R: std::io::Read>(r: R) -> Result<T> {
    Ok(serde_json::from_reader(r)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abc::search_abc;
    use crate::budget::Budget;
    use crate::vertex::build_degree1;

    #[test]
    fn points_round_trip() {
        let p = PrimeSet::new([2, 3]).unwrap();
        let (pts, cert) = search_abc(&p, Variant::InfTwoInf, 1000, &Budget::default()).unwrap();
        let file = PointSetFile::new(&pts, &cert);
        let json = serde_json::to_string(&file).unwrap();
        let back: PointSetFile = serde_json::from_str(&json).unwrap();
        let (pts2, cert2) = back.into_points().unwrap();
        assert_eq!(pts, pts2);
        assert_eq!(cert, cert2);
    }

    #[test]
    fn tampered_point_rejected() {
        let p = PrimeSet::new([2, 3]).unwrap();
        let (pts, cert) = search_abc(&p, Variant::InfInfInf, 100, &Budget::default()).unwrap();
        let mut file = PointSetFile::new(&pts, &cert);
        file.points[0].u = "5/7".into();
        assert!(file.into_points().is_err());
    }

    #[test]
    fn vertices_round_trip() {
        let p = PrimeSet::new([2, 3]).unwrap();
        let (pts, _) = search_abc(&p, Variant::InfInfInf, 1000, &Budget::default()).unwrap();
        let mut vs = VertexSet::new(p.clone());
        vs.extend(build_degree1(&pts, &p).unwrap());
        vs.set_certificate(1, Completeness::Complete);
        let json = serde_json::to_string(&VertexSetFile::new(&vs)).unwrap();
        let back = serde_json::from_str::<VertexSetFile>(&json).unwrap().into_vertex_set().unwrap();
        assert_eq!(back.len(), vs.len());
        assert_eq!(back.certificates, vs.certificates);
        let other = PrimeSet::new([2]).unwrap();
        let mut wrong: VertexSetFile = serde_json::from_str(&json).unwrap();
        wrong.primes = other;
        assert!(wrong.into_vertex_set().is_err());
    }

    #[test]
    fn table_csv_round_trip() {
        let mut t = PartitionTable::default();
        t.counts.insert(Kappa::default(), 1);
        t.counts.insert(Kappa::new(vec![1, 2]), 21);
        let mut buf = Vec::new();
        write_table_csv(&t, 2, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "kappa,m1,m2,count\n0,0,0,1\n2^2 1,1,2,21\n");
        assert_eq!(read_table_csv(&buf[..]).unwrap(), t);
    }

    #[test]
    fn candidates() {
        let text = "# header\n1, 0, 1\n\n-1 2 1  # comment\n[1,1]\n";
        let c = read_candidates(text.as_bytes()).unwrap();
        assert_eq!(c, vec![IntPoly::from_i64(&[1, 0, 1]), IntPoly::from_i64(&[-1, 2, 1]), IntPoly::from_i64(&[1, 1])]);
        assert!(read_candidates("1 x".as_bytes()).is_err());
        assert!(read_candidates("0 0".as_bytes()).is_err());
    }
}
