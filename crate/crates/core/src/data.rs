//! Published reference data: representative polynomials and clique-count tables.
//!
//! Polynomials are stored constant-first. Table cells are keyed by the multiplicities
//! `[a, b, c, d]` of irreducible factors of degree 1, 2, 3, 4.

use num_bigint::BigInt;
use num_traits::One;

use crate::clique::{Kappa, PartitionTable};
use crate::error::{Error, Result};
use crate::exact::PrimeSet;
use crate::poly::{IntPoly, NormalizedPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub mult: [usize; 4],
    pub count: u64,
}

const fn e(mult: [usize; 4], count: u64) -> TableEntry {
    TableEntry { mult, count }
}

/// One orbit representative of `Polys_d({2})`.
#[derive(Clone, Copy, Debug)]
pub struct Table5Row {
    pub coeffs: &'static [i64],
    pub palindromic: bool,
    pub s1: i64,
    pub index: i64,
    /// Neighbor counts of degree 1, 2, 4.
    pub neighbors: [usize; 3],
}

const fn r(coeffs: &'static [i64], palindromic: bool, s1: i64, index: i64, neighbors: [usize; 3]) -> Table5Row {
    Table5Row { coeffs, palindromic, s1, index, neighbors }
}

pub const TABLE5: &[Table5Row] = &[
    r(&[1, 1], true, 2, 1, [0, 7, 36]),
    r(&[1, 6, 1], true, 8, 2, [1, 0, 7]),
    r(&[1, -6, 1], true, -4, 2, [1, 0, 7]),
    r(&[-1, -2, 1], false, -2, 1, [2, 2, 13]),
    r(&[1, 0, 1], true, 2, 1, [1, 2, 14]),
    r(&[1, 0, 0, 0, 1], true, 2, 1, [1, 1, 4]),
    r(&[1, 0, 6, 0, 1], false, 8, 8, [1, 1, 2]),
    r(&[1, -4, -26, -4, 1], true, -32, 64, [1, 2, 2]),
    r(&[1, 4, -26, 4, 1], true, -16, 64, [1, 2, 2]),
    r(&[1, 28, 70, 28, 1], true, 128, 512, [1, 1, 0]),
    r(&[1, -28, 70, -28, 1], true, 16, 512, [1, 1, 0]),
    r(&[1, 4, -6, -4, 1], false, -4, 8, [1, 3, 3]),
    r(&[1, 12, -2, -4, 1], false, 8, 8, [2, 1, 4]),
    r(&[1, -12, -2, 4, 1], false, 8, 8, [1, 1, 4]),
    r(&[-1, 4, -2, -4, 1], false, -2, 1, [2, 2, 7]),
    r(&[-1, -4, -2, 4, 1], false, -2, 1, [1, 1, 5]),
    r(&[1, -20, 102, -148, 1], false, -64, 512, [0, 0, 1]),
    r(&[1, -12, 34, -20, 1], false, 4, 32, [0, 2, 0]),
    r(&[1, 12, 6, 12, 1], true, 32, 64, [1, 2, 2]),
    r(&[1, -12, 6, -12, 1], true, -16, 64, [1, 2, 2]),
    r(&[-1, -4, 6, -4, 1], false, -2, 1, [1, 2, 5]),
    r(&[1, -4, -2, -4, 1], true, -8, 8, [1, 2, 6]),
    r(&[1, 4, -2, 4, 1], true, 8, 8, [1, 2, 6]),
    r(&[1, 20, -26, 20, 1], true, 16, 512, [1, 1, 0]),
    r(&[1, -20, -26, -20, 1], true, -64, 512, [1, 1, 2]),
    r(&[-1, 0, -2, 0, 1], false, -2, 1, [1, 2, 8]),
    r(&[1, -4, 10, -12, 1], false, -4, 8, [1, 2, 2]),
    r(&[1, -4, 22, -4, 1], true, 16, 64, [1, 1, 2]),
    r(&[1, 4, 22, 4, 1], true, 32, 64, [1, 1, 2]),
    r(&[1, -4, 4, 0, 1], false, 2, 1, [1, 1, 4]),
];

/// Fields unramified outside 2 that contribute no vertices.
pub const TABLE5_EMPTY_FIELDS: &[&[i64]] = &[&[2, 0, 1], &[2, 0, 4, 0, 1], &[2, 0, 0, 0, 1]];

pub fn table5_candidates() -> Vec<IntPoly> {
    TABLE5.iter().map(|r| IntPoly::from_i64(r.coeffs)).collect()
}

/// Sizes of `Polys_{2^b 1^a}({2})`, rows `b`, columns `a`.
pub const LITTLE_TABLE_2: [[u64; 2]; 4] = [[1, 3], [15, 21], [9, 9], [3, 3]];

/// `|Polys_{1^a}({2,3,5,7})|` for `a = 0..=9`.
pub const DEGREE1_ROW_2357: [u64; 10] = [1, 375, 9900, 73000, 232260, 383712, 356916, 190620, 55935, 7425];

/// Cubic classes for `{2,3}`: square class `d`, field discriminant, defining polynomial,
/// number of `32∞` points, number of cubic vertices.
#[derive(Clone, Copy, Debug)]
pub struct CubicFieldRow {
    pub d: i64,
    pub field_disc: i64,
    pub field_poly: &'static [i64],
    pub points: usize,
    pub vertices: usize,
}

pub const TABLE3: &[CubicFieldRow] = &[
    CubicFieldRow { d: -6, field_disc: -216, field_poly: &[-2, 3, 0, 1], points: 10, vertices: 396 },
    CubicFieldRow { d: -3, field_disc: -972, field_poly: &[-12, 0, 0, 1], points: 1, vertices: 6 },
    CubicFieldRow { d: -3, field_disc: -972, field_poly: &[-6, 0, 0, 1], points: 1, vertices: 6 },
    CubicFieldRow { d: -3, field_disc: -243, field_poly: &[-3, 0, 0, 1], points: 6, vertices: 180 },
    CubicFieldRow { d: -3, field_disc: -108, field_poly: &[-2, 0, 0, 1], points: 4, vertices: 96 },
    CubicFieldRow { d: -2, field_disc: -648, field_poly: &[-10, -3, 0, 1], points: 9, vertices: 102 },
    CubicFieldRow { d: -1, field_disc: -324, field_poly: &[-4, -3, 0, 1], points: 9, vertices: 264 },
    CubicFieldRow { d: 1, field_disc: 81, field_poly: &[-1, -3, 0, 1], points: 3, vertices: 100 },
    CubicFieldRow { d: 6, field_disc: 1944, field_poly: &[-6, -9, 0, 1], points: 11, vertices: 348 },
];

/// `|Polys^δ_{[2]}({2,3,5})|` by the class `δ` of the generating triples, together with
/// `|T_{∞,2,∞}({2,3,5})^δ|`.
pub const DELTA_ROW_235: &[(i64, usize, usize)] = &[
    (-30, 3, 12),
    (-15, 6, 48),
    (-10, 24, 456),
    (-6, 25, 504),
    (-5, 11, 138),
    (-3, 8, 84),
    (-2, 6, 48),
    (-1, 49, 1020),
    (1, 12, 171),
    (2, 9, 108),
    (3, 2, 10),
    (5, 9, 96),
    (6, 6, 48),
    (10, 0, 0),
    (15, 13, 204),
    (30, 0, 0),
];

/// A displayed product polynomial with its published invariants.
#[derive(Clone, Debug)]
pub struct NamedPoly {
    pub name: &'static str,
    pub primes: &'static [u64],
    pub factors: &'static [&'static [i64]],
    /// Published discriminant as `(sign, [(p, e)])`; `None` when not displayed.
    pub disc: Option<(i8, &'static [(u64, u32)])>,
    /// Number of members of the same partition class reported for this prime set.
    pub class_size: Option<u64>,
}

impl NamedPoly {
    pub fn primes(&self) -> PrimeSet {
        PrimeSet::new(self.primes.iter().copied()).expect("registry prime sets are valid")
    }

    pub fn factor_polys(&self) -> Result<Vec<NormalizedPoly>> {
        self.factors.iter().map(|c| NormalizedPoly::from_i64(c)).collect()
    }

    pub fn product(&self) -> Result<NormalizedPoly> {
        Ok(NormalizedPoly::product(&self.factor_polys()?))
    }

    /// Degree multiplicities `[a, b, c, d, …]`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let max = self.factors.iter().map(|f| f.len() - 1).max().unwrap_or(0);
        let mut m = vec![0; max];
        for f in self.factors {
            m[f.len() - 2] += 1;
        }
        m
    }

    pub fn expected_disc(&self) -> Option<BigInt> {
        self.disc.map(|(sign, pe)| {
            let v = pe.iter().fold(BigInt::one(), |acc, &(p, e)| acc * BigInt::from(p).pow(e));
            if sign < 0 {
                -v
            } else {
                v
            }
        })
    }
}

pub const NAMED: &[NamedPoly] = &[
    NamedPoly {
        name: "big23",
        primes: &[2, 3],
        factors: &[
            &[-2, 0, 0, 1],
            &[1, -3, 3, 1],
            &[-1, 6, -6, 2],
            &[4, -3, 0, 1],
            &[-1, 3, 0, 2],
            &[-2, 6, -9, 4],
            &[-2, 6, -3, 1],
            &[2, -3, 0, 2],
            &[-1, 0, -3, 2],
            &[1, -3, 0, 1],
            &[1, 0, -3, 1],
            &[1, -1, 1],
        ],
        disc: Some((1, &[(2, 105), (3, 533)])),
        class_size: Some(2),
    },
    NamedPoly {
        name: "big235",
        primes: &[2, 3, 5],
        factors: &[
            &[3, 6, 1],
            &[1, 6, 3],
            &[3, -6, 1],
            &[1, -6, 3],
            &[-5, -2, 1],
            &[-1, 2, 5],
            &[-5, 2, 1],
            &[-1, -2, 5],
            &[-1, -2, 1],
            &[-1, 2, 1],
            &[-1, -6, 1],
            &[-1, 6, 1],
            &[-3, -2, 3],
            &[-3, 2, 3],
            &[1, 0, 1],
            &[1, 1],
        ],
        disc: Some((-1, &[(2, 1046), (3, 80), (5, 104)])),
        class_size: Some(3),
    },
    NamedPoly {
        name: "quartic-extremal",
        primes: &[2],
        factors: &[&[1, 1], &[1, 0, 1], &[-1, -2, 1], &[-1, 2, 1], &[1, 4, -6, -4, 1], &[1, -4, -6, 4, 1]],
        disc: Some((-1, &[(2, 184)])),
        class_size: Some(3),
    },
    NamedPoly {
        name: "clique-2311",
        primes: &[2],
        factors: &[&[2, -2, 1], &[-2, 0, 1], &[2, -4, 1], &[-2, 1]],
        disc: None,
        class_size: Some(3),
    },
    NamedPoly {
        name: "consecutive-2-10",
        primes: &[2, 3, 5, 7],
        factors: &[&[-2, 1], &[-3, 1], &[-4, 1], &[-5, 1], &[-6, 1], &[-7, 1], &[-8, 1], &[-9, 1], &[-10, 1]],
        disc: None,
        class_size: Some(7425),
    },
];

pub fn named(name: &str) -> Result<&'static NamedPoly> {
    NAMED
        .iter()
        .find(|n| n.name == name)
        .ok_or_else(|| Error::Invalid(format!("unknown polynomial '{name}'")))
}

/// A clique-count table with its prime set and the largest vertex degree it uses.
#[derive(Clone, Copy, Debug)]
pub struct PublishedTable {
    pub name: &'static str,
    pub primes: &'static [u64],
    pub max_degree: usize,
    pub entries: &'static [TableEntry],
    /// Set when the counts assume the degree-4 vertex list is complete.
    pub conditional: bool,
}

pub const TABLE_LITTLE_2: &[TableEntry] = &[
    e([0, 0, 0, 0], 1),
    e([1, 0, 0, 0], 3),
    e([0, 1, 0, 0], 15),
    e([1, 1, 0, 0], 21),
    e([0, 2, 0, 0], 9),
    e([1, 2, 0, 0], 9),
    e([0, 3, 0, 0], 3),
    e([1, 3, 0, 0], 3),
];

pub const PUBLISHED_TABLES: &[PublishedTable] = &[
    PublishedTable { name: "little2", primes: &[2], max_degree: 2, entries: TABLE_LITTLE_2, conditional: false },
    PublishedTable { name: "v235", primes: &[2, 3, 5], max_degree: 2, entries: TABLE_V235, conditional: false },
    PublishedTable { name: "v23", primes: &[2, 3], max_degree: 3, entries: TABLE_V23, conditional: false },
    PublishedTable { name: "v2", primes: &[2], max_degree: 4, entries: TABLE_V2, conditional: true },
];

/// Cell-by-cell differences between a computed table and a published one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TableComparison {
    pub cells: usize,
    /// `(multiplicities, computed, published)`.
    pub mismatches: Vec<(Vec<usize>, u64, u64)>,
    /// Nonzero computed cells absent from the published table.
    pub extra: Vec<(Vec<usize>, u64)>,
}

impl TableComparison {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty() && self.extra.is_empty()
    }
}

impl PublishedTable {
    pub fn prime_set(&self) -> PrimeSet {
        PrimeSet::new(self.primes.iter().copied()).expect("registry prime sets are valid")
    }

    pub fn compare(&self, table: &PartitionTable) -> TableComparison {
        let mut out = TableComparison { cells: self.entries.len(), ..Default::default() };
        for e in self.entries {
            let got = table.at(&e.mult);
            if got != e.count {
                out.mismatches.push((e.mult.to_vec(), got, e.count));
            }
        }
        for (k, &n) in &table.counts {
            if !self.entries.iter().any(|e| Kappa::new(e.mult.to_vec()) == *k) {
                out.extra.push((k.multiplicities().to_vec(), n));
            }
        }
        out
    }
}

pub fn published_table(name: &str) -> Result<&'static PublishedTable> {
    PUBLISHED_TABLES
        .iter()
        .find(|t| t.name == name)
        .ok_or_else(|| Error::Invalid(format!("unknown table '{name}'")))
}

pub const TABLE_V235: &[TableEntry] = &[
    e([0, 0, 0, 0], 1),
    e([1, 0, 0, 0], 99),
    e([2, 0, 0, 0], 1020),
    e([3, 0, 0, 0], 3100),
    e([4, 0, 0, 0], 3570),
    e([5, 0, 0, 0], 1386),
    e([0, 1, 0, 0], 1927),
    e([1, 1, 0, 0], 18225),
    e([2, 1, 0, 0], 60240),
    e([3, 1, 0, 0], 90640),
    e([4, 1, 0, 0], 64470),
    e([5, 1, 0, 0], 18018),
    e([0, 2, 0, 0], 44967),
    e([1, 2, 0, 0], 227751),
    e([2, 2, 0, 0], 477540),
    e([3, 2, 0, 0], 511200),
    e([4, 2, 0, 0], 279930),
    e([5, 2, 0, 0], 64176),
    e([0, 3, 0, 0], 238255),
    e([1, 3, 0, 0], 862029),
    e([2, 3, 0, 0], 1347060),
    e([3, 3, 0, 0], 1125940),
    e([4, 3, 0, 0], 502530),
    e([5, 3, 0, 0], 99960),
    e([0, 4, 0, 0], 551944),
    e([1, 4, 0, 0], 1567746),
    e([2, 4, 0, 0], 1913760),
    e([3, 4, 0, 0], 1269160),
    e([4, 4, 0, 0], 463470),
    e([5, 4, 0, 0], 83034),
    e([0, 5, 0, 0], 745824),
    e([1, 5, 0, 0], 1740246),
    e([2, 5, 0, 0], 1683180),
    e([3, 5, 0, 0], 867600),
    e([4, 5, 0, 0], 246120),
    e([5, 5, 0, 0], 40698),
    e([0, 6, 0, 0], 692476),
    e([1, 6, 0, 0], 1364910),
    e([2, 6, 0, 0], 1050150),
    e([3, 6, 0, 0], 409570),
    e([4, 6, 0, 0], 81690),
    e([5, 6, 0, 0], 12768),
    e([0, 7, 0, 0], 480862),
    e([1, 7, 0, 0], 812520),
    e([2, 7, 0, 0], 493440),
    e([3, 7, 0, 0], 146800),
    e([4, 7, 0, 0], 20370),
    e([5, 7, 0, 0], 3360),
    e([0, 8, 0, 0], 259974),
    e([1, 8, 0, 0], 376650),
    e([2, 8, 0, 0], 170850),
    e([3, 8, 0, 0], 38550),
    e([4, 8, 0, 0], 3990),
    e([5, 8, 0, 0], 756),
    e([0, 9, 0, 0], 112016),
    e([1, 9, 0, 0], 138096),
    e([2, 9, 0, 0], 39660),
    e([3, 9, 0, 0], 6020),
    e([4, 9, 0, 0], 420),
    e([5, 9, 0, 0], 84),
    e([0, 10, 0, 0], 39404),
    e([1, 10, 0, 0], 42216),
    e([2, 10, 0, 0], 5520),
    e([3, 10, 0, 0], 380),
    e([0, 11, 0, 0], 11520),
    e([1, 11, 0, 0], 11436),
    e([2, 11, 0, 0], 360),
    e([0, 12, 0, 0], 2751),
    e([1, 12, 0, 0], 2709),
    e([0, 13, 0, 0], 495),
    e([1, 13, 0, 0], 495),
    e([0, 14, 0, 0], 57),
    e([1, 14, 0, 0], 57),
    e([0, 15, 0, 0], 3),
    e([1, 15, 0, 0], 3),
];

pub const TABLE_V23: &[TableEntry] = &[
    e([0, 0, 0, 0], 1),
    e([0, 1, 0, 0], 169),
    e([0, 2, 0, 0], 981),
    e([0, 3, 0, 0], 1723),
    e([0, 4, 0, 0], 1390),
    e([0, 5, 0, 0], 630),
    e([0, 6, 0, 0], 150),
    e([0, 7, 0, 0], 12),
    e([1, 0, 0, 0], 21),
    e([1, 1, 0, 0], 675),
    e([1, 2, 0, 0], 2175),
    e([1, 3, 0, 0], 2559),
    e([1, 4, 0, 0], 1416),
    e([1, 5, 0, 0], 486),
    e([1, 6, 0, 0], 108),
    e([1, 7, 0, 0], 12),
    e([2, 0, 0, 0], 60),
    e([2, 1, 0, 0], 840),
    e([2, 2, 0, 0], 1710),
    e([2, 3, 0, 0], 1200),
    e([2, 4, 0, 0], 270),
    e([3, 0, 0, 0], 40),
    e([3, 1, 0, 0], 340),
    e([3, 2, 0, 0], 570),
    e([3, 3, 0, 0], 340),
    e([3, 4, 0, 0], 70),
    e([0, 0, 1, 0], 1498),
    e([0, 1, 1, 0], 6364),
    e([0, 2, 1, 0], 10854),
    e([0, 3, 1, 0], 8788),
    e([0, 4, 1, 0], 3958),
    e([0, 5, 1, 0], 1116),
    e([0, 6, 1, 0], 162),
    e([1, 0, 1, 0], 4584),
    e([1, 1, 1, 0], 13632),
    e([1, 2, 1, 0], 18024),
    e([1, 3, 1, 0], 11280),
    e([1, 4, 1, 0], 3600),
    e([1, 5, 1, 0], 792),
    e([1, 6, 1, 0], 96),
    e([2, 0, 1, 0], 4260),
    e([2, 1, 1, 0], 9900),
    e([2, 2, 1, 0], 10020),
    e([2, 3, 1, 0], 4800),
    e([2, 4, 1, 0], 720),
    e([3, 0, 1, 0], 1120),
    e([3, 1, 1, 0], 2440),
    e([3, 2, 1, 0], 2040),
    e([3, 3, 1, 0], 1000),
    e([3, 4, 1, 0], 160),
    e([0, 0, 2, 0], 21282),
    e([0, 1, 2, 0], 37374),
    e([0, 2, 2, 0], 34008),
    e([0, 3, 2, 0], 16866),
    e([0, 4, 2, 0], 4560),
    e([0, 5, 2, 0], 798),
    e([0, 6, 2, 0], 72),
    e([1, 0, 2, 0], 41184),
    e([1, 1, 2, 0], 62208),
    e([1, 2, 2, 0], 49872),
    e([1, 3, 2, 0], 21000),
    e([1, 4, 2, 0], 3900),
    e([1, 5, 2, 0], 564),
    e([1, 6, 2, 0], 48),
    e([2, 0, 2, 0], 24720),
    e([2, 1, 2, 0], 33180),
    e([2, 2, 2, 0], 23160),
    e([2, 3, 2, 0], 8940),
    e([2, 4, 2, 0], 900),
    e([3, 0, 2, 0], 3960),
    e([3, 1, 2, 0], 6000),
    e([3, 2, 2, 0], 3720),
    e([3, 3, 2, 0], 1680),
    e([3, 4, 2, 0], 240),
    e([0, 0, 3, 0], 81850),
    e([0, 1, 3, 0], 95578),
    e([0, 2, 3, 0], 54942),
    e([0, 3, 3, 0], 17398),
    e([0, 4, 3, 0], 2704),
    e([0, 5, 3, 0], 216),
    e([1, 0, 3, 0], 117288),
    e([1, 1, 3, 0], 133632),
    e([1, 2, 3, 0], 71712),
    e([1, 3, 3, 0], 19800),
    e([1, 4, 3, 0], 1992),
    e([1, 5, 3, 0], 120),
    e([2, 0, 3, 0], 49140),
    e([2, 1, 3, 0], 54660),
    e([2, 2, 3, 0], 27240),
    e([2, 3, 3, 0], 7380),
    e([2, 4, 3, 0], 540),
    e([3, 0, 3, 0], 4520),
    e([3, 1, 3, 0], 6200),
    e([3, 2, 3, 0], 2760),
    e([3, 3, 3, 0], 1000),
    e([3, 4, 3, 0], 160),
    e([0, 0, 4, 0], 156924),
    e([0, 1, 4, 0], 144000),
    e([0, 2, 4, 0], 55692),
    e([0, 3, 4, 0], 11434),
    e([0, 4, 4, 0], 1132),
    e([0, 5, 4, 0], 48),
    e([1, 0, 4, 0], 180822),
    e([1, 1, 4, 0], 174564),
    e([1, 2, 4, 0], 64074),
    e([1, 3, 4, 0], 11004),
    e([1, 4, 4, 0], 684),
    e([1, 5, 4, 0], 24),
    e([2, 0, 4, 0], 56910),
    e([2, 1, 4, 0], 56940),
    e([2, 2, 4, 0], 19050),
    e([2, 3, 4, 0], 2760),
    e([2, 4, 4, 0], 120),
    e([3, 0, 4, 0], 3030),
    e([3, 1, 4, 0], 4020),
    e([3, 2, 4, 0], 1230),
    e([3, 3, 4, 0], 220),
    e([3, 4, 4, 0], 40),
    e([0, 0, 5, 0], 173110),
    e([0, 1, 5, 0], 137530),
    e([0, 2, 5, 0], 38094),
    e([0, 3, 5, 0], 4848),
    e([0, 4, 5, 0], 282),
    e([1, 0, 5, 0], 167448),
    e([1, 1, 5, 0], 144552),
    e([1, 2, 5, 0], 39048),
    e([1, 3, 5, 0], 3936),
    e([1, 4, 5, 0], 144),
    e([2, 0, 5, 0], 42000),
    e([2, 1, 5, 0], 37260),
    e([2, 2, 5, 0], 8880),
    e([2, 3, 5, 0], 420),
    e([3, 0, 5, 0], 1240),
    e([3, 1, 5, 0], 1600),
    e([3, 2, 5, 0], 360),
    e([0, 0, 6, 0], 116552),
    e([0, 1, 6, 0], 85214),
    e([0, 2, 6, 0], 18186),
    e([0, 3, 6, 0], 1392),
    e([0, 4, 6, 0], 42),
    e([1, 0, 6, 0], 95388),
    e([1, 1, 6, 0], 76440),
    e([1, 2, 6, 0], 16572),
    e([1, 3, 6, 0], 1044),
    e([1, 4, 6, 0], 24),
    e([2, 0, 6, 0], 19800),
    e([2, 1, 6, 0], 15360),
    e([2, 2, 6, 0], 2820),
    e([3, 0, 6, 0], 560),
    e([3, 1, 6, 0], 620),
    e([3, 2, 6, 0], 60),
    e([0, 0, 7, 0], 49364),
    e([0, 1, 7, 0], 33650),
    e([0, 2, 7, 0], 5622),
    e([0, 3, 7, 0], 246),
    e([1, 0, 7, 0], 33576),
    e([1, 1, 7, 0], 25440),
    e([1, 2, 7, 0], 4392),
    e([1, 3, 7, 0], 192),
    e([2, 0, 7, 0], 5820),
    e([2, 1, 7, 0], 4140),
    e([2, 2, 7, 0], 600),
    e([3, 0, 7, 0], 160),
    e([3, 1, 7, 0], 160),
    e([0, 0, 8, 0], 12998),
    e([0, 1, 8, 0], 7916),
    e([0, 2, 8, 0], 954),
    e([0, 3, 8, 0], 24),
    e([1, 0, 8, 0], 6870),
    e([1, 1, 8, 0], 4914),
    e([1, 2, 8, 0], 534),
    e([1, 3, 8, 0], 18),
    e([2, 0, 8, 0], 960),
    e([2, 1, 8, 0], 720),
    e([2, 2, 8, 0], 60),
    e([3, 0, 8, 0], 20),
    e([3, 1, 8, 0], 20),
    e([0, 0, 9, 0], 1948),
    e([0, 1, 9, 0], 952),
    e([0, 2, 9, 0], 54),
    e([1, 0, 9, 0], 648),
    e([1, 1, 9, 0], 456),
    e([2, 0, 9, 0], 60),
    e([2, 1, 9, 0], 60),
    e([0, 0, 10, 0], 162),
    e([0, 1, 10, 0], 54),
    e([1, 0, 10, 0], 24),
    e([1, 1, 10, 0], 24),
    e([0, 0, 11, 0], 8),
    e([0, 1, 11, 0], 2),
];

pub const TABLE_V2: &[TableEntry] = &[
    e([0, 0, 0, 0], 1),
    e([0, 0, 0, 1], 108),
    e([0, 0, 0, 2], 177),
    e([0, 0, 0, 3], 144),
    e([0, 0, 0, 4], 42),
    e([0, 1, 0, 0], 15),
    e([0, 1, 0, 1], 162),
    e([0, 1, 0, 2], 93),
    e([0, 1, 0, 3], 30),
    e([0, 2, 0, 0], 9),
    e([0, 2, 0, 1], 30),
    e([0, 2, 0, 2], 21),
    e([0, 2, 0, 3], 6),
    e([0, 3, 0, 0], 3),
    e([0, 3, 0, 1], 6),
    e([0, 3, 0, 2], 3),
    e([1, 0, 0, 0], 3),
    e([1, 0, 0, 1], 108),
    e([1, 0, 0, 2], 129),
    e([1, 0, 0, 3], 90),
    e([1, 0, 0, 4], 24),
    e([1, 1, 0, 0], 21),
    e([1, 1, 0, 1], 156),
    e([1, 1, 0, 2], 63),
    e([1, 1, 0, 3], 18),
    e([1, 2, 0, 0], 9),
    e([1, 2, 0, 1], 18),
    e([1, 2, 0, 2], 9),
    e([1, 3, 0, 0], 3),
    e([1, 3, 0, 1], 6),
    e([1, 3, 0, 2], 3),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{check_membership, discriminant};

    #[test]
    fn table5_rows_are_members() {
        let p = PrimeSet::new([2]).unwrap();
        for row in TABLE5 {
            let s = NormalizedPoly::from_i64(row.coeffs).unwrap();
            assert!(check_membership(&s, &p).ok, "{s}");
            assert_eq!(s.special_values().1.magnitude(), BigInt::from(row.s1).magnitude(), "{s}");
        }
        for c in TABLE5_EMPTY_FIELDS {
            let s = NormalizedPoly::from_i64(c).unwrap();
            assert!(!check_membership(&s, &p).ok);
        }
    }

    #[test]
    fn named_discriminants() {
        for n in NAMED {
            let s = n.product().unwrap();
            assert!(check_membership(&s, &n.primes()).ok, "{}", n.name);
            if let Some(d) = n.expected_disc() {
                assert_eq!(discriminant(s.poly()), d, "{}", n.name);
            }
        }
    }

    #[test]
    fn table_shapes() {
        assert_eq!(TABLE_V235.len(), 75);
        assert!(TABLE_V23.iter().any(|e| e.mult == [1, 0, 4, 0] && e.count == 180822));
        assert!(TABLE_V23.iter().any(|e| e.mult == [0, 1, 11, 0] && e.count == 2));
        assert!(TABLE_V2.iter().any(|e| e.mult == [1, 3, 0, 2] && e.count == 3));
        assert_eq!(TABLE3.iter().map(|r| r.vertices).sum::<usize>(), 1498);
        assert_eq!(TABLE3.iter().map(|r| r.points).sum::<usize>(), 54);
        assert_eq!(DELTA_ROW_235.iter().map(|r| r.2).sum::<usize>(), 2947);
        assert_eq!(DELTA_ROW_235.iter().map(|r| r.1).sum::<usize>(), 183);
        assert_eq!(named("big23").unwrap().multiplicities(), vec![0, 1, 11]);
    }
}
