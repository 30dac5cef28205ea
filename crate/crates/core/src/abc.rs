//! Height-bounded search for the ABC-triple sets and their class invariants.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exact::{
    cube_free_smooth, exact_sqrt_u64, factor_over, is_square, smooth_numbers_up_to, squarefree_part, PrimeSet,
};
use crate::jinv::{reference_cubic, related};
use crate::poly::rational_roots;

/// Largest height bound accepted by the 64-bit search loops.
pub const MAX_HEIGHT: u64 = 1_000_000_000_000_000_000;

/// Which sides of `A + B + C = 0` are required to be P-units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    /// `A, B, C ∈ P*`.
    #[serde(rename = "inf-inf-inf")]
    InfInfInf,
    /// `A, C ∈ P*`, `B = b·y²`.
    #[serde(rename = "inf-2-inf")]
    InfTwoInf,
    /// `C ∈ P*`, `A = a·x³`, `B = b·y²`.
    #[serde(rename = "3-2-inf")]
    ThreeTwoInf,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::InfInfInf, Variant::InfTwoInf, Variant::ThreeTwoInf];

    pub fn name(self) -> &'static str {
        match self {
            Variant::InfInfInf => "inf-inf-inf",
            Variant::InfTwoInf => "inf-2-inf",
            Variant::ThreeTwoInf => "3-2-inf",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf-inf-inf" | "iii" | "111" => Ok(Variant::InfInfInf),
            "inf-2-inf" | "i2i" | "2" => Ok(Variant::InfTwoInf),
            "3-2-inf" | "32i" | "3" => Ok(Variant::ThreeTwoInf),
            other => Err(Error::Invalid(format!("unknown variant '{other}'"))),
        }
    }
}

/// Factorization pattern of `S(j,t)` over Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CubicShape {
    #[serde(rename = "3")]
    Irreducible,
    #[serde(rename = "21")]
    LinearQuadratic,
    #[serde(rename = "111")]
    Split,
}

impl CubicShape {
    pub fn label(self) -> &'static str {
        match self {
            CubicShape::Irreducible => "3",
            CubicShape::LinearQuadratic => "21",
            CubicShape::Split => "111",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassDatum {
    None,
    Delta(#[serde(with = "crate::io::bigint_str")] BigInt),
    Cubic { shape: CubicShape, class_id: Option<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbcPoint {
    pub variant: Variant,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    /// `−A/C`.
    pub u: BigRational,
    /// `max(|A|, |C|)`.
    pub height: u64,
    pub class: ClassDatum,
}

impl AbcPoint {
    /// The canonical triple for `u = p/q` in lowest terms, `q > 0`.
    pub fn from_u(variant: Variant, p: i128, q: u64) -> AbcPoint {
        let q = q as i128;
        let s = if p * (p - q) > 0 { 1 } else { -1 };
        let a = BigInt::from(-p * s);
        let c = BigInt::from(q * s);
        let b = BigInt::from((p - q) * s);
        AbcPoint {
            variant,
            u: BigRational::new(BigInt::from(p), BigInt::from(q)),
            height: p.unsigned_abs().max(q as u128) as u64,
            a,
            b,
            c,
            class: ClassDatum::None,
        }
    }

    /// Checks the defining conditions of the point's variant.
    pub fn verify(&self, primes: &PrimeSet) -> bool {
        let sum_zero = (&self.a + &self.b + &self.c).is_zero();
        let negative = (&self.a * &self.b * &self.c).is_negative();
        let coprime = num_integer::Integer::gcd(&self.a, &self.c).is_one()
            && num_integer::Integer::gcd(&self.a, &self.b).is_one();
        let u_ok = self.u == BigRational::new(-self.a.clone(), self.c.clone());
        let unit = |n: &BigInt| primes.is_smooth(n);
        let power = |n: &BigInt, k: u32| {
            factor_over(n, primes).is_ok_and(|f| {
                let r = BigInt::from(f.rough);
                if k == 2 {
                    is_square(&r)
                } else {
                    let c = num_integer::Roots::cbrt(&r);
                    &c * &c * &c == r
                }
            })
        };
        let sides = match self.variant {
            Variant::InfInfInf => unit(&self.a) && unit(&self.b) && unit(&self.c),
            Variant::InfTwoInf => unit(&self.a) && power(&self.b, 2) && unit(&self.c),
            Variant::ThreeTwoInf => power(&self.a, 3) && power(&self.b, 2) && unit(&self.c),
        };
        sum_zero && negative && coprime && u_ok && sides
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCertificate {
    pub primes: PrimeSet,
    pub variant: Variant,
    pub height_bound: u64,
    pub complete: bool,
    pub citation: Option<String>,
}

struct KnownBound {
    variant: Variant,
    primes: &'static [u64],
    height: u64,
    citation: &'static str,
}

const KNOWN_BOUNDS: &[KnownBound] = &[
    KnownBound {
        variant: Variant::InfInfInf,
        primes: &[2, 3, 5, 7],
        height: 1_000_000_000,
        citation: "de Weger, S-unit equations over {2,3,5,7}: complete list, largest height 4375",
    },
    KnownBound {
        variant: Variant::InfInfInf,
        primes: &[2, 3, 5, 7, 11],
        height: 18_255,
        citation: "de Weger, S-unit equations over {2,3,5,7,11}: complete list, largest height 18255",
    },
    KnownBound {
        variant: Variant::InfInfInf,
        primes: &[2, 3, 5, 7, 11, 13],
        height: 1_771_561,
        citation: "de Weger, S-unit equations over {2,3,5,7,11,13}: complete list, largest height 1771561",
    },
    KnownBound {
        variant: Variant::InfTwoInf,
        primes: &[2, 3, 5],
        height: 1_000_000_000,
        citation: "Cremona, curves with good reduction outside {2,3,5}",
    },
    KnownBound {
        variant: Variant::ThreeTwoInf,
        primes: &[2, 3],
        height: 100_000_000_000,
        citation: "Coghlan, elliptic curves with good reduction outside {2,3}",
    },
];

fn certificate(primes: &PrimeSet, variant: Variant, h: u64) -> SearchCertificate {
    let known = KNOWN_BOUNDS.iter().find(|k| {
        k.variant == variant && h >= k.height && primes.primes().iter().all(|p| k.primes.contains(p))
    });
    SearchCertificate {
        primes: primes.clone(),
        variant,
        height_bound: h,
        complete: known.is_some(),
        citation: known.map(|k| k.citation.to_string()),
    }
}

fn prime_mask(primes: &PrimeSet, n: u64) -> u64 {
    primes
        .primes()
        .iter()
        .enumerate()
        .filter(|(_, &p)| n.is_multiple_of(p))
        .fold(0, |m, (i, _)| m | (1 << i))
}

fn divisible_by_mask(primes: &PrimeSet, x: u64, mask: u64) -> bool {
    primes
        .primes()
        .iter()
        .enumerate()
        .any(|(i, &p)| mask & (1 << i) != 0 && x.is_multiple_of(p))
}

/// Enumerates a variant set up to height `h`, sorted by `(height, u)`.
pub fn search_abc(
    primes: &PrimeSet,
    variant: Variant,
    h: u64,
    budget: &Budget,
) -> Result<(Vec<AbcPoint>, SearchCertificate)> {
    if h == 0 {
        return Err(Error::Invalid("height bound must be at least 1".into()));
    }
    if h > MAX_HEIGHT {
        return Err(Error::Budget(format!("height bound {h} exceeds {MAX_HEIGHT}")));
    }
    if primes.len() > 60 {
        return Err(Error::Unsupported("more than 60 primes".into()));
    }
    let cert = certificate(primes, variant, h);
    if variant != Variant::ThreeTwoInf && !primes.contains(2) {
        // among A, B, C one is even, so these sets are empty without 2
        return Ok((Vec::new(), SearchCertificate { complete: true, citation: Some("empty: one of A, B, C is even, so these sets need 2 in P".into()), ..cert }));
    }
    let smooth = smooth_numbers_up_to(primes, h);
    let masks: Vec<u64> = smooth.iter().map(|&n| prime_mask(primes, n)).collect();
    let third_ok = |r: u64| match variant {
        Variant::InfInfInf => primes.is_smooth_u64(r),
        _ => exact_sqrt_u64(primes.rough_part_u64(r)).is_some(),
    };
    let hits: Vec<(i128, u64)> = match variant {
        Variant::InfInfInf | Variant::InfTwoInf => {
            let n = smooth.len() as u64;
            budget.check_work(2 * n * n, "search")?;
            smooth
                .par_iter()
                .zip(masks.par_iter())
                .map(|(&q, &mq)| -> Result<Vec<(i128, u64)>> {
                    budget.check_time("search")?;
                    let mut out = Vec::new();
                    for (&a, &ma) in smooth.iter().zip(&masks) {
                        if ma & mq != 0 {
                            continue;
                        }
                        for p in [-(a as i128), a as i128] {
                            if p == q as i128 {
                                continue;
                            }
                            let r = (p - q as i128).unsigned_abs() as u64;
                            if third_ok(r) {
                                out.push((p, q));
                            }
                        }
                    }
                    Ok(out)
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect()
        }
        Variant::ThreeTwoInf => {
            let cube_free = cube_free_smooth(primes);
            let per_q: u64 = cube_free
                .iter()
                .filter(|&&a| a <= h)
                .map(|&a| num_integer::Roots::cbrt(&(h / a)) + 1)
                .sum();
            budget.check_work(2 * per_q.saturating_mul(smooth.len() as u64), "search")?;
            let cf_masks: Vec<u64> = cube_free.iter().map(|&a| prime_mask(primes, a)).collect();
            smooth
                .par_iter()
                .zip(masks.par_iter())
                .map(|(&q, &mq)| -> Result<Vec<(i128, u64)>> {
                    budget.check_time("search")?;
                    let mut out = Vec::new();
                    for (&a, &ma) in cube_free.iter().zip(&cf_masks) {
                        if ma & mq != 0 || a > h {
                            continue;
                        }
                        let mut x = 1u64;
                        loop {
                            let Some(n) = x.checked_pow(3).and_then(|c| c.checked_mul(a)).filter(|&n| n <= h) else {
                                break;
                            };
                            if !divisible_by_mask(primes, x, mq) {
                                for p in [-(n as i128), n as i128] {
                                    if p == q as i128 {
                                        continue;
                                    }
                                    let r = (p - q as i128).unsigned_abs() as u64;
                                    if third_ok(r) {
                                        out.push((p, q));
                                    }
                                }
                            }
                            x += 1;
                        }
                    }
                    Ok(out)
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect()
        }
    };
    let mut points: Vec<AbcPoint> = hits.into_iter().map(|(p, q)| AbcPoint::from_u(variant, p, q)).collect();
    points.sort_by(|x, y| x.height.cmp(&y.height).then_with(|| x.u.cmp(&y.u)));
    points.dedup_by(|x, y| x.u == y.u);
    for pt in &mut points {
        pt.class = match variant {
            Variant::InfInfInf => ClassDatum::None,
            Variant::InfTwoInf => ClassDatum::Delta(delta_of(&pt.u, primes)?),
            Variant::ThreeTwoInf => ClassDatum::Cubic { shape: cubic_shape(&pt.u), class_id: None },
        };
    }
    Ok((points, cert))
}

/// Square-free representative of `n` modulo squares, fast when the part of `n`
/// coprime to `primes` is already a square.
pub fn square_class(n: &BigInt, primes: &PrimeSet) -> Result<BigInt> {
    let f = factor_over(n, primes)?;
    let rough = BigInt::from(f.rough.clone());
    if !is_square(&rough) {
        return squarefree_part(n);
    }
    let mut d = BigInt::from(f.sign);
    for (&p, &e) in &f.exponents {
        if e % 2 == 1 {
            d *= p;
        }
    }
    Ok(d)
}

/// The class of `u(1 − u)` in Q×/Q×².
pub fn delta_of(u: &BigRational, primes: &PrimeSet) -> Result<BigInt> {
    let (p, q) = (u.numer(), u.denom());
    let v = p * (q - p);
    square_class(&v, primes)
}

/// Factorization pattern of `S(j, t)`.
pub fn cubic_shape(j: &BigRational) -> CubicShape {
    let roots: usize = rational_roots(&reference_cubic(j)).iter().map(|r| r.1).sum();
    match roots {
        0 => CubicShape::Irreducible,
        1 => CubicShape::LinearQuadratic,
        _ => CubicShape::Split,
    }
}

/// Partition of `∞2∞` points by `δ`.
pub fn delta_classes(points: &[AbcPoint]) -> Result<BTreeMap<BigInt, Vec<AbcPoint>>> {
    let mut out: BTreeMap<BigInt, Vec<AbcPoint>> = BTreeMap::new();
    for pt in points {
        let delta = match &pt.class {
            ClassDatum::Delta(d) => d.clone(),
            _ => {
                let (p, q) = (pt.u.numer(), pt.u.denom());
                squarefree_part(&(p * (q - p)))?
            }
        };
        out.entry(delta).or_default().push(pt.clone());
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicClass {
    pub id: usize,
    /// Square-free class of the discriminant of the cubic algebra.
    pub d: BigInt,
    pub members: Vec<AbcPoint>,
}

impl CubicClass {
    pub fn j_values(&self) -> Vec<BigRational> {
        self.members.iter().map(|p| p.u.clone()).collect()
    }
}

/// Groups `32∞` points with irreducible `S(j,t)` by isomorphism class of `Q[t]/S(j,t)`.
///
/// Ids are assigned in order of `(d, smallest member)`; member class ids are filled in.
pub fn cubic_classes(points: &[AbcPoint], primes: &PrimeSet) -> Result<Vec<CubicClass>> {
    for pt in points {
        if cubic_shape(&pt.u) != CubicShape::Irreducible {
            return Err(Error::Invalid(format!("S(j,t) is reducible for j = {}", pt.u)));
        }
    }
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |k| (i, k))).collect();
    let linked: Vec<(usize, usize)> = pairs
        .par_iter()
        .map(|&(i, k)| related(&points[i].u, &points[k].u).map(|r| r.then_some((i, k))))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    for (i, k) in linked {
        let (ri, rk) = (find(&mut parent, i), find(&mut parent, k));
        if ri != rk {
            parent[ri.max(rk)] = ri.min(rk);
        }
    }
    let mut groups: BTreeMap<usize, Vec<AbcPoint>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(points[i].clone());
    }
    let mut classes = groups
        .into_values()
        .map(|members| {
            let j = &members[0].u;
            let d = square_class(&(BigInt::from(3) * (j.numer() - j.denom()) * j.denom()), primes)?;
            Ok(CubicClass { id: 0, d, members })
        })
        .collect::<Result<Vec<_>>>()?;
    classes.sort_by(|a, b| {
        a.d.cmp(&b.d).then_with(|| {
            let key = |c: &CubicClass| (c.members[0].height, c.members[0].u.clone());
            key(a).cmp(&key(b))
        })
    });
    for (id, class) in classes.iter_mut().enumerate() {
        class.id = id;
        for m in &mut class.members {
            m.class = ClassDatum::Cubic { shape: CubicShape::Irreducible, class_id: Some(id) };
        }
    }
    Ok(classes)
}

/// Images of `u` under `u ↦ 1 − u`, `u ↦ 1/u` and their composites.
pub fn s3_orbit_of_u(u: &BigRational) -> Vec<BigRational> {
    let one = BigRational::one();
    let mut out = Vec::with_capacity(6);
    for g in crate::poly::S3::ALL {
        if let Some(v) = g.apply(Some(u)) {
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    debug_assert!(out.iter().all(|v| v != &one));
    out
}

/// `|height|` helper for callers holding a rational.
pub fn height_of(u: &BigRational) -> u64 {
    u.numer().abs().max(u.denom().clone()).to_u64().unwrap_or(u64::MAX)
}
