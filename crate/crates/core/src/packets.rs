//! Packets of split polynomials under fractional-linear transformations.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{rational_roots, IntPoly, NormalizedPoly};

/// A point of P¹(Q) as a reduced pair `[x : y]` with `y ≥ 0`, and `x = 1` when `y = 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Point(BigInt, BigInt);

impl Point {
    fn new(x: BigInt, y: BigInt) -> Point {
        let g = x.gcd(&y);
        let (mut x, mut y) = (x / &g, y / &g);
        if y.is_negative() || (y.is_zero() && x.is_negative()) {
            x = -x;
            y = -y;
        }
        Point(x, y)
    }

    fn finite(r: &BigRational) -> Point {
        Point::new(r.numer().clone(), r.denom().clone())
    }

    fn det(&self, o: &Point) -> BigInt {
        &self.0 * &o.1 - &self.1 * &o.0
    }

    fn to_rational(&self) -> Option<BigRational> {
        (!self.1.is_zero()).then(|| Ratio::new(self.0.clone(), self.1.clone()))
    }
}

/// The map taking `(x, y, z)` to `(0, 1, ∞)`, applied to `t`.
fn cross_ratio(t: &Point, x: &Point, y: &Point, z: &Point) -> Point {
    Point::new(t.det(x) * y.det(z), t.det(z) * y.det(x))
}

#[derive(Clone, Debug, Serialize)]
pub struct Packet {
    /// First input polynomial of the packet.
    pub representative: NormalizedPoly,
    pub size: usize,
    pub stabilizer_order: usize,
    pub stabilizer: String,
    /// Packet members missing from the input.
    pub missing: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PacketReport {
    pub degree: usize,
    pub packets: Vec<Packet>,
    /// `Σ 1/|A|` over packets, as `numerator/denominator`.
    pub mass: String,
    /// `|input| / ((a+3)(a+2)(a+1))`.
    pub expected_mass: String,
    pub mass_ok: bool,
}

fn sorted_roots(s: &NormalizedPoly) -> Result<Vec<Point>> {
    let roots = rational_roots(s.poly());
    let count: usize = roots.iter().map(|r| r.1).sum();
    if count != s.degree() || roots.iter().any(|r| r.1 != 1) {
        return Err(Error::Invalid(format!("{s} does not split into distinct linear factors")));
    }
    let mut pts: Vec<Point> = roots.iter().map(|r| Point::finite(&r.0)).collect();
    pts.sort();
    Ok(pts)
}

fn from_roots(roots: &[Point]) -> Result<NormalizedPoly> {
    let mut p = IntPoly::one();
    for r in roots {
        let Some(q) = r.to_rational() else {
            return Err(Error::Invalid("root at infinity".into()));
        };
        p = &p * &IntPoly::new(vec![-q.numer().clone(), q.denom().clone()]);
    }
    NormalizedPoly::new(p)
}

fn perm_order(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut order = 1usize;
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        order = order.lcm(&len);
    }
    order
}

/// Names small groups from their order and element-order statistics.
fn group_name(orders: &[usize]) -> String {
    let n = orders.len();
    let involutions = orders.iter().filter(|&&o| o == 2).count();
    let max = orders.iter().copied().max().unwrap_or(1);
    match (n, involutions, max) {
        (1, _, _) => "C1".into(),
        (n, _, m) if m == n => format!("C{n}"),
        (4, 3, _) => "V".into(),
        (6, 3, _) => "S3".into(),
        (8, 5, _) => "D4".into(),
        (8, 1, 4) => "Q8".into(),
        (8, 3, 4) => "C4xC2".into(),
        (8, 7, 2) => "C2^3".into(),
        (12, 7, 6) => "D6".into(),
        (12, 3, 3) => "A4".into(),
        (12, 3, 6) => "C6xC2".into(),
        (24, 9, 4) => "S4".into(),
        (10, 5, _) => "D5".into(),
        _ => format!("G{n}"),
    }
}

/// Splits polynomials with distinct rational roots into packets: two are in the same packet when
/// a fractional-linear map carries `roots ∪ {0, 1, ∞}` of one onto that of the other.
pub fn pgl2_packets(polys: &[NormalizedPoly]) -> Result<PacketReport> {
    let Some(first) = polys.first() else {
        return Ok(PacketReport {
            degree: 0,
            packets: Vec::new(),
            mass: "0".into(),
            expected_mass: "0".into(),
            mass_ok: true,
        });
    };
    let a = first.degree();
    if polys.iter().any(|p| p.degree() != a) {
        return Err(Error::Invalid("all polynomials must have the same degree".into()));
    }
    let keys: Vec<Vec<Point>> = polys.iter().map(sorted_roots).collect::<Result<_>>()?;
    let index: BTreeMap<&Vec<Point>, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let zero = Point::new(BigInt::zero(), BigInt::one());
    let one = Point::new(BigInt::one(), BigInt::one());
    let inf = Point::new(BigInt::one(), BigInt::zero());
    let mut assigned = vec![false; polys.len()];
    let mut packets = Vec::new();
    for i in 0..polys.len() {
        if assigned[i] {
            continue;
        }
        let mut pts = keys[i].clone();
        pts.extend([zero.clone(), one.clone(), inf.clone()]);
        let n = pts.len();
        let mut images: BTreeSet<Vec<Point>> = BTreeSet::new();
        let mut stabilizer: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if x == y || y == z || x == z {
                        continue;
                    }
                    let mapped: Vec<Point> = pts.iter().map(|t| cross_ratio(t, &pts[x], &pts[y], &pts[z])).collect();
                    let mut rest: Vec<Point> =
                        (0..n).filter(|&k| k != x && k != y && k != z).map(|k| mapped[k].clone()).collect();
                    rest.sort();
                    if rest == keys[i] {
                        let pos: BTreeMap<&Point, usize> = pts.iter().enumerate().map(|(k, p)| (p, k)).collect();
                        stabilizer.push(mapped.iter().map(|p| pos[p]).collect());
                    }
                    images.insert(rest);
                }
            }
        }
        let mut missing = 0;
        for img in &images {
            match index.get(img) {
                Some(&j) => assigned[j] = true,
                None => missing += 1,
            }
        }
        let orders: Vec<usize> = stabilizer.iter().map(|p| perm_order(p)).collect();
        packets.push(Packet {
            representative: polys[i].clone(),
            size: images.len(),
            stabilizer_order: stabilizer.len(),
            stabilizer: group_name(&orders),
            missing,
        });
    }
    let mass: BigRational = packets
        .iter()
        .map(|p| BigRational::new(BigInt::one(), BigInt::from(p.stabilizer_order)))
        .fold(BigRational::zero(), |acc, x| acc + x);
    let n = a + 3;
    let expected = BigRational::new(BigInt::from(polys.len()), BigInt::from(n * (n - 1) * (n - 2)));
    Ok(PacketReport {
        degree: a,
        mass_ok: mass == expected,
        mass: mass.to_string(),
        expected_mass: expected.to_string(),
        packets,
    })
}

/// The polynomial with roots the images of the roots of `s` under `t ↦ (t − x)(y − z)/((t − z)(y − x))`.
pub fn move_to_cusps(s: &NormalizedPoly, x: &BigRational, y: &BigRational, z: &BigRational) -> Result<NormalizedPoly> {
    let pts = sorted_roots(s)?;
    let (x, y, z) = (Point::finite(x), Point::finite(y), Point::finite(z));
    let imgs: Vec<Point> = pts.iter().filter(|p| **p != x && **p != y && **p != z).map(|t| cross_ratio(t, &x, &y, &z)).collect();
    from_roots(&imgs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin_product(roots: &[i64]) -> NormalizedPoly {
        let mut p = IntPoly::one();
        for &r in roots {
            p = &p * &IntPoly::from_i64(&[-r, 1]);
        }
        NormalizedPoly::new(p).unwrap()
    }

    #[test]
    fn four_point_set() {
        // {0, 1, 2, ∞} has cross ratio −1: stabilizer D4 of order 8
        let r = pgl2_packets(&[lin_product(&[2])]).unwrap();
        assert_eq!(r.packets.len(), 1);
        assert_eq!(r.packets[0].stabilizer_order, 8);
        assert_eq!(r.packets[0].stabilizer, "D4");
        assert_eq!(r.packets[0].size, 3);
        assert_eq!(r.packets[0].missing, 2);
    }

    #[test]
    fn stabilizer_matches_brute_force_count() {
        // brute force: count ordered triples whose map fixes the 4-point set
        let pts: Vec<Point> = [(0, 1), (1, 1), (2, 1), (1, 0)]
            .iter()
            .map(|&(a, b)| Point::new(BigInt::from(a), BigInt::from(b)))
            .collect();
        let set: BTreeSet<_> = pts.iter().cloned().collect();
        let mut count = 0;
        for x in 0..4 {
            for y in 0..4 {
                for z in 0..4 {
                    if x != y && y != z && x != z {
                        let img: BTreeSet<_> = pts.iter().map(|t| cross_ratio(t, &pts[x], &pts[y], &pts[z])).collect();
                        count += (img == set) as usize;
                    }
                }
            }
        }
        assert_eq!(count, 8);
    }

    #[test]
    fn consecutive_integers() {
        let r = pgl2_packets(&[lin_product(&[2, 3, 4, 5, 6, 7, 8, 9, 10])]).unwrap();
        assert_eq!(r.packets[0].stabilizer_order, 2);
        assert_eq!(r.packets[0].size, 660);
    }

    #[test]
    fn rejects_non_split() {
        assert!(pgl2_packets(&[NormalizedPoly::from_i64(&[-2, 0, 1]).unwrap()]).is_err());
    }

    #[test]
    fn cusp_move() {
        let s = lin_product(&[2, 3]);
        let q = |n: i64| BigRational::from_integer(BigInt::from(n));
        // sending (3, 1, 0)... root 2 lands on the cross ratio (2−3)(1−0)/((2−0)(1−3)) = 1/4
        let t = move_to_cusps(&s, &q(3), &q(1), &q(0)).unwrap();
        assert_eq!(t, NormalizedPoly::from_i64(&[-1, 4]).unwrap());
    }
}
