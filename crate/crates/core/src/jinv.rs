//! j-invariants of cubics, the reference cubic S(j,t) and the resolvent F(j,k,y).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{rational_roots, IntPoly};

/// A point of P¹(Q).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjPoint {
    Finite(BigRational),
    Infinity,
}

impl ProjPoint {
    /// Homogeneous coordinates `(num, den)` with `den ≥ 0`.
    pub fn homogeneous(&self) -> (BigInt, BigInt) {
        match self {
            ProjPoint::Finite(q) => (q.numer().clone(), q.denom().clone()),
            ProjPoint::Infinity => (BigInt::one(), BigInt::zero()),
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(q) => write!(f, "{q}"),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

type RatPoly = Vec<BigRational>;

fn rp(coeffs: &[&BigRational]) -> RatPoly {
    coeffs.iter().map(|&c| c.clone()).collect()
}

fn rp_mul(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn rp_sub_scaled(a: &[BigRational], ka: &BigRational, b: &[BigRational], kb: &BigRational) -> RatPoly {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) * ka - b.get(i).unwrap_or(&zero) * kb)
        .collect()
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Coefficients in `y` (constant first, padded to length 7) of
/// `k(j²y³ − 2jy³ + 3jy² − 3jy + 1)² − j(jy² − 2y + 1)³`.
pub fn resolvent(j: &BigRational, k: &BigRational) -> Vec<BigRational> {
    let c3 = j * j - j * int(2);
    let c2 = j * int(3);
    let c1 = -(j * int(3));
    let one = BigRational::one();
    let p1 = rp(&[&one, &c1, &c2, &c3]);
    let p2 = rp(&[&one, &int(-2), j]);
    let p1sq = rp_mul(&p1, &p1);
    let p2cube = rp_mul(&rp_mul(&p2, &p2), &p2);
    let mut f = rp_sub_scaled(&p1sq, k, &p2cube, j);
    f.resize(7, BigRational::zero());
    f
}

/// Roots of `F(j,k,y)` in Q ∪ {∞} with multiplicities; ∞ has multiplicity `6 − deg F`.
pub fn roots_of_f(j: &BigRational, k: &BigRational) -> Result<Vec<(ProjPoint, usize)>> {
    let coeffs = resolvent(j, k);
    let (poly, _) = IntPoly::from_rational(&coeffs);
    if poly.is_zero() {
        return Err(Error::Invalid(format!("F({j},{k},y) vanishes identically")));
    }
    let mut out: Vec<(ProjPoint, usize)> = rational_roots(&poly)
        .into_iter()
        .map(|(r, m)| (ProjPoint::Finite(r), m))
        .collect();
    let at_infinity = 6 - poly.deg();
    if at_infinity > 0 {
        out.push((ProjPoint::Infinity, at_infinity));
    }
    Ok(out)
}

/// Whether `F(j,k,y)` has a root in Q ∪ {∞}.
pub fn related(j: &BigRational, k: &BigRational) -> Result<bool> {
    Ok(!roots_of_f(j, k)?.is_empty())
}

/// `4(j − 1)t³ − 27jt − 27j` with denominators cleared.
pub fn reference_cubic(j: &BigRational) -> IntPoly {
    let c = [-(j * int(27)), -(j * int(27)), BigRational::zero(), (j - int(1)) * int(4)];
    IntPoly::from_rational(&c).0
}

/// `4(b² − 3c)³ / (27Δ)` for the monic associate `t³ + bt² + ct + d`; `None` if inseparable.
pub fn cubic_j_invariant(s: &IntPoly) -> Option<BigRational> {
    if s.deg() != 3 {
        return None;
    }
    let a = BigRational::from_integer(s.lead());
    let [d, c, b] = [0, 1, 2].map(|i| BigRational::from_integer(s.coeff(i)) / &a);
    let delta = -(&b * &b * &b * &d) * int(4) + &b * &b * &c * &c + &b * &c * &d * int(18)
        - &c * &c * &c * int(4)
        - &d * &d * int(27);
    if delta.is_zero() {
        return None;
    }
    let x = &b * &b - &c * int(3);
    Some(&x * &x * &x * int(4) / (delta * int(27)))
}

/// The cubic indexed by `(m, n)` for the invariant `j`, in homogeneous form.
///
/// With `m = m1/m2`, `n = n1/n2` this is
/// `(j−1)(t(n1m2 − m1n2) − n1m2)³ + (j−1)j·m1³n1³ − j(m1n1 − m1n2·t + n1m2·t − n1m2)³`,
/// a nonzero multiple of the monic cubic; `None` when `m = n`.
pub fn indexed_cubic(j: &BigRational, m: &ProjPoint, n: &ProjPoint) -> Option<IntPoly> {
    if m == n {
        return None;
    }
    let (m1, m2) = m.homogeneous();
    let (n1, n2) = n.homogeneous();
    let q = |x: BigInt| BigRational::from_integer(x);
    let jm1 = j - int(1);
    let u = q(&n1 * &m2 - &m1 * &n2);
    let w = q(&n1 * &m2);
    // first: (j−1)(u·t − w)³
    let lin1 = vec![-w.clone(), u.clone()];
    let cube1 = rp_mul(&rp_mul(&lin1, &lin1), &lin1);
    // third: j·(m1n1 − w + u·t)³
    let c0 = q(&m1 * &n1) - &w;
    let lin3 = vec![c0, u];
    let cube3 = rp_mul(&rp_mul(&lin3, &lin3), &lin3);
    let mut out = rp_sub_scaled(&cube1, &jm1, &cube3, j);
    let m1n1 = q(&m1 * &n1);
    out[0] += &jm1 * j * &m1n1 * &m1n1 * &m1n1;
    let (p, _) = IntPoly::from_rational(&out);
    (p.deg() == 3).then_some(p)
}
