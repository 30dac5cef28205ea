//! Dense integer polynomials and the normalized representatives used throughout.

mod factor;
mod membership;
mod modp;
mod resultant;
mod s3;

pub use factor::{
    factor_small, factorization_partition, is_irreducible, poly_gcd, rational_roots,
    squarefree_part_poly, FACTOR_SMALL_MAX_DEGREE,
};
pub use membership::{check_membership, Condition, MembershipReport};
pub use resultant::{discriminant, resultant, resultant_subresultant};
pub use s3::{canonical_representative, s3_orbit, s3_transform, S3};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer polynomial, coefficients constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The linear polynomial `a·t + b`.
    pub fn linear(a: BigInt, b: BigInt) -> Self {
        Self::new(vec![b, a])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// `den^deg · f(num/den)`, an exact integer.
    pub fn eval_homogeneous(&self, num: &BigInt, den: &BigInt) -> BigInt {
        let d = self.deg();
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        // Horner on the reversed homogeneous form.
        let mut terms = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            terms.push(den_pow.clone());
            den_pow *= den;
        }
        let mut num_pow = BigInt::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += c * &num_pow * &terms[d - i];
            num_pow *= num;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        self.div_scalar(&g)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Exact division of every coefficient; panics in debug builds if inexact.
    pub fn div_scalar(&self, c: &BigInt) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|x| {
                    debug_assert!((x % c).is_zero());
                    x / c
                })
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = IntPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Pseudo-remainder: `lead(b)^(deg a - deg b + 1)·a mod b`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        assert!(!b.is_zero(), "pseudo-division by zero polynomial");
        let db = b.deg();
        if self.is_zero() || self.deg() < db {
            return self.clone();
        }
        let lb = b.lead();
        let mut r = self.coeffs.clone();
        let steps = self.deg() - db + 1;
        for _ in 0..steps {
            if r.len() <= db {
                // remaining multiplications by lead(b) keep the remainder exact
                for c in r.iter_mut() {
                    *c *= &lb;
                }
                continue;
            }
            let top = r.len() - 1;
            let lr = r[top].clone();
            let shift = top - db;
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[shift + i] -= &lr * bc;
            }
            debug_assert!(r[top].is_zero());
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        IntPoly::new(r)
    }

    /// Quotient if `b` divides `self` exactly in Z[t].
    pub fn div_exact(&self, b: &IntPoly) -> Option<IntPoly> {
        if b.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.deg() < b.deg() {
            return None;
        }
        let db = b.deg();
        let lb = b.lead();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.deg() - db + 1];
        for k in (0..q.len()).rev() {
            let top = k + db;
            let (qk, rem) = r[top].div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[k + i] -= &qk * bc;
            }
            q[k] = qk;
        }
        r.iter().all(|c| c.is_zero()).then(|| IntPoly::new(q))
    }

    /// `t^k · f(1/t)` for `k ≥ deg f`.
    pub fn reversed(&self, k: usize) -> IntPoly {
        let mut c = vec![BigInt::zero(); k + 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[k - i] = x.clone();
        }
        IntPoly::new(c)
    }

    /// `(c·t + d)^k · f((a·t + b)/(c·t + d))` with `k ≥ deg f`.
    pub fn mobius_substitute(&self, m: [&BigInt; 4], k: usize) -> IntPoly {
        let [a, b, c, d] = m;
        let num = IntPoly::linear(a.clone(), b.clone());
        let den = IntPoly::linear(c.clone(), d.clone());
        let mut num_pows = vec![IntPoly::one()];
        let mut den_pows = vec![IntPoly::one()];
        for i in 1..=k {
            num_pows.push(&num_pows[i - 1] * &num);
            den_pows.push(&den_pows[i - 1] * &den);
        }
        let mut acc = IntPoly::zero();
        for (i, coef) in self.coeffs.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let term = (&num_pows[i] * &den_pows[k - i]).scale(coef);
            acc = &acc + &term;
        }
        acc
    }

    /// Clears denominators of a rational coefficient list; returns the
    /// integer polynomial and the common denominator used.
    pub fn from_rational(coeffs: &[BigRational]) -> (IntPoly, BigInt) {
        let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        (IntPoly::new(ints), den)
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect()
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: &[BigInt]) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { "-" } else { "+" })?;
        }
        first = false;
        let show_mag = i == 0 || !mag.is_one();
        if show_mag {
            write!(f, "{mag}")?;
        }
        match i {
            0 => {}
            1 => write!(f, "t")?,
            _ => write!(f, "t^{i}")?,
        }
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs)
    }
}

/// Primitive integer polynomial with positive leading coefficient.
///
/// Ordered by degree, then lexicographically by coefficient vector
/// (constant term first); the minimum of an S₃-orbit is its canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalizedPoly(IntPoly);

impl NormalizedPoly {
    /// Normalizes a nonzero integer polynomial (divides content, fixes sign).
    pub fn new(p: IntPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(NormalizedPoly(p.primitive_part()))
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(IntPoly::from_i64(coeffs))
    }

    /// Wraps a polynomial already known to be normalized.
    pub fn from_normalized(p: IntPoly) -> Result<Self> {
        if p.is_zero() || !p.lead().is_positive() || !p.content().is_one() {
            return Err(Error::Invalid(format!("{p} is not normalized")));
        }
        Ok(NormalizedPoly(p))
    }

    pub fn poly(&self) -> &IntPoly {
        &self.0
    }

    pub fn into_poly(self) -> IntPoly {
        self.0
    }

    pub fn coeffs(&self) -> &[BigInt] {
        self.0.coeffs()
    }

    pub fn degree(&self) -> usize {
        self.0.deg()
    }

    /// `(s(0), s(1), s(∞))`, where `s(∞)` is the leading coefficient.
    pub fn special_values(&self) -> (BigInt, BigInt, BigInt) {
        let s0 = self.0.coeff(0);
        let s1 = self.0.coeffs().iter().sum();
        (s0, s1, self.0.lead())
    }

    pub fn discriminant(&self) -> BigInt {
        discriminant(&self.0)
    }

    /// The monic associate `s(t)/s(∞)`.
    pub fn to_monic(&self) -> MonicPoly {
        let lead = self.0.lead();
        MonicPoly {
            coeffs: self
                .0
                .coeffs()
                .iter()
                .map(|c| BigRational::new(c.clone(), lead.clone()))
                .collect(),
        }
    }

    /// Product of normalized polynomials is normalized (Gauss's lemma).
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a NormalizedPoly>) -> NormalizedPoly {
        let p = factors.into_iter().fold(IntPoly::one(), |acc, f| &acc * f.poly());
        NormalizedPoly(p)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs().iter().map(|c| c.to_string()).collect()
    }

    pub fn from_strings(coeffs: &[String]) -> Result<Self> {
        let parsed = coeffs
            .iter()
            .map(|s| {
                s.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Invalid(format!("bad coefficient '{s}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_normalized(IntPoly::new(parsed))
    }
}

impl Ord for NormalizedPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs().cmp(other.coeffs()))
    }
}

impl PartialOrd for NormalizedPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NormalizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for NormalizedPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NormalizedPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(deserializer)?;
        NormalizedPoly::from_strings(&v).map_err(serde::de::Error::custom)
    }
}

/// Monic polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonicPoly {
    coeffs: Vec<BigRational>,
}

impl MonicPoly {
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self> {
        match coeffs.last() {
            Some(c) if c.is_one() => Ok(MonicPoly { coeffs }),
            _ => Err(Error::Invalid("polynomial is not monic".into())),
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Whether every denominator lies in P*.
    pub fn has_p_integral_coefficients(&self, primes: &crate::exact::PrimeSet) -> bool {
        self.coeffs.iter().all(|c| primes.is_smooth(c.denom()))
    }

    pub fn to_normalized(&self) -> NormalizedPoly {
        normalize(&self.coeffs).expect("monic polynomials are nonzero").0
    }
}

/// The unique normalized polynomial proportional to `coeffs`, and the scalar
/// with `coeffs = scalar · normalized`.
pub fn normalize(coeffs: &[BigRational]) -> Result<(NormalizedPoly, BigRational)> {
    let (ints, den) = IntPoly::from_rational(coeffs);
    if ints.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut g = ints.content();
    if ints.lead().is_negative() {
        g = -g;
    }
    let normalized = ints.div_scalar(&g);
    Ok((NormalizedPoly(normalized), BigRational::new(g, den)))
}

/// `(s(0), s(1), s(∞))`.
pub fn special_values(s: &NormalizedPoly) -> (BigInt, BigInt, BigInt) {
    s.special_values()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn normalize_examples() {
        let (p, c) = normalize(&[q(4, 1), q(-2, 1)]).unwrap();
        assert_eq!(p, NormalizedPoly::from_i64(&[-2, 1]).unwrap());
        assert_eq!(c, q(-2, 1));

        let (p, c) = normalize(&[q(-2187, 3125), q(-810, 3125), q(1, 1)]).unwrap();
        assert_eq!(p.coeffs(), IntPoly::from_i64(&[-2187, -810, 3125]).coeffs());
        assert_eq!(c, q(1, 3125));

        let (p, c) = normalize(&[q(0, 1), q(-6, 1), q(6, 1)]).unwrap();
        assert_eq!(p.coeffs(), IntPoly::from_i64(&[0, -1, 1]).coeffs());
        assert_eq!(c, q(6, 1));

        assert!(matches!(normalize(&[q(0, 1)]), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn normalize_is_idempotent_and_scale_invariant() {
        let base = [q(3, 2), q(-5, 7), q(9, 4)];
        let (p, _) = normalize(&base).unwrap();
        let (again, c) = normalize(&p.poly().to_rational()).unwrap();
        assert_eq!(p, again);
        assert!(c.is_one());
        for k in [q(-3, 1), q(7, 11), q(-1, 1000)] {
            let scaled: Vec<_> = base.iter().map(|x| x * &k).collect();
            assert_eq!(normalize(&scaled).unwrap().0, p);
        }
    }

    #[test]
    fn special_values_examples() {
        let v = |c: &[i64]| {
            let (a, b, c) = NormalizedPoly::from_i64(c).unwrap().special_values();
            (a, b, c)
        };
        let b = BigInt::from;
        assert_eq!(v(&[2, -2, 1]), (b(2), b(1), b(1)));
        assert_eq!(v(&[-2, 1]), (b(-2), b(-1), b(1)));
        assert_eq!(v(&[1, 6, 1]), (b(1), b(8), b(1)));
    }

    #[test]
    fn display_format() {
        let p = NormalizedPoly::from_i64(&[-2187, -810, 3125]).unwrap();
        assert_eq!(p.to_string(), "3125t^2-810t-2187");
        assert_eq!(NormalizedPoly::from_i64(&[1, -1, 1]).unwrap().to_string(), "t^2-t+1");
    }

    #[test]
    fn exact_division_and_pseudo_remainder() {
        let a = IntPoly::from_i64(&[-9, 0, 1]);
        let b = IntPoly::from_i64(&[3, 1]);
        assert_eq!(a.div_exact(&b), Some(IntPoly::from_i64(&[-3, 1])));
        assert_eq!(a.div_exact(&IntPoly::from_i64(&[1, 2])), None);
        let r = IntPoly::from_i64(&[1, 0, 0, 1]).pseudo_rem(&IntPoly::from_i64(&[1, 2]));
        // 8·(t^3+1) mod (2t+1) = 8·(1 - 1/8) = 7
        assert_eq!(r, IntPoly::from_i64(&[7]));
    }

    #[test]
    fn mobius_substitution_matches_direct_forms() {
        let s = IntPoly::from_i64(&[-2, 1]);
        let one = BigInt::one();
        let zero = BigInt::zero();
        let m1 = BigInt::from(-1);
        // s(1 - t)
        assert_eq!(s.mobius_substitute([&m1, &one, &zero, &one], 1), IntPoly::from_i64(&[-1, -1]));
        // t·s(1/t)
        assert_eq!(s.mobius_substitute([&zero, &one, &one, &zero], 1), s.reversed(1));
    }
}
