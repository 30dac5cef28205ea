//! Exact integer primitives: prime sets, factorization over a prime set,
//! square-free parts and enumeration of smooth numbers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite set of primes, stored strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PrimeSet {
    primes: Vec<u64>,
}

impl PrimeSet {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut primes: Vec<u64> = primes.into_iter().collect();
        primes.sort_unstable();
        for w in primes.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidPrimes(format!("duplicate prime {}", w[0])));
            }
        }
        if let Some(&p) = primes.iter().find(|&&p| !is_prime_u64(p)) {
            return Err(Error::InvalidPrimes(format!("{p} is not prime")));
        }
        Ok(PrimeSet { primes })
    }

    pub fn empty() -> Self {
        PrimeSet { primes: Vec::new() }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    pub fn is_subset_of(&self, other: &PrimeSet) -> bool {
        self.primes.iter().all(|&p| other.contains(p))
    }

    /// Smallest prime not in the set.
    pub fn first_good_prime(&self) -> u64 {
        (2..)
            .filter(|&n| is_prime_u64(n))
            .find(|&p| !self.contains(p))
            .expect("infinitely many primes")
    }

    /// Positive part of `n` coprime to every prime of the set.
    pub fn rough_part_u64(&self, mut n: u64) -> u64 {
        debug_assert!(n != 0);
        for &p in &self.primes {
            if p == 2 {
                n >>= n.trailing_zeros();
            } else {
                while n.is_multiple_of(p) {
                    n /= p;
                }
            }
        }
        n
    }

    /// Splits `n > 0` as (smooth part, rough part).
    pub fn split_u64(&self, n: u64) -> (u64, u64) {
        let rough = self.rough_part_u64(n);
        (n / rough, rough)
    }

    pub fn is_smooth_u64(&self, n: u64) -> bool {
        n != 0 && self.rough_part_u64(n) == 1
    }

    pub fn is_smooth(&self, n: &BigInt) -> bool {
        factor_over(n, self).map(|f| f.is_unit()).unwrap_or(false)
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.primes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for PrimeSet {
    type Err = Error;

    /// Parses a comma separated list such as `2,3,5`; braces are tolerated.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('{').trim_end_matches('}');
        if trimmed.trim().is_empty() {
            return Ok(PrimeSet::empty());
        }
        let primes = trimmed
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidPrimes(format!("cannot parse '{t}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        PrimeSet::new(primes)
    }
}

impl TryFrom<Vec<u64>> for PrimeSet {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        PrimeSet::new(v)
    }
}

impl From<PrimeSet> for Vec<u64> {
    fn from(p: PrimeSet) -> Vec<u64> {
        p.primes
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `n = sign · ∏ p^e · rough`, with `rough` coprime to the prime set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothFactorization {
    pub sign: i8,
    pub exponents: BTreeMap<u64, u32>,
    pub rough: BigUint,
}

impl SmoothFactorization {
    /// Membership in P*.
    pub fn is_unit(&self) -> bool {
        self.rough.is_one()
    }

    pub fn smooth_part(&self) -> BigUint {
        self.exponents
            .iter()
            .fold(BigUint::one(), |acc, (&p, &e)| acc * BigUint::from(p).pow(e))
    }

    pub fn value(&self) -> BigInt {
        let mag = self.smooth_part() * &self.rough;
        if self.sign < 0 {
            -BigInt::from(mag)
        } else {
            BigInt::from(mag)
        }
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.exponents.get(&p).copied().unwrap_or(0)
    }
}

impl fmt::Display for SmoothFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        let mut parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        if !self.rough.is_one() {
            parts.push(format!("[{}]", self.rough));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl Serialize for SmoothFactorization {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Divides out the primes of `primes` from `n`; the rough part is left unfactored.
pub fn factor_over(n: &BigInt, primes: &PrimeSet) -> Result<SmoothFactorization> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let sign = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut m = n.magnitude().clone();
    let mut exponents = BTreeMap::new();
    for &p in primes.primes() {
        let e = if p == 2 {
            let tz = m.trailing_zeros().unwrap_or(0);
            m >>= tz;
            tz as u32
        } else {
            let pb = BigUint::from(p);
            let mut e = 0u32;
            loop {
                let (q, r) = m.div_rem(&pb);
                if !r.is_zero() {
                    break;
                }
                m = q;
                e += 1;
            }
            e
        };
        if e > 0 {
            exponents.insert(p, e);
        }
    }
    Ok(SmoothFactorization { sign, exponents, rough: m })
}

/// Whether the nonzero rational `q` is a unit of the ring of P-integers.
pub fn is_unit_in(q: &BigRational, primes: &PrimeSet) -> Result<bool> {
    if q.is_zero() {
        return Err(Error::Zero);
    }
    Ok(factor_over(q.numer(), primes)?.is_unit() && factor_over(q.denom(), primes)?.is_unit())
}

/// The unique square-free `d` with `n = d·y²`; the sign of `n` is kept in `d`.
///
/// Uses trial division up to the cube root of the remaining cofactor, after which
/// the cofactor has at most two prime factors.
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let negative = n.is_negative();
    let mag = n.magnitude();
    let d = match mag.to_u128() {
        Some(m) => BigUint::from(squarefree_part_u128(m)),
        None => squarefree_part_big(mag.clone()),
    };
    Ok(if negative { -BigInt::from(d) } else { BigInt::from(d) })
}

pub fn squarefree_part_u128(mut m: u128) -> u128 {
    assert!(m != 0);
    let mut out: u128 = 1;
    let tz = m.trailing_zeros();
    m >>= tz;
    if tz % 2 == 1 {
        out *= 2;
    }
    let mut d: u128 = 3;
    while d * d * d <= m {
        if m.is_multiple_of(d) {
            let mut e = 0;
            while m.is_multiple_of(d) {
                m /= d;
                e += 1;
            }
            if e % 2 == 1 {
                out *= d;
            }
        }
        d += 2;
    }
    if m > 1 {
        let r = m.sqrt();
        if r * r != m {
            out *= m;
        }
    }
    out
}

fn squarefree_part_big(mut m: BigUint) -> BigUint {
    let mut out = BigUint::one();
    let tz = m.trailing_zeros().unwrap_or(0);
    m >>= tz;
    if tz % 2 == 1 {
        out *= 2u32;
    }
    let mut d: u64 = 3;
    loop {
        if m.to_u128().is_some() {
            return out * BigUint::from(squarefree_part_u128(m.to_u128().unwrap()));
        }
        let db = BigUint::from(d);
        if &db * &db * &db > m {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&db);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e % 2 == 1 {
            out *= d;
        }
        d += 2;
    }
    if !m.is_one() {
        let r = m.sqrt();
        if &r * &r != m {
            out *= m;
        }
    }
    out
}

/// Finds `(a, x)` with `n = a·x^k`, `a ∈ P*` and `x > 0` (`k` is 2 or 3).
///
/// `a` keeps the sign of `n` and only exponents below `k`, so it is the
/// canonical k-th-power-free representative.
pub fn decompose_power(n: &BigInt, k: u32, primes: &PrimeSet) -> Option<(BigInt, BigInt)> {
    assert!(k == 2 || k == 3, "decompose_power supports k = 2 or 3");
    let f = factor_over(n, primes).ok()?;
    let root = if k == 2 { f.rough.sqrt() } else { f.rough.cbrt() };
    if root.pow(k) != f.rough {
        return None;
    }
    let mut a = BigInt::from(f.sign);
    let mut x = BigInt::from(root);
    for (&p, &e) in &f.exponents {
        a *= BigInt::from(p).pow(e % k);
        x *= BigInt::from(p).pow(e / k);
    }
    Some((a, x))
}

/// Positive members of P* up to `bound`, ascending.
///
/// Depth-first over exponent vectors; the count of smooth numbers is tiny
/// compared to `bound`, so this stays cheap for bounds far beyond sieving range.
pub fn smooth_numbers_up_to(primes: &PrimeSet, bound: u64) -> Vec<u64> {
    fn walk(ps: &[u64], acc: u64, bound: u64, out: &mut Vec<u64>) {
        match ps.split_first() {
            None => out.push(acc),
            Some((&p, rest)) => {
                let mut v = acc;
                loop {
                    walk(rest, v, bound, out);
                    match v.checked_mul(p) {
                        Some(next) if next <= bound => v = next,
                        _ => break,
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    if bound >= 1 {
        walk(primes.primes(), 1, bound, &mut out);
    }
    out.sort_unstable();
    out
}

/// Cube-free positive members of P* (each exponent below 3).
pub fn cube_free_smooth(primes: &PrimeSet) -> Vec<u64> {
    let mut out = vec![1u64];
    for &p in primes.primes() {
        let mut next = Vec::with_capacity(out.len() * 3);
        for &a in &out {
            next.push(a);
            next.push(a * p);
            next.push(a * p * p);
        }
        out = next;
    }
    out.sort_unstable();
    out
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `Some(r)` if `n = r²`.
pub fn exact_sqrt_u64(n: u64) -> Option<u64> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}
