//! Large-degree families: cyclotomic products, pullbacks along three-point covers, and the
//! displayed extremal polynomials.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::budget::Budget;
use crate::data::named;
use crate::error::{Error, Result};
use crate::exact::{is_unit_in, smooth_numbers_up_to, PrimeSet};
use crate::poly::{
    check_membership, factorization_partition, poly_gcd, resultant, squarefree_part_poly, IntPoly,
    MembershipReport, NormalizedPoly,
};

#[derive(Clone, Debug, Serialize)]
pub struct SeriesCoefficients {
    pub primes: PrimeSet,
    pub kmax: usize,
    /// `coefficients[k]` counts products of distinct cyclotomic polynomials of total degree `k`.
    #[serde(serialize_with = "ser_biguints")]
    pub coefficients: Vec<BigUint>,
}

fn ser_biguints<S: serde::Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

fn euler_phi(n: u64, primes: &PrimeSet) -> u64 {
    primes
        .primes()
        .iter()
        .filter(|&&p| n.is_multiple_of(p))
        .fold(n, |acc, &p| acc / p * (p - 1))
}

/// The indices `i > 1` of cyclotomic polynomials `Φ_i` with bad reduction in `primes` and
/// `φ(i) ≤ kmax`, with their degrees.
pub fn cyclotomic_indices(primes: &PrimeSet, kmax: usize) -> Vec<(u64, usize)> {
    // φ(i) ≥ i·∏(1 − 1/p)
    let bound = primes
        .primes()
        .iter()
        .fold(kmax as u64, |acc, &p| acc.saturating_mul(p) / (p - 1) + 1);
    smooth_numbers_up_to(primes, bound)
        .into_iter()
        .filter(|&i| i > 1)
        .map(|i| (i, euler_phi(i, primes) as usize))
        .filter(|&(_, d)| d <= kmax)
        .collect()
}

/// Coefficients of `∏ (1 + x^{φ(i)})` through `x^kmax`, the product over P-smooth `i > 1`.
pub fn cyclo_series(primes: &PrimeSet, kmax: usize) -> SeriesCoefficients {
    let mut c = vec![BigUint::zero(); kmax + 1];
    c[0] = BigUint::one();
    for (_, d) in cyclotomic_indices(primes, kmax) {
        for k in (d..=kmax).rev() {
            let add = c[k - d].clone();
            c[k] += add;
        }
    }
    SeriesCoefficients { primes: primes.clone(), kmax, coefficients: c }
}

/// The cyclotomic polynomial `Φ_n`.
pub fn cyclotomic(n: u64) -> IntPoly {
    let mut p = IntPoly::new(
        std::iter::once(-BigInt::one())
            .chain(std::iter::repeat_n(BigInt::zero(), n as usize - 1))
            .chain(std::iter::once(BigInt::one()))
            .collect(),
    );
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = p.div_exact(&cyclotomic(d)).expect("Φ_d divides tⁿ − 1");
        }
    }
    p
}

/// `F(t) = u·f(t)/g(t)`.
#[derive(Clone, Debug, Serialize)]
pub struct RationalCover {
    pub name: String,
    #[serde(serialize_with = "ser_rational")]
    pub u: BigRational,
    #[serde(serialize_with = "ser_poly")]
    pub f: IntPoly,
    #[serde(serialize_with = "ser_poly")]
    pub g: IntPoly,
}

fn ser_rational<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(q)
}

fn ser_poly<S: serde::Serializer>(p: &IntPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.coeffs().iter().map(|c| c.to_string()))
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Value {
    Zero,
    One,
    Infinity,
    Other,
}

impl RationalCover {
    pub fn new(name: impl Into<String>, u: BigRational, f: IntPoly, g: IntPoly) -> Result<Self> {
        if u.is_zero() || f.is_zero() || g.is_zero() {
            return Err(Error::Invalid("cover has a zero component".into()));
        }
        Ok(RationalCover { name: name.into(), u, f, g })
    }

    pub fn identity() -> Self {
        Self::new("identity", q(1), IntPoly::from_i64(&[0, 1]), IntPoly::one()).unwrap()
    }

    /// `1 − t`.
    pub fn one_minus() -> Self {
        Self::new("one-minus", q(1), IntPoly::from_i64(&[1, -1]), IntPoly::one()).unwrap()
    }

    /// `1/t`.
    pub fn reciprocal() -> Self {
        Self::new("reciprocal", q(1), IntPoly::one(), IntPoly::from_i64(&[0, 1])).unwrap()
    }

    /// `t^n`.
    pub fn power(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("power cover needs a positive exponent".into()));
        }
        let mut c = vec![0i64; n + 1];
        c[n] = 1;
        Self::new(format!("power-{n}"), q(1), IntPoly::from_i64(&c), IntPoly::one())
    }

    /// `t^m/(m·t + 1 − m)`.
    pub fn trinomial(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::Invalid("trinomial cover needs m ≥ 2".into()));
        }
        let mut c = vec![0i64; m + 1];
        c[m] = 1;
        let m = m as i64;
        Self::new(format!("trinomial-{m}"), q(1), IntPoly::from_i64(&c), IntPoly::from_i64(&[1 - m, m]))
    }

    /// `−(t − 1)²(t + 1)²/(4t²)`.
    pub fn quartic() -> Self {
        Self::new(
            "quartic",
            BigRational::new(BigInt::from(-1), BigInt::from(4)),
            IntPoly::from_i64(&[1, 0, -2, 0, 1]),
            IntPoly::from_i64(&[0, 0, 1]),
        )
        .unwrap()
    }

    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "identity" => Ok(Self::identity()),
            "one-minus" => Ok(Self::one_minus()),
            "reciprocal" => Ok(Self::reciprocal()),
            "quartic" => Ok(Self::quartic()),
            _ => {
                if let Some(n) = name.strip_prefix("power-") {
                    Self::power(n.parse().map_err(|_| Error::Invalid(format!("bad cover '{name}'")))?)
                } else if let Some(m) = name.strip_prefix("trinomial-") {
                    Self::trinomial(m.parse().map_err(|_| Error::Invalid(format!("bad cover '{name}'")))?)
                } else {
                    Err(Error::Invalid(format!("unknown cover '{name}'")))
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.f.deg().max(self.g.deg())
    }

    /// `(U·f, V·g)` for `u = U/V`, so `F = a/b` with integer polynomials.
    fn scaled(&self) -> (IntPoly, IntPoly) {
        (self.f.scale(self.u.numer()), self.g.scale(self.u.denom()))
    }

    fn value_at(&self, t: Option<&BigRational>) -> Value {
        let (a, b) = self.scaled();
        let (na, nb) = match t {
            Some(t) => (a.eval_rational(t), b.eval_rational(t)),
            None => {
                let d = self.degree();
                (
                    BigRational::from_integer(if a.deg() == d { a.lead() } else { BigInt::zero() }),
                    BigRational::from_integer(if b.deg() == d { b.lead() } else { BigInt::zero() }),
                )
            }
        };
        if nb.is_zero() {
            Value::Infinity
        } else if na.is_zero() {
            Value::Zero
        } else if na == nb {
            Value::One
        } else {
            Value::Other
        }
    }

    /// Checks `F({0,1,∞}) ⊆ {0,1,∞}`, that every finite critical point lies over `{0,1,∞}`,
    /// and that the branch data has bad reduction within `primes`.
    pub fn validate(&self, primes: &PrimeSet) -> Result<()> {
        let (a, b) = self.scaled();
        if poly_gcd(&a, &b).deg() > 0 {
            return Err(Error::Verification(format!("{}: f and g share a factor", self.name)));
        }
        for (label, t) in [("0", Some(q(0))), ("1", Some(q(1))), ("∞", None)] {
            if self.value_at(t.as_ref()) == Value::Other {
                return Err(Error::Verification(format!("{}: F({label}) is not in {{0, 1, ∞}}", self.name)));
            }
        }
        let w = &(&a.derivative() * &b) - &(&a * &b.derivative());
        let over = &(&a * &b) * &(&a - &b);
        if !w.is_zero() && w.deg() > 0 {
            let rad = squarefree_part_poly(&w);
            if poly_gcd(&over, &rad).deg() < rad.deg() {
                return Err(Error::Verification(format!("{}: a critical value lies outside {{0, 1, ∞}}", self.name)));
            }
        }
        if !is_unit_in(&self.u, primes)? {
            return Err(Error::Verification(format!("{}: scalar u is not a unit", self.name)));
        }
        let res = resultant(&self.f, &self.g);
        if res.is_zero() || !primes.is_smooth(&res) {
            return Err(Error::Verification(format!("{}: f and g are not compatible", self.name)));
        }
        let branch = squarefree_part_poly(&over);
        if branch.deg() > 0 {
            let nb = NormalizedPoly::new(branch)?;
            if !primes.is_smooth(&nb.discriminant()) || !primes.is_smooth(&nb.poly().lead()) {
                return Err(Error::Verification(format!("{}: bad reduction outside the prime set", self.name)));
            }
        }
        Ok(())
    }

    /// `s(F(t))·g(t)^k` up to a scalar, normalized. No membership check.
    pub fn compose(&self, s: &NormalizedPoly) -> Result<NormalizedPoly> {
        let (a, b) = self.scaled();
        let k = s.degree();
        let c = s.coeffs();
        // homogeneous Horner: Σ cᵢ aⁱ b^{k−i}
        let mut r = IntPoly::constant(c[k].clone());
        let mut bpow = IntPoly::one();
        for i in (0..k).rev() {
            bpow = &bpow * &b;
            r = &(&r * &a) + &bpow.scale(&c[i]);
        }
        NormalizedPoly::new(r)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Pullback {
    pub poly: NormalizedPoly,
    pub report: MembershipReport,
}

/// Pulls `s` back along `cover`; the result must again be a member of degree `m·k`.
pub fn pullback(cover: &RationalCover, s: &NormalizedPoly, primes: &PrimeSet) -> Result<Pullback> {
    cover.validate(primes)?;
    let input = check_membership(s, primes);
    if !input.ok {
        return Err(Error::Invalid(format!("{s} is not a member: {:?}", input.failures)));
    }
    let poly = cover.compose(s)?;
    let want = cover.degree() * s.degree();
    if poly.degree() != want {
        return Err(Error::Verification(format!("pullback has degree {} instead of {want}", poly.degree())));
    }
    let report = check_membership(&poly, primes);
    if !report.ok {
        return Err(Error::Verification(format!("pullback of {s} along {} fails {:?}", cover.name, report.failures)));
    }
    Ok(Pullback { poly, report })
}

/// `s_{1,j}` for `j ∈ {−1, 0, 1}`: roots `−1 ± √2`, `±i`, `1 ± √2`.
pub fn fractal_seed(j: i32) -> Result<NormalizedPoly> {
    match j {
        -1 => NormalizedPoly::from_i64(&[-1, 2, 1]),
        0 => NormalizedPoly::from_i64(&[1, 0, 1]),
        1 => NormalizedPoly::from_i64(&[-1, -2, 1]),
        _ => Err(Error::Invalid(format!("fractal index j = {j} not in {{-1, 0, 1}}"))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FractalMember {
    pub i: u32,
    pub j: i32,
    pub poly: NormalizedPoly,
    /// `None` when the discriminant check was skipped.
    pub report: Option<MembershipReport>,
    /// `s(0), s(1), s(∞)` are 2-units.
    pub special_values_ok: bool,
}

pub const FRACTAL_DEFAULT_MAX_LEVEL: u32 = 4;

fn fractal_degree(i: u32) -> u64 {
    1u64 << (2 * i - 1)
}

/// `s_{i,j}` for `1 ≤ i ≤ i_max`, obtained by iterated pullback along the quartic cover.
/// With `check_disc` off only the special values are verified.
pub fn fractal_family(i_max: u32, check_disc: bool, budget: &Budget) -> Result<Vec<FractalMember>> {
    if i_max == 0 || i_max > 16 {
        return Err(Error::Invalid(format!("fractal level {i_max} outside 1..=16")));
    }
    let deg = fractal_degree(i_max);
    let estimate = if check_disc { 3 * deg.saturating_pow(4) } else { 3 * deg.saturating_pow(2) };
    budget.check_work(estimate, "fractal family")?;
    let p2 = PrimeSet::new([2])?;
    let cover = RationalCover::quartic();
    cover.validate(&p2)?;
    let mut out = Vec::new();
    for j in [-1, 0, 1] {
        let mut s = fractal_seed(j)?;
        for i in 1..=i_max {
            if i > 1 {
                budget.check_time("fractal family")?;
                s = cover.compose(&s)?;
            }
            if s.degree() as u64 != fractal_degree(i) {
                return Err(Error::Verification(format!("s_{{{i},{j}}} has degree {}", s.degree())));
            }
            let (v0, v1, vinf) = s.special_values();
            let special_values_ok = [v0, v1, vinf].iter().all(|v| !v.is_zero() && p2.is_smooth(v));
            let report = check_disc.then(|| check_membership(&s, &p2));
            if !special_values_ok || report.as_ref().is_some_and(|r| !r.ok) {
                return Err(Error::Verification(format!("s_{{{i},{j}}} is not a member")));
            }
            out.push(FractalMember { i, j, poly: s.clone(), report, special_values_ok });
        }
    }
    out.sort_by_key(|m| (m.i, m.j));
    Ok(out)
}

/// All products `s_{1,j₁}⋯s_{w,j_w}` built from `family`, each checked for membership.
pub fn fractal_products(family: &[FractalMember], w: u32) -> Result<Vec<NormalizedPoly>> {
    let p2 = PrimeSet::new([2])?;
    let mut partial = vec![NormalizedPoly::from_i64(&[1])?];
    for i in 1..=w {
        let level: Vec<&FractalMember> = family.iter().filter(|m| m.i == i).collect();
        if level.len() != 3 {
            return Err(Error::Invalid(format!("fractal level {i} missing from family")));
        }
        partial = partial
            .iter()
            .flat_map(|p| level.iter().map(move |m| NormalizedPoly::product([p, &m.poly])))
            .collect();
    }
    let distinct: BTreeSet<NormalizedPoly> = partial.into_iter().collect();
    for s in &distinct {
        let r = check_membership(s, &p2);
        if !r.ok {
            return Err(Error::Verification(format!("product of degree {} fails {:?}", s.degree(), r.failures)));
        }
    }
    Ok(distinct.into_iter().collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedReport {
    pub name: String,
    pub poly: NormalizedPoly,
    pub report: MembershipReport,
    pub partition: Vec<usize>,
    pub expected_partition: Vec<usize>,
    #[serde(serialize_with = "ser_opt_bigint")]
    pub expected_disc: Option<BigInt>,
    pub disc_matches: Option<bool>,
    pub pass: bool,
}

fn ser_opt_bigint<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

/// Rebuilds a registered polynomial and checks membership, factorization pattern and discriminant.
pub fn verify_named(name: &str) -> Result<NamedReport> {
    let entry = named(name)?;
    let primes = entry.primes();
    let poly = entry.product()?;
    let report = check_membership(&poly, &primes);
    let mut partition: Vec<usize> = Vec::new();
    for f in entry.factor_polys()? {
        partition.extend(factorization_partition(&f)?);
    }
    partition.sort_unstable_by(|a, b| b.cmp(a));
    let mut expected_partition: Vec<usize> = entry.factors.iter().map(|f| f.len() - 1).collect();
    expected_partition.sort_unstable_by(|a, b| b.cmp(a));
    let expected_disc = entry.expected_disc();
    let disc_matches = expected_disc.as_ref().map(|d| *d == report.disc_value);
    let pass = report.ok && partition == expected_partition && disc_matches != Some(false);
    Ok(NamedReport {
        name: name.to_string(),
        poly,
        report,
        partition,
        expected_partition,
        expected_disc,
        disc_matches,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::s3_transform;
    use crate::poly::S3;

    fn ps(p: &[u64]) -> PrimeSet {
        PrimeSet::new(p.iter().copied()).unwrap()
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn series_small() {
        let s = cyclo_series(&ps(&[2]), 50);
        assert!(s.coefficients.iter().all(|c| c.is_one()));
        let s = cyclo_series(&ps(&[2, 3, 5]), 4);
        let want: Vec<BigUint> = [1u32, 1, 3, 3, 7].iter().map(|&c| BigUint::from(c)).collect();
        assert_eq!(s.coefficients, want);
    }

    #[test]
    fn series_matches_membership_count() {
        // count products of distinct Φ_i, i ≤ 200, passing membership directly
        let p = ps(&[2, 3]);
        let kmax = 6;
        let cands: Vec<NormalizedPoly> = (2..200u64)
            .map(|n| NormalizedPoly::new(cyclotomic(n)).unwrap())
            .filter(|c| c.degree() <= kmax)
            .collect();
        let mut counts = vec![0u64; kmax + 1];
        for mask in 0u64..(1 << cands.len()) {
            let chosen: Vec<&NormalizedPoly> = (0..cands.len()).filter(|&i| mask >> i & 1 == 1).map(|i| &cands[i]).collect();
            let d: usize = chosen.iter().map(|c| c.degree()).sum();
            if d > kmax {
                continue;
            }
            let prod = NormalizedPoly::product(chosen);
            if d == 0 || check_membership(&prod, &p).ok {
                counts[d] += 1;
            }
        }
        let s = cyclo_series(&p, kmax);
        let got: Vec<u64> = s.coefficients.iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(got, counts);
    }

    #[test]
    fn covers_validate() {
        let p2 = ps(&[2]);
        RationalCover::identity().validate(&PrimeSet::empty()).unwrap();
        RationalCover::one_minus().validate(&PrimeSet::empty()).unwrap();
        RationalCover::reciprocal().validate(&PrimeSet::empty()).unwrap();
        RationalCover::quartic().validate(&p2).unwrap();
        RationalCover::trinomial(2).unwrap().validate(&p2).unwrap();
        RationalCover::power(2).unwrap().validate(&p2).unwrap();
        assert!(RationalCover::power(3).unwrap().validate(&p2).is_err());
        RationalCover::trinomial(3).unwrap().validate(&ps(&[2, 3])).unwrap();
        assert!(RationalCover::trinomial(3).unwrap().validate(&p2).is_err());
        // t² + 1 moves 0 off {0, 1, ∞}
        let bad = RationalCover::new("bad", q(1), IntPoly::from_i64(&[2, 0, 1]), IntPoly::one()).unwrap();
        assert!(bad.validate(&p2).is_err());
    }

    #[test]
    fn pullbacks() {
        let p2 = ps(&[2]);
        let s = NormalizedPoly::from_i64(&[1, 1]).unwrap();
        let t = pullback(&RationalCover::trinomial(2).unwrap(), &s, &p2).unwrap();
        assert_eq!(t.poly, NormalizedPoly::from_i64(&[-1, 2, 1]).unwrap());
        let s = NormalizedPoly::from_i64(&[-1, 2, 1]).unwrap();
        assert_eq!(pullback(&RationalCover::identity(), &s, &p2).unwrap().poly, s);
        for (cover, g) in [(RationalCover::one_minus(), S3::Swap01), (RationalCover::reciprocal(), S3::Swap0Inf)] {
            assert_eq!(cover.compose(&s).unwrap(), s3_transform(&s, g));
        }
        let s20 = pullback(&RationalCover::quartic(), &fractal_seed(0).unwrap(), &p2).unwrap();
        assert_eq!(s20.poly.degree(), 8);
    }

    #[test]
    fn fractal_levels() {
        let fam = fractal_family(3, true, &Budget::default()).unwrap();
        assert_eq!(fam.len(), 9);
        assert_eq!(fam[0].poly, NormalizedPoly::from_i64(&[-1, 2, 1]).unwrap());
        for w in 1..=2 {
            let prods = fractal_products(&fam, w).unwrap();
            assert_eq!(prods.len(), 3usize.pow(w));
            assert!(prods.iter().all(|p| p.degree() == 2 * (4usize.pow(w) - 1) / 3));
        }
    }

    #[test]
    fn fractal_budget() {
        assert!(fractal_family(8, true, &Budget::default()).unwrap_err().is_budget());
    }

    #[test]
    fn named_reports() {
        let r = verify_named("big23").unwrap();
        assert!(r.pass);
        assert_eq!(r.disc_matches, Some(true));
        assert!(verify_named("nope").is_err());
    }
}
