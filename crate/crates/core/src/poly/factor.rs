//! Factorization of small-degree integer polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::{Field, Fp};
use super::{IntPoly, NormalizedPoly};
use crate::error::{Error, Result};
use crate::exact::is_prime_u64;

/// Largest degree accepted by [`factor_small`].
pub const FACTOR_SMALL_MAX_DEGREE: usize = 64;

/// Number of good primes tried when choosing the modular factorization.
const PRIME_TRIALS: usize = 6;

/// Subset products examined during recombination before giving up.
const RECOMBINATION_CAP: u64 = 1 << 22;

/// Greatest common divisor over Q, returned primitive with positive leading coefficient.
pub fn poly_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut a = a.primitive_part();
    let mut b = b.primitive_part();
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.pseudo_rem(&b);
        a = b;
        b = r.primitive_part();
    }
    a.primitive_part()
}

/// `f / gcd(f, f')`, primitive.
pub fn squarefree_part_poly(f: &IntPoly) -> IntPoly {
    let f = f.primitive_part();
    if f.deg() == 0 {
        return f;
    }
    let g = poly_gcd(&f, &f.derivative());
    f.div_exact(&g).expect("gcd divides").primitive_part()
}

/// Rational roots of `f` with multiplicities, in increasing order.
pub fn rational_roots(f: &IntPoly) -> Vec<(BigRational, usize)> {
    if f.is_zero() || f.deg() == 0 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let zero_mult = f.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        roots.push((BigRational::zero(), zero_mult));
    }
    let shifted = IntPoly::new(f.coeffs()[zero_mult..].to_vec());
    let g = squarefree_part_poly(&shifted);
    for r in nonzero_roots_squarefree(&g) {
        let lin = IntPoly::linear(r.denom().clone(), -r.numer());
        let mut rest = shifted.clone();
        let mut m = 0;
        while let Some(q) = rest.div_exact(&lin) {
            rest = q;
            m += 1;
        }
        debug_assert!(m > 0);
        roots.push((r, m));
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    roots
}

fn reduce(g: &IntPoly, p: u64) -> Fp {
    let pb = BigInt::from(p);
    let mut v: Fp = g.coeffs().iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    Field::trim(&mut v);
    v
}

fn lift_to_int(v: &[u64]) -> IntPoly {
    IntPoly::new(v.iter().map(|&c| BigInt::from(c)).collect())
}

fn is_squarefree_mod(f: &IntPoly, p: u64) -> bool {
    let field = Field { p };
    let fp = reduce(f, p);
    fp.len() == f.coeffs().len() && field.gcd(&fp, &field.derivative(&fp)).len() == 1
}

/// Roots of a squarefree primitive polynomial with `g(0) ≠ 0`, by Hensel lifting.
fn nonzero_roots_squarefree(g: &IntPoly) -> Vec<BigRational> {
    if g.deg() == 0 {
        return Vec::new();
    }
    if g.deg() == 1 {
        return vec![BigRational::new(-g.coeff(0), g.coeff(1))];
    }
    let lc = g.lead();
    let deriv = g.derivative();
    let p = (3u64..)
        .step_by(2)
        .find(|&p| is_prime_u64(p) && !(&lc % p).is_zero() && is_squarefree_mod(g, p))
        .expect("a squarefree polynomial stays squarefree modulo almost every prime");
    let field = Field { p };
    let gp = reduce(g, p);
    let eval = |x: u64| gp.iter().rev().fold(0, |acc, &c| field.add(field.mul(acc, x), c));
    let residues: Vec<u64> = (0..p).filter(|&x| eval(x) == 0).collect();
    let n_bound = g.coeff(0).abs();
    let d_bound = lc.abs();
    let target: BigInt = BigInt::from(2u32) * &n_bound * &d_bound + 1u32;
    let mut out = Vec::new();
    for r0 in residues {
        let mut r = BigInt::from(r0);
        let mut modulus = BigInt::from(p);
        while modulus <= target {
            modulus = &modulus * &modulus;
            let d = deriv.eval(&r).mod_floor(&modulus);
            let inv = mod_inverse(&d, &modulus).expect("simple root modulo p");
            let v = g.eval(&r);
            r = (&r - v * inv).mod_floor(&modulus);
        }
        if let Some(q) = reconstruct(&r, &modulus, &n_bound, &d_bound) {
            if g.eval_homogeneous(q.numer(), q.denom()).is_zero() {
                out.push(q);
            }
        }
    }
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Rational reconstruction: `a/b ≡ r (mod m)` with `|a| ≤ n`, `0 < b ≤ d`.
fn reconstruct(r: &BigInt, m: &BigInt, n: &BigInt, d: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), r.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > n {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > d {
        return None;
    }
    let (a, b) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    a.gcd(&b).is_one().then(|| BigRational::new(a, b))
}

/// Whether a normalized polynomial is irreducible over Q.
pub fn is_irreducible(s: &NormalizedPoly) -> Result<bool> {
    match s.degree() {
        0 => Ok(false),
        1 => Ok(true),
        2 | 3 => Ok(rational_roots(s.poly()).is_empty()),
        _ => Ok(matches!(factor_small(s)?.as_slice(), [(_, 1)])),
    }
}

/// Irreducible factors over Q with multiplicities, sorted in canonical order.
pub fn factor_small(s: &NormalizedPoly) -> Result<Vec<(NormalizedPoly, usize)>> {
    let f = s.poly();
    if f.deg() > FACTOR_SMALL_MAX_DEGREE {
        return Err(Error::DegreeTooLarge { degree: f.deg(), bound: FACTOR_SMALL_MAX_DEGREE });
    }
    if f.deg() == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = squarefree_part_poly(f);
    for (r, m) in rational_roots(f) {
        let lin = IntPoly::linear(r.denom().clone(), -r.numer());
        rest = rest.div_exact(&lin).expect("root of the squarefree part");
        out.push((NormalizedPoly::new(lin)?, m));
    }
    let rest = rest.primitive_part();
    let irreducible = if rest.deg() <= 3 {
        vec![rest]
    } else {
        zassenhaus(&rest)?
    };
    for q in irreducible.into_iter().filter(|q| q.deg() > 0) {
        let mut m = 0;
        let mut g = f.clone();
        while let Some(next) = g.div_exact(&q) {
            g = next;
            m += 1;
        }
        out.push((NormalizedPoly::new(q)?, m));
    }
    out.sort();
    Ok(out)
}

/// Degrees of the irreducible factors, repeated by multiplicity, largest first.
pub fn factorization_partition(s: &NormalizedPoly) -> Result<Vec<usize>> {
    let mut parts: Vec<usize> = factor_small(s)?
        .iter()
        .flat_map(|(q, m)| std::iter::repeat_n(q.degree(), *m))
        .collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(parts)
}

/// Irreducible factors of a squarefree primitive polynomial with positive leading coefficient.
fn zassenhaus(h: &IntPoly) -> Result<Vec<IntPoly>> {
    let n = h.deg();
    let lc = h.lead();
    // monic associate f(y) = lc^(n-1) h(y / lc)
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut lc_pow = BigInt::one();
    for i in (0..n).rev() {
        coeffs.push(h.coeff(i) * &lc_pow);
        lc_pow *= &lc;
    }
    coeffs.reverse();
    coeffs.push(BigInt::one());
    let f = IntPoly::new(coeffs);

    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    let mut p = 3u64;
    while tried < PRIME_TRIALS {
        if is_prime_u64(p) && !(&lc % p).is_zero() && is_squarefree_mod(&f, p) {
            tried += 1;
            let field = Field { p };
            let factors = field.factor_squarefree(&reduce(&f, p));
            if factors.len() == 1 {
                return Ok(vec![h.clone()]);
            }
            if best.as_ref().is_none_or(|b| factors.len() < b.1.len()) {
                best = Some((p, factors));
            }
        }
        p += 2;
    }
    let (p, modular) = best.expect("prime trials ran");

    // factor coefficients of f are bounded by 2^n · ‖f‖₂
    let max_coeff = f.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    let bound = (BigInt::one() << n) * BigInt::from(n + 1) * max_coeff;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= &bound * 2u32 {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(&f, &modular, p, k);
    let factors_of_f = recombine(&f, lifted, &modulus)?;
    Ok(factors_of_f
        .into_iter()
        .map(|g| {
            let mut scale = BigInt::one();
            let mut c = Vec::with_capacity(g.coeffs().len());
            for x in g.coeffs() {
                c.push(x * &scale);
                scale *= &lc;
            }
            IntPoly::new(c).primitive_part()
        })
        .collect())
}

/// Lifts a monic factorization modulo p to one modulo p^k.
fn hensel_lift(f: &IntPoly, factors: &[Fp], p: u64, k: u32) -> Vec<IntPoly> {
    let field = Field { p };
    let modulus = num_traits::pow(BigInt::from(p), k as usize);
    let mut out = Vec::with_capacity(factors.len());
    let mut current = f.clone();
    for i in 0..factors.len() - 1 {
        let g = &factors[i];
        let rest = factors[i + 1..].iter().fold(vec![1u64], |acc, x| field.mul_poly(&acc, x));
        let (lg, lh) = lift_pair(&current, g, &rest, field, k);
        out.push(mod_reduce(&lg, &modulus));
        current = mod_reduce(&lh, &modulus);
    }
    out.push(current);
    out
}

fn mod_reduce(g: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(g.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Linear Hensel lifting of `F ≡ g·h (mod p)` to `F ≡ G·H (mod p^k)`.
fn lift_pair(big_f: &IntPoly, g: &[u64], h: &[u64], field: Field, k: u32) -> (IntPoly, IntPoly) {
    let (s, t) = field.bezout(g, h);
    let mut lg = lift_to_int(g);
    let mut lh = lift_to_int(h);
    let pb = BigInt::from(field.p);
    let mut pj = pb.clone();
    for _ in 1..k {
        let err = big_f - &(&lg * &lh);
        let e = reduce(&err.div_scalar_floor(&pj), field.p);
        if !e.is_empty() {
            // g·δh + h·δg ≡ e with deg δg < deg g
            let (q, dg) = field.divrem(&field.mul_poly(&e, &t), g);
            let dh = field.add_poly(&field.mul_poly(&e, &s), &field.mul_poly(&q, h));
            lg = &lg + &lift_to_int(&dg).scale(&pj);
            lh = &lh + &lift_to_int(&dh).scale(&pj);
        }
        pj *= &pb;
    }
    (lg, lh)
}

fn symmetric(g: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m / 2u32;
    IntPoly::new(
        g.coeffs()
            .iter()
            .map(|c| {
                let c = c.mod_floor(m);
                if c > half {
                    c - m
                } else {
                    c
                }
            })
            .collect(),
    )
}

/// Combines lifted modular factors into true factors of the monic `f`.
fn recombine(f: &IntPoly, mut lifted: Vec<IntPoly>, m: &BigInt) -> Result<Vec<IntPoly>> {
    let mut result = Vec::new();
    let mut rest = f.clone();
    let mut size = 1;
    let mut examined: u64 = 0;
    while 2 * size <= lifted.len() {
        let mut found = None;
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            examined += 1;
            if examined > RECOMBINATION_CAP {
                return Err(Error::Unsupported(format!("factor recombination for {f} exceeds budget")));
            }
            let constant = idx.iter().fold(BigInt::one(), |acc, &i| (acc * lifted[i].coeff(0)).mod_floor(m));
            let constant = symmetric(&IntPoly::constant(constant), m).coeff(0);
            let plausible = if constant.is_zero() {
                rest.coeff(0).is_zero()
            } else {
                (rest.coeff(0) % &constant).is_zero()
            };
            if plausible {
                let prod = idx.iter().fold(IntPoly::one(), |acc, &i| symmetric(&(&acc * &lifted[i]), m));
                if let Some(q) = rest.div_exact(&prod) {
                    found = Some((idx.clone(), prod, q));
                    break;
                }
            }
            if !next_combination(&mut idx, lifted.len()) {
                break;
            }
        }
        match found {
            Some((idx, prod, q)) => {
                result.push(prod);
                rest = q;
                for &i in idx.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if rest.deg() > 0 {
        result.push(rest);
    }
    Ok(result)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl IntPoly {
    /// Coefficient-wise exact division by a positive integer known to divide.
    fn div_scalar_floor(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs().iter().map(|x| x.div_floor(c)).collect())
    }
}
