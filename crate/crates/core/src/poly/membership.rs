use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::NormalizedPoly;
use crate::exact::{factor_over, PrimeSet, SmoothFactorization};

/// The four quantities that must be P-units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Condition {
    AtZero,
    AtOne,
    AtInfinity,
    Discriminant,
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipReport {
    pub ok: bool,
    pub s0: Option<SmoothFactorization>,
    pub s1: Option<SmoothFactorization>,
    pub sinf: Option<SmoothFactorization>,
    pub disc: Option<SmoothFactorization>,
    #[serde(serialize_with = "crate::io::ser_bigint")]
    pub disc_value: BigInt,
    pub failures: Vec<Condition>,
}

fn unit(v: &BigInt, primes: &PrimeSet) -> Option<SmoothFactorization> {
    if v.is_zero() {
        None
    } else {
        factor_over(v, primes).ok()
    }
}

/// Tests `s(0), s(1), s(∞), disc(s) ∈ P*` with `disc(s) ≠ 0`.
pub fn check_membership(s: &NormalizedPoly, primes: &PrimeSet) -> MembershipReport {
    let (v0, v1, vinf) = s.special_values();
    let disc_value = s.discriminant();
    let s0 = unit(&v0, primes);
    let s1 = unit(&v1, primes);
    let sinf = unit(&vinf, primes);
    let disc = unit(&disc_value, primes);
    let mut failures = Vec::new();
    for (cond, f) in [
        (Condition::AtZero, &s0),
        (Condition::AtOne, &s1),
        (Condition::AtInfinity, &sinf),
        (Condition::Discriminant, &disc),
    ] {
        if !f.as_ref().is_some_and(|f| f.is_unit()) {
            failures.push(cond);
        }
    }
    MembershipReport { ok: failures.is_empty(), s0, s1, sinf, disc, disc_value, failures }
}
