//! The symmetric group on {0, 1, ∞} acting on polynomials through their roots.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::NormalizedPoly;

/// Permutations of {0, 1, ∞}, each realized by a Möbius map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum S3 {
    /// `t`
    Id,
    /// `1 - t`
    Swap01,
    /// `1/t`
    Swap0Inf,
    /// `t/(t - 1)`
    Swap1Inf,
    /// `1/(1 - t)`: 0 → 1 → ∞ → 0
    Cycle,
    /// `(t - 1)/t`: 0 → ∞ → 1 → 0
    CycleInv,
}

impl S3 {
    pub const ALL: [S3; 6] = [S3::Id, S3::Swap01, S3::Swap0Inf, S3::Swap1Inf, S3::Cycle, S3::CycleInv];

    /// Images of (0, 1, ∞), encoded as indices 0, 1, 2.
    pub fn perm(self) -> [usize; 3] {
        match self {
            S3::Id => [0, 1, 2],
            S3::Swap01 => [1, 0, 2],
            S3::Swap0Inf => [2, 1, 0],
            S3::Swap1Inf => [0, 2, 1],
            S3::Cycle => [1, 2, 0],
            S3::CycleInv => [2, 0, 1],
        }
    }

    pub fn from_perm(perm: [usize; 3]) -> S3 {
        *S3::ALL.iter().find(|g| g.perm() == perm).expect("valid permutation")
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: S3) -> S3 {
        let (a, b) = (self.perm(), other.perm());
        S3::from_perm([a[b[0]], a[b[1]], a[b[2]]])
    }

    pub fn inverse(self) -> S3 {
        let p = self.perm();
        let mut inv = [0; 3];
        for (i, &j) in p.iter().enumerate() {
            inv[j] = i;
        }
        S3::from_perm(inv)
    }

    /// Matrix `[a, b, c, d]` of the map `t ↦ (a·t + b)/(c·t + d)`.
    pub fn matrix(self) -> [i64; 4] {
        match self {
            S3::Id => [1, 0, 0, 1],
            S3::Swap01 => [-1, 1, 0, 1],
            S3::Swap0Inf => [0, 1, 1, 0],
            S3::Swap1Inf => [1, 0, 1, -1],
            S3::Cycle => [0, 1, -1, 1],
            S3::CycleInv => [1, -1, 1, 0],
        }
    }

    /// Image of a point of the projective line; `None` stands for ∞.
    pub fn apply(self, u: Option<&BigRational>) -> Option<BigRational> {
        let [a, b, c, d] = self.matrix().map(|x| BigRational::from_integer(BigInt::from(x)));
        match u {
            None => (!c.is_zero()).then(|| a / c),
            Some(u) => {
                let den = &c * u + &d;
                if den.is_zero() {
                    None
                } else {
                    Some((&a * u + &b) / den)
                }
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            S3::Id => "e",
            S3::Swap01 => "(01)",
            S3::Swap0Inf => "(0inf)",
            S3::Swap1Inf => "(1inf)",
            S3::Cycle => "(01inf)",
            S3::CycleInv => "(0inf1)",
        }
    }
}

impl fmt::Display for S3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The normalized polynomial whose roots are the images of the roots of `s` under `g`.
pub fn s3_transform(s: &NormalizedPoly, g: S3) -> NormalizedPoly {
    if g == S3::Id {
        return s.clone();
    }
    // substitute the inverse map: s((d·t - b)/(-c·t + a))
    let [a, b, c, d] = g.matrix().map(BigInt::from);
    let inv = [d, -b, -c, a];
    let p = s.poly().mobius_substitute([&inv[0], &inv[1], &inv[2], &inv[3]], s.degree());
    NormalizedPoly::new(p).expect("Möbius images of nonzero polynomials are nonzero")
}

pub fn s3_orbit(s: &NormalizedPoly) -> BTreeSet<NormalizedPoly> {
    S3::ALL.iter().map(|&g| s3_transform(s, g)).collect()
}

/// The smallest member of the S₃-orbit in the canonical polynomial order.
pub fn canonical_representative(s: &NormalizedPoly) -> NormalizedPoly {
    s3_orbit(s).into_iter().next().expect("orbits are nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn np(c: &[i64]) -> NormalizedPoly {
        NormalizedPoly::from_i64(c).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn group_table_is_consistent() {
        for g in S3::ALL {
            assert_eq!(g.compose(g.inverse()), S3::Id);
            for h in S3::ALL {
                for k in S3::ALL {
                    assert_eq!(g.compose(h).compose(k), g.compose(h.compose(k)));
                }
            }
        }
    }

    #[test]
    fn matrices_permute_special_points() {
        let pts = [Some(q(0, 1)), Some(q(1, 1)), None];
        for g in S3::ALL {
            let p = g.perm();
            for (i, pt) in pts.iter().enumerate() {
                assert_eq!(g.apply(pt.as_ref()), pts[p[i]], "{g} at point {i}");
            }
        }
    }

    #[test]
    fn transform_examples() {
        let s = np(&[-2, 1]);
        assert_eq!(s3_transform(&s, S3::Swap01), np(&[1, 1]));
        assert_eq!(s3_transform(&s, S3::Swap0Inf), np(&[-1, 2]));
        assert_eq!(s3_transform(&s, S3::Swap1Inf), np(&[-2, 1]));
        let orbit = s3_orbit(&s);
        assert_eq!(orbit.len(), 3);
        assert_eq!(canonical_representative(&s), np(&[-2, 1]));
    }

    #[test]
    fn roots_move_by_the_map() {
        // 3t - 2 has root 2/3
        let s = np(&[-2, 3]);
        for g in S3::ALL {
            let image = g.apply(Some(&q(2, 3))).unwrap();
            let t = s3_transform(&s, g);
            assert!(t.poly().eval_rational(&image).is_zero(), "{g}");
        }
    }

    fn avoids_special_points(s: &NormalizedPoly) -> bool {
        let (s0, s1, _) = s.special_values();
        !s0.is_zero() && !s1.is_zero()
    }

    fn poly_strategy() -> impl Strategy<Value = NormalizedPoly> {
        (prop::collection::vec(-20i64..20, 1..5), 1i64..6).prop_map(|(mut v, lead)| {
            v.push(lead);
            NormalizedPoly::from_i64(&v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn left_action(s in poly_strategy(), gi in 0usize..6, hi in 0usize..6) {
            prop_assume!(avoids_special_points(&s));
            let (g, h) = (S3::ALL[gi], S3::ALL[hi]);
            prop_assert_eq!(s3_transform(&s3_transform(&s, h), g), s3_transform(&s, g.compose(h)));
        }

        #[test]
        fn identity_and_degree(s in poly_strategy(), gi in 0usize..6) {
            prop_assert_eq!(s3_transform(&s, S3::Id), s.clone());
            prop_assume!(avoids_special_points(&s));
            let t = s3_transform(&s, S3::ALL[gi]);
            prop_assert_eq!(t.degree(), s.degree());
        }

        #[test]
        fn canonical_is_orbit_invariant(s in poly_strategy(), gi in 0usize..6) {
            prop_assume!(avoids_special_points(&s));
            let t = s3_transform(&s, S3::ALL[gi]);
            prop_assert_eq!(canonical_representative(&t), canonical_representative(&s));
        }
    }
}
