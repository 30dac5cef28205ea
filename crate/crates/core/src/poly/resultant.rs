//! Resultants and discriminants over Z.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::IntPoly;

/// Coefficients above this size skip the fixed-width fast path.
const FAST_PATH_LIMIT: i128 = 1 << 40;

/// `Res(a, b)` with the convention `lead(a)^deg b · ∏ b(α)` over roots α of `a`.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    if let Some(r) = sylvester_det_i128(a, b) {
        return BigInt::from(r);
    }
    resultant_subresultant(a, b)
}

/// Subresultant pseudo-remainder sequence.
pub fn resultant_subresultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let (da, db) = (a.deg(), b.deg());
    if da == 0 {
        return num_traits::pow(a.lead(), db);
    }
    if db == 0 {
        return num_traits::pow(b.lead(), da);
    }
    let ca = a.content();
    let cb = b.content();
    let mut a = a.div_scalar(&ca);
    let mut b = b.div_scalar(&cb);
    let t = num_traits::pow(ca, db) * num_traits::pow(cb, da);
    let mut s = BigInt::one();
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        if r.is_zero() {
            return BigInt::zero();
        }
        let divisor = &g * num_traits::pow(h.clone(), delta);
        b = r.div_scalar(&divisor);
        g = a.lead();
        if delta > 0 {
            let num = num_traits::pow(g.clone(), delta);
            let den = num_traits::pow(h.clone(), delta - 1);
            h = num / den;
        }
        if b.deg() == 0 {
            break;
        }
    }
    let da = a.deg();
    let num = num_traits::pow(b.lead(), da);
    let den = num_traits::pow(h, da - 1);
    let h = num / den;
    s * t * h
}

/// `(-1)^(k(k-1)/2) · Res(s, s') / lead(s)`.
pub fn discriminant(s: &IntPoly) -> BigInt {
    let k = s.deg();
    if k == 0 {
        return BigInt::one();
    }
    let r = resultant(s, &s.derivative());
    let (q, rem) = r.div_rem(&s.lead());
    debug_assert!(rem.is_zero());
    if (k * (k - 1) / 2) % 2 == 1 {
        -q
    } else {
        q
    }
}

fn to_small(p: &IntPoly) -> Option<Vec<i128>> {
    p.coeffs()
        .iter()
        .map(|c| c.to_i128().filter(|v| v.abs() < FAST_PATH_LIMIT))
        .collect()
}

/// Fraction-free Gaussian elimination on the Sylvester matrix; `None` on overflow.
fn sylvester_det_i128(a: &IntPoly, b: &IntPoly) -> Option<i128> {
    if a.is_zero() || b.is_zero() || (a.deg() == 0 && b.deg() == 0) {
        return None;
    }
    let ac = to_small(a)?;
    let bc = to_small(b)?;
    let (m, n) = (a.deg(), b.deg());
    let size = m + n;
    let mut mat = vec![vec![0i128; size]; size];
    for row in 0..n {
        for (i, &c) in ac.iter().enumerate() {
            mat[row][row + m - i] = c;
        }
    }
    for row in 0..m {
        for (i, &c) in bc.iter().enumerate() {
            mat[n + row][row + n - i] = c;
        }
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..size {
        if mat[k][k] == 0 {
            let pivot = (k + 1..size).find(|&i| mat[i][k] != 0);
            match pivot {
                Some(i) => {
                    mat.swap(i, k);
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let x = mat[i][j].checked_mul(mat[k][k])?;
                let y = mat[i][k].checked_mul(mat[k][j])?;
                mat[i][j] = x.checked_sub(y)? / prev;
            }
            mat[i][k] = 0;
        }
        prev = mat[k][k];
    }
    sign.checked_mul(mat[size - 1][size - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    /// Independent oracle: rational Gaussian elimination on the Sylvester matrix.
    fn sylvester_oracle(a: &IntPoly, b: &IntPoly) -> BigInt {
        let (m, n) = (a.deg(), b.deg());
        let size = m + n;
        let zero = BigRational::zero();
        let mut mat = vec![vec![zero.clone(); size]; size];
        for row in 0..n {
            for (i, c) in a.coeffs().iter().enumerate() {
                mat[row][row + m - i] = BigRational::from_integer(c.clone());
            }
        }
        for row in 0..m {
            for (i, c) in b.coeffs().iter().enumerate() {
                mat[n + row][row + n - i] = BigRational::from_integer(c.clone());
            }
        }
        let mut det = BigRational::one();
        for k in 0..size {
            let Some(piv) = (k..size).find(|&i| !mat[i][k].is_zero()) else {
                return BigInt::zero();
            };
            if piv != k {
                mat.swap(piv, k);
                det = -det;
            }
            det *= mat[k][k].clone();
            for i in k + 1..size {
                let f = &mat[i][k] / &mat[k][k];
                for j in k..size {
                    let v = &f * &mat[k][j];
                    mat[i][j] -= v;
                }
            }
        }
        det.to_integer()
    }

    #[test]
    fn small_resultants() {
        assert_eq!(resultant(&p(&[-2, 1]), &p(&[1, 1])), BigInt::from(3));
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[-1, 0, 1])), BigInt::from(4));
        assert_eq!(resultant(&p(&[5]), &p(&[1, 2, 3])), BigInt::from(25));
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[-1, 0, 1])), BigInt::zero());
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p(&[-2, 0, 1])), BigInt::from(8));
        assert_eq!(discriminant(&p(&[1, 0, 1])), BigInt::from(-4));
        assert_eq!(discriminant(&p(&[1, 6, 1])), BigInt::from(32));
        // t^3 - 2: -27·4
        assert_eq!(discriminant(&p(&[-2, 0, 0, 1])), BigInt::from(-108));
        assert_eq!(discriminant(&p(&[1, 0, 0, 0, 1])), BigInt::from(256));
        assert_eq!(discriminant(&p(&[1, 1, 1])), BigInt::from(-3));
    }

    #[test]
    fn bigint_path_agrees_with_fast_path() {
        let a = p(&[3, -7, 0, 11, 2]);
        let b = p(&[-5, 2, 9, 1]);
        assert_eq!(resultant_subresultant(&a, &b), sylvester_det_i128(&a, &b).map(BigInt::from).unwrap());
    }

    fn poly_strategy() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-30i64..30, 1..7).prop_map(|v| IntPoly::from_i64(&v))
    }

    proptest! {
        #[test]
        fn matches_sylvester_oracle(a in poly_strategy(), b in poly_strategy()) {
            prop_assume!(!a.is_zero() && !b.is_zero() && a.deg() + b.deg() > 0);
            let oracle = sylvester_oracle(&a, &b);
            prop_assert_eq!(resultant_subresultant(&a, &b), oracle.clone());
            prop_assert_eq!(resultant(&a, &b), oracle);
        }

        #[test]
        fn symmetry(a in poly_strategy(), b in poly_strategy()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let sign = if a.deg() * b.deg() % 2 == 1 { -1 } else { 1 };
            prop_assert_eq!(resultant_subresultant(&a, &b), resultant_subresultant(&b, &a) * sign);
        }

        #[test]
        fn multiplicative(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
            prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
            let bc = &b * &c;
            prop_assert_eq!(resultant(&a, &bc), resultant(&a, &b) * resultant(&a, &c));
        }

        #[test]
        fn discriminant_of_product(a in poly_strategy(), b in poly_strategy()) {
            prop_assume!(a.deg() >= 1 && b.deg() >= 1);
            let r = resultant(&a, &b);
            let ab = &a * &b;
            prop_assert_eq!(discriminant(&ab), discriminant(&a) * discriminant(&b) * &r * &r);
        }
    }
}
