//! Polynomials over small prime fields, constant term first.

pub(crate) type Fp = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Field {
    pub p: u64,
}

impl Field {
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn trim(v: &mut Fp) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn add_poly(self, a: &[u64], b: &[u64]) -> Fp {
        let n = a.len().max(b.len());
        let mut out: Fp = (0..n)
            .map(|i| self.add(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
            .collect();
        Self::trim(&mut out);
        out
    }

    pub fn sub_poly(self, a: &[u64], b: &[u64]) -> Fp {
        let n = a.len().max(b.len());
        let mut out: Fp = (0..n)
            .map(|i| self.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
            .collect();
        Self::trim(&mut out);
        out
    }

    pub fn mul_poly(self, a: &[u64], b: &[u64]) -> Fp {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        Self::trim(&mut out);
        out
    }

    pub fn scale(self, a: &[u64], c: u64) -> Fp {
        let mut out: Fp = a.iter().map(|&x| self.mul(x, c)).collect();
        Self::trim(&mut out);
        out
    }

    pub fn monic(self, a: &[u64]) -> Fp {
        match a.last() {
            Some(&l) => self.scale(a, self.inv(l)),
            None => Vec::new(),
        }
    }

    /// `(q, r)` with `a = q·b + r`.
    pub fn divrem(self, a: &[u64], b: &[u64]) -> (Fp, Fp) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = a.to_vec();
        Self::trim(&mut r);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let inv = self.inv(*b.last().unwrap());
        let mut q = vec![0u64; r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = self.mul(*r.last().unwrap(), inv);
            q[shift] = c;
            for (i, &y) in b.iter().enumerate() {
                r[shift + i] = self.sub(r[shift + i], self.mul(c, y));
            }
            Self::trim(&mut r);
        }
        Self::trim(&mut q);
        (q, r)
    }

    pub fn rem(self, a: &[u64], b: &[u64]) -> Fp {
        self.divrem(a, b).1
    }

    pub fn gcd(self, a: &[u64], b: &[u64]) -> Fp {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        Self::trim(&mut a);
        Self::trim(&mut b);
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = std::mem::replace(&mut b, r);
        }
        self.monic(&a)
    }

    /// `(s, t)` with `s·a + t·b = 1` for coprime `a`, `b`.
    pub fn bezout(self, a: &[u64], b: &[u64]) -> (Fp, Fp) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1): (Fp, Fp) = (vec![1], Vec::new());
        let (mut t0, mut t1): (Fp, Fp) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = self.sub_poly(&s0, &self.mul_poly(&q, &s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = self.sub_poly(&t0, &self.mul_poly(&q, &t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        debug_assert_eq!(r0.len(), 1, "inputs must be coprime");
        let c = self.inv(r0[0]);
        (self.scale(&s0, c), self.scale(&t0, c))
    }

    pub fn derivative(self, a: &[u64]) -> Fp {
        let mut out: Fp = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, i as u64 % self.p))
            .collect();
        Self::trim(&mut out);
        out
    }

    /// `base^e mod m`.
    pub fn powmod_poly(self, base: &[u64], mut e: u128, m: &[u64]) -> Fp {
        let mut result: Fp = self.rem(&[1], m);
        let mut b = self.rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                result = self.rem(&self.mul_poly(&result, &b), m);
            }
            e >>= 1;
            if e > 0 {
                b = self.rem(&self.mul_poly(&b, &b), m);
            }
        }
        result
    }

    /// Monic irreducible factors of a monic squarefree polynomial (p odd).
    pub fn factor_squarefree(self, f: &[u64]) -> Vec<Fp> {
        let mut out = Vec::new();
        let mut rest = f.to_vec();
        let x: Fp = vec![0, 1];
        let mut xp = x.clone();
        let mut d = 1usize;
        while rest.len() > 1 && 2 * d < rest.len() {
            xp = self.powmod_poly(&xp, self.p as u128, &rest);
            let g = self.gcd(&rest, &self.sub_poly(&xp, &x));
            if g.len() > 1 {
                self.equal_degree(&g, d, &mut out);
                rest = self.divrem(&rest, &g).0;
                xp = self.rem(&xp, &rest);
            }
            d += 1;
        }
        if rest.len() > 1 {
            out.push(self.monic(&rest));
        }
        out
    }

    fn equal_degree(self, g: &[u64], d: usize, out: &mut Vec<Fp>) {
        if g.len() - 1 == d {
            out.push(self.monic(g));
            return;
        }
        let mut a = 0u64;
        loop {
            // deterministic sweep over monic linear, then quadratic, splitting candidates
            let cand: Fp = if a < self.p { vec![a, 1] } else { vec![a % self.p, a / self.p % self.p, 1] };
            a += 1;
            // cand^((p^d - 1)/2) = (cand^(1 + p + ... + p^(d-1)))^((p - 1)/2)
            let mut frob = self.rem(&cand, g);
            let mut acc = frob.clone();
            for _ in 1..d {
                frob = self.powmod_poly(&frob, self.p as u128, g);
                acc = self.rem(&self.mul_poly(&acc, &frob), g);
            }
            let w = self.powmod_poly(&acc, (self.p as u128 - 1) / 2, g);
            let h = self.gcd(g, &self.sub_poly(&w, &[1]));
            if h.len() > 1 && h.len() < g.len() {
                let other = self.divrem(g, &h).0;
                self.equal_degree(&h, d, out);
                self.equal_degree(&other, d, out);
                return;
            }
        }
    }
}
