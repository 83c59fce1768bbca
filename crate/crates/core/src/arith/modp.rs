//! Polynomials over a prime field 𝔽_p with word-sized p, and their
//! factorization (distinct-degree then equal-degree splitting).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use super::zpoly::ZPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "{a} is not invertible mod {p}");
    t.rem_euclid(p as i128) as u64
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { p, coeffs }
    }

    pub fn from_zpoly(f: &ZPoly, p: u64) -> Self {
        let bp = BigInt::from(p);
        Self::new(
            p,
            f.coeffs()
                .iter()
                .map(|c| c.mod_floor(&bp).to_u64().unwrap())
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        Self { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() || self.lc() == 1 {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.p))
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        let p = self.p;
        FpPoly::new(p, self.coeffs.iter().map(|&a| a * (c % p) % p).collect())
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        FpPoly::new(
            self.p,
            (0..n)
                .map(|i| (get(&self.coeffs, i) + get(&other.coeffs, i)) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        FpPoly::new(
            self.p,
            (0..n)
                .map(|i| (get(&self.coeffs, i) + self.p - get(&other.coeffs, i)) % self.p)
                .collect(),
        )
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        FpPoly::new(p, out)
    }

    pub fn divrem(&self, divisor: &FpPoly) -> (FpPoly, FpPoly) {
        let p = self.p;
        let dd = divisor.degree().expect("division by zero polynomial mod p");
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return (FpPoly::zero(p), self.clone());
        };
        let inv = inv_mod(divisor.lc(), p);
        let mut rem = self.coeffs.clone();
        let mut q = vec![0u64; nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let top = rem[i + dd];
            if top == 0 {
                continue;
            }
            let qi = top * inv % p;
            for (j, &c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = (rem[i + j] + p - qi * c % p) % p;
            }
            q[i] = qi;
        }
        rem.truncate(dd);
        (FpPoly::new(p, q), FpPoly::new(p, rem))
    }

    pub fn rem(&self, divisor: &FpPoly) -> FpPoly {
        self.divrem(divisor).1
    }

    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g` and `g` monic.
    pub fn ext_gcd(&self, other: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s2);
            (t0, t1) = (t1, t2);
        }
        let inv = inv_mod(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        FpPoly::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * (i as u64 % p) % p)
                .collect(),
        )
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    fn lift(&self) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }
}

impl From<&FpPoly> for ZPoly {
    fn from(f: &FpPoly) -> ZPoly {
        f.lift()
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial: pairs
/// `(product of all irreducible factors of degree d, d)`.
pub fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.modulus();
    let pe = BigUint::from(p);
    let mut out = Vec::new();
    let mut rest = f.monic();
    let x = FpPoly::x(p);
    let mut h = x.rem(&rest);
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if deg < 2 * (d + 1) {
            if deg > 0 {
                out.push((rest.clone(), deg));
            }
            break;
        }
        d += 1;
        h = h.pow_mod(&pe, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    out
}

/// Splits a monic product of distinct degree-`d` irreducibles (odd `p`).
pub fn equal_degree<R: Rng>(f: &FpPoly, d: usize, rng: &mut R) -> Vec<FpPoly> {
    let p = f.modulus();
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f.monic()];
    }
    let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = a.gcd(f);
        let split = if !g.is_one() {
            g
        } else {
            let b = a.pow_mod(&exp, f).sub(&FpPoly::one(p));
            b.gcd(f)
        };
        if let Some(sd) = split.degree() {
            if sd > 0 && sd < n {
                let other = f.divrem(&split).0;
                let mut out = equal_degree(&split, d, rng);
                out.extend(equal_degree(&other.monic(), d, rng));
                return out;
            }
        }
    }
}

/// Monic irreducible factors of a squarefree polynomial, sorted by
/// (degree, coefficients).
pub fn factor_squarefree<R: Rng>(f: &FpPoly, rng: &mut R) -> Vec<FpPoly> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f) {
        out.extend(equal_degree(&g, d, rng));
    }
    out.sort_by(|a, b| (a.degree(), &a.coeffs).cmp(&(b.degree(), &b.coeffs)));
    out
}

pub(crate) fn is_zero_mod(z: &BigInt, p: u64) -> bool {
    (z % BigInt::from(p)).is_zero()
}
