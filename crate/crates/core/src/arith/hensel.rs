//! Quadratic multifactor Hensel lifting of a factorization modulo p to a
//! factorization modulo p^(2^i).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::modp::FpPoly;
use super::zpoly::ZPoly;

fn reduce(f: &ZPoly, m: &BigInt) -> ZPoly {
    ZPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Division by a polynomial whose leading coefficient is 1 modulo `m`.
fn divrem_monic(a: &ZPoly, h: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let dh = h.degree().expect("division by zero polynomial");
    let a = reduce(a, m);
    let Some(da) = a.degree().filter(|&da| da >= dh) else {
        return (ZPoly::zero(), a);
    };
    let mut rem = a.into_coeffs();
    let mut q = vec![BigInt::zero(); da - dh + 1];
    for i in (0..=da - dh).rev() {
        let qi = rem[i + dh].mod_floor(m);
        if qi.is_zero() {
            continue;
        }
        for (j, c) in h.coeffs().iter().enumerate() {
            rem[i + j] = (&rem[i + j] - &qi * c).mod_floor(m);
        }
        q[i] = qi;
    }
    rem.truncate(dh);
    (ZPoly::new(q), reduce(&ZPoly::new(rem), m))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient not invertible");
    e.x.mod_floor(m)
}

struct Pair {
    g: ZPoly,
    h: ZPoly,
    s: ZPoly,
    t: ZPoly,
}

/// One quadratic step: from `f ≡ g h`, `s g + t h ≡ 1 (mod m)` to the same
/// congruences modulo `m2 = m^2`.
fn lift_step(f: &ZPoly, pair: Pair, m2: &BigInt) -> Pair {
    let Pair { g, h, s, t } = pair;
    let e = reduce(&f.sub(&g.mul(&h)), m2);
    let (q, r) = divrem_monic(&s.mul(&e), &h, m2);
    let g2 = reduce(&g.add(&t.mul(&e)).add(&q.mul(&g)), m2);
    let h2 = reduce(&h.add(&r), m2);
    let b = reduce(&s.mul(&g2).add(&t.mul(&h2)).sub(&ZPoly::one()), m2);
    let (c, d) = divrem_monic(&s.mul(&b), &h2, m2);
    let s2 = reduce(&s.sub(&d), m2);
    let t2 = reduce(&t.sub(&t.mul(&b)).sub(&c.mul(&g2)), m2);
    Pair { g: g2, h: h2, s: s2, t: t2 }
}

fn lift_tree(f: &ZPoly, factors: &[FpPoly], p: u64, modulus: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        return vec![reduce(f, modulus)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let prod = |fs: &[FpPoly]| fs.iter().fold(FpPoly::one(p), |acc, g| acc.mul(g));
    let (g0, h0) = (prod(left), prod(right));
    let (one, s0, t0) = g0.ext_gcd(&h0);
    debug_assert!(one.is_one());
    let mut pair = Pair {
        g: ZPoly::from(&g0),
        h: ZPoly::from(&h0),
        s: ZPoly::from(&s0),
        t: ZPoly::from(&t0),
    };
    let mut m = BigInt::from(p);
    while &m < modulus {
        m = &m * &m;
        pair = lift_step(f, pair, &m);
    }
    let mut out = lift_tree(&pair.g, left, p, modulus);
    out.extend(lift_tree(&pair.h, right, p, modulus));
    out
}

/// Smallest `p^(2^i)` strictly greater than `bound`.
pub fn lifting_modulus(p: u64, bound: &BigInt) -> BigInt {
    let mut m = BigInt::from(p);
    while &m <= bound {
        m = &m * &m;
    }
    m
}

/// Lifts monic pairwise-coprime `factors` with `f ≡ lc(f) ∏ factors (mod p)`
/// to monic `u_i` with `f ≡ lc(f) ∏ u_i (mod modulus)`, where `modulus` is a
/// power `p^(2^i)` as returned by [`lifting_modulus`]. Output order follows input.
pub fn hensel_lift(f: &ZPoly, factors: &[FpPoly], p: u64, modulus: &BigInt) -> Vec<ZPoly> {
    let inv = mod_inverse(&f.lc(), modulus);
    let monic = reduce(&f.scale(&inv), modulus);
    lift_tree(&monic, factors, p, modulus)
}
