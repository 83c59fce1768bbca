//! Squarefree decomposition and complete factorization over ℚ.
//!
//! Factorization follows the classical Zassenhaus route: each squarefree
//! part is cleared to a primitive integer polynomial, factored modulo a
//! small prime, Hensel-lifted past twice the coefficient bound for factors,
//! and the lifted factors are recombined by subset search. Every reported
//! factor is irreducible because no smaller subset produced a true divisor.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::hensel::{hensel_lift, lifting_modulus};
use super::modp::{distinct_degree, equal_degree, is_zero_mod, FpPoly};
use super::poly::{poly_gcd, RatPoly};
use super::rat::Rat;
use super::zpoly::ZPoly;
use crate::error::{Error, Result};

/// Number of admissible primes examined before committing to the one with
/// the fewest modular factors.
const PRIME_CANDIDATES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rat,
    /// Monic irreducible factors with multiplicities, in [`factor_order`].
    pub factors: Vec<(RatPoly, u32)>,
}

impl Factorization {
    /// `unit * ∏ f^m`.
    pub fn reconstruct(&self) -> RatPoly {
        self.factors
            .iter()
            .fold(RatPoly::constant(self.unit.clone()), |acc, (f, m)| {
                &acc * &f.pow(*m)
            })
    }

    /// Degrees of the irreducible factors, repeated by multiplicity, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat_n(f.degree().unwrap_or(0), *m as usize))
            .collect();
        out.sort_unstable();
        out
    }
}

/// Total order on polynomials used everywhere output order matters: by
/// degree, then coefficient by coefficient from the constant term upward.
pub fn factor_order(a: &RatPoly, b: &RatPoly) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

fn small_primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start..).filter(|&n| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// A prime `p ≥ 5` not dividing `lc(f)` modulo which `f` stays squarefree.
fn squarefree_witness_prime(f: &ZPoly) -> Option<u64> {
    small_primes_from(5).take(40).find(|&p| {
        !is_zero_mod(&f.lc(), p) && FpPoly::from_zpoly(f, p).monic().is_squarefree()
    })
}

/// Squarefree parts of `monic(a)` with multiplicities, ascending by
/// multiplicity. Each part is monic; parts are pairwise coprime.
pub fn squarefree_decompose(a: &RatPoly) -> Result<Vec<(RatPoly, u32)>> {
    if a.is_zero() {
        return Err(Error::InvalidInput("squarefree decomposition of zero".into()));
    }
    let a = a.monic();
    if a.is_constant() {
        return Ok(Vec::new());
    }
    let (_, z) = a.to_primitive_z();
    // Squarefree modulo a prime preserving the degree implies squarefree over ℚ.
    if squarefree_witness_prime(&z).is_some() {
        return Ok(vec![(a, 1)]);
    }

    // Yun's algorithm.
    let mut out = Vec::new();
    let b = a.derivative();
    let c = poly_gcd(&a, &b);
    let mut w = a.div_exact(&c)?;
    let mut y = b.div_exact(&c)?;
    let mut z = &y - &w.derivative();
    let mut i = 1;
    while !w.is_constant() {
        let g = poly_gcd(&w, &z);
        if !g.is_constant() {
            out.push((g.clone(), i));
        }
        w = w.div_exact(&g)?;
        y = z.div_exact(&g)?;
        z = &y - &w.derivative();
        i += 1;
    }
    Ok(out)
}

/// Complete factorization into monic irreducibles over ℚ.
pub fn factor_over_q(a: &RatPoly) -> Result<Factorization> {
    if a.is_zero() {
        return Err(Error::InvalidInput("factorization of zero".into()));
    }
    let unit = a.lc();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decompose(a)? {
        let (_, z) = part.to_primitive_z();
        for g in factor_primitive_squarefree(&z) {
            factors.push((RatPoly::from_z(&g).monic(), mult));
        }
    }
    factors.sort_by(|(f, m), (g, n)| factor_order(f, g).then(m.cmp(n)));
    Ok(Factorization { unit, factors })
}

struct PrimeChoice {
    p: u64,
    factor_count: usize,
    ddf: Vec<(FpPoly, usize)>,
}

/// Bitset of degrees `0..=n` reachable as sums of sub-multisets of `degrees`.
fn subset_sums(degrees: impl IntoIterator<Item = usize>, n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for d in degrees {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

/// Irreducible factors over ℤ of a primitive squarefree polynomial with
/// positive leading coefficient, as primitive polynomials.
pub(crate) fn factor_primitive_squarefree(f: &ZPoly) -> Vec<ZPoly> {
    let Some(n) = f.degree() else {
        return Vec::new();
    };
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![f.clone()];
    }

    // Degrees any irreducible factor may have: subset sums of the modular
    // factor degrees, intersected over every prime examined.
    let mut allowed = vec![true; n + 1];
    let mut best: Option<PrimeChoice> = None;
    let mut examined = 0;
    for p in small_primes_from(5) {
        if examined == PRIME_CANDIDATES {
            break;
        }
        if is_zero_mod(&f.lc(), p) {
            continue;
        }
        let fp = FpPoly::from_zpoly(f, p).monic();
        if !fp.is_squarefree() {
            continue;
        }
        examined += 1;
        let ddf = distinct_degree(&fp);
        let factor_count: usize = ddf.iter().map(|(g, d)| g.degree().unwrap() / d).sum();
        if factor_count == 1 {
            return vec![f.clone()];
        }
        let sums = subset_sums(
            ddf.iter()
                .flat_map(|(g, d)| std::iter::repeat_n(*d, g.degree().unwrap() / d)),
            n,
        );
        for (a, s) in allowed.iter_mut().zip(sums) {
            *a &= s;
        }
        if best.as_ref().is_none_or(|b| factor_count < b.factor_count) {
            best = Some(PrimeChoice { p, factor_count, ddf });
        }
    }
    if (1..n).all(|d| !allowed[d]) {
        return vec![f.clone()];
    }
    let choice = best.expect("some admissible prime exists for a squarefree polynomial");

    let p = choice.p;
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let mut modular = Vec::new();
    for (g, d) in &choice.ddf {
        let mut split = equal_degree(g, *d, &mut rng);
        split.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
        modular.extend(split);
    }
    debug_assert_eq!(modular.len(), choice.factor_count);

    let modulus = lifting_modulus(p, &(coefficient_bound(f) * 2));
    let lifted = hensel_lift(f, &modular, p, &modulus);
    recombine(f, lifted, &modulus, &allowed)
}

/// Bound on the coefficients of `lc(f) * g / lc(g)` for any factor `g` of `f`:
/// `sqrt(n+1) * 2^n * ||f||_∞ * |lc(f)|`.
fn coefficient_bound(f: &ZPoly) -> BigInt {
    let n = f.degree().unwrap_or(0);
    let root = BigInt::from(n + 1).sqrt() + 1;
    root * (BigInt::one() << n) * f.max_norm() * f.lc().abs()
}

fn recombine(f: &ZPoly, lifted: Vec<ZPoly>, modulus: &BigInt, allowed: &[bool]) -> Vec<ZPoly> {
    let mut remaining = lifted;
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        let lc = rest.lc();
        let lc_const = &lc * rest.coeffs()[0].clone();
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let degree: usize = subset
                .iter()
                .map(|&i| remaining[i].degree().unwrap())
                .sum();
            if allowed[degree] && constant_term_test(&remaining, &subset, &lc, &lc_const, modulus)
            {
                let candidate = subset
                    .iter()
                    .fold(ZPoly::constant(lc.clone()), |acc, &i| {
                        acc.mul(&remaining[i]).symmetric_mod(modulus)
                    })
                    .primitive_part();
                if let Some(q) = rest.div_exact(&candidate) {
                    found.push(candidate);
                    rest = q.primitive_part();
                    for &i in subset.iter().rev() {
                        remaining.remove(i);
                    }
                    continue 'outer;
                }
            }
            if !next_combination(&mut subset, remaining.len()) {
                break;
            }
        }
        size += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        found.push(rest);
    }
    found
}

/// The constant term of `lc * ∏ u_i` (symmetric) must divide `lc * f(0)`.
fn constant_term_test(
    us: &[ZPoly],
    subset: &[usize],
    lc: &BigInt,
    lc_const: &BigInt,
    modulus: &BigInt,
) -> bool {
    if lc_const.is_zero() {
        return true;
    }
    let c = subset.iter().fold(lc.clone(), |acc, &i| {
        super::zpoly::symmetric_residue(&(acc * &us[i].coeffs()[0]), modulus)
    });
    !c.is_zero() && (lc_const % c).is_zero()
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
