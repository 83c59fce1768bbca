//! x-only division polynomials.
//!
//! `f_n` denotes ψ_n for odd n and ψ_n / (2y + a1 x + a3) for even n, so every
//! `f_n` is a polynomial in x alone. Writing `B = 4x^3 + b2 x^2 + 2 b4 x + b6`
//! for ψ_2^2, the doubling formulas become
//!
//! ```text
//! f_{2m+1} = f_{m+2} f_m^3 B^2 - f_{m-1} f_{m+1}^3   (m even)
//! f_{2m+1} = f_{m+2} f_m^3 - f_{m-1} f_{m+1}^3 B^2   (m odd)
//! f_{2m}   = f_m (f_{m+2} f_{m-1}^2 - f_{m-2} f_{m+1}^2)
//! ```

use std::collections::HashMap;

use super::cache::PsiCache;
use super::curve::WeierstrassCurve;
use crate::arith::{rat, RatPoly};
use crate::error::{Error, Result};

/// Memoized table of x-only division polynomials for one curve, optionally
/// backed by a [`PsiCache`].
pub struct DivisionPolynomials {
    curve: WeierstrassCurve,
    memo: HashMap<u64, RatPoly>,
    cache: Option<PsiCache>,
}

/// Indices at or below this are cheap enough to never touch the disk cache.
const CACHE_MIN_INDEX: u64 = 8;

impl DivisionPolynomials {
    pub fn new(curve: &WeierstrassCurve) -> Self {
        let mut memo = HashMap::new();
        memo.insert(0, RatPoly::zero());
        memo.insert(1, RatPoly::one());
        memo.insert(2, RatPoly::one());
        let (b2, b4, b6, b8) = (curve.b2(), curve.b4(), curve.b6(), curve.b8());
        memo.insert(
            3,
            RatPoly::new(vec![
                b8.clone(),
                rat(3) * b6,
                rat(3) * b4,
                b2.clone(),
                rat(3),
            ]),
        );
        memo.insert(
            4,
            RatPoly::new(vec![
                b4 * b8 - b6 * b6,
                b2 * b8 - b4 * b6,
                rat(10) * b8,
                rat(10) * b6,
                rat(5) * b4,
                b2.clone(),
                rat(2),
            ]),
        );
        Self {
            curve: curve.clone(),
            memo,
            cache: None,
        }
    }

    pub fn with_cache(mut self, cache: Option<PsiCache>) -> Self {
        self.cache = cache;
        self
    }

    pub fn curve(&self) -> &WeierstrassCurve {
        &self.curve
    }

    /// `B = ψ_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6`.
    pub fn psi2_squared(&self) -> RatPoly {
        let c = &self.curve;
        RatPoly::new(vec![c.b6().clone(), rat(2) * c.b4(), c.b2().clone(), rat(4)])
    }

    /// The x-only division polynomial `f_n`.
    pub fn get(&mut self, n: u64) -> &RatPoly {
        self.ensure(n);
        &self.memo[&n]
    }

    fn ensure(&mut self, n: u64) {
        if self.memo.contains_key(&n) {
            return;
        }
        if n > CACHE_MIN_INDEX {
            if let Some(hit) = self.cache.as_ref().and_then(|c| c.load(&self.curve, n)) {
                self.memo.insert(n, hit);
                return;
            }
        }
        let m = n / 2;
        let value = if n % 2 == 1 {
            for i in m - 1..=m + 2 {
                self.ensure(i);
            }
            let b2 = self.psi2_squared().pow(2);
            let f = |i: u64| &self.memo[&i];
            let lhs = f(m + 2) * &f(m).pow(3);
            let rhs = f(m - 1) * &f(m + 1).pow(3);
            if m.is_multiple_of(2) {
                &(&lhs * &b2) - &rhs
            } else {
                &lhs - &(&rhs * &b2)
            }
        } else {
            for i in m - 2..=m + 2 {
                self.ensure(i);
            }
            let f = |i: u64| &self.memo[&i];
            let inner = &(f(m + 2) * &f(m - 1).pow(2)) - &(f(m - 2) * &f(m + 1).pow(2));
            f(m) * &inner
        };
        if n > CACHE_MIN_INDEX {
            if let Some(cache) = &self.cache {
                // A failed write only costs a recomputation later.
                let _ = cache.store(&self.curve, n, &value);
            }
        }
        self.memo.insert(n, value);
    }

    /// Monic polynomial whose roots are the x-coordinates of the points of
    /// exact order `ell^k`.
    pub fn primitive(&mut self, ell: u64, k: u32) -> Result<RatPoly> {
        if k == 0 {
            return Err(Error::InvalidInput("primitive division polynomial needs k >= 1".into()));
        }
        if k == 1 {
            return Ok(if ell == 2 {
                self.psi2_squared().monic()
            } else {
                self.get(ell).monic()
            });
        }
        let top = ell.pow(k);
        let num = self.get(top).clone();
        let den = self.get(top / ell).clone();
        Ok(num.div_exact(&den)?.monic())
    }
}

/// `f_n` for a single index; see [`DivisionPolynomials`] for repeated use.
pub fn division_polynomial(curve: &WeierstrassCurve, n: u64) -> Result<RatPoly> {
    if n == 0 {
        return Err(Error::InvalidInput("division polynomial index must be >= 1".into()));
    }
    Ok(DivisionPolynomials::new(curve).get(n).clone())
}

/// Primitive ℓ^k division polynomial F_{ℓ^k} (monic).
pub fn primitive_division_poly(curve: &WeierstrassCurve, ell: u64, k: u32) -> Result<RatPoly> {
    DivisionPolynomials::new(curve).primitive(ell, k)
}
