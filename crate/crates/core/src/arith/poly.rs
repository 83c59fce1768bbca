use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rat::{format_rat, lcm_of_denominators, parse_rat, Rat};
use super::zpoly::ZPoly;
use crate::error::{Error, Result};

/// Univariate polynomial with exact rational coefficients, stored densely in
/// increasing degree order. The zero polynomial has no coefficients and its
/// degree is reported as `None`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    /// Coefficients given as base-10 `"p"` / `"p/q"` strings, lowest degree first.
    pub fn from_strs<S: AsRef<str>>(cs: &[S]) -> Result<Self> {
        Ok(Self::new(
            cs.iter()
                .map(|s| parse_rat(s.as_ref()))
                .collect::<Result<_>>()?,
        ))
    }

    pub fn to_strs(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rat).collect()
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> RatPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let lc = self.lc();
        RatPoly::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn scale(&self, c: &Rat) -> RatPoly {
        if c.is_zero() {
            return RatPoly::zero();
        }
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Splits into `content * primitive`, where `primitive` has coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn to_primitive_z(&self) -> (Rat, ZPoly) {
        if self.is_zero() {
            return (Rat::zero(), ZPoly::zero());
        }
        let den = lcm_of_denominators(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let z = ZPoly::new(ints);
        let mut content = z.content();
        if z.lc().is_negative() {
            content = -content;
        }
        let prim = z.div_scalar_exact(&content);
        (Rat::new(content, den), prim)
    }

    pub fn from_z(z: &ZPoly) -> RatPoly {
        RatPoly::new(z.coeffs().iter().cloned().map(Rat::from_integer).collect())
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, mut e: u32) -> RatPoly {
        let mut base = self.clone();
        let mut acc = RatPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient and remainder with `self = q * divisor + r`, `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return Ok((RatPoly::zero(), self.clone()));
        };
        let inv_lc = divisor.lc().recip();
        let mut rem = self.coeffs.clone();
        let mut q = vec![Rat::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let qi = top * &inv_lc;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &qi * c;
            }
            q[i] = qi;
        }
        rem.truncate(dd);
        Ok((RatPoly::new(q), RatPoly::new(rem)))
    }

    /// Exact quotient, failing with [`Error::InexactDivision`] on a nonzero remainder.
    pub fn div_exact(&self, divisor: &RatPoly) -> Result<RatPoly> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (cn, zn) = self.to_primitive_z();
        let (cd, zd) = divisor.to_primitive_z();
        // Gauss: a primitive divisor of an integer polynomial has an integer cofactor.
        let q = zn.div_exact(&zd).ok_or_else(|| {
            Error::InexactDivision(format!(
                "degree {:?} by degree {:?}",
                self.degree(),
                divisor.degree()
            ))
        })?;
        Ok(RatPoly::from_z(&q).scale(&(cn / cd)))
    }

    pub fn divides(&self, other: &RatPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        let (_, a) = self.to_primitive_z();
        let (_, b) = other.to_primitive_z();
        b.div_exact(&a).is_some()
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &RatPoly) -> RatPoly {
        self.coeffs.iter().rev().fold(RatPoly::zero(), |acc, c| {
            &(&acc * inner) + &RatPoly::constant(c.clone())
        })
    }
}

/// Monic greatest common divisor; `gcd(0, 0)` is zero.
pub fn poly_gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let (_, za) = a.to_primitive_z();
    let (_, zb) = b.to_primitive_z();
    RatPoly::from_z(&za.gcd(&zb)).monic()
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        // Multiply over ℤ and restore the scalar once.
        let (ca, za) = self.to_primitive_z();
        let (cb, zb) = other.to_primitive_z();
        RatPoly::from_z(&za.mul(&zb)).scale(&(ca * cb))
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatPoly {
            type Output = RatPoly;
            fn $m(self, other: RatPoly) -> RatPoly {
                (&self).$m(&other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                if abs.denom().is_one() {
                    write!(f, "{}", abs.numer())?;
                } else {
                    write!(f, "({})", format_rat(&abs))?;
                }
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}
