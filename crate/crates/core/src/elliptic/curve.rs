use std::fmt;

use num_traits::Zero;
use sha2::{Digest, Sha256};

use crate::arith::{format_rat, parse_rat, rat, Rat};
use crate::error::{Error, Result};

/// A nonsingular Weierstrass model
/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over ℚ.
#[derive(Clone, PartialEq, Eq)]
pub struct WeierstrassCurve {
    a: [Rat; 5],
    b2: Rat,
    b4: Rat,
    b6: Rat,
    b8: Rat,
    discriminant: Rat,
    j: Rat,
}

impl WeierstrassCurve {
    pub fn new(a1: Rat, a2: Rat, a3: Rat, a4: Rat, a6: Rat) -> Result<Self> {
        let b2 = &a1 * &a1 + rat(4) * &a2;
        let b4 = rat(2) * &a4 + &a1 * &a3;
        let b6 = &a3 * &a3 + rat(4) * &a6;
        let b8 = &a1 * &a1 * &a6 + rat(4) * &a2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3
            - &a4 * &a4;
        let discriminant = -(&b2 * &b2 * &b8) - rat(8) * &b4 * &b4 * &b4 - rat(27) * &b6 * &b6
            + rat(9) * &b2 * &b4 * &b6;
        if discriminant.is_zero() {
            return Err(Error::SingularCurve);
        }
        let c4 = &b2 * &b2 - rat(24) * &b4;
        let j = &c4 * &c4 * &c4 / &discriminant;
        Ok(Self {
            a: [a1, a2, a3, a4, a6],
            b2,
            b4,
            b6,
            b8,
            discriminant,
            j,
        })
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = a.map(rat);
        Self::new(a1, a2, a3, a4, a6)
    }

    /// a-invariants as `"p"` / `"p/q"` strings.
    pub fn from_strs<S: AsRef<str>>(a: &[S]) -> Result<Self> {
        if a.len() != 5 {
            return Err(Error::InvalidInput(format!(
                "expected 5 a-invariants, got {}",
                a.len()
            )));
        }
        let v = a
            .iter()
            .map(|s| parse_rat(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let [a1, a2, a3, a4, a6]: [Rat; 5] = v.try_into().unwrap();
        Self::new(a1, a2, a3, a4, a6)
    }

    /// `[a1, a2, a3, a4, a6]`.
    pub fn a_invariants(&self) -> &[Rat; 5] {
        &self.a
    }

    pub fn a_invariant_strs(&self) -> [String; 5] {
        self.a.clone().map(|r| format_rat(&r))
    }

    pub fn b2(&self) -> &Rat {
        &self.b2
    }
    pub fn b4(&self) -> &Rat {
        &self.b4
    }
    pub fn b6(&self) -> &Rat {
        &self.b6
    }
    pub fn b8(&self) -> &Rat {
        &self.b8
    }

    pub fn discriminant(&self) -> &Rat {
        &self.discriminant
    }

    pub fn j_invariant(&self) -> &Rat {
        &self.j
    }

    /// Stable hex digest of the a-invariants, used to key on-disk caches.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.a_invariant_strs().join(",").as_bytes());
        hex::encode(&h.finalize()[..16])
    }
}

impl fmt::Debug for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeierstrassCurve{:?}", self.a_invariant_strs())
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.a_invariant_strs().join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_frac;

    #[test]
    fn j_invariant_of_54b2() {
        let e = WeierstrassCurve::from_ints([1, -1, 1, -14, 29]).unwrap();
        assert_eq!(e.j_invariant(), &rat_frac(-1167051, 512));
    }

    #[test]
    fn counterexample_curve_invariants() {
        // y^2 = x^3 - 2x + 1: b2 = 0, b4 = -4, b6 = 4, b8 = -4.
        // Δ = -8(-4)^3 - 27*4^2 = 512 - 432 = 80, c4 = 96, j = 96^3/80 = 55296/5.
        let e = WeierstrassCurve::from_ints([0, 0, 0, -2, 1]).unwrap();
        assert_eq!(e.b4(), &rat(-4));
        assert_eq!(e.b6(), &rat(4));
        assert_eq!(e.b8(), &rat(-4));
        assert_eq!(e.discriminant(), &rat(80));
        assert_eq!(e.j_invariant(), &rat_frac(55296, 5));
        // 4 b8 = b2 b6 - b4^2
        assert_eq!(rat(4) * e.b8(), e.b2() * e.b6() - e.b4() * e.b4());
    }

    #[test]
    fn cusp_is_singular() {
        assert!(matches!(
            WeierstrassCurve::from_ints([0, 0, 0, 0, 0]),
            Err(Error::SingularCurve)
        ));
        // node y^2 = x^3 - 3x + 2 = (x-1)^2 (x+2)
        assert!(WeierstrassCurve::from_ints([0, 0, 0, -3, 2]).is_err());
    }

    #[test]
    fn rational_inputs() {
        let e = WeierstrassCurve::from_strs(&["0", "0", "0", "1/2", "-3/4"]).unwrap();
        assert_eq!(e.a_invariant_strs()[3], "1/2");
        assert!(WeierstrassCurve::from_strs(&["0", "0"]).is_err());
    }

    #[test]
    fn fingerprint_is_stable_and_distinct() {
        let a = WeierstrassCurve::from_ints([0, 0, 0, 21, 26]).unwrap();
        let b = WeierstrassCurve::from_ints([0, 0, 0, -2, 1]).unwrap();
        assert_eq!(a.fingerprint(), a.clone().fingerprint());
        assert_ne!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.fingerprint().len(), 32);
    }
}
