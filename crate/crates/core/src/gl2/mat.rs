use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A 2×2 matrix `[[a, b], [c, d]]` over ℤ/Nℤ, acting on column vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatMod {
    modulus: u64,
    e: [u64; 4],
}

/// A column vector `(x, y)` over ℤ/Nℤ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VectorMod {
    modulus: u64,
    c: [u64; 2],
}

fn residue(x: i64, m: u64) -> u64 {
    x.rem_euclid(m as i64) as u64
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn check_reduction(target: u64, source_modulus: u64) -> Result<()> {
    if target == 0 || !source_modulus.is_multiple_of(target) {
        return Err(Error::BadReduction {
            target,
            source_modulus,
        });
    }
    Ok(())
}

impl MatMod {
    pub fn new(modulus: u64, rows: [[i64; 2]; 2]) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        let [[a, b], [c, d]] = rows;
        Self {
            modulus,
            e: [a, b, c, d].map(|x| residue(x, modulus)),
        }
    }

    pub(crate) fn from_residues(modulus: u64, e: [u64; 4]) -> Self {
        Self {
            modulus,
            e: e.map(|x| x % modulus),
        }
    }

    pub fn identity(modulus: u64) -> Self {
        Self::from_residues(modulus, [1, 0, 0, 1])
    }

    pub fn neg_identity(modulus: u64) -> Self {
        Self::new(modulus, [[-1, 0], [0, -1]])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Entries in row-major order `[a, b, c, d]`.
    pub fn entries(&self) -> [u64; 4] {
        self.e
    }

    pub fn rows(&self) -> [[u64; 2]; 2] {
        let [a, b, c, d] = self.e;
        [[a, b], [c, d]]
    }

    pub fn first_column(&self) -> VectorMod {
        VectorMod::from_residues(self.modulus, [self.e[0], self.e[2]])
    }

    pub fn second_column(&self) -> VectorMod {
        VectorMod::from_residues(self.modulus, [self.e[1], self.e[3]])
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.modulus)
    }

    pub fn det(&self) -> u64 {
        let [a, b, c, d] = self.e;
        let m = self.modulus;
        (mul_mod(a, d, m) + m - mul_mod(b, c, m)) % m
    }

    pub fn is_invertible(&self) -> bool {
        self.det().gcd(&self.modulus) == 1
    }

    pub fn mul(&self, other: &MatMod) -> MatMod {
        assert_eq!(self.modulus, other.modulus, "moduli differ");
        let m = self.modulus;
        let [a, b, c, d] = self.e;
        let [p, q, r, s] = other.e;
        let dot = |x: u64, y: u64, z: u64, w: u64| (mul_mod(x, y, m) + mul_mod(z, w, m)) % m;
        MatMod {
            modulus: m,
            e: [dot(a, p, b, r), dot(a, q, b, s), dot(c, p, d, r), dot(c, q, d, s)],
        }
    }

    pub fn pow(&self, mut e: u64) -> MatMod {
        let mut base = *self;
        let mut acc = Self::identity(self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> Result<MatMod> {
        let m = self.modulus;
        let det = self.det() as i128;
        let g = det.extended_gcd(&(m as i128));
        if g.gcd != 1 {
            return Err(Error::NonInvertible {
                modulus: m,
                matrix: self.to_string(),
            });
        }
        let inv = g.x.rem_euclid(m as i128) as u64;
        let [a, b, c, d] = self.e;
        let neg = |x: u64| (m - x) % m;
        Ok(MatMod {
            modulus: m,
            e: [d, neg(b), neg(c), a].map(|x| mul_mod(x, inv, m)),
        })
    }

    /// Entrywise reduction to modulus `target`, which must divide the current one.
    pub fn reduce(&self, target: u64) -> Result<MatMod> {
        check_reduction(target, self.modulus)?;
        Ok(Self::from_residues(target, self.e))
    }

    /// The same residues read modulo a multiple of the modulus (the lift with
    /// entries in `0..N`).
    pub fn lift(&self, target: u64) -> Result<MatMod> {
        check_reduction(self.modulus, target)?;
        Ok(Self::from_residues(target, self.e))
    }

    pub fn apply(&self, v: &VectorMod) -> VectorMod {
        assert_eq!(self.modulus, v.modulus, "moduli differ");
        let m = self.modulus;
        let [a, b, c, d] = self.e;
        let [x, y] = v.c;
        VectorMod {
            modulus: m,
            c: [
                (mul_mod(a, x, m) + mul_mod(b, y, m)) % m,
                (mul_mod(c, x, m) + mul_mod(d, y, m)) % m,
            ],
        }
    }
}

impl fmt::Display for MatMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.e;
        write!(f, "[[{a}, {b}], [{c}, {d}]] mod {}", self.modulus)
    }
}

impl VectorMod {
    pub fn new(modulus: u64, x: i64, y: i64) -> Self {
        Self {
            modulus,
            c: [residue(x, modulus), residue(y, modulus)],
        }
    }

    pub(crate) fn from_residues(modulus: u64, c: [u64; 2]) -> Self {
        Self {
            modulus,
            c: c.map(|x| x % modulus),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn components(&self) -> [u64; 2] {
        self.c
    }

    pub fn neg(&self) -> VectorMod {
        Self::from_residues(self.modulus, self.c.map(|x| self.modulus - x))
    }

    pub fn scale(&self, k: u64) -> VectorMod {
        Self::from_residues(self.modulus, self.c.map(|x| mul_mod(x, k, self.modulus)))
    }

    pub fn reduce(&self, target: u64) -> Result<VectorMod> {
        check_reduction(target, self.modulus)?;
        Ok(Self::from_residues(target, self.c))
    }

    /// Additive order: N / gcd(x, y, N).
    pub fn order(&self) -> u64 {
        self.modulus / self.c[0].gcd(&self.c[1]).gcd(&self.modulus)
    }
}

impl fmt::Display for VectorMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) mod {}", self.c[0], self.c[1], self.modulus)
    }
}
