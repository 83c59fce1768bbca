use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::mat::MatMod;
use crate::error::{Error, Result};
use crate::fiber_tree::is_prime;

/// The subgroup of GL₂(ℤ/Nℤ) generated by `generators`, in sorted order.
pub fn close_under_product(modulus: u64, generators: &[MatMod]) -> Result<Vec<MatMod>> {
    for g in generators {
        if g.modulus() != modulus {
            return Err(Error::InvalidInput(format!("generator {g} is not modulo {modulus}")));
        }
        if !g.is_invertible() {
            return Err(Error::NonInvertible {
                modulus,
                matrix: g.to_string(),
            });
        }
    }
    let id = MatMod::identity(modulus);
    let mut seen: HashSet<MatMod> = HashSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.mul(g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<MatMod> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// |GL₂(ℤ/ℓ^mℤ)| = ℓ^{4(m-1)} (ℓ² - 1)(ℓ² - ℓ).
pub fn gl2_order(ell: u64, m: u32) -> u128 {
    assert!(m >= 1);
    let l = ell as u128;
    l.pow(4 * (m - 1)) * (l * l - 1) * (l * l - l)
}

/// An open subgroup G of GL₂(ℤ_ℓ) given by its image at modulus ℓ^d: at
/// ℓ^m with m > d it is the full preimage of that image, at m < d its reduction.
#[derive(Clone, Debug)]
pub struct SubgroupSpec {
    ell: u64,
    defining_exponent: u32,
    generators: Vec<MatMod>,
    /// `images[m - 1]` is G_m for m = 1..=d.
    images: Vec<HashSet<MatMod>>,
    elements: Vec<MatMod>,
}

/// On-disk form: generator entries are integers read modulo ℓ^d.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupSpecFile {
    pub ell: u64,
    pub defining_exponent: u32,
    pub generators: Vec<[[i64; 2]; 2]>,
}

impl SubgroupSpec {
    pub fn from_generators(ell: u64, defining_exponent: u32, generators: Vec<MatMod>) -> Result<Self> {
        let modulus = Self::check_params(ell, defining_exponent)?;
        let elements = close_under_product(modulus, &generators)?;
        Ok(Self::with_elements(ell, defining_exponent, generators, elements))
    }

    /// Takes the group as an explicit element list, checking that it is one.
    pub fn from_elements(ell: u64, defining_exponent: u32, elements: Vec<MatMod>) -> Result<Self> {
        let modulus = Self::check_params(ell, defining_exponent)?;
        let set: HashSet<MatMod> = elements.iter().copied().collect();
        if !set.contains(&MatMod::identity(modulus)) {
            return Err(Error::InvalidInput("element set lacks the identity".into()));
        }
        for x in &set {
            if x.modulus() != modulus || !x.is_invertible() {
                return Err(Error::InvalidInput(format!("{x} is not in GL2 mod {modulus}")));
            }
            if let Some(y) = set.iter().find(|y| !set.contains(&x.mul(y))) {
                return Err(Error::InvalidInput(format!("not closed: {x} * {y}")));
            }
        }
        let mut elements: Vec<MatMod> = set.into_iter().collect();
        elements.sort();
        Ok(Self::with_elements(ell, defining_exponent, elements.clone(), elements))
    }

    pub fn full(ell: u64) -> Result<Self> {
        Self::from_generators(
            ell,
            1,
            vec![
                MatMod::new(ell, [[1, 1], [0, 1]]),
                MatMod::new(ell, [[1, 0], [1, 1]]),
                MatMod::new(ell, [[primitive_root(ell) as i64, 0], [0, 1]]),
            ],
        )
    }

    /// Invertible upper-triangular matrices modulo ℓ.
    pub fn borel(ell: u64) -> Result<Self> {
        let g = primitive_root(ell) as i64;
        Self::from_generators(
            ell,
            1,
            vec![
                MatMod::new(ell, [[1, 1], [0, 1]]),
                MatMod::new(ell, [[g, 0], [0, 1]]),
                MatMod::new(ell, [[1, 0], [0, g]]),
            ],
        )
    }

    /// The trivial group at ℓ^d, i.e. the kernel of reduction mod ℓ^d.
    pub fn trivial(ell: u64, defining_exponent: u32) -> Result<Self> {
        Self::from_generators(ell, defining_exponent, Vec::new())
    }

    pub fn from_file(file: &SubgroupSpecFile) -> Result<Self> {
        let modulus = Self::check_params(file.ell, file.defining_exponent)?;
        let gens = file.generators.iter().map(|&r| MatMod::new(modulus, r)).collect();
        Self::from_generators(file.ell, file.defining_exponent, gens)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(text)?)
    }

    pub fn to_file(&self) -> SubgroupSpecFile {
        SubgroupSpecFile {
            ell: self.ell,
            defining_exponent: self.defining_exponent,
            generators: self
                .generators
                .iter()
                .map(|g| g.rows().map(|r| r.map(|x| x as i64)))
                .collect(),
        }
    }

    fn check_params(ell: u64, d: u32) -> Result<u64> {
        if !is_prime(ell) {
            return Err(Error::InvalidInput(format!("{ell} is not prime")));
        }
        if d == 0 {
            return Err(Error::InvalidInput("defining exponent must be at least 1".into()));
        }
        ell.checked_pow(d)
            .filter(|&m| m < 1 << 31)
            .ok_or_else(|| Error::InvalidInput(format!("modulus {ell}^{d} is too large")))
    }

    fn with_elements(ell: u64, d: u32, generators: Vec<MatMod>, elements: Vec<MatMod>) -> Self {
        let images = (1..=d)
            .map(|m| {
                let q = ell.pow(m);
                elements.iter().map(|g| g.reduce(q).expect("divides")).collect()
            })
            .collect();
        Self {
            ell,
            defining_exponent: d,
            generators,
            images,
            elements,
        }
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn defining_exponent(&self) -> u32 {
        self.defining_exponent
    }

    pub fn generators(&self) -> &[MatMod] {
        &self.generators
    }

    /// G_d as a sorted list.
    pub fn elements_at_d(&self) -> &[MatMod] {
        &self.elements
    }

    /// m with modulus = ℓ^m.
    pub fn exponent_of(&self, modulus: u64) -> Result<u32> {
        let mut m = 0;
        let mut q = 1;
        while q < modulus {
            q *= self.ell;
            m += 1;
        }
        if q != modulus || m == 0 {
            return Err(Error::InvalidInput(format!(
                "{modulus} is not a positive power of {}",
                self.ell
            )));
        }
        Ok(m)
    }

    pub fn contains(&self, x: &MatMod) -> bool {
        let Ok(m) = self.exponent_of(x.modulus()) else {
            return false;
        };
        let d = self.defining_exponent;
        let at = m.min(d);
        let q = self.ell.pow(at);
        x.reduce(q).is_ok_and(|r| self.images[at as usize - 1].contains(&r))
    }

    /// |G_m|.
    pub fn order_at(&self, m: u32) -> u128 {
        assert!(m >= 1);
        let d = self.defining_exponent;
        if m <= d {
            self.images[m as usize - 1].len() as u128
        } else {
            (self.ell as u128).pow(4 * (m - d)) * self.elements.len() as u128
        }
    }

    /// G_m as a sorted list. Above d this enumerates the whole preimage, so
    /// it is meant for small moduli.
    pub fn elements_at(&self, m: u32) -> Vec<MatMod> {
        assert!(m >= 1);
        let d = self.defining_exponent;
        if m <= d {
            let mut v: Vec<MatMod> = self.images[m as usize - 1].iter().copied().collect();
            v.sort();
            return v;
        }
        let step = self.ell.pow(d);
        let q = self.ell.pow(m);
        let lifts = q / step;
        let mut out = Vec::with_capacity(self.order_at(m) as usize);
        for g in &self.elements {
            let e = g.entries();
            for k in 0..lifts.pow(4) {
                let ks = [k / lifts.pow(3), k / lifts.pow(2) % lifts, k / lifts % lifts, k % lifts];
                let mut r = e;
                for (x, t) in r.iter_mut().zip(ks) {
                    *x += t * step;
                }
                out.push(MatMod::from_residues(q, r));
            }
        }
        out.sort();
        out
    }

    /// A generating set for G_m: reduced generators at or below d; above d,
    /// lifted generators together with I + ℓ^k E_ij for d ≤ k < m.
    pub fn generators_at(&self, m: u32) -> Vec<MatMod> {
        let q = self.ell.pow(m);
        let d = self.defining_exponent;
        if m <= d {
            return self.generators.iter().map(|g| g.reduce(q).expect("divides")).collect();
        }
        let mut gens: Vec<MatMod> = self.generators.iter().map(|g| g.lift(q).expect("divides")).collect();
        for k in d..m {
            let t = self.ell.pow(k);
            for i in 0..4 {
                let mut e = [1, 0, 0, 1];
                e[i] += t;
                gens.push(MatMod::from_residues(q, e));
            }
        }
        gens
    }

    /// i_m = [GL₂(ℤ/ℓ^mℤ) : G_m] for m = 1..=m_max.
    pub fn index_sequence(&self, m_max: u32) -> Vec<u64> {
        (1..=m_max)
            .map(|m| (gl2_order(self.ell, m) / self.order_at(m)) as u64)
            .collect()
    }

    /// ℓ^n for the least n ≥ 1 (n ≥ 2 when ℓ = 2) with i_{n+1} = i_n, if
    /// one exists with n + 1 ≤ m_max.
    pub fn detect_level(&self, m_max: u32) -> Option<u64> {
        let idx = self.index_sequence(m_max);
        let start = if self.ell == 2 { 2 } else { 1 };
        (start..m_max)
            .find(|&n| idx[n as usize] == idx[n as usize - 1])
            .map(|n| self.ell.pow(n))
    }
}

fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let phi = p - 1;
    let factors: BTreeSet<u64> = (2..=phi).filter(|q| phi.is_multiple_of(*q) && is_prime(*q)).collect();
    (2..p)
        .find(|&g| {
            factors.iter().all(|&q| {
                let x = MatMod::new(p, [[g as i64, 0], [0, 1]]).pow(phi / q);
                x.entries()[0] != 1
            })
        })
        .expect("every prime has a primitive root")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closures() {
        assert_eq!(close_under_product(3, &[]).unwrap(), vec![MatMod::identity(3)]);
        let neg = close_under_product(9, &[MatMod::neg_identity(9)]).unwrap();
        assert_eq!(neg.len(), 2);
        assert_eq!(SubgroupSpec::borel(3).unwrap().elements_at_d().len(), 12);
        let singular = MatMod::new(3, [[1, 0], [0, 0]]);
        assert!(close_under_product(3, &[singular]).is_err());
    }

    #[test]
    fn orders_and_preimages() {
        let b = SubgroupSpec::borel(3).unwrap();
        assert_eq!(b.order_at(1), 12);
        assert_eq!(b.order_at(2), 972);
        assert_eq!(b.elements_at(2).len(), 972);
        assert!(b.elements_at(2).iter().all(|x| b.contains(x)));
        assert_eq!(SubgroupSpec::full(2).unwrap().elements_at(1).len(), 6);
        assert!(b.contains(&MatMod::new(27, [[10, 1], [18, 4]])));
        assert!(!b.contains(&MatMod::new(27, [[1, 0], [1, 1]])));
    }

    #[test]
    fn gl2_counts_by_enumeration() {
        for (ell, m) in [(2u64, 1u32), (3, 1), (2, 2), (2, 3), (3, 2)] {
            let q = ell.pow(m);
            let count = (0..q.pow(4))
                .map(|k| MatMod::from_residues(q, [k / q.pow(3), k / q.pow(2) % q, k / q % q, k % q]))
                .filter(MatMod::is_invertible)
                .count() as u128;
            assert_eq!(count, gl2_order(ell, m), "modulus {q}");
            assert_eq!(count, (ell as u128).pow(4 * (m - 1)) * gl2_order(ell, 1));
            assert_eq!(SubgroupSpec::full(ell).unwrap().order_at(m), count);
        }
    }

    #[test]
    fn generated_preimage_matches_enumeration() {
        for spec in [SubgroupSpec::borel(2).unwrap(), SubgroupSpec::trivial(2, 1).unwrap()] {
            let gens = spec.generators_at(3);
            let closed = close_under_product(8, &gens).unwrap();
            assert_eq!(closed, spec.elements_at(3));
        }
    }

    #[test]
    fn index_stabilization() {
        let full = SubgroupSpec::full(3).unwrap();
        assert_eq!(full.index_sequence(2), vec![1, 1]);
        assert_eq!(full.detect_level(3), Some(3));
        let b = SubgroupSpec::borel(3).unwrap();
        assert_eq!(b.index_sequence(3), vec![4, 4, 4]);
        assert_eq!(b.detect_level(3), Some(3));
        assert_eq!(b.detect_level(1), None);
    }

    #[test]
    fn index_refines_at_nine() {
        // Matrices mod 9 with determinant ±1: index 3 at level 9, full mod 3.
        let all = SubgroupSpec::full(3).unwrap().elements_at(2);
        let dets: Vec<MatMod> = all.into_iter().filter(|x| matches!(x.det(), 1 | 8)).collect();
        let g = SubgroupSpec::from_elements(3, 2, dets).unwrap();
        assert_eq!(g.index_sequence(3), vec![1, 3, 3]);
        assert_eq!(g.detect_level(3), Some(9));
    }

    #[test]
    fn spec_file_round_trip() {
        let text = r#"{"ell": 3, "defining_exponent": 1, "generators": [[[1,1],[0,1]], [[2,0],[0,1]], [[1,0],[0,2]]]}"#;
        let g = SubgroupSpec::from_json(text).unwrap();
        assert_eq!(g.order_at(1), 12);
        let again = SubgroupSpec::from_file(&g.to_file()).unwrap();
        assert_eq!(again.elements_at_d(), g.elements_at_d());
        assert!(SubgroupSpec::from_json(r#"{"ell": 4, "defining_exponent": 1, "generators": []}"#).is_err());
        assert!(SubgroupSpec::from_json(r#"{"ell": 3, "defining_exponent": 1, "generators": [[[0,0],[0,1]]]}"#).is_err());
    }
}
