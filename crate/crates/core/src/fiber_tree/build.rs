use std::thread;

use super::{FiberTree, NodeSpec};
use crate::arith::modp::FpPoly;
use crate::arith::zpoly::ZPoly;
use crate::arith::{factor_over_q, RatPoly};
use crate::elliptic::{mult_by_n_x_map, DivisionPolynomials, PsiCache, WeierstrassCurve};
use crate::error::{Error, Result};

/// Prime used to rule out non-parents before the exact divisibility check.
const FILTER_PRIME: u64 = 1_000_003;

#[derive(Clone, Debug, Default)]
pub struct TreeOptions {
    pub cache: Option<PsiCache>,
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn build_tree(
    curve: &WeierstrassCurve,
    ell: u64,
    depth: u32,
    certified_exponent: Option<u32>,
) -> Result<FiberTree> {
    build_tree_with(curve, ell, depth, certified_exponent, &TreeOptions::default())
}

/// Builds the depth-`depth` truncation of the ℓ-power fiber tree of `curve`.
///
/// The curve is taken to be without complex multiplication; that is the
/// caller's assertion and is not checked.
pub fn build_tree_with(
    curve: &WeierstrassCurve,
    ell: u64,
    depth: u32,
    certified_exponent: Option<u32>,
    opts: &TreeOptions,
) -> Result<FiberTree> {
    if !is_prime(ell) {
        return Err(Error::InvalidInput(format!("{ell} is not prime")));
    }
    let mut table = DivisionPolynomials::new(curve).with_cache(opts.cache.clone());
    let primitives = (1..=depth)
        .map(|k| table.primitive(ell, k))
        .collect::<Result<Vec<_>>>()?;

    let factored: Vec<Result<Vec<RatPoly>>> = thread::scope(|s| {
        let handles: Vec<_> = primitives
            .iter()
            .map(|f| s.spawn(|| level_factors(f)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("factoring thread panicked"))
            .collect()
    });
    let factored = factored.into_iter().collect::<Result<Vec<_>>>()?;

    let linker = if depth >= 2 {
        Some(Linker::new(&mut table, ell))
    } else {
        None
    };

    let mut levels: Vec<Vec<NodeSpec>> = Vec::with_capacity(depth as usize);
    let mut prev_z: Vec<ZPoly> = Vec::new();
    for (k, factors) in factored.into_iter().enumerate() {
        let zs: Vec<ZPoly> = factors.iter().map(|f| f.to_primitive_z().1).collect();
        let mut specs = Vec::with_capacity(factors.len());
        for (i, (factor, z)) in factors.into_iter().zip(&zs).enumerate() {
            let parent = match &linker {
                Some(linker) if k > 0 => {
                    let prev = &levels[k - 1];
                    linker.find_parent(z, &prev_z, prev, (k + 1, i))?
                }
                _ => 0,
            };
            specs.push(NodeSpec {
                degree: factor.degree().unwrap_or(0) as u64,
                factor: Some(factor),
                parent,
            });
        }
        levels.push(specs);
        prev_z = zs;
    }

    let tree = FiberTree::assemble(Some(curve.clone()), ell, certified_exponent, levels)?;
    tree.check_degree_sums()?;
    if let Some(d) = certified_exponent {
        for k in d..depth {
            if let Some(n) = tree.level(k).iter().find(|n| n.children.len() > 1) {
                return Err(Error::InvalidInput(format!(
                    "node {} on level {k} branches, contradicting l-adic exponent {d}",
                    n.id
                )));
            }
        }
    }
    Ok(tree)
}

fn level_factors(f: &RatPoly) -> Result<Vec<RatPoly>> {
    let fac = factor_over_q(f)?;
    fac.factors
        .into_iter()
        .map(|(g, m)| {
            if m == 1 {
                Ok(g)
            } else {
                Err(Error::Linkage(format!(
                    "repeated factor {g} (multiplicity {m}) in a primitive division polynomial"
                )))
            }
        })
        .collect()
}

/// Parent search through ξ_ℓ, with both map polynomials cleared to ℤ by a
/// common factor (which leaves divisibility of the cleared composition intact).
struct Linker {
    num: ZPoly,
    den: ZPoly,
}

impl Linker {
    fn new(table: &mut DivisionPolynomials, ell: u64) -> Self {
        let xi = mult_by_n_x_map(table, ell);
        let scale = crate::arith::lcm_of_denominators(
            xi.numerator.coeffs().iter().chain(xi.denominator.coeffs()),
        );
        let clear = |p: &RatPoly| {
            ZPoly::new(
                p.coeffs()
                    .iter()
                    .map(|c| c.numer() * (&scale / c.denom()))
                    .collect(),
            )
        };
        Self {
            num: clear(&xi.numerator),
            den: clear(&xi.denominator),
        }
    }

    /// `Σ h_i num^i den^(deg h - i)` over ℤ.
    fn cleared_compose(&self, h: &ZPoly) -> ZPoly {
        let cs = h.coeffs();
        let Some(d) = h.degree() else {
            return ZPoly::zero();
        };
        let mut acc = ZPoly::constant(cs[d].clone());
        let mut den_pow = ZPoly::one();
        for i in (0..d).rev() {
            den_pow = den_pow.mul(&self.den);
            acc = acc.mul(&self.num).add(&den_pow.scale(&cs[i]));
        }
        acc
    }

    /// Same composition reduced modulo `g` and [`FILTER_PRIME`]; nonzero
    /// proves that `g` does not divide it over ℤ.
    fn compose_mod(&self, h: &ZPoly, g: &FpPoly) -> FpPoly {
        let p = g.modulus();
        let num = FpPoly::from_zpoly(&self.num, p).rem(g);
        let den = FpPoly::from_zpoly(&self.den, p).rem(g);
        let hp = FpPoly::from_zpoly(h, p).coeffs().to_vec();
        let Some(d) = hp.len().checked_sub(1) else {
            return FpPoly::zero(p);
        };
        let mut acc = FpPoly::new(p, vec![hp[d]]);
        let mut den_pow = FpPoly::one(p);
        for i in (0..d).rev() {
            den_pow = den_pow.mul(&den).rem(g);
            acc = acc.mul(&num).add(&den_pow.scale(hp[i])).rem(g);
        }
        acc
    }

    fn find_parent(
        &self,
        child: &ZPoly,
        candidates: &[ZPoly],
        candidate_specs: &[NodeSpec],
        (level, index): (usize, usize),
    ) -> Result<usize> {
        let gp = FpPoly::from_zpoly(child, FILTER_PRIME);
        let mut order: Vec<usize> = (0..candidates.len()).collect();
        order.sort_by(|&a, &b| candidate_specs[b].degree.cmp(&candidate_specs[a].degree));
        let mut parents = Vec::new();
        for j in order {
            let h = &candidates[j];
            if gp.degree().unwrap_or(0) > 0 && !self.compose_mod(h, &gp).is_zero() {
                continue;
            }
            if self.cleared_compose(h).div_exact(child).is_some() {
                parents.push(j);
            }
        }
        match parents.as_slice() {
            [j] => Ok(*j),
            [] => Err(Error::Linkage(format!("node {level}:{index} has no parent"))),
            many => Err(Error::Linkage(format!(
                "node {level}:{index} has {} candidate parents",
                many.len()
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiber_tree::{FiberLevel, NodeId};

    #[test]
    fn graph_curve_depth_two() {
        let e = WeierstrassCurve::from_ints([0, 0, 0, 21, 26]).unwrap();
        let t = build_tree(&e, 3, 2, Some(2)).unwrap();
        assert_eq!(t.level_degrees(1), vec![1, 1, 2]);
        assert_eq!(t.level_degrees(2), vec![3, 3, 3, 9, 18]);
        assert_eq!(t.node_count(), 9);
        let mut levels: Vec<u64> = t.fiber_levels().iter().map(|f| f.level.value()).collect();
        levels.sort_unstable();
        assert_eq!(levels, vec![3, 3, 9, 9, 9]);
        assert!(t.fiber_levels().iter().all(|f| f.level.is_certified()));
    }

    #[test]
    fn depth_zero_is_root_only() {
        let e = WeierstrassCurve::from_ints([0, 0, 0, 21, 26]).unwrap();
        let t = build_tree(&e, 3, 0, None).unwrap();
        assert_eq!(t.node_count(), 1);
        assert_eq!(t.fiber_levels()[0].path, vec![NodeId::ROOT]);
        assert_eq!(t.fiber_levels()[0].level, FiberLevel::Observed(3));
    }

    #[test]
    fn rejects_composite_ell() {
        let e = WeierstrassCurve::from_ints([0, 0, 0, 21, 26]).unwrap();
        assert!(build_tree(&e, 4, 1, None).is_err());
    }

    #[test]
    fn contradictory_exponent_is_rejected() {
        // The graph curve branches at level 1, so exponent 1 is impossible.
        let e = WeierstrassCurve::from_ints([0, 0, 0, 21, 26]).unwrap();
        assert!(matches!(build_tree(&e, 3, 2, Some(1)), Err(Error::InvalidInput(_))));
    }
}
