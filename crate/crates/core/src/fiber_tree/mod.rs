//! The tree of closed points on X₁(ℓ^k) lying over a fixed rational
//! j-invariant, with direct lifting as the edge relation.
//!
//! Level-k vertices are the irreducible factors of the primitive division
//! polynomial F_{ℓ^k}; a factor's parent is the factor one level down that
//! vanishes on ξ_ℓ of its roots. The same shape is produced group-theoretically
//! by the orbit computation in `gl2`, which is what makes the two routes comparable.

mod build;
mod export;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::arith::{rat, Rat, RatPoly};
use crate::elliptic::WeierstrassCurve;
use crate::error::{Error, Result};

pub(crate) use build::is_prime;
pub use build::{build_tree, build_tree_with, TreeOptions};
pub use export::{ExportFormat, TreeDocument};

/// Identifier `"k:i"`: level k, position i in that level's sorted node list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId {
    pub level: u32,
    pub index: usize,
}

impl NodeId {
    pub const ROOT: NodeId = NodeId { level: 0, index: 0 };
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.level, self.index)
    }
}

impl FromStr for NodeId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad node id {s:?}"));
        let (k, i) = s.split_once(':').ok_or_else(bad)?;
        Ok(NodeId {
            level: k.parse().map_err(|_| bad())?,
            index: i.parse().map_err(|_| bad())?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberNode {
    pub id: NodeId,
    pub degree: u64,
    /// Irreducible factor of F_{ℓ^k}; `None` for the root and for orbit-tree nodes.
    pub factor: Option<RatPoly>,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
}

/// One node of a level as handed to [`FiberTree::assemble`].
#[derive(Clone, Debug)]
pub struct NodeSpec {
    pub degree: u64,
    pub factor: Option<RatPoly>,
    /// Index into the previous level (ignored on level 1, which hangs off the root).
    pub parent: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberTree {
    curve: Option<WeierstrassCurve>,
    ell: u64,
    depth: u32,
    certified_exponent: Option<u32>,
    levels: Vec<Vec<FiberNode>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberLevel {
    /// ℓ^m, certified by a known ℓ-adic level not exceeding the tree depth.
    Certified(u64),
    /// ℓ^m as observed within the truncated tree.
    Observed(u64),
}

impl FiberLevel {
    pub fn value(&self) -> u64 {
        match *self {
            FiberLevel::Certified(v) | FiberLevel::Observed(v) => v,
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, FiberLevel::Certified(_))
    }
}

impl fmt::Display for FiberLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberLevel::Certified(v) => write!(f, "{v}"),
            FiberLevel::Observed(v) => write!(f, "observed:{v}"),
        }
    }
}

impl FromStr for FiberLevel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad fiber level {s:?}"));
        match s.strip_prefix("observed:") {
            Some(v) => Ok(FiberLevel::Observed(v.parse().map_err(|_| bad())?)),
            None => Ok(FiberLevel::Certified(s.parse().map_err(|_| bad())?)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub path: Vec<NodeId>,
    pub level: FiberLevel,
}

/// Degree of the natural map X₁(ab) → X₁(a), (E, P) ↦ (E, bP):
/// `c · b² · ∏_{p | b, p ∤ a} (1 - 1/p²)` with `c = 1/2` when `a ≤ 2 < ab`.
pub fn map_degree(a: u64, b: u64) -> Rat {
    assert!(a >= 1 && b >= 1, "map_degree takes positive integers");
    let mut deg = Rat::from_integer(BigInt::from(b) * BigInt::from(b));
    let mut rest = b;
    let mut p = 2;
    while rest > 1 {
        if p * p > rest {
            p = rest;
        }
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            if !a.is_multiple_of(p) {
                let p2 = rat((p * p) as i64);
                deg = deg * (&p2 - Rat::one()) / p2;
            }
        }
        p += 1;
    }
    if a <= 2 && a * b > 2 {
        deg /= rat(2);
    }
    deg
}

/// Degree of X₁(ℓ^(k+1)) → X₁(ℓ^k).
pub fn step_degree(ell: u64, k: u32) -> u64 {
    let d = map_degree(ell.pow(k), ell);
    debug_assert!(d.is_integer());
    d.to_integer().to_u64().expect("step degree fits in u64")
}

/// Per level, the sorted list of `(degree, sorted child degrees)` over its
/// nodes. Two trees with equal signatures have the same degree multisets per
/// level and the same parent→children degree maps.
pub type DegreeSignature = Vec<Vec<(u64, Vec<u64>)>>;

impl FiberTree {
    /// Builds a tree from per-level node lists. `levels[0]` is level 1; each
    /// node's `parent` indexes into the preceding level.
    pub fn assemble(
        curve: Option<WeierstrassCurve>,
        ell: u64,
        certified_exponent: Option<u32>,
        levels: Vec<Vec<NodeSpec>>,
    ) -> Result<Self> {
        let depth = levels.len() as u32;
        let mut out: Vec<Vec<FiberNode>> = vec![vec![FiberNode {
            id: NodeId::ROOT,
            degree: 1,
            factor: None,
            parent: None,
            children: Vec::new(),
        }]];
        for (k, specs) in levels.into_iter().enumerate() {
            let level = k as u32 + 1;
            let mut nodes = Vec::with_capacity(specs.len());
            for (i, spec) in specs.into_iter().enumerate() {
                let parent_index = if level == 1 { 0 } else { spec.parent };
                let parent_level = &mut out[k];
                let parent = parent_level.get_mut(parent_index).ok_or_else(|| {
                    Error::Linkage(format!("node {level}:{i} names missing parent {parent_index}"))
                })?;
                let id = NodeId { level, index: i };
                parent.children.push(id);
                nodes.push(FiberNode {
                    id,
                    degree: spec.degree,
                    factor: spec.factor,
                    parent: Some(parent.id),
                    children: Vec::new(),
                });
            }
            out.push(nodes);
        }
        Ok(Self {
            curve,
            ell,
            depth,
            certified_exponent,
            levels: out,
        })
    }

    pub fn curve(&self) -> Option<&WeierstrassCurve> {
        self.curve.as_ref()
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn certified_exponent(&self) -> Option<u32> {
        self.certified_exponent
    }

    /// Whether fiber levels are certified: an exponent is known and the
    /// tree reaches it.
    pub fn is_certified(&self) -> bool {
        self.certified_exponent.is_some_and(|d| self.depth >= d)
    }

    pub fn root(&self) -> &FiberNode {
        &self.levels[0][0]
    }

    pub fn level(&self, k: u32) -> &[FiberNode] {
        self.levels.get(k as usize).map_or(&[], Vec::as_slice)
    }

    pub fn nodes(&self) -> impl Iterator<Item = &FiberNode> {
        self.levels.iter().flatten()
    }

    pub fn node_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn node(&self, id: NodeId) -> Result<&FiberNode> {
        self.levels
            .get(id.level as usize)
            .and_then(|l| l.get(id.index))
            .ok_or_else(|| Error::UnknownNode(id.to_string()))
    }

    /// Sorted degrees of the nodes at level k.
    pub fn level_degrees(&self, k: u32) -> Vec<u64> {
        let mut d: Vec<u64> = self.level(k).iter().map(|n| n.degree).collect();
        d.sort_unstable();
        d
    }

    /// Checks Σ children degrees = step_degree · degree at every node above
    /// the last level.
    pub fn check_degree_sums(&self) -> Result<()> {
        for k in 0..self.depth {
            let step = step_degree(self.ell, k);
            for node in self.level(k) {
                let children: u64 = node
                    .children
                    .iter()
                    .map(|&c| self.levels[c.level as usize][c.index].degree)
                    .sum();
                if children != step * node.degree {
                    return Err(Error::DegreeSumViolation {
                        node: node.id.to_string(),
                        children,
                        expected: step * node.degree,
                    });
                }
            }
        }
        Ok(())
    }

    /// Nodes on levels `0..depth` with at least two children.
    pub fn branch_vertices(&self) -> Vec<NodeId> {
        (0..self.depth)
            .flat_map(|k| self.level(k))
            .filter(|n| n.children.len() >= 2)
            .map(|n| n.id)
            .collect()
    }

    /// Whether the node attains the largest degree possible over its parent.
    pub fn max_growth_check(&self, id: NodeId) -> Result<bool> {
        let node = self.node(id)?;
        let parent = node.parent.ok_or_else(|| {
            Error::InvalidInput(format!("node {id} has no parent"))
        })?;
        let parent = self.node(parent)?;
        Ok(node.degree == step_degree(self.ell, id.level - 1) * parent.degree)
    }

    /// One fiber per leaf path. A fiber's level is ℓ^m for the smallest
    /// m ≥ 1 such that every path vertex from level m up to the second-last
    /// level has exactly one child.
    pub fn fiber_levels(&self) -> Vec<Fiber> {
        let certified = self.is_certified();
        self.level(self.depth)
            .iter()
            .map(|leaf| {
                let mut path = vec![leaf.id];
                let mut cur = leaf;
                while let Some(p) = cur.parent {
                    cur = &self.levels[p.level as usize][p.index];
                    path.push(cur.id);
                }
                path.reverse();
                let mut m = self.depth;
                while m > 0 {
                    let prev = path[m as usize - 1];
                    if self.levels[prev.level as usize][prev.index].children.len() != 1 {
                        break;
                    }
                    m -= 1;
                }
                let value = self.ell.pow(m.max(1));
                Fiber {
                    path,
                    level: if certified {
                        FiberLevel::Certified(value)
                    } else {
                        FiberLevel::Observed(value)
                    },
                }
            })
            .collect()
    }

    /// Degrees at level `n ≥ depth`, extrapolated from the last level by the
    /// step degrees. Requires a certified tree.
    pub fn predict_degrees(&self, n: u32) -> Result<Vec<u64>> {
        if !self.is_certified() {
            return Err(Error::Uncertified(match self.certified_exponent {
                None => "no l-adic level exponent supplied".into(),
                Some(d) => format!("depth {} is below the l-adic exponent {d}", self.depth),
            }));
        }
        if n < self.depth {
            return Err(Error::InvalidInput(format!(
                "prediction level {n} is below the tree depth {}",
                self.depth
            )));
        }
        let factor: u64 = (self.depth..n).map(|k| step_degree(self.ell, k)).product();
        Ok(self
            .level_degrees(self.depth)
            .into_iter()
            .map(|d| d * factor)
            .collect())
    }

    pub fn degree_signature(&self) -> DegreeSignature {
        self.levels
            .iter()
            .map(|nodes| {
                let mut sig: Vec<(u64, Vec<u64>)> = nodes
                    .iter()
                    .map(|n| {
                        let mut cs: Vec<u64> = n
                            .children
                            .iter()
                            .map(|c| self.levels[c.level as usize][c.index].degree)
                            .collect();
                        cs.sort_unstable();
                        (n.degree, cs)
                    })
                    .collect();
                sig.sort();
                sig
            })
            .collect()
    }

    fn count_entries(l: &[(u64, Vec<u64>)]) -> BTreeMap<&(u64, Vec<u64>), i64> {
        let mut m = BTreeMap::new();
        for e in l {
            *m.entry(e).or_default() += 1;
        }
        m
    }

    /// Human-readable differences between the degree signatures of two trees;
    /// empty when they agree.
    pub fn signature_diff(&self, other: &FiberTree) -> Vec<String> {
        let (a, b) = (self.degree_signature(), other.degree_signature());
        let mut out = Vec::new();
        if a.len() != b.len() {
            out.push(format!("depth differs: {} vs {}", a.len() - 1, b.len() - 1));
        }
        for (k, (la, lb)) in a.iter().zip(&b).enumerate() {
            if la == lb {
                continue;
            }
            let (ca, cb) = (Self::count_entries(la), Self::count_entries(lb));
            for (e, n) in &ca {
                let d = n - cb.get(e).copied().unwrap_or(0);
                if d > 0 {
                    out.push(format!("level {k}: -{d} x degree {} -> children {:?}", e.0, e.1));
                }
            }
            for (e, n) in &cb {
                let d = n - ca.get(e).copied().unwrap_or(0);
                if d > 0 {
                    out.push(format!("level {k}: +{d} x degree {} -> children {:?}", e.0, e.1));
                }
            }
        }
        out
    }
}
