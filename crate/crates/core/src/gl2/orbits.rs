use std::collections::HashMap;

use super::group::SubgroupSpec;
use super::mat::{MatMod, VectorMod};
use crate::error::Result;
use crate::fiber_tree::{FiberTree, NodeSpec};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Orbits of ⟨G_m, −I⟩ on the vectors of exact order ℓ^m, each given as its
/// sorted member list; orbits are ordered by size, then smallest member.
pub fn vector_orbits(spec: &SubgroupSpec, m: u32) -> Vec<Vec<VectorMod>> {
    let q = spec.ell().pow(m);
    let mut gens = spec.generators_at(m);
    gens.push(MatMod::neg_identity(q));
    let index = |v: &VectorMod| {
        let [x, y] = v.components();
        (x * q + y) as usize
    };
    let mut uf = UnionFind::new((q * q) as usize);
    let vectors: Vec<VectorMod> = (0..q * q)
        .map(|k| VectorMod::from_residues(q, [k / q, k % q]))
        .filter(|v| v.order() == q)
        .collect();
    for v in &vectors {
        for g in &gens {
            uf.union(index(v), index(&g.apply(v)));
        }
    }
    let mut by_root: HashMap<usize, Vec<VectorMod>> = HashMap::new();
    for v in vectors {
        by_root.entry(uf.find(index(&v))).or_default().push(v);
    }
    let mut orbits: Vec<Vec<VectorMod>> = by_root.into_values().collect();
    for o in &mut orbits {
        o.sort();
    }
    orbits.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a[0].cmp(&b[0])));
    orbits
}

/// The group-theoretic counterpart of the fiber tree: level-m nodes are the
/// orbits of ⟨G_m, −I⟩ on points of exact order ℓ^m, with degree the orbit size
/// up to sign, and the parent of orbit(v) is orbit(ℓv).
pub fn orbit_tree(spec: &SubgroupSpec, depth: u32) -> Result<FiberTree> {
    let ell = spec.ell();
    let mut levels: Vec<Vec<NodeSpec>> = Vec::with_capacity(depth as usize);
    let mut prev_owner: HashMap<VectorMod, usize> = HashMap::new();
    for m in 1..=depth {
        let q = ell.pow(m);
        let orbits = vector_orbits(spec, m);
        let mut owner = HashMap::new();
        let mut specs = Vec::with_capacity(orbits.len());
        for (i, orbit) in orbits.iter().enumerate() {
            let parent = if m == 1 {
                0
            } else {
                // v of order ℓ^m corresponds to ℓv, which is v mod ℓ^{m-1}.
                let down = orbit[0].reduce(q / ell).expect("divides");
                prev_owner[&down]
            };
            let size = orbit.len() as u64;
            specs.push(NodeSpec {
                degree: if q >= 3 { size / 2 } else { size },
                factor: None,
                parent,
            });
            for v in orbit {
                owner.insert(*v, i);
            }
        }
        levels.push(specs);
        prev_owner = owner;
    }
    let tree = FiberTree::assemble(None, ell, Some(spec.defining_exponent()), levels)?;
    tree.check_degree_sums()?;
    Ok(tree)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one_orbits() {
        let b = SubgroupSpec::borel(3).unwrap();
        assert_eq!(orbit_tree(&b, 1).unwrap().level_degrees(1), vec![1, 3]);
        let full = SubgroupSpec::full(3).unwrap();
        assert_eq!(orbit_tree(&full, 1).unwrap().level_degrees(1), vec![4]);
        let triv = SubgroupSpec::trivial(3, 1).unwrap();
        assert_eq!(orbit_tree(&triv, 1).unwrap().level_degrees(1), vec![1, 1, 1, 1]);
        assert_eq!(orbit_tree(&b, 0).unwrap().node_count(), 1);
    }

    #[test]
    fn two_torsion_is_not_halved() {
        let triv = SubgroupSpec::trivial(2, 1).unwrap();
        assert_eq!(orbit_tree(&triv, 1).unwrap().level_degrees(1), vec![1, 1, 1]);
    }

    #[test]
    fn orbits_partition_exact_order_vectors() {
        let b = SubgroupSpec::borel(3).unwrap();
        let t = orbit_tree(&b, 3).unwrap();
        for m in 1..=3u32 {
            let total: u64 = t.level_degrees(m).iter().sum();
            let q = 3u64.pow(m);
            assert_eq!(total, (q * q - q * q / 9) / 2);
        }
        assert!(t.branch_vertices().iter().all(|v| v.level < 1));
    }
}
