//! Matrix groups over ℤ/ℓ^mℤ acting on column vectors, with P ↔ v = (1, 0)
//! and Q ↔ w = (0, 1). Subgroups of GL₂(ℤ_ℓ) are inputs, described by their
//! image at a defining level and taken to be the full preimage above it.

mod cosets;
mod group;
mod mat;
mod orbits;

pub use cosets::{
    coset_family, hypothesis_check, power_map_injective, power_map_well_defined,
    verify_raising_lemma, CosetFamily, PowerMapWitness,
};
pub use group::{close_under_product, gl2_order, SubgroupSpec, SubgroupSpecFile};
pub use mat::{MatMod, VectorMod};
pub use orbits::{orbit_tree, vector_orbits};
