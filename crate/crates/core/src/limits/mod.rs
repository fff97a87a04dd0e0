//! Finite inclusion posets, direct systems and direct limits.

pub mod homology_system;
pub mod poset;
pub mod system;

pub use homology_system::{
    build_homology_system, check_chain_compatible, point_map, restriction_is_chain_map,
    ChainMapCheck, DegreeSystem, HomologySystem, SystemFile,
};
pub use poset::{check_poset_directed, Directedness, Poset};
pub use system::{box_vectors, image_group, quotient_exchange, DirectSystem, RelationMode};
