//! Exact integer linear algebra: Smith normal form, finitely generated
//! abelian groups, morphisms and homology of a pair of maps.

pub mod group;
pub mod homology;
pub mod matrix;
pub mod snf;

pub use group::{in_column_lattice, FgAbelianGroup, GroupMorphism, Presentation};
pub use homology::{homology_of_pair, induced_quotient_map, HomologyBasis};
pub use matrix::IntegerMatrix;
pub use snf::{gf2_normal_form, normal_form, smith_normal_form, Ring, Snf};
