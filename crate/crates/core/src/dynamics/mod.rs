//! Tangles of a concrete area-preserving map and the built-in examples.

pub mod examples;
pub mod growth;
pub mod manifest;
pub mod map;

pub use examples::{builtin_example, Meander, BUILTIN_NAMES};
pub use growth::{grow_tangle, image_correspondence, GrowthParams};
pub use manifest::{example_manifest, example_set, MANIFEST_VERSION};
pub use map::{apply_map, MapFamily, MapSpec};
