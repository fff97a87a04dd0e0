//! Exact engine for homoclinic Floer homology of planar homoclinic tangles.
//!
//! Layers, bottom up: [`rational`] and [`tangle`] hold the exact data model,
//! [`geometry`] computes intersections, Maslov indices, lunes and signs,
//! [`zmod`] does integer linear algebra, [`chain`] builds complexes and runs
//! the pruning procedure, [`limits`] handles direct systems over finite
//! inclusion posets, and [`dynamics`] grows tangles of a planar map and ships
//! the built-in example diagrams.

pub mod chain;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod limits;
pub mod rational;
pub mod tangle;
pub mod tangle_io;
pub mod zmod;

pub use error::{HftError, Result};
pub use geometry::{Coefficients, OrientationChoice, TangleGeometry};
pub use rational::{Rational, RationalPoint};
pub use tangle::{
    GeneratorSet, HomoclinicPoint, ManifoldArc, ManifoldKind, ManifoldParam, Orientation,
    TangleDiagram,
};

/// Engine version reported by front ends.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
