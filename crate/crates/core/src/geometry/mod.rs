//! Exact planar geometry of a tangle diagram: intersections, Maslov
//! indices, lunes, signs, hearts and point classification.

pub mod build;
pub mod classify;
pub mod hearts;
pub mod intersect;
pub mod lune;
pub mod maslov;
pub mod predicates;
pub mod signs;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::error::{HftError, Result};
use crate::tangle::TangleDiagram;

pub use classify::PointClass;
pub use intersect::{compute_intersections, Crossing};
pub use lune::{loop_subdivision, LoopSubdivision};
pub use maslov::{maslov_abs, maslov_rel};
pub use signs::SignTable;

/// Which orientation of the unstable manifold serves as `o_u`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrientationChoice {
    /// The orientation stored with the unstable arc.
    #[default]
    #[serde(rename = "u+")]
    UPlus,
    /// Its reverse.
    #[serde(rename = "u-")]
    UMinus,
}

impl OrientationChoice {
    pub fn sign(self) -> i64 {
        match self {
            OrientationChoice::UPlus => 1,
            OrientationChoice::UMinus => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            OrientationChoice::UPlus => OrientationChoice::UMinus,
            OrientationChoice::UMinus => OrientationChoice::UPlus,
        }
    }
}

impl fmt::Display for OrientationChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrientationChoice::UPlus => "u+",
            OrientationChoice::UMinus => "u-",
        })
    }
}

impl FromStr for OrientationChoice {
    type Err = HftError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "u+" => Ok(OrientationChoice::UPlus),
            "u-" => Ok(OrientationChoice::UMinus),
            _ => Err(HftError::Parse(format!(
                "orientation must be u+ or u-, got `{s}`"
            ))),
        }
    }
}

/// Coefficient ring of the chain complexes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coefficients {
    #[default]
    #[serde(rename = "z")]
    Integer,
    #[serde(rename = "z2")]
    Mod2,
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coefficients::Integer => "z",
            Coefficients::Mod2 => "z2",
        })
    }
}

impl FromStr for Coefficients {
    type Err = HftError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "z" => Ok(Coefficients::Integer),
            "z2" => Ok(Coefficients::Mod2),
            _ => Err(HftError::Parse(format!(
                "coefficients must be z or z2, got `{s}`"
            ))),
        }
    }
}

/// Geometric queries on one diagram, with a memo of lune decisions.
///
/// Safe to share between threads; results do not depend on query order.
pub struct TangleGeometry<'a> {
    diagram: &'a TangleDiagram,
    lunes: RwLock<HashMap<(usize, usize), bool>>,
}

impl<'a> TangleGeometry<'a> {
    pub fn new(diagram: &'a TangleDiagram) -> Self {
        TangleGeometry {
            diagram,
            lunes: RwLock::new(HashMap::new()),
        }
    }

    pub fn diagram(&self) -> &'a TangleDiagram {
        self.diagram
    }

    pub(crate) fn mu_idx(&self, i: usize) -> i64 {
        self.diagram.points[i].maslov
    }

    /// Lune decision by index, without the Maslov precondition.
    pub(crate) fn lune_idx(&self, ip: usize, iq: usize) -> Result<bool> {
        if let Some(&b) = self.lunes.read().expect("lune memo").get(&(ip, iq)) {
            return Ok(b);
        }
        let b = lune::subdivide(self.diagram, ip, iq)?.is_lune();
        self.lunes.write().expect("lune memo").insert((ip, iq), b);
        Ok(b)
    }

    /// True iff a lune from `p` to `q` exists. Requires `mu(p) - mu(q) = 1`.
    pub fn lune_exists(&self, p: &str, q: &str) -> Result<bool> {
        let ip = self.diagram.index_of(p)?;
        let iq = self.diagram.index_of(q)?;
        let gap = self.mu_idx(ip) - self.mu_idx(iq);
        if gap != 1 {
            return Err(HftError::Precondition(format!(
                "lune query needs mu({p}) - mu({q}) = 1, found {gap}"
            )));
        }
        self.lune_idx(ip, iq)
    }
}
