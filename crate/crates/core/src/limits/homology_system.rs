//! Direct systems of local Floer homology over finite inclusion posets.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::poset::{Directedness, Poset};
use super::system::{DirectSystem, RelationMode};
use crate::chain::{build_complex, GradedChainComplex};
use crate::error::{HftError, Result};
use crate::geometry::{Coefficients, OrientationChoice, TangleGeometry};
use crate::tangle::{GeneratorSet, TangleDiagram};
use crate::zmod::{
    induced_quotient_map, FgAbelianGroup, GroupMorphism, HomologyBasis, IntegerMatrix,
};

/// Verdict of a chain-map criterion, with both evaluations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainMapCheck {
    pub holds: bool,
    /// `(p, q)` with `n(p,q) ≠ 0` violating the criterion.
    pub witness: Option<(String, String)>,
}

fn complete_complex(
    geom: &TangleGeometry<'_>,
    set: &GeneratorSet,
    orientation: OrientationChoice,
    mode: Coefficients,
) -> Result<GradedChainComplex> {
    let c = build_complex(geom, set, orientation, mode)?;
    if let Some((p, _)) = c.del_squared_witness() {
        return Err(HftError::Precondition(format!(
            "{} is not ∂-complete (at {p})",
            set
        )));
    }
    Ok(c)
}

/// Matrix of the map `Z D_k -> Z E_k` sending each point of `from` to the
/// same point of `to` when present, else to zero.
pub fn point_map(from: &[String], to: &[String]) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(to.len(), from.len());
    for (j, p) in from.iter().enumerate() {
        if let Some(i) = to.iter().position(|q| q == p) {
            m.set(i, j, BigInt::from(1));
        }
    }
    m
}

/// Degrees carrying a generator of either complex, plus one below (the
/// target of the boundary).
fn all_degrees(a: &GradedChainComplex, b: &GradedChainComplex) -> Vec<i64> {
    let mut ks: Vec<i64> = a.levels.keys().chain(b.levels.keys()).copied().collect();
    ks.sort_unstable();
    ks.dedup();
    ks
}

/// Whether `f_{k-1} ∘ ∂^A_k = ∂^B_k ∘ f_k` for all `k`, with `f` the point map.
fn commutes(a: &GradedChainComplex, b: &GradedChainComplex) -> bool {
    all_degrees(a, b).into_iter().all(|k| {
        let f_k = point_map(a.level(k), b.level(k));
        let f_km1 = point_map(a.level(k - 1), b.level(k - 1));
        let lhs = f_km1.mul(&a.boundary(k));
        let rhs = b.boundary(k).mul(&f_k);
        match a.coefficients {
            Coefficients::Integer => lhs == rhs,
            Coefficients::Mod2 => lhs.mod2() == rhs.mod2(),
        }
    })
}

/// Whether the inclusion `Z D -> Z E` is a chain map. Evaluates the matrix
/// identity and the criterion that no `p ∈ D` bounds into `E ∖ D`; the two
/// must agree.
pub fn check_chain_compatible(
    geom: &TangleGeometry<'_>,
    d: &GeneratorSet,
    e: &GeneratorSet,
    orientation: OrientationChoice,
    mode: Coefficients,
) -> Result<ChainMapCheck> {
    if !d.is_subset_of(e) {
        return Err(HftError::Precondition(format!(
            "{d} is not a subset of {e}"
        )));
    }
    let cd = complete_complex(geom, d, orientation, mode)?;
    let ce = complete_complex(geom, e, orientation, mode)?;
    let direct = commutes(&cd, &ce);
    let mut witness = None;
    'outer: for (_, ps) in cd.levels.iter().rev() {
        for p in ps {
            for (q, _) in ce.del(p) {
                if !d.contains(&q) {
                    witness = Some((p.clone(), q));
                    break 'outer;
                }
            }
        }
    }
    if direct != witness.is_none() {
        return Err(HftError::Internal(format!(
            "chain-compatibility criterion disagrees with the matrix identity for {d} ⊆ {e}"
        )));
    }
    Ok(ChainMapCheck {
        holds: direct,
        witness,
    })
}

/// Whether the restriction `Z E' -> Z D'` (identity on `D'`, zero on
/// `E' ∖ D'`) is a chain map. Evaluates the matrix identity and the
/// criterion that no `p ∈ E' ∖ D'` bounds into `D'`.
pub fn restriction_is_chain_map(
    geom: &TangleGeometry<'_>,
    e: &GeneratorSet,
    d: &GeneratorSet,
    orientation: OrientationChoice,
    mode: Coefficients,
) -> Result<ChainMapCheck> {
    if !d.is_subset_of(e) {
        return Err(HftError::Precondition(format!(
            "{d} is not a subset of {e}"
        )));
    }
    let ce = complete_complex(geom, e, orientation, mode)?;
    let cd = complete_complex(geom, d, orientation, mode)?;
    let direct = commutes(&ce, &cd);
    let mut witness = None;
    'outer: for (_, ps) in ce.levels.iter().rev() {
        for p in ps.iter().filter(|p| !d.contains(p)) {
            for (q, _) in ce.del(p) {
                if d.contains(&q) {
                    witness = Some((p.clone(), q));
                    break 'outer;
                }
            }
        }
    }
    if direct != witness.is_none() {
        return Err(HftError::Internal(format!(
            "restriction criterion disagrees with the matrix identity for {d} ⊆ {e}"
        )));
    }
    Ok(ChainMapCheck {
        holds: direct,
        witness,
    })
}

/// One degree of a homology direct system.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeSystem {
    pub degree: i64,
    pub nodes: Vec<FgAbelianGroup>,
    /// Induced maps on Hasse edges, keyed `"i->j"`.
    pub edges: BTreeMap<String, IntegerMatrix>,
    pub limit: FgAbelianGroup,
    /// Colimit using all comparable pairs; must equal `limit`.
    pub limit_all_pairs: FgAbelianGroup,
    #[serde(skip)]
    pub system: DirectSystem,
}

/// A direct system of homology groups over a finite family of sets.
#[derive(Clone, Debug, Serialize)]
pub struct HomologySystem {
    pub sets: Vec<Vec<String>>,
    pub hasse_edges: Vec<(usize, usize)>,
    pub directedness: Directedness,
    pub degrees: Vec<DegreeSystem>,
    /// Direct sum of the per-degree limits.
    pub total_limit: FgAbelianGroup,
}

/// Builds the homology direct system of a family and its limits.
///
/// Every member must be ∂-complete and every inclusion in the family chain
/// compatible. Functoriality `H(I^{EF}) ∘ H(I^{DE}) = H(I^{DF})` is verified
/// on all comparable triples.
pub fn build_homology_system(
    geom: &TangleGeometry<'_>,
    family: &[GeneratorSet],
    orientation: OrientationChoice,
    mode: Coefficients,
) -> Result<HomologySystem> {
    if family.is_empty() {
        return Err(HftError::Structural("empty family".into()));
    }
    let poset = Poset::inclusion(family)?;
    let complexes: Vec<GradedChainComplex> = family
        .iter()
        .map(|s| complete_complex(geom, s, orientation, mode))
        .collect::<Result<_>>()?;
    for (i, j) in poset.strict_pairs() {
        let c = check_chain_compatible(geom, &family[i], &family[j], orientation, mode)?;
        if !c.holds {
            let (p, q) = c.witness.expect("witness on failure");
            return Err(HftError::ChainCondition(format!(
                "inclusion {} ⊆ {} is not a chain map: n({p},{q}) ≠ 0",
                family[i], family[j]
            )));
        }
    }
    let mut ks: Vec<i64> = complexes
        .iter()
        .flat_map(|c| c.levels.keys().copied())
        .collect();
    ks.sort_unstable();
    ks.dedup();
    let mut degrees = Vec::new();
    let mut total = FgAbelianGroup::trivial();
    for k in ks {
        let bases: Vec<HomologyBasis> = complexes
            .iter()
            .map(|c| c.homology_basis(k))
            .collect::<Result<_>>()?;
        let mut maps = BTreeMap::new();
        let mut morphisms: BTreeMap<(usize, usize), GroupMorphism> = BTreeMap::new();
        for (i, j) in poset.strict_pairs() {
            let f = point_map(complexes[i].level(k), complexes[j].level(k));
            let m = induced_quotient_map(&f, &bases[i], &complexes[i].boundary(k + 1), &bases[j])?;
            maps.insert((i, j), m.matrix.clone());
            morphisms.insert((i, j), m);
        }
        for (i, j) in poset.strict_pairs() {
            for l in 0..poset.len() {
                if l != j && poset.le(j, l) {
                    let composite = morphisms[&(i, j)].then(&morphisms[&(j, l)])?;
                    if !composite.same_map(&morphisms[&(i, l)]) {
                        return Err(HftError::Internal(format!(
                            "homology maps not functorial on {i} ⊆ {j} ⊆ {l} in degree {k}"
                        )));
                    }
                }
            }
        }
        let groups = bases.iter().map(HomologyBasis::presentation).collect();
        let system = DirectSystem::new(poset.clone(), groups, maps)?;
        let limit = system.direct_limit(RelationMode::HasseEdges);
        let limit_all_pairs = system.direct_limit(RelationMode::AllPairs);
        if limit != limit_all_pairs {
            return Err(HftError::Internal(format!(
                "Hasse and all-pairs colimits differ in degree {k}"
            )));
        }
        if let Some(m) = poset.maximum() {
            let node = system.groups[m].group();
            if node != limit {
                return Err(HftError::Internal(format!(
                    "colimit differs from the maximum node in degree {k}"
                )));
            }
        }
        total = total.direct_sum(&limit);
        let edges = poset
            .hasse_edges()
            .into_iter()
            .map(|(i, j)| (format!("{i}->{j}"), system.maps[&(i, j)].clone()))
            .collect();
        degrees.push(DegreeSystem {
            degree: k,
            nodes: bases.iter().map(|b| b.group.clone()).collect(),
            edges,
            limit,
            limit_all_pairs,
            system,
        });
    }
    Ok(HomologySystem {
        sets: family.iter().map(|s| s.members().to_vec()).collect(),
        hasse_edges: poset.hasse_edges(),
        directedness: poset.directedness(),
        degrees,
        total_limit: total,
    })
}

/// System description file: a list of member-id arrays, either bare or
/// under the key `sets`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SystemFile {
    Bare(Vec<Vec<String>>),
    Keyed { sets: Vec<Vec<String>> },
}

impl SystemFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn sets(&self) -> &[Vec<String>] {
        match self {
            SystemFile::Bare(s) | SystemFile::Keyed { sets: s } => s,
        }
    }

    pub fn family(&self, diagram: &TangleDiagram) -> Result<Vec<GeneratorSet>> {
        self.sets()
            .iter()
            .map(|s| GeneratorSet::new(diagram, s))
            .collect()
    }
}
