//! Direct systems of finitely presented abelian groups and their colimits.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::poset::Poset;
use crate::error::{HftError, Result};
use crate::zmod::{
    in_column_lattice, smith_normal_form, FgAbelianGroup, GroupMorphism, IntegerMatrix,
    Presentation,
};

/// Groups indexed by a finite poset with a transition map for every
/// comparable pair.
#[derive(Clone, Debug, Serialize)]
pub struct DirectSystem {
    pub poset: Poset,
    pub groups: Vec<Presentation>,
    /// `maps[(i, j)]` for every `i ≺ j`.
    #[serde(serialize_with = "ser_maps")]
    pub maps: BTreeMap<(usize, usize), IntegerMatrix>,
}

fn ser_maps<S: serde::Serializer>(
    m: &BTreeMap<(usize, usize), IntegerMatrix>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for ((i, j), v) in m {
        map.serialize_entry(&format!("{i}->{j}"), v)?;
    }
    map.end()
}

/// Which transition relations enter the colimit presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RelationMode {
    HasseEdges,
    AllPairs,
}

impl DirectSystem {
    /// Validates shapes, relation compatibility and coherence
    /// `γ^{jk} ∘ γ^{ij} = γ^{ik}`.
    pub fn new(
        poset: Poset,
        groups: Vec<Presentation>,
        maps: BTreeMap<(usize, usize), IntegerMatrix>,
    ) -> Result<Self> {
        if groups.len() != poset.len() {
            return Err(HftError::Structural(
                "one group per poset element required".into(),
            ));
        }
        for (i, j) in poset.strict_pairs() {
            let m = maps.get(&(i, j)).ok_or_else(|| {
                HftError::Structural(format!("missing transition map {i} -> {j}"))
            })?;
            GroupMorphism::new(groups[i].clone(), groups[j].clone(), m.clone())?;
        }
        let sys = DirectSystem {
            poset,
            groups,
            maps,
        };
        sys.check_coherence()?;
        Ok(sys)
    }

    /// `γ^{ij}` as a morphism (identity for `i = j`).
    pub fn morphism(&self, i: usize, j: usize) -> Option<GroupMorphism> {
        if i == j {
            return Some(GroupMorphism::identity(&self.groups[i]));
        }
        self.maps.get(&(i, j)).map(|m| GroupMorphism {
            source: self.groups[i].clone(),
            target: self.groups[j].clone(),
            matrix: m.clone(),
        })
    }

    fn check_coherence(&self) -> Result<()> {
        let n = self.poset.len();
        for (i, j) in self.poset.strict_pairs() {
            for k in 0..n {
                if k == j || !self.poset.le(j, k) {
                    continue;
                }
                let ij = self.morphism(i, j).expect("comparable");
                let jk = self.morphism(j, k).expect("comparable");
                let ik = self.morphism(i, k).expect("comparable");
                if !ij.then(&jk)?.same_map(&ik) {
                    return Err(HftError::ChainCondition(format!(
                        "transition maps {i}->{j}->{k} and {i}->{k} differ"
                    )));
                }
            }
        }
        Ok(())
    }

    fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.groups
            .iter()
            .map(|g| {
                let o = acc;
                acc += g.generators;
                o
            })
            .collect()
    }

    /// `(⊕ C^i) / S` as a presentation.
    pub fn colimit_presentation(&self, mode: RelationMode) -> Presentation {
        let off = self.offsets();
        let total: usize = self.groups.iter().map(|g| g.generators).sum();
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        for (i, g) in self.groups.iter().enumerate() {
            for c in 0..g.relations.cols() {
                let mut v = vec![BigInt::zero(); total];
                for (r, x) in g.relations.col(c).into_iter().enumerate() {
                    v[off[i] + r] = x;
                }
                cols.push(v);
            }
        }
        let edges = match mode {
            RelationMode::HasseEdges => self.poset.hasse_edges(),
            RelationMode::AllPairs => self.poset.strict_pairs(),
        };
        for (i, j) in edges {
            let m = &self.maps[&(i, j)];
            for c in 0..self.groups[i].generators {
                let mut v = vec![BigInt::zero(); total];
                for (r, x) in m.col(c).into_iter().enumerate() {
                    v[off[j] + r] += x;
                }
                v[off[i] + c] -= BigInt::from(1);
                cols.push(v);
            }
        }
        let mut rel = IntegerMatrix::zeros(total, cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            for (i, x) in col.into_iter().enumerate() {
                rel.set(i, j, x);
            }
        }
        Presentation {
            generators: total,
            relations: rel,
        }
    }

    pub fn direct_limit(&self, mode: RelationMode) -> FgAbelianGroup {
        self.colimit_presentation(mode).group()
    }

    /// `λ^i(c)` as a vector of the colimit presentation.
    pub fn embed(&self, i: usize, c: &[BigInt]) -> Vec<BigInt> {
        let off = self.offsets();
        let total: usize = self.groups.iter().map(|g| g.generators).sum();
        let mut v = vec![BigInt::zero(); total];
        for (r, x) in c.iter().enumerate() {
            v[off[i] + r] = x.clone();
        }
        v
    }

    /// Checks that `λ^i(c) = 0` iff `γ^{ik}(c) = 0` for some `k ⪰ i`, for
    /// every node `i` and every coefficient vector `c` with entries in
    /// `[-bound, bound]`. Requires a directed poset. Returns the number of
    /// vectors checked.
    pub fn check_vanishing(&self, bound: i64) -> Result<usize> {
        if !self.poset.directedness().directed {
            return Err(HftError::Precondition(
                "vanishing check needs a directed poset".into(),
            ));
        }
        let lim = self.colimit_presentation(RelationMode::HasseEdges);
        let snf = smith_normal_form(&lim.relations);
        let in_s = |v: &[BigInt]| -> bool {
            let y = snf.u.mul_vec(v);
            y.iter().enumerate().all(|(r, yr)| match snf.diag.get(r) {
                Some(d) if !d.is_zero() => yr.is_multiple_of(d),
                _ => yr.is_zero(),
            })
        };
        let mut checked = 0;
        for i in 0..self.poset.len() {
            let g = self.groups[i].generators;
            for c in box_vectors(g, bound) {
                let left = in_s(&self.embed(i, &c));
                let right = (0..self.poset.len())
                    .filter(|&k| self.poset.le(i, k))
                    .any(|k| {
                        let img = match self.morphism(i, k) {
                            Some(m) => m.matrix.mul_vec(&c),
                            None => return false,
                        };
                        in_column_lattice(&self.groups[k].relations, &img)
                    });
                if left != right {
                    return Err(HftError::Internal(format!(
                        "vanishing characterization fails at node {i} for {c:?}"
                    )));
                }
                checked += 1;
            }
        }
        Ok(checked)
    }
}

/// All integer vectors of length `n` with entries in `[-bound, bound]`.
pub fn box_vectors(n: usize, bound: i64) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-bound..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(BigInt::from(x));
                    w
                })
            })
            .collect();
    }
    out
}

/// Isomorphism type of the subgroup of `Z^N / span(rel)` generated by the
/// columns of `x`.
pub fn image_group(x: &IntegerMatrix, rel: &IntegerMatrix) -> FgAbelianGroup {
    let m = x.cols();
    // kernel of [x | -rel], projected to the first m coordinates
    let stacked = x.hstack(&rel.neg());
    let s = smith_normal_form(&stacked);
    let n = stacked.cols();
    let kernel = s.v.block(0, m, s.rank, n);
    Presentation {
        generators: m,
        relations: kernel,
    }
    .group()
}

/// Quotient of a system by a subsystem, given by per-node inclusion
/// matrices `g^i : A^i -> B^i` that commute with the transition maps.
///
/// Returns `(lim(B/A), lim B / im lim A, lim A, im(lim A -> lim B))`; the
/// quotient system is first rewritten in canonical coordinates.
pub fn quotient_exchange(
    sub: &DirectSystem,
    sys: &DirectSystem,
    incl: &[IntegerMatrix],
) -> Result<(
    FgAbelianGroup,
    FgAbelianGroup,
    FgAbelianGroup,
    FgAbelianGroup,
)> {
    let n = sys.poset.len();
    if sub.poset != sys.poset || incl.len() != n {
        return Err(HftError::Structural(
            "subsystem over a different poset".into(),
        ));
    }
    for (i, j) in sys.poset.strict_pairs() {
        let lhs = sys.maps[&(i, j)].mul(&incl[i]);
        let rhs = incl[j].mul(&sub.maps[&(i, j)]);
        let diff = GroupMorphism {
            source: sub.groups[i].clone(),
            target: sys.groups[j].clone(),
            matrix: lhs,
        };
        let other = GroupMorphism {
            source: sub.groups[i].clone(),
            target: sys.groups[j].clone(),
            matrix: rhs,
        };
        if !diff.same_map(&other) {
            return Err(HftError::ChainCondition(format!(
                "inclusion does not commute on {i}->{j}"
            )));
        }
    }
    // quotient nodes in canonical coordinates
    let mut q_groups = Vec::new();
    let mut to_canon = Vec::new();
    let mut from_canon = Vec::new();
    for (group, inc) in sys.groups.iter().zip(incl) {
        let rel = group.relations.hstack(inc);
        let s = smith_normal_form(&rel);
        let g = FgAbelianGroup::from_invariant_factors(rel.rows(), &s);
        // canonical generators: rows of U with invariant factor != 1
        let keep: Vec<usize> = (0..rel.rows())
            .filter(|&r| s.diag.get(r).is_none_or(|d| !d.is_one()))
            .collect();
        let mut tc = IntegerMatrix::zeros(keep.len(), rel.rows());
        let mut fc = IntegerMatrix::zeros(rel.rows(), keep.len());
        for (a, &r) in keep.iter().enumerate() {
            for c in 0..rel.rows() {
                tc.set(a, c, s.u.get(r, c).clone());
                fc.set(c, a, s.u_inv.get(c, r).clone());
            }
        }
        q_groups.push(g.presentation());
        to_canon.push(tc);
        from_canon.push(fc);
    }
    let mut q_maps = BTreeMap::new();
    for (i, j) in sys.poset.strict_pairs() {
        let m = to_canon[j].mul(&sys.maps[&(i, j)]).mul(&from_canon[i]);
        let mut m = m;
        for (r, d) in q_groups[j].relations_diag().iter().enumerate() {
            for c in 0..m.cols() {
                let v = m.get(r, c).mod_floor(d);
                m.set(r, c, v);
            }
        }
        q_maps.insert((i, j), m);
    }
    let quotient = DirectSystem::new(sys.poset.clone(), q_groups, q_maps)?;
    let lim_q = quotient.direct_limit(RelationMode::HasseEdges);

    let lim_b = sys.colimit_presentation(RelationMode::HasseEdges);
    let mut extra: Vec<Vec<BigInt>> = Vec::new();
    for (i, g) in incl.iter().enumerate() {
        for c in 0..g.cols() {
            extra.push(sys.embed(i, &g.col(c)));
        }
    }
    let mut x = IntegerMatrix::zeros(lim_b.generators, extra.len());
    for (j, v) in extra.iter().enumerate() {
        for (r, e) in v.iter().enumerate() {
            x.set(r, j, e.clone());
        }
    }
    let coker = Presentation {
        generators: lim_b.generators,
        relations: lim_b.relations.hstack(&x),
    }
    .group();
    let lim_a = sub.direct_limit(RelationMode::HasseEdges);
    // image of lim A: generated by images of all node generators of A
    let image = image_group(&x, &lim_b.relations);
    Ok((lim_q, coker, lim_a, image))
}

impl Presentation {
    /// Diagonal orders of a canonical presentation (torsion generators
    /// first).
    pub(crate) fn relations_diag(&self) -> Vec<BigInt> {
        (0..self.relations.cols())
            .map(|c| self.relations.get(c, c).clone())
            .collect()
    }
}
