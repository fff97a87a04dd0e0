use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::matrix::{bigint_json, IntegerMatrix};
use super::snf::{smith_normal_form, Snf};
use crate::error::{HftError, Result};

/// Isomorphism type `Z^free_rank + Z/d_1 + ... + Z/d_k` with
/// `d_1 | d_2 | ... | d_k` and every `d_i >= 2`. Over the two-element field
/// only `free_rank` (the dimension) is used.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgAbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of canonical generators (torsion first, then free).
    pub fn generators(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Order of canonical generator `i`, or `None` if it is free.
    pub fn order_of(&self, i: usize) -> Option<&BigInt> {
        self.torsion.get(i)
    }

    pub fn from_invariant_factors(generators: usize, snf: &Snf) -> Self {
        FgAbelianGroup {
            free_rank: generators - snf.rank,
            torsion: snf.torsion(),
        }
    }

    /// Presentation with one relation `d_i e_i` per torsion generator.
    pub fn presentation(&self) -> Presentation {
        let g = self.generators();
        let mut rel = IntegerMatrix::zeros(g, self.torsion.len());
        for (i, d) in self.torsion.iter().enumerate() {
            rel.set(i, i, d.clone());
        }
        Presentation {
            generators: g,
            relations: rel,
        }
    }

    /// Direct sum in canonical form.
    pub fn direct_sum(&self, o: &FgAbelianGroup) -> FgAbelianGroup {
        let a = self.presentation();
        let b = o.presentation();
        let rel = IntegerMatrix::zeros(a.generators, b.relations.cols());
        let top = a.relations.hstack(&rel);
        let bot = IntegerMatrix::zeros(b.generators, a.relations.cols()).hstack(&b.relations);
        Presentation {
            generators: a.generators + b.generators,
            relations: top.vstack(&bot),
        }
        .group()
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for FgAbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let torsion: Vec<serde_json::Value> = self.torsion.iter().map(bigint_json).collect();
        serde_json::json!({
            "free_rank": self.free_rank,
            "torsion": torsion,
            "display": self.to_string(),
        })
        .serialize(s)
    }
}

/// `Z^generators / (column span of relations)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generators: usize,
    /// `generators x k` matrix whose columns are the relations.
    pub relations: IntegerMatrix,
}

impl Presentation {
    pub fn free(n: usize) -> Self {
        Presentation {
            generators: n,
            relations: IntegerMatrix::zeros(n, 0),
        }
    }

    pub fn new(generators: usize, relations: IntegerMatrix) -> Result<Self> {
        if relations.rows() != generators {
            return Err(HftError::Internal(format!(
                "relation matrix has {} rows for {generators} generators",
                relations.rows()
            )));
        }
        Ok(Presentation {
            generators,
            relations,
        })
    }

    /// Canonical isomorphism type.
    pub fn group(&self) -> FgAbelianGroup {
        FgAbelianGroup::from_invariant_factors(self.generators, &smith_normal_form(&self.relations))
    }

    /// True iff `v` lies in the relation lattice.
    pub fn is_relation(&self, v: &[BigInt]) -> bool {
        in_column_lattice(&self.relations, v)
    }
}

/// True iff `v` is an integer combination of the columns of `m`.
pub fn in_column_lattice(m: &IntegerMatrix, v: &[BigInt]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let s = smith_normal_form(m);
    let y = s.u.mul_vec(v);
    y.iter().enumerate().all(|(i, yi)| match s.diag.get(i) {
        Some(d) if !d.is_zero() => yi.is_multiple_of(d),
        _ => yi.is_zero(),
    })
}

/// Homomorphism between presented groups, given on generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupMorphism {
    pub source: Presentation,
    pub target: Presentation,
    /// `target.generators x source.generators`.
    pub matrix: IntegerMatrix,
}

impl GroupMorphism {
    /// Checks that every source relation maps into the target relations.
    pub fn new(source: Presentation, target: Presentation, matrix: IntegerMatrix) -> Result<Self> {
        if matrix.rows() != target.generators || matrix.cols() != source.generators {
            return Err(HftError::Internal("morphism matrix has wrong shape".into()));
        }
        let image = matrix.mul(&source.relations);
        for j in 0..image.cols() {
            if !target.is_relation(&image.col(j)) {
                return Err(HftError::ChainCondition(format!(
                    "source relation {j} does not map to a target relation"
                )));
            }
        }
        Ok(GroupMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(p: &Presentation) -> Self {
        GroupMorphism {
            source: p.clone(),
            target: p.clone(),
            matrix: IntegerMatrix::identity(p.generators),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupMorphism) -> Result<GroupMorphism> {
        if self.target != other.source {
            return Err(HftError::Internal(
                "composing morphisms with mismatched groups".into(),
            ));
        }
        GroupMorphism::new(
            self.source.clone(),
            other.target.clone(),
            other.matrix.mul(&self.matrix),
        )
    }

    /// Equality as homomorphisms: the difference of matrices maps every
    /// generator into the target relations.
    pub fn same_map(&self, other: &GroupMorphism) -> bool {
        if self.source.generators != other.source.generators
            || self.target.generators != other.target.generators
        {
            return false;
        }
        (0..self.source.generators).all(|j| {
            let d: Vec<BigInt> = self
                .matrix
                .col(j)
                .iter()
                .zip(other.matrix.col(j))
                .map(|(a, b)| a - b)
                .collect();
            self.target.is_relation(&d)
        })
    }
}

/// Reduces `v` into canonical coordinates of a group: torsion entries
/// modulo their orders, free entries unchanged.
pub fn reduce_coords(g: &FgAbelianGroup, v: &mut [BigInt]) {
    for (i, d) in g.torsion.iter().enumerate() {
        v[i] = v[i].mod_floor(d);
    }
}

#[allow(dead_code)]
fn one() -> BigInt {
    BigInt::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms_agree() {
        // Z/2 + Z/3 and Z/6
        let a = Presentation::new(2, IntegerMatrix::from_i64(&[&[2, 0], &[0, 3]])).unwrap();
        let b = Presentation::new(1, IntegerMatrix::from_i64(&[&[6]])).unwrap();
        assert_eq!(a.group(), b.group());
        assert_eq!(a.group().to_string(), "Z/6");
    }

    #[test]
    fn lattice_membership() {
        let m = IntegerMatrix::from_i64(&[&[2], &[4]]);
        assert!(in_column_lattice(&m, &[BigInt::from(-2), BigInt::from(-4)]));
        assert!(!in_column_lattice(&m, &[BigInt::from(1), BigInt::from(2)]));
    }

    #[test]
    fn morphism_relation_check() {
        let z2 = FgAbelianGroup {
            free_rank: 0,
            torsion: vec![BigInt::from(2)],
        }
        .presentation();
        let z = Presentation::free(1);
        // Z/2 -> Z sending the generator to 1 is not well defined
        assert!(
            GroupMorphism::new(z2.clone(), z.clone(), IntegerMatrix::from_i64(&[&[1]])).is_err()
        );
        assert!(GroupMorphism::new(z, z2, IntegerMatrix::from_i64(&[&[1]])).is_ok());
    }
}
