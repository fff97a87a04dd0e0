//! Subquotients `ker A / im B` with canonical generators.
//!
//! With `U A V = D` of rank `r`, the kernel of `A` is spanned by the columns
//! `r..` of `V`. The image of `B` in those coordinates is `B'' = (V^-1 B)[r..]`,
//! and `U2 B'' V2 = D2` splits the quotient. Canonical generators are the
//! columns of `V[:, r..] * U2^-1` whose invariant factor is not 1: the
//! torsion ones in SNF order, then the free ones.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::group::{FgAbelianGroup, GroupMorphism, Presentation};
use super::matrix::IntegerMatrix;
use super::snf::{normal_form, Ring};
use crate::error::{HftError, Result};

#[derive(Clone, Debug, Serialize)]
pub struct HomologyBasis {
    pub ring: Ring,
    pub group: FgAbelianGroup,
    #[serde(skip)]
    a: IntegerMatrix,
    #[serde(skip)]
    v_inv_tail: IntegerMatrix,
    #[serde(skip)]
    kernel: IntegerMatrix,
    #[serde(skip)]
    u2: IntegerMatrix,
    #[serde(skip)]
    u2_inv: IntegerMatrix,
    /// Orders of the y-coordinates of the canonical generators (0 = free).
    #[serde(skip)]
    orders: Vec<BigInt>,
    #[serde(skip)]
    gens: Vec<usize>,
}

fn reduce(ring: Ring, m: IntegerMatrix) -> IntegerMatrix {
    match ring {
        Ring::Integers => m,
        Ring::Gf2 => m.mod2(),
    }
}

impl HomologyBasis {
    /// `ker A / im B` for `A: C_k -> C_{k-1}` and `B: C_{k+1} -> C_k`.
    pub fn new(a: &IntegerMatrix, b: &IntegerMatrix, ring: Ring) -> Result<Self> {
        if a.cols() != b.rows() {
            return Err(HftError::NotAComplex(format!(
                "incompatible shapes {}x{} and {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        let (a, b) = (reduce(ring, a.clone()), reduce(ring, b.clone()));
        if !reduce(ring, a.mul(&b)).is_zero() {
            return Err(HftError::NotAComplex(
                "composite of the two maps is nonzero".into(),
            ));
        }
        let n = a.cols();
        let sa = normal_form(&a, ring);
        let r = sa.rank;
        let kernel = sa.v.block(0, n, r, n);
        let v_inv_tail = sa.v_inv.block(r, n, 0, n);
        let b2 = reduce(ring, v_inv_tail.mul(&b));
        let sb = normal_form(&b2, ring);
        let k = n - r;
        let mut orders = Vec::new();
        let mut gens = Vec::new();
        let mut torsion = Vec::new();
        let mut free = 0usize;
        for i in 0..k {
            let d = sb.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.is_one() {
                continue;
            }
            if !d.is_zero() {
                torsion.push(d.clone());
                gens.push(i);
                orders.push(d);
            }
        }
        for i in 0..k {
            let d = sb.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.is_zero() {
                free += 1;
                gens.push(i);
                orders.push(BigInt::zero());
            }
        }
        Ok(HomologyBasis {
            ring,
            group: FgAbelianGroup {
                free_rank: free,
                torsion,
            },
            a,
            v_inv_tail,
            kernel,
            u2: sb.u,
            u2_inv: sb.u_inv,
            orders,
            gens,
        })
    }

    pub fn chain_rank(&self) -> usize {
        self.a.cols()
    }

    /// Presentation of the homology on its canonical generators. Over the
    /// two-element field every generator has order 2.
    pub fn presentation(&self) -> Presentation {
        match self.ring {
            Ring::Integers => self.group.presentation(),
            Ring::Gf2 => {
                let g = self.group.free_rank;
                let two: Vec<BigInt> = vec![BigInt::from(2); g];
                Presentation {
                    generators: g,
                    relations: IntegerMatrix::diagonal(g, g, &two),
                }
            }
        }
    }

    /// Canonical coordinates of the class of a cycle.
    pub fn coords(&self, z: &[BigInt]) -> Result<Vec<BigInt>> {
        let az = self.a.mul_vec(z);
        let nonzero = match self.ring {
            Ring::Integers => az.iter().any(|v| !v.is_zero()),
            Ring::Gf2 => az.iter().any(|v| v.is_odd()),
        };
        if nonzero {
            return Err(HftError::ChainCondition("vector is not a cycle".into()));
        }
        let x = self.v_inv_tail.mul_vec(z);
        let y = self.u2.mul_vec(&x);
        let two = BigInt::from(2);
        Ok(self
            .gens
            .iter()
            .zip(&self.orders)
            .map(|(&i, d)| match self.ring {
                Ring::Gf2 => y[i].mod_floor(&two),
                Ring::Integers if d.is_zero() => y[i].clone(),
                Ring::Integers => y[i].mod_floor(d),
            })
            .collect())
    }

    pub fn is_boundary(&self, z: &[BigInt]) -> Result<bool> {
        Ok(self.coords(z)?.iter().all(Zero::is_zero))
    }

    /// A cycle representing canonical generator `j`.
    pub fn representative(&self, j: usize) -> Vec<BigInt> {
        let col = self.u2_inv.col(self.gens[j]);
        let z = self.kernel.mul_vec(&col);
        match self.ring {
            Ring::Integers => z,
            Ring::Gf2 => {
                let two = BigInt::from(2);
                z.iter().map(|v| v.mod_floor(&two)).collect()
            }
        }
    }
}

/// Isomorphism type of `ker A / im B`.
pub fn homology_of_pair(
    a: &IntegerMatrix,
    b: &IntegerMatrix,
    ring: Ring,
) -> Result<FgAbelianGroup> {
    Ok(HomologyBasis::new(a, b, ring)?.group)
}

/// Map on homology induced by the chain-level map `f: C_k -> C'_k`.
///
/// `source_boundary` is the matrix `B` of the source pair; its image must
/// land in the target boundaries, and cycles must map to cycles.
pub fn induced_quotient_map(
    f: &IntegerMatrix,
    source: &HomologyBasis,
    source_boundary: &IntegerMatrix,
    target: &HomologyBasis,
) -> Result<GroupMorphism> {
    if f.cols() != source.chain_rank() || f.rows() != target.chain_rank() {
        return Err(HftError::Internal("chain map has wrong shape".into()));
    }
    let f = reduce(source.ring, f.clone());
    for j in 0..source_boundary.cols() {
        let img = f.mul_vec(&source_boundary.col(j));
        let ok = target.is_boundary(&img).map_err(|_| {
            HftError::ChainCondition(format!("boundary {j} is not mapped to a cycle"))
        })?;
        if !ok {
            return Err(HftError::ChainCondition(format!(
                "boundary {j} is not mapped to a boundary"
            )));
        }
    }
    let gs = source.group.generators();
    let gt = target.group.generators();
    let mut m = IntegerMatrix::zeros(gt, gs);
    for j in 0..gs {
        let img = f.mul_vec(&source.representative(j));
        let c = target.coords(&img).map_err(|_| {
            HftError::ChainCondition(format!("generator {j} is not mapped to a cycle"))
        })?;
        for (i, v) in c.into_iter().enumerate() {
            m.set(i, j, v);
        }
    }
    GroupMorphism::new(source.presentation(), target.presentation(), m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_when_no_differentials() {
        let a = IntegerMatrix::zeros(0, 3);
        let b = IntegerMatrix::zeros(3, 0);
        assert_eq!(
            homology_of_pair(&a, &b, Ring::Integers).unwrap(),
            FgAbelianGroup::free(3)
        );
    }

    #[test]
    fn torsion_from_boundary() {
        let a = IntegerMatrix::zeros(0, 1);
        let b = IntegerMatrix::from_i64(&[&[2]]);
        let h = homology_of_pair(&a, &b, Ring::Integers).unwrap();
        assert_eq!(h.to_string(), "Z/2");
        assert_eq!(
            homology_of_pair(&a, &b, Ring::Gf2).unwrap(),
            FgAbelianGroup::free(1)
        );
    }

    #[test]
    fn not_a_complex() {
        let a = IntegerMatrix::from_i64(&[&[1]]);
        let b = IntegerMatrix::from_i64(&[&[1]]);
        assert!(matches!(
            homology_of_pair(&a, &b, Ring::Integers),
            Err(HftError::NotAComplex(_))
        ));
    }

    #[test]
    fn identity_induces_identity() {
        let a = IntegerMatrix::from_i64(&[&[1, 1, 0]]);
        let b = IntegerMatrix::from_i64(&[&[2], &[-2], &[0]]);
        let h = HomologyBasis::new(&a, &b, Ring::Integers).unwrap();
        assert_eq!(h.group.to_string(), "Z + Z/2");
        let m = induced_quotient_map(&IntegerMatrix::identity(3), &h, &b, &h).unwrap();
        assert!(m.same_map(&GroupMorphism::identity(&h.presentation())));
    }
}
