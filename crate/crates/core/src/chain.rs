//! Graded chain complexes on finite sets of homoclinic points, the
//! ∂-completeness test, pruning, and local Floer homology.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{HftError, Result};
use crate::geometry::{Coefficients, OrientationChoice, TangleGeometry};
use crate::tangle::GeneratorSet;
use crate::zmod::{FgAbelianGroup, HomologyBasis, IntegerMatrix, Ring};

impl Coefficients {
    pub fn ring(self) -> Ring {
        match self {
            Coefficients::Integer => Ring::Integers,
            Coefficients::Mod2 => Ring::Gf2,
        }
    }
}

/// `Z E` graded by the Maslov index, with `∂_k : Z E_k -> Z E_{k-1}`.
#[derive(Clone, Debug, Serialize)]
pub struct GradedChainComplex {
    #[serde(serialize_with = "ser_set")]
    pub generators: GeneratorSet,
    pub orientation: OrientationChoice,
    pub coefficients: Coefficients,
    /// Generators per degree, sorted by id.
    pub levels: BTreeMap<i64, Vec<String>>,
    /// Nonempty boundary matrices keyed by source degree; rows index
    /// `E_{k-1}`, columns index `E_k`.
    pub boundaries: BTreeMap<i64, IntegerMatrix>,
}

fn ser_set<S: serde::Serializer>(g: &GeneratorSet, s: S) -> std::result::Result<S::Ok, S::Error> {
    g.members().serialize(s)
}

impl GradedChainComplex {
    pub fn level(&self, k: i64) -> &[String] {
        self.levels.get(&k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `∂_k`, possibly with zero rows or columns.
    pub fn boundary(&self, k: i64) -> IntegerMatrix {
        self.boundaries
            .get(&k)
            .cloned()
            .unwrap_or_else(|| IntegerMatrix::zeros(self.level(k - 1).len(), self.level(k).len()))
    }

    /// Coefficient of `q` in `∂p`.
    pub fn entry(&self, p: &str, q: &str) -> i64 {
        let Some(k) = self.generators.degree_of(p) else {
            return 0;
        };
        let (Some(j), Some(i)) = (pos(self.level(k), p), pos(self.level(k - 1), q)) else {
            return 0;
        };
        use num_traits::ToPrimitive;
        self.boundaries
            .get(&k)
            .map_or(0, |m| m.get(i, j).to_i64().unwrap_or(0))
    }

    /// `∂p` as `(q, coefficient)` pairs with nonzero coefficient.
    pub fn del(&self, p: &str) -> Vec<(String, i64)> {
        let Some(k) = self.generators.degree_of(p) else {
            return Vec::new();
        };
        self.level(k - 1)
            .iter()
            .map(|q| (q.clone(), self.entry(p, q)))
            .filter(|(_, v)| *v != 0)
            .collect()
    }

    /// `(∂∘∂)p` with nonzero coefficients (reduced mod 2 in mod-2 mode).
    pub fn del_squared(&self, p: &str) -> Vec<(String, BigInt)> {
        let Some(k) = self.generators.degree_of(p) else {
            return Vec::new();
        };
        let j = pos(self.level(k), p).expect("member of its level");
        let col = self.boundary(k).col(j);
        let img = self.boundary(k - 1).mul_vec(&col);
        self.level(k - 2)
            .iter()
            .zip(img)
            .map(|(r, v)| match self.coefficients {
                Coefficients::Integer => (r.clone(), v),
                Coefficients::Mod2 => (r.clone(), v % BigInt::from(2)),
            })
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    /// Algebraic test of `∂∘∂ = 0`; on failure the first generator (by
    /// degree, then id) with nonzero `∂∘∂`.
    pub fn del_squared_witness(&self) -> Option<(String, Vec<(String, BigInt)>)> {
        for ids in self.levels.values().rev() {
            for p in ids {
                let v = self.del_squared(p);
                if !v.is_empty() {
                    return Some((p.clone(), v));
                }
            }
        }
        None
    }

    /// Homology in every degree from `k_minus` to `k_plus`.
    pub fn homology(&self) -> Result<BTreeMap<i64, FgAbelianGroup>> {
        let mut out = BTreeMap::new();
        if let (Some(lo), Some(hi)) = (self.generators.k_minus(), self.generators.k_plus()) {
            for k in lo..=hi {
                out.insert(k, self.homology_basis(k)?.group);
            }
        }
        Ok(out)
    }

    pub fn homology_basis(&self, k: i64) -> Result<HomologyBasis> {
        HomologyBasis::new(
            &self.boundary(k),
            &self.boundary(k + 1),
            self.coefficients.ring(),
        )
    }

    /// The same complex with all matrices negated and orientation flipped.
    pub fn negated(&self) -> GradedChainComplex {
        let mut c = self.clone();
        c.orientation = c.orientation.flipped();
        for m in c.boundaries.values_mut() {
            *m = m.neg();
        }
        c
    }
}

fn pos(v: &[String], id: &str) -> Option<usize> {
    v.iter().position(|x| x == id)
}

/// Builds `(Z E, ∂^E)` from the sign function.
pub fn build_complex(
    geom: &TangleGeometry<'_>,
    set: &GeneratorSet,
    orientation: OrientationChoice,
    mode: Coefficients,
) -> Result<GradedChainComplex> {
    let levels = set.partition();
    let table = geom.sign_table(Some(set.members()), orientation, mode)?;
    let mut boundaries = BTreeMap::new();
    for (&k, src) in &levels {
        let Some(dst) = levels.get(&(k - 1)) else {
            continue;
        };
        let mut m = IntegerMatrix::zeros(dst.len(), src.len());
        for (j, p) in src.iter().enumerate() {
            for (i, q) in dst.iter().enumerate() {
                let v = table.get(p, q).ok_or_else(|| {
                    HftError::Internal(format!("sign n({p},{q}) missing from table"))
                })?;
                m.set(i, j, BigInt::from(v));
            }
        }
        boundaries.insert(k, m);
    }
    Ok(GradedChainComplex {
        generators: set.clone(),
        orientation,
        coefficients: mode,
        levels,
        boundaries,
    })
}

/// Outcome of the ∂-completeness test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Completeness {
    pub complete: bool,
    /// Generator `p` with `(∂∘∂)p ≠ 0`.
    pub witness: Option<String>,
    /// Nonzero coefficients of `(∂∘∂)p`.
    pub del_squared: Vec<(String, String)>,
    /// A heart-forming triple `(p, q, r)` inside the set whose cutting
    /// partner is missing.
    pub unpartnered_triple: Option<(String, String, String)>,
}

/// Heart-forming triples `(p, q, r)` of `set` whose partner is not in `set`.
pub fn unpartnered_triples(
    geom: &TangleGeometry<'_>,
    set: &GeneratorSet,
) -> Result<Vec<(String, String, String)>> {
    let levels = set.partition();
    let mut out = Vec::new();
    for (&k, tops) in levels.iter().rev() {
        let Some(bottoms) = levels.get(&(k - 2)) else {
            continue;
        };
        for p in tops {
            for r in bottoms {
                let mids = geom.heart_middles(p, r, Some(set))?;
                if mids.len() == 1 {
                    out.push((p.clone(), mids[0].clone(), r.clone()));
                } else if mids.len() > 2 {
                    return Err(HftError::Internal(format!(
                        "{} middle points for hearts from {p} to {r}",
                        mids.len()
                    )));
                }
            }
        }
    }
    Ok(out)
}

/// ∂-completeness with the algebraic and the geometric characterization
/// cross-checked.
pub fn is_del_complete(
    geom: &TangleGeometry<'_>,
    complex: &GradedChainComplex,
) -> Result<Completeness> {
    let algebraic = complex.del_squared_witness();
    let geometric = unpartnered_triples(geom, &complex.generators)?;
    if algebraic.is_none() != geometric.is_empty() {
        return Err(HftError::Internal(format!(
            "∂∘∂ test and heart partner test disagree on {}",
            complex.generators
        )));
    }
    Ok(match algebraic {
        None => Completeness {
            complete: true,
            witness: None,
            del_squared: Vec::new(),
            unpartnered_triple: None,
        },
        Some((p, v)) => {
            let triple = geometric
                .iter()
                .find(|t| t.0 == p)
                .or(geometric.first())
                .cloned();
            Completeness {
                complete: false,
                witness: Some(p),
                del_squared: v.into_iter().map(|(r, c)| (r, c.to_string())).collect(),
                unpartnered_triple: triple,
            }
        }
    })
}

/// One deletion made by [`prune`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PruneRecord {
    pub id: String,
    /// Degree of the deleted point.
    pub level: i64,
    /// Level offset `k` of the pass (counted from `k_plus`).
    pub pass: i64,
    pub round: usize,
    /// Heart-forming triple `(p, q, r)` with `q = id` and no partner.
    pub witness: (String, String, String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PruneLog {
    pub records: Vec<PruneRecord>,
}

impl PruneLog {
    pub fn deleted(&self) -> Vec<String> {
        self.records.iter().map(|r| r.id.clone()).collect()
    }
}

/// Scan order of triples inside each round.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ScanOrder {
    /// Lexicographic by `(p, q, r)` ids.
    #[default]
    ById,
    /// A ChaCha permutation of the lexicographic order, reseeded per round.
    Seeded(u64),
}

/// Deletes middle points of heart-forming triples that lack a cutting
/// partner, level by level from the top, each level to a fixpoint.
pub fn prune(
    geom: &TangleGeometry<'_>,
    set: &GeneratorSet,
    order: ScanOrder,
) -> Result<(GeneratorSet, PruneLog)> {
    let d = geom.diagram();
    let mut current = set.clone();
    let mut log = PruneLog::default();
    let (Some(kp), Some(km)) = (set.k_plus(), set.k_minus()) else {
        return Ok((current, log));
    };
    let mut rng = match order {
        ScanOrder::Seeded(s) => Some(ChaCha8Rng::seed_from_u64(s)),
        ScanOrder::ById => None,
    };
    for k in 0..=(kp - km - 2) {
        let top = kp - k;
        let mut round = 0usize;
        loop {
            round += 1;
            let mut triples = Vec::new();
            for p in current.level(top) {
                for q in current.level(top - 1) {
                    for r in current.level(top - 2) {
                        triples.push((p.clone(), q.clone(), r.clone()));
                    }
                }
            }
            if let Some(rng) = rng.as_mut() {
                triples.shuffle(rng);
            }
            let mut changed = false;
            for (p, q, r) in triples {
                if !current.contains(&q) {
                    continue;
                }
                let (ip, iq, ir) = (d.index_of(&p)?, d.index_of(&q)?, d.index_of(&r)?);
                if !(geom.lune_idx(ip, iq)? && geom.lune_idx(iq, ir)?) {
                    continue;
                }
                let mids = geom.heart_middles_idx(ip, ir, Some(&current))?;
                if mids.len() > 2 {
                    return Err(HftError::Internal(format!(
                        "{} middle points for hearts from {p} to {r}",
                        mids.len()
                    )));
                }
                if mids.iter().all(|&m| m == iq) {
                    log::debug!("prune: delete {q} (triple {p},{q},{r}), level {}", top - 1);
                    current = current.without(&q);
                    log.records.push(PruneRecord {
                        id: q.clone(),
                        level: top - 1,
                        pass: k,
                        round,
                        witness: (p, q, r),
                    });
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }
    Ok((current, log))
}

/// Result of a local Floer homology computation.
#[derive(Clone, Debug, Serialize)]
pub struct FloerHomology {
    pub input: Vec<String>,
    pub pruned: Vec<String>,
    pub prune_log: PruneLog,
    pub complex: GradedChainComplex,
    pub homology: BTreeMap<i64, FgAbelianGroup>,
}

/// Prunes `set`, builds the complex on the result and computes its homology.
pub fn local_floer_homology(
    geom: &TangleGeometry<'_>,
    set: &GeneratorSet,
    orientation: OrientationChoice,
    mode: Coefficients,
) -> Result<FloerHomology> {
    let (pruned, log) = prune(geom, set, ScanOrder::ById)?;
    let complex = build_complex(geom, &pruned, orientation, mode)?;
    if let Some((p, _)) = complex.del_squared_witness() {
        return Err(HftError::Internal(format!(
            "pruned set fails ∂∘∂ = 0 at {p}"
        )));
    }
    let homology = complex.homology()?;
    Ok(FloerHomology {
        input: set.members().to_vec(),
        pruned: pruned.members().to_vec(),
        prune_log: log,
        complex,
        homology,
    })
}
