use serde::Serialize;

use crate::error::{HftError, Result};
use crate::tangle::GeneratorSet;

/// A finite partial order given by its full relation matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Poset {
    /// `leq[i][j]` iff `i ⪯ j`.
    pub leq: Vec<Vec<bool>>,
}

/// Outcome of the directedness test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Directedness {
    pub directed: bool,
    /// A pair of indices without a common upper bound.
    pub counterexample: Option<(usize, usize)>,
}

impl Poset {
    /// Checks reflexivity, antisymmetry and transitivity.
    pub fn new(leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = leq.len();
        if leq.iter().any(|r| r.len() != n) {
            return Err(HftError::Structural("relation matrix is not square".into()));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(HftError::Structural(format!(
                    "relation not reflexive at {i}"
                )));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(HftError::Structural(format!(
                        "elements {i} and {j} are equal"
                    )));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(HftError::Structural("relation not transitive".into()));
                    }
                }
            }
        }
        Ok(Poset { leq })
    }

    /// The order on sets given by inclusion.
    pub fn inclusion(family: &[GeneratorSet]) -> Result<Self> {
        let leq = family
            .iter()
            .map(|a| family.iter().map(|b| a.is_subset_of(b)).collect())
            .collect();
        Poset::new(leq)
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Pairs `i ≺ j` with nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.leq[i][j] {
                    continue;
                }
                let between = (0..n).any(|k| k != i && k != j && self.leq[i][k] && self.leq[k][j]);
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// All pairs `i ≺ j`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && self.leq[i][j])
            .collect()
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&m| (0..self.len()).all(|i| self.leq[i][m]))
    }

    pub fn directedness(&self) -> Directedness {
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                if !(0..n).any(|k| self.leq[i][k] && self.leq[j][k]) {
                    return Directedness {
                        directed: false,
                        counterexample: Some((i, j)),
                    };
                }
            }
        }
        Directedness {
            directed: true,
            counterexample: None,
        }
    }
}

/// Directedness of a finite family of generator sets under inclusion.
pub fn check_poset_directed(family: &[GeneratorSet]) -> Result<Directedness> {
    Ok(Poset::inclusion(family)?.directedness())
}
