//! The sign function `n(p,q)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{Coefficients, OrientationChoice, TangleGeometry};
use crate::error::{HftError, Result};
use crate::tangle::{ManifoldKind, Orientation, WOrientation};

/// Nonzero and zero values of `n(p,q)` over all pairs with Maslov gap one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignTable {
    pub coefficients: Coefficients,
    pub orientation: OrientationChoice,
    /// `entries[p][q] = n(p,q)` for every pair with `mu(p) - mu(q) = 1`.
    pub entries: BTreeMap<String, BTreeMap<String, i64>>,
}

impl SignTable {
    pub fn get(&self, p: &str, q: &str) -> Option<i64> {
        self.entries.get(p).and_then(|m| m.get(q)).copied()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&str, &str, i64)> {
        self.entries.iter().flat_map(|(p, m)| {
            m.iter()
                .filter(|(_, &v)| v != 0)
                .map(move |(q, &v)| (p.as_str(), q.as_str(), v))
        })
    }
}

impl TangleGeometry<'_> {
    fn check_mode(&self, mode: Coefficients) -> Result<()> {
        if mode == Coefficients::Integer
            && self.diagram().w_orientation() == WOrientation::Reversing
        {
            return Err(HftError::Precondition(
                "integer coefficients need a W-orientation preserving map; use z2".into(),
            ));
        }
        Ok(())
    }

    /// `n(p,q)` by index; 0 when the Maslov gap is not one.
    pub(crate) fn sign_idx(
        &self,
        ip: usize,
        iq: usize,
        orientation: OrientationChoice,
        mode: Coefficients,
    ) -> Result<i64> {
        if self.mu_idx(ip) - self.mu_idx(iq) != 1 || !self.lune_idx(ip, iq)? {
            return Ok(0);
        }
        if mode == Coefficients::Mod2 {
            return Ok(1);
        }
        let d = self.diagram();
        let seg = d.segment(&d.points[ip].id, &d.points[iq].id, ManifoldKind::Unstable)?;
        let along = match seg.relative_orientation {
            Some(Orientation::Forward) => 1,
            Some(Orientation::Backward) => -1,
            None => return Err(HftError::Internal("lune between equal points".into())),
        };
        Ok(along * orientation.sign())
    }

    /// `n(p,q)`. Requires `mu(p) - mu(q) = 1`.
    pub fn sign_n(
        &self,
        p: &str,
        q: &str,
        orientation: OrientationChoice,
        mode: Coefficients,
    ) -> Result<i64> {
        self.check_mode(mode)?;
        let d = self.diagram();
        let ip = d.index_of(p)?;
        let iq = d.index_of(q)?;
        let gap = self.mu_idx(ip) - self.mu_idx(iq);
        if gap != 1 {
            return Err(HftError::Precondition(format!(
                "n({p},{q}) needs mu({p}) - mu({q}) = 1, found {gap}"
            )));
        }
        self.sign_idx(ip, iq, orientation, mode)
    }

    /// Signs for all gap-one pairs among `ids` (all points if `None`).
    pub fn sign_table(
        &self,
        ids: Option<&[String]>,
        orientation: OrientationChoice,
        mode: Coefficients,
    ) -> Result<SignTable> {
        self.check_mode(mode)?;
        let d = self.diagram();
        let idx: Vec<usize> = match ids {
            Some(ids) => ids.iter().map(|s| d.index_of(s)).collect::<Result<_>>()?,
            None => (0..d.points.len()).collect(),
        };
        let pairs: Vec<(usize, usize)> = idx
            .iter()
            .flat_map(|&a| idx.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| self.mu_idx(a) - self.mu_idx(b) == 1)
            .collect();
        let values: Vec<i64> = pairs
            .par_iter()
            .map(|&(a, b)| self.sign_idx(a, b, orientation, mode))
            .collect::<Result<_>>()?;
        let mut entries: BTreeMap<String, BTreeMap<String, i64>> = BTreeMap::new();
        for ((a, b), v) in pairs.into_iter().zip(values) {
            entries
                .entry(d.points[a].id.clone())
                .or_default()
                .insert(d.points[b].id.clone(), v);
        }
        Ok(SignTable {
            coefficients: mode,
            orientation,
            entries,
        })
    }
}
