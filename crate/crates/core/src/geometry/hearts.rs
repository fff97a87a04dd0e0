//! Heart factorizations and cutting partners.
//!
//! A heart from `p` to `r` is bounded by `[p,r]_u` and `[r,p]_s`, so in the
//! plane its shadow is fixed by its corners. Every middle point `q` with
//! lunes `p -> q -> r` is therefore a cut of the same heart, and the middles
//! form a single cutting-partner pair.

use super::TangleGeometry;
use crate::error::{HftError, Result};
use crate::tangle::GeneratorSet;

impl TangleGeometry<'_> {
    /// Middle points `q` (optionally restricted to `within`) with lunes from
    /// `p` to `q` and from `q` to `r`, sorted by id.
    pub(crate) fn heart_middles_idx(
        &self,
        ip: usize,
        ir: usize,
        within: Option<&GeneratorSet>,
    ) -> Result<Vec<usize>> {
        let d = self.diagram();
        let mid = self.mu_idx(ip) - 1;
        if self.mu_idx(ir) != mid - 1 {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for iq in 0..d.points.len() {
            if self.mu_idx(iq) != mid {
                continue;
            }
            if let Some(set) = within {
                if !set.contains(&d.points[iq].id) {
                    continue;
                }
            }
            if self.lune_idx(ip, iq)? && self.lune_idx(iq, ir)? {
                out.push(iq);
            }
        }
        out.sort_by(|&a, &b| d.points[a].id.cmp(&d.points[b].id));
        Ok(out)
    }

    /// Middle point ids of hearts from `p` to `r` among the members of
    /// `within`.
    pub fn heart_middles(
        &self,
        p: &str,
        r: &str,
        within: Option<&GeneratorSet>,
    ) -> Result<Vec<String>> {
        let d = self.diagram();
        let v = self.heart_middles_idx(d.index_of(p)?, d.index_of(r)?, within)?;
        Ok(v.into_iter().map(|i| d.points[i].id.clone()).collect())
    }

    /// Cutting-partner pairs of the hearts from `p` to `r`.
    pub fn heart_factorizations(&self, p: &str, r: &str) -> Result<Vec<(String, String)>> {
        let d = self.diagram();
        let (ip, ir) = (d.index_of(p)?, d.index_of(r)?);
        let gap = self.mu_idx(ip) - self.mu_idx(ir);
        if gap != 2 {
            return Err(HftError::Precondition(format!(
                "hearts need mu({p}) - mu({r}) = 2, found {gap}"
            )));
        }
        let mids = self.heart_middles(p, r, None)?;
        match mids.len() {
            0 => Ok(Vec::new()),
            1 => Err(HftError::PartnerOutsideWindow(format!(
                "heart ({p},{},{r}) has no cutting partner in the window",
                mids[0]
            ))),
            2 => Ok(vec![(mids[0].clone(), mids[1].clone())]),
            n => Err(HftError::Internal(format!(
                "{n} middle points for hearts from {p} to {r}; cannot pair them"
            ))),
        }
    }
}
