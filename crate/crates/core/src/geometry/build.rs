//! Assembly of a validated diagram from two arcs.

use std::collections::BTreeMap;

use super::intersect::{compute_intersections, fixed_point_crossing, polyline_problems};
use super::maslov::MaslovData;
use crate::error::{HftError, Result};
use crate::tangle::{HomoclinicPoint, ManifoldArc, ManifoldKind, ManifoldParam, TangleDiagram};

/// Checks the shape of an arc: both branches start at the same point, have
/// at least one segment, and the whole polyline is simple.
pub fn arc_problems(arc: &ManifoldArc) -> Vec<String> {
    let mut out = Vec::new();
    if arc.branch_pos.len() < 2 || arc.branch_neg.len() < 2 {
        out.push(format!(
            "{} arc: each branch needs at least two vertices",
            arc.kind
        ));
        return out;
    }
    if arc.branch_pos[0] != arc.branch_neg[0] {
        out.push(format!(
            "{} arc: branches do not start at a common point",
            arc.kind
        ));
        return out;
    }
    out.extend(polyline_problems(arc));
    out
}

impl TangleDiagram {
    /// Builds a diagram from two arcs, computing all intersections and
    /// Maslov indices exactly. Points are named `x` (the fixed point) and
    /// `h0`, `h1`, ... in unstable order.
    pub fn from_arcs(
        unstable: ManifoldArc,
        stable: ManifoldArc,
        metadata: serde_json::Map<String, serde_json::Value>,
    ) -> Result<TangleDiagram> {
        if unstable.kind != ManifoldKind::Unstable || stable.kind != ManifoldKind::Stable {
            return Err(HftError::Structural("arc kinds swapped".into()));
        }
        for arc in [&unstable, &stable] {
            let problems = arc_problems(arc);
            if let Some(first) = problems.into_iter().next() {
                return Err(HftError::Structural(first));
            }
        }
        if unstable.fixed_point() != stable.fixed_point() {
            return Err(HftError::Structural(
                "arcs start at different fixed points".into(),
            ));
        }
        let x_sign = fixed_point_crossing(&unstable, &stable)?;
        let crossings = compute_intersections(&unstable, &stable)?;
        let maslov = MaslovData::new(&unstable, &stable)?;

        let mut points = Vec::with_capacity(crossings.len() + 1);
        let zero = ManifoldParam::origin();
        let mut inserted_x = false;
        let mut k = 0usize;
        let x_point = HomoclinicPoint {
            id: "x".into(),
            position: unstable.fixed_point().clone(),
            u_param: zero.clone(),
            s_param: zero.clone(),
            crossing_sign: x_sign,
            maslov: 0,
            is_fixed_point: true,
        };
        let zs = zero.signed();
        for c in crossings {
            if !inserted_x && c.u_param > zero {
                points.push(x_point.clone());
                inserted_x = true;
            }
            let mu = maslov.relative(
                &unstable,
                &stable,
                (&c.u_param.signed(), &c.s_param.signed()),
                (&zs, &zs),
            );
            points.push(HomoclinicPoint {
                id: format!("h{k}"),
                position: c.position,
                u_param: c.u_param,
                s_param: c.s_param,
                crossing_sign: c.crossing_sign,
                maslov: mu,
                is_fixed_point: false,
            });
            k += 1;
        }
        if !inserted_x {
            points.push(x_point);
        }
        Ok(TangleDiagram::assemble(unstable, stable, points, metadata))
    }

    /// Same diagram with points renamed by `names` (missing ids unchanged).
    pub fn with_names(mut self, names: &[(&str, &str)]) -> Result<TangleDiagram> {
        let map: BTreeMap<String, String> = names
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        for k in map.keys() {
            self.index_of(k)?;
        }
        self.relabel(&map)?;
        Ok(self)
    }
}
