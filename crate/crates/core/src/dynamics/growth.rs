//! Numerical growth of the invariant manifolds and exact snapping.

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::map::{apply_map, FloatMap, MapSpec};
use crate::error::{HftError, Result};
use crate::geometry::build::arc_problems;
use crate::rational::{snap_dyadic, RationalPoint};
use crate::tangle::{ManifoldArc, ManifoldKind, Orientation, TangleDiagram, WOrientation};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthParams {
    /// Length of the straight local segment along each eigendirection.
    pub delta: f64,
    pub max_arc_length: f64,
    /// Vertex budget per branch.
    pub max_points: usize,
    /// Largest turning angle at an inserted vertex, in degrees.
    pub max_turn_degrees: f64,
    /// Largest distance between consecutive vertices.
    pub max_spacing: f64,
    /// Vertices are snapped to multiples of `2^-snap_bits`.
    pub snap_bits: u32,
}

impl Default for GrowthParams {
    fn default() -> Self {
        GrowthParams {
            delta: 1e-3,
            max_arc_length: 14.0,
            max_points: 4000,
            max_turn_degrees: 2.0,
            max_spacing: 0.02,
            snap_bits: 40,
        }
    }
}

impl GrowthParams {
    pub fn check(&self) -> Result<()> {
        let ok = self.delta > 0.0
            && self.max_arc_length > 0.0
            && self.max_points > 1
            && self.max_turn_degrees > 0.0
            && self.max_turn_degrees < 90.0
            && self.max_spacing > 0.0
            && (1..=60).contains(&self.snap_bits);
        if ok {
            Ok(())
        } else {
            Err(HftError::Parse(format!(
                "invalid growth parameters {self:?}"
            )))
        }
    }
}

const MAX_DEPTH: u32 = 48;
const ESCAPE: f64 = 1e4;

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn turn(a: [f64; 2], m: [f64; 2], b: [f64; 2]) -> f64 {
    let (u, v) = ([m[0] - a[0], m[1] - a[1]], [b[0] - m[0], b[1] - m[1]]);
    (u[0] * v[1] - u[1] * v[0])
        .atan2(u[0] * v[0] + u[1] * v[1])
        .abs()
        .to_degrees()
}

/// One branch as a sequence of points `γ(s)`, `s ≥ 0`, where `γ(k + t)` is
/// the `k`-th image of the point at fraction `t` of the first fundamental
/// domain.
struct Branch<'a> {
    map: &'a FloatMap,
    forward: bool,
    /// Iterate of the map that fixes each branch.
    period: usize,
    start: [f64; 2],
    end: [f64; 2],
}

impl Branch<'_> {
    fn step(&self, mut p: [f64; 2]) -> [f64; 2] {
        for _ in 0..self.period {
            p = if self.forward {
                self.map.forward(p)
            } else {
                self.map.inverse(p)
            };
        }
        p
    }

    fn at(&self, s: f64) -> [f64; 2] {
        let k = s.floor();
        let t = s - k;
        let mut p = [
            self.start[0] + t * (self.end[0] - self.start[0]),
            self.start[1] + t * (self.end[1] - self.start[1]),
        ];
        for _ in 0..k as usize {
            p = self.step(p);
        }
        p
    }
}

struct Walk<'a> {
    branch: &'a Branch<'a>,
    params: &'a GrowthParams,
    pts: Vec<[f64; 2]>,
    length: f64,
    done: bool,
}

impl Walk<'_> {
    fn push(&mut self, p: [f64; 2]) {
        if self.done {
            return;
        }
        let last = *self.pts.last().expect("nonempty");
        self.length += dist(last, p);
        self.pts.push(p);
        if self.length >= self.params.max_arc_length
            || self.pts.len() >= self.params.max_points
            || p[0].abs().max(p[1].abs()) > ESCAPE
        {
            self.done = true;
        }
    }

    /// Emits the points of `(s0, s1]`, inserting midpoints until spacing and
    /// turning bounds hold.
    fn refine(&mut self, s0: f64, p0: [f64; 2], s1: f64, p1: [f64; 2], depth: u32) {
        if self.done {
            return;
        }
        let sm = 0.5 * (s0 + s1);
        let pm = self.branch.at(sm);
        let coarse = dist(p0, p1) > self.params.max_spacing
            || turn(p0, pm, p1) > self.params.max_turn_degrees;
        if coarse && depth < MAX_DEPTH {
            self.refine(s0, p0, sm, pm, depth + 1);
            self.refine(sm, pm, s1, p1, depth + 1);
        } else {
            self.push(p1);
        }
    }
}

fn grow_branch(branch: &Branch<'_>, x: [f64; 2], params: &GrowthParams) -> Vec<[f64; 2]> {
    let mut walk = Walk {
        branch,
        params,
        pts: vec![x],
        length: 0.0,
        done: false,
    };
    walk.push(branch.start);
    let mut k = 0.0;
    while !walk.done {
        let (p0, p1) = (branch.at(k), branch.at(k + 1.0));
        walk.refine(k, p0, k + 1.0, p1, 0);
        k += 1.0;
    }
    walk.pts
}

fn snap_polyline(x: &RationalPoint, pts: &[[f64; 2]], bits: u32) -> Vec<RationalPoint> {
    let mut out = vec![x.clone()];
    for p in &pts[1..] {
        let q = RationalPoint::new(snap_dyadic(p[0], bits), snap_dyadic(p[1], bits));
        if out.last() != Some(&q) {
            out.push(q);
        }
    }
    out
}

/// Grows both manifolds of the fixed point and returns the snapped diagram.
pub fn grow_tangle(spec: &MapSpec, params: &GrowthParams) -> Result<TangleDiagram> {
    params.check()?;
    let spec = spec.clone().validated()?;
    let fm = FloatMap::new(&spec);
    let x = spec.fixed_point.to_f64();
    let x = [x.0, x.1];
    let ((_, vu), (_, vs)) = spec.eigen();
    let period = if spec.w_orientation == WOrientation::Reversing {
        2
    } else {
        1
    };
    let make = |v: [f64; 2], sign: f64, forward: bool| {
        let start = [
            x[0] + sign * params.delta * v[0],
            x[1] + sign * params.delta * v[1],
        ];
        let mut b = Branch {
            map: &fm,
            forward,
            period,
            start,
            end: start,
        };
        b.end = b.step(start);
        b
    };
    let branches = [
        make(vu, 1.0, true),
        make(vu, -1.0, true),
        make(vs, 1.0, false),
        make(vs, -1.0, false),
    ];
    let grown: Vec<Vec<[f64; 2]>> = {
        use rayon::prelude::*;
        branches
            .par_iter()
            .map(|b| grow_branch(b, x, params))
            .collect()
    };
    let snapped: Vec<Vec<RationalPoint>> = grown
        .iter()
        .map(|g| snap_polyline(&spec.fixed_point, g, params.snap_bits))
        .collect();
    let arc = |kind, pos: &Vec<RationalPoint>, neg: &Vec<RationalPoint>| ManifoldArc {
        kind,
        branch_pos: pos.clone(),
        branch_neg: neg.clone(),
        orientation: Orientation::Forward,
    };
    let unstable = arc(ManifoldKind::Unstable, &snapped[0], &snapped[1]);
    let stable = arc(ManifoldKind::Stable, &snapped[2], &snapped[3]);
    for a in [&unstable, &stable] {
        if let Some(p) = arc_problems(a).into_iter().next() {
            return Err(HftError::Structural(format!(
                "grown {} arc after snapping: {p}",
                a.kind
            )));
        }
    }
    let mut metadata = serde_json::Map::new();
    metadata.insert("source".into(), json!("grown"));
    metadata.insert("map".into(), serde_json::to_value(&spec)?);
    metadata.insert("growth".into(), serde_json::to_value(params)?);
    metadata.insert(
        "w_orientation".into(),
        serde_json::to_value(spec.w_orientation)?,
    );
    let d = TangleDiagram::from_arcs(unstable, stable, metadata).map_err(|e| match e {
        HftError::NonTransverse(m) => HftError::NonTransverse(format!("after snapping: {m}")),
        other => other,
    })?;
    if d.points.len() < 2 {
        return Err(HftError::WindowExceeded(
            "growth budget exhausted before any homoclinic point was found".into(),
        ));
    }
    Ok(d)
}

/// Pairs `(p, q)` where `q` is the detected point nearest to the exact
/// image `φ(p)`, accepted when within `tol` and unambiguous.
pub fn image_correspondence(
    diagram: &TangleDiagram,
    spec: &MapSpec,
    tol: f64,
) -> Vec<(String, String)> {
    let pos: Vec<(f64, f64)> = diagram
        .points
        .iter()
        .map(|p| {
            diagram
                .unstable
                .resolve(&p.u_param)
                .map(|r| r.to_f64())
                .unwrap_or((f64::NAN, f64::NAN))
        })
        .collect();
    let mut out = Vec::new();
    for (i, p) in diagram.points.iter().enumerate() {
        if p.is_fixed_point {
            continue;
        }
        let exact = diagram.unstable.resolve(&p.u_param).expect("resolvable");
        let img = apply_map(spec, &exact, 1).to_f64();
        let mut ds: Vec<(f64, usize)> = pos
            .iter()
            .enumerate()
            .map(|(j, q)| ((q.0 - img.0).hypot(q.1 - img.1), j))
            .collect();
        ds.sort_by(|a, b| a.0.total_cmp(&b.0));
        let near = ds[0];
        let next = ds.get(1).map_or(f64::INFINITY, |d| d.0);
        if near.0 <= tol && next > 10.0 * tol && near.1 != i {
            out.push((p.id.clone(), diagram.points[near.1].id.clone()));
        }
    }
    out
}
