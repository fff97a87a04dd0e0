//! JSON tangle files and validation reports.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{HftError, Result};
use crate::geometry::build::arc_problems;
use crate::geometry::intersect::{compute_intersections, fixed_point_crossing};
use crate::rational::RationalPoint;
use crate::tangle::{
    CrossingSign, ManifoldArc, ManifoldKind, ManifoldParam, Orientation, TangleDiagram,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcRecord {
    pub orientation: Orientation,
    pub branch_pos: Vec<RationalPoint>,
    pub branch_neg: Vec<RationalPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointRecord {
    pub id: String,
    pub u_param: ManifoldParam,
    pub s_param: ManifoldParam,
    pub crossing_sign: CrossingSign,
}

/// On-disk form of a diagram.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TangleFile {
    pub ambient: String,
    pub fixed_point: RationalPoint,
    pub unstable: ArcRecord,
    pub stable: ArcRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<PointRecord>>,
    #[serde(default, skip_serializing_if = "serde_json::Map::is_empty")]
    pub metadata: serde_json::Map<String, serde_json::Value>,
}

impl TangleFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| HftError::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HftError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Canonical text: pretty JSON, reduced rationals, trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_diagram(d: &TangleDiagram) -> Self {
        let rec = |a: &ManifoldArc| ArcRecord {
            orientation: a.orientation,
            branch_pos: a.branch_pos.clone(),
            branch_neg: a.branch_neg.clone(),
        };
        TangleFile {
            ambient: "plane".into(),
            fixed_point: d.fixed_point().clone(),
            unstable: rec(&d.unstable),
            stable: rec(&d.stable),
            points: Some(
                d.points
                    .iter()
                    .map(|p| PointRecord {
                        id: p.id.clone(),
                        u_param: p.u_param.clone(),
                        s_param: p.s_param.clone(),
                        crossing_sign: p.crossing_sign,
                    })
                    .collect(),
            ),
            metadata: d.metadata.clone(),
        }
    }

    fn arcs(&self) -> (ManifoldArc, ManifoldArc) {
        let mk = |kind, r: &ArcRecord| ManifoldArc {
            kind,
            branch_pos: r.branch_pos.clone(),
            branch_neg: r.branch_neg.clone(),
            orientation: r.orientation,
        };
        (
            mk(ManifoldKind::Unstable, &self.unstable),
            mk(ManifoldKind::Stable, &self.stable),
        )
    }

    fn header_problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.ambient != "plane" {
            out.push(format!(
                "ambient must be \"plane\", found \"{}\"",
                self.ambient
            ));
        }
        for (name, r) in [("unstable", &self.unstable), ("stable", &self.stable)] {
            for (b, v) in [("branch_pos", &r.branch_pos), ("branch_neg", &r.branch_neg)] {
                if v.first() != Some(&self.fixed_point) {
                    out.push(format!("{name}.{b} does not start at the fixed point"));
                }
            }
        }
        out
    }

    /// Builds the diagram, checking any stored point records against the
    /// recomputed intersections.
    pub fn into_diagram(self) -> Result<TangleDiagram> {
        if let Some(p) = self.header_problems().into_iter().next() {
            return Err(HftError::Structural(p));
        }
        let (u, s) = self.arcs();
        let mut d = TangleDiagram::from_arcs(u, s, self.metadata.clone())?;
        if let Some(records) = &self.points {
            let names = match_points(&d, records).map_err(HftError::Structural)?;
            d.relabel(&names)?;
        }
        Ok(d)
    }
}

/// Maps computed ids to the ids of `records`, or explains the mismatch.
fn match_points(
    d: &TangleDiagram,
    records: &[PointRecord],
) -> std::result::Result<BTreeMap<String, String>, String> {
    let mut seen_ids = BTreeSet::new();
    let mut seen_pos = BTreeSet::new();
    for r in records {
        if !seen_ids.insert(r.id.clone()) {
            return Err(format!("duplicate point id `{}`", r.id));
        }
        let key = (r.u_param.clone(), r.s_param.clone());
        if !seen_pos.insert(key) {
            return Err(format!(
                "duplicate point: `{}` repeats an earlier record",
                r.id
            ));
        }
    }
    let mut names = BTreeMap::new();
    for r in records {
        let hit = d
            .points
            .iter()
            .find(|p| p.u_param == r.u_param && p.s_param == r.s_param);
        match hit {
            None => {
                return Err(format!(
                    "point `{}` at ({}, {}) is not an intersection of the arcs",
                    r.id, r.u_param, r.s_param
                ))
            }
            Some(p) if p.crossing_sign != r.crossing_sign => {
                return Err(format!(
                    "point `{}` has crossing sign {}, recomputed {}",
                    r.id, r.crossing_sign, p.crossing_sign
                ))
            }
            Some(p) => {
                names.insert(p.id.clone(), r.id.clone());
            }
        }
    }
    if records.len() != d.points.len() {
        let missing: Vec<String> = d
            .points
            .iter()
            .filter(|p| !names.contains_key(&p.id))
            .map(|p| format!("({}, {})", p.u_param, p.s_param))
            .collect();
        return Err(format!(
            "intersections missing from the point list: {}",
            missing.join(", ")
        ));
    }
    Ok(names)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Issue {
    pub kind: String,
    pub message: String,
}

/// Violated invariants of a tangle file. Strong intersection is a warning.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub errors: Vec<Issue>,
    pub warnings: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.errors.is_empty() && self.warnings.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }

    fn error(&mut self, kind: &str, message: String) {
        self.errors.push(Issue {
            kind: kind.into(),
            message,
        });
    }
}

/// Collects every problem of a tangle file instead of stopping at the first.
pub fn validate_tangle(file: &TangleFile) -> ValidationReport {
    let mut rep = ValidationReport::default();
    for p in file.header_problems() {
        rep.error("structural", p);
    }
    let (u, s) = file.arcs();
    let mut shape_ok = rep.errors.is_empty();
    for arc in [&u, &s] {
        for p in arc_problems(arc) {
            rep.error("structural", p);
            shape_ok = false;
        }
    }
    if !shape_ok {
        return rep;
    }
    if let Err(e) = fixed_point_crossing(&u, &s) {
        rep.error("non-transverse", format!("at the fixed point: {e}"));
    }
    match compute_intersections(&u, &s) {
        Err(HftError::NonTransverse(m)) => rep.error("non-transverse", m),
        Err(e) => rep.error("structural", e.to_string()),
        Ok(_) => {}
    }
    if !rep.errors.is_empty() {
        return rep;
    }
    match TangleDiagram::from_arcs(u, s, file.metadata.clone()) {
        Err(e) => rep.error("structural", e.to_string()),
        Ok(d) => {
            if let Some(records) = &file.points {
                if let Err(m) = match_points(&d, records) {
                    let kind = if m.starts_with("duplicate point:") {
                        "duplicate point"
                    } else {
                        "points"
                    };
                    rep.error(kind, m);
                }
            }
            if !d.strongly_intersecting() {
                rep.warnings.push(Issue {
                    kind: "strong intersection".into(),
                    message: "some branch of the unstable arc misses a branch of the stable arc"
                        .into(),
                });
            }
        }
    }
    rep
}

/// Loads a diagram from a file path.
pub fn load_diagram(path: &Path) -> Result<TangleDiagram> {
    TangleFile::read(path)?.into_diagram()
}

/// Diagnostic SVG drawing: unstable arc red, stable arc blue, points black.
pub fn diagram_svg(d: &TangleDiagram) -> String {
    let all: Vec<(f64, f64)> = [&d.unstable, &d.stable]
        .iter()
        .flat_map(|a| a.branch_pos.iter().chain(&a.branch_neg))
        .map(RationalPoint::to_f64)
        .collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in &all {
        (x0, y0, x1, y1) = (x0.min(x), y0.min(y), x1.max(x), y1.max(y));
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let scale = 800.0 / span;
    let map = |p: &RationalPoint| {
        let (x, y) = p.to_f64();
        (20.0 + (x - x0) * scale, 20.0 + (y1 - y) * scale)
    };
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\">\n",
        (x1 - x0) * scale + 40.0,
        (y1 - y0) * scale + 40.0
    );
    for (arc, colour) in [(&d.unstable, "#c0392b"), (&d.stable, "#2471a3")] {
        for branch in [&arc.branch_pos, &arc.branch_neg] {
            let pts: Vec<String> = branch
                .iter()
                .map(|p| {
                    let (x, y) = map(p);
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            out += &format!(
                "<polyline fill=\"none\" stroke=\"{colour}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                pts.join(" ")
            );
        }
    }
    for p in &d.points {
        let (x, y) = map(&p.position);
        out += &format!(
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\"/><text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\">{}</text>\n",
            x + 4.0,
            y - 4.0,
            p.id
        );
    }
    out += "</svg>\n";
    out
}
