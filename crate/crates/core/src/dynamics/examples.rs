//! Built-in example diagrams.
//!
//! Each example is a meander: the unstable manifold is the horizontal axis
//! and the stable manifold leaves the fixed point vertically, then runs
//! through a sequence of rectangular arcs alternately below and above the
//! axis. Every crossing is perpendicular.

use serde_json::{json, Map, Value};

use crate::error::{HftError, Result};
use crate::rational::{Rational, RationalPoint};
use crate::tangle::{ManifoldArc, ManifoldKind, Orientation, TangleDiagram};

/// Combinatorial description of a meander diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Meander {
    /// Position of the fixed point on the axis.
    pub x: i64,
    /// Axis positions visited by the stable curve after leaving `x`.
    pub visits: Vec<i64>,
    /// Whether the first arc (from `x`) lies below the axis.
    pub first_below: bool,
}

impl Meander {
    pub fn new(x: i64, visits: &[i64], first_below: bool) -> Self {
        Meander {
            x,
            visits: visits.to_vec(),
            first_below,
        }
    }

    /// Checks that positions are distinct and that arcs on the same side do
    /// not interleave.
    pub fn is_valid(&self) -> bool {
        let mut all = vec![self.x];
        all.extend(&self.visits);
        let mut sorted = all.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != all.len() {
            return false;
        }
        let arcs: Vec<(i64, i64, bool)> = all
            .windows(2)
            .enumerate()
            .map(|(k, w)| {
                (
                    w[0].min(w[1]),
                    w[0].max(w[1]),
                    (k % 2 == 0) == self.first_below,
                )
            })
            .collect();
        for (i, a) in arcs.iter().enumerate() {
            for b in &arcs[i + 1..] {
                if a.2 == b.2 && a.0 < b.0 && b.0 < a.1 && a.1 < b.1 {
                    return false;
                }
                if a.2 == b.2 && b.0 < a.0 && a.0 < b.1 && b.1 < a.1 {
                    return false;
                }
            }
        }
        true
    }

    /// Exact diagram. The unstable arc is oriented eastwards.
    pub fn diagram(&self) -> Result<TangleDiagram> {
        if !self.is_valid() {
            return Err(HftError::Structural("meander arcs interleave".into()));
        }
        let pt = |x: i64, y: Rational| RationalPoint::new(Rational::from_integer(x.into()), y);
        let int = |v: i64| Rational::from_integer(v.into());
        let half = Rational::new(1.into(), 2.into());
        let lo = self
            .visits
            .iter()
            .copied()
            .chain([self.x])
            .min()
            .unwrap_or(0)
            - 1;
        let hi = self
            .visits
            .iter()
            .copied()
            .chain([self.x])
            .max()
            .unwrap_or(0)
            + 1;
        let unstable = ManifoldArc {
            kind: ManifoldKind::Unstable,
            branch_pos: vec![pt(self.x, int(0)), pt(hi, int(0))],
            branch_neg: vec![pt(self.x, int(0)), pt(lo, int(0))],
            orientation: Orientation::Forward,
        };
        let mut pos = vec![pt(self.x, int(0))];
        let mut a = self.x;
        let mut below = self.first_below;
        for &b in &self.visits {
            let h = int((b - a).abs());
            let y = if below { -h } else { h };
            pos.push(pt(a, y.clone()));
            pos.push(pt(b, y));
            pos.push(pt(b, int(0)));
            a = b;
            below = !below;
        }
        // dangling end continues across the axis
        let tail = if below { -half.clone() } else { half.clone() };
        pos.push(pt(a, tail));
        let leg = if self.first_below { half } else { -half };
        let stable = ManifoldArc {
            kind: ManifoldKind::Stable,
            branch_pos: pos,
            branch_neg: vec![pt(self.x, int(0)), pt(self.x, leg)],
            orientation: Orientation::Forward,
        };
        TangleDiagram::from_arcs(unstable, stable, Map::new())
    }
}

/// Names of the built-in examples.
pub const BUILTIN_NAMES: &[&str] = &[
    "fig3a",
    "fig3b_left",
    "fig3b_right",
    "fig4",
    "fig5",
    "fig6a",
    "fig6b",
    "cascade",
];

struct Spec {
    meander: Meander,
    labels: &'static [(i64, &'static str)],
    figure: &'static str,
}

fn spec(name: &str) -> Option<Spec> {
    let m = Meander::new;
    Some(match name {
        "fig3a" => Spec {
            meander: m(0, &[1, 4, 3, 2], true),
            labels: &[(1, "p"), (2, "q"), (3, "r"), (4, "q_b")],
            figure: "gluing of two lunes into a heart",
        },
        "fig3b_left" => Spec {
            meander: m(0, &[4, 1, 2, 3], true),
            labels: &[(2, "p"), (1, "q_a"), (3, "q_b"), (4, "r")],
            figure: "heart with cutting partners, left placement",
        },
        "fig3b_right" => Spec {
            meander: m(0, &[1, 4, 3, 2], true),
            labels: &[(1, "p"), (2, "q_a"), (4, "q_b"), (3, "r")],
            figure: "heart with cutting partners, right placement",
        },
        "fig4" => Spec {
            meander: m(0, &[3, 4, 5, 6, 7, 2, 1], true),
            labels: &[
                (2, "p"),
                (1, "q_1"),
                (3, "q_2"),
                (5, "q_3"),
                (7, "q_4"),
                (4, "s_1"),
                (6, "s_2"),
            ],
            figure: "one generator with four lunes",
        },
        "cascade" => Spec {
            meander: m(0, &[1, 6, 5, 4, 3, 2], true),
            labels: &[
                (1, "p"),
                (4, "q"),
                (3, "r"),
                (2, "q_b"),
                (6, "q_prime"),
                (5, "r_prime"),
            ],
            figure: "deletion of q exposes q_prime",
        },
        "fig5" => Spec {
            meander: m(-1, &[0, 3, 2, 1, 4], false),
            labels: &[(2, "p"), (1, "q_a"), (3, "q_b"), (4, "r"), (0, "r_prime")],
            figure: "cutting partners shared by two hearts",
        },
        "fig6a" | "fig6b" => Spec {
            meander: m(0, &[1, 2, 3, 4], true),
            labels: &[(1, "p"), (2, "q"), (3, "r"), (4, "s")],
            figure: "inclusion that is not a chain map",
        },
        _ => return None,
    })
}

/// The built-in example `name`.
pub fn builtin_example(name: &str) -> Result<TangleDiagram> {
    let spec = spec(name).ok_or_else(|| {
        HftError::Parse(format!(
            "unknown example `{name}`; known: {}",
            BUILTIN_NAMES.join(", ")
        ))
    })?;
    let mut d = spec.meander.diagram()?;
    let names: Vec<(String, &str)> = spec
        .labels
        .iter()
        .map(|&(at, label)| {
            let target = RationalPoint::from_ints(at, 0);
            let id = d
                .points
                .iter()
                .find(|p| p.position == target)
                .map(|p| p.id.clone())
                .ok_or_else(|| HftError::Internal(format!("example {name}: no point at {at}")))?;
            Ok((id, label))
        })
        .collect::<Result<_>>()?;
    let refs: Vec<(&str, &str)> = names.iter().map(|(a, b)| (a.as_str(), *b)).collect();
    d = d.with_names(&refs)?;
    d.metadata = meander_metadata(name, spec.figure, &spec.meander);
    Ok(d)
}

fn meander_metadata(name: &str, figure: &str, m: &Meander) -> Map<String, Value> {
    let mut meta = Map::new();
    meta.insert("source".into(), json!("builtin"));
    meta.insert("example".into(), json!(name));
    meta.insert("figure".into(), json!(figure));
    meta.insert("w_orientation".into(), json!("preserving"));
    meta.insert(
        "meander".into(),
        json!({"x": m.x, "visits": m.visits, "first_below": m.first_below}),
    );
    meta
}
