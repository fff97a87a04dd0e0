//! Lune (immersed di-gon) detection through the face windings of the loop
//! `[p,q]_u * [q,p]_s`.
//!
//! The loop only meets itself at homoclinic points lying on both of its
//! parts. Those points cut the loop into chains, the chains form a plane
//! graph, and the faces of that graph carry the winding number of the loop.
//! A lune from `p` to `q` exists iff, for one of the two traversal senses,
//! all windings are nonnegative and at each corner the convex sector has
//! winding 1 and the reflex sector winding 0.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::predicates::angle_cmp;
use crate::error::{HftError, Result};
use crate::rational::{format_rational, Rational, RationalPoint};
use crate::tangle::{ManifoldKind, TangleDiagram};

#[derive(Clone, Debug, Serialize)]
pub struct Face {
    /// Loop vertices (homoclinic point ids) met along the face boundary.
    pub corners: Vec<String>,
    /// Twice the signed area, as an exact rational string.
    pub doubled_area: String,
    pub winding: i64,
    pub unbounded: bool,
}

/// Winding values of the two sectors at a corner of the loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CornerSectors {
    pub convex: i64,
    pub reflex: i64,
}

/// The planar subdivision induced by the loop of a pair `(p, q)`.
#[derive(Clone, Debug, Serialize)]
pub struct LoopSubdivision {
    pub p: String,
    pub q: String,
    /// Ids of the loop's self-crossings, including the corners.
    pub vertices: Vec<String>,
    pub faces: Vec<Face>,
    pub corner_p: CornerSectors,
    pub corner_q: CornerSectors,
}

impl LoopSubdivision {
    fn admissible(&self, sense: i64) -> bool {
        let ok_corner = |c: &CornerSectors| sense * c.convex == 1 && sense * c.reflex == 0;
        self.faces.iter().all(|f| sense * f.winding >= 0)
            && ok_corner(&self.corner_p)
            && ok_corner(&self.corner_q)
    }

    /// Traversal sense (+1 or -1) for which the winding criterion holds.
    pub fn lune_sense(&self) -> Option<i64> {
        [1, -1].into_iter().find(|&s| self.admissible(s))
    }

    pub fn is_lune(&self) -> bool {
        self.lune_sense().is_some()
    }

    /// Winding of every face, in face order.
    pub fn windings(&self) -> Vec<i64> {
        self.faces.iter().map(|f| f.winding).collect()
    }
}

struct HalfEdge {
    origin: usize,
    dest: usize,
    /// Polyline from origin to dest.
    poly: Vec<RationalPoint>,
}

impl HalfEdge {
    fn start_dir(&self) -> RationalPoint {
        self.poly[1].sub(&self.poly[0])
    }
}

/// Builds the loop subdivision for points `ip`, `iq` of a diagram.
pub(crate) fn subdivide(diagram: &TangleDiagram, ip: usize, iq: usize) -> Result<LoopSubdivision> {
    if ip == iq {
        return Err(HftError::Precondition(
            "a loop needs two distinct points".into(),
        ));
    }
    let u = ManifoldKind::Unstable;
    let s = ManifoldKind::Stable;
    let pu = diagram.param_of(ip, u);
    let qu = diagram.param_of(iq, u);
    let ps = diagram.param_of(ip, s);
    let qs = diagram.param_of(iq, s);
    let (ulo, uhi) = if pu <= qu { (pu, qu) } else { (qu, pu) };
    let (slo, shi) = if ps <= qs { (ps, qs) } else { (qs, ps) };

    let mut crossing: Vec<usize> = (0..diagram.points.len())
        .filter(|&i| {
            let a = diagram.param_of(i, u);
            let b = diagram.param_of(i, s);
            a >= ulo && a <= uhi && b >= slo && b <= shi
        })
        .collect();
    let local: BTreeMap<usize, usize> = crossing.iter().enumerate().map(|(k, &i)| (i, k)).collect();

    let mut half: Vec<HalfEdge> = Vec::new();
    // unstable part, from p to q
    crossing.sort_by(|&a, &b| diagram.param_of(a, u).cmp(diagram.param_of(b, u)));
    if pu > qu {
        crossing.reverse();
    }
    let u_order = crossing.clone();
    // stable part, from q to p
    crossing.sort_by(|&a, &b| diagram.param_of(a, s).cmp(diagram.param_of(b, s)));
    if qs > ps {
        crossing.reverse();
    }
    let s_order = crossing;
    for (kind, order) in [(u, &u_order), (s, &s_order)] {
        let arc = diagram.arc(kind);
        for w in order.windows(2) {
            let poly =
                arc.sub_polyline(diagram.param_of(w[0], kind), diagram.param_of(w[1], kind))?;
            let mut rev = poly.clone();
            rev.reverse();
            half.push(HalfEdge {
                origin: local[&w[0]],
                dest: local[&w[1]],
                poly,
            });
            half.push(HalfEdge {
                origin: local[&w[1]],
                dest: local[&w[0]],
                poly: rev,
            });
        }
    }
    let n_u_half = 2 * (u_order.len() - 1);

    // outgoing half-edges per vertex, sorted ccw by initial direction
    let nv = local.len();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (h, e) in half.iter().enumerate() {
        out[e.origin].push(h);
    }
    let dirs: Vec<RationalPoint> = half.iter().map(HalfEdge::start_dir).collect();
    for list in &mut out {
        list.sort_by(|&a, &b| angle_cmp(&dirs[a], &dirs[b]));
    }
    let twin = |h: usize| h ^ 1;
    let next = |h: usize| -> usize {
        let v = half[h].dest;
        let list = &out[v];
        let pos = list
            .iter()
            .position(|&g| g == twin(h))
            .expect("twin leaves its origin");
        list[(pos + list.len() - 1) % list.len()]
    };

    // face cycles
    let mut face_of = vec![usize::MAX; half.len()];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for start in 0..half.len() {
        if face_of[start] != usize::MAX {
            continue;
        }
        let f = cycles.len();
        let mut cyc = Vec::new();
        let mut h = start;
        loop {
            if face_of[h] != usize::MAX {
                if h == start {
                    break;
                }
                return Err(HftError::Internal("inconsistent face traversal".into()));
            }
            face_of[h] = f;
            cyc.push(h);
            h = next(h);
        }
        cycles.push(cyc);
    }
    let areas: Vec<Rational> = cycles
        .iter()
        .map(|cyc| {
            cyc.iter()
                .flat_map(|&h| half[h].poly.windows(2).map(|w| w[0].cross(&w[1])))
                .sum()
        })
        .collect();
    let zero = Rational::from_integer(0.into());
    let outer: Vec<usize> = (0..cycles.len()).filter(|&f| areas[f] < zero).collect();
    if outer.len() != 1 {
        return Err(HftError::Internal(format!(
            "loop subdivision has {} unbounded face candidates",
            outer.len()
        )));
    }
    let outer = outer[0];

    // windings: face left of a loop-direction half-edge is one more than
    // the face on its right
    let mut wind: Vec<Option<i64>> = vec![None; cycles.len()];
    wind[outer] = Some(0);
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); cycles.len()];
    for h in (0..half.len()).step_by(2) {
        let l = face_of[h];
        let r = face_of[twin(h)];
        adj[r].push((l, 1));
        adj[l].push((r, -1));
    }
    let mut queue = VecDeque::from([outer]);
    while let Some(f) = queue.pop_front() {
        let wf = wind[f].expect("queued faces have windings");
        for &(g, d) in &adj[f] {
            match wind[g] {
                None => {
                    wind[g] = Some(wf + d);
                    queue.push_back(g);
                }
                Some(wg) if wg != wf + d => {
                    return Err(HftError::Internal("inconsistent face windings".into()));
                }
                _ => {}
            }
        }
    }
    let wind: Vec<i64> = wind
        .into_iter()
        .map(|w| w.ok_or_else(|| HftError::Internal("face without winding".into())))
        .collect::<Result<_>>()?;

    // corners: h_in arrives at the corner, h_out leaves it
    let corner = |h_in: usize, h_out: usize| -> CornerSectors {
        let b = &dirs[h_out];
        let a = &dirs[twin(h_in)];
        let left_of_out = wind[face_of[h_out]];
        let other = wind[face_of[twin(h_out)]];
        if b.cross(a) > zero {
            CornerSectors {
                convex: left_of_out,
                reflex: other,
            }
        } else {
            CornerSectors {
                convex: other,
                reflex: left_of_out,
            }
        }
    };
    let last_u = n_u_half - 2;
    let last_s = half.len() - 2;
    let corner_q = corner(last_u, n_u_half);
    let corner_p = corner(last_s, 0);

    let ids = |v: usize| {
        diagram.points[*local.iter().find(|(_, &k)| k == v).unwrap().0]
            .id
            .clone()
    };
    let faces = cycles
        .iter()
        .enumerate()
        .map(|(f, cyc)| Face {
            corners: cyc.iter().map(|&h| ids(half[h].origin)).collect(),
            doubled_area: format_rational(&areas[f]),
            winding: wind[f],
            unbounded: f == outer,
        })
        .collect();
    let mut vertices: Vec<String> = local
        .keys()
        .map(|&i| diagram.points[i].id.clone())
        .collect();
    vertices.sort();
    Ok(LoopSubdivision {
        p: diagram.points[ip].id.clone(),
        q: diagram.points[iq].id.clone(),
        vertices,
        faces,
        corner_p,
        corner_q,
    })
}

/// Subdivision of the loop of `(p, q)` for debugging and oracle comparison.
pub fn loop_subdivision(diagram: &TangleDiagram, p: &str, q: &str) -> Result<LoopSubdivision> {
    subdivide(diagram, diagram.index_of(p)?, diagram.index_of(q)?)
}
