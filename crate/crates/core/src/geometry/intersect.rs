//! Exact intersection of the two manifold polylines.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::predicates::{
    intersect_segments, overlapping_pairs, parallel, same_direction, strictly_in_ccw_sector, FBox,
    SegmentHit,
};
use crate::error::{HftError, Result};
use crate::rational::{Rational, RationalPoint};
use crate::tangle::{CrossingSign, ManifoldArc, ManifoldParam};

/// One transverse crossing of the unstable and the stable polyline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub position: RationalPoint,
    pub u_param: ManifoldParam,
    pub s_param: ManifoldParam,
    pub crossing_sign: CrossingSign,
}

/// Incoming and outgoing travel directions (increasing parameter) of an arc
/// at a parameter. Either may be missing at the ends of the stored window.
pub(crate) fn local_directions(
    arc: &ManifoldArc,
    s: &Rational,
) -> (Option<RationalPoint>, Option<RationalPoint>) {
    let fl = s.floor().to_integer();
    let i: i64 = fl.try_into().unwrap_or(0);
    let interior = *s != Rational::from_integer(i.into());
    if interior {
        let d = arc.segment_direction(i);
        return (Some(d.clone()), Some(d));
    }
    let incoming = arc.vertex(i - 1).map(|a| arc.vertex(i).unwrap().sub(a));
    let outgoing = arc.vertex(i + 1).map(|b| b.sub(arc.vertex(i).unwrap()));
    (incoming, outgoing)
}

/// Checks that a polyline arc is simple and has distinct consecutive
/// vertices. Returns a list of human-readable problems.
pub fn polyline_problems(arc: &ManifoldArc) -> Vec<String> {
    let mut problems = Vec::new();
    let segs = arc.segments();
    for (s, a, b) in &segs {
        if a == b {
            problems.push(format!(
                "{} arc: repeated vertex at parameter {s}",
                arc.kind
            ));
        }
    }
    if !problems.is_empty() {
        return problems;
    }
    let boxes: Vec<FBox> = segs
        .iter()
        .map(|(_, a, b)| FBox::of_segment(a, b))
        .collect();
    for (i, j) in overlapping_pairs(&boxes, &boxes) {
        if j <= i {
            continue;
        }
        let (si, a, b) = &segs[i];
        let (sj, c, d) = &segs[j];
        if j == i + 1 {
            // adjacent: only a reversal can overlap
            let r = b.sub(a);
            let q = d.sub(c);
            if parallel(&r, &q) && !same_direction(&r, &q) {
                problems.push(format!(
                    "{} arc folds back on itself at parameter {}",
                    arc.kind,
                    si + 1
                ));
            }
            continue;
        }
        if intersect_segments(a, b, c, d) != SegmentHit::None {
            problems.push(format!(
                "{} arc self-intersects: segments at parameters {si} and {sj}",
                arc.kind
            ));
        }
    }
    problems
}

/// Classifies the local picture at a common point of both arcs.
///
/// Returns the crossing sign (sign of det(unstable dir, stable dir) in the
/// transverse case) or a non-transversality error.
pub(crate) fn crossing_sign_at(
    unstable: &ManifoldArc,
    su: &Rational,
    stable: &ManifoldArc,
    ss: &Rational,
    at: &RationalPoint,
) -> Result<CrossingSign> {
    let (u_in, u_out) = local_directions(unstable, su);
    let (s_in, s_out) = local_directions(stable, ss);
    let (u_in, u_out, s_in, s_out) = match (u_in, u_out, s_in, s_out) {
        (Some(a), Some(b), Some(c), Some(d)) => (a, b, c, d),
        _ => {
            return Err(HftError::NonTransverse(format!(
                "arcs meet at {at}, an end of the stored window"
            )))
        }
    };
    let u_back = u_in.neg();
    let s_back = s_in.neg();
    for ur in [&u_back, &u_out] {
        for sr in [&s_back, &s_out] {
            if same_direction(ur, sr) {
                return Err(HftError::NonTransverse(format!(
                    "arcs share a direction at {at}"
                )));
            }
        }
    }
    // left of the stable arc: ccw sector from its outgoing ray to its back ray
    let back_left = strictly_in_ccw_sector(&u_back, &s_out, &s_back);
    let out_left = strictly_in_ccw_sector(&u_out, &s_out, &s_back);
    if back_left == out_left {
        return Err(HftError::NonTransverse(format!(
            "arcs touch without crossing at {at}"
        )));
    }
    Ok(if out_left { -1 } else { 1 })
}

/// All transverse crossings of the two arcs other than the fixed point,
/// sorted by unstable parameter.
pub fn compute_intersections(
    unstable: &ManifoldArc,
    stable: &ManifoldArc,
) -> Result<Vec<Crossing>> {
    let useg = unstable.segments();
    let sseg = stable.segments();
    let ub: Vec<FBox> = useg
        .iter()
        .map(|(_, a, b)| FBox::of_segment(a, b))
        .collect();
    let sb: Vec<FBox> = sseg
        .iter()
        .map(|(_, a, b)| FBox::of_segment(a, b))
        .collect();
    let mut found: BTreeMap<(Rational, Rational), RationalPoint> = BTreeMap::new();
    for (i, j) in overlapping_pairs(&ub, &sb) {
        let (su0, a, b) = &useg[i];
        let (ss0, c, d) = &sseg[j];
        match intersect_segments(a, b, c, d) {
            SegmentHit::None => {}
            SegmentHit::Collinear => {
                return Err(HftError::NonTransverse(format!(
                    "unstable segment at {su0} and stable segment at {ss0} overlap"
                )))
            }
            SegmentHit::Point { t, u, at } => {
                let su = Rational::from_integer((*su0).into()) + t;
                let ss = Rational::from_integer((*ss0).into()) + u;
                found.insert((su, ss), at);
            }
        }
    }
    let mut out = Vec::new();
    for ((su, ss), at) in found {
        if su.is_zero() && ss.is_zero() {
            continue;
        }
        if su.is_zero() || ss.is_zero() {
            return Err(HftError::Structural(format!(
                "an arc returns to the fixed point at {at}"
            )));
        }
        let sign = crossing_sign_at(unstable, &su, stable, &ss, &at)?;
        out.push(Crossing {
            position: at,
            u_param: ManifoldParam::from_signed(su),
            s_param: ManifoldParam::from_signed(ss),
            crossing_sign: sign,
        });
    }
    out.sort_by(|a, b| a.u_param.cmp(&b.u_param));
    Ok(out)
}

/// Sign of the crossing at the fixed point itself.
pub fn fixed_point_crossing(unstable: &ManifoldArc, stable: &ManifoldArc) -> Result<CrossingSign> {
    let zero = Rational::zero();
    crossing_sign_at(unstable, &zero, stable, &zero, unstable.fixed_point())
}

#[allow(dead_code)]
pub(crate) fn unit() -> Rational {
    Rational::one()
}
