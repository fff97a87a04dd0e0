//! Exact planar predicates on rational points and direction vectors.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::rational::{to_f64, Rational, RationalPoint};

pub fn sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Orientation of the triple `(a, b, c)`: +1 counterclockwise, -1 clockwise.
pub fn orient(a: &RationalPoint, b: &RationalPoint, c: &RationalPoint) -> i32 {
    sign(&b.sub(a).cross(&c.sub(a)))
}

/// 0 for directions in `[0, pi)` measured from the positive x-axis, 1 otherwise.
fn half(v: &RationalPoint) -> u8 {
    if v.y.is_positive() || (v.y.is_zero() && v.x.is_positive()) {
        0
    } else {
        1
    }
}

/// Compares the polar angles of two nonzero directions in `[0, 2pi)`.
pub fn angle_cmp(v: &RationalPoint, w: &RationalPoint) -> Ordering {
    half(v).cmp(&half(w)).then_with(|| match sign(&v.cross(w)) {
        1 => Ordering::Less,
        -1 => Ordering::Greater,
        _ => Ordering::Equal,
    })
}

/// Compares the ccw angle from `base` to `v` with the one from `base` to `w`.
pub fn ccw_from_cmp(base: &RationalPoint, v: &RationalPoint, w: &RationalPoint) -> Ordering {
    let rel = |d: &RationalPoint| -> (u8, RationalPoint) {
        // rotate d into base's frame: coordinates (dot, cross)
        let x = base.dot(d);
        let y = base.cross(d);
        let p = RationalPoint::new(x, y);
        (half(&p), p)
    };
    let (hv, pv) = rel(v);
    let (hw, pw) = rel(w);
    hv.cmp(&hw).then_with(|| match sign(&pv.cross(&pw)) {
        1 => Ordering::Less,
        -1 => Ordering::Greater,
        _ => Ordering::Equal,
    })
}

/// True if `v` lies strictly inside the ccw sector that sweeps from `from`
/// to `to`.
pub fn strictly_in_ccw_sector(v: &RationalPoint, from: &RationalPoint, to: &RationalPoint) -> bool {
    if same_direction(v, from) || same_direction(v, to) {
        return false;
    }
    ccw_from_cmp(from, v, to) == Ordering::Less
}

pub fn same_direction(v: &RationalPoint, w: &RationalPoint) -> bool {
    v.cross(w).is_zero() && v.dot(w).is_positive()
}

pub fn parallel(v: &RationalPoint, w: &RationalPoint) -> bool {
    v.cross(w).is_zero()
}

/// Line angle class of a direction: the representative in the closed upper
/// half plane, so that `d` and `-d` map to the same line.
pub fn line_rep(d: &RationalPoint) -> RationalPoint {
    if half(d) == 0 {
        d.clone()
    } else {
        d.neg()
    }
}

/// Compares line angles in `[0, pi)`.
pub fn line_angle_cmp(a: &RationalPoint, b: &RationalPoint) -> Ordering {
    let a = line_rep(a);
    let b = line_rep(b);
    match sign(&a.cross(&b)) {
        1 => Ordering::Less,
        -1 => Ordering::Greater,
        _ => Ordering::Equal,
    }
}

/// Outcome of intersecting two closed segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentHit {
    None,
    /// Single point with fractional positions `t` on the first and `u` on the
    /// second segment, both in `[0, 1]`.
    Point {
        t: Rational,
        u: Rational,
        at: RationalPoint,
    },
    /// The segments are collinear and share at least one point.
    Collinear,
}

pub fn intersect_segments(
    a: &RationalPoint,
    b: &RationalPoint,
    c: &RationalPoint,
    d: &RationalPoint,
) -> SegmentHit {
    let r = b.sub(a);
    let s = d.sub(c);
    let denom = r.cross(&s);
    let ca = c.sub(a);
    if denom.is_zero() {
        if !ca.cross(&r).is_zero() {
            return SegmentHit::None;
        }
        // collinear: project onto r
        let rr = r.dot(&r);
        let t0 = ca.dot(&r) / &rr;
        let t1 = d.sub(a).dot(&r) / &rr;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let one = Rational::from_integer(1.into());
        if hi < Rational::zero() || lo > one {
            return SegmentHit::None;
        }
        return SegmentHit::Collinear;
    }
    let t = ca.cross(&s) / &denom;
    let u = ca.cross(&r) / &denom;
    let zero = Rational::zero();
    let one = Rational::from_integer(1.into());
    if t < zero || t > one || u < zero || u > one {
        return SegmentHit::None;
    }
    let at = a.lerp(b, &t);
    SegmentHit::Point { t, u, at }
}

/// Axis-aligned float box, padded so that exact geometry inside a box
/// never escapes it.
#[derive(Clone, Copy, Debug)]
pub struct FBox {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl FBox {
    pub fn of_segment(a: &RationalPoint, b: &RationalPoint) -> FBox {
        let (ax, ay) = a.to_f64();
        let (bx, by) = b.to_f64();
        let pad = |v: f64| 1e-9 * (v.abs() + 1.0);
        let x0 = ax.min(bx);
        let x1 = ax.max(bx);
        let y0 = ay.min(by);
        let y1 = ay.max(by);
        FBox {
            x0: x0 - pad(x0),
            x1: x1 + pad(x1),
            y0: y0 - pad(y0),
            y1: y1 + pad(y1),
        }
    }

    pub fn overlaps(&self, o: &FBox) -> bool {
        self.x0 <= o.x1 && o.x0 <= self.x1 && self.y0 <= o.y1 && o.y0 <= self.y1
    }
}

/// Index pairs `(i, j)` of boxes from `a` and `b` that overlap.
pub fn overlapping_pairs(a: &[FBox], b: &[FBox]) -> Vec<(usize, usize)> {
    let mut ev: Vec<(f64, bool, usize)> = Vec::with_capacity(a.len() + b.len());
    ev.extend(a.iter().enumerate().map(|(i, bx)| (bx.x0, false, i)));
    ev.extend(b.iter().enumerate().map(|(i, bx)| (bx.x0, true, i)));
    ev.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap_or(Ordering::Equal));
    let mut active_a: Vec<usize> = Vec::new();
    let mut active_b: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    for (x, from_b, i) in ev {
        active_a.retain(|&k| a[k].x1 >= x);
        active_b.retain(|&k| b[k].x1 >= x);
        if from_b {
            for &k in &active_a {
                if a[k].overlaps(&b[i]) {
                    out.push((k, i));
                }
            }
            active_b.push(i);
        } else {
            for &k in &active_b {
                if a[i].overlaps(&b[k]) {
                    out.push((i, k));
                }
            }
            active_a.push(i);
        }
    }
    out.sort_unstable();
    out
}

/// Float approximation of a rational, exposed for diagnostics.
pub fn approx(r: &Rational) -> f64 {
    to_f64(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> RationalPoint {
        RationalPoint::from_ints(x, y)
    }

    #[test]
    fn sector_membership() {
        // upper half plane is the ccw sector from +x to -x
        assert!(strictly_in_ccw_sector(&p(0, 1), &p(1, 0), &p(-1, 0)));
        assert!(!strictly_in_ccw_sector(&p(0, -1), &p(1, 0), &p(-1, 0)));
        assert!(!strictly_in_ccw_sector(&p(1, 0), &p(1, 0), &p(-1, 0)));
        // reflex sector
        assert!(strictly_in_ccw_sector(&p(-1, -1), &p(1, 0), &p(0, -1)));
    }

    #[test]
    fn line_angles() {
        assert_eq!(line_angle_cmp(&p(1, 0), &p(-1, 0)), Ordering::Equal);
        assert_eq!(line_angle_cmp(&p(1, 1), &p(-1, 1)), Ordering::Less);
        assert_eq!(line_angle_cmp(&p(0, -1), &p(1, 1)), Ordering::Greater);
    }

    #[test]
    fn segment_cases() {
        match intersect_segments(&p(0, 0), &p(2, 0), &p(1, -1), &p(1, 1)) {
            SegmentHit::Point { at, .. } => assert_eq!(at, p(1, 0)),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            intersect_segments(&p(0, 0), &p(2, 0), &p(1, 0), &p(3, 0)),
            SegmentHit::Collinear
        );
        assert_eq!(
            intersect_segments(&p(0, 0), &p(2, 0), &p(3, 0), &p(4, 0)),
            SegmentHit::None
        );
        assert_eq!(
            intersect_segments(&p(0, 0), &p(2, 0), &p(0, 1), &p(2, 1)),
            SegmentHit::None
        );
    }

    #[test]
    fn sweep_pairs() {
        let a = vec![
            FBox::of_segment(&p(0, 0), &p(1, 1)),
            FBox::of_segment(&p(5, 5), &p(6, 6)),
        ];
        let b = vec![FBox::of_segment(&p(0, 1), &p(1, 0))];
        assert_eq!(overlapping_pairs(&a, &b), vec![(0, 0)]);
    }
}
