//! Maslov indices by exact counting of line half-turns.
//!
//! The tangent line of the loop `[p,q]_u * [q,p]_s` is tracked as an
//! unoriented line. Every turn (at polyline vertices and at the two corners)
//! is a rotation by less than pi, and each rotation contributes the signed
//! number of times the line passes the horizontal line, counted half-open.
//! The total is the number of half-turns of the line around the loop, an
//! exact integer. At `q` the line turns counterclockwise from the unstable
//! to the stable line, at `p` clockwise from the stable to the unstable line.

use std::cmp::Ordering;

use num_traits::{ToPrimitive, Zero};

use super::predicates::{line_angle_cmp, parallel, sign};
use crate::error::{HftError, Result};
use crate::rational::{Rational, RationalPoint};
use crate::tangle::{ManifoldArc, ManifoldKind, TangleDiagram};

/// Half-turn count of a rotation of the line `a` to the line `b` by an angle
/// of absolute value less than pi in the given sense.
pub fn line_step(a: &RationalPoint, b: &RationalPoint, ccw: bool) -> i64 {
    match (ccw, line_angle_cmp(b, a)) {
        (true, Ordering::Less) => 1,
        (false, Ordering::Greater) => -1,
        _ => 0,
    }
}

/// Half-turn count of the tangent line at a polyline vertex.
pub fn vertex_turn(d1: &RationalPoint, d2: &RationalPoint) -> Result<i64> {
    match sign(&d1.cross(d2)) {
        0 => {
            if parallel(d1, d2) && d1.dot(d2) < Rational::zero() {
                Err(HftError::Structural("polyline reverses direction".into()))
            } else {
                Ok(0)
            }
        }
        s => Ok(line_step(d1, d2, s > 0)),
    }
}

/// Prefix sums of vertex half-turns along one arc.
#[derive(Clone, Debug)]
pub struct ArcTurning {
    lo: i64,
    /// `cum[k]` = sum of turns at vertices with signed parameter `<= lo + k`.
    cum: Vec<i64>,
}

impl ArcTurning {
    pub fn new(arc: &ManifoldArc) -> Result<Self> {
        let verts = arc.vertices();
        let lo = verts.first().map(|v| v.0).unwrap_or(0);
        let mut cum = Vec::with_capacity(verts.len());
        let mut acc = 0i64;
        for (k, _) in verts.iter().enumerate() {
            if k > 0 && k + 1 < verts.len() {
                let d1 = verts[k].1.sub(verts[k - 1].1);
                let d2 = verts[k + 1].1.sub(verts[k].1);
                acc += vertex_turn(&d1, &d2)?;
            }
            cum.push(acc);
        }
        Ok(ArcTurning { lo, cum })
    }

    fn cum_at(&self, j: i64) -> i64 {
        if j < self.lo {
            return 0;
        }
        let k = ((j - self.lo) as usize).min(self.cum.len() - 1);
        self.cum[k]
    }

    /// Half-turns accumulated travelling from parameter `a` to `b`, over the
    /// vertices strictly between them.
    pub fn between(&self, a: &Rational, b: &Rational) -> i64 {
        let (lo, hi, s) = match a.cmp(b) {
            Ordering::Less => (a, b, 1),
            Ordering::Greater => (b, a, -1),
            Ordering::Equal => return 0,
        };
        // vertices j with lo < j < hi
        let first = floor_i64(lo) + 1;
        let last = ceil_i64(hi) - 1;
        if last < first {
            return 0;
        }
        s * (self.cum_at(last) - self.cum_at(first - 1))
    }
}

fn floor_i64(r: &Rational) -> i64 {
    r.floor()
        .to_integer()
        .to_i64()
        .expect("parameter fits in i64")
}

fn ceil_i64(r: &Rational) -> i64 {
    r.ceil()
        .to_integer()
        .to_i64()
        .expect("parameter fits in i64")
}

/// Direction of the segment met when leaving parameter `t` towards larger
/// (`increasing`) or smaller parameters. Only its line is used.
pub(crate) fn line_leaving(arc: &ManifoldArc, t: &Rational, increasing: bool) -> RationalPoint {
    let i = if increasing {
        floor_i64(t)
    } else {
        ceil_i64(t) - 1
    };
    arc.segment_direction(i)
}

/// Cached per-arc turning data of a diagram.
#[derive(Clone, Debug)]
pub struct MaslovData {
    pub unstable: ArcTurning,
    pub stable: ArcTurning,
}

impl MaslovData {
    pub fn new(unstable: &ManifoldArc, stable: &ManifoldArc) -> Result<Self> {
        Ok(MaslovData {
            unstable: ArcTurning::new(unstable)?,
            stable: ArcTurning::new(stable)?,
        })
    }

    /// `mu(p,q)` from the parameters of `p` and `q` on both arcs.
    pub fn relative(
        &self,
        unstable: &ManifoldArc,
        stable: &ManifoldArc,
        p: (&Rational, &Rational),
        q: (&Rational, &Rational),
    ) -> i64 {
        let (pu, ps) = p;
        let (qu, qs) = q;
        if pu == qu && ps == qs {
            return 0;
        }
        let u_inc = qu > pu;
        let s_inc = ps > qs;
        // line of [p,q]_u at q (arriving) and at p (leaving)
        let u_at_q = line_leaving(unstable, qu, !u_inc);
        let u_at_p = line_leaving(unstable, pu, u_inc);
        let s_at_q = line_leaving(stable, qs, s_inc);
        let s_at_p = line_leaving(stable, ps, !s_inc);
        self.unstable.between(pu, qu)
            + line_step(&u_at_q, &s_at_q, true)
            + self.stable.between(qs, ps)
            + line_step(&s_at_p, &u_at_p, false)
    }
}

impl MaslovData {
    pub fn for_diagram(diagram: &TangleDiagram) -> Result<Self> {
        MaslovData::new(&diagram.unstable, &diagram.stable)
    }

    /// `mu(p,q)` by point id.
    pub fn between_points(&self, diagram: &TangleDiagram, p: &str, q: &str) -> Result<i64> {
        let ip = diagram.index_of(p)?;
        let iq = diagram.index_of(q)?;
        let pu = diagram.param_of(ip, ManifoldKind::Unstable).signed();
        let ps = diagram.param_of(ip, ManifoldKind::Stable).signed();
        let qu = diagram.param_of(iq, ManifoldKind::Unstable).signed();
        let qs = diagram.param_of(iq, ManifoldKind::Stable).signed();
        Ok(self.relative(&diagram.unstable, &diagram.stable, (&pu, &ps), (&qu, &qs)))
    }
}

/// `mu(p,q)` for two points of a diagram.
pub fn maslov_rel(diagram: &TangleDiagram, p: &str, q: &str) -> Result<i64> {
    MaslovData::for_diagram(diagram)?.between_points(diagram, p, q)
}

/// `mu(p) = mu(p, x)`.
pub fn maslov_abs(diagram: &TangleDiagram, p: &str) -> Result<i64> {
    let x = diagram.fixed_point_id().to_string();
    maslov_rel(diagram, p, &x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> RationalPoint {
        RationalPoint::from_ints(x, y)
    }

    #[test]
    fn steps_are_half_open() {
        // ccw from a line at 45 degrees to the vertical: no pass through 0
        assert_eq!(line_step(&p(1, 1), &p(0, 1), true), 0);
        // ccw from 135 degrees to 10 degrees (through pi): one pass
        assert_eq!(line_step(&p(-1, 1), &p(10, 1), true), 1);
        // ccw ending exactly on the horizontal counts
        assert_eq!(line_step(&p(-1, 1), &p(1, 0), true), 1);
        // cw starting on the horizontal counts
        assert_eq!(line_step(&p(1, 0), &p(-1, 1), false), -1);
    }

    #[test]
    fn reversal_is_error() {
        assert!(vertex_turn(&p(1, 0), &p(-2, 0)).is_err());
        assert_eq!(vertex_turn(&p(1, 0), &p(2, 0)).unwrap(), 0);
    }
}
