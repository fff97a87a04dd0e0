#![allow(dead_code)]

pub mod oracle;
pub mod systems;

use hft_core::dynamics::{grow_tangle, GrowthParams, MapSpec, Meander};
use hft_core::rational::to_f64;
use hft_core::{ManifoldKind, TangleDiagram};
use rand::seq::SliceRandom;
use rand::Rng;

/// The default grown tangle window.
pub fn grown_default() -> TangleDiagram {
    grow_tangle(
        &MapSpec::default_henon(),
        &GrowthParams {
            max_arc_length: 20.0,
            ..Default::default()
        },
    )
    .expect("default growth succeeds")
}

/// Ids of all homoclinic points other than the fixed point.
pub fn homoclinic_ids(d: &TangleDiagram) -> Vec<String> {
    d.points
        .iter()
        .filter(|p| !p.is_fixed_point)
        .map(|p| p.id.clone())
        .collect()
}

/// A random valid meander on `n` visits, by rejection.
pub fn random_meander<R: Rng>(rng: &mut R, n: usize) -> Meander {
    loop {
        let x = rng.gen_range(0..=n as i64);
        let mut visits: Vec<i64> = (0..=n as i64).filter(|&v| v != x).collect();
        visits.shuffle(rng);
        let m = Meander::new(x, &visits, rng.gen());
        if m.is_valid() {
            return m;
        }
    }
}

/// Signed turning (radians) from direction `a` to direction `b`.
pub fn turn(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 * b.1 - a.1 * b.0).atan2(a.0 * b.0 + a.1 * b.1)
}

/// Angle in `(0, π)` by which the line along `a` must rotate counterclockwise
/// to reach the line along `b`.
pub fn ccw_line_angle(a: (f64, f64), b: (f64, f64)) -> f64 {
    let t = turn(a, b).rem_euclid(std::f64::consts::PI);
    assert!(
        t > 1e-12 && t < std::f64::consts::PI - 1e-12,
        "lines coincide"
    );
    t
}

/// Floating-point polyline of the segment from `p` to `q` along `kind`, with
/// zero-length pieces removed.
pub fn float_segment(d: &TangleDiagram, p: &str, q: &str, kind: ManifoldKind) -> Vec<(f64, f64)> {
    let seg = d.segment(p, q, kind).expect("segment");
    let mut out: Vec<(f64, f64)> = Vec::new();
    for v in &seg.polyline {
        let f = (to_f64(&v.x), to_f64(&v.y));
        if out.last() != Some(&f) {
            out.push(f);
        }
    }
    out
}

fn dir(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (b.0 - a.0, b.1 - a.1)
}

/// Total tangent turning along a polyline, radians.
pub fn polyline_turning(pts: &[(f64, f64)]) -> f64 {
    pts.windows(3)
        .map(|w| turn(dir(w[0], w[1]), dir(w[1], w[2])))
        .sum()
}

/// Maslov index `mu(p,q)` from continuous line rotation: along the unstable
/// segment from `p` to `q`, counterclockwise from the unstable to the stable
/// line at `q`, along the stable segment back to `p`, then clockwise from
/// the stable to the unstable line at `p`; the total is a multiple of π.
pub fn float_maslov(d: &TangleDiagram, p: &str, q: &str) -> i64 {
    let u = float_segment(d, p, q, ManifoldKind::Unstable);
    let s = float_segment(d, q, p, ManifoldKind::Stable);
    let mut theta = polyline_turning(&u) + polyline_turning(&s);
    let u_in = dir(u[u.len() - 2], u[u.len() - 1]);
    let s_out = dir(s[0], s[1]);
    theta += ccw_line_angle(u_in, s_out);
    let s_in = dir(s[s.len() - 2], s[s.len() - 1]);
    let u_out = dir(u[0], u[1]);
    theta -= ccw_line_angle(u_out, s_in);
    let k = theta / std::f64::consts::PI;
    assert!(
        (k - k.round()).abs() < 1e-6,
        "rotation {k}π not a multiple of π"
    );
    k.round() as i64
}
