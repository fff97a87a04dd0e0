//! Data model for a finite window of a planar homoclinic tangle.
//!
//! A diagram stores two oriented polylines (the unstable and the stable
//! manifold) through the fixed point, each split into a positive and a
//! negative branch, together with the exact list of their transverse
//! intersections. Positions along a manifold are [`ManifoldParam`]s: a branch
//! sign plus a polyline offset (segment index plus fractional position).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{HftError, Result};
use crate::rational::{format_rational, parse_rational, Rational, RationalPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ManifoldKind {
    Stable,
    Unstable,
}

impl fmt::Display for ManifoldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldKind::Stable => write!(f, "stable"),
            ManifoldKind::Unstable => write!(f, "unstable"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Pos,
    Neg,
}

/// Orientation of a manifold relative to increasing signed parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    #[serde(rename = "+")]
    Forward,
    #[serde(rename = "-")]
    Backward,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Forward => Orientation::Backward,
            Orientation::Backward => Orientation::Forward,
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Orientation::Forward => 1,
            Orientation::Backward => -1,
        }
    }
}

/// Position along one manifold: branch plus nonnegative polyline offset.
///
/// Ordered by signed position: the negative branch runs from its far end
/// towards the fixed point, then the positive branch runs outwards.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ManifoldParam {
    pub branch: Branch,
    pub offset: Rational,
}

impl ManifoldParam {
    pub fn origin() -> Self {
        ManifoldParam {
            branch: Branch::Pos,
            offset: Rational::zero(),
        }
    }

    pub fn new(branch: Branch, offset: Rational) -> Self {
        let branch = if offset.is_zero() {
            Branch::Pos
        } else {
            branch
        };
        ManifoldParam { branch, offset }
    }

    pub fn from_signed(s: Rational) -> Self {
        if s.is_negative() {
            ManifoldParam::new(Branch::Neg, -s)
        } else {
            ManifoldParam::new(Branch::Pos, s)
        }
    }

    pub fn signed(&self) -> Rational {
        match self.branch {
            Branch::Pos => self.offset.clone(),
            Branch::Neg => -self.offset.clone(),
        }
    }

    pub fn is_origin(&self) -> bool {
        self.offset.is_zero()
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(ManifoldParam::from_signed(parse_rational(s)?))
    }
}

impl PartialOrd for ManifoldParam {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ManifoldParam {
    fn cmp(&self, other: &Self) -> Ordering {
        self.signed().cmp(&other.signed())
    }
}

impl fmt::Debug for ManifoldParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.signed()))
    }
}

impl fmt::Display for ManifoldParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for ManifoldParam {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        format_rational(&self.signed()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ManifoldParam {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let s = match v {
            serde_json::Value::String(s) => s,
            serde_json::Value::Number(n) => n.to_string(),
            other => return Err(serde::de::Error::custom(format!("bad parameter {other}"))),
        };
        ManifoldParam::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// One manifold as two polylines that both start at the fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldArc {
    pub kind: ManifoldKind,
    pub branch_pos: Vec<RationalPoint>,
    pub branch_neg: Vec<RationalPoint>,
    pub orientation: Orientation,
}

impl ManifoldArc {
    pub fn branch(&self, b: Branch) -> &[RationalPoint] {
        match b {
            Branch::Pos => &self.branch_pos,
            Branch::Neg => &self.branch_neg,
        }
    }

    pub fn fixed_point(&self) -> &RationalPoint {
        &self.branch_pos[0]
    }

    /// Smallest and largest signed parameter stored.
    pub fn param_range(&self) -> (Rational, Rational) {
        let lo = -Rational::from_integer((self.branch_neg.len().saturating_sub(1)).into());
        let hi = Rational::from_integer((self.branch_pos.len().saturating_sub(1)).into());
        (lo, hi)
    }

    /// All vertices in signed-parameter order together with their signed
    /// parameter (an integer).
    pub fn vertices(&self) -> Vec<(i64, &RationalPoint)> {
        let mut out = Vec::with_capacity(self.branch_pos.len() + self.branch_neg.len());
        for (i, v) in self.branch_neg.iter().enumerate().skip(1).rev() {
            out.push((-(i as i64), v));
        }
        for (i, v) in self.branch_pos.iter().enumerate() {
            out.push((i as i64, v));
        }
        out
    }

    /// Vertex at an integer signed parameter.
    pub fn vertex(&self, s: i64) -> Option<&RationalPoint> {
        if s >= 0 {
            self.branch_pos.get(s as usize)
        } else {
            self.branch_neg.get((-s) as usize)
        }
    }

    /// Segments as `(start signed param, a, b)` with `a -> b` in increasing
    /// parameter direction.
    pub fn segments(&self) -> Vec<(i64, &RationalPoint, &RationalPoint)> {
        let v = self.vertices();
        v.windows(2).map(|w| (w[0].0, w[0].1, w[1].1)).collect()
    }

    pub fn contains_param(&self, p: &ManifoldParam) -> bool {
        let (lo, hi) = self.param_range();
        let s = p.signed();
        s >= lo && s <= hi
    }

    /// Resolves a parameter to its planar position.
    pub fn resolve(&self, p: &ManifoldParam) -> Result<RationalPoint> {
        if !self.contains_param(p) {
            return Err(HftError::WindowExceeded(format!(
                "parameter {p} outside the stored {} arc",
                self.kind
            )));
        }
        let poly = self.branch(p.branch);
        let i = p.offset.floor().to_integer().to_usize().unwrap_or(0);
        let t = &p.offset - Rational::from_integer(i.into());
        if t.is_zero() {
            return Ok(poly[i].clone());
        }
        Ok(poly[i].lerp(&poly[i + 1], &t))
    }

    /// Direction of travel (increasing signed parameter) on the segment
    /// that starts at signed vertex parameter `s`.
    pub fn segment_direction(&self, s: i64) -> RationalPoint {
        let a = self.vertex(s).expect("segment start");
        let b = self.vertex(s + 1).expect("segment end");
        b.sub(a)
    }

    /// Polyline from `from` to `to` (either order), oriented from `from`.
    pub fn sub_polyline(
        &self,
        from: &ManifoldParam,
        to: &ManifoldParam,
    ) -> Result<Vec<RationalPoint>> {
        let a = self.resolve(from)?;
        let b = self.resolve(to)?;
        let sa = from.signed();
        let sb = to.signed();
        let mut out = vec![a];
        if sa == sb {
            return Ok(out);
        }
        let (lo, hi, rev) = if sa < sb {
            (sa, sb, false)
        } else {
            (sb, sa, true)
        };
        let first = lo.floor().to_integer().to_i64().unwrap_or(i64::MIN) + 1;
        let last = hi.ceil().to_integer().to_i64().unwrap_or(i64::MAX) - 1;
        let mut inner: Vec<RationalPoint> = (first..=last)
            .filter_map(|j| self.vertex(j).cloned())
            .collect();
        if rev {
            inner.reverse();
        }
        out.extend(inner);
        out.push(b);
        Ok(out)
    }
}

/// Crossing sign of the unstable manifold over the stable manifold.
pub type CrossingSign = i8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomoclinicPoint {
    pub id: String,
    pub position: RationalPoint,
    pub u_param: ManifoldParam,
    pub s_param: ManifoldParam,
    pub crossing_sign: CrossingSign,
    pub maslov: i64,
    pub is_fixed_point: bool,
}

/// W-orientation behaviour of the generating map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WOrientation {
    Preserving,
    Reversing,
}

/// A validated diagram: arcs, intersections, and free-form metadata.
///
/// Construct through [`TangleDiagram::from_arcs`] or the file loader; both
/// recompute intersections and Maslov indices exactly.
#[derive(Clone, Debug)]
pub struct TangleDiagram {
    pub unstable: ManifoldArc,
    pub stable: ManifoldArc,
    pub points: Vec<HomoclinicPoint>,
    pub metadata: serde_json::Map<String, serde_json::Value>,
    index: BTreeMap<String, usize>,
}

impl TangleDiagram {
    pub(crate) fn assemble(
        unstable: ManifoldArc,
        stable: ManifoldArc,
        points: Vec<HomoclinicPoint>,
        metadata: serde_json::Map<String, serde_json::Value>,
    ) -> Self {
        let index = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.id.clone(), i))
            .collect();
        TangleDiagram {
            unstable,
            stable,
            points,
            metadata,
            index,
        }
    }

    pub fn fixed_point(&self) -> &RationalPoint {
        self.unstable.fixed_point()
    }

    pub fn arc(&self, kind: ManifoldKind) -> &ManifoldArc {
        match kind {
            ManifoldKind::Stable => &self.stable,
            ManifoldKind::Unstable => &self.unstable,
        }
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| HftError::UnknownPoint(id.to_string()))
    }

    pub fn point(&self, id: &str) -> Result<&HomoclinicPoint> {
        Ok(&self.points[self.index_of(id)?])
    }

    pub fn fixed_point_id(&self) -> &str {
        &self
            .points
            .iter()
            .find(|p| p.is_fixed_point)
            .expect("fixed point present")
            .id
    }

    pub fn param_of(&self, idx: usize, kind: ManifoldKind) -> &ManifoldParam {
        match kind {
            ManifoldKind::Stable => &self.points[idx].s_param,
            ManifoldKind::Unstable => &self.points[idx].u_param,
        }
    }

    pub fn w_orientation(&self) -> WOrientation {
        match self.metadata.get("w_orientation").and_then(|v| v.as_str()) {
            Some("reversing") => WOrientation::Reversing,
            _ => WOrientation::Preserving,
        }
    }

    pub fn maslov(&self, id: &str) -> Result<i64> {
        Ok(self.point(id)?.maslov)
    }

    /// Renames points; ids absent from `names` keep their current id.
    pub fn relabel(&mut self, names: &BTreeMap<String, String>) -> Result<()> {
        for p in &mut self.points {
            if let Some(n) = names.get(&p.id) {
                p.id = n.clone();
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for p in &self.points {
            if !seen.insert(p.id.clone()) {
                return Err(HftError::Structural(format!(
                    "duplicate point id `{}`",
                    p.id
                )));
            }
        }
        self.index = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.id.clone(), i))
            .collect();
        Ok(())
    }

    /// The segment `[p,q]` on the requested manifold, oriented from `p` to
    /// `q`, with its orientation relative to the arc's orientation.
    pub fn segment(&self, p: &str, q: &str, kind: ManifoldKind) -> Result<Segment> {
        let ip = self.index_of(p)?;
        let iq = self.index_of(q)?;
        let arc = self.arc(kind);
        let from = self.param_of(ip, kind);
        let to = self.param_of(iq, kind);
        let polyline = arc.sub_polyline(from, to)?;
        let increasing = to > from;
        let relative = if from == to {
            None
        } else if increasing == (arc.orientation == Orientation::Forward) {
            Some(Orientation::Forward)
        } else {
            Some(Orientation::Backward)
        };
        Ok(Segment {
            polyline,
            relative_orientation: relative,
        })
    }

    /// Ids of homoclinic points strictly between `p` and `q` along `kind`.
    pub fn points_between(&self, p: &str, q: &str, kind: ManifoldKind) -> Result<Vec<String>> {
        let ip = self.index_of(p)?;
        let iq = self.index_of(q)?;
        Ok(self
            .between_indices(ip, iq, kind)
            .into_iter()
            .map(|i| self.points[i].id.clone())
            .collect())
    }

    pub(crate) fn between_indices(&self, ip: usize, iq: usize, kind: ManifoldKind) -> Vec<usize> {
        let a = self.param_of(ip, kind);
        let b = self.param_of(iq, kind);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let mut out: Vec<usize> = (0..self.points.len())
            .filter(|&i| {
                let t = self.param_of(i, kind);
                t > lo && t < hi
            })
            .collect();
        out.sort_by(|&x, &y| self.param_of(x, kind).cmp(self.param_of(y, kind)));
        out
    }

    /// True if each unstable branch meets each stable branch.
    pub fn strongly_intersecting(&self) -> bool {
        let mut seen = [[false; 2]; 2];
        for p in self.points.iter().filter(|p| !p.is_fixed_point) {
            let u = (p.u_param.branch == Branch::Neg) as usize;
            let s = (p.s_param.branch == Branch::Neg) as usize;
            seen[u][s] = true;
        }
        seen.iter().all(|r| r.iter().all(|&b| b))
    }

    /// Gradings of a list of ids, in order.
    pub fn degrees(&self, ids: &[String]) -> Result<Vec<i64>> {
        ids.iter().map(|id| self.maslov(id)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub polyline: Vec<RationalPoint>,
    /// `None` for the degenerate segment `[p,p]`.
    pub relative_orientation: Option<Orientation>,
}

/// A finite set of homoclinic points graded by the Maslov index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorSet {
    members: Vec<String>,
    degrees: Vec<i64>,
}

impl GeneratorSet {
    pub fn new(diagram: &TangleDiagram, ids: &[String]) -> Result<Self> {
        let mut pairs = Vec::with_capacity(ids.len());
        for id in ids {
            pairs.push((id.clone(), diagram.maslov(id)?));
        }
        pairs.sort();
        pairs.dedup_by(|a, b| a.0 == b.0);
        let (members, degrees) = pairs.into_iter().unzip();
        Ok(GeneratorSet { members, degrees })
    }

    pub fn from_strs(diagram: &TangleDiagram, ids: &[&str]) -> Result<Self> {
        let v: Vec<String> = ids.iter().map(|s| s.to_string()).collect();
        Self::new(diagram, &v)
    }

    pub fn empty() -> Self {
        GeneratorSet {
            members: Vec::new(),
            degrees: Vec::new(),
        }
    }

    pub fn members(&self) -> &[String] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.members
            .binary_search_by(|m| m.as_str().cmp(id))
            .is_ok()
    }

    pub fn degree_of(&self, id: &str) -> Option<i64> {
        self.members
            .binary_search_by(|m| m.as_str().cmp(id))
            .ok()
            .map(|i| self.degrees[i])
    }

    pub fn k_plus(&self) -> Option<i64> {
        self.degrees.iter().copied().max()
    }

    pub fn k_minus(&self) -> Option<i64> {
        self.degrees.iter().copied().min()
    }

    /// `E_k`, sorted by id.
    pub fn level(&self, k: i64) -> Vec<String> {
        self.members
            .iter()
            .zip(&self.degrees)
            .filter(|(_, &d)| d == k)
            .map(|(m, _)| m.clone())
            .collect()
    }

    pub fn is_subset_of(&self, other: &GeneratorSet) -> bool {
        self.members.iter().all(|m| other.contains(m))
    }

    pub fn without(&self, id: &str) -> GeneratorSet {
        let mut out = self.clone();
        if let Ok(i) = out.members.binary_search_by(|m| m.as_str().cmp(id)) {
            out.members.remove(i);
            out.degrees.remove(i);
        }
        out
    }

    pub fn union(&self, other: &GeneratorSet) -> GeneratorSet {
        let mut pairs: Vec<(String, i64)> = self
            .members
            .iter()
            .cloned()
            .zip(self.degrees.iter().copied())
            .chain(
                other
                    .members
                    .iter()
                    .cloned()
                    .zip(other.degrees.iter().copied()),
            )
            .collect();
        pairs.sort();
        pairs.dedup_by(|a, b| a.0 == b.0);
        let (members, degrees) = pairs.into_iter().unzip();
        GeneratorSet { members, degrees }
    }

    /// Levels `k_minus..=k_plus` that are nonempty.
    pub fn partition(&self) -> BTreeMap<i64, Vec<String>> {
        let mut out: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        for (m, d) in self.members.iter().zip(&self.degrees) {
            out.entry(*d).or_default().push(m.clone());
        }
        out
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.members.join(","))
    }
}
