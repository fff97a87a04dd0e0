//! Primary and semiprimary points.

use serde::Serialize;

use crate::tangle::{ManifoldKind, TangleDiagram};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointClass {
    pub id: String,
    pub primary: bool,
    pub semiprimary: bool,
    /// Points shared by the open segments `]p,x[_u` and `]p,x[_s`.
    pub shared: Vec<String>,
}

/// Classifies every point except the fixed point, in diagram order.
///
/// In the plane every homoclinic point is contractible, so the two notions
/// agree. A diagram always contains the segments from its points to `x`.
pub fn classify_points(diagram: &TangleDiagram) -> Vec<PointClass> {
    let x = diagram
        .index_of(diagram.fixed_point_id())
        .expect("fixed point indexed");
    diagram
        .points
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_fixed_point)
        .map(|(i, p)| {
            let on_u = diagram.between_indices(i, x, ManifoldKind::Unstable);
            let on_s = diagram.between_indices(i, x, ManifoldKind::Stable);
            let mut shared: Vec<String> = on_u
                .iter()
                .filter(|k| on_s.contains(k))
                .map(|&k| diagram.points[k].id.clone())
                .collect();
            shared.sort();
            let free = shared.is_empty();
            PointClass {
                id: p.id.clone(),
                primary: free,
                semiprimary: free,
                shared,
            }
        })
        .collect()
}

/// Ids of the primary points.
pub fn primary_points(diagram: &TangleDiagram) -> Vec<String> {
    classify_points(diagram)
        .into_iter()
        .filter(|c| c.primary)
        .map(|c| c.id)
        .collect()
}
