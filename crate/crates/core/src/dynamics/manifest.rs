//! Expected-value manifests for the built-in examples.

use serde_json::{json, Map, Value};

use super::examples::builtin_example;
use crate::chain::{build_complex, is_del_complete, local_floer_homology};
use crate::error::Result;
use crate::geometry::{Coefficients, OrientationChoice, TangleGeometry};
use crate::tangle::GeneratorSet;

pub const MANIFEST_VERSION: u32 = 1;

/// The generator set each example is built around.
pub fn example_set(name: &str) -> &'static [&'static str] {
    match name {
        "fig3a" => &["p", "q", "r"],
        "fig3b_left" | "fig3b_right" => &["p", "q_a", "q_b", "r"],
        "fig4" => &["p", "q_1", "q_2", "q_3", "q_4"],
        "fig5" => &["p", "q_a", "q_b", "r", "r_prime"],
        "fig6a" => &["p", "s"],
        "fig6b" => &["p", "q", "r", "s"],
        "cascade" => &["p", "q", "r", "q_prime", "r_prime"],
        _ => &[],
    }
}

/// Points, Maslov indices, signs, boundary, completeness, pruning and
/// homology of a built-in example, as computed by the engine.
pub fn example_manifest(name: &str) -> Result<Value> {
    let d = builtin_example(name)?;
    let g = TangleGeometry::new(&d);
    let (o, z) = (OrientationChoice::UPlus, Coefficients::Integer);
    let points: Vec<Value> = d
        .points
        .iter()
        .map(|p| json!({"id": p.id, "mu": p.maslov, "position": p.position}))
        .collect();
    let signs: Vec<Value> = g
        .sign_table(None, o, z)?
        .nonzero()
        .map(|(p, q, n)| json!([p, q, n]))
        .collect();
    let set = GeneratorSet::from_strs(&d, example_set(name))?;
    let complex = build_complex(&g, &set, o, z)?;
    let mut boundary = Map::new();
    for p in set.members() {
        let terms: Map<String, Value> = complex
            .del(p)
            .into_iter()
            .map(|(q, n)| (q, json!(n)))
            .collect();
        boundary.insert(p.clone(), Value::Object(terms));
    }
    let complete = is_del_complete(&g, &complex)?;
    let floer = local_floer_homology(&g, &set, o, z)?;
    let homology: Map<String, Value> = floer
        .homology
        .iter()
        .map(|(k, h)| (k.to_string(), json!(h.to_string())))
        .collect();
    Ok(json!({
        "version": MANIFEST_VERSION,
        "example": name,
        "orientation": o,
        "points": points,
        "signs": signs,
        "set": set.members(),
        "boundary": boundary,
        "complete": complete.complete,
        "witness": complete.witness,
        "pruned": floer.pruned,
        "homology": homology,
    }))
}
