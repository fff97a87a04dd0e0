//! Built-in examples against their checked-in manifests and the reference
//! boundary formulas.

use std::collections::BTreeMap;

use hft_core::chain::{build_complex, is_del_complete};
use hft_core::dynamics::{builtin_example, example_manifest, BUILTIN_NAMES, MANIFEST_VERSION};
use hft_core::tangle_io::{validate_tangle, TangleFile};
use hft_core::{Coefficients, GeneratorSet, OrientationChoice, TangleGeometry};

fn manifest_file(name: &str) -> serde_json::Value {
    let path = format!(
        "{}/fixtures/{name}.manifest.json",
        env!("CARGO_MANIFEST_DIR")
    );
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    serde_json::from_str(&text).unwrap()
}

#[test]
fn engine_reproduces_every_manifest() {
    for name in BUILTIN_NAMES {
        let stored = manifest_file(name);
        assert_eq!(stored["version"], MANIFEST_VERSION, "{name}");
        assert_eq!(example_manifest(name).unwrap(), stored, "{name}");
    }
}

fn boundary(name: &str, set: &[&str]) -> BTreeMap<String, Vec<(String, i64)>> {
    let d = builtin_example(name).unwrap();
    let g = TangleGeometry::new(&d);
    let e = GeneratorSet::from_strs(&d, set).unwrap();
    let c = build_complex(&g, &e, OrientationChoice::UPlus, Coefficients::Integer).unwrap();
    set.iter().map(|p| (p.to_string(), c.del(p))).collect()
}

fn terms(t: &[(&str, i64)]) -> Vec<(String, i64)> {
    t.iter().map(|(q, n)| (q.to_string(), *n)).collect()
}

#[test]
fn fig3b_left_boundary() {
    let b = boundary("fig3b_left", &["p", "q_a", "q_b", "r"]);
    assert_eq!(b["p"], terms(&[("q_a", -1), ("q_b", 1)]));
    assert_eq!(b["q_a"], terms(&[("r", 1)]));
    assert_eq!(b["q_b"], terms(&[("r", 1)]));
    assert!(b["r"].is_empty());
}

#[test]
fn fig6_boundaries() {
    let d_set = boundary("fig6a", &["p", "s"]);
    assert!(d_set.values().all(Vec::is_empty));
    let e_set = boundary("fig6b", &["p", "q", "r", "s"]);
    assert_eq!(e_set["p"], terms(&[("q", 1)]));
    let mut r = e_set["r"].clone();
    r.sort();
    assert_eq!(r, terms(&[("q", -1), ("s", 1)]));
}

#[test]
fn fig4_has_four_boundary_terms() {
    let d = builtin_example("fig4").unwrap();
    let g = TangleGeometry::new(&d);
    let t = g
        .sign_table(None, OrientationChoice::UPlus, Coefficients::Integer)
        .unwrap();
    let targets: Vec<&str> = t
        .nonzero()
        .filter(|(p, _, _)| *p == "p")
        .map(|(_, q, _)| q)
        .collect();
    assert_eq!(targets, ["q_1", "q_2", "q_3", "q_4"]);
}

#[test]
fn fig3a_is_incomplete_at_p() {
    let d = builtin_example("fig3a").unwrap();
    let g = TangleGeometry::new(&d);
    let e = GeneratorSet::from_strs(&d, &["p", "q", "r"]).unwrap();
    let c = build_complex(&g, &e, OrientationChoice::UPlus, Coefficients::Integer).unwrap();
    let v = is_del_complete(&g, &c).unwrap();
    assert!(!v.complete);
    assert_eq!(v.witness.as_deref(), Some("p"));
    assert_eq!(
        v.unpartnered_triple,
        Some(("p".into(), "q".into(), "r".into()))
    );
}

#[test]
fn builtin_files_round_trip_and_validate() {
    for name in BUILTIN_NAMES {
        let d = builtin_example(name).unwrap();
        let text = TangleFile::from_diagram(&d).to_json();
        let file = TangleFile::parse(&text).unwrap();
        assert!(validate_tangle(&file).is_valid(), "{name}");
        let again = file.into_diagram().unwrap();
        assert_eq!(TangleFile::from_diagram(&again).to_json(), text, "{name}");
        let ids: Vec<&str> = again.points.iter().map(|p| p.id.as_str()).collect();
        let orig: Vec<&str> = d.points.iter().map(|p| p.id.as_str()).collect();
        assert_eq!(ids, orig);
    }
}
