use serde_json::Value;

use htspec_web::api;

fn preset(name: &str) -> String {
    let list: Value = serde_json::from_str(&api::presets()).unwrap();
    let entry = list.as_array().unwrap().iter().find(|p| p["name"] == name).unwrap();
    entry["doc"].to_string()
}

#[test]
fn presets_parse() {
    let list: Value = serde_json::from_str(&api::presets()).unwrap();
    for p in list.as_array().unwrap() {
        assert!(api::spectrum(&p["doc"].to_string()).is_ok(), "{}", p["name"]);
    }
}

#[test]
fn loose_path_points() {
    let out: Value = serde_json::from_str(&api::spectrum(&preset("loose path, 2 edges")).unwrap()).unwrap();
    assert_eq!(out["points"].as_array().unwrap().len(), 7);
    assert_eq!(out["report"]["spectral_radius"], 2f64.cbrt());
}

#[test]
fn reweight_is_exact() {
    let doc = api::reweight(&preset("single edge, k = 3"), 0.5, 2.0).unwrap();
    let v: Value = serde_json::from_str(&doc).unwrap();
    assert_eq!(v["vertex_weights"][0], "1/2");
    assert!(v.get("weighting").is_none());
    // roots of (x - 1/2)^3 - 2^3
    let radius: Value = serde_json::from_str(&api::radius(&doc).unwrap()).unwrap();
    assert!((radius["by_roots"].as_f64().unwrap() - 2.5).abs() < 1e-9);
}

#[test]
fn matching_poly_of_single_edge() {
    assert_eq!(api::matching_poly(&preset("single edge, k = 3")).unwrap(), r#"{"coeffs":[-1,0,0,1]}"#);
}

#[test]
fn errors_are_messages() {
    assert!(api::spectrum("{").unwrap_err().contains("malformed"));
    let signed = api::reweight(&preset("star, 3 edges"), 0.0, -1.0).unwrap();
    assert!(api::radius(&signed).unwrap_err().contains("nonnegative"));
    let big = api::reweight(&serde_json::json!({"k":3,"n":23,"edges":(0..11).map(|i| [2*i, 2*i+1, 2*i+2]).collect::<Vec<_>>(),"weighting":"adjacency-unit"}).to_string(), 0.0, 1.0).unwrap();
    assert!(api::spectrum(&big).unwrap_err().contains("too many"));
}
