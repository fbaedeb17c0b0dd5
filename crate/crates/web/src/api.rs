use serde::Serialize;
use serde_json::json;

use hypertree_spectra::doc::InputDocument;
use hypertree_spectra::hypertree::{shapes, Hypergraph, WeightedHypertree};
use hypertree_spectra::matching::matching_polynomial_dp;
use hypertree_spectra::scalar::{scalar_from_json, Scalar};
use hypertree_spectra::spectra::{eigenvalues, radius_cross_check, DEFAULT_TOL};

/// Subtree enumeration is exponential in the worst case; keep the page
/// responsive.
pub const MAX_EDGES: usize = 10;

#[derive(Serialize)]
struct Preset {
    name: &'static str,
    doc: InputDocument,
}

fn unit(graph: Hypergraph) -> InputDocument {
    let tree = WeightedHypertree::unit(graph).expect("preset shapes are hypertrees");
    InputDocument::from_weighted(&tree)
}

pub fn presets() -> String {
    let list = [
        Preset { name: "single edge, k = 3", doc: unit(shapes::single_edge()) },
        Preset { name: "loose path, 2 edges", doc: unit(shapes::loose_path(2, 3)) },
        Preset { name: "loose path, 4 edges", doc: unit(shapes::loose_path(4, 3)) },
        Preset { name: "star, 3 edges", doc: unit(shapes::star(3, 3)) },
        Preset { name: "star, 4 edges, k = 4", doc: unit(shapes::star(4, 4)) },
    ];
    serde_json::to_string(&list).expect("presets serialize")
}

fn tree(doc: &str) -> Result<WeightedHypertree, String> {
    let t = InputDocument::from_json(doc).and_then(|d| d.hypertree()).map_err(|e| e.to_string())?;
    if t.m() > MAX_EDGES {
        return Err(format!("{} edges is too many for the demo (limit {MAX_EDGES})", t.m()));
    }
    Ok(t)
}

/// Slider values are decimals; read them exactly, as the document parser
/// would.
fn scalar(value: f64) -> Result<Scalar, String> {
    let number = serde_json::Number::from_f64(value).ok_or_else(|| format!("{value} is not finite"))?;
    scalar_from_json(&serde_json::Value::Number(number)).map_err(|e| e.0)
}

pub fn reweight(doc: &str, vertex_weight: f64, edge_weight: f64) -> Result<String, String> {
    let mut d = InputDocument::from_json(doc).map_err(|e| e.to_string())?;
    d.vertex_weights = Some(vec![scalar(vertex_weight)?; d.n]);
    d.edge_weights = Some(vec![scalar(edge_weight)?; d.edges.len()]);
    d.weighting = None;
    Ok(d.to_json())
}

pub fn spectrum(doc: &str) -> Result<String, String> {
    let report = eigenvalues(&tree(doc)?, DEFAULT_TOL).map_err(|e| e.to_string())?;
    let points: Vec<[f64; 2]> = report.distinct().iter().map(|z| [z.re, z.im]).collect();
    Ok(json!({ "report": report, "points": points }).to_string())
}

pub fn radius(doc: &str) -> Result<String, String> {
    let check = radius_cross_check(&tree(doc)?).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&check).expect("radius serializes"))
}

pub fn matching_poly(doc: &str) -> Result<String, String> {
    let t = tree(doc)?;
    let p = matching_polynomial_dp(&t).map_err(|e| e.to_string())?;
    Ok(json!({ "coeffs": p.coeffs() }).to_string())
}
