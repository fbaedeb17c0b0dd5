//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export takes and returns JSON text. The plain Rust functions in
//! [`api`] do the work so they can be tested natively.

use wasm_bindgen::prelude::*;

pub mod api;

fn js(result: Result<String, String>) -> Result<String, JsValue> {
    result.map_err(|e| JsValue::from_str(&e))
}

/// Preset documents as `[{"name": ..., "doc": {...}}]`.
#[wasm_bindgen]
pub fn presets() -> String {
    api::presets()
}

/// Replaces every vertex weight and every edge weight by one value each.
#[wasm_bindgen]
pub fn reweight(doc: &str, vertex_weight: f64, edge_weight: f64) -> Result<String, JsValue> {
    js(api::reweight(doc, vertex_weight, edge_weight))
}

#[wasm_bindgen]
pub fn spectrum_json(doc: &str) -> Result<String, JsValue> {
    js(api::spectrum(doc))
}

#[wasm_bindgen]
pub fn radius_json(doc: &str) -> Result<String, JsValue> {
    js(api::radius(doc))
}

#[wasm_bindgen]
pub fn matching_poly_json(doc: &str) -> Result<String, JsValue> {
    js(api::matching_poly(doc))
}
