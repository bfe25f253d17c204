//! Browser bindings: a few graphhom computations returning JSON strings.

use graphhom::complexes::{duality_report, graph_betti, ComplexSpec};
use graphhom::sheaves::selftest;
use serde_json::json;
use wasm_bindgen::prelude::*;

pub fn graph_table_json(
    operad: &str,
    rank: usize,
    twisted: bool,
    h_twist: bool,
    cohomology: bool,
) -> Result<String, String> {
    let mut spec = ComplexSpec::rank(operad, rank).with_h_twist(h_twist);
    if twisted {
        spec = spec.twisted();
    }
    let t = graph_betti(&spec, cohomology).map_err(|e| e.to_string())?;
    Ok(t.to_json().to_string())
}

pub fn ribbon_duality_json(operad: &str, genus: usize, boundary: usize) -> Result<String, String> {
    let spec = ComplexSpec::ribbon(operad, genus, boundary, false);
    match duality_report(&spec) {
        Ok(r) => Ok(r.to_json().to_string()),
        Err(e) => Err(e.to_string()),
    }
}

pub fn sheaf_selftest_json(seed: u64, cases: usize) -> Result<String, String> {
    let r = selftest(seed, cases).map_err(|e| e.to_string())?;
    let rows: Vec<_> = r
        .cases
        .iter()
        .map(|c| {
            json!({
                "seed": c.seed,
                "vertices": c.vertices,
                "faces": c.faces,
                "betti": c.table,
                "dual_betti": c.dual_table,
                "pass": c.passed(),
            })
        })
        .collect();
    Ok(json!({"pass": r.passed(), "cases": rows}).to_string())
}

/// Betti table of the graph complex of `operad` at loop order `rank`.
#[wasm_bindgen(js_name = graphTable)]
pub fn graph_table(operad: &str, rank: u32, twisted: bool, h_twist: bool, cohomology: bool) -> Result<String, JsValue> {
    graph_table_json(operad, rank as usize, twisted, h_twist, cohomology).map_err(|e| JsValue::from_str(&e))
}

/// Duality report for a ribbon sector `(g, b)`.
#[wasm_bindgen(js_name = ribbonDuality)]
pub fn ribbon_duality(operad: &str, genus: u32, boundary: u32) -> Result<String, JsValue> {
    ribbon_duality_json(operad, genus as usize, boundary as usize).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = sheafSelftest)]
pub fn sheaf_selftest(seed: u32, cases: u32) -> Result<String, JsValue> {
    sheaf_selftest_json(seed as u64, cases.min(50) as usize).map_err(|e| JsValue::from_str(&e))
}
