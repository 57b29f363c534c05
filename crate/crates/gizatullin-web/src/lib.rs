//! Browser bindings. Every export returns a JSON string; failures come back
//! as `{"error": "..."}` so the page never has to catch exceptions.

use gizatullin::autgroup::{fibration_graph_shape, presentation_for, toric_report};
use gizatullin::document::parse_surface;
use gizatullin::dot::export_dot;
use gizatullin::extdiv::{
    exceptional_components_of, exceptional_components_of_reversed, validate, DiagnosticKind,
};
use gizatullin::orbits::orbit_decomposition;
use gizatullin::zigzag::{standardize, WeightedChain};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn render(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

pub fn toric_value(d: i64, e: i64) -> Result<Value, String> {
    let rep = toric_report(d, e).map_err(|e| e.to_string())?;
    let pres = presentation_for(&rep.shape).map_err(|e| e.to_string())?;
    Ok(json!({
        "d": rep.d,
        "e": rep.e,
        "e_prime": rep.e_prime,
        "shape": rep.shape.name(),
        "presentation": pres.formula,
        "divisor": rep.divisor.weights(),
    }))
}

pub fn standardize_value(chain: &str) -> Result<Value, String> {
    let chain: WeightedChain = chain
        .parse()
        .map_err(|e: gizatullin::zigzag::ZigzagError| e.to_string())?;
    let (std_chain, moves) = standardize(&chain).map_err(|e| e.to_string())?;
    Ok(json!({
        "input": chain.weights(),
        "standard": std_chain.weights(),
        "moves": moves.iter().map(ToString::to_string).collect::<Vec<_>>(),
    }))
}

pub fn analyze_value(document: &str) -> Result<Value, String> {
    let div = parse_surface(document).map_err(|e| e.to_string())?;
    let diagnostics = validate(&div);
    if let Some(d) = diagnostics
        .iter()
        .find(|d| d.kind == DiagnosticKind::Structural)
    {
        return Err(format!("{}: {}", d.location, d.message));
    }
    let warnings: Vec<String> = diagnostics
        .iter()
        .map(|d| format!("{}: {}", d.location, d.message))
        .collect();
    let e = exceptional_components_of(&div).map_err(|e| e.to_string())?;
    let e_rev = exceptional_components_of_reversed(&div).map_err(|e| e.to_string())?;
    let orbits = orbit_decomposition(&div).map_err(|e| e.to_string())?;
    let shape = fibration_graph_shape(&div).map_err(|e| e.to_string())?;
    Ok(json!({
        "warnings": warnings,
        "exceptional": e,
        "exceptional_reversed": e_rev,
        "verdict": orbits.verdict.to_string(),
        "fixed_points": orbits.fixed_points.len(),
        "orbit_count": orbits.orbit_count(),
        "orbits": orbits,
        "shape": shape.to_string(),
        "dot": export_dot(&div, true),
    }))
}

/// Toric surface data for `d, e` coprime.
#[wasm_bindgen]
pub fn toric(d: i32, e: i32) -> String {
    render(toric_value(d.into(), e.into()))
}

/// Standard form of a comma separated chain such as `-2,0,0,-3`.
#[wasm_bindgen(js_name = standardizeChain)]
pub fn standardize_chain(chain: &str) -> String {
    render(standardize_value(chain))
}

/// Exceptional sets, orbit report and fibration graph of a surface document.
#[wasm_bindgen(js_name = analyzeSurface)]
pub fn analyze_surface(document: &str) -> String {
    render(analyze_value(document))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toric_loop() {
        let v: Value = serde_json::from_str(&toric(8, 3)).unwrap();
        assert_eq!(v["e_prime"], 3);
        assert_eq!(v["shape"], "Loop");
    }

    #[test]
    fn errors_are_json() {
        let v: Value = serde_json::from_str(&toric(8, 2)).unwrap();
        assert!(v["error"].is_string());
        let v: Value = serde_json::from_str(&analyze_surface("{")).unwrap();
        assert!(v["error"].is_string());
    }

    #[test]
    fn standardizes() {
        let v: Value = serde_json::from_str(&standardize_chain("-2,0,0,-3")).unwrap();
        assert_eq!(v["standard"], json!([0, 0, -2, -3]));
    }

    #[test]
    fn worked_surface() {
        let doc = r#"{"weights":[0,0,-2,-3,-2,-2,-3],
            "feathers":[{"component":4,"point":{"r":"1","theta":"0"}}]}"#;
        let v: Value = serde_json::from_str(&analyze_surface(doc)).unwrap();
        assert_eq!(v["exceptional"], json!([3, 5]));
        assert_eq!(v["exceptional_reversed"], json!([5]));
        assert_eq!(v["verdict"], "NotTransitive");
        assert_eq!(v["orbit_count"], 2);
    }
}
