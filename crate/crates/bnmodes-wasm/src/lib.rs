//! Browser bindings for the static demo page. Each entry point takes model
//! text and mode strings, runs the analysis, and returns a JSON string for
//! the page to render. The logic lives in plain functions returning string
//! errors so it can be exercised on the native target; the exported wrappers
//! only translate errors at the JavaScript boundary.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use bnmodes::{
    export, fixed_points, BooleanNetwork, Config, GraphOrder, ModeSpec, TransitionGraph,
};

fn network(model: &str) -> Result<BooleanNetwork, String> {
    BooleanNetwork::parse(model).map_err(|e| e.to_string())
}

fn graph(net: &BooleanNetwork, mode_text: &str) -> Result<TransitionGraph, String> {
    let mode: ModeSpec = mode_text.parse().map_err(|e: bnmodes::ModeParseError| e.to_string())?;
    TransitionGraph::build(net, &mode).map_err(|e| e.to_string())
}

fn analyze_impl(model: &str, mode_text: &str) -> Result<String, String> {
    let net = network(model)?;
    let g = graph(&net, mode_text)?;
    let fixed = fixed_points(&net).map_err(|e| e.to_string())?;
    Ok(export::analysis_with_edges_json(
        &g,
        &g.limit_structure(),
        &fixed,
    ))
}

fn successors_impl(model: &str, mode_text: &str, from: &str) -> Result<String, String> {
    let net = network(model)?;
    let g = graph(&net, mode_text)?;
    let x = Config::from_text(from, net.dim()).map_err(|e| e.to_string())?;
    let succ: Vec<String> = g
        .successors(x.code())
        .iter()
        .map(|&code| Config::new(net.dim(), code).to_string())
        .collect();
    Ok(serde_json::to_string(&succ).expect("string list serialization cannot fail"))
}

#[derive(Serialize)]
struct CompareJson {
    n: usize,
    mode_a: String,
    mode_b: String,
    relation: &'static str,
    shared: Vec<(String, String)>,
    only_a: Vec<(String, String)>,
    only_b: Vec<(String, String)>,
}

fn compare_impl(model: &str, mode_a: &str, mode_b: &str) -> Result<String, String> {
    let net = network(model)?;
    let n = net.dim();
    let ga = graph(&net, mode_a)?;
    let gb = graph(&net, mode_b)?;
    let cmp = ga.compare(&gb).map_err(|e| e.to_string())?;
    let text = |edges: &[(u64, u64)]| {
        edges
            .iter()
            .map(|&(s, d)| (Config::new(n, s).to_string(), Config::new(n, d).to_string()))
            .collect()
    };
    let only_a: std::collections::BTreeSet<(u64, u64)> = cmp.only_left.iter().copied().collect();
    let shared: Vec<(u64, u64)> = ga.edges().filter(|e| !only_a.contains(e)).collect();
    Ok(serde_json::to_string(&CompareJson {
        n,
        mode_a: ga.mode().to_string(),
        mode_b: gb.mode().to_string(),
        relation: match cmp.order {
            GraphOrder::Equal => "equal",
            GraphOrder::Subset => "first-within-second",
            GraphOrder::Superset => "second-within-first",
            GraphOrder::Incomparable => "incomparable",
        },
        shared: text(&shared),
        only_a: text(&cmp.only_left),
        only_b: text(&cmp.only_right),
    })
    .expect("comparison serialization cannot fail"))
}

/// Transition graph plus limit structure for one (model, mode) pair.
#[wasm_bindgen]
pub fn analyze(model: &str, mode_text: &str) -> Result<String, JsError> {
    analyze_impl(model, mode_text).map_err(|e| JsError::new(&e))
}

/// Successor configurations of `from` under one mode.
#[wasm_bindgen]
pub fn successors(model: &str, mode_text: &str, from: &str) -> Result<String, JsError> {
    successors_impl(model, mode_text, from).map_err(|e| JsError::new(&e))
}

/// Edge-set comparison of two modes on the same model.
#[wasm_bindgen]
pub fn compare_modes(model: &str, mode_a: &str, mode_b: &str) -> Result<String, JsError> {
    compare_impl(model, mode_a, mode_b).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const REFERENCE: &str = "x1: !x3\nx2: !x1 & x3\nx3: !x1";

    #[test]
    fn analyze_reports_graph_and_attractors() {
        let json = analyze_impl(REFERENCE, "parallel").unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["edges"].as_array().unwrap().len(), 8);
        assert_eq!(v["limit_sets"].as_array().unwrap().len(), 3);
        assert_eq!(v["fixed_points"], serde_json::json!(["011", "100"]));
    }

    #[test]
    fn successors_lists_texts() {
        let json = successors_impl(REFERENCE, "memory:{1}", "101").unwrap();
        assert_eq!(json, r#"["000","100"]"#);
    }

    #[test]
    fn compare_orders_modes() {
        let json = compare_impl(REFERENCE, "fully-async", "async").unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["relation"], "first-within-second");
        assert_eq!(v["only_a"].as_array().unwrap().len(), 0);
        assert!(!v["only_b"].as_array().unwrap().is_empty());
    }

    #[test]
    fn errors_are_reported_as_messages() {
        assert!(analyze_impl("a: b", "parallel").unwrap_err().contains("undeclared"));
        assert!(analyze_impl(REFERENCE, "warp").unwrap_err().contains("unknown mode"));
        assert!(successors_impl(REFERENCE, "async", "0101").is_err());
        assert!(compare_impl(REFERENCE, "async", "bs:{1,2};{2}").is_err());
    }
}
