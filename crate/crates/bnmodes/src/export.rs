//! DOT and JSON serialization of transition graphs and analysis results.
//! Output is canonical: nodes and edges are emitted in ascending
//! configuration order, so repeated runs are byte-identical.

use serde::Serialize;

use crate::config::Config;
use crate::graph::{LimitKind, LimitStructure, TransitionGraph};

#[derive(Debug, Clone, Copy, Default)]
pub struct ExportOptions {
    /// Strip self-loops before emitting.
    pub skip_loops: bool,
}

fn text(n: usize, code: u64) -> String {
    Config::new(n, code).to_string()
}

/// Graphviz rendering: one box per configuration, one arrow per transition.
pub fn to_dot(g: &TransitionGraph, options: ExportOptions) -> String {
    let n = g.dim();
    let mut out = String::from("digraph transitions {\n  node [shape=box];\n");
    for code in 0..g.node_count() as u64 {
        out.push_str(&format!("  \"{}\";\n", text(n, code)));
    }
    for (src, dst) in g.edges() {
        if options.skip_loops && src == dst {
            continue;
        }
        out.push_str(&format!("  \"{}\" -> \"{}\";\n", text(n, src), text(n, dst)));
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct GraphJson<'a> {
    n: usize,
    automata: &'a [String],
    mode: String,
    edges: Vec<(String, String)>,
}

/// JSON rendering of the edge set, lexicographically sorted.
pub fn to_json(g: &TransitionGraph, options: ExportOptions) -> String {
    let n = g.dim();
    let mut edges: Vec<(String, String)> = g
        .edges()
        .filter(|(s, d)| !(options.skip_loops && s == d))
        .map(|(s, d)| (text(n, s), text(n, d)))
        .collect();
    edges.sort();
    serde_json::to_string(&GraphJson {
        n,
        automata: g.automata(),
        mode: g.mode().to_string(),
        edges,
    })
    .expect("graph serialization cannot fail")
}

#[derive(Serialize)]
struct LimitSetJson {
    members: Vec<String>,
    kind: &'static str,
    attractor: bool,
    basin: Vec<String>,
}

#[derive(Serialize)]
struct AnalysisJson<'a> {
    n: usize,
    automata: &'a [String],
    mode: String,
    fixed_points: Vec<String>,
    limit_sets: Vec<LimitSetJson>,
}

#[derive(Serialize)]
struct FullJson<'a> {
    n: usize,
    automata: &'a [String],
    mode: String,
    edges: Vec<(String, String)>,
    fixed_points: Vec<String>,
    limit_sets: Vec<LimitSetJson>,
}

fn limit_sets_json(structure: &LimitStructure) -> Vec<LimitSetJson> {
    structure
        .sets
        .iter()
        .map(|s| LimitSetJson {
            members: s.members.iter().map(|c| c.to_string()).collect(),
            kind: match s.kind {
                LimitKind::FixedPoint => "fixed-point",
                LimitKind::LimitCycle => "limit-cycle",
            },
            attractor: s.is_attractor(),
            basin: s.basin.iter().map(|c| c.to_string()).collect(),
        })
        .collect()
}

/// JSON rendering of the limit structure together with the fixed points of
/// the global map.
pub fn analysis_to_json(
    g: &TransitionGraph,
    structure: &LimitStructure,
    fixed_points: &crate::config::ConfigSet,
) -> String {
    serde_json::to_string(&AnalysisJson {
        n: g.dim(),
        automata: g.automata(),
        mode: g.mode().to_string(),
        fixed_points: fixed_points.iter().map(|c| c.to_string()).collect(),
        limit_sets: limit_sets_json(structure),
    })
    .expect("analysis serialization cannot fail")
}

/// Combined rendering with both the edge set and the analysis, for clients
/// that draw the graph and annotate it in one pass.
pub fn analysis_with_edges_json(
    g: &TransitionGraph,
    structure: &LimitStructure,
    fixed_points: &crate::config::ConfigSet,
) -> String {
    let n = g.dim();
    let mut edges: Vec<(String, String)> = g
        .edges()
        .map(|(s, d)| (text(n, s), text(n, d)))
        .collect();
    edges.sort();
    serde_json::to_string(&FullJson {
        n,
        automata: g.automata(),
        mode: g.mode().to_string(),
        edges,
        fixed_points: fixed_points.iter().map(|c| c.to_string()).collect(),
        limit_sets: limit_sets_json(structure),
    })
    .expect("analysis serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixed_points;
    use crate::mode::ModeSpec;
    use crate::network::BooleanNetwork;

    const REFERENCE: &str = "x1: !x3\nx2: !x1 & x3\nx3: !x1\n";

    fn parallel_graph() -> TransitionGraph {
        let net = BooleanNetwork::parse(REFERENCE).unwrap();
        TransitionGraph::build(&net, &ModeSpec::Parallel).unwrap()
    }

    #[test]
    fn dot_output_counts_nodes_and_edges() {
        let dot = to_dot(&parallel_graph(), ExportOptions::default());
        assert_eq!(dot.matches(";").count(), 1 + 8 + 8);
        assert!(dot.contains("\"000\" -> \"101\";"));
        assert!(dot.contains("\"011\" -> \"011\";"));
        let no_loops = to_dot(&parallel_graph(), ExportOptions { skip_loops: true });
        assert_eq!(no_loops.matches("->").count(), 6);
    }

    #[test]
    fn dot_output_for_an_edgeless_graph_lists_nodes_only() {
        let g = TransitionGraph::from_edges(
            2,
            vec!["a".into(), "b".into()],
            ModeSpec::Parallel,
            std::iter::empty(),
        );
        let dot = to_dot(&g, ExportOptions::default());
        assert!(!dot.contains("->"));
        assert_eq!(dot.matches(";").count(), 1 + 4);
    }

    #[test]
    fn json_is_canonical_and_stable() {
        let a = to_json(&parallel_graph(), ExportOptions::default());
        let b = to_json(&parallel_graph(), ExportOptions::default());
        assert_eq!(a, b);
        let parsed: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(parsed["n"], 3);
        assert_eq!(parsed["mode"], "parallel");
        let edges = parsed["edges"].as_array().unwrap();
        assert_eq!(edges.len(), 8);
        let mut sorted = edges.clone();
        sorted.sort_by_key(|e| e.to_string());
        assert_eq!(*edges, sorted);
    }

    #[test]
    fn analysis_json_lists_limit_sets() {
        let g = parallel_graph();
        let net = BooleanNetwork::parse(REFERENCE).unwrap();
        let json = analysis_to_json(&g, &g.limit_structure(), &fixed_points(&net).unwrap());
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["fixed_points"], serde_json::json!(["011", "100"]));
        assert_eq!(parsed["limit_sets"].as_array().unwrap().len(), 3);
        assert_eq!(parsed["limit_sets"][0]["kind"], "limit-cycle");
        assert_eq!(parsed["limit_sets"][0]["attractor"], true);
    }
}
