//! JSON file formats and report records.
//!
//! Graph file:
//! `{"name": "theta", "vertices": ["a","b","c"], "edges": [["a","b",2], ["b","c"]]}`
//! (multiplicity defaults to 1).
//!
//! Divisor file: `{"a": 1, "c": -2}`; omitted vertices are 0.
//!
//! Morphism file: graph references (paths relative to the morphism file, or
//! built-in family specs) plus maps keyed by vertex name. `edge_map[i]` is
//! the expanded target edge index of expanded source edge `i`.
//! `{"source": "c4.json", "target": "banana(1)", "vertex_map": {...},
//!   "edge_map": [0, 1, 0, 1], "local_degree": {...}, "legs": {...}}`
//! Missing `local_degree` entries default to 1; `legs` is optional.
//!
//! Contraction file: `{"source": ..., "target": ..., "classes": {...},
//! "contracted": [0, 3]}` with `classes` mapping every source vertex name to
//! a target vertex name.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::brill_noether::{BoundChain, BoundReport, TheoremBound};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::families;
use crate::graph::{GraphSpec, Multigraph};
use crate::harmonic::{
    Contraction, GraphMorphism, HarmonicReport, RiemannHurwitzReport, Violation,
};
use crate::search::{GonalityResult, SearchResult};

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum EdgeEntry {
    Pair(String, String),
    Weighted(String, String, u32),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    #[serde(default)]
    name: String,
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<EdgeEntry>,
}

fn format_err(e: impl std::fmt::Display) -> Error {
    Error::Format(e.to_string())
}

pub fn parse_graph(text: &str) -> Result<Multigraph> {
    let file: GraphFile = serde_json::from_str(text).map_err(format_err)?;
    let mut spec = GraphSpec::new(file.name).vertices(file.vertices);
    for e in file.edges {
        spec = match e {
            EdgeEntry::Pair(u, v) => spec.edge(u, v, 1),
            EdgeEntry::Weighted(u, v, m) => spec.edge(u, v, m),
        };
    }
    spec.build()
}

pub fn graph_to_json(graph: &Multigraph) -> Value {
    json!({
        "name": graph.name(),
        "vertices": graph.vertex_names(),
        "edges": graph.edge_groups().iter().map(|g| {
            json!([graph.vertex_name(g.u), graph.vertex_name(g.v), g.multiplicity])
        }).collect::<Vec<_>>(),
    })
}

/// Loads a graph file, or builds a family when `source` is a spec such as
/// `theta(2,2,2)` and no file of that name exists.
pub fn load_graph(source: &str, base_dir: Option<&Path>) -> Result<Multigraph> {
    let path = match base_dir {
        Some(dir) => dir.join(source),
        None => Path::new(source).to_path_buf(),
    };
    if path.exists() {
        let text = std::fs::read_to_string(&path).map_err(format_err)?;
        return parse_graph(&text);
    }
    if source.contains('(') {
        return families::from_spec(source);
    }
    Err(Error::Format(format!(
        "no such graph file {}",
        path.display()
    )))
}

pub fn parse_divisor(graph: &Multigraph, text: &str) -> Result<Divisor> {
    let map: BTreeMap<String, i64> = serde_json::from_str(text).map_err(format_err)?;
    divisor_from_map(graph, &map)
}

pub fn divisor_from_map(graph: &Multigraph, map: &BTreeMap<String, i64>) -> Result<Divisor> {
    let mut d = Divisor::zero(graph.vertex_count());
    for (name, &a) in map {
        d[graph.vertex_index(name)?] = a;
    }
    Ok(d)
}

/// Nonzero coefficients keyed by vertex name, in vertex order.
pub fn divisor_to_json(graph: &Multigraph, divisor: &Divisor) -> Value {
    let mut map = Map::new();
    for (v, &a) in divisor.coeffs().iter().enumerate() {
        if a != 0 {
            map.insert(graph.vertex_name(v).to_string(), json!(a));
        }
    }
    Value::Object(map)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismFile {
    source: String,
    target: String,
    vertex_map: BTreeMap<String, String>,
    edge_map: Vec<usize>,
    #[serde(default)]
    local_degree: BTreeMap<String, u32>,
    #[serde(default)]
    legs: BTreeMap<String, u32>,
}

pub fn parse_morphism(text: &str, base_dir: Option<&Path>) -> Result<GraphMorphism> {
    let file: MorphismFile = serde_json::from_str(text).map_err(format_err)?;
    let source = load_graph(&file.source, base_dir)?;
    let target = load_graph(&file.target, base_dir)?;
    let n = source.vertex_count();
    let mut vertex_map = vec![None; n];
    for (s, t) in &file.vertex_map {
        vertex_map[source.vertex_index(s)?] = Some(target.vertex_index(t)?);
    }
    let vertex_map = vertex_map
        .into_iter()
        .enumerate()
        .map(|(v, w)| {
            w.ok_or_else(|| Error::Format(format!("vertex_map misses {}", source.vertex_name(v))))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut local_degree = vec![1; n];
    for (s, &m) in &file.local_degree {
        local_degree[source.vertex_index(s)?] = m;
    }
    let mut legs = vec![0; n];
    for (s, &l) in &file.legs {
        legs[source.vertex_index(s)?] = l;
    }
    GraphMorphism::new(source, target, vertex_map, file.edge_map, local_degree)?.with_legs(legs)
}

pub fn load_morphism(path: &Path) -> Result<GraphMorphism> {
    parse_morphism(&read(path)?, path.parent())
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ContractionFile {
    source: String,
    target: String,
    classes: BTreeMap<String, String>,
    #[serde(default)]
    contracted: Vec<usize>,
}

pub fn parse_contraction(text: &str, base_dir: Option<&Path>) -> Result<Contraction> {
    let file: ContractionFile = serde_json::from_str(text).map_err(format_err)?;
    let source = load_graph(&file.source, base_dir)?;
    let target = load_graph(&file.target, base_dir)?;
    let mut classes = vec![None; source.vertex_count()];
    for (s, t) in &file.classes {
        classes[source.vertex_index(s)?] = Some(target.vertex_index(t)?);
    }
    let classes = classes
        .into_iter()
        .enumerate()
        .map(|(v, w)| {
            w.ok_or_else(|| Error::ClassMismatch(format!("no class for {}", source.vertex_name(v))))
        })
        .collect::<Result<Vec<_>>>()?;
    Contraction::new(source, target, classes, file.contracted)
}

pub fn load_contraction(path: &Path) -> Result<Contraction> {
    parse_contraction(&read(path)?, path.parent())
}

fn theorem_bound_json(b: &TheoremBound) -> Value {
    match b {
        TheoremBound::RiemannRochShortcut => json!("shortcut"),
        TheoremBound::Bound(b) => json!(b.to_string()),
    }
}

/// Big integers are written as decimal strings.
pub fn bound_report_json(report: &BoundReport) -> Value {
    let (lo, hi) = report.k_range();
    json!({
        "g": report.params.g,
        "d": report.params.d,
        "r": report.params.r,
        "rho": report.rho,
        "theorem_bound": theorem_bound_json(&report.theorem_bound),
        "legacy_bound": report.legacy_bound.as_ref().map(|b| b.to_string()),
        "legacy_shape": {"n": report.legacy_shape.0, "m": report.legacy_shape.1},
        "k_range": [lo.to_string(), hi.to_string()],
    })
}

pub fn bound_chain_json(chain: &BoundChain) -> Value {
    json!({
        "g": chain.params.g,
        "d": chain.params.d,
        "r": chain.params.r,
        "holds": chain.holds(),
        "links": chain.links(),
        "theorem_bound": chain.theorem_bound.to_string(),
        "g_fact_r_fact_pow_r": chain.r_factorial_term.to_string(),
        "g_fact_d_fact_pow_r": chain.d_factorial_term.to_string(),
        "g_fact_d_pow_dr": chain.d_power_term.to_string(),
        "legacy_bound": chain.legacy_bound.to_string(),
    })
}

pub fn search_result_json(result: &SearchResult) -> Value {
    let witness = match (&result.witness, &result.witness_graph) {
        (Some(w), Some(g)) => divisor_to_json(g, w),
        _ => Value::Null,
    };
    json!({
        "found": result.found,
        "k": result.k,
        "witness": witness,
        "classes_examined": result.classes_examined,
        "exhausted": result.exhausted,
        "stopped_by": result.stopped_by.map(|s| s.as_str()),
        "g": result.params.g,
        "d": result.params.d,
        "r": result.params.r,
        "rho": result.params.rho(),
        "theorem_bound": theorem_bound_json(&result.theorem_bound),
    })
}

pub fn gonality_json(graph: &Multigraph, result: &GonalityResult) -> Value {
    json!({
        "found": result.found.is_some(),
        "r": result.r,
        "d_max": result.d_max,
        "d": result.found.as_ref().map(|(d, _)| *d),
        "witness": result.found.as_ref().map(|(_, w)| divisor_to_json(graph, w)),
        "classes_examined": result.classes_examined,
    })
}

pub fn harmonic_report_json(f: &GraphMorphism, report: &HarmonicReport) -> Value {
    let target_edges = f.target().expanded_edges();
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| match *v {
            Violation::LocalDegree {
                vertex,
                target_edge,
                found,
                expected,
            } => {
                let (a, b) = target_edges[target_edge];
                json!({
                    "kind": "local_degree",
                    "vertex": f.source().vertex_name(vertex),
                    "target_edge": target_edge,
                    "target_edge_ends": [f.target().vertex_name(a), f.target().vertex_name(b)],
                    "found": found,
                    "expected": expected,
                })
            }
            Violation::GlobalDegree {
                target_vertex,
                found,
                expected,
            } => json!({
                "kind": "global_degree",
                "target_vertex": f.target().vertex_name(target_vertex),
                "found": found,
                "expected": expected,
            }),
        })
        .collect();
    json!({
        "harmonic": report.harmonic,
        "degree": report.degree,
        "violations": violations,
    })
}

pub fn riemann_hurwitz_json(f: &GraphMorphism, report: &RiemannHurwitzReport) -> Value {
    let mut ramification = Map::new();
    for (v, &c) in report.ramification.iter().enumerate() {
        if c != 0 {
            ramification.insert(f.source().vertex_name(v).to_string(), json!(c));
        }
    }
    let mut legs = Map::new();
    for (v, &l) in f.legs().iter().enumerate() {
        if l != 0 {
            legs.insert(f.source().vertex_name(v).to_string(), json!(l));
        }
    }
    json!({
        "degree": report.degree,
        "lhs": report.lhs,
        "rhs": report.rhs,
        "balanced": report.balanced,
        "ramification": ramification,
        "legs": legs,
    })
}
