//! Homothetic refinement: `k` new vertices in the interior of every edge.

use std::collections::HashSet;

use crate::divisor::Divisor;
use crate::error::Result;
use crate::graph::{Multigraph, Vertex};

/// The refinement `G -> G^(k)` together with the inclusion of vertices.
///
/// Target vertex order is: every source vertex (same order), then the chain
/// vertices of each expanded source edge in turn. Chain vertices are named
/// `e<edge>.<position>` with `position` counted from the edge's first
/// endpoint, prefixed with `_` as often as needed to avoid clashing with an
/// existing vertex name.
#[derive(Debug, Clone)]
pub struct RefinementMap {
    source: Multigraph,
    target: Multigraph,
    k: usize,
    vertex_embedding: Vec<Vertex>,
    edge_chains: Vec<Vec<Vertex>>,
}

impl RefinementMap {
    pub fn source(&self) -> &Multigraph {
        &self.source
    }

    pub fn target(&self) -> &Multigraph {
        &self.target
    }

    pub fn into_target(self) -> Multigraph {
        self.target
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_embedding(&self) -> &[Vertex] {
        &self.vertex_embedding
    }

    /// For each expanded source edge, its chain of inserted vertices ordered
    /// from the edge's first endpoint to its second.
    pub fn edge_chains(&self) -> &[Vec<Vertex>] {
        &self.edge_chains
    }

    /// Pushes a divisor along the vertex inclusion (zero on new vertices).
    pub fn transport(&self, divisor: &Divisor) -> Result<Divisor> {
        divisor.check_on(&self.source)?;
        let mut out = Divisor::zero(self.target.vertex_count());
        for (v, &image) in self.vertex_embedding.iter().enumerate() {
            out[image] = divisor[v];
        }
        Ok(out)
    }
}

pub fn refine(graph: &Multigraph, k: usize) -> RefinementMap {
    let n = graph.vertex_count();
    let edges = graph.expanded_edges();

    if k == 0 {
        return RefinementMap {
            source: graph.clone(),
            target: graph.clone(),
            k,
            vertex_embedding: (0..n).collect(),
            edge_chains: vec![Vec::new(); edges.len()],
        };
    }

    let taken: HashSet<&str> = graph.vertex_names().iter().map(String::as_str).collect();
    let mut prefix = String::new();
    while (0..edges.len())
        .any(|e| (1..=k).any(|p| taken.contains(format!("{prefix}e{e}.{p}").as_str())))
    {
        prefix.push('_');
    }

    let mut vertices = graph.vertex_names().to_vec();
    vertices.reserve(k * edges.len());
    let mut target_edges = Vec::with_capacity((k + 1) * edges.len());
    let mut edge_chains = Vec::with_capacity(edges.len());
    for (e, &(u, v)) in edges.iter().enumerate() {
        let chain: Vec<Vertex> = (0..k).map(|i| n + e * k + i).collect();
        vertices.extend((1..=k).map(|p| format!("{prefix}e{e}.{p}")));
        let mut prev = u;
        for &w in &chain {
            target_edges.push((prev, w, 1));
            prev = w;
        }
        target_edges.push((prev, v, 1));
        edge_chains.push(chain);
    }

    let target = Multigraph::from_parts(format!("{}^({k})", graph.name()), vertices, &target_edges)
        .expect("refinement of a valid graph is valid");
    RefinementMap {
        source: graph.clone(),
        target,
        k,
        vertex_embedding: (0..n).collect(),
        edge_chains,
    }
}
