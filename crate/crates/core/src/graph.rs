//! Finite connected loopless multigraphs.
//!
//! Edges are stored multiplicity-compressed: one [`EdgeGroup`] per unordered
//! vertex pair, in order of first appearance. Individual edges (needed by
//! refinement and morphisms) are addressed by their *expanded* index, which
//! walks the groups in order and counts each parallel copy.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// A bundle of parallel edges between `u` and `v` (`u != v`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeGroup {
    pub u: Vertex,
    pub v: Vertex,
    pub multiplicity: u32,
}

/// Unvalidated graph description, as read from a graph file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphSpec {
    pub name: String,
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, u32)>,
}

impl GraphSpec {
    pub fn new(name: impl Into<String>) -> Self {
        GraphSpec {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn vertex(mut self, v: impl Into<String>) -> Self {
        self.vertices.push(v.into());
        self
    }

    pub fn vertices<I, S>(mut self, vs: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.vertices.extend(vs.into_iter().map(Into::into));
        self
    }

    pub fn edge(mut self, u: impl Into<String>, v: impl Into<String>, multiplicity: u32) -> Self {
        self.edges.push((u.into(), v.into(), multiplicity));
        self
    }

    pub fn build(&self) -> Result<Multigraph> {
        build_graph(self)
    }
}

#[derive(Debug, Clone)]
pub struct Multigraph {
    name: String,
    vertices: Vec<String>,
    index: HashMap<String, Vertex>,
    edges: Vec<EdgeGroup>,
    // neighbour lists with merged multiplicities, in edge-group order
    adjacency: Vec<Vec<(Vertex, u32)>>,
    degrees: Vec<u32>,
}

impl PartialEq for Multigraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Multigraph {}

/// Validates a [`GraphSpec`] and builds the graph.
pub fn build_graph(spec: &GraphSpec) -> Result<Multigraph> {
    let mut index = HashMap::with_capacity(spec.vertices.len());
    for (i, name) in spec.vertices.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(Error::DuplicateVertex(name.clone()));
        }
    }
    let lookup = |name: &String| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.clone()))
    };
    let mut edges = Vec::with_capacity(spec.edges.len());
    for (u, v, m) in &spec.edges {
        let (iu, iv) = (lookup(u)?, lookup(v)?);
        if iu == iv {
            return Err(Error::LoopEdge(u.clone()));
        }
        if *m == 0 {
            return Err(Error::ZeroMultiplicity(u.clone(), v.clone()));
        }
        edges.push((iu, iv, *m));
    }
    Multigraph::from_parts(spec.name.clone(), spec.vertices.clone(), &edges)
}

impl Multigraph {
    /// Builds a graph from vertex names and index-based edges. Parallel
    /// entries for the same pair are merged into one group.
    pub fn from_parts(
        name: String,
        vertices: Vec<String>,
        edges: &[(Vertex, Vertex, u32)],
    ) -> Result<Multigraph> {
        if vertices.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let n = vertices.len();
        let mut index = HashMap::with_capacity(n);
        for (i, name) in vertices.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }

        let mut groups: Vec<EdgeGroup> = Vec::new();
        let mut slot: HashMap<(Vertex, Vertex), usize> = HashMap::new();
        for &(u, v, m) in edges {
            if u >= n || v >= n {
                return Err(Error::UnknownVertex(format!("#{}", u.max(v))));
            }
            if u == v {
                return Err(Error::LoopEdge(vertices[u].clone()));
            }
            if m == 0 {
                return Err(Error::ZeroMultiplicity(
                    vertices[u].clone(),
                    vertices[v].clone(),
                ));
            }
            let key = (u.min(v), u.max(v));
            match slot.get(&key) {
                Some(&g) => groups[g].multiplicity += m,
                None => {
                    slot.insert(key, groups.len());
                    groups.push(EdgeGroup {
                        u,
                        v,
                        multiplicity: m,
                    });
                }
            }
        }

        let mut adjacency = vec![Vec::new(); n];
        let mut degrees = vec![0u32; n];
        for g in &groups {
            adjacency[g.u].push((g.v, g.multiplicity));
            adjacency[g.v].push((g.u, g.multiplicity));
            degrees[g.u] += g.multiplicity;
            degrees[g.v] += g.multiplicity;
        }

        let graph = Multigraph {
            name,
            vertices,
            index,
            edges: groups,
            adjacency,
            degrees,
        };
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(graph)
    }

    fn is_connected(&self) -> bool {
        self.distances_from(0).iter().all(Option::is_some)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(|g| g.multiplicity as usize).sum()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Result<Vertex> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge_groups(&self) -> &[EdgeGroup] {
        &self.edges
    }

    /// Endpoints of every individual edge, parallel copies listed
    /// consecutively in edge-group order.
    pub fn expanded_edges(&self) -> Vec<(Vertex, Vertex)> {
        self.edges
            .iter()
            .flat_map(|g| std::iter::repeat_n((g.u, g.v), g.multiplicity as usize))
            .collect()
    }

    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, u32)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> u32 {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Number of edges between `u` and `v`.
    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> u32 {
        self.adjacency[u]
            .iter()
            .find(|&&(w, _)| w == v)
            .map_or(0, |&(_, m)| m)
    }

    /// First Betti number `1 - |V| + |E|`.
    pub fn genus(&self) -> u64 {
        (1 + self.edge_count() - self.vertex_count()) as u64
    }

    /// BFS distances (in edges) from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &(w, _) in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn laplacian(&self) -> Vec<Vec<i64>> {
        let n = self.vertex_count();
        let mut lap = vec![vec![0i64; n]; n];
        for (v, row) in lap.iter_mut().enumerate() {
            row[v] = self.degrees[v] as i64;
            for &(w, m) in &self.adjacency[v] {
                row[w] -= m as i64;
            }
        }
        lap
    }

    /// Number of spanning trees, via the cofactor obtained by deleting row
    /// and column 0 of the Laplacian.
    pub fn spanning_tree_count(&self) -> BigInt {
        self.spanning_tree_count_deleting(0)
    }

    /// Kirchhoff cofactor with row and column `deleted` removed.
    pub fn spanning_tree_count_deleting(&self, deleted: Vertex) -> BigInt {
        let lap = self.laplacian();
        let minor: Vec<Vec<BigInt>> = lap
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != deleted)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != deleted)
                    .map(|(_, &x)| BigInt::from(x))
                    .collect()
            })
            .collect();
        bareiss_determinant(minor)
    }
}

/// Fraction-free Gaussian elimination; every division is exact.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero());
                a[i][j] = q;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
