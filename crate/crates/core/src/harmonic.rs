//! Harmonic morphisms (stretching factor 1) and contractions.
//!
//! Edges are addressed by expanded index, see [`Multigraph::expanded_edges`].

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::graph::{Multigraph, Vertex};

#[derive(Debug, Clone)]
pub struct GraphMorphism {
    source: Multigraph,
    target: Multigraph,
    vertex_map: Vec<Vertex>,
    edge_map: Vec<usize>,
    local_degree: Vec<u32>,
    /// Marked ramification legs per source vertex; reported only.
    legs: Vec<u32>,
}

impl GraphMorphism {
    pub fn new(
        source: Multigraph,
        target: Multigraph,
        vertex_map: Vec<Vertex>,
        edge_map: Vec<usize>,
        local_degree: Vec<u32>,
    ) -> Result<Self> {
        let n = source.vertex_count();
        for (what, len) in [
            ("vertex_map", vertex_map.len()),
            ("local_degree", local_degree.len()),
        ] {
            if len != n {
                return Err(Error::PreconditionViolated(format!(
                    "{what} has {len} entries, source has {n} vertices"
                )));
            }
        }
        let source_edges = source.edge_count();
        if edge_map.len() != source_edges {
            return Err(Error::PreconditionViolated(format!(
                "edge_map has {} entries, source has {source_edges} edges",
                edge_map.len()
            )));
        }
        if let Some(&w) = vertex_map.iter().find(|&&w| w >= target.vertex_count()) {
            return Err(Error::UnknownVertex(format!("#{w}")));
        }
        if let Some(&e) = edge_map.iter().find(|&&e| e >= target.edge_count()) {
            return Err(Error::PreconditionViolated(format!(
                "target edge {e} out of range"
            )));
        }
        if local_degree.contains(&0) {
            return Err(Error::PreconditionViolated(
                "local degrees must be positive".into(),
            ));
        }
        Ok(GraphMorphism {
            source,
            target,
            vertex_map,
            edge_map,
            local_degree,
            legs: vec![0; n],
        })
    }

    pub fn with_legs(mut self, legs: Vec<u32>) -> Result<Self> {
        if legs.len() != self.source.vertex_count() {
            return Err(Error::PreconditionViolated(
                "one leg count per source vertex".into(),
            ));
        }
        self.legs = legs;
        Ok(self)
    }

    /// The identity on `graph`.
    pub fn identity(graph: &Multigraph) -> Self {
        let n = graph.vertex_count();
        GraphMorphism {
            source: graph.clone(),
            target: graph.clone(),
            vertex_map: (0..n).collect(),
            edge_map: (0..graph.edge_count()).collect(),
            local_degree: vec![1; n],
            legs: vec![0; n],
        }
    }

    pub fn source(&self) -> &Multigraph {
        &self.source
    }

    pub fn target(&self) -> &Multigraph {
        &self.target
    }

    pub fn vertex_map(&self) -> &[Vertex] {
        &self.vertex_map
    }

    pub fn edge_map(&self) -> &[usize] {
        &self.edge_map
    }

    pub fn local_degree(&self) -> &[u32] {
        &self.local_degree
    }

    pub fn legs(&self) -> &[u32] {
        &self.legs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Source vertex `vertex` has `found` edges over `target_edge`
    /// (incident to its image) instead of its local degree `expected`.
    LocalDegree {
        vertex: Vertex,
        target_edge: usize,
        found: u32,
        expected: u32,
    },
    /// The fiber over `target_vertex` has total local degree `found`,
    /// differing from the fiber over the first target vertex.
    GlobalDegree {
        target_vertex: Vertex,
        found: u64,
        expected: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicReport {
    pub harmonic: bool,
    /// Common fiber degree, when constant.
    pub degree: Option<u64>,
    pub violations: Vec<Violation>,
}

pub fn check_harmonic(f: &GraphMorphism) -> Result<HarmonicReport> {
    let source_edges = f.source.expanded_edges();
    let target_edges = f.target.expanded_edges();

    for (e, &(u, v)) in source_edges.iter().enumerate() {
        let (a, b) = target_edges[f.edge_map[e]];
        let (fu, fv) = (f.vertex_map[u], f.vertex_map[v]);
        if !((fu == a && fv == b) || (fu == b && fv == a)) {
            return Err(Error::EndpointMismatch(e));
        }
    }

    // over[v][t] = number of source edges at v mapping to target edge t
    let mut over = vec![std::collections::BTreeMap::<usize, u32>::new(); f.source.vertex_count()];
    for (e, &(u, v)) in source_edges.iter().enumerate() {
        let t = f.edge_map[e];
        *over[u].entry(t).or_default() += 1;
        *over[v].entry(t).or_default() += 1;
    }

    let mut violations = Vec::new();
    for v in 0..f.source.vertex_count() {
        let image = f.vertex_map[v];
        let expected = f.local_degree[v];
        for (t, &(a, b)) in target_edges.iter().enumerate() {
            if a != image && b != image {
                continue;
            }
            let found = over[v].get(&t).copied().unwrap_or(0);
            if found != expected {
                violations.push(Violation::LocalDegree {
                    vertex: v,
                    target_edge: t,
                    found,
                    expected,
                });
            }
        }
    }

    let mut fiber = vec![0u64; f.target.vertex_count()];
    for (v, &w) in f.vertex_map.iter().enumerate() {
        fiber[w] += f.local_degree[v] as u64;
    }
    let expected = fiber[0];
    for (w, &found) in fiber.iter().enumerate() {
        if found != expected {
            violations.push(Violation::GlobalDegree {
                target_vertex: w,
                found,
                expected,
            });
        }
    }
    let constant = fiber.iter().all(|&x| x == expected);

    Ok(HarmonicReport {
        harmonic: violations.is_empty(),
        degree: constant.then_some(expected),
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiemannHurwitzReport {
    pub degree: u64,
    /// `2 g(source) - 2`.
    pub lhs: i64,
    /// `deg (2 g(target) - 2) + sum_v 2 (m_f(v) - 1)`.
    pub rhs: i64,
    /// `2 (m_f(v) - 1)` per source vertex.
    pub ramification: Vec<i64>,
    pub balanced: bool,
}

pub fn riemann_hurwitz_check(f: &GraphMorphism) -> Result<RiemannHurwitzReport> {
    let report = check_harmonic(f)?;
    let degree = match (report.harmonic, report.degree) {
        (true, Some(d)) => d,
        _ => return Err(Error::NotHarmonic),
    };
    let euler = |g: &Multigraph| 2 * g.genus() as i64 - 2;
    let ramification: Vec<i64> = f.local_degree.iter().map(|&m| 2 * (m as i64 - 1)).collect();
    let lhs = euler(&f.source);
    let rhs = degree as i64 * euler(&f.target) + ramification.iter().sum::<i64>();
    Ok(RiemannHurwitzReport {
        degree,
        lhs,
        rhs,
        ramification,
        balanced: lhs == rhs,
    })
}

/// `(f^* D)(v) = m_f(v) D(f(v))`.
pub fn pullback(f: &GraphMorphism, divisor: &Divisor) -> Result<Divisor> {
    divisor.check_on(&f.target)?;
    if !check_harmonic(f)?.harmonic {
        return Err(Error::NotHarmonic);
    }
    Ok(Divisor::new(
        f.vertex_map
            .iter()
            .zip(&f.local_degree)
            .map(|(&w, &m)| m as i64 * divisor[w])
            .collect(),
    ))
}

/// A contraction of some edges of `source` onto `target`; `classes[v]` is
/// the target vertex that source vertex `v` collapses into.
#[derive(Debug, Clone)]
pub struct Contraction {
    source: Multigraph,
    target: Multigraph,
    classes: Vec<Vertex>,
    contracted: Vec<usize>,
}

impl Contraction {
    /// Validates that contracting `contracted` (expanded source edge
    /// indices) and merging the resulting components per `classes` yields
    /// `target` exactly.
    pub fn new(
        source: Multigraph,
        target: Multigraph,
        classes: Vec<Vertex>,
        mut contracted: Vec<usize>,
    ) -> Result<Self> {
        let mismatch = |msg: String| Err(Error::ClassMismatch(msg));
        let n = source.vertex_count();
        if classes.len() != n {
            return mismatch(format!(
                "{} class entries for {n} source vertices",
                classes.len()
            ));
        }
        if let Some(&w) = classes.iter().find(|&&w| w >= target.vertex_count()) {
            return mismatch(format!("class #{w} is not a target vertex"));
        }
        let mut hit = vec![false; target.vertex_count()];
        for &w in &classes {
            hit[w] = true;
        }
        if let Some(w) = hit.iter().position(|&h| !h) {
            return mismatch(format!(
                "target vertex {} has no preimage",
                target.vertex_name(w)
            ));
        }

        contracted.sort_unstable();
        contracted.dedup();
        let edges = source.expanded_edges();
        if let Some(&e) = contracted.iter().find(|&&e| e >= edges.len()) {
            return mismatch(format!("contracted edge {e} out of range"));
        }

        // components of the contracted subgraph must be exactly the classes
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &e in &contracted {
            let (u, v) = edges[e];
            if classes[u] != classes[v] {
                return mismatch(format!("contracted edge {e} joins different classes"));
            }
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            parent[ru] = rv;
        }
        let mut root_of_class = vec![None; target.vertex_count()];
        for v in 0..n {
            let root = find(&mut parent, v);
            match root_of_class[classes[v]] {
                None => root_of_class[classes[v]] = Some(root),
                Some(r) if r != root => {
                    return mismatch(format!(
                        "class of {} is not connected by contracted edges",
                        target.vertex_name(classes[v])
                    ))
                }
                _ => {}
            }
        }

        // surviving edges must reproduce the target's edge multiset
        let mut counts = std::collections::BTreeMap::<(Vertex, Vertex), u32>::new();
        for (e, &(u, v)) in edges.iter().enumerate() {
            if contracted.binary_search(&e).is_ok() {
                continue;
            }
            let (a, b) = (classes[u], classes[v]);
            if a == b {
                return mismatch(format!("uncontracted edge {e} would become a loop"));
            }
            *counts.entry((a.min(b), a.max(b))).or_default() += 1;
        }
        let expected: std::collections::BTreeMap<_, _> = target
            .edge_groups()
            .iter()
            .map(|g| ((g.u.min(g.v), g.u.max(g.v)), g.multiplicity))
            .collect();
        if counts != expected {
            return mismatch("surviving edges do not match the target's edges".into());
        }

        Ok(Contraction {
            source,
            target,
            classes,
            contracted,
        })
    }

    pub fn source(&self) -> &Multigraph {
        &self.source
    }

    pub fn target(&self) -> &Multigraph {
        &self.target
    }

    pub fn classes(&self) -> &[Vertex] {
        &self.classes
    }

    pub fn contracted(&self) -> &[usize] {
        &self.contracted
    }
}

/// Sums coefficients over each class.
pub fn pushforward_contraction(pi: &Contraction, divisor: &Divisor) -> Result<Divisor> {
    if divisor.len() != pi.source.vertex_count() {
        return Err(Error::ClassMismatch(format!(
            "divisor has {} coefficients, source has {} vertices",
            divisor.len(),
            pi.source.vertex_count()
        )));
    }
    let mut out = Divisor::zero(pi.target.vertex_count());
    for (v, &w) in pi.classes.iter().enumerate() {
        out[w] += divisor[v];
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::refine::refine;

    fn path_onto_edge(mid: u32) -> GraphMorphism {
        GraphMorphism::new(
            families::path(3),
            families::path(2),
            vec![0, 1, 0],
            vec![0, 0],
            vec![1, mid, 1],
        )
        .unwrap()
    }

    // C4 = B2^(1) in chain order v0, e0.1, v1, e1.1 onto B2 = {x, y}.
    fn square_onto_banana() -> GraphMorphism {
        let c4 = families::cycle(4);
        GraphMorphism::new(
            c4,
            families::banana(1),
            vec![0, 1, 0, 1],
            vec![0, 1, 0, 1],
            vec![1, 1, 1, 1],
        )
        .unwrap()
    }

    #[test]
    fn identity_is_harmonic() {
        for g in [
            families::theta(2, 2, 2),
            families::chain_of_loops(2),
            families::star(4),
        ] {
            let report = check_harmonic(&GraphMorphism::identity(&g)).unwrap();
            assert!(report.harmonic);
            assert_eq!(report.degree, Some(1));
            let rh = riemann_hurwitz_check(&GraphMorphism::identity(&g)).unwrap();
            assert!(rh.balanced);
        }
    }

    #[test]
    fn folded_path() {
        let f = path_onto_edge(2);
        let report = check_harmonic(&f).unwrap();
        assert!(report.harmonic);
        assert_eq!(report.degree, Some(2));
        let rh = riemann_hurwitz_check(&f).unwrap();
        assert_eq!((rh.lhs, rh.rhs), (-2, -2));
        assert_eq!(rh.ramification, vec![0, 2, 0]);

        let d = pullback(&f, &Divisor::new(vec![0, 1])).unwrap();
        assert_eq!(d.coeffs(), &[0, 2, 0]);
    }

    #[test]
    fn folded_path_with_wrong_degree() {
        let f = path_onto_edge(1);
        let report = check_harmonic(&f).unwrap();
        assert!(!report.harmonic);
        assert!(report.violations.contains(&Violation::LocalDegree {
            vertex: 1,
            target_edge: 0,
            found: 2,
            expected: 1
        }));
        assert_eq!(riemann_hurwitz_check(&f), Err(Error::NotHarmonic));
        assert_eq!(pullback(&f, &Divisor::zero(2)), Err(Error::NotHarmonic));
    }

    #[test]
    fn square_double_covers_banana() {
        let f = square_onto_banana();
        let report = check_harmonic(&f).unwrap();
        assert!(report.harmonic);
        assert_eq!(report.degree, Some(2));
        let rh = riemann_hurwitz_check(&f).unwrap();
        assert_eq!((rh.lhs, rh.rhs), (0, 0));
        let d = pullback(&f, &Divisor::new(vec![1, 0])).unwrap();
        assert_eq!(d.coeffs(), &[1, 0, 1, 0]);
    }

    #[test]
    fn endpoint_mismatch() {
        let f = GraphMorphism::new(
            families::cycle(4),
            families::banana(1),
            vec![0, 0, 1, 1],
            vec![0, 1, 0, 1],
            vec![1, 1, 1, 1],
        )
        .unwrap();
        assert_eq!(check_harmonic(&f), Err(Error::EndpointMismatch(0)));
    }

    #[test]
    fn contraction_of_refined_banana() {
        let map = refine(&families::banana(1), 1);
        let c4 = map.target().clone();
        // vertices: v0, v1, e0.1, e1.1; edges: v0-e0.1, e0.1-v1, v0-e1.1, e1.1-v1
        let pi = Contraction::new(
            c4.clone(),
            families::banana(1),
            vec![0, 1, 0, 1],
            vec![0, 3],
        )
        .unwrap();
        let d = map.transport(&Divisor::new(vec![1, 1])).unwrap();
        assert_eq!(pushforward_contraction(&pi, &d).unwrap().coeffs(), &[1, 1]);

        let pi = Contraction::new(
            c4.clone(),
            families::banana(1),
            vec![0, 1, 0, 0],
            vec![0, 2],
        )
        .unwrap();
        let d = Divisor::new(vec![1, 0, 1, 0]);
        assert_eq!(pushforward_contraction(&pi, &d).unwrap().coeffs(), &[2, 0]);

        assert!(
            Contraction::new(c4.clone(), families::banana(1), vec![0, 1, 0, 1], vec![0]).is_err()
        );
        assert!(matches!(
            pushforward_contraction(&pi, &Divisor::zero(2)),
            Err(Error::ClassMismatch(_))
        ));
    }

    #[test]
    fn identity_contraction() {
        let g = families::theta(2, 2, 2);
        let pi = Contraction::new(g.clone(), g.clone(), vec![0, 1, 2], vec![]).unwrap();
        let d = Divisor::new(vec![4, -1, 2]);
        assert_eq!(pushforward_contraction(&pi, &d).unwrap(), d);
    }
}
