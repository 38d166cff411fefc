//! q-reduced divisors, Dhar's burning algorithm and class enumeration.

use crate::divisor::{fire_mask, Divisor};
use crate::error::{Error, Result};
use crate::graph::{Multigraph, Vertex};

/// A divisor that is q-reduced with respect to `base`: non-negative away
/// from the base and superstable there. Unique in its linear-equivalence
/// class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedDivisor {
    divisor: Divisor,
    base: Vertex,
}

impl ReducedDivisor {
    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    pub fn into_divisor(self) -> Divisor {
        self.divisor
    }

    pub fn base(&self) -> Vertex {
        self.base
    }

    /// Coefficient at the base vertex. The class has an effective member
    /// iff this is non-negative.
    pub fn base_coefficient(&self) -> i64 {
        self.divisor[self.base]
    }
}

/// Reusable reduction state for one graph and base vertex: BFS layers from
/// the base plus scratch buffers for Dhar's algorithm.
#[derive(Debug, Clone)]
pub struct Reducer<'g> {
    graph: &'g Multigraph,
    base: Vertex,
    // layers[i] = vertices at distance i from the base
    layers: Vec<Vec<Vertex>>,
    // edges to the previous layer, per vertex
    down_degree: Vec<i64>,
    // (u at distance i-1, v at distance i, multiplicity), grouped by i
    crossings: Vec<Vec<(Vertex, Vertex, i64)>>,
    burnt: Vec<bool>,
    heat: Vec<i64>,
    stack: Vec<Vertex>,
}

impl<'g> Reducer<'g> {
    pub fn new(graph: &'g Multigraph, base: Vertex) -> Result<Self> {
        let n = graph.vertex_count();
        if base >= n {
            return Err(Error::UnknownVertex(format!("#{base}")));
        }
        let dist: Vec<usize> = graph
            .distances_from(base)
            .into_iter()
            .map(|d| d.expect("graph is connected"))
            .collect();
        let depth = dist.iter().copied().max().unwrap_or(0);
        let mut layers = vec![Vec::new(); depth + 1];
        for (v, &d) in dist.iter().enumerate() {
            layers[d].push(v);
        }
        let mut down_degree = vec![0i64; n];
        let mut crossings = vec![Vec::new(); depth + 1];
        for g in graph.edge_groups() {
            let (du, dv) = (dist[g.u], dist[g.v]);
            if du == dv {
                continue;
            }
            let (near, far) = if du < dv { (g.u, g.v) } else { (g.v, g.u) };
            let m = g.multiplicity as i64;
            down_degree[far] += m;
            crossings[dist[far]].push((near, far, m));
        }
        Ok(Reducer {
            graph,
            base,
            layers,
            down_degree,
            crossings,
            burnt: vec![false; n],
            heat: vec![0; n],
            stack: Vec::with_capacity(n),
        })
    }

    pub fn graph(&self) -> &'g Multigraph {
        self.graph
    }

    pub fn base(&self) -> Vertex {
        self.base
    }

    /// Runs Dhar's burning process from the base. Returns true when every
    /// vertex burns, i.e. the configuration off the base is superstable.
    /// Afterwards `self.burnt` holds the burnt set and `self.heat[v]` the
    /// number of edges from `v` to burnt vertices.
    fn burn(&mut self, divisor: &Divisor) -> bool {
        self.burnt.fill(false);
        self.heat.fill(0);
        self.stack.clear();
        self.burnt[self.base] = true;
        self.stack.push(self.base);
        let mut count = 1;
        while let Some(u) = self.stack.pop() {
            for &(w, m) in self.graph.neighbors(u) {
                if !self.burnt[w] {
                    self.heat[w] += m as i64;
                    if self.heat[w] > divisor[w] {
                        self.burnt[w] = true;
                        count += 1;
                        self.stack.push(w);
                    }
                }
            }
        }
        count == self.burnt.len()
    }

    /// True iff `divisor` is non-negative off the base and Dhar's process
    /// burns everything.
    pub fn is_reduced(&mut self, divisor: &Divisor) -> bool {
        let base = self.base;
        divisor
            .coeffs()
            .iter()
            .enumerate()
            .all(|(v, &a)| v == base || a >= 0)
            && self.burn(divisor)
    }

    /// Replaces `divisor` with its q-reduced representative.
    pub fn reduce_in_place(&mut self, divisor: &mut Divisor) {
        // Phase 1: clear debt layer by layer, outermost first. Firing every
        // vertex closer than layer i pushes chips into layer i only.
        for i in (1..self.layers.len()).rev() {
            let needed = self.layers[i]
                .iter()
                .map(|&v| {
                    let debt = -divisor[v];
                    if debt > 0 {
                        (debt + self.down_degree[v] - 1) / self.down_degree[v]
                    } else {
                        0
                    }
                })
                .max()
                .unwrap_or(0);
            if needed > 0 {
                for &(near, far, m) in &self.crossings[i] {
                    divisor[near] -= needed * m;
                    divisor[far] += needed * m;
                }
            }
        }

        // Phase 2: fire the unburnt set until everything burns. The unburnt
        // set stays legal for as many rounds as its tightest vertex allows.
        while !self.burn(divisor) {
            let times = (0..self.burnt.len())
                .filter(|&v| !self.burnt[v] && self.heat[v] > 0)
                .map(|v| divisor[v] / self.heat[v])
                .min()
                .expect("unburnt set borders the burnt set");
            debug_assert!(times >= 1);
            // firing the burnt set -t times equals firing its complement t times
            fire_mask(self.graph, divisor, &self.burnt, -times);
        }
    }

    pub fn reduce(&mut self, divisor: &Divisor) -> ReducedDivisor {
        let mut d = divisor.clone();
        self.reduce_in_place(&mut d);
        ReducedDivisor {
            divisor: d,
            base: self.base,
        }
    }
}

/// The unique q-reduced divisor linearly equivalent to `divisor`.
pub fn reduce(graph: &Multigraph, divisor: &Divisor, q: Vertex) -> Result<ReducedDivisor> {
    divisor.check_on(graph)?;
    Ok(Reducer::new(graph, q)?.reduce(divisor))
}

/// Equal degrees and identical reduced forms at the first vertex.
pub fn is_equivalent(graph: &Multigraph, a: &Divisor, b: &Divisor) -> Result<bool> {
    a.check_on(graph)?;
    b.check_on(graph)?;
    if a.degree() != b.degree() {
        return Ok(false);
    }
    let mut reducer = Reducer::new(graph, 0)?;
    Ok(reducer.reduce(a) == reducer.reduce(b))
}

/// Whether the complete linear system `|D|` is nonempty.
pub fn has_effective_rep(graph: &Multigraph, divisor: &Divisor) -> Result<bool> {
    divisor.check_on(graph)?;
    if divisor.degree() < 0 {
        return Ok(false);
    }
    Ok(Reducer::new(graph, 0)?.reduce(divisor).base_coefficient() >= 0)
}

/// Streams every q-reduced divisor of degree `degree`, one per class of
/// `Pic^d`, in lexicographic order of the off-base coefficients.
///
/// Off-base coefficients range over `0..deg(v)`. Superstable configurations
/// are closed downward, so when incrementing a coordinate (with everything
/// after it zeroed) fails the burning test, no larger value of that
/// coordinate can pass and the search backs up a position.
pub fn enumerate_classes(graph: &Multigraph, q: Vertex, degree: i64) -> Result<ClassIter<'_>> {
    let reducer = Reducer::new(graph, q)?;
    let order: Vec<Vertex> = (0..graph.vertex_count()).filter(|&v| v != q).collect();
    Ok(ClassIter {
        reducer,
        degree,
        order,
        config: Divisor::zero(graph.vertex_count()),
        started: false,
        done: false,
    })
}

pub struct ClassIter<'g> {
    reducer: Reducer<'g>,
    degree: i64,
    order: Vec<Vertex>,
    config: Divisor,
    started: bool,
    done: bool,
}

impl ClassIter<'_> {
    fn advance(&mut self) -> bool {
        let graph = self.reducer.graph;
        let mut j = self.order.len();
        loop {
            if j == 0 {
                return false;
            }
            j -= 1;
            let v = self.order[j];
            if self.config[v] + 1 < graph.degree(v) as i64 {
                self.config[v] += 1;
                if self.reducer.burn(&self.config) {
                    return true;
                }
            }
            self.config[v] = 0;
        }
    }
}

impl Iterator for ClassIter<'_> {
    type Item = ReducedDivisor;

    fn next(&mut self) -> Option<ReducedDivisor> {
        if self.done {
            return None;
        }
        if self.started {
            if !self.advance() {
                self.done = true;
                return None;
            }
        } else {
            self.started = true;
        }
        let q = self.reducer.base;
        let off_base: i64 = self.order.iter().map(|&v| self.config[v]).sum();
        self.config[q] = self.degree - off_base;
        Some(ReducedDivisor {
            divisor: self.config.clone(),
            base: q,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::{fire_set, principal};
    use crate::families;
    use num_bigint::BigInt;

    #[test]
    fn reduced_input_is_fixed_point() {
        let g = families::theta(2, 2, 2);
        let d = Divisor::new(vec![5, 1, 3]);
        assert_eq!(reduce(&g, &d, 0).unwrap().divisor(), &d);
    }

    #[test]
    fn principal_reduces_to_zero() {
        let g = families::random(5, 8, 11).unwrap();
        for q in 0..5 {
            let p = principal(&g, &[3, -1, 0, 7, 2]);
            assert!(reduce(&g, &p, q).unwrap().divisor().is_zero());
        }
    }

    #[test]
    fn path_example() {
        // trees have trivial Jacobian: everything collapses onto the base
        let g = families::path(3);
        let r = reduce(&g, &Divisor::new(vec![0, 2, 0]), 0).unwrap();
        assert_eq!(r.divisor().coeffs(), &[2, 0, 0]);
        // (1,0,1) is not reduced: c keeps its chip against one burnt edge
        assert!(!Reducer::new(&g, 0)
            .unwrap()
            .is_reduced(&Divisor::new(vec![1, 0, 1])));
    }

    #[test]
    fn deep_debt_is_cleared() {
        let g = families::path(4);
        let r = reduce(&g, &Divisor::new(vec![0, 0, 0, -7]), 0).unwrap();
        assert_eq!(r.divisor().coeffs(), &[-7, 0, 0, 0]);
        let r = reduce(&g, &Divisor::new(vec![0, 0, 0, 9]), 0).unwrap();
        assert_eq!(r.divisor().coeffs(), &[9, 0, 0, 0]);
    }

    #[test]
    fn unknown_base() {
        let g = families::banana(1);
        assert!(matches!(
            reduce(&g, &Divisor::zero(2), 5),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn equivalence_on_banana() {
        let b2 = families::banana(1);
        let d = Divisor::new(vec![1, -1]);
        // (1,-1) - (-1,1) = (2,-2) is the principal divisor of firing v0
        assert!(is_equivalent(&b2, &d, &Divisor::new(vec![-1, 1])).unwrap());
        let fired = fire_set(&b2, &d, &[1]).unwrap();
        assert!(is_equivalent(&b2, &d, &fired).unwrap());
        assert!(!is_equivalent(&b2, &d, &Divisor::new(vec![1, 0])).unwrap());
        assert!(!is_equivalent(&b2, &d, &Divisor::zero(2)).unwrap());
    }

    #[test]
    fn effectivity() {
        let b2 = families::banana(1);
        assert!(has_effective_rep(&b2, &Divisor::new(vec![0, 3])).unwrap());
        assert!(!has_effective_rep(&b2, &Divisor::new(vec![-1, 0])).unwrap());
        assert!(!has_effective_rep(&b2, &Divisor::new(vec![-1, 1])).unwrap());
        assert!(has_effective_rep(&b2, &Divisor::new(vec![-2, 2])).unwrap());
    }

    #[test]
    fn class_counts_match_tree_counts() {
        let cases = [
            (families::banana(1), 0),
            (families::cycle(5), 0),
            (families::theta(2, 2, 2), 3),
            (families::theta(2, 2, 2), -4),
            (families::chain_of_loops(3), 1),
            (families::star(3), 2),
        ];
        for (g, d) in cases {
            let classes: Vec<_> = enumerate_classes(&g, 0, d).unwrap().collect();
            assert_eq!(
                BigInt::from(classes.len()),
                g.spanning_tree_count(),
                "{}",
                g.name()
            );
            for c in &classes {
                assert_eq!(c.divisor().degree(), d);
                assert!(Reducer::new(&g, 0).unwrap().is_reduced(c.divisor()));
            }
        }
    }

    #[test]
    fn single_vertex_classes() {
        let g = families::path(1);
        let classes: Vec<_> = enumerate_classes(&g, 0, 4).unwrap().collect();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].divisor().coeffs(), &[4]);
    }
}
