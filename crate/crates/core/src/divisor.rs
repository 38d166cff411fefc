//! Divisors and set-firing.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::graph::{Multigraph, Vertex};

/// An integer coefficient per vertex, indexed by the graph's vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Divisor(Vec<i64>);

impl Divisor {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Divisor(coeffs)
    }

    pub fn zero(n: usize) -> Self {
        Divisor(vec![0; n])
    }

    /// `scale * (v)`.
    pub fn point(n: usize, v: Vertex, scale: i64) -> Self {
        let mut d = Divisor::zero(n);
        d.0[v] = scale;
        d
    }

    /// The divisor of a multiset of vertices.
    pub fn from_multiset(n: usize, vertices: &[Vertex]) -> Self {
        let mut d = Divisor::zero(n);
        for &v in vertices {
            d.0[v] += 1;
        }
        d
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn scaled(&self, factor: i64) -> Self {
        Divisor(self.0.iter().map(|&a| a * factor).collect())
    }

    /// Checks that the divisor is indexed by `graph`'s vertices.
    pub fn check_on(&self, graph: &Multigraph) -> Result<()> {
        if self.0.len() == graph.vertex_count() {
            Ok(())
        } else {
            Err(Error::IndexMismatch {
                expected: graph.vertex_count(),
                found: self.0.len(),
            })
        }
    }
}

impl From<Vec<i64>> for Divisor {
    fn from(coeffs: Vec<i64>) -> Self {
        Divisor(coeffs)
    }
}

impl Index<Vertex> for Divisor {
    type Output = i64;
    fn index(&self, v: Vertex) -> &i64 {
        &self.0[v]
    }
}

impl IndexMut<Vertex> for Divisor {
    fn index_mut(&mut self, v: Vertex) -> &mut i64 {
        &mut self.0[v]
    }
}

impl AddAssign<&Divisor> for Divisor {
    fn add_assign(&mut self, rhs: &Divisor) {
        assert_eq!(self.0.len(), rhs.0.len(), "divisors on different graphs");
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl SubAssign<&Divisor> for Divisor {
    fn sub_assign(&mut self, rhs: &Divisor) {
        assert_eq!(self.0.len(), rhs.0.len(), "divisors on different graphs");
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a -= b;
        }
    }
}

impl Add for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        self.scaled(-1)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Fires every vertex of `set` once: chips flow across the cut to the
/// complement, one per edge.
pub fn fire_set(graph: &Multigraph, divisor: &Divisor, set: &[Vertex]) -> Result<Divisor> {
    divisor.check_on(graph)?;
    let mut mask = vec![false; graph.vertex_count()];
    for &v in set {
        if v >= mask.len() {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
        mask[v] = true;
    }
    let size = mask.iter().filter(|&&b| b).count();
    if size == 0 || size == mask.len() {
        return Err(Error::EmptyOrFullSet);
    }
    let mut out = divisor.clone();
    fire_mask(graph, &mut out, &mask, 1);
    Ok(out)
}

/// Fires the vertices flagged in `mask` `times` times, in place.
pub(crate) fn fire_mask(graph: &Multigraph, divisor: &mut Divisor, mask: &[bool], times: i64) {
    for g in graph.edge_groups() {
        if mask[g.u] != mask[g.v] {
            let flow = times * g.multiplicity as i64;
            let (from, to) = if mask[g.u] { (g.u, g.v) } else { (g.v, g.u) };
            divisor.0[from] -= flow;
            divisor.0[to] += flow;
        }
    }
}

/// The principal divisor of an integer function on the vertices:
/// coefficient at `v` is the sum of `f(v) - f(w)` over edges `vw`.
/// This is the negative of firing each vertex `f(v)` times.
pub fn principal(graph: &Multigraph, f: &[i64]) -> Divisor {
    let mut out = Divisor::zero(graph.vertex_count());
    for g in graph.edge_groups() {
        let diff = (f[g.u] - f[g.v]) * g.multiplicity as i64;
        out.0[g.u] += diff;
        out.0[g.v] -= diff;
    }
    out
}

/// `K(v) = deg(v) - 2`.
pub fn canonical(graph: &Multigraph) -> Divisor {
    Divisor(graph.degrees().iter().map(|&d| d as i64 - 2).collect())
}
