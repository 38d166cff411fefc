//! Divisor theory on finite multigraphs.
//!
//! Chip-firing and q-reduced divisors, Baker-Norine rank, homothetic
//! refinements, Brill-Noether numerics with a bounded search over
//! refinements, and harmonic morphisms.

pub mod brill_noether;
pub mod divisor;
pub mod error;
pub mod families;
pub mod format;
pub mod graph;
pub mod harmonic;
pub mod rank;
pub mod reduce;
pub mod refine;
pub mod search;

pub use brill_noether::{
    bn_bound, bound_chain_check, bound_report, legacy_bound, rho, BnParams, BoundChain,
    BoundReport, TheoremBound,
};
pub use divisor::{canonical, fire_set, principal, Divisor};
pub use error::{Error, Result};
pub use graph::{build_graph, GraphSpec, Multigraph, Vertex};
pub use harmonic::{
    check_harmonic, pullback, pushforward_contraction, riemann_hurwitz_check, Contraction,
    GraphMorphism, HarmonicReport, RiemannHurwitzReport,
};
pub use rank::{rank, rank_at_least, riemann_roch_residual, RankEngine};
pub use reduce::{enumerate_classes, has_effective_rep, is_equivalent, reduce, ReducedDivisor};
pub use refine::{refine, RefinementMap};
pub use search::{find_gdr, gonality_search, GonalityResult, Limits, SearchResult};

/// Genus of a graph, `1 - |V| + |E|`.
pub fn genus(graph: &Multigraph) -> u64 {
    graph.genus()
}

/// Laplacian matrix in vertex order.
pub fn laplacian(graph: &Multigraph) -> Vec<Vec<i64>> {
    graph.laplacian()
}

/// Kirchhoff spanning-tree count.
pub fn spanning_tree_count(graph: &Multigraph) -> num_bigint::BigInt {
    graph.spanning_tree_count()
}

/// Pushes a divisor along a refinement's vertex inclusion.
pub fn transport(map: &RefinementMap, divisor: &Divisor) -> Result<Divisor> {
    map.transport(divisor)
}
