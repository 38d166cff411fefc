//! Fixtures shared by the benchmarks.

use chipfire::{families, refine, Divisor, Multigraph};

/// Graphs of increasing Jacobian size.
pub fn graphs() -> Vec<Multigraph> {
    vec![
        families::theta(2, 2, 2),
        families::chain_of_loops(4),
        refine(&families::theta(2, 2, 2), 2).into_target(),
        families::random(8, 14, 7).expect("valid random graph"),
    ]
}

/// A deterministic divisor with large swings, to give reduction work.
pub fn spread_divisor(graph: &Multigraph, degree: i64) -> Divisor {
    let n = graph.vertex_count() as i64;
    let mut coeffs: Vec<i64> = (0..n).map(|i| if i % 2 == 0 { 7 } else { -7 }).collect();
    coeffs[0] += degree - coeffs.iter().sum::<i64>();
    Divisor::new(coeffs)
}
