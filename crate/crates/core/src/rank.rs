//! Baker-Norine rank.
//!
//! `rank(D) >= r` is certified by checking `|D - E| != {}` for every
//! effective `E` of degree `r`, i.e. every size-`r` multiset of vertices.
//! Multisets are walked as non-decreasing vertex sequences in lexicographic
//! order. Each prefix is reduced, so a prefix whose class is already
//! non-effective prunes all its extensions, and prefixes landing in the same
//! class (with the same remaining budget and lower vertex bound) are
//! answered from a memo.

use std::collections::HashMap;

use crate::divisor::{canonical, Divisor};
use crate::error::Result;
use crate::graph::{Multigraph, Vertex};
use crate::reduce::Reducer;

type Failure = Option<Vec<Vertex>>;

pub struct RankEngine<'g> {
    reducer: Reducer<'g>,
    memo: HashMap<(Vec<i64>, u32, Vertex), Failure>,
}

impl<'g> RankEngine<'g> {
    pub fn new(graph: &'g Multigraph) -> Self {
        RankEngine {
            reducer: Reducer::new(graph, 0).expect("graph has a vertex"),
            memo: HashMap::new(),
        }
    }

    pub fn graph(&self) -> &'g Multigraph {
        self.reducer.graph()
    }

    /// First effective `E` of degree `r` (as a sorted vertex list, in
    /// lexicographic order) with `|D - E|` empty, or `None` when
    /// `rank(D) >= r`.
    pub fn counterexample(&mut self, divisor: &Divisor, r: u32) -> Failure {
        let mut d = divisor.clone();
        self.reducer.reduce_in_place(&mut d);
        if d[0] < 0 {
            return Some(vec![0; r as usize]);
        }
        self.search(d, r, 0)
    }

    pub fn rank_at_least(&mut self, divisor: &Divisor, r: u32) -> bool {
        self.counterexample(divisor, r).is_none()
    }

    // `d` is reduced at vertex 0 and has an effective representative.
    fn search(&mut self, d: Divisor, remaining: u32, first: Vertex) -> Failure {
        if remaining == 0 {
            return None;
        }
        if d.degree() < remaining as i64 {
            return Some(vec![first; remaining as usize]);
        }
        let key = (d.into_coeffs(), remaining, first);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let d = Divisor::new(key.0.clone());
        let mut failure = None;
        for v in first..d.len() {
            let mut child = d.clone();
            child[v] -= 1;
            self.reducer.reduce_in_place(&mut child);
            let sub = if child[0] < 0 {
                Some(vec![v; remaining as usize - 1])
            } else {
                self.search(child, remaining - 1, v)
            };
            if let Some(rest) = sub {
                let mut witness = Vec::with_capacity(remaining as usize);
                witness.push(v);
                witness.extend(rest);
                failure = Some(witness);
                break;
            }
        }
        self.memo.insert(key, failure.clone());
        failure
    }

    pub fn has_effective_rep(&mut self, divisor: &Divisor) -> bool {
        divisor.degree() >= 0 && self.rank_at_least(divisor, 0)
    }

    /// Rank straight from the definition, without the Riemann-Roch shortcut.
    pub fn rank_definitional(&mut self, divisor: &Divisor) -> i64 {
        if !self.has_effective_rep(divisor) {
            return -1;
        }
        let mut r = 0u32;
        while (r as i64) < divisor.degree() && self.rank_at_least(divisor, r + 1) {
            r += 1;
        }
        r as i64
    }

    /// Rank, using `rank = deg - g` once `deg > 2g - 2`.
    pub fn rank(&mut self, divisor: &Divisor) -> i64 {
        let genus = self.graph().genus() as i64;
        let degree = divisor.degree();
        if degree < 0 {
            return -1;
        }
        if degree > 2 * genus - 2 {
            return degree - genus;
        }
        self.rank_definitional(divisor)
    }
}

pub fn rank_at_least(graph: &Multigraph, divisor: &Divisor, r: u32) -> Result<bool> {
    divisor.check_on(graph)?;
    Ok(RankEngine::new(graph).rank_at_least(divisor, r))
}

pub fn rank(graph: &Multigraph, divisor: &Divisor) -> Result<i64> {
    divisor.check_on(graph)?;
    Ok(RankEngine::new(graph).rank(divisor))
}

pub fn rank_definitional(graph: &Multigraph, divisor: &Divisor) -> Result<i64> {
    divisor.check_on(graph)?;
    Ok(RankEngine::new(graph).rank_definitional(divisor))
}

/// `rank(D) - rank(K - D) - deg(D) + g - 1`, which Riemann-Roch says is 0.
/// Both ranks come from the definition, never from the shortcut.
pub fn riemann_roch_residual(graph: &Multigraph, divisor: &Divisor) -> Result<i64> {
    divisor.check_on(graph)?;
    let mut engine = RankEngine::new(graph);
    let dual = &canonical(graph) - divisor;
    let genus = graph.genus() as i64;
    Ok(
        engine.rank_definitional(divisor) - engine.rank_definitional(&dual) - divisor.degree()
            + genus
            - 1,
    )
}

/// Lexicographic size-`r` multisets of `0..n` as sorted vectors.
pub fn multisets(n: usize, r: usize) -> impl Iterator<Item = Vec<Vertex>> {
    let mut current: Option<Vec<Vertex>> = if n == 0 && r > 0 {
        None
    } else {
        Some(vec![0; r])
    };
    std::iter::from_fn(move || {
        let out = current.take()?;
        let mut next = out.clone();
        let mut i = r;
        while i > 0 {
            i -= 1;
            if next[i] + 1 < n {
                let val = next[i] + 1;
                for slot in &mut next[i..] {
                    *slot = val;
                }
                current = Some(next);
                break;
            }
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::reduce::has_effective_rep;

    // Plain multiset loop with one reduction per leaf.
    fn rank_at_least_naive(graph: &Multigraph, d: &Divisor, r: u32) -> bool {
        multisets(graph.vertex_count(), r as usize).all(|e| {
            let e = Divisor::from_multiset(graph.vertex_count(), &e);
            has_effective_rep(graph, &(d - &e)).unwrap()
        })
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(4, 2).count(), 10);
        assert_eq!(
            multisets(3, 0).collect::<Vec<_>>(),
            vec![Vec::<usize>::new()]
        );
        assert_eq!(multisets(0, 2).count(), 0);
        let all: Vec<_> = multisets(3, 2).collect();
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[5], vec![2, 2]);
    }

    #[test]
    fn rank_zero_is_effectivity() {
        let g = families::theta(2, 2, 2);
        for d in [vec![1, -1, 0], vec![-1, 0, 0], vec![3, -2, 0]] {
            let d = Divisor::new(d);
            assert_eq!(
                rank_at_least(&g, &d, 0).unwrap(),
                has_effective_rep(&g, &d).unwrap()
            );
        }
    }

    #[test]
    fn banana_ranks() {
        for genus in 1..6 {
            let b = families::banana(genus);
            let d = Divisor::new(vec![1, 1]);
            assert!(rank_at_least(&b, &d, 1).unwrap());
            assert_eq!(rank(&b, &d).unwrap(), 1);
            let mut engine = RankEngine::new(&b);
            if genus >= 2 {
                assert_eq!(engine.counterexample(&d, 2), Some(vec![0, 0]));
            }
        }
    }

    #[test]
    fn theta_triangle_has_rank_one() {
        let g = families::theta(2, 2, 2);
        let d = Divisor::new(vec![1, 1, 1]);
        assert!(rank_at_least(&g, &d, 1).unwrap());
        assert_eq!(rank(&g, &d).unwrap(), 1);
    }

    #[test]
    fn simple_ranks() {
        let g = families::random(4, 6, 1).unwrap();
        assert_eq!(rank(&g, &Divisor::zero(4)).unwrap(), 0);
        assert_eq!(rank(&g, &Divisor::new(vec![-1, 0, 0, 0])).unwrap(), -1);
        assert_eq!(rank(&g, &Divisor::new(vec![5, 0, 0, 0])).unwrap(), 5 - 3);
    }

    #[test]
    fn memoised_search_matches_naive_loop() {
        let graphs = [
            families::theta(2, 2, 2),
            families::chain_of_loops(2),
            families::random(4, 7, 5).unwrap(),
        ];
        for g in &graphs {
            let n = g.vertex_count();
            for coeffs in multisets(n, 3) {
                let mut d = Divisor::from_multiset(n, &coeffs);
                d[n - 1] -= 1;
                d[0] += 1;
                for r in 0..3 {
                    assert_eq!(
                        rank_at_least(g, &d, r).unwrap(),
                        rank_at_least_naive(g, &d, r),
                        "{} {d} r={r}",
                        g.name()
                    );
                }
            }
        }
    }

    #[test]
    fn shortcut_agrees_with_definition() {
        let g = families::chain_of_loops(2);
        for e in multisets(4, 3) {
            let d = Divisor::from_multiset(4, &e);
            assert_eq!(rank(&g, &d).unwrap(), rank_definitional(&g, &d).unwrap());
        }
    }

    #[test]
    fn residual_on_zero_and_canonical() {
        for g in [
            families::theta(2, 2, 2),
            families::banana(3),
            families::cycle(4),
        ] {
            let n = g.vertex_count();
            assert_eq!(riemann_roch_residual(&g, &Divisor::zero(n)).unwrap(), 0);
            assert_eq!(riemann_roch_residual(&g, &canonical(&g)).unwrap(), 0);
            assert_eq!(rank(&g, &canonical(&g)).unwrap(), g.genus() as i64 - 1);
        }
    }
}
