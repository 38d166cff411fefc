//! Bounded searches for divisors of prescribed degree and rank.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::brill_noether::{bn_bound, BnParams, TheoremBound};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::rank::{self, RankEngine};
use crate::reduce::{enumerate_classes, ReducedDivisor};
use crate::refine::refine;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Search `k = 0..=max_k` instead of `0..B`.
    pub max_k: Option<u64>,
    pub max_classes: Option<u64>,
    pub time_budget: Option<Duration>,
    pub parallelism: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_k: None,
            max_classes: Some(1_000_000),
            time_budget: None,
            parallelism: 1,
        }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits {
            max_classes: None,
            ..Limits::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    ClassLimit,
    TimeLimit,
    KLimit,
}

impl StopReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            StopReason::ClassLimit => "class_limit",
            StopReason::TimeLimit => "time_limit",
            StopReason::KLimit => "k_limit",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub params: BnParams,
    pub theorem_bound: TheoremBound,
    pub found: bool,
    pub k: Option<u64>,
    /// q-reduced witness on `witness_graph = G^(k)`.
    pub witness: Option<Divisor>,
    pub witness_graph: Option<Multigraph>,
    pub classes_examined: u64,
    /// False when a limit cut the search short before a witness was found
    /// or every `k < B` was covered.
    pub exhausted: bool,
    pub stopped_by: Option<StopReason>,
}

/// Candidate classes tested together; also the granularity of limit checks.
const CHUNK: usize = 256;

/// Searches `G^(k)` for `k = 0, 1, ...` below the theorem bound for a
/// degree-`d` divisor of rank at least `r`, returning the first witness in
/// (k, enumeration order).
pub fn find_gdr(graph: &Multigraph, d: u64, r: u64, limits: &Limits) -> Result<SearchResult> {
    let params = BnParams::new(graph.genus(), d, r);
    let theorem_bound = bn_bound(params.g, d, r)?;
    let r32 = u32::try_from(r)
        .map_err(|_| Error::PreconditionViolated(format!("rank {r} is too large")))?;
    let degree = d as i64;

    let mut result = SearchResult {
        params,
        theorem_bound: theorem_bound.clone(),
        found: false,
        k: None,
        witness: None,
        witness_graph: None,
        classes_examined: 0,
        exhausted: false,
        stopped_by: None,
    };

    if theorem_bound.is_shortcut() {
        let witness = Divisor::point(graph.vertex_count(), 0, degree);
        if rank::rank_at_least(graph, &witness, r32)? {
            result.found = true;
            result.k = Some(0);
            result.witness = Some(witness);
            result.witness_graph = Some(graph.clone());
            result.classes_examined = 1;
            result.exhausted = true;
            return Ok(result);
        }
        unreachable!("Riemann-Roch guarantees rank >= d - g >= r");
    }

    let k_limit = theorem_bound.k_limit();
    let last_k = match limits.max_k {
        Some(m) => m,
        None => (&k_limit - 1u32).to_u64().unwrap_or(u64::MAX),
    };
    let covers_range = BigUint::from(last_k) + 1u32 >= k_limit;

    let pool = if limits.parallelism > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(limits.parallelism)
                .build()
                .map_err(|e| Error::PreconditionViolated(e.to_string()))?,
        )
    } else {
        None
    };
    let started = Instant::now();

    for k in 0..=last_k {
        let refined = refine(graph, k as usize).into_target();
        let mut engine = RankEngine::new(&refined);
        let mut classes = enumerate_classes(&refined, 0, degree)?;
        loop {
            if let Some(budget) = limits.time_budget {
                if started.elapsed() >= budget {
                    result.stopped_by = Some(StopReason::TimeLimit);
                    return Ok(result);
                }
            }
            let room = limits
                .max_classes
                .map_or(CHUNK as u64, |m| m.saturating_sub(result.classes_examined))
                .min(CHUNK as u64) as usize;
            if room == 0 {
                result.stopped_by = Some(StopReason::ClassLimit);
                return Ok(result);
            }
            let chunk: Vec<ReducedDivisor> = classes.by_ref().take(room).collect();
            if chunk.is_empty() {
                break;
            }
            let hit = match &pool {
                None => chunk
                    .iter()
                    .position(|c| engine.rank_at_least(c.divisor(), r32)),
                Some(pool) => pool.install(|| {
                    let verdicts: Vec<bool> = chunk
                        .par_iter()
                        .map_init(
                            || RankEngine::new(&refined),
                            |eng, c| eng.rank_at_least(c.divisor(), r32),
                        )
                        .collect();
                    verdicts.iter().position(|&b| b)
                }),
            };
            match hit {
                Some(i) => {
                    result.classes_examined += i as u64 + 1;
                    let witness = chunk[i].divisor().clone();
                    // independent re-check with a fresh engine
                    assert_eq!(witness.degree(), degree);
                    assert!(rank::rank_at_least(&refined, &witness, r32)?);
                    result.found = true;
                    result.k = Some(k);
                    result.witness = Some(witness);
                    result.witness_graph = Some(refined.clone());
                    result.exhausted = true;
                    return Ok(result);
                }
                None => result.classes_examined += chunk.len() as u64,
            }
        }
    }
    result.exhausted = covers_range;
    if !covers_range {
        result.stopped_by = Some(StopReason::KLimit);
    }
    Ok(result)
}

/// Re-verifies a witness through the definitional rank check.
pub fn verify_witness(result: &SearchResult) -> Result<bool> {
    match (&result.witness, &result.witness_graph) {
        (Some(w), Some(g)) => Ok(w.degree() == result.params.d as i64
            && rank::rank_at_least(g, w, result.params.r as u32)?),
        _ => Ok(false),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GonalityResult {
    pub r: u64,
    pub d_max: u64,
    /// Smallest degree carrying a rank-`r` divisor, with its witness.
    pub found: Option<(u64, Divisor)>,
    pub classes_examined: u64,
}

/// Smallest `d <= d_max` such that `G` itself carries a divisor of degree
/// `d` and rank at least `r`.
pub fn gonality_search(graph: &Multigraph, r: u64, d_max: u64) -> Result<GonalityResult> {
    let r32 = u32::try_from(r)
        .map_err(|_| Error::PreconditionViolated(format!("rank {r} is too large")))?;
    let mut engine = RankEngine::new(graph);
    let mut examined = 0;
    for d in r..=d_max {
        for class in enumerate_classes(graph, 0, d as i64)? {
            examined += 1;
            if engine.rank_at_least(class.divisor(), r32) {
                return Ok(GonalityResult {
                    r,
                    d_max,
                    found: Some((d, class.into_divisor())),
                    classes_examined: examined,
                });
            }
        }
    }
    Ok(GonalityResult {
        r,
        d_max,
        found: None,
        classes_examined: examined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::reduce::is_equivalent;

    #[test]
    fn theta_has_g13_at_k0() {
        let g = families::theta(2, 2, 2);
        let res = find_gdr(&g, 3, 1, &Limits::default()).unwrap();
        assert!(res.found);
        assert_eq!(res.k, Some(0));
        assert!(verify_witness(&res).unwrap());
        let w = res.witness.unwrap();
        assert!(is_equivalent(&g, &w, &Divisor::new(vec![1, 1, 1])).unwrap());
    }

    #[test]
    fn banana_g12() {
        // rho(g, 2, 1) = 2 - g, so only genus 1 and 2 are in range
        for genus in 1..=2 {
            let b = families::banana(genus);
            let res = find_gdr(&b, 2, 1, &Limits::default()).unwrap();
            assert!(res.found, "genus {genus}");
            assert_eq!(res.k, Some(0));
            // on B2 every degree-2 class has rank 1 and (2,0) comes first
            if genus >= 2 {
                let w = res.witness.as_ref().unwrap();
                assert!(is_equivalent(&b, w, &Divisor::new(vec![1, 1])).unwrap());
            }
        }
    }

    #[test]
    fn rank_zero_found_immediately() {
        let g = families::random(5, 9, 2).unwrap();
        for d in 0..4 {
            let res = find_gdr(&g, d, 0, &Limits::default()).unwrap();
            assert!(res.found);
            assert_eq!(res.k, Some(0));
        }
    }

    #[test]
    fn negative_rho_refused() {
        let g = families::banana(9);
        assert!(matches!(
            find_gdr(&g, 5, 1, &Limits::default()),
            Err(Error::NegativeRho { .. })
        ));
    }

    #[test]
    fn shortcut_path() {
        let g = families::banana(2);
        let res = find_gdr(&g, 4, 1, &Limits::default()).unwrap();
        assert!(res.found && res.exhausted);
        assert_eq!(res.witness.unwrap().coeffs(), &[4, 0]);
    }

    #[test]
    fn class_limit_truncates() {
        let g = families::theta(2, 2, 2);
        let limits = Limits {
            max_classes: Some(0),
            ..Limits::default()
        };
        let res = find_gdr(&g, 3, 1, &limits).unwrap();
        assert!(!res.found);
        assert!(!res.exhausted);
        assert_eq!(res.stopped_by, Some(StopReason::ClassLimit));
    }

    #[test]
    fn parallel_matches_sequential() {
        let g = families::chain_of_loops(3);
        let seq = find_gdr(&g, 3, 1, &Limits::default()).unwrap();
        let par = find_gdr(
            &g,
            3,
            1,
            &Limits {
                parallelism: 3,
                ..Limits::default()
            },
        )
        .unwrap();
        assert_eq!(seq.found, par.found);
        assert_eq!(seq.k, par.k);
        assert_eq!(seq.witness, par.witness);
        assert_eq!(seq.classes_examined, par.classes_examined);
    }

    #[test]
    fn gonality_examples() {
        for n in 3..7 {
            let res = gonality_search(&families::cycle(n), 1, 5).unwrap();
            assert_eq!(res.found.map(|(d, _)| d), Some(2));
        }
        let res = gonality_search(&families::star(3), 1, 5).unwrap();
        assert_eq!(res.found.map(|(d, _)| d), Some(1));
        for genus in 1..6 {
            let res = gonality_search(&families::banana(genus), 1, 5).unwrap();
            assert_eq!(res.found.map(|(d, _)| d), Some(2));
        }
        let res = gonality_search(&families::theta(2, 2, 2), 1, 2).unwrap();
        assert_eq!(res.found, None);
    }
}
