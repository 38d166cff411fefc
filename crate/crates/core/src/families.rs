//! Built-in graph families.
//!
//! Family specs are written `name(arg, ...)`, e.g. `banana(3)` or
//! `random(5, 8, 7)`. In batch configs an argument may also be an inclusive
//! range `lo..hi`, which expands to one graph per value.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Multigraph;

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn assemble(name: String, vertices: Vec<String>, edges: &[(usize, usize, u32)]) -> Multigraph {
    Multigraph::from_parts(name, vertices, edges).expect("family construction is valid")
}

/// Two vertices joined by `genus + 1` parallel edges.
pub fn banana(genus: u32) -> Multigraph {
    assemble(
        format!("banana({genus})"),
        names("v", 2),
        &[(0, 1, genus + 1)],
    )
}

/// Cycle on `n >= 2` vertices; `cycle(2)` is the doubled edge.
pub fn cycle(n: usize) -> Multigraph {
    assert!(n >= 2, "cycle needs at least two vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1)).collect();
    assemble(format!("cycle({n})"), names("v", n), &edges)
}

/// Path on `n >= 1` vertices.
pub fn path(n: usize) -> Multigraph {
    assert!(n >= 1, "path needs a vertex");
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i, 1)).collect();
    assemble(format!("path({n})"), names("v", n), &edges)
}

/// Star with one centre and `leaves` leaves.
pub fn star(leaves: usize) -> Multigraph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i, 1)).collect();
    assemble(format!("star({leaves})"), names("v", leaves + 1), &edges)
}

/// Triangle with edge multiplicities `ab`, `bc`, `ac`.
/// `theta(2, 2, 2)` is the genus-4 doubled triangle.
pub fn theta(ab: u32, bc: u32, ac: u32) -> Multigraph {
    assert!(
        ab > 0 && bc > 0 && ac > 0,
        "theta multiplicities must be positive"
    );
    assemble(
        format!("theta({ab},{bc},{ac})"),
        names("v", 3),
        &[(0, 1, ab), (1, 2, bc), (0, 2, ac)],
    )
}

/// `genus` doubled edges `a_i = b_i` joined in a chain by bridges `b_i - a_{i+1}`.
pub fn chain_of_loops(genus: usize) -> Multigraph {
    let name = format!("chain-of-loops({genus})");
    if genus == 0 {
        return assemble(name, vec!["a0".into()], &[]);
    }
    let mut vertices = Vec::with_capacity(2 * genus);
    let mut edges = Vec::new();
    for i in 0..genus {
        vertices.push(format!("a{i}"));
        vertices.push(format!("b{i}"));
        edges.push((2 * i, 2 * i + 1, 2));
        if i > 0 {
            edges.push((2 * i - 1, 2 * i, 1));
        }
    }
    assemble(name, vertices, &edges)
}

/// Connected random multigraph with `n` vertices and `m >= n - 1` edges:
/// a random recursive spanning tree plus `m - n + 1` extra edges between
/// distinct random endpoints. Deterministic in `seed`.
pub fn random(n: usize, m: usize, seed: u64) -> Result<Multigraph> {
    if n == 0 {
        return Err(Error::EmptyVertexSet);
    }
    if m + 1 < n || (n == 1 && m > 0) {
        return Err(Error::PreconditionViolated(format!(
            "random({n},{m}): need n-1 <= m and no edges on one vertex"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(m);
    for i in 1..n {
        edges.push((rng.random_range(0..i), i, 1));
    }
    while edges.len() < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            edges.push((u.min(v), u.max(v), 1));
        }
    }
    Multigraph::from_parts(format!("random({n},{m},{seed})"), names("v", n), &edges)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Arg {
    Value(u64),
    Range(u64, u64),
}

fn parse_call(spec: &str) -> Result<(String, Vec<Arg>)> {
    let bad = || Error::Format(format!("bad family spec {spec:?}"));
    let spec = spec.trim();
    let open = spec.find('(').ok_or_else(bad)?;
    let inner = spec[open + 1..].strip_suffix(')').ok_or_else(bad)?;
    let name = spec[..open].trim().to_string();
    let mut args = Vec::new();
    for part in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let parse = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
        let arg = match part.split_once("..") {
            Some((lo, hi)) => {
                let hi = hi.strip_prefix('=').unwrap_or(hi);
                let (lo, hi) = (parse(lo)?, parse(hi)?);
                if lo > hi {
                    return Err(bad());
                }
                Arg::Range(lo, hi)
            }
            None => Arg::Value(parse(part)?),
        };
        args.push(arg);
    }
    Ok((name, args))
}

fn build(name: &str, args: &[u64]) -> Result<Multigraph> {
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(Error::Format(format!("{name} takes {n} argument(s)")))
        }
    };
    let positive = |x: u64| {
        if x == 0 {
            Err(Error::Format(format!("{name}: arguments must be positive")))
        } else {
            Ok(x)
        }
    };
    match name {
        "banana" => {
            arity(1)?;
            Ok(banana(args[0] as u32))
        }
        "cycle" => {
            arity(1)?;
            if args[0] < 2 {
                return Err(Error::Format("cycle needs n >= 2".into()));
            }
            Ok(cycle(args[0] as usize))
        }
        "path" => {
            arity(1)?;
            Ok(path(positive(args[0])? as usize))
        }
        "star" => {
            arity(1)?;
            Ok(star(args[0] as usize))
        }
        "theta" => {
            arity(3)?;
            Ok(theta(
                positive(args[0])? as u32,
                positive(args[1])? as u32,
                positive(args[2])? as u32,
            ))
        }
        "chain-of-loops" | "chain_of_loops" => {
            arity(1)?;
            Ok(chain_of_loops(args[0] as usize))
        }
        "random" => {
            arity(3)?;
            random(args[0] as usize, args[1] as usize, args[2])
        }
        _ => Err(Error::Format(format!("unknown graph family {name:?}"))),
    }
}

/// Builds one graph from a spec without ranges, e.g. `theta(2,2,2)`.
pub fn from_spec(spec: &str) -> Result<Multigraph> {
    let (name, args) = parse_call(spec)?;
    let values = args
        .iter()
        .map(|a| match a {
            Arg::Value(v) => Ok(*v),
            Arg::Range(..) => Err(Error::Format(format!("range not allowed in {spec:?}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    build(&name, &values)
}

/// Expands a spec whose arguments may be ranges into every graph it names,
/// in lexicographic order of the argument tuples.
pub fn expand_spec(spec: &str) -> Result<Vec<Multigraph>> {
    let (name, args) = parse_call(spec)?;
    let mut tuples: Vec<Vec<u64>> = vec![Vec::new()];
    for arg in &args {
        let (lo, hi) = match *arg {
            Arg::Value(v) => (v, v),
            Arg::Range(lo, hi) => (lo, hi),
        };
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (lo..=hi).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    tuples.iter().map(|t| build(&name, t)).collect()
}
