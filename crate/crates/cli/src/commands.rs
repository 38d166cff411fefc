use std::path::Path;
use std::time::Duration;

use chipfire::format::{self, divisor_to_json, graph_to_json};
use chipfire::{
    bound_chain_check, bound_report, canonical, check_harmonic, find_gdr, gonality_search,
    legacy_bound, pullback, pushforward_contraction, rank, rank::rank_definitional, reduce, refine,
    rho, riemann_hurwitz_check, search::verify_witness, BnParams, Divisor, Limits, Multigraph,
};
use serde_json::{json, Value};

use crate::args::{Command, DivisorArg, GraphArg, LimitArgs, Params};
use crate::batch;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_FOUND: i32 = 3;

#[derive(Debug)]
pub enum Failure {
    Core(chipfire::Error),
    Io(String),
}

impl Failure {
    pub fn reason(&self) -> &'static str {
        match self {
            Failure::Core(e) => e.reason(),
            Failure::Io(_) => "Io",
        }
    }

    pub fn to_json(&self) -> Value {
        let message = match self {
            Failure::Core(e) => e.to_string(),
            Failure::Io(m) => m.clone(),
        };
        json!({"error": {"reason": self.reason(), "message": message}})
    }
}

impl From<chipfire::Error> for Failure {
    fn from(e: chipfire::Error) -> Self {
        Failure::Core(e)
    }
}

pub struct Outcome {
    pub report: Value,
    pub code: i32,
}

fn ok(report: Value) -> Result<Outcome, Failure> {
    Ok(Outcome {
        report,
        code: EXIT_OK,
    })
}

/// Fills in the seed of a two-argument `random(n,m)` spec.
pub fn with_seed(spec: &str, seed: Option<u64>) -> String {
    let trimmed = spec.trim();
    match (
        seed,
        trimmed
            .strip_prefix("random(")
            .and_then(|s| s.strip_suffix(')')),
    ) {
        (Some(seed), Some(inner)) if inner.split(',').count() == 2 => {
            format!("random({inner},{seed})")
        }
        _ => trimmed.to_string(),
    }
}

fn load_graph(arg: &GraphArg) -> Result<Multigraph, Failure> {
    Ok(format::load_graph(&with_seed(&arg.graph, arg.seed), None)?)
}

pub fn parse_divisor(graph: &Multigraph, text: &str) -> Result<Divisor, Failure> {
    let text = text.trim();
    if text.starts_with('{') {
        return Ok(format::parse_divisor(graph, text)?);
    }
    let path = Path::new(text);
    if path.is_file() {
        let body = std::fs::read_to_string(path)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        return Ok(format::parse_divisor(graph, &body)?);
    }
    let coeffs = text
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| chipfire::Error::Format(format!("bad divisor {text:?}: {e}")))?;
    let d = Divisor::new(coeffs);
    d.check_on(graph)?;
    Ok(d)
}

fn divisor(graph: &Multigraph, arg: &DivisorArg) -> Result<Divisor, Failure> {
    parse_divisor(graph, &arg.divisor)
}

fn params_json(p: &Params) -> Value {
    json!({"g": p.g, "d": p.d, "r": p.r})
}

pub fn limits_from(args: &LimitArgs) -> Limits {
    Limits {
        max_k: args.k_max,
        max_classes: (args.max_classes > 0).then_some(args.max_classes),
        time_budget: args.time_budget.map(Duration::from_secs_f64),
        parallelism: args.jobs.max(1),
    }
}

pub fn run(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Genus(arg) => {
            let g = load_graph(&arg)?;
            ok(json!({
                "graph": g.name(),
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "genus": g.genus(),
            }))
        }
        Command::Laplacian(arg) => {
            let g = load_graph(&arg)?;
            ok(json!({
                "graph": g.name(),
                "vertices": g.vertex_names(),
                "laplacian": g.laplacian(),
            }))
        }
        Command::Trees(arg) => {
            let g = load_graph(&arg)?;
            ok(json!({
                "graph": g.name(),
                "spanning_trees": g.spanning_tree_count().to_string(),
            }))
        }
        Command::Refine {
            graph,
            k,
            divisor: div,
            out,
        } => {
            let g = load_graph(&graph)?;
            let map = refine(&g, k);
            let target = map.target();
            let embedding: serde_json::Map<String, Value> = map
                .vertex_embedding()
                .iter()
                .enumerate()
                .map(|(v, &w)| (g.vertex_name(v).to_string(), json!(target.vertex_name(w))))
                .collect();
            let transported = match div {
                Some(text) => {
                    let d = parse_divisor(&g, &text)?;
                    Some(divisor_to_json(target, &map.transport(&d)?))
                }
                None => None,
            };
            let graph_json = graph_to_json(target);
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&graph_json).expect("serializable");
                std::fs::write(&path, text + "\n")
                    .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            }
            ok(json!({
                "k": k,
                "genus": target.genus(),
                "graph": graph_json,
                "vertex_embedding": embedding,
                "transported": transported,
            }))
        }
        Command::Reduce {
            graph,
            divisor: div,
            q,
        } => {
            let g = load_graph(&graph)?;
            let d = divisor(&g, &div)?;
            let base = match &q {
                Some(name) => g.vertex_index(name)?,
                None => 0,
            };
            let reduced = reduce(&g, &d, base)?;
            ok(json!({
                "q": g.vertex_name(base),
                "degree": d.degree(),
                "reduced": divisor_to_json(&g, reduced.divisor()),
                "effective_class": reduced.base_coefficient() >= 0,
            }))
        }
        Command::Rank {
            graph,
            divisor: div,
        } => {
            let g = load_graph(&graph)?;
            let d = divisor(&g, &div)?;
            ok(json!({
                "degree": d.degree(),
                "rank": rank(&g, &d)?,
            }))
        }
        Command::RrVerify {
            graph,
            divisor: div,
        } => {
            let g = load_graph(&graph)?;
            let d = divisor(&g, &div)?;
            let dual = &canonical(&g) - &d;
            let r = rank_definitional(&g, &d)?;
            let r_dual = rank_definitional(&g, &dual)?;
            let genus = g.genus() as i64;
            let residual = r - r_dual - d.degree() + genus - 1;
            ok(json!({
                "degree": d.degree(),
                "genus": genus,
                "rank": r,
                "rank_dual": r_dual,
                "residual": residual,
                "holds": residual == 0,
            }))
        }
        Command::Rho(p) => {
            let mut report = params_json(&p);
            report["rho"] = json!(rho(p.g, p.d, p.r));
            ok(report)
        }
        Command::Bound { params: p, n, m } => {
            let report = bound_report(
                BnParams::new(p.g, p.d, p.r),
                n.unwrap_or(2),
                m.unwrap_or(p.g + 1),
            )?;
            ok(format::bound_report_json(&report))
        }
        Command::BoundLegacy { n, m, d, r } => ok(json!({
            "n": n,
            "m": m,
            "d": d,
            "r": r,
            "legacy_bound": legacy_bound(n, m, d, r)?.to_string(),
        })),
        Command::BoundCompare(p) => {
            let chain = bound_chain_check(p.g, p.d, p.r)?;
            ok(format::bound_chain_json(&chain))
        }
        Command::Search {
            graph,
            d,
            r,
            limits,
        } => {
            let g = load_graph(&graph)?;
            let result = find_gdr(&g, d, r, &limits_from(&limits))?;
            let mut report = format::search_result_json(&result);
            report["graph"] = json!(g.name());
            if result.found {
                // independent rank invocation on the witness
                report["verified"] = json!(verify_witness(&result)?);
            }
            Ok(Outcome {
                report,
                code: if result.found {
                    EXIT_OK
                } else {
                    EXIT_NOT_FOUND
                },
            })
        }
        Command::Gonality { graph, r, d_max } => {
            let g = load_graph(&graph)?;
            let result = gonality_search(&g, r, d_max)?;
            Ok(Outcome {
                code: if result.found.is_some() {
                    EXIT_OK
                } else {
                    EXIT_NOT_FOUND
                },
                report: format::gonality_json(&g, &result),
            })
        }
        Command::HarmonicCheck { morphism } => {
            let f = format::load_morphism(&morphism)?;
            let report = check_harmonic(&f)?;
            ok(format::harmonic_report_json(&f, &report))
        }
        Command::RhCheck { morphism } => {
            let f = format::load_morphism(&morphism)?;
            let report = riemann_hurwitz_check(&f)?;
            ok(format::riemann_hurwitz_json(&f, &report))
        }
        Command::Pullback {
            morphism,
            divisor: div,
        } => {
            let f = format::load_morphism(&morphism)?;
            let d = divisor(f.target(), &div)?;
            let pulled = pullback(&f, &d)?;
            ok(json!({
                "degree": pulled.degree(),
                "pullback": divisor_to_json(f.source(), &pulled),
            }))
        }
        Command::Pushforward {
            contraction,
            divisor: div,
        } => {
            let pi = format::load_contraction(&contraction)?;
            let d = divisor(pi.source(), &div)?;
            let pushed = pushforward_contraction(&pi, &d)?;
            ok(json!({
                "degree": pushed.degree(),
                "pushforward": divisor_to_json(pi.target(), &pushed),
            }))
        }
        Command::Batch {
            config,
            out,
            jobs,
            seed,
            timing,
        } => ok(batch::run(&config, &out, jobs, seed, timing)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_fills_two_argument_random() {
        assert_eq!(with_seed("random(5,8)", Some(7)), "random(5,8,7)");
        assert_eq!(with_seed("random(5,8,1)", Some(7)), "random(5,8,1)");
        assert_eq!(with_seed("banana(2)", Some(7)), "banana(2)");
        assert_eq!(with_seed("random(5,8)", None), "random(5,8)");
    }

    #[test]
    fn divisor_forms() {
        let g = chipfire::families::theta(2, 2, 2);
        let a = parse_divisor(&g, "1,-2,0").unwrap();
        let b = parse_divisor(&g, r#"{"v0": 1, "v1": -2}"#).unwrap();
        assert_eq!(a, b);
        assert!(parse_divisor(&g, "1,2").is_err());
        assert!(parse_divisor(&g, "x").is_err());
    }
}
