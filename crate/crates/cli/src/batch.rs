//! Resumable batch runs: one JSON record per (graph, d, r) appended to a
//! JSONL file. Keys already present in the file are skipped.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use chipfire::format::search_result_json;
use chipfire::search::verify_witness;
use chipfire::{families, find_gdr, rho, Limits, Multigraph};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::commands::{with_seed, Failure};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    graphs: Vec<String>,
    /// Inclusive `[lo, hi]`.
    d: [u64; 2],
    r: [u64; 2],
    #[serde(default)]
    limits: LimitConfig,
    #[serde(default)]
    seed: Option<u64>,
    /// Emit NegativeRho records instead of leaving those cells out.
    #[serde(default)]
    include_negative_rho: bool,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct LimitConfig {
    max_k: Option<u64>,
    max_classes: Option<u64>,
    /// Seconds per unit.
    time_budget: Option<f64>,
}

impl LimitConfig {
    fn limits(&self) -> Limits {
        Limits {
            max_k: self.max_k,
            max_classes: self.max_classes.or(Limits::default().max_classes),
            time_budget: self.time_budget.map(Duration::from_secs_f64),
            parallelism: 1,
        }
    }
}

enum Unit {
    Search {
        graph: Multigraph,
        d: u64,
        r: u64,
    },
    BadSpec {
        spec: String,
        error: chipfire::Error,
    },
}

impl Unit {
    fn key(&self) -> String {
        match self {
            Unit::Search { graph, d, r } => format!("{}|d={d}|r={r}", graph.name()),
            Unit::BadSpec { spec, .. } => format!("{spec}|spec"),
        }
    }
}

fn io(path: &Path, e: std::io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

fn plan(config: &Config, seed: Option<u64>) -> Vec<Unit> {
    let seed = seed.or(config.seed);
    let mut units = Vec::new();
    for spec in &config.graphs {
        let spec = with_seed(spec, seed);
        let graphs = match families::expand_spec(&spec).or_else(|e| {
            // a plain graph file is also accepted
            chipfire::format::load_graph(&spec, None)
                .map(|g| vec![g])
                .map_err(|_| e)
        }) {
            Ok(gs) => gs,
            Err(error) => {
                units.push(Unit::BadSpec { spec, error });
                continue;
            }
        };
        for graph in graphs {
            for d in config.d[0]..=config.d[1] {
                for r in config.r[0]..=config.r[1] {
                    if rho(graph.genus(), d, r) < 0 && !config.include_negative_rho {
                        continue;
                    }
                    units.push(Unit::Search {
                        graph: graph.clone(),
                        d,
                        r,
                    });
                }
            }
        }
    }
    units
}

fn execute(unit: &Unit, limits: &Limits, timing: bool) -> Value {
    let key = unit.key();
    let started = Instant::now();
    let mut record = match unit {
        Unit::BadSpec { spec, error } => json!({
            "key": key,
            "graph": spec,
            "error": {"reason": error.reason(), "message": error.to_string()},
        }),
        Unit::Search { graph, d, r } => {
            let mut record = json!({
                "key": key,
                "graph": graph.name(),
                "vertices": graph.vertex_count(),
                "edges": graph.edge_count(),
                "genus": graph.genus(),
                "d": d,
                "r": r,
                "limits": {"max_k": limits.max_k, "max_classes": limits.max_classes},
            });
            match find_gdr(graph, *d, *r, limits) {
                Ok(result) => {
                    let verified = result.found && verify_witness(&result).unwrap_or(false);
                    record["result"] = search_result_json(&result);
                    record["verified"] = json!(verified);
                }
                Err(e) => {
                    record["error"] = json!({"reason": e.reason(), "message": e.to_string()});
                }
            }
            record
        }
    };
    record["engine_version"] = json!(ENGINE_VERSION);
    if timing {
        record["elapsed_ms"] = json!(started.elapsed().as_secs_f64() * 1e3);
    }
    record
}

/// Reads recorded keys and drops a trailing partial line left by an
/// interrupted run.
fn recorded_keys(path: &Path) -> Result<HashSet<String>, Failure> {
    let mut keys = HashSet::new();
    if !path.exists() {
        return Ok(keys);
    }
    let text = std::fs::read_to_string(path).map_err(|e| io(path, e))?;
    let complete = match text.rfind('\n') {
        Some(i) => &text[..=i],
        None => "",
    };
    if complete.len() != text.len() {
        let file = OpenOptions::new()
            .write(true)
            .open(path)
            .map_err(|e| io(path, e))?;
        file.set_len(complete.len() as u64)
            .map_err(|e| io(path, e))?;
    }
    for (i, line) in complete.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let key = serde_json::from_str::<Value>(line)
            .ok()
            .and_then(|v| v.get("key").and_then(Value::as_str).map(str::to_string))
            .ok_or_else(|| {
                Failure::Io(format!(
                    "{}: line {} is not a record",
                    path.display(),
                    i + 1
                ))
            })?;
        keys.insert(key);
    }
    Ok(keys)
}

pub fn run(
    config_path: &Path,
    out: &Path,
    jobs: usize,
    seed: Option<u64>,
    timing: bool,
) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(config_path).map_err(|e| io(config_path, e))?;
    let config: Config = serde_json::from_str(&text)
        .map_err(|e| chipfire::Error::Format(format!("{}: {e}", config_path.display())))?;
    let limits = config.limits.limits();

    let mut seen = recorded_keys(out)?;
    let planned = plan(&config, seed);
    let total = planned.len();
    let pending: Vec<Unit> = planned
        .into_iter()
        .filter(|u| seen.insert(u.key()))
        .collect();
    let skipped = total - pending.len();

    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(out)
        .map_err(|e| io(out, e))?;
    let mut writer = BufWriter::new(file);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Failure::Io(e.to_string()))?;

    let (mut found, mut not_found, mut errors) = (0u64, 0u64, 0u64);
    for chunk in pending.chunks(jobs.max(1) * 4) {
        let records: Vec<Value> = pool.install(|| {
            chunk
                .par_iter()
                .map(|u| execute(u, &limits, timing))
                .collect()
        });
        for record in &records {
            if record.get("error").is_some() {
                errors += 1;
            } else if record["result"]["found"] == json!(true) {
                found += 1;
            } else {
                not_found += 1;
            }
            append(&mut writer, record).map_err(|e| io(out, e))?;
        }
        writer.flush().map_err(|e| io(out, e))?;
    }

    Ok(json!({
        "out": out.display().to_string(),
        "units": total,
        "skipped": skipped,
        "written": pending.len(),
        "found": found,
        "not_found": not_found,
        "errors": errors,
    }))
}

fn append(writer: &mut BufWriter<File>, record: &Value) -> std::io::Result<()> {
    serde_json::to_writer(&mut *writer, record)?;
    writer.write_all(b"\n")
}
