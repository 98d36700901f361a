//! Seeded benchmark suites: generate, solve, compare with the oracle, and
//! write one CSV row per (instance, algorithm).

use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{bad_vertices_p, min_violating_set};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::generate::{generate, GeneratorKind, GeneratorSpec};
use crate::graph::WeightedGraph;
use crate::report::{narrow, oracle, ratio, run, Algorithm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Metric,
    P,
    Q,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "metric" => Ok(Suite::Metric),
            "p" => Ok(Suite::P),
            "q" => Ok(Suite::Q),
            _ => Err(Error::InvalidGraph(format!("unknown suite {s:?}, expected metric, p or q"))),
        }
    }
}

impl Suite {
    /// Vertex-count range and target range.
    pub fn ranges(self) -> ((usize, usize), (usize, usize)) {
        match self {
            Suite::Metric => ((6, 11), (0, 0)),
            Suite::P => ((8, 12), (3, 5)),
            Suite::Q => ((8, 10), (1, 3)),
        }
    }

    pub fn default_algorithms(self) -> Vec<Algorithm> {
        match self {
            Suite::Metric => vec![Algorithm::Christofides],
            Suite::P => vec![Algorithm::Alg1, Algorithm::Alg2],
            Suite::Q => vec![Algorithm::Alg4],
        }
    }

    /// Generator spec of instance `id`: `n` and the target cycle through
    /// their ranges, the generator seed is `seed + id`.
    pub fn instance(self, id: usize, seed: u64) -> GeneratorSpec {
        let ((nl, nh), (tl, th)) = self.ranges();
        let n = nl + id % (nh - nl + 1);
        let target = tl + (id / (nh - nl + 1)) % (th - tl + 1);
        let kind = match self {
            Suite::Metric => GeneratorKind::RandomMetric,
            Suite::P => GeneratorKind::PlantedP,
            Suite::Q => GeneratorKind::PlantedQ,
        };
        GeneratorSpec::new(kind, n, target, seed.wrapping_add(id as u64))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub instance_id: usize,
    pub n: usize,
    pub p: usize,
    pub q: i64,
    pub algorithm: String,
    pub weight: u64,
    pub opt: Option<u64>,
    pub ratio: Option<f64>,
    pub guesses_evaluated: u64,
    pub guesses_skipped: u64,
    pub wall_time_ms: u64,
}

/// Rows for one instance, one per algorithm.
pub fn bench_instance(
    id: usize,
    g: &WeightedGraph<u64>,
    algorithms: &[Algorithm],
    caps: &Caps,
) -> Result<Vec<BenchRow>> {
    let p = bad_vertices_p(g).size();
    let q = match min_violating_set(g, Some(caps.q)) {
        Ok(part) => part.size() as i64,
        Err(Error::BudgetExceeded { .. }) => -1,
        Err(e) => return Err(e),
    };
    let opt = oracle(g, caps)?.map(|t| narrow(t.total_weight)).transpose()?;
    let mut rows = Vec::with_capacity(algorithms.len());
    for &alg in algorithms {
        let start = std::time::Instant::now();
        let sol = run(g, alg, caps)?;
        let wall_time_ms = start.elapsed().as_millis() as u64;
        if !sol.tour.is_hamiltonian(g.n()) {
            return Err(Error::Internal(format!("{alg} returned a non-Hamiltonian tour on instance {id}")));
        }
        let weight = narrow(sol.tour.total_weight)?;
        rows.push(BenchRow {
            instance_id: id,
            n: g.n(),
            p,
            q,
            algorithm: alg.name().to_string(),
            weight,
            opt,
            ratio: opt.map(|o| ratio(weight, o)),
            guesses_evaluated: sol.guesses_evaluated,
            guesses_skipped: sol.guesses_skipped,
            wall_time_ms,
        });
    }
    Ok(rows)
}

/// Runs `count` instances on the current rayon pool; rows come back in
/// instance order.
pub fn run_bench(suite: Suite, count: usize, seed: u64, algorithms: &[Algorithm], caps: &Caps) -> Result<Vec<BenchRow>> {
    let per: Vec<Result<Vec<BenchRow>>> = (0..count)
        .into_par_iter()
        .map(|id| {
            let g = generate(&suite.instance(id, seed))?;
            bench_instance(id, &g, algorithms, caps)
        })
        .collect();
    let mut rows = Vec::new();
    for r in per {
        rows.extend(r?);
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Internal(format!("csv: {e}")))?;
    }
    w.flush().map_err(|e| Error::Internal(format!("csv: {e}")))
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<BenchRow>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .enumerate()
        .map(|(i, r)| r.map_err(|e| Error::Parse { line: i + 2, msg: e.to_string() }))
        .collect()
}
