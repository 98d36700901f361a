//! One-shot solving with timing, oracle comparison and a serializable report.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::alg_p::{alg1, alg2};
use crate::alg_q::alg4;
use crate::analysis::{bad_vertices_p, min_violating_set};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::metric::christofides;
use crate::prims::{brute_force_tour, held_karp_tour, Tour};
use crate::solution::Solution;
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Alg1,
    Alg2,
    Alg4,
    Christofides,
    Exact,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] =
        [Algorithm::Alg1, Algorithm::Alg2, Algorithm::Alg4, Algorithm::Christofides, Algorithm::Exact];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Alg1 => "alg1",
            Algorithm::Alg2 => "alg2",
            Algorithm::Alg4 => "alg4",
            Algorithm::Christofides => "christofides",
            Algorithm::Exact => "exact",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidGraph(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub algorithm: String,
    pub tour: Tour,
    pub weight: u64,
    pub opt: Option<u64>,
    /// `weight / opt` rounded to six decimals.
    pub ratio: Option<f64>,
    pub p: usize,
    /// Minimum violating set size, `-1` when it exceeds the `q` cap.
    pub q: i64,
    pub guesses_evaluated: u64,
    pub guesses_skipped: u64,
    pub wall_time_ms: u64,
}

impl SolveReport {
    /// True when `weight <= num/den * opt`; `None` without an optimum.
    pub fn within(&self, num: u64, den: u64) -> Option<bool> {
        self.opt.map(|o| self.weight as u128 * den as u128 <= o as u128 * num as u128)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
    }
}

/// `num / den` rounded half-up to six decimals.
pub fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        return if num == 0 { 1.0 } else { f64::INFINITY };
    }
    let scaled = (num as u128 * 2_000_000 + den as u128) / (2 * den as u128);
    scaled as f64 / 1e6
}

pub(crate) fn narrow(w: u128) -> Result<u64> {
    u64::try_from(w).map_err(|_| Error::Internal(format!("tour weight {w} exceeds u64")))
}

/// Exact optimum by brute force when the instance is small enough for it,
/// otherwise Held-Karp; `None` above both caps.
pub fn oracle<W: Weight>(g: &WeightedGraph<W>, caps: &Caps) -> Result<Option<Tour>> {
    let n = g.n();
    if n <= caps.brute_force {
        brute_force_tour(g).map(Some)
    } else if n <= caps.held_karp {
        held_karp_tour(g, &g.vertices().collect::<Vec<_>>()).map(Some)
    } else {
        Ok(None)
    }
}

/// Run one algorithm. The tour of `exact` is Held-Karp on every vertex.
pub fn run<W: Weight>(g: &WeightedGraph<W>, alg: Algorithm, caps: &Caps) -> Result<Solution> {
    let all: Vec<usize> = g.vertices().collect();
    match alg {
        Algorithm::Alg1 => alg1(g, &bad_vertices_p(g), caps),
        Algorithm::Alg2 => alg2(g, &bad_vertices_p(g), caps),
        Algorithm::Alg4 => {
            let part = min_violating_set(g, Some(caps.q)).map_err(|_| Error::CapExceeded {
                what: "minimum violating set (at least)",
                size: caps.q + 1,
                cap: caps.q,
            })?;
            alg4(g, &part, caps)
        }
        Algorithm::Christofides => christofides(g, &all).map(Solution::single),
        Algorithm::Exact => {
            caps.check_held_karp(g.n())?;
            held_karp_tour(g, &all).map(Solution::single)
        }
    }
}

/// Solve, time it and compare against the oracle when `with_opt` is set and
/// the instance is within the oracle caps.
pub fn solve<W: Weight>(g: &WeightedGraph<W>, alg: Algorithm, caps: &Caps, with_opt: bool) -> Result<SolveReport> {
    let p = bad_vertices_p(g).size();
    let q = match min_violating_set(g, Some(caps.q)) {
        Ok(part) => part.size() as i64,
        Err(Error::BudgetExceeded { .. }) => -1,
        Err(e) => return Err(e),
    };
    let start = Instant::now();
    let sol = run(g, alg, caps)?;
    let wall_time_ms = start.elapsed().as_millis() as u64;
    if !sol.tour.is_hamiltonian(g.n()) {
        return Err(Error::Internal(format!("{alg} returned a non-Hamiltonian tour")));
    }
    let weight = narrow(sol.tour.total_weight)?;
    let opt = match with_opt {
        true => oracle(g, caps)?.map(|t| narrow(t.total_weight)).transpose()?,
        false => None,
    };
    Ok(SolveReport {
        algorithm: alg.name().to_string(),
        tour: sol.tour,
        weight,
        opt,
        ratio: opt.map(|o| ratio(weight, o)),
        p,
        q,
        guesses_evaluated: sol.guesses_evaluated,
        guesses_skipped: sol.guesses_skipped,
        wall_time_ms,
    })
}
