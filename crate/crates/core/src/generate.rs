//! Seeded instance generators. All randomness comes from ChaCha8 seeded with
//! `seed_from_u64`, so instances are identical across platforms.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::{bad_vertices_p, min_violating_set};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeneratorKind {
    RandomMetric,
    PlantedP,
    PlantedQ,
}

impl std::str::FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "metric" | "random-metric" | "randomMetric" => Ok(GeneratorKind::RandomMetric),
            "p" | "planted-p" | "plantedP" => Ok(GeneratorKind::PlantedP),
            "q" | "planted-q" | "plantedQ" => Ok(GeneratorKind::PlantedQ),
            _ => Err(Error::InvalidGraph(format!("unknown generator kind {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    /// Target `p` or `q`; ignored for random metric instances.
    pub target: usize,
    pub seed: u64,
    pub weight_range: (u64, u64),
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, n: usize, target: usize, seed: u64) -> Self {
        GeneratorSpec { kind, n, target, seed, weight_range: (1, 100) }
    }

    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.weight_range;
        if self.n < 3 || self.target > self.n || lo < 1 || lo > hi {
            return Err(Error::InvalidGraph(format!("bad generator spec {self:?}")));
        }
        // keeps every planted weight and the n^2 sum far below i64::MAX
        if hi > 1 << 40 || self.n > 1 << 10 {
            return Err(Error::InvalidGraph("generator weights or size too large".into()));
        }
        Ok(())
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<WeightedGraph<u64>> {
    match spec.kind {
        GeneratorKind::RandomMetric => gen_random_metric(spec),
        GeneratorKind::PlantedP | GeneratorKind::PlantedQ => gen_planted(spec),
    }
}

/// Uniform weights in the range, closed under shortest paths.
pub fn gen_random_metric(spec: &GeneratorSpec) -> Result<WeightedGraph<u64>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    WeightedGraph::from_matrix(&metric_matrix(spec, &mut rng))
}

fn metric_matrix(spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let n = spec.n;
    let (lo, hi) = spec.weight_range;
    let mut d = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let w = rng.random_range(lo..=hi);
            d[i][j] = w;
            d[j][i] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

fn set(d: &mut [Vec<u64>], a: usize, b: usize, w: u64) {
    d[a][b] = w;
    d[b][a] = w;
}

const PLANT_RETRIES: usize = 64;

/// Metric instance with exactly `target` bad vertices (planted p) or a
/// minimum violating set of exactly `target` vertices (planted q).
pub fn gen_planted(spec: &GeneratorSpec) -> Result<WeightedGraph<u64>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let base = metric_matrix(spec, &mut rng);
    if spec.target == 0 {
        return WeightedGraph::from_matrix(&base);
    }
    let n = spec.n;
    let dmax = base.iter().flatten().copied().max().unwrap_or(0);
    match spec.kind {
        GeneratorKind::PlantedP => {
            let p = spec.target;
            if p < 3 {
                return Err(Error::GenerationFailed(format!("p = {p} is impossible: a violating triangle has 3 vertices")));
            }
            let mut vs: Vec<usize> = (0..n).collect();
            vs.shuffle(&mut rng);
            let s = &vs[..p];
            let mut in_s = vec![false; n];
            for &v in s {
                in_s[v] = true;
            }
            let mut d = base;
            // lifting all S-to-good edges keeps the graph metric
            let lift = 2 * dmax + 1;
            for a in 0..n {
                for b in a + 1..n {
                    if in_s[a] != in_s[b] {
                        let w = d[a][b] + lift;
                        set(&mut d, a, b, w);
                    }
                }
            }
            // heavy matching inside S: violates with every third vertex of S
            // but not with good vertices, so exactly S is bad
            let mut order = s.to_vec();
            order.shuffle(&mut rng);
            let pairs = rng.random_range(1..=p / 2);
            for k in 0..pairs {
                let h = rng.random_range(2 * dmax + 1..=2 * lift);
                set(&mut d, order[2 * k], order[2 * k + 1], h);
            }
            let g = WeightedGraph::from_matrix(&d)?;
            let got = bad_vertices_p(&g).size();
            if got != p {
                return Err(Error::GenerationFailed(format!("planted p = {p} but found {got}")));
            }
            Ok(g)
        }
        GeneratorKind::PlantedQ => {
            let q = spec.target;
            if 2 * q > n {
                return Err(Error::GenerationFailed(format!("q = {q} needs {} vertices", 2 * q)));
            }
            for _ in 0..PLANT_RETRIES {
                let mut vs: Vec<usize> = (0..n).collect();
                vs.shuffle(&mut rng);
                let mut d = base.clone();
                for k in 0..q {
                    let (a, b) = (vs[2 * k], vs[2 * k + 1]);
                    if *[true, false].choose(&mut rng).unwrap() {
                        let h = rng.random_range(2 * dmax + 1..=3 * dmax + 1);
                        let w = d[a][b] + h;
                        set(&mut d, a, b, w);
                    } else {
                        set(&mut d, a, b, spec.weight_range.0);
                    }
                }
                let g = WeightedGraph::from_matrix(&d)?;
                match min_violating_set(&g, Some(q)) {
                    Ok(part) if part.size() == q => return Ok(g),
                    _ => continue,
                }
            }
            Err(Error::GenerationFailed(format!("no instance with q = {q} after {PLANT_RETRIES} tries")))
        }
        GeneratorKind::RandomMetric => unreachable!(),
    }
}
