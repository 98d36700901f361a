use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::WeightedGraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform weights in `lo..=hi`, no structure.
pub fn random_graph(n: usize, seed: u64, lo: u32, hi: u32) -> WeightedGraph<u32> {
    let mut r = rng(seed);
    WeightedGraph::from_fn(n, |_, _| r.random_range(lo..=hi)).unwrap()
}

/// Shortest-path closure of random weights, hence metric.
pub fn random_metric(n: usize, seed: u64) -> WeightedGraph<u32> {
    let mut r = rng(seed);
    let mut d = vec![vec![0u32; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let w = r.random_range(1..=100);
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
    WeightedGraph::from_matrix(&d).unwrap()
}

/// Random labelled tree on `0..n`: shuffled order, each vertex hangs off an
/// earlier one.
pub fn random_tree(n: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut r = rng(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut r);
    (1..n).map(|i| (order[r.random_range(0..i)], order[i])).collect()
}
