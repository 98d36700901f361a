//! Partitions of the bad vertices into vertex-disjoint paths.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::prims::Edge;
use crate::weight::Weight;

/// Vertex-disjoint paths; each stored with its smaller endpoint first and
/// the list sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainSet {
    pub chains: Vec<Vec<usize>>,
}

impl ChainSet {
    pub fn new(mut chains: Vec<Vec<usize>>) -> Self {
        for c in &mut chains {
            if c.len() > 1 && c[0] > c[c.len() - 1] {
                c.reverse();
            }
        }
        chains.sort_unstable();
        ChainSet { chains }
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.chains.iter().flatten().copied()
    }

    pub fn chain_edges<W: Weight>(g: &WeightedGraph<W>, chain: &[usize]) -> Vec<Edge<W>> {
        chain.windows(2).map(|p| g.edge(p[0], p[1])).collect()
    }

    pub fn chain_weight<W: Weight>(g: &WeightedGraph<W>, chain: &[usize]) -> u128 {
        g.path_weight(chain)
    }

    pub fn edges<W: Weight>(&self, g: &WeightedGraph<W>) -> Vec<Edge<W>> {
        self.chains.iter().flat_map(|c| Self::chain_edges(g, c)).collect()
    }

    pub fn weight<W: Weight>(&self, g: &WeightedGraph<W>) -> u128 {
        self.chains.iter().map(|c| g.path_weight(c)).sum()
    }
}

/// Every partition of `bad` into unordered paths, each exactly once.
pub fn enumerate_bad_chains(bad: &[usize], cap: usize) -> Result<Vec<ChainSet>> {
    if bad.len() > cap {
        return Err(Error::CapExceeded { what: "bad vertex count", size: bad.len(), cap });
    }
    let mut rest = bad.to_vec();
    rest.sort_unstable();
    rest.dedup();
    let mut out = Vec::new();
    partitions(&rest, &mut Vec::new(), &mut out);
    Ok(out)
}

/// The lowest remaining vertex picks its block; every path order of the
/// block with first < last is emitted.
fn partitions(rest: &[usize], acc: &mut Vec<Vec<usize>>, out: &mut Vec<ChainSet>) {
    let Some((&v, others)) = rest.split_first() else {
        out.push(ChainSet::new(acc.clone()));
        return;
    };
    let m = others.len();
    for mask in 0..1usize << m {
        let mut block = vec![v];
        let mut left = Vec::with_capacity(m);
        for (i, &u) in others.iter().enumerate() {
            if mask >> i & 1 == 1 {
                block.push(u);
            } else {
                left.push(u);
            }
        }
        for order in path_orders(&block) {
            acc.push(order);
            partitions(&left, acc, out);
            acc.pop();
        }
    }
}

/// Orders of `block` up to reversal, in lexicographic order.
pub(crate) fn path_orders(block: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(block.len());
    let mut used = vec![false; block.len()];
    fn rec(block: &[usize], cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == block.len() {
            if cur.len() == 1 || cur[0] < cur[cur.len() - 1] {
                out.push(cur.clone());
            }
            return;
        }
        for i in 0..block.len() {
            if !used[i] {
                used[i] = true;
                cur.push(block[i]);
                rec(block, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut sorted = block.to_vec();
    sorted.sort_unstable();
    rec(&sorted, &mut cur, &mut used, &mut out);
    out
}
