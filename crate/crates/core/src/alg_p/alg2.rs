use rayon::prelude::*;

use crate::analysis::VertexPartition;
use crate::caps::Caps;
use crate::chains::{enumerate_bad_chains, ChainSet};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::prims::{eulerian_tour, min_weight_perfect_matching, mst, Edge, EdgeSet, Matching, MultiEdgeSet, Tour};
use crate::shortcut::{check_shortcut, Walk};
use crate::solution::Solution;
use crate::weight::Weight;

/// Spanning tree that contains every chain edge and attaches good vertices
/// only to chain endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstrainedSpanningTree<W> {
    pub edges: EdgeSet<W>,
}

impl<W: Weight> ConstrainedSpanningTree<W> {
    pub fn total_weight(&self) -> u128 {
        self.edges.total_weight()
    }

    pub fn multigraph(&self, n: usize) -> MultiEdgeSet<W> {
        let mut m = MultiEdgeSet::new(n);
        m.extend(self.edges.edges().iter().copied());
        m
    }
}

/// Contract every chain to a node, take an MST where chain-chain pairs are
/// forbidden and a chain reaches a good vertex through its cheaper endpoint,
/// then add the chain edges back.
pub fn build_cst<W: Weight>(g: &WeightedGraph<W>, chains: &ChainSet, good: &[usize]) -> Result<ConstrainedSpanningTree<W>> {
    let c = chains.len();
    let nodes: Vec<usize> = (0..c + good.len()).collect();
    let ends = |i: usize| {
        let ch = &chains.chains[i];
        (ch[0], ch[ch.len() - 1])
    };
    // chain i reaches good vertex v through this endpoint (ties to lower id)
    let attach = |i: usize, v: usize| {
        let (a, b) = ends(i);
        let (wa, wb) = (g.w(a, v), g.w(b, v));
        if wa < wb || (wa == wb && a <= b) {
            a
        } else {
            b
        }
    };
    let real = |x: usize, y: usize| -> Option<(usize, usize)> {
        let (x, y) = (x.min(y), x.max(y));
        match (x < c, y < c) {
            (true, true) => None,
            (true, false) => {
                let v = good[y - c];
                Some((attach(x, v), v))
            }
            _ => Some((good[x - c], good[y - c])),
        }
    };
    let tree = mst(&nodes, |x, y| real(x, y).map(|(a, b)| g.w(a, b)))?;
    let mut edges: Vec<Edge<W>> =
        tree.edges().iter().map(|e| real(e.u, e.v).map(|(a, b)| g.edge(a, b)).unwrap()).collect();
    edges.extend(chains.edges(g));
    Ok(ConstrainedSpanningTree { edges: EdgeSet::new(edges) })
}

/// Matching on the odd vertices of the tree with chain endpoint pairs priced
/// at the chain weight, mapped back to edges of the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityMatching<W> {
    /// Matching in the auxiliary graph.
    pub matching: Matching<W>,
    /// Realized edges; a matched chain pair contributes the whole chain.
    pub edges: Vec<Edge<W>>,
    /// Indices of chains added a second time.
    pub doubled: Vec<usize>,
}

impl<W: Weight> ParityMatching<W> {
    pub fn total_weight(&self) -> u128 {
        self.edges.iter().map(|e| e.w.wide()).sum()
    }
}

pub fn parity_matching_alg2<W: Weight>(
    g: &WeightedGraph<W>,
    chains: &ChainSet,
    cst: &ConstrainedSpanningTree<W>,
) -> Result<ParityMatching<W>> {
    let odd = cst.multigraph(g.n()).odd_vertices();
    let chain_of_pair = |a: usize, b: usize| {
        chains.chains.iter().position(|ch| {
            ch.len() > 1 && (ch[0], ch[ch.len() - 1]) == (a.min(b), a.max(b))
        })
    };
    let matching = min_weight_perfect_matching(&odd, |a, b| match chain_of_pair(a, b) {
        Some(i) => W::from_wide(ChainSet::chain_weight(g, &chains.chains[i])),
        None => g.w(a, b),
    })?;
    let mut edges = Vec::new();
    let mut doubled = Vec::new();
    for &(a, b) in &matching.pairs {
        match chain_of_pair(a, b) {
            Some(i) => {
                doubled.push(i);
                edges.extend(ChainSet::chain_edges(g, &chains.chains[i]));
            }
            None => edges.push(g.edge(a, b)),
        }
    }
    doubled.sort_unstable();
    Ok(ParityMatching { matching, edges, doubled })
}

/// Turn the Eulerian union of tree and matching into a tour: undouble the
/// doubled chains through a good neighbour of one endpoint, walk, then drop
/// repeated bad and good vertices.
pub fn shortcut_alg2<W: Weight>(
    g: &WeightedGraph<W>,
    chains: &ChainSet,
    cst: &ConstrainedSpanningTree<W>,
    pm: &ParityMatching<W>,
    bad: &[bool],
) -> Result<Tour> {
    let n = g.n();
    let w = |a: usize, b: usize| g.w(a, b).wide();
    let mut multi = cst.multigraph(n);
    multi.extend(pm.edges.iter().copied());
    let bound = multi.total_weight();

    for &i in &pm.doubled {
        let chain = &chains.chains[i];
        let good_nbrs = |v: usize, m: &MultiEdgeSet<W>| {
            let mut out: Vec<usize> = m.edges().iter().filter(|e| e.u == v || e.v == v).map(|e| e.other(v)).filter(|&u| !bad[u]).collect();
            out.sort_unstable();
            out
        };
        let (a, z) = (chain[0], chain[chain.len() - 1]);
        let (end, path): (usize, Vec<usize>) = if good_nbrs(a, &multi).len() >= 2 {
            (a, chain.clone())
        } else if good_nbrs(z, &multi).len() >= 2 {
            (z, chain.iter().rev().copied().collect())
        } else {
            return Err(Error::StructureViolated(format!("no endpoint of doubled chain {chain:?} has two good neighbours")));
        };
        let g1 = good_nbrs(end, &multi)[0];
        for p in path.windows(2) {
            check_shortcut(g1, p[0], p[1], w)?;
        }
        for p in path.windows(2) {
            multi.remove(p[0], p[1]);
        }
        multi.remove(end, g1);
        multi.add(g.edge(g1, path[path.len() - 1]));
    }

    let mut walk = Walk::new(eulerian_tour(&multi)?);
    // repeated bad vertices: keep the appearance between two bad vertices
    let mut appearances = vec![Vec::new(); n];
    for pos in walk.positions() {
        appearances[walk.vertex(pos)].push(pos);
    }
    for v in (0..n).filter(|&v| bad[v] && appearances[v].len() > 1) {
        let keep = appearances[v]
            .iter()
            .copied()
            .find(|&p| {
                let (x, y) = walk.neighbours(p);
                bad[x] && bad[y]
            })
            .unwrap_or(appearances[v][0]);
        for &p in appearances[v].iter().filter(|&&p| p != keep) {
            let (x, y) = walk.neighbours(p);
            if bad[x] && bad[y] {
                return Err(Error::StructureViolated(format!("repeat of bad vertex {v} has no good neighbour")));
            }
            walk.remove(p, w)?;
        }
    }
    walk.drop_repeats(|v| !bad[v], w)?;

    let tour = Tour::new(g, walk.order()).canonical();
    if !tour.is_hamiltonian(n) {
        return Err(Error::StructureViolated("shortcut walk is not Hamiltonian".into()));
    }
    if tour.total_weight > bound {
        return Err(Error::Internal(format!("ALG.2 tour {} exceeds tree plus matching {bound}", tour.total_weight)));
    }
    Ok(tour)
}

/// One full ALG.2 pass for a fixed chain guess.
pub fn alg2_guess<W: Weight>(g: &WeightedGraph<W>, chains: &ChainSet, part: &VertexPartition, bad: &[bool]) -> Result<Tour> {
    let cst = build_cst(g, chains, &part.good)?;
    let pm = parity_matching_alg2(g, chains, &cst)?;
    shortcut_alg2(g, chains, &cst, &pm, bad)
}

/// Best ALG.2 tour over every chain guess.
pub fn alg2<W: Weight>(g: &WeightedGraph<W>, part: &VertexPartition, caps: &Caps) -> Result<Solution> {
    if let Some(s) = super::degenerate(g, part, caps)? {
        return Ok(s);
    }
    let guesses = enumerate_bad_chains(&part.bad, caps.p)?;
    let bad = part.bad_mask(g.n());
    let outcomes: Vec<Result<Tour>> = guesses.par_iter().map(|c| alg2_guess(g, c, part, &bad)).collect();
    Solution::best_of(outcomes)
}
