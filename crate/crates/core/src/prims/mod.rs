//! Exact combinatorial building blocks shared by every pipeline.

mod blossom;
mod brute;
mod euler;
mod held_karp;
mod matching;
mod mst;

use serde::{Deserialize, Serialize};

use crate::graph::WeightedGraph;
use crate::weight::Weight;

pub use brute::{brute_force_tour, BRUTE_FORCE_CAP};
pub use euler::eulerian_tour;
pub use held_karp::{held_karp_path, held_karp_path_by, held_karp_tour, held_karp_tour_by, Path, HELD_KARP_CAP};
pub use matching::{min_weight_perfect_matching, MATCHING_DP_LIMIT};
pub use mst::{mst, spanning_t_forest};

/// Undirected weighted edge, stored with `u <= v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge<W> {
    pub u: usize,
    pub v: usize,
    pub w: W,
}

impl<W: Weight> Edge<W> {
    pub fn new(a: usize, b: usize, w: W) -> Self {
        Edge { u: a.min(b), v: a.max(b), w }
    }

    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

impl<W: Weight> WeightedGraph<W> {
    pub fn edge(&self, a: usize, b: usize) -> Edge<W> {
        Edge::new(a, b, self.w(a, b))
    }
}

/// Set of distinct edges with their total weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSet<W> {
    edges: Vec<Edge<W>>,
    total: u128,
}

impl<W: Weight> EdgeSet<W> {
    /// Sorts and rejects duplicate vertex pairs.
    pub fn new(mut edges: Vec<Edge<W>>) -> Self {
        edges.sort_unstable();
        debug_assert!(edges.windows(2).all(|p| (p[0].u, p[0].v) != (p[1].u, p[1].v)), "duplicate edge");
        let total = edges.iter().map(|e| e.w.wide()).sum();
        EdgeSet { edges, total }
    }

    pub fn edges(&self) -> &[Edge<W>] {
        &self.edges
    }

    pub fn total_weight(&self) -> u128 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Multigraph over vertex ids `0..universe`, parallel edges allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiEdgeSet<W> {
    edges: Vec<Edge<W>>,
    degree: Vec<usize>,
    total: u128,
}

impl<W: Weight> MultiEdgeSet<W> {
    pub fn new(universe: usize) -> Self {
        MultiEdgeSet { edges: Vec::new(), degree: vec![0; universe], total: 0 }
    }

    pub fn universe(&self) -> usize {
        self.degree.len()
    }

    /// Grow the vertex universe (fresh copy vertices).
    pub fn grow(&mut self, universe: usize) {
        if universe > self.degree.len() {
            self.degree.resize(universe, 0);
        }
    }

    pub fn add(&mut self, e: Edge<W>) {
        assert!(e.u != e.v, "self-loop {}", e.u);
        self.degree[e.u] += 1;
        self.degree[e.v] += 1;
        self.total += e.w.wide();
        self.edges.push(e);
    }

    pub fn extend<I: IntoIterator<Item = Edge<W>>>(&mut self, it: I) {
        for e in it {
            self.add(e);
        }
    }

    /// Remove one copy of the given edge; false if absent.
    pub fn remove(&mut self, a: usize, b: usize) -> bool {
        let (u, v) = (a.min(b), a.max(b));
        match self.edges.iter().rposition(|e| e.u == u && e.v == v) {
            Some(i) => {
                let e = self.edges.remove(i);
                self.degree[u] -= 1;
                self.degree[v] -= 1;
                self.total -= e.w.wide();
                true
            }
            None => false,
        }
    }

    /// Remove every edge matching the predicate.
    pub fn retain(&mut self, mut keep: impl FnMut(&Edge<W>) -> bool) {
        let mut kept = Vec::with_capacity(self.edges.len());
        for e in self.edges.drain(..) {
            if keep(&e) {
                kept.push(e);
            } else {
                self.degree[e.u] -= 1;
                self.degree[e.v] -= 1;
                self.total -= e.w.wide();
            }
        }
        self.edges = kept;
    }

    pub fn edges(&self) -> &[Edge<W>] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degree[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    pub fn total_weight(&self) -> u128 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn odd_vertices(&self) -> Vec<usize> {
        (0..self.degree.len()).filter(|&v| self.degree[v] % 2 == 1).collect()
    }

    /// Connected on its non-isolated vertices.
    pub fn is_connected(&self) -> bool {
        let n = self.degree.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            parent[a] = b;
        }
        let mut root = None;
        for v in 0..n {
            if self.degree[v] > 0 {
                let r = find(&mut parent, v);
                if *root.get_or_insert(r) != r {
                    return false;
                }
            }
        }
        true
    }

    /// Sorted multiset of `(u, v)` pairs, for comparisons in tests.
    pub fn sorted_pairs(&self) -> Vec<(usize, usize)> {
        let mut p: Vec<_> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        p.sort_unstable();
        p
    }
}

/// One tree of a spanning forest; `vertices` is sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree<W> {
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge<W>>,
}

impl<W: Weight> Tree<W> {
    pub fn weight(&self) -> u128 {
        self.edges.iter().map(|e| e.w.wide()).sum()
    }
}

/// Vertex-disjoint trees ordered by their smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forest<W> {
    pub trees: Vec<Tree<W>>,
}

impl<W: Weight> Forest<W> {
    pub fn total_weight(&self) -> u128 {
        self.trees.iter().map(Tree::weight).sum()
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// `tree_of[v]` for every covered vertex, `usize::MAX` elsewhere.
    pub fn tree_index(&self, universe: usize) -> Vec<usize> {
        let mut idx = vec![usize::MAX; universe];
        for (t, tree) in self.trees.iter().enumerate() {
            for &v in &tree.vertices {
                idx[v] = t;
            }
        }
        idx
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge<W>> {
        self.trees.iter().flat_map(|t| t.edges.iter())
    }
}

/// Perfect matching with pairs `(a, b)`, `a < b`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching<W> {
    pub pairs: Vec<(usize, usize)>,
    pub weights: Vec<W>,
    pub total_weight: u128,
}

impl<W: Weight> Matching<W> {
    pub fn empty() -> Self {
        Matching { pairs: Vec::new(), weights: Vec::new(), total_weight: 0 }
    }
}

/// Cyclic vertex order with its weight (closing edge included).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tour {
    pub order: Vec<usize>,
    pub total_weight: u128,
}

impl Tour {
    pub fn new<W: Weight>(g: &WeightedGraph<W>, order: Vec<usize>) -> Self {
        let total_weight = g.cycle_weight(&order);
        Tour { order, total_weight }
    }

    /// Rotate to the smallest vertex, then orient so that its successor is
    /// smaller than its predecessor.
    pub fn canonical(mut self) -> Self {
        canonicalize(&mut self.order);
        self
    }

    /// True when `order` is a permutation of `0..n`.
    pub fn is_hamiltonian(&self, n: usize) -> bool {
        is_permutation(&self.order, n)
    }

    /// Orders by weight, then by canonical vertex sequence.
    pub fn better_than(&self, other: &Tour) -> bool {
        (self.total_weight, &self.order) < (other.total_weight, &other.order)
    }
}

pub fn canonicalize(order: &mut [usize]) {
    if order.is_empty() {
        return;
    }
    let pos = (0..order.len()).min_by_key(|&i| order[i]).unwrap();
    order.rotate_left(pos);
    let k = order.len();
    if k > 2 && order[1] > order[k - 1] {
        order[1..].reverse();
    }
}

pub fn is_permutation(order: &[usize], n: usize) -> bool {
    if order.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}
