use super::limb::LimbGuess;
use super::ordered::OrderedChainGuess;
use crate::error::Result;
use crate::graph::WeightedGraph;
use crate::prims::{held_karp_path_by, held_karp_tour_by, Edge, Forest};
use crate::weight::Weight;

/// Forest with every tree contracted to a node; the weight between two
/// nodes is the cheapest edge between their trees.
#[derive(Debug, Clone)]
pub struct Contracted<W> {
    k: usize,
    best: Vec<Edge<W>>,
}

impl<W: Weight> Contracted<W> {
    pub fn new(g: &WeightedGraph<W>, forest: &Forest<W>) -> Self {
        let k = forest.len();
        let mut best = vec![Edge::new(0, 0, W::zero()); k * k];
        for a in 0..k {
            for b in a + 1..k {
                let mut e: Option<Edge<W>> = None;
                for &u in &forest.trees[a].vertices {
                    for &v in &forest.trees[b].vertices {
                        let c = g.edge(u, v);
                        if e.is_none_or(|x| (c.w, c.u, c.v) < (x.w, x.u, x.v)) {
                            e = Some(c);
                        }
                    }
                }
                best[a * k + b] = e.unwrap();
                best[b * k + a] = e.unwrap();
            }
        }
        Contracted { k, best }
    }

    pub fn weight(&self, a: usize, b: usize) -> W {
        self.best[a * self.k + b].w
    }

    /// The graph edge realizing the contracted edge `a`–`b`.
    pub fn edge(&self, a: usize, b: usize) -> Edge<W> {
        self.best[a * self.k + b]
    }
}

/// Assignment of the trees needing a connection to long good chains, with
/// the resulting edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectGuess<W> {
    /// `(tree, gap)` pairs, sorted by tree.
    pub partition: Vec<(usize, usize)>,
    pub edges: Vec<Edge<W>>,
}

impl<W: Weight> ConnectGuess<W> {
    pub fn weight(&self) -> u128 {
        self.edges.iter().map(|e| e.w.wide()).sum()
    }
}

/// Trees whose guessed anchors are all single anchors and which still have
/// a vertex that is not a guessed anchor.
pub fn unanchored_trees<W: Weight>(guess: &OrderedChainGuess, limbs: &LimbGuess<W>, forest: &Forest<W>) -> Vec<usize> {
    let slots = guess.slots();
    (0..forest.len())
        .filter(|&t| {
            let in_tree: Vec<usize> = (0..slots.len()).filter(|&j| limbs.tree_of[j] == t).collect();
            in_tree.iter().all(|&j| slots[j].is_single()) && forest.trees[t].vertices.len() > in_tree.len()
        })
        .collect()
}

/// Gaps holding two pair anchors, with the trees of the first and second.
fn long_gaps<W: Weight>(guess: &OrderedChainGuess, limbs: &LimbGuess<W>) -> Vec<(usize, usize, usize)> {
    let slots = guess.slots();
    let mut out = Vec::new();
    let mut j = 0;
    while j < slots.len() {
        if slots[j].is_single() {
            j += 1;
        } else {
            out.push((slots[j].gap, limbs.tree_of[j], limbs.tree_of[j + 1]));
            j += 2;
        }
    }
    out
}

/// Edges for one fixed assignment `(tree, gap)`.
pub fn connect_for<W: Weight>(
    guess: &OrderedChainGuess,
    limbs: &LimbGuess<W>,
    contracted: &Contracted<W>,
    partition: &[(usize, usize)],
) -> Result<ConnectGuess<W>> {
    let mut edges = Vec::new();
    for (gap, first, second) in long_gaps(guess, limbs) {
        let mut nodes: Vec<usize> = partition.iter().filter(|p| p.1 == gap).map(|p| p.0).collect();
        nodes.push(first);
        nodes.push(second);
        nodes.sort_unstable();
        nodes.dedup();
        let order = if first == second {
            if nodes.len() == 1 {
                continue;
            }
            let mut o = held_karp_tour_by(&nodes, |a, b| contracted.weight(a, b))?.order;
            o.push(o[0]);
            o
        } else {
            held_karp_path_by(&nodes, first, second, |a, b| contracted.weight(a, b))?.order
        };
        edges.extend(order.windows(2).map(|p| contracted.edge(p[0], p[1])));
    }
    Ok(ConnectGuess { partition: partition.to_vec(), edges })
}

/// One `ConnectGuess` per map from the unanchored trees to long gaps.
pub fn connect_guesses<W: Weight>(
    guess: &OrderedChainGuess,
    limbs: &LimbGuess<W>,
    forest: &Forest<W>,
    contracted: &Contracted<W>,
) -> Result<Vec<ConnectGuess<W>>> {
    let free = unanchored_trees(guess, limbs, forest);
    let gaps: Vec<usize> = long_gaps(guess, limbs).iter().map(|x| x.0).collect();
    if !free.is_empty() && gaps.is_empty() {
        return Ok(Vec::new());
    }
    let total = gaps.len().pow(free.len() as u32);
    let mut out = Vec::with_capacity(total);
    for mut code in 0..total {
        let partition: Vec<(usize, usize)> = free
            .iter()
            .map(|&t| {
                let gap = gaps[code % gaps.len()];
                code /= gaps.len();
                (t, gap)
            })
            .collect();
        out.push(connect_for(guess, limbs, contracted, &partition)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alg_q::limb::LimbSearch;
    use crate::prims::spanning_t_forest;
    use crate::testutil::random_metric;

    #[test]
    fn contracted_weights_are_minima() {
        let g = random_metric(9, 4);
        let good: Vec<usize> = (0..9).collect();
        let f = spanning_t_forest(&good, |a, b| g.w(a, b), 3).unwrap();
        let c = Contracted::new(&g, &f);
        for a in 0..3 {
            for b in 0..3 {
                if a == b {
                    continue;
                }
                let min = f.trees[a].vertices.iter().flat_map(|&u| f.trees[b].vertices.iter().map(move |&v| (u, v)));
                let m = min.map(|(u, v)| g.w(u, v)).min().unwrap();
                assert_eq!(c.weight(a, b), m);
                let e = c.edge(a, b);
                assert_eq!(g.w(e.u, e.v), m);
            }
        }
    }

    #[test]
    fn one_long_gap_across_two_trees_is_cheapest_edge() {
        for seed in 0..20 {
            let g = random_metric(8, seed);
            let good: Vec<usize> = (1..8).collect();
            let f = spanning_t_forest(&good, |a, b| g.w(a, b), 2).unwrap();
            let guess = OrderedChainGuess { chains: vec![vec![0]], anchor_counts: vec![2] };
            let search = LimbSearch::new(&g, &guess, &f, 2);
            let c = Contracted::new(&g, &f);
            // anchors in different trees, both trees anchored by pair anchors
            let (a, b) = (f.trees[0].vertices[0], f.trees[1].vertices[0]);
            let Some(l) = search.build(&[a, b]) else { continue };
            assert!(unanchored_trees(&guess, &l, &f).is_empty());
            let cg = connect_guesses(&guess, &l, &f, &c).unwrap();
            assert_eq!(cg.len(), 1);
            assert_eq!(cg[0].edges, vec![c.edge(0, 1)]);
        }
    }

    #[test]
    fn same_tree_anchors_add_nothing() {
        let g = random_metric(8, 2);
        let good: Vec<usize> = (1..8).collect();
        let f = spanning_t_forest(&good, |a, b| g.w(a, b), 1).unwrap();
        let guess = OrderedChainGuess { chains: vec![vec![0]], anchor_counts: vec![2] };
        let c = Contracted::new(&g, &f);
        for l in crate::alg_q::limb::limb_guesses(&g, &guess, &f, 1) {
            let cg = connect_guesses(&guess, &l, &f, &c).unwrap();
            assert_eq!(cg.len(), 1);
            assert!(cg[0].edges.is_empty());
        }
    }

    #[test]
    fn unanchored_tree_without_long_gap_has_no_guess() {
        let g = random_metric(8, 9);
        let good: Vec<usize> = (1..8).collect();
        let f = spanning_t_forest(&good, |a, b| g.w(a, b), 1).unwrap();
        let guess = OrderedChainGuess { chains: vec![vec![0]], anchor_counts: vec![1] };
        let c = Contracted::new(&g, &f);
        for l in crate::alg_q::limb::limb_guesses(&g, &guess, &f, 1) {
            assert_eq!(unanchored_trees(&guess, &l, &f), vec![0]);
            assert!(connect_guesses(&guess, &l, &f, &c).unwrap().is_empty());
        }
    }
}
