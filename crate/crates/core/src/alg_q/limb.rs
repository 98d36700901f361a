use super::ordered::{OrderedChainGuess, Slot};
use crate::graph::WeightedGraph;
use crate::prims::{Edge, Forest};
use crate::weight::Weight;

/// One leaf of the LIMB search: an anchor per slot and the limbs they carry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimbGuess<W> {
    /// Guessed anchor per slot, pairwise distinct.
    pub anchors: Vec<usize>,
    /// Two edges per single-anchor slot, one per pair-anchor slot.
    pub limbs: Vec<Edge<W>>,
    /// Forest tree of each slot's anchor.
    pub tree_of: Vec<usize>,
    /// Candidate set per tree (empty for trees without slots), sorted.
    pub potential_sets: Vec<Vec<usize>>,
}

impl<W: Weight> LimbGuess<W> {
    pub fn weight(&self) -> u128 {
        self.limbs.iter().map(|e| e.w.wide()).sum()
    }
}

/// Precomputed ranking for the LIMB search on one ordered guess.
pub struct LimbSearch<'a, W> {
    g: &'a WeightedGraph<W>,
    slots: Vec<Slot>,
    tree: Vec<usize>,
    trees: usize,
    /// `ranked[j][t]`: the `min(2q, |F_t|)` cheapest vertices of tree t for
    /// slot j, cheapest first (ties to the lower id).
    ranked: Vec<Vec<Vec<usize>>>,
    /// `cheap[j][v]`: v is in `ranked[j][tree[v]]`.
    cheap: Vec<Vec<bool>>,
    candidates: Vec<usize>,
}

impl<'a, W: Weight> LimbSearch<'a, W> {
    pub fn new(g: &'a WeightedGraph<W>, guess: &OrderedChainGuess, forest: &Forest<W>, q: usize) -> Self {
        let n = g.n();
        let slots = guess.slots();
        let tree = forest.tree_index(n);
        let mut cheap = vec![vec![false; n]; slots.len()];
        let mut ranked = Vec::with_capacity(slots.len());
        for (j, slot) in slots.iter().enumerate() {
            let mut per_tree = Vec::with_capacity(forest.len());
            for t in &forest.trees {
                let mut by_cost: Vec<(u128, usize)> = t.vertices.iter().map(|&v| (slot_cost(g, slot, v), v)).collect();
                by_cost.sort_unstable();
                by_cost.truncate((2 * q).min(t.vertices.len()));
                for &(_, v) in &by_cost {
                    cheap[j][v] = true;
                }
                per_tree.push(by_cost.into_iter().map(|p| p.1).collect::<Vec<_>>());
            }
            ranked.push(per_tree);
        }
        let candidates = (0..n).filter(|&v| tree[v] != usize::MAX && cheap.iter().any(|c| c[v])).collect();
        LimbSearch { g, slots, tree, trees: forest.len(), ranked, cheap, candidates }
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    /// Potential set of slot `j` if its anchor lies in tree `t`, sorted.
    pub fn slot_potential(&self, j: usize, t: usize) -> Vec<usize> {
        let mut v = self.ranked[j][t].clone();
        v.sort_unstable();
        v
    }

    /// Same set, cheapest first.
    pub fn slot_ranking(&self, j: usize, t: usize) -> &[usize] {
        &self.ranked[j][t]
    }

    /// Build the guess for fixed anchors, or `None` when some anchor is
    /// outside the potential set of its tree or anchors repeat.
    pub fn build(&self, anchors: &[usize]) -> Option<LimbGuess<W>> {
        if anchors.len() != self.slots.len() {
            return None;
        }
        let mut seen = std::collections::HashSet::new();
        if anchors.iter().any(|&v| v >= self.tree.len() || self.tree[v] == usize::MAX || !seen.insert(v)) {
            return None;
        }
        let tree_of: Vec<usize> = anchors.iter().map(|&v| self.tree[v]).collect();
        let in_own = |j: usize| (0..anchors.len()).any(|i| tree_of[i] == tree_of[j] && self.cheap[i][anchors[j]]);
        if !(0..anchors.len()).all(in_own) {
            return None;
        }
        let mut potential_sets = vec![Vec::new(); self.trees];
        for (j, &t) in tree_of.iter().enumerate() {
            potential_sets[t].extend(self.slot_potential(j, t));
        }
        for s in &mut potential_sets {
            s.sort_unstable();
            s.dedup();
        }
        let mut limbs = Vec::with_capacity(2 * self.slots.len());
        for (slot, &v) in self.slots.iter().zip(anchors) {
            limbs.extend(slot.bad_neighbours().map(|b| self.g.edge(v, b)));
        }
        Some(LimbGuess { anchors: anchors.to_vec(), limbs, tree_of, potential_sets })
    }

    /// Depth-first search over anchors in slot order. A branch is cut as soon
    /// as `base` plus its limbs exceeds `bound()`.
    pub fn for_each(&self, base: u128, bound: &dyn Fn() -> u128, visit: &mut dyn FnMut(LimbGuess<W>)) {
        let mut used = vec![false; self.tree.len()];
        let mut anchors = Vec::with_capacity(self.slots.len());
        self.rec(base, bound, visit, &mut used, &mut anchors);
    }

    fn rec(
        &self,
        acc: u128,
        bound: &dyn Fn() -> u128,
        visit: &mut dyn FnMut(LimbGuess<W>),
        used: &mut [bool],
        anchors: &mut Vec<usize>,
    ) {
        let j = anchors.len();
        if j == self.slots.len() {
            if let Some(guess) = self.build(anchors) {
                visit(guess);
            }
            return;
        }
        for &v in &self.candidates {
            if used[v] {
                continue;
            }
            let next = acc + slot_cost(self.g, &self.slots[j], v);
            if next > bound() {
                continue;
            }
            used[v] = true;
            anchors.push(v);
            self.rec(next, bound, visit, used, anchors);
            anchors.pop();
            used[v] = false;
        }
    }
}

fn slot_cost<W: Weight>(g: &WeightedGraph<W>, slot: &Slot, v: usize) -> u128 {
    slot.bad_neighbours().map(|b| g.w(v, b).wide()).sum()
}

/// Every LIMB leaf for the ordered guess, unpruned.
pub fn limb_guesses<W: Weight>(g: &WeightedGraph<W>, guess: &OrderedChainGuess, forest: &Forest<W>, q: usize) -> Vec<LimbGuess<W>> {
    let mut out = Vec::new();
    LimbSearch::new(g, guess, forest, q).for_each(0, &|| u128::MAX, &mut |l| out.push(l));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prims::spanning_t_forest;
    use crate::testutil::random_metric;

    fn setup(n: usize, seed: u64, bad: usize, k: usize) -> (WeightedGraph<u32>, Forest<u32>, Vec<usize>) {
        let g = random_metric(n, seed);
        let good: Vec<usize> = (bad..n).collect();
        let f = spanning_t_forest(&good, |a, b| g.w(a, b), k).unwrap();
        (g, f, good)
    }

    #[test]
    fn single_anchor_potential_set_is_two_cheapest() {
        let (g, f, good) = setup(7, 3, 1, 1);
        let guess = OrderedChainGuess { chains: vec![vec![0]], anchor_counts: vec![1] };
        let search = LimbSearch::new(&g, &guess, &f, 1);
        let mut by_cost: Vec<(u32, usize)> = good.iter().map(|&v| (2 * g.w(v, 0), v)).collect();
        by_cost.sort_unstable();
        let want: Vec<usize> = {
            let mut w: Vec<usize> = by_cost[..2].iter().map(|p| p.1).collect();
            w.sort_unstable();
            w
        };
        assert_eq!(search.slot_potential(0, 0), want);
        let all = limb_guesses(&g, &guess, &f, 1);
        assert_eq!(all.len(), 2);
        for l in &all {
            assert_eq!(l.limbs.len(), 2);
            assert_eq!(l.potential_sets[0], want);
        }
    }

    #[test]
    fn leaves_respect_invariants() {
        for seed in 0..10 {
            let (g, f, _) = setup(9, seed, 2, 2);
            let q = 2;
            let guess = OrderedChainGuess { chains: vec![vec![0], vec![1]], anchor_counts: vec![2, 1] };
            let leaves = limb_guesses(&g, &guess, &f, q);
            assert!(!leaves.is_empty());
            for l in &leaves {
                let mut a = l.anchors.clone();
                a.sort_unstable();
                a.dedup();
                assert_eq!(a.len(), 3);
                assert_eq!(l.limbs.len(), 2 * guess.len());
                for (j, &x) in l.anchors.iter().enumerate() {
                    assert_eq!(f.tree_index(9)[x], l.tree_of[j]);
                    assert!(l.potential_sets[l.tree_of[j]].contains(&x));
                }
                assert!(l.potential_sets.iter().all(|s| s.len() <= 4 * q * q));
            }
        }
    }

    #[test]
    fn small_tree_anchor_in_own_set() {
        // trees of size < 2q contain every vertex in every potential set
        let (g, f, _) = setup(8, 5, 2, 2);
        let guess = OrderedChainGuess { chains: vec![vec![0, 1]], anchor_counts: vec![2] };
        let search = LimbSearch::new(&g, &guess, &f, 2);
        for (t, tree) in f.trees.iter().enumerate() {
            if tree.vertices.len() <= 4 {
                for j in 0..2 {
                    assert_eq!(search.slot_potential(j, t), tree.vertices);
                }
            }
        }
    }

    #[test]
    fn pruning_only_drops_heavy_leaves() {
        let (g, f, _) = setup(9, 11, 2, 2);
        let guess = OrderedChainGuess { chains: vec![vec![0, 1]], anchor_counts: vec![2] };
        let all = limb_guesses(&g, &guess, &f, 2);
        let cut = all.iter().map(LimbGuess::weight).min().unwrap() + 20;
        let mut kept = Vec::new();
        LimbSearch::new(&g, &guess, &f, 2).for_each(5, &|| cut, &mut |l| kept.push(l));
        let want: Vec<_> = all.into_iter().filter(|l| 5 + l.weight() <= cut).collect();
        assert_eq!(kept, want);
    }
}
