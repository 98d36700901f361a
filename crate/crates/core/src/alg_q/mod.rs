//! Solver parameterized by `q`, the size of a minimum violating set.

mod connect;
mod limb;
mod ordered;
mod shortcut;

pub use connect::{connect_for, connect_guesses, unanchored_trees, ConnectGuess, Contracted};
pub use limb::{limb_guesses, LimbGuess, LimbSearch};
pub use ordered::{enumerate_ordered_chains, OrderedChainGuess, Slot};
pub use shortcut::{assemble, shortcut_alg4, tree_parity_matchings};

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::analysis::VertexPartition;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::metric::christofides;
use crate::prims::{held_karp_tour, spanning_t_forest, Forest, Tour};
use crate::solution::Solution;
use crate::weight::Weight;

/// Guess counts per level of the ALG.4 search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Alg4Stats {
    pub ordered: u64,
    pub limb_leaves: u64,
    pub connect: u64,
    pub evaluated: u64,
    pub skipped: u64,
}

impl Alg4Stats {
    fn add(&mut self, o: &Alg4Stats) {
        self.ordered += o.ordered;
        self.limb_leaves += o.limb_leaves;
        self.connect += o.connect;
        self.evaluated += o.evaluated;
        self.skipped += o.skipped;
    }
}

/// Forest and contracted forest for each possible chain count.
struct Forests<W> {
    by_k: Vec<Option<(Forest<W>, Contracted<W>)>>,
}

impl<W: Weight> Forests<W> {
    fn new(g: &WeightedGraph<W>, good: &[usize], q: usize) -> Result<Self> {
        let mut by_k = vec![None];
        for k in 1..=q {
            by_k.push(if k <= good.len() {
                let f = spanning_t_forest(good, |a, b| g.w(a, b), k)?;
                let c = Contracted::new(g, &f);
                Some((f, c))
            } else {
                None
            });
        }
        Ok(Forests { by_k })
    }
}

/// Assemble `G_A`, check it, add the tree matchings and shortcut.
pub fn alg4_evaluate<W: Weight>(
    g: &WeightedGraph<W>,
    guess: &OrderedChainGuess,
    limbs: &LimbGuess<W>,
    connect: &ConnectGuess<W>,
    forest: &Forest<W>,
    bad: &[bool],
) -> Result<Tour> {
    let g_a = assemble(g, guess, limbs, connect, forest);
    if !g_a.is_connected() || g_a.degrees().contains(&0) {
        return Err(Error::StructureViolated("G_A is not connected".into()));
    }
    if let Some(v) = (0..g.n()).find(|&v| bad[v] && g_a.degree(v) % 2 == 1) {
        return Err(Error::StructureViolated(format!("bad vertex {v} has odd degree")));
    }
    let matchings = tree_parity_matchings(g, &g_a, forest)?;
    shortcut_alg4(g, guess, limbs, connect, forest, &matchings, bad)
}

fn run_ordered<W: Weight>(
    g: &WeightedGraph<W>,
    guess: &OrderedChainGuess,
    forests: &Forests<W>,
    q: usize,
    bad: &[bool],
    best: &AtomicU64,
) -> Result<(Option<Tour>, Alg4Stats)> {
    let mut stats = Alg4Stats { ordered: 1, ..Default::default() };
    let Some((forest, contracted)) = &forests.by_k[guess.len()] else {
        stats.skipped += 1;
        return Ok((None, stats));
    };
    let chains: u128 = guess.chains.iter().map(|c| g.path_weight(c)).sum();
    let mut local: Option<Tour> = None;
    let mut failure: Option<Error> = None;
    let bound = || best.load(Ordering::Relaxed) as u128;
    LimbSearch::new(g, guess, forest, q).for_each(chains, &bound, &mut |limbs| {
        if failure.is_some() {
            return;
        }
        stats.limb_leaves += 1;
        let connects = match connect_guesses(guess, &limbs, forest, contracted) {
            Ok(c) => c,
            Err(e) => return failure = Some(e),
        };
        if connects.is_empty() {
            stats.skipped += 1;
        }
        for cg in connects {
            stats.connect += 1;
            stats.evaluated += 1;
            match alg4_evaluate(g, guess, &limbs, &cg, forest, bad) {
                Ok(t) => {
                    best.fetch_min(u64::try_from(t.total_weight).unwrap_or(u64::MAX), Ordering::Relaxed);
                    if local.as_ref().is_none_or(|b| t.better_than(b)) {
                        local = Some(t);
                    }
                }
                Err(e) if e.is_skippable() => stats.skipped += 1,
                Err(e) => return failure = Some(e),
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok((local, stats)),
    }
}

/// Best ALG.4 tour with per-level counts.
pub fn alg4_with_stats<W: Weight>(g: &WeightedGraph<W>, part: &VertexPartition, caps: &Caps) -> Result<(Solution, Alg4Stats)> {
    let all: Vec<usize> = g.vertices().collect();
    if part.bad.is_empty() {
        return Ok((Solution::single(christofides(g, &all)?), Alg4Stats::default()));
    }
    if part.good.is_empty() {
        caps.check_held_karp(g.n())?;
        return Ok((Solution::single(held_karp_tour(g, &all)?), Alg4Stats::default()));
    }
    let q = part.bad.len();
    let guesses = enumerate_ordered_chains(&part.bad, caps.q)?;
    let forests = Forests::new(g, &part.good, q)?;
    let bad = part.bad_mask(g.n());
    let best = AtomicU64::new(u64::MAX);
    let outcomes: Vec<Result<(Option<Tour>, Alg4Stats)>> =
        guesses.par_iter().map(|og| run_ordered(g, og, &forests, q, &bad, &best)).collect();
    let mut stats = Alg4Stats::default();
    let mut tour: Option<Tour> = None;
    for r in outcomes {
        let (t, s) = r?;
        stats.add(&s);
        if let Some(t) = t {
            if tour.as_ref().is_none_or(|b| t.better_than(b)) {
                tour = Some(t);
            }
        }
    }
    let tour = tour.ok_or_else(|| Error::Internal(format!("no ALG.4 guess produced a tour ({stats:?})")))?;
    let sol = Solution { tour, guesses_evaluated: stats.evaluated, guesses_skipped: stats.skipped };
    Ok((sol, stats))
}

pub fn alg4<W: Weight>(g: &WeightedGraph<W>, part: &VertexPartition, caps: &Caps) -> Result<Solution> {
    alg4_with_stats(g, part, caps).map(|r| r.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::min_violating_set;
    use crate::generate::{generate, GeneratorKind, GeneratorSpec};
    use crate::prims::brute_force_tour;
    use crate::testutil::random_metric;

    fn planted(n: usize, q: usize, seed: u64) -> WeightedGraph<u64> {
        generate(&GeneratorSpec::new(GeneratorKind::PlantedQ, n, q, seed)).unwrap()
    }

    #[test]
    fn metric_falls_back() {
        let g = random_metric(7, 1);
        let part = min_violating_set(&g, None).unwrap();
        let s = alg4(&g, &part, &Caps::default()).unwrap();
        assert_eq!(s.tour, christofides(&g, &(0..7).collect::<Vec<_>>()).unwrap());
    }

    #[test]
    fn four_vertex_example() {
        let g = crate::graph::tests::four();
        let part = min_violating_set(&g, None).unwrap();
        let s = alg4(&g, &part, &Caps::default()).unwrap();
        let opt = brute_force_tour(&g).unwrap();
        assert!(s.tour.is_hamiltonian(4));
        assert!(s.tour.total_weight <= 3 * opt.total_weight);
    }

    #[test]
    fn planted_within_three() {
        for (n, q) in [(8, 1), (9, 1), (8, 2), (10, 2), (9, 3)] {
            for seed in 0..4 {
                let g = planted(n, q, seed);
                let part = min_violating_set(&g, None).unwrap();
                assert_eq!(part.size(), q);
                let (s, stats) = alg4_with_stats(&g, &part, &Caps::default()).unwrap();
                let opt = brute_force_tour(&g).unwrap();
                assert!(s.tour.is_hamiltonian(n));
                assert!(
                    s.tour.total_weight <= 3 * opt.total_weight,
                    "n {n} q {q} seed {seed}: {} vs {}",
                    s.tour.total_weight,
                    opt.total_weight
                );
                assert!(stats.evaluated > 0);
            }
        }
    }

    #[test]
    fn single_bad_vertex_with_case_two_anchor() {
        // bad vertex 0, good vertices 1..6 on a line; one single anchor
        // guess with a tree bigger than the anchor forces a copy
        let g = WeightedGraph::<u64>::from_fn(6, |i, j| match (i, j) {
            (0, 1) | (0, 2) => 1,
            (0, _) => 50,
            _ => (j - i) as u64,
        })
        .unwrap();
        let part = min_violating_set(&g, None).unwrap();
        assert_eq!(part.bad, vec![0]);
        let guess = OrderedChainGuess { chains: vec![vec![0]], anchor_counts: vec![2] };
        let good: Vec<usize> = (1..6).collect();
        let f = spanning_t_forest(&good, |a, b| g.w(a, b), 1).unwrap();
        let c = Contracted::new(&g, &f);
        let l = LimbSearch::new(&g, &guess, &f, 1).build(&[1, 2]).unwrap();
        let cg = connect_guesses(&guess, &l, &f, &c).unwrap();
        let t = alg4_evaluate(&g, &guess, &l, &cg[0], &f, &part.bad_mask(6)).unwrap();
        assert!(t.is_hamiltonian(6));

        let single = OrderedChainGuess { chains: vec![vec![0]], anchor_counts: vec![1] };
        let l = LimbSearch::new(&g, &single, &f, 1).build(&[1]).unwrap();
        assert!(connect_guesses(&single, &l, &f, &c).unwrap().is_empty());
    }

    #[test]
    fn case_two_copy_is_removed() {
        // bad vertices 0 and 1 each with its own single anchor in one tree
        let g = planted(9, 2, 7);
        let part = min_violating_set(&g, None).unwrap();
        let bad = part.bad_mask(9);
        let guess = OrderedChainGuess { chains: vec![vec![part.bad[0]], vec![part.bad[1]]], anchor_counts: vec![1, 2] };
        let f = spanning_t_forest(&part.good, |a, b| g.w(a, b), 2).unwrap();
        let c = Contracted::new(&g, &f);
        let mut ok = 0;
        for l in limb_guesses(&g, &guess, &f, 2) {
            let single = l.anchors[0];
            let tree = &f.trees[l.tree_of[0]];
            if tree.vertices.len() == 1 {
                continue;
            }
            for cg in connect_guesses(&guess, &l, &f, &c).unwrap() {
                if let Ok(t) = alg4_evaluate(&g, &guess, &l, &cg, &f, &bad) {
                    assert!(t.is_hamiltonian(9));
                    let pos = t.order.iter().position(|&v| v == single).unwrap();
                    let nb = [t.order[(pos + 8) % 9], t.order[(pos + 1) % 9]];
                    assert!(nb.iter().all(|v| bad[*v]), "copied anchor {single} keeps both limbs: {:?}", t.order);
                    ok += 1;
                }
            }
        }
        assert!(ok > 0);
    }

    #[test]
    fn cap_on_q() {
        let g = planted(9, 2, 1);
        let part = min_violating_set(&g, None).unwrap();
        let caps = Caps { q: 1, ..Caps::default() };
        assert!(matches!(alg4(&g, &part, &caps), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn parity_matchings_on_even_graph_are_empty() {
        let g = random_metric(6, 3);
        let good: Vec<usize> = (0..6).collect();
        let f = spanning_t_forest(&good, |a, b| g.w(a, b), 2).unwrap();
        let mut m = crate::prims::MultiEdgeSet::new(6);
        for t in &f.trees {
            let vs = &t.vertices;
            for i in 0..vs.len() {
                if vs.len() > 1 {
                    m.add(g.edge(vs[i], vs[(i + 1) % vs.len()]));
                }
                if vs.len() == 2 {
                    break;
                }
            }
        }
        for (mt, t) in tree_parity_matchings(&g, &m, &f).unwrap().iter().zip(&f.trees) {
            if t.vertices.len() != 2 {
                assert!(mt.pairs.is_empty());
            }
        }
    }
}
